"""Arbitrary-precision reference values for the special functions."""
import mpmath as mp

mp.mp.dps = 40


def regularized_b0_limit(a, z):
    # 1F1(a; b; z) / Gamma(b) as b -> 0, Richardson on two small b
    h = mp.mpf("1e-12")
    f = lambda b: mp.hyp1f1(a, b, z) / mp.gamma(b)
    return 2 * f(h / 2) - f(h)


def values():
    up = mp.expjpi(mp.mpf(1) / 4)
    out = {
        "log_gamma_half": mp.loggamma(mp.mpf("0.5")),
        "bessel_j1_1": mp.besselj(1, 1),
        "kummer_m_k0p5625_b1_z4i": mp.hyp1f1(-0.5625j, 1, 4j),
        "kummer_reg_k0p49_b0_z36i": regularized_b0_limit(-0.49j, 36j),
        "tricomi_u_a0p5i_b1_z9i": mp.hyperu(0.5j, 1, 9j),
        "tricomi_u_a0p3i_b0_zm4i": mp.hyperu(0.3j, 0, -4j),
        "pcf_origin_nu0p3i": mp.pcfd(0.3j, 0),
    }
    # D_nu on the ray e^{i pi/4} t for the propagator orders
    for label, nu in (("mk", -0.5625j), ("mkm1", -0.5625j - 1)):
        for t in (-500, -30, -5, 0.5, 5, 30, 500):
            key = "pcf_%s_t%s" % (label, str(t).replace("-", "m").replace(".", "p"))
            out[key] = mp.pcfd(nu, up * t)
    return out


if __name__ == "__main__":
    for k, v in values().items():
        print(k, mp.nstr(v, 20))
