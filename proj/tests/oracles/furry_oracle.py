"""Term-by-term K-set and adiabatic-limit values at arbitrary precision.

The K4 and K5 displays are used with the corrections recorded in the
decision ledger (+f2^2 in K4, e^{+i pi/4} on the f1 f2 term of K5).
"""
import mpmath as mp

mp.mp.dps = 40


def reg_b0(a, z):
    return a * z * mp.hyp1f1(a + 1, 2, z)


def start_coefficients(k):
    arg = mp.im(mp.loggamma(1 - 1j * k))
    f1 = mp.exp(-mp.mpf(5) / 4 * mp.pi * k)
    f2 = mp.exp(-mp.pi * k / 4) * mp.sqrt(1 - mp.exp(-2 * mp.pi * k)) * mp.expj(arg)
    return mp.mpc(f1), f2


def k_set(k, w, eps, f1, f2):
    sk, s2pi = mp.sqrt(k), mp.sqrt(2 * mp.pi)
    e1, e2 = mp.exp(-mp.pi * k / 2), mp.exp(-mp.pi * k)
    ik, w2 = 1j * k, 1j * w * w
    ph = mp.expj(-(w * eps + w * w / 2))
    G = mp.gamma
    rg_ik, rg_1ik, g_1mik = 1 / G(ik), 1 / G(1 + ik), G(1 - ik)
    ratio = G(-ik) / G(ik)
    u0m, u0p = mp.hyperu(-ik, 0, w2), mp.hyperu(ik, 0, -w2)
    u1a, u1b = mp.hyperu(1 - ik, 1, w2), mp.hyperu(-ik, 1, w2)
    m0, m1a, m1b = reg_b0(-ik, w2), mp.hyp1f1(1 - ik, 1, w2), mp.hyp1f1(-ik, 1, w2)
    c = mp.conj
    n1 = abs(f1) ** 2 - abs(f2) ** 2
    e = lambda x: mp.expjpi(x)
    K = [None] * 8
    K[0] = s2pi * e1 * mp.re(ph * rg_ik * u0m)
    K[1] = e2 * c(ph) * u0p + ph * G(-ik) * (e2 * rg_ik * u0m - m0)
    K[2] = (-1j * n1 * sk * 2 * mp.pi * e1 * rg_ik * u1a
            + (f1 * c(f2) * ratio - f2 * c(f1)) * k * s2pi * e2 * u1a
            + 1j * f1 * c(f2) * s2pi * g_1mik * m1a)
    K[3] = ((f1**2 * ratio + f2**2) * e(-0.75) * k * s2pi * e2 * u1a
            + f1**2 * s2pi * g_1mik * e(-0.25) * m1a
            + 4 * mp.pi * f1 * f2 * sk * e1 * e(-0.25) * rg_ik * u1a)
    K[4] = (-f1**2 * s2pi * g_1mik * e(-0.25) * m1b
            - 4j * mp.pi * f1 * f2 * sk * e1 * e(0.25) * rg_1ik * u1b
            + (f2**2 + f1**2 * ratio) * s2pi * e2 * e(0.75) * u1b)
    K[5] = -1j * c(n1 * sk * 2 * mp.pi * e1 * rg_1ik * u1b
                   + s2pi * e2 * (-c(f1) * f2 + c(f2) * f1 * ratio) * u1b
                   + c(f2) * f1 * s2pi * g_1mik * m1b)
    K[6] = c((c(f1)**2 + c(f2)**2 * ratio) * s2pi * e2 * e(0.25) * u1b
             + 4 * mp.pi * c(f1) * c(f2) * sk * e1 * e(0.25) * rg_1ik * u1b
             + c(f2)**2 * s2pi * 1j * g_1mik * e(-0.25) * m1b)
    K[7] = c(k * s2pi * e2 * e(0.75) * (c(f1)**2 + c(f2)**2 * ratio) * u1a
             + 4j * mp.pi * c(f1) * c(f2) * sk * e(-0.25) * e1 * rg_ik * u1a
             - 1j * c(f2)**2 * s2pi * g_1mik * e(-0.25) * m1a)
    return K


def values():
    k, w, eps = mp.mpf("0.5625"), mp.mpf(3), mp.mpf("0.5")
    f1, f2 = start_coefficients(k)
    out = {"f1_asymptotic_k0p5625": f1, "f2_asymptotic_k0p5625": f2}
    for i, v in enumerate(k_set(k, w, eps, f1, f2)):
        out["kset_k0p5625_w3_K%d" % (i + 1)] = v
    eta = mp.mpf("0.05")
    out["p_fp_adiabatic_d0p75_eta0p05_w3"] = (
        mp.pi**2 * mp.exp(-2 * mp.pi * k) * eta**2 * abs(reg_b0(-1j * k, 9j)) ** 2)
    return out


if __name__ == "__main__":
    for k, v in values().items():
        print(k, mp.nstr(v, 20))
