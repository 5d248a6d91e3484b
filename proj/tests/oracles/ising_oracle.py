"""Gaussian widths and drive-induced density integrals for the Ising chain."""
import mpmath as mp

mp.mp.dps = 25


def cross_sum(eta, omega, eps, n_max=40):
    bj = {n: mp.besselj(n, eta) for n in range(-n_max, n_max + 1)}
    s = 0
    for n in range(-n_max, n_max + 1):
        for m in range(-n_max, n):
            s += bj[n] * bj[m] * mp.cos(omega * ((n * n - m * m) * omega / 2 - (n - m) * eps))
    return s


def fp_profile(kappa, omega):
    # e^{-2 pi k} |1F1~(-i k; 0; i w^2)|^2 without the eta^2 pi^2 prefactor
    a, z = -1j * kappa, 1j * omega**2
    return mp.exp(-2 * mp.pi * kappa) * abs(a * z * mp.hyp1f1(a + 1, 2, z)) ** 2


def values():
    j, eta, w, ep = mp.mpf(7), mp.mpf("0.05"), mp.mpf(6), mp.mpf("0.5")
    base = 2 * mp.pi * j**2
    alpha = base * (1 + 2 * cross_sum(eta, w, ep + 2 * j))
    beta = base * (1 + 2 * cross_sum(eta, w, ep - 2 * j))
    x_cuts = [mp.mpf(x) / 2 for x in range(0, 19)]
    coeff = 2 * mp.pi * eta**2 * mp.quad(lambda x: fp_profile(x * x, w), x_cuts)
    q_res = mp.asin(w / (2 * j))
    q_cuts = sorted({mp.mpf(0), q_res - mp.mpf("0.1"), q_res, q_res + mp.mpf("0.1"), mp.mpf("0.8"), mp.pi / 2})
    integral = mp.pi**2 * eta**2 * 4 / (2 * mp.pi) * mp.quad(lambda q: fp_profile(j**2 * mp.sin(q) ** 2, w), q_cuts)
    return {
        "alpha_j7_eta0p05_w6": alpha,
        "beta_j7_eta0p05_w6": beta,
        "n_fp_coefficient_w6_eta0p05": coeff,
        "n_fp_integral_j7_eta0p05_w6": integral,
    }


if __name__ == "__main__":
    for k, v in values().items():
        print(k, mp.nstr(v, 20))
