"""Reference values frozen into the Rust test suites.

Every value here is computed independently of the Rust implementation with
mpmath at 40 significant digits: direct quadrature of the defining integrals,
explicit polynomial expansions, or closed-form norms.

    python3 tools/frozen_values.py
"""
import mpmath as mp

mp.mp.dps = 40


def theta(a, x, y):
    sh, ch = mp.sinh(a), mp.cosh(a)
    return 1 + (x * x + y * y) * sh * sh - 2 * x * y * sh * ch


def theta_angular(a, chi, phi):
    return (mp.cos(phi) * mp.cosh(a) - mp.cos(chi) * mp.sinh(a)) ** 2 + mp.sin(phi) ** 2


def sphere_weight(n, ang):
    return mp.sin(ang) ** (n - 2)


def zonal_quad(p, q, sig, a):
    """Average of theta^(sig/2) over the product of the two sphere factors."""
    def inner(chi, phi):
        return mp.exp(sig / 2 * mp.log(theta_angular(a, chi, phi)))
    if q >= 3:
        num = mp.quad(lambda c, f: inner(c, f) * sphere_weight(p, c) * sphere_weight(q, f), [0, mp.pi], [0, mp.pi])
        den = mp.quad(lambda c: sphere_weight(p, c), [0, mp.pi]) * mp.quad(lambda f: sphere_weight(q, f), [0, mp.pi])
    elif q == 2:
        num = mp.quad(lambda c, f: inner(c, f) * sphere_weight(p, c), [0, mp.pi], [0, mp.pi]) * 2
        den = mp.quad(lambda c: sphere_weight(p, c), [0, mp.pi]) * 2 * mp.pi
    else:
        raise ValueError
    return num / den


def gegen_norm_sq(n, lam):
    """int_{-1}^{1} C_n^lam(x)^2 (1-x^2)^(lam-1/2) dx by quadrature."""
    return mp.quad(lambda t: mp.gegenbauer(n, lam, mp.cos(t)) ** 2 * mp.sin(t) ** (2 * lam), [0, mp.pi])


def tower_norm_sq(n, l, lam):
    """int C_{n-l}^{l+lam}(cos t)^2 sin^{2l} t sin^{2 lam} t dt."""
    return mp.quad(lambda t: (mp.gegenbauer(n - l, l + lam, mp.cos(t)) * mp.sin(t) ** l) ** 2 * mp.sin(t) ** (2 * lam), [0, mp.pi])


def assoc_factor_quad(p, mu):
    """Per-sphere constant c with c^2 = 1 / (V * N_mu), V the sphere volume, N_mu the norm."""
    vol = mp.quad(lambda t: mp.sin(t) ** (p - 2), [0, mp.pi])
    return 1 / mp.sqrt(vol * gegen_norm_sq(mu, mp.mpf(p - 2) / 2))


def assoc_quad_33(sig, lam, mu, a, p=3, q=3):
    bp, bq = mp.mpf(p - 2) / 2, mp.mpf(q - 2) / 2
    f = lambda c, ph: mp.exp(sig / 2 * mp.log(theta_angular(a, c, ph))) * mp.gegenbauer(mu, bp, mp.cos(c)) * mp.gegenbauer(lam, bq, mp.cos(ph)) * sphere_weight(p, c) * sphere_weight(q, ph)
    return assoc_factor_quad(p, mu) * assoc_factor_quad(q, lam) * mp.quad(f, [0, mp.pi], [0, mp.pi])


def out(name, v):
    if isinstance(v, mp.mpc):
        print(f"{name}: {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")
    else:
        print(f"{name}: {mp.nstr(v, 20)}")


out("log_gamma(3+4i)", mp.loggamma(mp.mpc(3, 4)))
out("log_gamma(-2.5+0.3i)", mp.loggamma(mp.mpc(-2.5, 0.3)))
out("log_gamma(0.2-40i)", mp.loggamma(mp.mpc(0.2, -40)))
out("log_gamma(60.5+70i)", mp.loggamma(mp.mpc(60.5, 70)))
out("log_gamma(-70.3-5i)", mp.loggamma(mp.mpc(-70.3, -5)))

# explicit degree-4 Gegenbauer polynomial:
# C_4^l(x) = (l)_4 2^4/4! x^4 - (l)_3 2^2/(2! 1!) x^2 + (l)_2 /(0! 2!)
lam, x = mp.mpf(1.5), mp.mpf(0.3)
c4 = mp.rf(lam, 4) * 16 / 24 * x ** 4 - mp.rf(lam, 3) * 4 / 2 * x ** 2 + mp.rf(lam, 2) / 2
out("gegenbauer(4,1.5,0.3)", c4)

# normalization constants fixed by unit norm of the basis functions
def a_general(p, q, lam_, l, mu, m):
    return 1 / mp.sqrt(tower_norm_sq(lam_, l, mp.mpf(q - 2) / 2) * tower_norm_sq(mu, m, mp.mpf(p - 2) / 2))
def a_q2(p, mu, m):
    return 1 / mp.sqrt(2 * mp.pi * tower_norm_sq(mu, m, mp.mpf(p - 2) / 2))
out("basis_norm_general(3,3,0,0,0,0)", a_general(3, 3, 0, 0, 0, 0))
out("basis_norm_general(4,3,2,1,2,1)", a_general(4, 3, 2, 1, 2, 1))
out("basis_norm_q2(3,0,0)", a_q2(3, 0, 0))
out("basis_norm_q2(5,3,2)", a_q2(5, 3, 2))
# pair constant a^{pq}_{lam mu} = (2 pi a^p_mu)(2 pi a^q_lam)
out("assoc_coeff(3,0)", assoc_factor_quad(3, 0) / (2 * mp.pi))
out("assoc_coeff(4,2)", assoc_factor_quad(4, 2) / (2 * mp.pi))

# theta by the angular form: x = cos chi, y = cos phi
a = mp.mpf(0.5)
chi, phi = mp.acos(mp.mpf(0.3)), mp.acos(mp.mpf(-0.7))
out("theta_angular(0.5,0.3,-0.7)", theta_angular(a, chi, phi))

out("zonal(3,2,-1.5+2i,0.4)", zonal_quad(3, 2, mp.mpc(-1.5, 2), mp.mpf(0.4)))
out("zonal(4,3,-2.5,0.3)", zonal_quad(4, 3, mp.mpf(-2.5), mp.mpf(0.3)))
out("assoc(3,3,-2+i,nu0,s1,r1,0.3)", assoc_quad_33(mp.mpc(-2, 1), 2, 2, mp.mpf(0.3)))
