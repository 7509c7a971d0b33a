#!/usr/bin/env python3
"""Generate the arbitrary-precision fixture table for the special-function tests.

Every value is computed with mpmath's own parabolic-cylinder and confluent
hypergeometric routines at 60 significant digits; none of the recurrences used
by the C++ library are involved.  Run once and commit the output:

    python3 tools/gen_specfun_fixtures.py > tests/fixtures/specfun.txt

Record layout: family n x value_sign value_logmag
  reg         D_n(x)
  reg_deriv   D_n'(x)
  imag        i^n D_n(ix)
  imag_deriv  i^(n+1) D_n'(ix)
  out         D_{-n-1}(x)
  out_deriv   D_{-n-1}'(x)
  bateman     k_n(x) with n = ell < 0
Points where the value sits within a relative distance of 1e-4 of a zero of the
function (condition number |x f'/f| > 1e4) are skipped.
"""
import mpmath as mp

mp.mp.dps = 60


def sl(v):
    v = mp.re(v)
    if v == 0:
        return 0, mp.mpf(0)
    return (1 if v > 0 else -1), mp.log(abs(v))


def pcf(nu, z):
    """D_nu(z) through Tricomi's U; integer nu and real negative z via parity."""
    if mp.im(z) == 0 and mp.re(z) < 0:
        assert int(nu) == nu and nu >= 0
        return (-1) ** int(nu) * pcf(nu, -z)
    nu = mp.mpf(nu)
    try:
        v = 2 ** (nu / 2) * mp.exp(-z * z / 4) * mp.hyperu(-nu / 2, mp.mpf(1) / 2, z * z / 2)
    except ValueError:
        # terminating series summing to an exact zero
        assert int(nu) == nu and nu >= 0
        v = 2 ** (-nu / 2) * mp.exp(-z * z / 4) * mp.hermite(int(nu), z / mp.sqrt(2))
    try:
        w = mp.pcfd(nu, z)
        assert abs(v - w) <= mp.mpf(10) ** -40 * max(abs(v), abs(w)), (nu, z, v, w)
    except ValueError:
        pass
    return v


def dpcf(nu, z):
    # D_nu'(z) = (z/2) D_nu(z) - D_{nu+1}(z)
    return z / 2 * pcf(nu, z) - pcf(nu + 1, z)


def well_conditioned(f, fp, x):
    if f == 0:
        return False
    return abs(x * fp / f) < 1e4


def bateman(ell, u):
    u = mp.mpf(u)
    return mp.exp(-u) * mp.hyperu(-mp.mpf(ell) / 2, 0, 2 * u) / mp.gamma(mp.mpf(ell) / 2 + 1)


def emit(family, n, x, v):
    s, lm = sl(v)
    print(f"{family} {n} {mp.nstr(mp.mpf(x), 17)} {s} {mp.nstr(lm, 20, min_fixed=-1, max_fixed=1)}")


def main():
    orders = [0, 1, 2, 3, 5, 8, 13, 21, 40, 75, 120, 200]
    print("# family n x value_sign value_logmag")
    print("# generated by tools/gen_specfun_fixtures.py (mpmath, 60 digits)")
    xs_reg = ["-7.5", "-1.3", "0", "0.4", "1", "2.5", "6", "13.7", "30", "50"]
    for n in orders:
        for xs in xs_reg:
            x = mp.mpf(xs)
            f = pcf(n, x)
            fp = dpcf(n, x)
            if x != 0 and not well_conditioned(f, fp, x):
                continue
            if f == 0:
                continue
            emit("reg", n, xs, f)
            fpp = (x * x / 4 - n - mp.mpf(1) / 2) * f
            if fp != 0 and (x == 0 or abs(x * fpp / fp) < 1e4):
                emit("reg_deriv", n, xs, fp)
    xs_pos = ["0", "0.05", "0.3", "1", "2.2", "5", "11", "24", "50"]
    for n in orders:
        for xs in xs_pos:
            x = mp.mpf(xs)
            z = mp.mpc(0, x)
            g = (mp.j ** n) * pcf(n, z)
            gp = (mp.j ** (n + 1)) * dpcf(n, z)
            if mp.re(g) != 0:
                emit("imag", n, xs, g)
            if mp.re(gp) != 0:
                emit("imag_deriv", n, xs, gp)
            y = pcf(-n - 1, x)
            emit("out", n, xs, y)
            emit("out_deriv", n, xs, dpcf(-n - 1, x))
    us = ["0.001", "0.01", "0.1", "0.5", "1", "3.1", "10", "37", "100"]
    for ell in [-1, -3, -5, -9, -17, -41, -101, -201, -401]:
        for us_ in us:
            emit("bateman", ell, us_, bateman(ell, us_))


if __name__ == "__main__":
    main()
