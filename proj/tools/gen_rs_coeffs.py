#!/usr/bin/env python3
"""Regenerate include/lfmax/detail/rs_coeffs.hpp.

Taylor coefficients in x = p - 1/2 of the Riemann-Siegel correction
functions C0..C6, built from the derivatives of
Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).

C_n = sum_k d_k Psi^(3n-4k) / pi^(2n-2k). The d_k for n <= 4 are the
classical ones. For n = 5, 6 they are fitted: the remainder of the main sum
is computed with mpmath.siegelz at several heights sharing the same p,
C0..C4 are subtracted, the leftover is extrapolated in a^-1 to get C5(p) and
C6(p), and a least-squares solve over p picks the d_k.

Usage: python3 tools/gen_rs_coeffs.py > include/lfmax/detail/rs_coeffs.hpp
"""
import mpmath as mp

mp.mp.dps = 60
ORDER = 90
pi = mp.pi

psi = lambda p: mp.cos(2 * pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * pi * p)
# Psi is entire but has removable singularities at p = 1/4, 3/4; expand at 1/2.
a = mp.taylor(psi, mp.mpf(1) / 2, ORDER)


def deriv(coeffs, j):
    # Taylor coefficients of the j-th derivative.
    out = []
    for n in range(len(coeffs) - j):
        out.append(coeffs[n + j] * mp.factorial(n + j) / mp.factorial(n))
    return out


def combo(terms):
    n = len(a)
    out = [mp.mpf(0)] * n
    for c, j in terms:
        d = deriv(a, j)
        for i, v in enumerate(d):
            out[i] += c * v
    return out


def dpsi(p, m):
    x = p - mp.mpf(1) / 2
    return mp.fsum(a[n] * mp.factorial(n) / mp.factorial(n - m) * x ** (n - m) for n in range(m, len(a)))


D_LOW = [
    [(1, 0)],
    [(-mp.mpf(1) / 96, 3)],
    [(mp.mpf(1) / 64, 2), (mp.mpf(1) / 18432, 6)],
    [(-mp.mpf(1) / 64, 1), (-mp.mpf(1) / 3840, 5), (-mp.mpf(1) / 5308416, 9)],
    [(mp.mpf(1) / 128, 0), (mp.mpf(19) / 24576, 4), (mp.mpf(11) / 5898240, 8), (mp.mpf(1) / 2038431744, 12)],
]


def c_at(n_terms, p):
    out = []
    for n, terms in enumerate(D_LOW[:n_terms]):
        out.append(mp.fsum(d * dpsi(p, m) / pi ** (2 * n - (3 * n - m) // 2) for d, m in terms))
    return out


def fit_high():
    ps = [mp.mpf(j) / 20 for j in range(1, 20, 2)]
    nus = [60, 80, 100, 130, 170, 220, 300]
    rows5, rows6 = [], []
    for p in ps:
        low = c_at(5, p)
        us, rs = [], []
        for nu in nus:
            av = nu + p
            t = 2 * pi * av * av
            th = mp.siegeltheta(t)
            main = 2 * mp.fsum(mp.cos(th - t * mp.log(n)) / mp.sqrt(n) for n in range(1, nu + 1))
            R = (mp.siegelz(t) - main) * (-1) ** (nu - 1) * mp.sqrt(av)
            u = 1 / av
            us.append(u)
            rs.append((R - mp.fsum(low[k] * u**k for k in range(5))) / u**5)
        A = mp.matrix([[u**j for j in range(len(us))] for u in us])
        sol = mp.lu_solve(A, mp.matrix(rs))
        rows5.append((p, sol[0]))
        rows6.append((p, sol[1]))
    fitted = []
    for n, rows in ((5, rows5), (6, rows6)):
        kmax = 3 * n // 4
        A = mp.matrix(len(rows), kmax + 1)
        b = mp.matrix(len(rows), 1)
        for i, (p, v) in enumerate(rows):
            b[i] = v
            for k in range(kmax + 1):
                A[i, k] = dpsi(p, 3 * n - 4 * k) / pi ** (2 * n - 2 * k)
        d = mp.qr_solve(A, b)[0]
        fitted.append([(d[k], 3 * n - 4 * k) for k in range(kmax + 1)])
    return fitted


def scaled(n, terms):
    # the d_k are stored without their power of pi
    return [(d / pi ** (2 * n - (3 * n - m) // 2), m) for d, m in terms]


HIGH = fit_high()
C = [combo(scaled(n, t)) for n, t in enumerate(D_LOW)] + [combo(scaled(5 + i, t)) for i, t in enumerate(HIGH)]

lines = ["// Generated by tools/gen_rs_coeffs.py. Do not edit.", "#pragma once", "",
         "namespace lfmax::detail {", ""]
for k, c in enumerate(C):
    # |x| <= 1/2: drop terms that cannot matter at double precision
    keep = [v if abs(v) > mp.mpf(10) ** -40 else mp.mpf(0) for v in c]
    while len(keep) > 1 and abs(keep[-1]) * mp.mpf(0.5) ** (len(keep) - 1) < mp.mpf(10) ** -22:
        keep.pop()
    lines.append(f"inline constexpr double rs_c{k}[] = {{")
    for v in keep:
        lines.append(f"    {mp.nstr(v, 20, min_fixed=1, max_fixed=0)},")
    lines.append("};")
    lines.append("")
lines.append("}  // namespace lfmax::detail")
print("\n".join(lines))
