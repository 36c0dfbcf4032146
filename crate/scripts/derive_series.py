#!/usr/bin/env python3
"""Exact Taylor coefficients at x = 1 for the cascade functions.

Writes crates/core/src/cascade/series.rs. Coefficients are computed with
rational truncated power series in e = x - 1 and rounded to f64 once.
Run from the workspace root: python3 scripts/derive_series.py
"""
from fractions import Fraction as Q
import sys

K = 32  # number of retained coefficients


def zero():
    return [Q(0)] * K


def const(c):
    s = zero()
    s[0] = Q(c)
    return s


def add(*ss):
    out = zero()
    for s in ss:
        for i in range(K):
            out[i] += s[i]
    return out


def scale(s, c):
    return [Q(c) * v for v in s]


def mul(a, b):
    out = zero()
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(K - i):
            out[i + j] += ai * b[j]
    return out


def powr(a, k):
    out = const(1)
    for _ in range(k):
        out = mul(out, a)
    return out


def inv(a):
    assert a[0] != 0
    out = zero()
    out[0] = 1 / a[0]
    for n in range(1, K):
        acc = Q(0)
        for i in range(1, n + 1):
            acc += a[i] * out[n - i]
        out[n] = -acc / a[0]
    return out


def shift_down(a):
    """Divide by e; requires a[0] == 0."""
    assert a[0] == 0, a[0]
    return a[1:] + [Q(0)]


def deriv(a):
    return [a[i + 1] * (i + 1) for i in range(K - 1)] + [Q(0)]


def integ(a):
    return [Q(0)] + [a[i] / (i + 1) for i in range(K - 1)]


def log1(a):
    """log of a series with constant term 1."""
    assert a[0] == 1
    return integ(mul(deriv(a), inv(a)))


E = zero()
E[1] = Q(1)
X = add(const(1), E)
L = [Q(0)] + [Q((-1) ** (k + 1), k) for k in range(1, K)]


def poly(terms):
    """sum c * x^a * L^b"""
    out = zero()
    for c, a, b in terms:
        out = add(out, scale(mul(powr(X, a), powr(L, b)), c))
    return out


# ---- Z6 ----
N6 = add(mul(X, X), scale(mul(X, L), 6), const(-1))
h6 = add(
    log1(scale(shift_down(N6), Q(1, 8))),
    scale(shift_down(mul(X, L)), -1),
    const(1),
    scale(mul(shift_down(add(scale(mul(X, X), -2), scale(mul(X, L), 4), const(2))), inv(shift_down(N6))), -1),
)

x2 = mul(X, X)
x3 = mul(x2, X)
L2 = mul(L, L)
L3 = mul(L2, L)
e2 = mul(E, E)
e3 = mul(e2, E)


def P(*cs):
    """polynomial in x with integer coefficients, lowest degree first"""
    out = zero()
    for i, c in enumerate(cs):
        out = add(out, scale(powr(X, i), c))
    return out


# Displayed closed forms of h1..h8 (Z6), expanded into x^a log(x)^b terms.
Z6_DISPLAY = {
    "h1": "36*x**2*L**3 - 24*x*(x**2-1)*L**2 + (11*x**2+14*x+11)*(x-1)**2*L - 12*(x+1)*(x-1)**3",
    "h2": "-(x-1)**2*(37*x**2+10*x-11) + 72*x**2*L**3 - 12*x*(6*x**2-9*x-2)*L**2"
          " + 4*x*(11*x**3-18*x**2-3*x+10)*L",
    "h3": "8*(-17*x**3-15*x**2+6*(11*x**3-24*x**2+22*x+1)*L+21*x+18*x*L**3-54*(x-2)*x*L**2+11)",
    "h4": "24*(5*x**3-58*x**2+2*(33*x**2-66*x+58)*x*L+51*x+6*x*L**3+18*(3-2*x)*x*L**2+2)",
    "h5": "48*(4*(45*x**2-73*x+28)+6*(33*x**2-40*x+12)*L+(9-36*x)*L**2)",
    "h6": "96*(279*x**2+3*(66*x**2-52*x+3)*L-266*x-18*x*L**2+36)",
    "h7": "96*(756*x**2-422*x-18*x*L**2+12*(33*x-16)*x*L+9)",
    "h8": "1152*(225*x+(66*x-3)*L-19)",
}


def expand_terms(text):
    import sympy as sp
    x, L = sp.symbols("x L")
    poly_ = sp.Poly(sp.expand(sp.sympify(text, locals={"x": x, "L": L})), x, L)
    return [(Q(int(c.p), int(c.q)), a, b) for (a, b), c in poly_.terms()]


Z6_CLOSED = {k: expand_terms(v) for k, v in Z6_DISPLAY.items()}
z6 = {"h": h6}
for k, terms in Z6_CLOSED.items():
    z6[k] = poly(terms)

# ---- Z4 ----
D4 = add(scale(mul(X, L), 4), scale(add(x2, const(-1)), Q(-2, 5)))
h4 = add(
    log1(scale(shift_down(D4), Q(5, 16))),
    mul(shift_down(add(scale(x2, -4), scale(mul(X, L), 8), const(4))),
        inv(shift_down(add(x2, scale(mul(X, L), -10), const(-1))))),
    scale(shift_down(mul(X, L)), -1),
    const(1),
)
Z4_CLOSED = {
    "h1": [(16, 2, 3), (Q(-96, 5), 3, 2), (Q(96, 5), 1, 2), (Q(172, 25), 4, 1), (Q(224, 25), 3, 1),
           (Q(-792, 25), 2, 1), (Q(224, 25), 1, 1), (Q(172, 25), 0, 1), (Q(-176, 25), 4, 0),
           (Q(352, 25), 3, 0), (Q(-352, 25), 1, 0), (Q(176, 25), 0, 0)],
    "h2": [(32, 2, 3), (Q(-288, 5), 3, 2), (48, 2, 2), (Q(96, 5), 1, 2), (Q(688, 25), 4, 1),
           (Q(-288, 25), 3, 1), (Q(-1584, 25), 2, 1), (Q(1184, 25), 1, 1), (Q(-532, 25), 4, 0),
           (Q(256, 5), 3, 0), (Q(-792, 25), 2, 0), (Q(-128, 25), 1, 0), (Q(172, 25), 0, 0)],
    "h3": [(64, 1, 3), (Q(-1728, 5), 2, 2), (384, 1, 2), (Q(8256, 25), 3, 1), (Q(-16128, 25), 2, 1),
           (Q(8832, 25), 1, 1), (Q(192, 5), 0, 1), (Q(-1568, 25), 3, 0), (Q(672, 5), 2, 0),
           (Q(-3936, 25), 1, 0), (Q(2144, 25), 0, 0)],
    "h4": [(64, 1, 3), (Q(-3456, 5), 2, 2), (576, 1, 2), (Q(24768, 25), 3, 1), (Q(-49536, 25), 2, 1),
           (Q(28032, 25), 1, 1), (Q(3552, 25), 3, 0), (Q(-9408, 25), 2, 0), (Q(4896, 25), 1, 0),
           (Q(192, 5), 0, 0)],
    "h5": [(Q(-6912, 5), 1, 2), (192, 0, 2), (Q(148608, 25), 2, 1), (Q(-202752, 25), 1, 1), (1536, 0, 1),
           (Q(145152, 25), 2, 0), (Q(-201984, 25), 1, 0), (Q(56832, 25), 0, 0)],
    "h6": [(Q(-6912, 5), 1, 2), (Q(297216, 25), 2, 1), (Q(-271872, 25), 1, 1), (384, 0, 1),
           (Q(438912, 25), 2, 0), (Q(-404736, 25), 1, 0), (1536, 0, 0)],
    "h7": [(Q(594432, 25), 2, 1), (Q(-13824, 5), 1, 1), (Q(1769472, 25), 2, 0), (Q(-340992, 25), 1, 0),
           (-384, 0, 0)],
    "h8": [(Q(1188864, 25), 1, 1), (Q(1064448, 5), 1, 0), (Q(-13824, 5), 0, 0)],
}
z4 = {"h": h4}
for k, terms in Z4_CLOSED.items():
    z4[k] = poly(terms)


def emit(out, prefix, table):
    for name, s in table.items():
        out.append(f"pub(crate) const {prefix}_{name.upper()}: [f64; {K}] = [")
        for c in s:
            out.append(f"    {float(c)!r},")
        out.append("];")
        out.append("")


def emit_terms(out, prefix, closed):
    out.append(f"/// {prefix} chain closed forms as `(coefficient, power of x, power of log x)`.")
    out.append(f"pub(crate) const {prefix}_TERMS: [&[(f64, i32, i32)]; 8] = [")
    for k in ["h1", "h2", "h3", "h4", "h5", "h6", "h7", "h8"]:
        items = ", ".join(f"({float(Q(c))!r}, {a}, {b})" for c, a, b in closed[k])
        out.append(f"    &[{items}],")
    out.append("];")
    out.append("")


if __name__ == "__main__":
    if "--check" in sys.argv:
        for nm, tab in (("z6", z6), ("z4", z4)):
            for k, s in tab.items():
                lead = next((i for i, c in enumerate(s) if c != 0), None)
                print(nm, k, "order", lead, "c_lead", float(s[lead]) if lead is not None else 0,
                      "ratio tail", [float(s[i + 1] / s[i]) if s[i] != 0 else None for i in (K - 4, K - 3, K - 2)])
        sys.exit(0)
    out = ["//! Taylor coefficients at x = 1, indexed by power of (x - 1), and the",
           "//! closed forms of the cascade functions.",
           "//!",
           "//! Generated by scripts/derive_series.py. Do not edit by hand.", ""]
    emit(out, "Z6", z6)
    emit(out, "Z4", z4)
    emit_terms(out, "Z6", Z6_CLOSED)
    emit_terms(out, "Z4", Z4_CLOSED)
    path = "crates/core/src/cascade/series.rs"
    import os
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        fh.write("\n".join(out))
    print("wrote", path)
