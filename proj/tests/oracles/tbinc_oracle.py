"""Independent oracles for the digit curve, using exact fractions.

f(sum w_i 2^-i) = sum w_i 2^-(i^2); F is its integral.  Values here are
computed by direct digit summation and monotone Riemann brackets, never by
the shift recursion used in the library.
"""
from fractions import Fraction as Q
import mpmath

mpmath.mp.prec = 400


def tail(n, terms=40):
    """T_n = sum_{i>n} 2^-(i^2), truncated (remaining terms < 2^-(n+terms)^2)."""
    return sum(Q(1, 2 ** (i * i)) for i in range(n + 1, n + terms))


def digits(num, den, m):
    out = []
    r = num
    for _ in range(m):
        r *= 2
        out.append(1 if r >= den else 0)
        if r >= den:
            r -= den
    return out


def f_digits(ds):
    return sum(Q(d, 2 ** ((i + 1) ** 2)) for i, d in enumerate(ds))


def f_dyadic(x):
    """f at a dyadic x in [0,1) via its finite expansion; f(1) = S."""
    if x == 1:
        return tail(0)
    return f_digits(digits(x.numerator, x.denominator, 64))


def riemann_bracket(x, panels):
    """Lower/upper sums of the nondecreasing f over [0, x]."""
    h = x / panels
    lo = up = Q(0)
    prev = f_dyadic(Q(0))
    for j in range(1, panels + 1):
        cur = f_dyadic(h * j) if h * j < 1 else tail(0)
        lo += prev * h
        up += cur * h
        prev = cur
    return lo, up


if __name__ == "__main__":
    S = tail(0)
    print("S    =", mpmath.mpf(S.numerator) / S.denominator)
    print("T1   =", float(tail(1)), " T2 =", float(tail(2)))
    f13 = f_digits(digits(1, 3, 8))
    print("f(1/3) depth-8 head =", mpmath.mpf(f13.numerator) / f13.denominator,
          " + tail<=", float(tail(8)))
    for x in (Q(1), Q(1, 2)):
        lo, up = riemann_bracket(x, 2 ** 14)
        print("F(%s) in [%.12f, %.12f]" % (x, float(lo), float(up)))
    lo, up = riemann_bracket(Q(1, 2), 2 ** 14)
    print("b(1/2,right) in [%.12f, %.12f]" % (float(lo - Q(1, 4)), float(up - Q(1, 4))))
    print("closed-form checks: S/2 =", float(S / 2), " (S-1/2)/4 =", float((S - Q(1, 2)) / 4))
