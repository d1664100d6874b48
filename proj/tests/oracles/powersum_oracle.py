"""High-precision reference values for the power-sum tests.

Independent of the C++ code: roots are found with mpmath.findroot on the
defining polynomial systems, not on the g/h ratio functions.
"""
import mpmath as mp

mp.mp.dps = 40


def m_value(A, B):
    # minimise y1^7 + y2^7 on y1^3 + y2^3 = A^3, y1^5 + y2^5 = B^5, 0 <= y1 <= y2
    A, B = mp.mpf(A), mp.mpf(B)
    if abs(B / A - 1) < mp.mpf(10) ** -30:
        return A ** 7
    # parameterise y1 = A cos(t)^(2/3), y2 = A sin(t)^(2/3) on the A-sphere
    def f(t):
        y1 = A * mp.cos(t) ** (mp.mpf(2) / 3)
        y2 = A * mp.sin(t) ** (mp.mpf(2) / 3)
        return y1 ** 5 + y2 ** 5 - B ** 5
    # y1 <= y2 means t in [pi/4, pi/2]; f increases towards pi/2
    t = mp.findroot(f, (mp.pi / 4 + mp.mpf(10) ** -30, mp.pi / 2), solver="anderson")
    y1 = A * mp.cos(t) ** (mp.mpf(2) / 3)
    y2 = A * mp.sin(t) ** (mp.mpf(2) / 3)
    return y1 ** 7 + y2 ** 7


def excess(x1, x2, x3):
    xs = [mp.mpf(x) for x in (x1, x2, x3)]
    At = mp.fsum(x ** 3 for x in xs) ** (mp.mpf(1) / 3)
    Bt = mp.fsum(x ** 5 for x in xs) ** (mp.mpf(1) / 5)
    return mp.fsum(x ** 7 for x in xs) - m_value(At, Bt), Bt / At


if __name__ == "__main__":
    print("mu =", mp.nstr(mp.mpf(36) / 5 * mp.mpf(12) ** (-mp.mpf(5) / 3), 20))
    print("2^(-2/15) =", mp.nstr(mp.mpf(2) ** (-mp.mpf(2) / 15), 20))
    print("3^(-2/15) =", mp.nstr(mp.mpf(3) ** (-mp.mpf(2) / 15), 20))
    print("m(9^(1/3),33^(1/5)) =", mp.nstr(m_value(mp.mpf(9) ** (mp.mpf(1) / 3), mp.mpf(33) ** (mp.mpf(1) / 5)), 20))
    print("m(1,2^(-2/15)) =", mp.nstr(m_value(1, mp.mpf(2) ** (-mp.mpf(2) / 15)), 20))
    for trip in [(1, 0.5, 0.2), (1, 0.3, 0.1), (2, 1, 0.5)]:
        e, r = excess(*trip)
        print("excess", trip, mp.nstr(e, 20), "ratio", mp.nstr(r, 12))
    g, d = mp.mpf(1), mp.mpf(2)
    print("hessian(1,2) closed =", 6300 * g ** 7 * d ** 4 * (g ** 2 - d ** 2) ** 3)
