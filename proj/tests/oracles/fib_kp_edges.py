"""Band edges of Fibonacci Kronig-Penney approximants in [0, 20].

High-precision reference for the spectral tests: cell transfer matrices are
multiplied in mpmath and |trace| = 2 is solved by sign scan plus bisection.
Prints C++ initializer lists.
"""
import mpmath as mp

mp.mp.dps = 40
PHI = (1 + mp.sqrt(5)) / 2


def word(level):
    w = "a"
    for _ in range(level):
        w = "".join("ab" if c == "a" else "a" for c in w)
    return w


def free(E, l):
    if E > 0:
        k = mp.sqrt(E)
        return mp.matrix([[mp.cos(k * l), mp.sin(k * l) / k], [-k * mp.sin(k * l), mp.cos(k * l)]])
    if E < 0:
        k = mp.sqrt(-E)
        return mp.matrix([[mp.cosh(k * l), mp.sinh(k * l) / k], [k * mp.sinh(k * l), mp.cosh(k * l)]])
    return mp.matrix([[1, l], [0, 1]])


def trace(w, E):
    m = mp.eye(2)
    for c in w:
        if c == "a":
            m = free(E, 1) * mp.matrix([[1, 0], [1, 1]]) * m
        else:
            m = free(E, PHI) * m
    return m[0, 0] + m[1, 1]


def edges(w, emin, emax, n):
    def f(E, s):
        return trace(w, E) - s * 2

    out = []
    step = (mp.mpf(emax) - emin) / n
    for s in (1, -1):
        prev = f(mp.mpf(emin), s)
        for i in range(1, n + 1):
            E = emin + i * step
            cur = f(E, s)
            if prev * cur < 0:
                out.append(mp.findroot(lambda x: f(x, s), (E - step, E), solver="bisect", tol=mp.mpf(10) ** -30))
            prev = cur
    return sorted(out)


for level in (3, 5):
    w = word(level)
    e = edges(w, 0, 20, 40000)
    print(f"// level {level}: {w} ({len(e)} edges)")
    print("{" + ", ".join(mp.nstr(x, 17) for x in e) + "}")
    for E in (0.5, 3.0, 10.0, -2.0):
        print(f"// trace({E}) = {mp.nstr(trace(w, mp.mpf(E)), 17)}")
