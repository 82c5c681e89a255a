"""Independent reference values for the C++ tests.

Everything here integrates the defining ODEs directly with high-order
adaptive solvers or quadrature; nothing reuses the closed forms of the
library. Run with: python3 reference_values.py
"""
import numpy as np
from scipy.integrate import solve_ivp, quad
from scipy.optimize import brentq

TOL = dict(method="DOP853", rtol=1e-13, atol=1e-15)


def g(u, v, p):
    g1, g2, g3, g4 = p
    return g1 * u - g2 * v / (g3 * v + g4)


def flow(u, v0, t, p):
    if t == 0:
        return v0
    return solve_ivp(lambda s, y: [g(u, y[0], p)], (0, t), [v0], **TOL).y[0, -1]


def main():
    pstar = (1.0, 1.0, 3.0, 1.0)
    a, b = 1.0, 2.0
    print("outside(1,1)", repr(flow(0, 1.0, 1.0, pstar)))
    print("inside(0,0.1)", repr(flow(1, 0.0, 0.1, pstar)))
    print("inside(0,0.5)", repr(flow(1, 0.0, 0.5, pstar)))

    other = (2.0, 1.0, 1.5, 0.5)
    print("other outside(3,2)", repr(flow(0, 3.0, 2.0, other)))
    print("other inside(0.2,4)", repr(flow(1, 0.2, 4.0, other)))
    print("other outside(1e-3,7)", repr(flow(0, 1e-3, 7.0, other)))

    # Shrinking interval: x2(t) = 1 + int_0^t (a - b*G1(1,s)) ds.
    def x2(t):
        sol = solve_ivp(lambda s, y: [g(1, y[0], pstar), a - b * y[0]], (0, t), [1.0, 1.0], **TOL)
        return sol.y[1, -1], sol.y[0, -1]

    ta = brentq(lambda t: x2(t)[0], 0.1, 1.0, xtol=1e-15)
    print("shrinking T_A", repr(ta))
    arrive = brentq(lambda t: x2(t)[0] - 0.9, 1e-6, ta, xtol=1e-15)
    v_arr = x2(arrive)[1]
    print("shrinking arrival(0.9)", repr(arrive))
    print("shrinking v(0.9,0.5)", repr(flow(0, v_arr, 0.5 - arrive, pstar)))

    # Expanding: the front reaches 1.5 at t = 0.5, then inside flow from 0.
    print("expanding v(1.5,2)", repr(flow(1, 0.0, 1.5, pstar)))

    # Ill-posed continuations s' = a - b*G(v0(s), t), v0 = max(0, a/b - atan s).
    def v0(s):
        return max(0.0, a / b - np.arctan(s))

    for name, u in (("front", 1), ("back", 0)):
        def rhs(t, y):
            return [a - b * flow(u, v0(y[0]), t, pstar)]
        sol = solve_ivp(rhs, (0, 0.1), [0.0], method="DOP853", rtol=1e-12, atol=1e-14,
                        dense_output=True)
        print(f"illposed {name} s(0.05)", repr(sol.sol(0.05)[0]), "s(0.1)", repr(sol.y[0, -1]))

    # Integral identity check for the mass of the shrinking interval.
    mass = quad(lambda t: 2 * (a - b * flow(1, 1.0, t, pstar)), 0, 0.3, epsabs=1e-14)[0]
    print("shrinking length(0.3)", repr(2 + mass))


if __name__ == "__main__":
    main()
