"""Search a quadratic deformation of the so(3) bracket polynomials that keeps the
polynomial Jacobi identity, and print the member used as the shipped fixture.

Ansatz, for (A, B, C) a cyclic permutation of (1, 2, 3):

    W_AB = T_C + alpha_C * T_C^2 + beta_C * T_A * T_B

The Jacobi condition is a polynomial identity in T; its coefficients give
polynomial equations in (alpha, beta), solved with sympy.

    python scripts/derive_nonlinear_w.py
"""

import itertools

import sympy as sp

T = sp.symbols("T1:4")
alpha = sp.symbols("alpha1:4")
beta = sp.symbols("beta1:4")
CYCLIC = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]


def ansatz():
    W = [[sp.Integer(0)] * 3 for _ in range(3)]
    for a, b, c in CYCLIC:
        w = T[c] + alpha[c] * T[c] ** 2 + beta[c] * T[a] * T[b]
        W[a][b] = w
        W[b][a] = -w
    return W


def jacobi_equations(W):
    eqs = set()
    for a, b, c in itertools.product(range(3), repeat=3):
        expr = sum(
            W[x][d] * sp.diff(W[y][z], T[d])
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b))
            for d in range(3)
        )
        poly = sp.Poly(sp.expand(expr), *T)
        eqs.update(c for c in poly.coeffs() if c != 0)
    return sorted(eqs, key=sp.default_sort_key)


def main():
    W = ansatz()
    eqs = jacobi_equations(W)
    print(f"{len(eqs)} coefficient equations")
    sols = sp.solve(eqs, list(alpha) + list(beta), dict=True)
    for s in sols:
        print("solution:", s)
    chosen = {a: 1 for a in alpha}
    chosen.update({b: 0 for b in beta})
    ok = any(all(sp.simplify(v.subs(chosen) - chosen[k]) == 0 for k, v in s.items()) for s in sols)
    residual = [sp.simplify(e.subs(chosen)) for e in eqs]
    print("chosen member alpha = 1, beta = 0 satisfies all equations:", all(r == 0 for r in residual),
          "| lies on a solution branch:", ok)
    for a, b, c in CYCLIC:
        a, b = min(a, b), max(a, b)
        print(f"W_{a + 1}{b + 1} =", sp.expand(W[a][b].subs(chosen)))


if __name__ == "__main__":
    main()
