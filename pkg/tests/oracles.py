"""Independent oracles and hypothesis strategies.

The oracles never touch acblie's connection code: the Levi-Civita
connection is solved from its defining linear conditions with sympy, and R
is assembled from matrix commutators of the covariant-derivative operators.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import sympy as sp
from hypothesis import assume, strategies as st

from acblie import StructureConstants, jacobi_close
from acblie.errors import ZeroDenominator

GMAT = sp.diag(1, 1, -1)
# phi E0 = 0, phi E1 = E2, phi E2 = -E1; column b holds phi(E_b)
PHIMAT = sp.Matrix([[0, 0, 0], [0, 0, -1], [0, 1, 0]])


def to_sympy(x):
    return sp.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sp.nsimplify(x)


def from_sympy(x):
    x = sp.nsimplify(x)
    return Fraction(int(x.p), int(x.q))


def oracle_connection(c: StructureConstants) -> dict[tuple[int, int, int], sp.Rational]:
    """Unique torsion-free g-compatible connection, by linear solve."""
    G = {(i, j, k): sp.Symbol(f"G{i}{j}{k}") for i in range(3) for j in range(3) for k in range(3)}
    eqs = []
    for i in range(3):
        for j in range(3):
            for k in range(3):
                eqs.append(sp.Eq(G[i, j, k] - G[j, i, k], to_sympy(c[k, i, j])))
                eqs.append(sp.Eq(sum(G[i, j, m] * GMAT[m, k] + G[i, k, m] * GMAT[m, j] for m in range(3)), 0))
    sol = sp.solve(eqs, list(G.values()), dict=True)
    assert len(sol) == 1
    return {key: sol[0][sym] for key, sym in G.items()}


def nabla_matrices(gamma) -> list[sp.Matrix]:
    # column j of A_i is nabla_{E_i} E_j
    return [sp.Matrix(3, 3, lambda k, j: gamma[i, j, k]) for i in range(3)]


def oracle_curvature(c: StructureConstants, gamma=None) -> np.ndarray:
    gamma = gamma or oracle_connection(c)
    A = nabla_matrices(gamma)
    out = np.empty((3, 3, 3, 3), dtype=object)
    for i in range(3):
        for j in range(3):
            op = A[i] * A[j] - A[j] * A[i] - sum((to_sympy(c[m, i, j]) * A[m] for m in range(3)), sp.zeros(3))
            low = (op.T * GMAT)  # low[k, l] = g(op E_k, E_l)
            for k in range(3):
                for l in range(3):
                    out[i, j, k, l] = from_sympy(low[k, l])
    return out


def oracle_ricci(r) -> np.ndarray:
    """rho_jk = g^{il} R_ijkl for an arbitrary (here diagonal) inverse metric."""
    ginv = GMAT.inv()
    return np.array([[sum(from_sympy(ginv[i, l]) * r[i, j, k, l] for i in range(3) for l in range(3))
                      for k in range(3)] for j in range(3)], dtype=object)


def oracle_F(c: StructureConstants) -> np.ndarray:
    gamma = oracle_connection(c)
    A = nabla_matrices(gamma)
    out = np.empty((3, 3, 3), dtype=object)
    for i in range(3):
        # (nabla_i phi) = A_i phi - phi A_i as an endomorphism
        dphi = A[i] * PHIMAT - PHIMAT * A[i]
        low = dphi.T * GMAT
        for j in range(3):
            for k in range(3):
                out[i, j, k] = from_sympy(low[j, k])
    return out


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def lie_algebras(draw):
    free = {name: draw(rationals) for name in ("c1_12", "c2_12", "c1_01", "c2_02", "c0_01", "c0_02")}
    try:
        return jacobi_close(**free)
    except ZeroDenominator:
        assume(False)


@st.composite
def symmetric_tensors(draw):
    vals = [draw(rationals) for _ in range(6)]
    m = np.empty((3, 3), dtype=object)
    it = iter(vals)
    for i in range(3):
        for j in range(i, 3):
            m[i, j] = m[j, i] = next(it)
    return m
