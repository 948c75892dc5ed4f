"""Scalars, small dense tensors and the fixed almost contact B-metric structure.

Everything lives on the phi-basis {E0 = xi, E1, E2 = phi E1} with
g = diag(1, 1, -1).  Tensors are numpy object arrays holding
``fractions.Fraction`` entries (exact mode) or Python floats (float mode);
numpy's ``einsum`` works on both, so the same code serves the two modes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NoSolution, ZeroDenominator

DIM = 3
INDICES = range(DIM)
PAIRS = ((0, 1), (0, 2), (1, 2))
DEFAULT_TOL = 1e-9

Scalar = Fraction | float


def scalar(x) -> Scalar:
    """Coerce *x* to an exact Fraction, or keep it as float (float mode)."""
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (Fraction, Rational, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def tensor(data, shape: tuple[int, ...] | None = None) -> np.ndarray:
    """Build a read-only object array of scalars."""
    arr = np.array(data, dtype=object)
    if shape is not None and arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = scalar(v)
    out.flags.writeable = False
    return out


def zeros(shape: tuple[int, ...]) -> np.ndarray:
    return np.full(shape, Fraction(0), dtype=object)


def freeze(arr: np.ndarray) -> np.ndarray:
    """Normalise entries (einsum may emit plain ints) and mark read-only."""
    return tensor(arr)


def is_exact(*arrays) -> bool:
    return all(not isinstance(v, float) for a in arrays for v in np.asarray(a, dtype=object).flat)


def resolve_tol(tol: float | None, *arrays) -> float:
    """Explicit tolerance wins; otherwise 0 for exact data and DEFAULT_TOL for floats."""
    if tol is not None:
        return tol
    return 0 if is_exact(*arrays) else DEFAULT_TOL


def is_zero(x, tol: float = 0) -> bool:
    return abs(x) <= tol


def max_abs(arr) -> Scalar:
    vals = [abs(v) for v in np.asarray(arr, dtype=object).flat]
    return max(vals, default=Fraction(0))


def outer(u, v) -> np.ndarray:
    return freeze(np.einsum("i,j->ij", np.asarray(u, dtype=object), np.asarray(v, dtype=object)))


# -- the fixed structure ------------------------------------------------------

G = tensor(np.diag([1, 1, -1]))
# PHI[a, b] is the E_a component of phi(E_b)
PHI = tensor([[0, 0, 0], [0, 0, -1], [0, 1, 0]])
XI = tensor([1, 0, 0])
ETA = tensor([1, 0, 0])
ETA_ETA = outer(ETA, ETA)


def basis_vector(i: int) -> np.ndarray:
    return tensor([1 if a == i else 0 for a in INDICES])


@dataclass(frozen=True, eq=False)
class AcbStructure:
    """The almost contact B-metric structure (phi, xi, eta, g) on the phi-basis."""

    phi: np.ndarray = PHI
    xi_index: int = 0
    eta: np.ndarray = ETA
    g: np.ndarray = G

    @property
    def xi(self) -> np.ndarray:
        return basis_vector(self.xi_index)

    def defects(self) -> dict[str, Scalar]:
        """Max violation of each algebraic relation; all zero for the standard structure."""
        phi, g, eta, xi = self.phi, self.g, self.eta, self.xi
        ident = np.identity(DIM, dtype=object)
        phi2 = phi.dot(phi)
        compat = np.einsum("ai,bj,ab->ij", phi, phi, g) + g - np.einsum("i,j->ij", eta, eta)
        return {
            "phi xi": max_abs(phi.dot(xi)),
            "phi^2": max_abs(phi2 + ident - np.einsum("a,b->ab", xi, eta)),
            "eta o phi": max_abs(eta.dot(phi)),
            "eta(xi)": abs(eta.dot(xi) - 1),
            "g symmetric": max_abs(g - g.T),
            "B-metric": max_abs(compat),
        }


ACB = AcbStructure()


def associated_metric() -> np.ndarray:
    """g~(x, y) = g(x, phi y) + eta(x) eta(y) on basis pairs."""
    return freeze(G.dot(PHI) + ETA_ETA)


def phi_metric() -> np.ndarray:
    """g*(x, y) = g(x, phi y) = g~ - eta (x) eta."""
    return freeze(G.dot(PHI))


# -- structure constants ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StructureConstants:
    """C^k_ij of [E_i, E_j] = C^k_ij E_k, stored as ``c[k, i, j]``."""

    c: np.ndarray

    def __post_init__(self):
        arr = tensor(self.c, (DIM, DIM, DIM))
        if max_abs(arr + arr.transpose(0, 2, 1)) != 0:
            raise ValueError("structure constants must be antisymmetric in (i, j)")
        object.__setattr__(self, "c", arr)

    @classmethod
    def from_brackets(cls, brackets: Mapping[tuple[int, int], Sequence]) -> "StructureConstants":
        """Build from {(i, j): (C^0_ij, C^1_ij, C^2_ij)} with i < j."""
        c = zeros((DIM, DIM, DIM))
        for (i, j), coeffs in brackets.items():
            if (i, j) not in PAIRS:
                raise ValueError(f"bracket index pair must satisfy i < j in {{0,1,2}}, got {(i, j)}")
            for k, v in enumerate(coeffs):
                c[k, i, j] = scalar(v)
                c[k, j, i] = -c[k, i, j]
        return cls(c)

    @classmethod
    def abelian(cls) -> "StructureConstants":
        return cls(zeros((DIM, DIM, DIM)))

    def __getitem__(self, kij: tuple[int, int, int]) -> Scalar:
        return self.c[kij]

    def bracket(self, u, v) -> np.ndarray:
        return freeze(np.einsum("kij,i,j->k", self.c, np.asarray(u, dtype=object), np.asarray(v, dtype=object)))

    def brackets(self) -> dict[tuple[int, int], tuple[Scalar, ...]]:
        return {(i, j): tuple(self.c[:, i, j]) for i, j in PAIRS}

    @property
    def exact(self) -> bool:
        return is_exact(self.c)

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return bool(np.all(self.c == other.c))

    def __hash__(self):
        return hash(tuple(self.c.flat))

    def __repr__(self):
        parts = []
        for (i, j), v in self.brackets().items():
            terms = " + ".join(f"{x}*E{k}" for k, x in enumerate(v) if x != 0) or "0"
            parts.append(f"[E{i},E{j}]={terms}")
        return f"StructureConstants({', '.join(parts)})"


def jacobi_defect(c: StructureConstants) -> np.ndarray:
    """Jacobi sums, one row per unordered pair (i, j) with k the remaining index.

    Row order follows PAIRS; the rows differ only by sign because the Jacobi
    sum is totally antisymmetric, and all vanish iff *c* is a Lie algebra.
    """
    C = c.c
    # D[a, b, k] = [[E_a, E_b], E_k]
    D = np.einsum("mab,nmk->abkn", C, C)
    rows = []
    for i, j in PAIRS:
        k = 3 - i - j
        rows.append(D[i, j, k] + D[j, k, i] + D[k, i, j])
    return freeze(np.array(rows, dtype=object))


def is_lie_algebra(c: StructureConstants, tol: float | None = None) -> bool:
    return is_zero(max_abs(jacobi_defect(c)), resolve_tol(tol, c.c))


def jacobi_close(*, c1_12, c2_12, c1_01, c2_02, c0_01, c0_02) -> StructureConstants:
    """Complete six free coefficients to a Lie algebra.

    The three coefficients with pairwise distinct indices (C^0_12, C^1_02,
    C^2_01) are solved from the Jacobi identity.  Raises ZeroDenominator
    when the closed form does not apply.
    """
    c1_12, c2_12, c1_01, c2_02, c0_01, c0_02 = map(scalar, (c1_12, c2_12, c1_01, c2_02, c0_01, c0_02))
    denominators = {
        "C^1_01 + C^2_02": c1_01 + c2_02,
        "C^0_01 - C^2_12": c0_01 - c2_12,
        "C^0_02 + C^1_12": c0_02 + c1_12,
    }
    for name, d in denominators.items():
        if d == 0:
            raise ZeroDenominator(name)
    c0_12 = (c1_12 * c0_01 + c2_12 * c0_02) / denominators["C^1_01 + C^2_02"]
    c1_02 = (c1_01 * c0_02 - c1_12 * c2_02) / denominators["C^0_01 - C^2_12"]
    c2_01 = (c0_01 * c2_02 + c1_01 * c2_12) / denominators["C^0_02 + C^1_12"]
    return StructureConstants.from_brackets({
        (0, 1): (c0_01, c1_01, c2_01),
        (0, 2): (c0_02, c1_02, c2_02),
        (1, 2): (c0_12, c1_12, c2_12),
    })


# -- (0,2) and (0,4) tensor operations -----------------------------------------

def kulkarni_nomizu(a, h) -> np.ndarray:
    """(a ⊼ h)_xyzw = a_xz h_yw - a_yz h_xw + a_yw h_xz - a_xw h_yz."""
    a = np.asarray(a, dtype=object)
    h = np.asarray(h, dtype=object)
    t = (np.einsum("xz,yw->xyzw", a, h) - np.einsum("yz,xw->xyzw", a, h)
         + np.einsum("yw,xz->xyzw", a, h) - np.einsum("xw,yz->xyzw", a, h))
    return freeze(t)


def curvature_symmetry_defects(t) -> dict[str, Scalar]:
    """Max violation of the curvature-like symmetries and the first Bianchi identity."""
    t = np.asarray(t, dtype=object)
    bianchi = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    return {
        "antisym 12": max_abs(t + t.transpose(1, 0, 2, 3)),
        "antisym 34": max_abs(t + t.transpose(0, 1, 3, 2)),
        "bianchi": max_abs(bianchi),
    }


_H = freeze(-PHI.dot(PHI))      # h(x) = -phi^2 x
_V = outer(XI, ETA)             # v(x) = eta(x) xi


def ell_projectors(s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    s = np.asarray(s, dtype=object)
    l1 = _H.T.dot(s).dot(_H)
    l2 = _V.T.dot(s).dot(_V)
    l3 = _V.T.dot(s) + s.dot(_V) - 2 * l2
    return freeze(l1), freeze(l2), freeze(l3)


def sym_entries(s) -> list[Scalar]:
    """The 6 independent entries of a symmetric 3x3 array, row-major upper triangle."""
    return [s[i, j] for i in INDICES for j in INDICES if i <= j]


def solve_linear(a: Sequence[Sequence], b: Sequence, tol: float = 0) -> list[Scalar]:
    """Solve the (possibly overdetermined) system a x = b by row reduction.

    Free variables are set to zero.  Raises NoSolution if a residual row
    exceeds *tol*.
    """
    rows = [[scalar(v) for v in row] + [scalar(rhs)] for row, rhs in zip(a, b)]
    n = len(rows[0]) - 1 if rows else 0
    pivots = []
    r = 0
    for col in range(n):
        best = max(range(r, len(rows)), key=lambda i: abs(rows[i][col]), default=None)
        if best is None or is_zero(rows[best][col], tol):
            continue
        rows[r], rows[best] = rows[best], rows[r]
        p = rows[r][col]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    for row in rows[r:]:
        if not is_zero(row[-1], tol):
            raise NoSolution(f"residual {row[-1]}")
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = rows[i][-1]
    return x


def index_tuples(rank: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(INDICES, repeat=rank)


def nonzero_entries(arr, tol: float = 0) -> dict[tuple[int, ...], Scalar]:
    """Entries above *tol*, keyed by index tuple in sorted order."""
    return {idx: v for idx, v in sorted(np.ndenumerate(np.asarray(arr, dtype=object))) if not is_zero(v, tol)}
