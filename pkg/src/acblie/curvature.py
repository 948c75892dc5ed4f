"""Levi-Civita connection and curvature of a left-invariant B-metric."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .algebra import (
    ETA_ETA, G, PHI, Scalar, StructureConstants, associated_metric, curvature_symmetry_defects,
    ell_projectors, freeze, is_lie_algebra, is_zero, jacobi_defect, kulkarni_nomizu, max_abs, phi_metric,
    resolve_tol, solve_linear, sym_entries,
)
from .errors import NoSolution, NotALieAlgebra, UnsupportedClass

if TYPE_CHECKING:
    from .structure import ClassDecomposition

# (g ⊼ g)_ijij on the three basis planes
_GG = kulkarni_nomizu(G, G)


def require_lie(c: StructureConstants, tol: float | None = None) -> None:
    if not is_lie_algebra(c, tol):
        raise NotALieAlgebra(max_abs(jacobi_defect(c)))


@dataclass(frozen=True, eq=False)
class Connection:
    """``gamma[i, j, k]`` is the E_k coefficient of nabla_{E_i} E_j."""

    gamma: np.ndarray

    def covariant(self, u, v) -> np.ndarray:
        """nabla_u v for constant-coefficient (left-invariant) fields."""
        return freeze(np.einsum("i,j,ijk->k", np.asarray(u, dtype=object), np.asarray(v, dtype=object), self.gamma))

    def torsion_defect(self, c: StructureConstants) -> Scalar:
        # nabla_i E_j - nabla_j E_i - [E_i, E_j]
        t = self.gamma - self.gamma.transpose(1, 0, 2) - c.c.transpose(1, 2, 0)
        return max_abs(t)

    def metric_defect(self) -> Scalar:
        # g(nabla_i E_j, E_k) + g(E_j, nabla_i E_k)
        low = np.einsum("ijm,mk->ijk", self.gamma, G)
        return max_abs(low + low.transpose(0, 2, 1))


def levi_civita(c: StructureConstants, tol: float | None = None) -> Connection:
    """Connection from the Koszul formula with left-invariant fields.

    2 g(nabla_i E_j, E_k) = g([E_i,E_j],E_k) + g([E_k,E_i],E_j) + g([E_k,E_j],E_i)
    """
    require_lie(c, tol)
    # B[i, j, k] = g([E_i, E_j], E_k)
    B = np.einsum("mij,mk->ijk", c.c, G)
    low = (B + B.transpose(1, 2, 0) + B.transpose(2, 1, 0)) / 2
    # G is its own inverse
    return Connection(freeze(np.einsum("ijl,lk->ijk", low, G)))


def curvature_tensor(conn: Connection, c: StructureConstants) -> np.ndarray:
    """R_ijkl = g(nabla_i nabla_j E_k - nabla_j nabla_i E_k - nabla_[E_i,E_j] E_k, E_l)."""
    gam = conn.gamma
    nn = np.einsum("jkm,imn->ijkn", gam, gam)
    br = np.einsum("mij,mkn->ijkn", c.c, gam)
    r = np.einsum("ijkn,nl->ijkl", nn - nn.transpose(1, 0, 2, 3) - br, G)
    return freeze(r)


@dataclass(frozen=True, eq=False)
class Ricci:
    rho: np.ndarray
    rho_star: np.ndarray
    tau: Scalar
    tau_star: Scalar


def ricci_and_scalars(r) -> Ricci:
    """Signature-explicit contractions on the phi-basis.

    rho_jk = R_0jk0 + R_1jk1 - R_2jk2,  rho*_jk = R_1jk2 + R_2jk1,
    tau = rho_00 + rho_11 - rho_22,    tau* = 2 rho_12.
    """
    r = np.asarray(r, dtype=object)
    rho = r[0, :, :, 0] + r[1, :, :, 1] - r[2, :, :, 2]
    rho_star = r[1, :, :, 2] + r[2, :, :, 1]
    tau = rho[0, 0] + rho[1, 1] - rho[2, 2]
    return Ricci(freeze(rho), freeze(rho_star), tau, 2 * rho[1, 2])


def sectional_curvatures(r) -> tuple[Scalar, Scalar, Scalar]:
    """(k01, k02, k12) with k_ij = -2 R_ijij / (g ⊼ g)_ijij."""
    return tuple(-2 * r[i, j, i, j] / _GG[i, j, i, j] for i, j in ((0, 1), (0, 2), (1, 2)))


def check_r3_identity(r, rho, tau) -> Scalar:
    """Max entry of R + g ⊼ (rho - tau/4 g); zero on every 3-manifold."""
    return max_abs(np.asarray(r, dtype=object) + kulkarni_nomizu(G, np.asarray(rho, dtype=object) - tau / 4 * G))


def _phi_phi(r) -> np.ndarray:
    # R(E_i, E_j, phi E_k, phi E_l)
    return np.einsum("ijab,ak,bl->ijkl", np.asarray(r, dtype=object), PHI, PHI)


def kaehler_defect(r) -> Scalar:
    """Max |R(x,y,phi z,phi w) + R(x,y,z,w)| over basis tuples."""
    return max_abs(_phi_phi(r) + np.asarray(r, dtype=object))


def phi_killed_curvature_defect(r) -> Scalar:
    """Max |R(x,y,phi z,phi w)| over basis tuples."""
    return max_abs(_phi_phi(r))


EINSTEIN_LABELS = (
    "Einstein", "eta-Einstein", "eta-complex-Einstein",
    "contact-Einstein", "h-Einstein", "v-Einstein", "phi-Einstein", "*-Einstein",
)


@dataclass(frozen=True)
class EinsteinVerdict:
    """Coefficients of rho = lam g + mu g~ + nu eta⊗eta and the labels that apply.

    ``contact`` holds the coefficients of the same tensor against
    ell1(g), ell1(g~), eta⊗eta; it is None together with ``coefficients``
    when the system has no solution.
    """

    coefficients: tuple[Scalar, Scalar, Scalar] | None
    contact: tuple[Scalar, Scalar, Scalar] | None
    labels: frozenset[str]


def einstein_taxonomy(rho, tol: float | None = None) -> EinsteinVerdict:
    rho = np.asarray(rho, dtype=object)
    tol = resolve_tol(tol, rho)
    gt = associated_metric()
    l1g, l1gt = ell_projectors(G)[0], ell_projectors(gt)[0]

    def solve(basis):
        cols = [sym_entries(b) for b in basis]
        a = [list(row) for row in zip(*cols)]
        if not is_zero(max_abs(rho - rho.T), tol):
            raise NoSolution("rho is not symmetric")
        return tuple(solve_linear(a, sym_entries(rho), tol))

    try:
        lam, mu, nu = solve((G, gt, ETA_ETA))
        lc, mc, nc = solve((l1g, l1gt, ETA_ETA))
    except NoSolution:
        return EinsteinVerdict(None, None, frozenset({"none"}))

    z = lambda v: is_zero(v, tol)  # noqa: E731
    labels = {"eta-complex-Einstein", "contact-Einstein"}
    if z(mu):
        labels.add("eta-Einstein")
        if z(nu):
            labels.add("Einstein")
    if z(nc):
        labels.add("h-Einstein")
        if z(mc):
            labels.add("phi-Einstein")
        if z(lc):
            labels.add("*-Einstein")
    if z(lc) and z(mc):
        labels.add("v-Einstein")
    return EinsteinVerdict((lam, mu, nu), (lc, mc, nc), frozenset(labels))


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    connection: Connection
    r: np.ndarray
    rho: np.ndarray
    rho_star: np.ndarray
    tau: Scalar
    tau_star: Scalar
    k01: Scalar
    k02: Scalar
    k12: Scalar
    kaehler_defect: Scalar
    phi_killed_defect: Scalar
    r3_defect: Scalar
    symmetry_defects: dict = field(default_factory=dict)

    @property
    def flat(self) -> bool:
        return is_flat(self)


def curvature_report(c: StructureConstants, tol: float | None = None) -> CurvatureReport:
    conn = levi_civita(c, tol)
    r = curvature_tensor(conn, c)
    ric = ricci_and_scalars(r)
    k01, k02, k12 = sectional_curvatures(r)
    return CurvatureReport(
        connection=conn, r=r, rho=ric.rho, rho_star=ric.rho_star, tau=ric.tau, tau_star=ric.tau_star,
        k01=k01, k02=k02, k12=k12,
        kaehler_defect=kaehler_defect(r),
        phi_killed_defect=phi_killed_curvature_defect(r),
        r3_defect=check_r3_identity(r, ric.rho, ric.tau),
        symmetry_defects=curvature_symmetry_defects(r),
    )


def is_flat(report: CurvatureReport, tol: float | None = None) -> bool:
    return is_zero(max_abs(report.r), resolve_tol(tol, report.r))


# -- per-class closed forms of R and rho-----------------------------------------

def _ricci_template(cls: str, rep: CurvatureReport) -> np.ndarray:
    tau, ts = rep.tau, rep.tau_star
    if cls == "F1":
        return tau / 2 * (G - ETA_ETA)
    if cls == "F4":
        return tau / 4 * (G + ETA_ETA)
    if cls == "F5":
        return tau / 3 * G
    if cls in ("F8", "F9"):
        return tau * ETA_ETA
    if cls == "F11":
        rho_phi = np.einsum("ab,ai,bj->ij", rep.rho, PHI, PHI)
        return rho_phi + tau / 2 * G - ts * phi_metric()
    return 0 * G


def _curvature_template(cls: str, rep: CurvatureReport) -> np.ndarray:
    tau = rep.tau
    gs = phi_metric()
    g_ee = kulkarni_nomizu(G, ETA_ETA)
    if cls == "F1":
        return -tau / 4 * kulkarni_nomizu(G, G) + tau / 2 * g_ee
    if cls == "F4":
        return -tau / 4 * g_ee
    if cls == "F5":
        return -tau / 12 * kulkarni_nomizu(gs, gs) - tau / 6 * g_ee
    if cls in ("F8", "F9"):
        return tau / 4 * kulkarni_nomizu(gs, gs) - tau / 2 * g_ee
    if cls == "F11":
        return -kulkarni_nomizu(rep.rho, ETA_ETA)
    return 0 * kulkarni_nomizu(G, G)


@dataclass(frozen=True)
class TemplateCheck:
    class_id: str
    r_defect: Scalar
    rho_defect: Scalar


def curvature_template_check(decomp: "ClassDecomposition", report: CurvatureReport) -> TemplateCheck:
    """Deviation of R and rho from the closed forms for a single basic class.

    F10 and F0 are checked against R = 0.
    """
    if len(decomp.membership) != 1:
        raise UnsupportedClass(f"template needs a single class, got {sorted(decomp.membership)}")
    (cls,) = decomp.membership
    r_def = max_abs(report.r - _curvature_template(cls, report))
    rho_def = max_abs(report.rho - _ricci_template(cls, report))
    return TemplateCheck(cls, r_def, rho_def)


def curvature_template(cls: str, report: CurvatureReport) -> np.ndarray:
    return freeze(_curvature_template(cls, report))


def ricci_template(cls: str, report: CurvatureReport) -> np.ndarray:
    return freeze(_ricci_template(cls, report))
