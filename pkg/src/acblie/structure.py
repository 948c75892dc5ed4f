"""The fundamental tensor F, its Lee forms and the basic-class decomposition."""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Mapping

import numpy as np

from .algebra import (
    ETA, G, PHI, Scalar, StructureConstants, associated_metric, freeze, is_zero, max_abs, nonzero_entries,
    resolve_tol, scalar, tensor, zeros,
)
from .curvature import levi_civita, require_lie
from .errors import MalformedF

CLASS_IDS = ("F1", "F4", "F5", "F8", "F9", "F10", "F11")


@dataclass(frozen=True, eq=False)
class FTensor:
    """Components F_ijk = F(E_i, E_j, E_k) = g((nabla_{E_i} phi) E_j, E_k)."""

    f: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "f", tensor(self.f, (3, 3, 3)))

    @classmethod
    def from_entries(cls, entries: Mapping[tuple[int, int, int], object]) -> "FTensor":
        f = zeros((3, 3, 3))
        for idx, v in entries.items():
            f[idx] = scalar(v)
        return cls(f)

    def __getitem__(self, ijk) -> Scalar:
        return self.f[ijk]

    def nonzero(self, tol: float = 0) -> dict[tuple[int, int, int], Scalar]:
        return nonzero_entries(self.f, tol)

    def __eq__(self, other):
        if not isinstance(other, FTensor):
            return NotImplemented
        return bool(np.all(self.f == other.f))

    def __add__(self, other: "FTensor") -> "FTensor":
        return FTensor(self.f + other.f)

    def __repr__(self):
        return f"FTensor({ {k: str(v) for k, v in self.nonzero().items()} })"


def compute_F_closed_form(c: StructureConstants, tol: float | None = None) -> FTensor:
    """F directly from the structure constants.

    Note F_211 = F_222 = -2 C^2_12: this is the sign produced by the
    Koszul connection, and it is what makes the F1 parameter beta equal
    theta_2 / 2.
    """
    require_lie(c, tol)
    C = c.c
    f = zeros((3, 3, 3))

    def put(value, *idx):
        for t in idx:
            f[t] = value

    put(2 * C[1, 1, 2], (1, 1, 1), (1, 2, 2))
    put(-2 * C[2, 1, 2], (2, 1, 1), (2, 2, 2))
    put(-C[1, 0, 1], (1, 2, 0), (1, 0, 2))
    put(-C[0, 0, 1], (0, 2, 0), (0, 0, 2))
    put(-C[2, 0, 2], (2, 1, 0), (2, 0, 1))
    put(C[0, 0, 2], (0, 1, 0), (0, 0, 1))
    put((C[0, 1, 2] - C[2, 0, 1] + C[1, 0, 2]) / 2, (1, 1, 0), (1, 0, 1))
    put((C[0, 1, 2] + C[2, 0, 1] - C[1, 0, 2]) / 2, (2, 2, 0), (2, 0, 2))
    put(C[0, 1, 2] + C[2, 0, 1] + C[1, 0, 2], (0, 1, 1), (0, 2, 2))
    return FTensor(f)


def compute_F_oracle(c: StructureConstants, tol: float | None = None) -> FTensor:
    """F from its definition, through the Koszul connection."""
    gam = levi_civita(c, tol).gamma
    # nabla_i (phi E_j) = sum_b PHI[b, j] nabla_i E_b
    first = np.einsum("bj,ibn->ijn", PHI, gam)
    # phi (nabla_i E_j)
    second = np.einsum("na,ija->ijn", PHI, gam)
    return FTensor(np.einsum("ijn,nk->ijk", first - second, G))


@dataclass(frozen=True)
class LeeForms:
    theta: tuple[Scalar, Scalar, Scalar]
    theta_star: tuple[Scalar, Scalar, Scalar]
    omega: tuple[Scalar, Scalar, Scalar]


def lee_forms(f: FTensor) -> LeeForms:
    F = f.f
    return LeeForms(
        theta=(F[1, 1, 0] - F[2, 2, 0], F[1, 1, 1] - F[2, 2, 1], F[1, 1, 2] - F[2, 1, 1]),
        theta_star=(F[1, 2, 0] + F[2, 1, 0], F[1, 1, 2] + F[2, 1, 1], F[1, 1, 1] + F[2, 2, 1]),
        omega=(F[0, 0, 0], F[0, 0, 1], F[0, 0, 2]),
    )


@dataclass(frozen=True)
class ClassParams:
    theta1: Scalar
    theta2: Scalar
    theta0: Scalar
    theta0_star: Scalar
    lam: Scalar
    mu: Scalar
    nu: Scalar
    omega1: Scalar
    omega2: Scalar

    def as_dict(self) -> dict[str, Scalar]:
        return {fl.name: getattr(self, fl.name) for fl in fields(self)}


# which parameters feed each basic class
CLASS_PARAMS = {
    "F1": ("theta1", "theta2"),
    "F4": ("theta0",),
    "F5": ("theta0_star",),
    "F8": ("lam",),
    "F9": ("mu",),
    "F10": ("nu",),
    "F11": ("omega1", "omega2"),
}


def class_component(cls: str, p: ClassParams) -> FTensor:
    """The F_s tensor of one basic class built from its parameters."""
    f = zeros((3, 3, 3))

    def put(value, *idx):
        for t in idx:
            f[t] = value

    if cls == "F1":
        put(p.theta1, (1, 1, 1), (1, 2, 2))
        put(-p.theta2, (2, 1, 1), (2, 2, 2))
    elif cls == "F4":
        put(p.theta0 / 2, (1, 0, 1), (1, 1, 0))
        put(-p.theta0 / 2, (2, 0, 2), (2, 2, 0))
    elif cls == "F5":
        put(p.theta0_star / 2, (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    elif cls == "F8":
        put(p.lam, (1, 0, 1), (1, 1, 0), (2, 0, 2), (2, 2, 0))
    elif cls == "F9":
        put(p.mu, (1, 0, 2), (1, 2, 0))
        put(-p.mu, (2, 0, 1), (2, 1, 0))
    elif cls == "F10":
        put(p.nu, (0, 1, 1), (0, 2, 2))
    elif cls == "F11":
        put(p.omega1, (0, 1, 0), (0, 0, 1))
        put(p.omega2, (0, 2, 0), (0, 0, 2))
    else:
        raise ValueError(f"unknown class {cls!r}")
    return FTensor(f)


@dataclass(frozen=True, eq=False)
class ClassDecomposition:
    params: ClassParams
    components: Mapping[str, FTensor]
    membership: frozenset[str]

    def total(self) -> FTensor:
        return FTensor(sum((t.f for t in self.components.values()), zeros((3, 3, 3))))


@dataclass(frozen=True)
class SymmetryDefects:
    last_two: Scalar
    phi_compat: Scalar

    @property
    def ok(self) -> bool:
        return self.last_two == 0 and self.phi_compat == 0


def check_F_symmetries(f: FTensor) -> SymmetryDefects:
    """Violation of F(x,y,z) = F(x,z,y) = F(x,phi y,phi z) + eta(y) F(x,xi,z) + eta(z) F(x,y,xi)."""
    F = np.asarray(f.f, dtype=object)
    sym = max_abs(F - F.transpose(0, 2, 1))
    phiphi = np.einsum("xab,ay,bz->xyz", F, PHI, PHI)
    xi_y = np.einsum("y,xz->xyz", ETA, F[:, 0, :])
    xi_z = np.einsum("z,xy->xyz", ETA, F[:, :, 0])
    return SymmetryDefects(sym, max_abs(F - phiphi - xi_y - xi_z))


def _params(F) -> ClassParams:
    return ClassParams(
        theta1=F[1, 1, 1],
        theta2=-F[2, 1, 1],
        theta0=F[1, 1, 0] - F[2, 2, 0],
        theta0_star=F[1, 2, 0] + F[2, 1, 0],
        lam=(F[1, 1, 0] + F[2, 2, 0]) / 2,
        mu=(F[1, 2, 0] - F[2, 1, 0]) / 2,
        nu=F[0, 1, 1],
        omega1=F[0, 0, 1],
        omega2=F[0, 0, 2],
    )


def decompose(f: FTensor, tol: float | None = None) -> ClassDecomposition:
    """Split F into its F1, F4, F5, F8, F9, F10, F11 parts.

    Membership uses literal nonzero in exact mode; with floats a class
    counts when some entry exceeds tol * (1 + max|F|).
    """
    tol = resolve_tol(tol, f.f)
    defects = check_F_symmetries(f)
    norm = max_abs(f.f)
    cutoff = tol * (1 + norm)
    if not (is_zero(defects.last_two, cutoff) and is_zero(defects.phi_compat, cutoff)):
        raise MalformedF(f"F violates its symmetries: {defects}")
    p = _params(f.f)
    components = {cls: class_component(cls, p) for cls in CLASS_IDS}
    residual = max_abs(f.f - sum((t.f for t in components.values()), zeros((3, 3, 3))))
    if not is_zero(residual, cutoff):
        raise MalformedF(f"F is not a sum of the 3-dimensional basic classes (residual {residual})")
    members = frozenset(cls for cls, t in components.items() if not is_zero(max_abs(t.f), cutoff))
    return ClassDecomposition(p, components, members or frozenset({"F0"}))


def classify(c: StructureConstants, tol: float | None = None) -> ClassDecomposition:
    return decompose(compute_F_closed_form(c, tol), tol)


# -- structures of special type -------------------------------------------------

def kcontact_defect(c: StructureConstants, tol: float | None = None) -> np.ndarray:
    """(nabla_i eta) E_j + (nabla_j eta) E_i; zero iff xi is Killing."""
    gam = levi_civita(c, tol).gamma
    # (nabla_i eta) E_j = -eta(nabla_i E_j)
    d = -np.einsum("ijk,k->ij", gam, ETA)
    return freeze(d + d.T)


@dataclass(frozen=True)
class RoutePair:
    direct: bool
    by_class: bool

    @property
    def agree(self) -> bool:
        return self.direct == self.by_class


@dataclass(frozen=True)
class SpecialStructureFlags:
    g_killing: RoutePair
    gtilde_killing: RoutePair
    phi_biinvariant: RoutePair
    phi_abelian: RoutePair
    xi_killing: RoutePair

    def items(self):
        return [(fl.name, getattr(self, fl.name)) for fl in fields(self)]


def _ad_invariance(C, metric) -> np.ndarray:
    # metric([E_i,E_j],E_k) - metric(E_i,[E_j,E_k])
    return np.einsum("mij,mk->ijk", C, metric) - np.einsum("im,mjk->ijk", metric, C)


def special_structures(c: StructureConstants, tol: float | None = None) -> SpecialStructureFlags:
    tol = resolve_tol(tol, c.c)
    require_lie(c, tol)
    C = c.c
    z = lambda arr: is_zero(max_abs(arr), tol)  # noqa: E731

    # phi [E_i, E_j] - [E_i, phi E_j]
    biinv = np.einsum("ka,aij->kij", PHI, C) - np.einsum("bj,kib->kij", PHI, C)
    # [phi E_i, phi E_j] - [E_i, E_j]
    abel = np.einsum("ai,bj,kab->kij", PHI, PHI, C) - C

    p = classify(c, tol).params
    zp = lambda *names: all(is_zero(getattr(p, n), tol) for n in names)  # noqa: E731
    return SpecialStructureFlags(
        g_killing=RoutePair(
            z(_ad_invariance(C, G)),
            zp("theta1", "theta2", "theta0", "theta0_star", "mu", "omega1", "omega2")
            and is_zero(2 * p.lam + p.nu, tol)),
        gtilde_killing=RoutePair(
            z(_ad_invariance(C, associated_metric())),
            zp("theta1", "theta2", "theta0", "theta0_star", "omega1", "omega2")
            and is_zero(2 * p.lam - p.mu, tol) and is_zero(p.mu - p.nu, tol)),
        phi_biinvariant=RoutePair(
            z(biinv),
            zp("theta1", "theta2", "theta0", "theta0_star", "mu", "omega1", "omega2")
            and is_zero(2 * p.lam - p.nu, tol)),
        phi_abelian=RoutePair(
            z(abel),
            zp("theta0", "theta0_star", "mu", "omega1", "omega2") and is_zero(2 * p.lam - p.nu, tol)),
        xi_killing=RoutePair(
            z(kcontact_defect(c, tol)),
            zp("theta0", "theta0_star", "mu", "omega1", "omega2")),
    )


def f_from_params(p: ClassParams) -> FTensor:
    total = zeros((3, 3, 3))
    for cls in CLASS_IDS:
        total = total + class_component(cls, p).f
    return FTensor(total)


__all__ = [
    "CLASS_IDS", "CLASS_PARAMS", "ClassDecomposition", "ClassParams", "FTensor", "LeeForms", "RoutePair",
    "SpecialStructureFlags", "SymmetryDefects", "check_F_symmetries", "class_component", "classify",
    "compute_F_closed_form", "compute_F_oracle", "decompose", "f_from_params", "kcontact_defect",
    "lee_forms", "special_structures",
]
