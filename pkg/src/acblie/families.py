"""Named algebra families, a random generator and reference expected values.

``expected_curvature`` and ``PARAMETER_RELATIONS`` reproduce the reference
tables verbatim, errors included; they exist to be compared against, never
to feed a computation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .algebra import Scalar, StructureConstants, jacobi_close, scalar, zeros
from .errors import ExhaustedRetries, InvalidSpec, ZeroDenominator

FAMILY_IDS = ("F1", "F4", "F5", "F8", "F9", "F10", "F11")
TWO_PARAMETER = ("F1", "F11")


@dataclass(frozen=True)
class FamilySpec:
    class_id: str
    alpha: Scalar
    beta: Scalar = Fraction(0)

    def __post_init__(self):
        if self.class_id not in FAMILY_IDS:
            raise InvalidSpec(f"unknown class {self.class_id!r}; expected one of {', '.join(FAMILY_IDS)}")
        try:
            object.__setattr__(self, "alpha", scalar(self.alpha))
            object.__setattr__(self, "beta", scalar(self.beta))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidSpec(str(exc)) from exc
        if self.class_id not in TWO_PARAMETER and self.beta != 0:
            raise InvalidSpec(f"{self.class_id} takes a single parameter; beta must be 0")


@dataclass(frozen=True)
class ExampleSpec:
    a1: Scalar
    a2: Scalar

    def __post_init__(self):
        object.__setattr__(self, "a1", scalar(self.a1))
        object.__setattr__(self, "a2", scalar(self.a2))


def construct_class_family(spec: FamilySpec) -> StructureConstants:
    a, b = spec.alpha, spec.beta
    z = 0 * a
    rows = {
        "F1": {(0, 1): (z, z, z), (0, 2): (z, z, z), (1, 2): (z, a, b)},
        "F4": {(0, 1): (z, z, a), (0, 2): (z, -a, z), (1, 2): (z, z, z)},
        "F5": {(0, 1): (z, a, z), (0, 2): (z, z, a), (1, 2): (z, z, z)},
        "F8": {(0, 1): (z, z, a), (0, 2): (z, a, z), (1, 2): (-2 * a, z, z)},
        "F9": {(0, 1): (z, a, z), (0, 2): (z, z, -a), (1, 2): (z, z, z)},
        "F10": {(0, 1): (z, z, a), (0, 2): (z, a, z), (1, 2): (z, z, z)},
        "F11": {(0, 1): (a, z, z), (0, 2): (b, z, z), (1, 2): (z, z, z)},
    }
    return StructureConstants.from_brackets(rows[spec.class_id])


def construct_example(spec: ExampleSpec) -> StructureConstants:
    """[E0,E1] = -a1 E1 - a2 E2, [E0,E2] = -a2 E1 + a1 E2, [E1,E2] = 0."""
    a1, a2 = spec.a1, spec.a2
    z = 0 * a1
    return StructureConstants.from_brackets({(0, 1): (z, -a1, -a2), (0, 2): (z, -a2, a1), (1, 2): (z, z, z)})


def heisenberg(t=1) -> StructureConstants:
    return StructureConstants.from_brackets({(1, 2): (t, 0, 0)})


def structured_patterns(t=1) -> dict[str, StructureConstants]:
    """Algebras the closure formula cannot produce, incl. one witness per special structure."""
    return {
        "abelian": StructureConstants.abelian(),
        "heisenberg": heisenberg(t),
        "g-killing witness": StructureConstants.from_brackets({(0, 1): (0, 0, -t), (0, 2): (0, -t, 0), (1, 2): (t, 0, 0)}),
        "gtilde-killing witness": StructureConstants.from_brackets({(0, 1): (0, -t, 0), (0, 2): (0, 0, t), (1, 2): (t, 0, 0)}),
        "abelian-phi witness": StructureConstants.from_brackets({(1, 2): (t, 2 * t, -t)}),
    }


def _draw(rng: random.Random, bound: Fraction) -> Fraction:
    top = int(bound)
    num = rng.randint(-top, top)
    den = rng.randint(1, max(1, top))
    return Fraction(num, den)


def random_lie_algebra(seed: int, bound=5, max_tries: int = 1000) -> StructureConstants:
    """Deterministic Lie algebra in general position.

    Numerators lie in [-bound, bound] and denominators in [1, bound]; a
    bound below 1 only ever draws zeros.
    """
    bound = scalar(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    rng = random.Random(seed)
    for _ in range(max_tries):
        free = {name: _draw(rng, bound) for name in ("c1_12", "c2_12", "c1_01", "c2_02", "c0_01", "c0_02")}
        try:
            return jacobi_close(**free)
        except ZeroDenominator:
            continue
    raise ExhaustedRetries(f"no usable draw in {max_tries} attempts with bound {bound}")


# -- reference expected values --------------------------------------------------

@dataclass(frozen=True)
class ExpectedCurvature:
    """Listed non-zero values of one table row; everything unlisted is claimed zero.

    ``r`` is keyed by the index tuples as printed; symmetric partners are
    implied.  ``rho`` and ``rho_star`` list both (i, j) and (j, i).
    """

    r: dict = field(default_factory=dict)
    rho: dict = field(default_factory=dict)
    rho_star: dict = field(default_factory=dict)
    tau: Scalar = Fraction(0)
    tau_star: Scalar = Fraction(0)
    k01: Scalar = Fraction(0)
    k02: Scalar = Fraction(0)
    k12: Scalar = Fraction(0)

    def r_tensor(self) -> np.ndarray:
        """Complete the listed R entries under the curvature-tensor symmetries."""
        t = zeros((3, 3, 3, 3))
        for (i, j, k, l), v in self.r.items():
            for (a, b, c, d), s in (((i, j, k, l), 1), ((j, i, k, l), -1), ((i, j, l, k), -1), ((j, i, l, k), 1)):
                t[a, b, c, d] = s * v
                t[c, d, a, b] = s * v
        return t

    def matrix(self, which: str) -> np.ndarray:
        m = zeros((3, 3))
        for idx, v in getattr(self, which).items():
            m[idx] = v
        return m


def expected_curvature(spec: FamilySpec) -> ExpectedCurvature:
    a, b = spec.alpha, spec.beta
    a2, b2 = a * a, b * b
    cid = spec.class_id
    if cid == "F1":
        v = a2 - b2
        return ExpectedCurvature(
            r={(1, 2, 1, 2): v}, rho={(1, 1): v, (2, 2): -v}, rho_star={(1, 2): v, (2, 1): v},
            tau=2 * v, k12=v)
    if cid == "F4":
        return ExpectedCurvature(
            r={(0, 1, 0, 1): -a2, (0, 2, 0, 2): a2}, rho={(0, 0): 2 * a2, (1, 1): a2, (2, 2): -a2},
            tau=4 * a2, k01=a2, k02=a2)
    if cid == "F5":
        return ExpectedCurvature(
            r={(0, 1, 0, 1): a2, (0, 2, 0, 2): -a2, (1, 2, 1, 2): -a2},
            rho={(0, 0): -2 * a2, (1, 1): -2 * a2, (2, 2): 2 * a2}, rho_star={(1, 2): -a2, (2, 1): -a2},
            tau=-6 * a2, k01=-a2, k02=-a2, k12=-a2)
    if cid in ("F8", "F9"):
        return ExpectedCurvature(
            r={(0, 1, 0, 1): a2, (0, 2, 0, 2): -a2, (1, 2, 1, 2): a2},
            rho={(0, 0): -2 * a2}, rho_star={(1, 2): a2, (2, 1): a2},
            tau=-2 * a2, k01=-a2, k02=-a2, k12=a2)
    if cid == "F10":
        return ExpectedCurvature()
    if cid == "F11":
        return ExpectedCurvature(
            r={(0, 1, 0, 1): a2, (0, 2, 0, 2): b2, (0, 1, 2, 0): -a * b},
            rho={(1, 1): -a2, (2, 2): -b2, (1, 2): -a * b, (2, 1): -a * b, (0, 0): b2 - a2},
            tau=2 * (b2 - a2), tau_star=-2 * a * b, k01=-a2, k02=b2)
    raise InvalidSpec(cid)


# Reference parameter relations: family -> list of (parameter, claimed value(alpha, beta), Lee-form expression)
PARAMETER_RELATIONS: dict[str, list[tuple[str, Callable[[Scalar, Scalar], Scalar], str]]] = {
    "F1": [("theta1", lambda a, b: 2 * a, "alpha = theta1/2"), ("theta2", lambda a, b: 2 * b, "beta = theta2/2")],
    "F4": [("theta0", lambda a, b: 2 * a, "alpha = theta0/2")],
    "F5": [("theta0_star", lambda a, b: -2 * a, "alpha = -theta0*/2")],
    "F8": [("lam", lambda a, b: -a, "alpha = -lambda")],
    "F9": [("mu", lambda a, b: -a, "alpha = -mu")],
    "F10": [("nu", lambda a, b: 2 * a, "alpha = nu/2")],
    "F11": [("omega2", lambda a, b: -a, "alpha = -omega2"), ("omega1", lambda a, b: b, "beta = omega1")],
}


DEFAULT_GRID = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "1/2", "1", "2"))
EXAMPLE_POINTS = ((1, 3), (2, -1), (1, 0), (0, 1))


def family_specs(grid=DEFAULT_GRID) -> Iterator[FamilySpec]:
    grid = [scalar(x) for x in grid]
    for cid in FAMILY_IDS:
        if cid in TWO_PARAMETER:
            for a in grid:
                for b in grid:
                    yield FamilySpec(cid, a, b)
        else:
            for a in grid:
                yield FamilySpec(cid, a)


def population(grid=DEFAULT_GRID, seeds: int = 100, base_seed: int = 0, bound=5) -> Iterator[tuple[str, StructureConstants]]:
    """Labelled test population: grid families, the example, fixed patterns, random algebras."""
    for spec in family_specs(grid):
        label = f"{spec.class_id}(alpha={spec.alpha}" + (f", beta={spec.beta})" if spec.class_id in TWO_PARAMETER else ")")
        yield label, construct_class_family(spec)
    for a1, a2 in EXAMPLE_POINTS:
        yield f"example(a1={a1}, a2={a2})", construct_example(ExampleSpec(a1, a2))
    for name, c in structured_patterns().items():
        yield name, c
    for s in range(base_seed, base_seed + seeds):
        yield f"random(seed={s})", random_lie_algebra(s, bound)
