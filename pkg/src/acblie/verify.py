"""Whole-population verification of identities and reference claims.

Each check returns a CheckResult listing every failing case.  Findings that
are known sign conventions of the reference relations are collected as
documented discrepancies or ambiguities and never fail a run.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import (
    StructureConstants, curvature_symmetry_defects, jacobi_defect, max_abs, scalar,
)
from .curvature import (
    CurvatureReport, EinsteinVerdict, curvature_report, curvature_template_check, einstein_taxonomy,
)
from .families import (
    DEFAULT_GRID, EXAMPLE_POINTS, PARAMETER_RELATIONS, TWO_PARAMETER, ExampleSpec, ExpectedCurvature, FamilySpec,
    construct_class_family, construct_example, expected_curvature, family_specs, random_lie_algebra,
    structured_patterns,
)
from .structure import (
    ClassDecomposition, FTensor, SpecialStructureFlags, check_F_symmetries, compute_F_closed_form,
    compute_F_oracle, decompose, special_structures,
)


@dataclass(frozen=True, eq=False)
class Analysis:
    label: str
    c: StructureConstants
    meta: FamilySpec | ExampleSpec | None
    f_closed: FTensor
    f_oracle: FTensor
    decomp: ClassDecomposition
    flags: SpecialStructureFlags
    report: CurvatureReport
    einstein: EinsteinVerdict


def analyze(label: str, c: StructureConstants, meta=None) -> Analysis:
    f = compute_F_closed_form(c)
    report = curvature_report(c)
    return Analysis(
        label=label, c=c, meta=meta, f_closed=f, f_oracle=compute_F_oracle(c), decomp=decompose(f),
        flags=special_structures(c), report=report, einstein=einstein_taxonomy(report.rho),
    )


@dataclass
class CheckResult:
    name: str
    description: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, message: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(message)


@dataclass
class VerificationReport:
    checks: list[CheckResult]
    discrepancies: list[str]
    ambiguities: list[str]
    population_size: int

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def first_failure(self) -> str | None:
        for ch in self.checks:
            if ch.failures:
                return f"{ch.name}: {ch.failures[0]}"
        return None

    def check(self, name: str) -> CheckResult:
        return next(ch for ch in self.checks if ch.name == name)


def _family_label(spec: FamilySpec) -> str:
    if spec.class_id in TWO_PARAMETER:
        return f"{spec.class_id}(alpha={spec.alpha}, beta={spec.beta})"
    return f"{spec.class_id}(alpha={spec.alpha})"


def build_population(grid=DEFAULT_GRID, seeds: int = 100, base_seed: int = 0,
                     bound=5) -> list[tuple[str, StructureConstants, object]]:
    items: list[tuple[str, StructureConstants, object]] = []
    for spec in family_specs(grid):
        items.append((_family_label(spec), construct_class_family(spec), spec))
    for a1, a2 in EXAMPLE_POINTS:
        ex = ExampleSpec(a1, a2)
        items.append((f"example(a1={a1}, a2={a2})", construct_example(ex), ex))
    for name, c in structured_patterns().items():
        items.append((name, c, None))
    for s in range(base_seed, base_seed + seeds):
        items.append((f"random(seed={s})", random_lie_algebra(s, bound), None))
    return items


# -- individual checks ------------------------------------------------------------

def check_jacobi(pop: Sequence[Analysis]) -> CheckResult:
    res = CheckResult("jacobi", "every population member satisfies the Jacobi identity")
    for a in pop:
        res.expect(max_abs(jacobi_defect(a.c)) == 0, a.label)
    return res


def check_oracle(pop: Sequence[Analysis]) -> CheckResult:
    res = CheckResult("oracle-equivalence", "closed-form F equals F built from the Koszul connection")
    for a in pop:
        diff = {k: (str(a.f_closed[k]), str(a.f_oracle[k])) for k in np.ndindex(3, 3, 3)
                if a.f_closed[k] != a.f_oracle[k]}
        res.expect(not diff, f"{a.label}: closed vs oracle differ at {diff}")
    return res


def check_f_symmetries(pop: Sequence[Analysis]) -> CheckResult:
    res = CheckResult("f-symmetries", "F and each class component satisfy the F symmetries")
    for a in pop:
        res.expect(check_F_symmetries(a.f_closed).ok, f"{a.label}: F")
        for cls, comp in a.decomp.components.items():
            res.expect(check_F_symmetries(comp).ok, f"{a.label}: component {cls}")
    return res


def _family_nonzero(spec: FamilySpec) -> bool:
    return spec.alpha != 0 or spec.beta != 0


def check_decomposition(pop: Sequence[Analysis]) -> CheckResult:
    res = CheckResult("decomposition", "class components sum to F; each family lands in its own class")
    for a in pop:
        res.expect(a.decomp.total() == a.f_closed, f"{a.label}: components do not sum to F")
        if isinstance(a.meta, FamilySpec):
            want = {a.meta.class_id} if _family_nonzero(a.meta) else {"F0"}
            res.expect(a.decomp.membership == want,
                       f"{a.label}: membership {sorted(a.decomp.membership)}, expected {sorted(want)}")
        elif isinstance(a.meta, ExampleSpec):
            p = a.decomp.params
            ok = (a.decomp.membership <= {"F9", "F10", "F0"} and p.mu == a.meta.a1 and p.nu == -2 * a.meta.a2)
            res.expect(ok, f"{a.label}: membership {sorted(a.decomp.membership)}, mu={p.mu}, nu={p.nu}")
    return res


# relations whose reference sign is a known convention mismatch
_SIGN_DOCUMENTED = {("F1", "theta2"), ("F4", "theta0")}


def check_parameter_relations(pop: Sequence[Analysis], discrepancies: list[str]) -> CheckResult:
    res = CheckResult("parameter-relations", "class parameters recover alpha, beta via the reference relations")
    seen: set[str] = set()
    for a in pop:
        if not isinstance(a.meta, FamilySpec):
            continue
        spec = a.meta
        for param, claim, text in PARAMETER_RELATIONS[spec.class_id]:
            got = getattr(a.decomp.params, param)
            want = claim(spec.alpha, spec.beta)
            if got == want:
                res.expect(True, "")
            elif (spec.class_id, param) in _SIGN_DOCUMENTED and got == -want:
                res.expect(True, "")
                key = f"{spec.class_id}:{param}"
                if key not in seen:
                    seen.add(key)
                    discrepancies.append(
                        f"{spec.class_id}: reference relation '{text}' has the opposite sign; "
                        f"the computed {param} is the negative of the claimed value on every grid point")
            else:
                res.expect(False, f"{a.label}: {param} = {got}, reference relation '{text}' gives {want}")
    return res


def _compare_table(label: str, rep: CurvatureReport, exp: ExpectedCurvature, res: CheckResult) -> None:
    want_r = exp.r_tensor()
    bad = [f"R{k}={rep.r[k]} (reference {want_r[k]})" for k in np.ndindex(3, 3, 3, 3)
           if k[0] < k[1] and k[2] < k[3] and k[:2] <= k[2:] and rep.r[k] != want_r[k]]
    for name in ("rho", "rho_star"):
        want = exp.matrix(name)
        got = getattr(rep, name)
        bad += [f"{name}{k}={got[k]} (reference {want[k]})" for k in np.ndindex(3, 3) if got[k] != want[k]]
    for name in ("tau", "tau_star", "k01", "k02", "k12"):
        if getattr(rep, name) != getattr(exp, name):
            bad.append(f"{name}={getattr(rep, name)} (reference {getattr(exp, name)})")
    res.expect(not bad, f"{label}: " + "; ".join(bad))


def check_curvature_table(pop: Sequence[Analysis],
                          expected: Callable[[FamilySpec], ExpectedCurvature] = expected_curvature) -> CheckResult:
    res = CheckResult("curvature-table", "R, rho, rho*, tau, tau*, k_ij match the reference table per class")
    for a in pop:
        if isinstance(a.meta, FamilySpec):
            _compare_table(a.label, a.report, expected(a.meta), res)
    return res


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_items() -> list[tuple[int, str, tuple[str, ...], Callable]]:
    """(item, statement, classes, predicate(spec, report, partner_report))."""
    sq = lambda s: (s.alpha * s.alpha, s.beta * s.beta)  # noqa: E731
    return [
        (2, "F1 flat iff alpha^2 = beta^2", ("F1",), lambda s, r, _: r.flat == (sq(s)[0] == sq(s)[1])),
        (3, "F8 and F9 curvature tensors coincide", ("F8",), lambda s, r, p: bool(np.all(r.r == p.r))),
        (4, "R(x,y,phi z,phi w) = 0", ("F4", "F11"), lambda s, r, _: r.phi_killed_defect == 0),
        (5, "vanishing *-Ricci tensor", ("F4", "F11"), lambda s, r, _: max_abs(r.rho_star) == 0),
        (6, "positive scalar curvature", ("F4", "F8", "F9"), lambda s, r, _: r.tau > 0),
        (7, "tau > 0 iff alpha^2 > beta^2 (F1) / alpha^2 < beta^2 (F11)", ("F1", "F11"),
         lambda s, r, _: (r.tau > 0) == ((sq(s)[0] > sq(s)[1]) if s.class_id == "F1" else (sq(s)[0] < sq(s)[1]))),
        (8, "negative scalar curvature", ("F5",), lambda s, r, _: r.tau < 0),
        (9, "tau < 0 iff alpha^2 < beta^2 (F1) / alpha^2 > beta^2 (F11)", ("F1", "F11"),
         lambda s, r, _: (r.tau < 0) == ((sq(s)[0] < sq(s)[1]) if s.class_id == "F1" else (sq(s)[0] > sq(s)[1]))),
        (10, "vanishing *-scalar curvature", ("F1", "F4", "F5", "F8", "F9"), lambda s, r, _: r.tau_star == 0),
        (11, "tau* = 0 iff alpha*beta = 0", ("F11",), lambda s, r, _: (r.tau_star == 0) == (s.alpha * s.beta == 0)),
        (12, "sign(tau*) = -sign(alpha*beta)", ("F11",), lambda s, r, _: _sign(r.tau_star) == -_sign(s.alpha * s.beta)),
        (13, "k01 = k02 = 0", ("F1",), lambda s, r, _: r.k01 == 0 and r.k02 == 0),
        (14, "k01, k02 > 0", ("F4",), lambda s, r, _: r.k01 > 0 and r.k02 > 0),
        (15, "k01, k02 < 0", ("F5", "F8", "F9"), lambda s, r, _: r.k01 < 0 and r.k02 < 0),
        (16, "k12 = 0 iff flat", ("F1",), lambda s, r, _: (r.k12 == 0) == r.flat),
        (17, "k12 = 0", ("F4", "F11"), lambda s, r, _: r.k12 == 0),
        (18, "k12 > 0 (F8, F9) / k12 < 0 (F5)", ("F5", "F8", "F9"),
         lambda s, r, _: r.k12 < 0 if s.class_id == "F5" else r.k12 > 0),
        (19, "sign(k12) = sign(alpha^2 - beta^2)", ("F1",),
         lambda s, r, _: _sign(r.k12) == _sign(sq(s)[0] - sq(s)[1])),
    ]


def check_sign_predicates(pop: Sequence[Analysis], ambiguities: list[str]) -> CheckResult:
    res = CheckResult("sign-predicates", "sign and vanishing statements per class (items 2-19)")
    fam = {(a.meta.class_id, a.meta.alpha, a.meta.beta): a for a in pop if isinstance(a.meta, FamilySpec)}
    for item, text, classes, pred in _sign_items():
        for (cid, alpha, beta), a in fam.items():
            if cid not in classes or not _family_nonzero(a.meta):
                continue
            partner = fam.get(("F9", alpha, beta)) if item == 3 else None
            if item == 3 and partner is None:
                continue
            ok = pred(a.meta, a.report, partner.report if partner else None)
            res.expect(ok, f"item {item} ({text}) fails for {a.label}")
    # item 1 is recorded, not asserted
    kaehler = {}
    for (cid, _, _), a in fam.items():
        if _family_nonzero(a.meta):
            kaehler.setdefault(cid, set()).add("holds" if a.report.kaehler_defect == 0 else "fails")
    summary = ", ".join(f"{cid}: {'/'.join(sorted(v))}" for cid, v in sorted(kaehler.items()))
    ambiguities.append(
        "item 1 (only F1 has a Kaehler curvature tensor): identity R(x,y,phi z,phi w) = -R(x,y,z,w) "
        f"on the grid -> {summary}; for F1 it holds exactly where R = 0")
    ambiguities.append("item 11 tested as tau* = 0 iff alpha*beta = 0; the qualifier 'for alpha != beta' is ignored")
    return res


_EINSTEIN_BY_CLASS = {"F1": "phi-Einstein", "F4": "eta-Einstein", "F5": "Einstein", "F8": "v-Einstein", "F9": "v-Einstein"}


def check_templates(pop: Sequence[Analysis]) -> CheckResult:
    res = CheckResult("class-templates", "per-class closed forms of R and rho; Einstein label per class")
    for a in pop:
        if not isinstance(a.meta, FamilySpec) or len(a.decomp.membership) != 1:
            continue
        tc = curvature_template_check(a.decomp, a.report)
        res.expect(tc.r_defect == 0, f"{a.label}: R deviates from the {tc.class_id} form by {tc.r_defect}")
        res.expect(tc.rho_defect == 0, f"{a.label}: rho deviates from the {tc.class_id} form by {tc.rho_defect}")
        label = _EINSTEIN_BY_CLASS.get(tc.class_id)
        if label:
            res.expect(label in a.einstein.labels, f"{a.label}: labels {sorted(a.einstein.labels)} lack {label}")
    return res


def check_special_structures(pop: Sequence[Analysis]) -> CheckResult:
    res = CheckResult("special-structures", "definition and class-condition routes agree for all five structures")
    for a in pop:
        for name, pair in a.flags.items():
            res.expect(pair.agree, f"{a.label}: {name} direct={pair.direct} class-route={pair.by_class}")
    witness = StructureConstants.from_brackets({(0, 1): (0, 0, -2), (0, 2): (0, -2, 0), (1, 2): (2, 0, 0)})
    fl = special_structures(witness)
    p = decompose(compute_F_closed_form(witness)).params
    res.expect(fl.g_killing.direct and fl.g_killing.by_class and 2 * p.lam == -p.nu,
               f"Killing witness: flags {fl.g_killing}, lambda={p.lam}, nu={p.nu}")
    return res


def check_r3(pop: Sequence[Analysis]) -> CheckResult:
    res = CheckResult("r3-identity", "R = -g ⊼ (rho - tau/4 g) on every member")
    for a in pop:
        res.expect(a.report.r3_defect == 0, f"{a.label}: defect {a.report.r3_defect}")
    return res


def check_connection(pop: Sequence[Analysis]) -> CheckResult:
    res = CheckResult("connection", "torsion-free, metric connection; R has curvature-tensor symmetries")
    for a in pop:
        conn = a.report.connection
        res.expect(conn.torsion_defect(a.c) == 0, f"{a.label}: torsion")
        res.expect(conn.metric_defect() == 0, f"{a.label}: metric compatibility")
        sym = curvature_symmetry_defects(a.report.r)
        res.expect(all(v == 0 for v in sym.values()), f"{a.label}: R symmetries {sym}")
    return res


def check_example(pop: Sequence[Analysis]) -> CheckResult:
    res = CheckResult("example-family", "two-parameter F9+F10 example: F, rho, tau, tau*, Einstein form")
    for a in pop:
        if not isinstance(a.meta, ExampleSpec):
            continue
        a1, a2 = a.meta.a1, a.meta.a2
        rep, f = a.report, a.f_closed
        res.expect(f[0, 1, 1] == -2 * a2 and f[1, 0, 2] == a1, f"{a.label}: F_011={f[0, 1, 1]}, F_102={f[1, 0, 2]}")
        res.expect(rep.rho[0, 0] == -2 * a1 * a1 and rep.tau == -2 * a1 * a1 and rep.tau_star == -4 * a1 * a2,
                   f"{a.label}: rho00={rep.rho[0, 0]}, tau={rep.tau}, tau*={rep.tau_star}")
        ein = a.einstein
        res.expect("eta-complex-Einstein" in ein.labels and ein.coefficients is not None
                   and ein.coefficients[0] == 0, f"{a.label}: Einstein verdict {ein}")
        if a2 == 0 and a1 != 0:
            tc = curvature_template_check(a.decomp, rep)
            res.expect(tc.class_id == "F9" and tc.r_defect == 0, f"{a.label}: F9 form defect {tc}")
        if a1 == 0:
            res.expect(rep.flat, f"{a.label}: expected R = 0")
    return res


CHECK_NAMES = (
    "jacobi", "oracle-equivalence", "f-symmetries", "decomposition", "parameter-relations", "curvature-table",
    "sign-predicates", "class-templates", "special-structures", "r3-identity", "connection", "example-family",
)


def run_verification(grid: Iterable = DEFAULT_GRID, seeds: int = 100, base_seed: int = 0, *,
                     expected: Callable[[FamilySpec], ExpectedCurvature] = expected_curvature,
                     jobs: int = 1, only: Iterable[str] | None = None) -> VerificationReport:
    grid = [scalar(x) for x in grid]
    items = build_population(grid, seeds, base_seed)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            pop = list(pool.map(lambda it: analyze(*it), items))
    else:
        pop = [analyze(*it) for it in items]

    wanted = set(only) if only is not None else set(CHECK_NAMES)
    unknown = wanted - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    discrepancies: list[str] = [
        "closed-form F uses F_211 = F_222 = -2 C^2_12 and theta_2 = 2 C^2_12, theta*_1 = -2 C^2_12 "
        "(tabulated with the opposite sign); this is the sign the Koszul connection yields",
    ]
    ambiguities: list[str] = []
    runners = {
        "jacobi": lambda: check_jacobi(pop),
        "oracle-equivalence": lambda: check_oracle(pop),
        "f-symmetries": lambda: check_f_symmetries(pop),
        "decomposition": lambda: check_decomposition(pop),
        "parameter-relations": lambda: check_parameter_relations(pop, discrepancies),
        "curvature-table": lambda: check_curvature_table(pop, expected),
        "sign-predicates": lambda: check_sign_predicates(pop, ambiguities),
        "class-templates": lambda: check_templates(pop),
        "special-structures": lambda: check_special_structures(pop),
        "r3-identity": lambda: check_r3(pop),
        "connection": lambda: check_connection(pop),
        "example-family": lambda: check_example(pop),
    }
    checks = [runners[name]() for name in CHECK_NAMES if name in wanted]
    return VerificationReport(checks, discrepancies, ambiguities, len(pop))


__all__ = ["Analysis", "CHECK_NAMES", "CheckResult", "VerificationReport", "analyze", "build_population",
           "run_verification"]
