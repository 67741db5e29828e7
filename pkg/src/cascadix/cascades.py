"""Exhaustive catalog of cascade types between adjacent-degree generators.

A cascade type is pure combinatorics: which generators it connects, how many
holomorphic levels, the sphere class of each level's projection, which
augmentation planes hang off which level, and the orbit multiplicities in
between.  Feasibility is decided by an integer identity (the degree
difference expands into index contributions) together with a budget
inequality whose summands are individually non-negative; everything that
survives lands in exactly one of four cases:

* Case 0: no levels at all, a fibrewise Morse flow (or an interior one).
* Case 1: one level with a non-constant projected sphere, check above hat.
* Case 2: one constant level stabilized by a single rigid augmentation
  plane, both ends over the same base point.
* Case 3: one constant level resting on a sphere in the filling, check end
  above an interior critical point.

The enumerator is exhaustive within user bounds (max source winding, max
class area) and reports when the bounds provably cover everything, so an
empty answer is a certificate, not an accident.  Counts and signs of actual
solutions are out of scope; this is the catalog of candidates only.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CascadixError
from .grading import (
    Generator,
    InteriorGenerator,
    OrbitGenerator,
    enumerate_generators,
    grade,
    grade_reeb,
)
from .model import (
    FibreFlag,
    Functional,
    LiftedCriticalPoint,
    SetupDescriptor,
    pair,
)
from .pearls import IntVector, augmentation_index, multiplicity_balance

BUDGET_CAP_Y_TO_Y = Fraction(1)
BUDGET_CAP_W_TO_Y = Fraction(0)
MAX_LEVELS = 2
MAX_AUG = 2


class Case(Enum):
    CASE0 = 0
    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    INFEASIBLE = -1


@dataclass(frozen=True)
class AugPuncture:
    """One augmentation plane: attached level, filling class, orbit winding."""

    level: int
    class_b: IntVector
    multiplicity: int


@dataclass(frozen=True)
class BudgetTerms:
    terms: Tuple[Tuple[str, Fraction], ...]

    @property
    def total(self) -> Fraction:
        return sum((v for _, v in self.terms), Fraction(0))

    def first_negative(self) -> Optional[str]:
        for name, v in self.terms:
            if v < 0:
                return name
        return None


@dataclass(frozen=True)
class CascadeType:
    target: Generator
    source: Generator
    n_levels: int
    n_constant: int
    n_nonconstant: int
    multiplicities: Tuple[int, ...]
    classes_a: Tuple[IntVector, ...]
    sphere_b: Optional[IntVector]
    aug: Tuple[AugPuncture, ...]
    case_label: Case
    budget: BudgetTerms
    infeasible_reason: Optional[str] = None

    @property
    def feasible(self) -> bool:
        return self.case_label is not Case.INFEASIBLE

    @property
    def aug_count(self) -> int:
        return len(self.aug)

    @property
    def k_minus(self) -> Optional[int]:
        return self.multiplicities[0] if self.multiplicities else None

    @property
    def k_plus(self) -> Optional[int]:
        return self.multiplicities[-1] if self.multiplicities else None

    def sort_key(self):
        return (self.n_levels, self.multiplicities, self.classes_a,
                self.sphere_b or (), tuple((a.level, a.class_b) for a in self.aug),
                self.source.display_name)


def _total_class(classes_a: Sequence[IntVector],
                 rank: int) -> IntVector:
    total = [0] * rank
    for a in classes_a:
        for i, c in enumerate(a):
            total[i] += c
    return tuple(total)


def index_identity_y_to_y(setup: SetupDescriptor, cascade: CascadeType) -> Fraction:
    """Expand the degree difference of an orbit-to-orbit cascade.

    i(target) + M(target) - i(source) - M(source) + 2<c1(T Sigma), sum A>
    + 2 * (number of augmentations) + sum of augmentation orbit weights.
    Equals 1 exactly for the feasible degree-1 types.
    """
    t, s = cascade.target, cascade.source
    if not isinstance(t, OrbitGenerator) or not isinstance(s, OrbitGenerator):
        raise CascadixError("identity applies to orbit-to-orbit cascades")
    total_a = _total_class(cascade.classes_a, setup.lattice_sigma.rank)
    value = Fraction(t.point.lifted_index - s.point.lifted_index)
    value += 2 * pair(setup.lattice_sigma, total_a, Functional.C1)
    value += 2 * cascade.aug_count
    for a in cascade.aug:
        value += grade_reeb(setup, a.multiplicity)
    return value


def index_identity_w_to_y(setup: SetupDescriptor, cascade: CascadeType) -> Fraction:
    """Expand the degree difference of an orbit-to-interior cascade."""
    t, s = cascade.target, cascade.source
    if not isinstance(t, OrbitGenerator) or not isinstance(s, InteriorGenerator):
        raise CascadixError("identity applies to orbit-to-interior cascades")
    if cascade.sphere_b is None:
        raise CascadixError("orbit-to-interior cascades carry a filling sphere")
    total_a = _total_class(cascade.classes_a, setup.lattice_sigma.rank)
    value = Fraction(t.point.lifted_index + 1 - 2 * setup.n
                     + s.point.morse_index)
    value += 2 * pair(setup.lattice_sigma, total_a, Functional.C1)
    value += 2 * (pair(setup.lattice_x, cascade.sphere_b, Functional.C1)
                  - pair(setup.lattice_x, cascade.sphere_b,
                         Functional.SIGMA_INTERSECTION))
    value += 2 * cascade.aug_count
    for a in cascade.aug:
        value += grade_reeb(setup, a.multiplicity)
    return value


def _infeasible(target, source, multiplicities, classes_a, sphere_b, aug,
                n0, n1, budget, reason) -> CascadeType:
    return CascadeType(target, source, len(classes_a), n0, n1,
                       tuple(multiplicities), tuple(classes_a), sphere_b,
                       tuple(aug), Case.INFEASIBLE, budget, reason)


def classify_type(setup: SetupDescriptor, target: Generator, source: Generator,
                  multiplicities: Sequence[int],
                  classes_a: Sequence[IntVector] = (),
                  sphere_b: Optional[IntVector] = None,
                  aug: Sequence[AugPuncture] = ()) -> CascadeType:
    """Decide feasibility and case of one combinatorial cascade type.

    Structural nonsense (wrong lengths, unknown shapes) raises; arithmetic
    infeasibility comes back as a labeled Infeasible type with a reason.
    """
    multiplicities = tuple(int(m) for m in multiplicities)
    classes_a = tuple(tuple(int(c) for c in a) for a in classes_a)
    aug = tuple(aug)
    n_levels = len(classes_a)
    n0 = sum(1 for a in classes_a if not any(a))
    n1 = n_levels - n0
    empty_budget = BudgetTerms(())

    def bail(reason, budget=empty_budget):
        return _infeasible(target, source, multiplicities, classes_a,
                           sphere_b, aug, n0, n1, budget, reason)

    # interior-to-interior: a Morse flow line in the filling
    if isinstance(target, InteriorGenerator):
        if not isinstance(source, InteriorGenerator):
            raise CascadixError("interior targets pair with interior sources")
        if n_levels or sphere_b is not None or aug or multiplicities:
            raise CascadixError("interior flows carry no levels or classes")
        if target.point.name == source.point.name:
            return bail("endpoints coincide")
        if grade(setup, target) - grade(setup, source) != 1:
            return bail("degree difference != 1")
        return CascadeType(target, source, 0, 0, 0, (), (), None, (),
                           Case.CASE0, empty_budget)

    if not isinstance(target, OrbitGenerator):
        raise CascadixError(f"unsupported target {target!r}")

    if len(multiplicities) != n_levels + 1:
        raise CascadixError(
            f"{n_levels} levels need {n_levels + 1} multiplicities, "
            f"got {len(multiplicities)}"
        )
    for a in aug:
        if not 1 <= a.level <= max(n_levels, 1):
            raise CascadixError(f"augmentation level {a.level} out of range")
        expected = pair(setup.lattice_x, a.class_b,
                        Functional.SIGMA_INTERSECTION)
        if expected != a.multiplicity:
            raise CascadixError(
                f"augmentation winding {a.multiplicity} != divisor "
                f"intersection {expected}"
            )

    diff = grade(setup, target) - grade(setup, source)
    if diff.denominator != 1:
        return bail("non-integer degree difference")
    if diff != 1:
        return bail("degree difference != 1")

    w_to_y = isinstance(source, InteriorGenerator)
    if w_to_y:
        if sphere_b is None:
            raise CascadixError("orbit-to-interior cascades carry a filling sphere")
        if n_levels < 1:
            return bail("interior sources need at least one level")
        if pair(setup.lattice_x, sphere_b, Functional.OMEGA) <= 0:
            return bail("filling sphere has non-positive area")
        k0 = pair(setup.lattice_x, sphere_b, Functional.SIGMA_INTERSECTION)
        if k0.denominator != 1 or k0 < 1:
            return bail("filling sphere divisor intersection not a winding")
        if multiplicities[0] != k0:
            return bail("bottom winding != sphere divisor intersection")
    else:
        if sphere_b is not None:
            raise CascadixError("orbit-to-orbit cascades carry no filling sphere")
        if multiplicities[0] != source.k:
            return bail("bottom winding != source winding")
    if multiplicities[-1] != target.k:
        return bail("top winding != target winding")

    # per-level winding bookkeeping and stability
    for i in range(1, n_levels + 1):
        a_i = classes_a[i - 1]
        augs_here = tuple(a.multiplicity for a in aug if a.level == i)
        lo, hi = multiplicities[i - 1], multiplicities[i]
        if any(a_i) and pair(setup.lattice_sigma, a_i, Functional.OMEGA) <= 0:
            return bail(f"level {i} sphere has non-positive area")
        if w_to_y and i == 1:
            # the filling sphere stabilizes the bottom level, so a constant
            # bottom with no augmentation and equal windings is legal
            balanced = (Fraction(hi - lo - sum(augs_here))
                        == setup.k_const
                        * pair(setup.lattice_sigma, a_i, Functional.OMEGA))
            balanced = balanced and hi >= lo
        else:
            balanced = multiplicity_balance(setup, a_i, hi, lo, augs_here)
            if not any(a_i) and not augs_here:
                return bail(f"level {i} constant and unstabilized")
        if not balanced:
            return bail(f"level {i} winding balance fails")

    for a in aug:
        try:
            if augmentation_index(setup, a.class_b) < 0:
                return bail("augmentation with negative index")
        except CascadixError as exc:
            return bail(f"augmentation rejected: {exc}")

    # budget: each term non-negative, total below the cap
    k_aug = len(aug)
    aug_weights = sum((grade_reeb(setup, a.multiplicity) for a in aug),
                     Fraction(0))
    if w_to_y:
        terms = (
            ("fibre_index", Fraction(target.point.fibre_index)),
            ("nonconstant_levels", Fraction(n1)),
            ("augmentations", Fraction(k_aug)),
            ("spare_stabilizers", Fraction(k_aug + 1 - n0)),
            ("augmentation_weights", aug_weights),
        )
        cap = BUDGET_CAP_W_TO_Y
    else:
        delta_i = target.point.fibre_index - source.point.fibre_index
        terms = (
            ("fibre_step", Fraction(delta_i + 1)),
            ("nonconstant_levels", Fraction(n1)),
            ("augmentations", Fraction(k_aug)),
            ("spare_stabilizers", Fraction(k_aug - n0)),
            ("augmentation_weights", aug_weights),
        )
        cap = BUDGET_CAP_Y_TO_Y
    budget = BudgetTerms(terms)
    bad = budget.first_negative()
    if bad is not None:
        return bail(f"budget term negative: {bad}", budget)
    if budget.total > cap:
        return bail(f"budget {budget.total} exceeds {cap}", budget)

    # the survivors: label them
    if w_to_y:
        label = Case.CASE3
    elif n_levels == 0:
        label = Case.CASE0
    elif n1 == n_levels == 1:
        label = Case.CASE1
    elif n0 == n_levels == 1:
        # one constant level carrying one rigid augmentation plane; the
        # constant projection pins both ends to the same base point
        if target.point.base.name != source.point.base.name:
            return bail("constant level forces equal base points", budget)
        label = Case.CASE2
    else:
        raise CascadixError(
            f"unclassifiable survivor: N={n_levels}, N0={n0}, N1={n1}"
        )
    return CascadeType(target, source, n_levels, n0, n1, multiplicities,
                       classes_a, sphere_b, aug, label, budget)


@dataclass(frozen=True)
class EnumerationResult:
    target: Generator
    types: Tuple[CascadeType, ...]
    warnings: Tuple[str, ...]

    @property
    def complete(self) -> bool:
        return not self.warnings

    def case_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for t in self.types:
            counts[t.case_label.value] = counts.get(t.case_label.value, 0) + 1
        return counts


def _sigma_classes(setup: SetupDescriptor, class_bound: int) -> List[IntVector]:
    """Zero and all positive-area base classes in the search box."""
    rank = setup.lattice_sigma.rank
    out = [tuple([0] * rank)]
    if rank == 0:
        return out
    for coords in product(range(-class_bound, class_bound + 1), repeat=rank):
        v = tuple(coords)
        if not any(v):
            continue
        area = pair(setup.lattice_sigma, v, Functional.OMEGA)
        if 0 < area <= class_bound:
            out.append(v)
    return out


def _x_classes(setup: SetupDescriptor, class_bound: int) -> List[IntVector]:
    """Positive-area filling classes with integer divisor intersection >= 1."""
    rank = setup.lattice_x.rank
    out = []
    if rank == 0:
        return out
    for coords in product(range(-class_bound, class_bound + 1), repeat=rank):
        v = tuple(coords)
        if not any(v):
            continue
        area = pair(setup.lattice_x, v, Functional.OMEGA)
        if not 0 < area <= class_bound:
            continue
        inter = pair(setup.lattice_x, v, Functional.SIGMA_INTERSECTION)
        if inter.denominator == 1 and inter >= 1:
            out.append(v)
    return out


def _aug_assignments(setup: SetupDescriptor, n_levels: int,
                     x_classes: List[IntVector]) -> List[Tuple[AugPuncture, ...]]:
    """All ways to hang up to MAX_AUG planes off the levels."""
    out: List[Tuple[AugPuncture, ...]] = [()]
    singles = []
    for level in range(1, n_levels + 1):
        for b in x_classes:
            mult = int(pair(setup.lattice_x, b, Functional.SIGMA_INTERSECTION))
            singles.append(AugPuncture(level, b, mult))
    out.extend((s,) for s in singles)
    if MAX_AUG >= 2:
        for i, s1 in enumerate(singles):
            for s2 in singles[i:]:
                out.append((s1, s2))
    return out


def _coverage_warnings(setup: SetupDescriptor, target: OrbitGenerator,
                       k_max: int, class_bound: int) -> List[str]:
    """Bound analysis: all windings and areas a feasible type could use."""
    w = []
    kt = target.k
    if k_max < kt:
        w.append(f"k_max={k_max} below target winding {kt}: sources missed")
    # every class in a feasible type has K*omega <= target winding
    if setup.k_const * class_bound < kt:
        w.append(
            f"class_bound={class_bound} admits areas only up to "
            f"{class_bound}, need {Fraction(kt, 1) / setup.k_const}"
        )
    if setup.lattice_sigma.rank > 1 or setup.lattice_x.rank > 1:
        w.append("lattice rank > 1: coordinate box search is heuristic")
    return w


def enumerate_contributions(setup: SetupDescriptor, target: Generator,
                            k_max: int, class_bound: int) -> EnumerationResult:
    """Every feasible cascade type ending on the given target.

    Exhaustive over sources of degree exactly one less, level counts up to
    MAX_LEVELS, class vectors with area in (0, class_bound], and up to
    MAX_AUG augmentation planes.  Output is sorted by
    (levels, multiplicities, classes, sphere, augmentations, source name)
    and is byte-deterministic.  Warnings flag bound combinations that might
    hide configurations; no warnings means the list is provably complete.
    """
    if k_max < 1 or class_bound < 1:
        raise CascadixError("enumeration bounds must be positive")
    found: List[CascadeType] = []

    if isinstance(target, InteriorGenerator):
        for y in setup.morse_w:
            if y.name == target.point.name:
                continue
            cand = classify_type(setup, target, InteriorGenerator(y), ())
            if cand.feasible:
                found.append(cand)
        found.sort(key=CascadeType.sort_key)
        return EnumerationResult(target, tuple(found), ())

    warnings = _coverage_warnings(setup, target, k_max, class_bound)
    kt = target.k
    sigma_classes = _sigma_classes(setup, class_bound)
    x_classes = _x_classes(setup, class_bound)
    one = Fraction(1)

    # no levels: fibrewise Morse flow at fixed winding
    if kt <= k_max:
        for q in setup.morse_sigma:
            for flag in (FibreFlag.CHECK, FibreFlag.HAT):
                source = OrbitGenerator(LiftedCriticalPoint(q, flag), kt)
                if source == target:
                    continue
                if grade(setup, target) - grade(setup, source) != one:
                    continue
                cand = classify_type(setup, target, source, (kt,))
                if cand.feasible:
                    found.append(cand)

    # orbit-to-orbit with levels: any level forces a check end above a hat
    # end (the budget has +1 for each non-constant level or augmentation,
    # and every level carries at least one of those), so prune the rest
    if target.point.flag is FibreFlag.CHECK:
        for n_levels in range(1, MAX_LEVELS + 1):
            aug_options = _aug_assignments(setup, n_levels, x_classes)
            for q in setup.morse_sigma:
                for k0 in range(1, min(k_max, kt) + 1):
                    source = OrbitGenerator(
                        LiftedCriticalPoint(q, FibreFlag.HAT), k0)
                    if grade(setup, target) - grade(setup, source) != one:
                        continue
                    for classes in product(sigma_classes, repeat=n_levels):
                        n1 = sum(1 for a in classes if any(a))
                        if n1 > 1:  # budget prune
                            continue
                        for aug in aug_options:
                            mults = _chain_multiplicities(
                                setup, k0, classes, aug)
                            if mults is None or mults[-1] != kt:
                                continue
                            cand = classify_type(setup, target, source,
                                                 mults, classes, None, aug)
                            if cand.feasible:
                                found.append(cand)

    # orbit-to-interior: bottom level rests on a filling sphere.  The budget
    # here must vanish outright, so no hat targets, no non-constant levels,
    # no augmentation planes; only the sphere class and level count vary.
    if target.point.flag is FibreFlag.CHECK:
        for x in setup.morse_w:
            source = InteriorGenerator(x)
            if grade(setup, target) - grade(setup, source) != one:
                continue
            for n_levels in range(1, MAX_LEVELS + 1):
                zeros = (tuple([0] * setup.lattice_sigma.rank),) * n_levels
                for b in x_classes:
                    k0 = int(pair(setup.lattice_x, b,
                                  Functional.SIGMA_INTERSECTION))
                    mults = _chain_multiplicities(setup, k0, zeros, ())
                    if mults is None or mults[-1] != kt:
                        continue
                    cand = classify_type(setup, target, source,
                                         mults, zeros, b, ())
                    if cand.feasible:
                        found.append(cand)

    found.sort(key=CascadeType.sort_key)
    return EnumerationResult(target, tuple(found), tuple(warnings))


def _chain_multiplicities(setup: SetupDescriptor, k0: int,
                          classes: Sequence[IntVector],
                          aug: Sequence[AugPuncture]) -> Optional[Tuple[int, ...]]:
    """Windings k0 <= k1 <= ... forced by per-level balance, or None."""
    mults = [k0]
    for i, a in enumerate(classes, start=1):
        step = setup.k_const * pair(setup.lattice_sigma, a, Functional.OMEGA)
        step += sum(p.multiplicity for p in aug if p.level == i)
        if step.denominator != 1 or step < 0:
            return None
        mults.append(mults[-1] + int(step))
    return tuple(mults)


@dataclass(frozen=True)
class CertificationReport:
    setup_name: str
    k_max: int
    class_bound: int
    results: Tuple[EnumerationResult, ...]
    violations: Tuple[str, ...]
    warnings: Tuple[str, ...]

    @property
    def certified(self) -> bool:
        return not self.violations

    @property
    def types(self) -> Tuple[CascadeType, ...]:
        return tuple(t for r in self.results for t in r.types)

    def case_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for t in self.types:
            counts[t.case_label.value] = counts.get(t.case_label.value, 0) + 1
        return counts

    def summary(self) -> str:
        if not self.certified:
            return (f"NOT certified: {len(self.violations)} violation(s), "
                    f"first: {self.violations[0]}")
        present = sorted(self.case_counts())
        cases = ",".join(f"Case{c}" for c in present)
        return f"certified: all feasible types in {{{cases}}}"


def _structural_violations(setup: SetupDescriptor, t: CascadeType) -> List[str]:
    """Re-check one feasible type against the published case shapes."""
    v = []
    where = f"{t.target.display_name} <- {t.source.display_name}"

    def bad(msg):
        v.append(f"{where}: {msg}")

    if t.case_label is Case.INFEASIBLE:
        bad("infeasible type in output")
        return v
    if grade(setup, t.target) - grade(setup, t.source) != 1:
        bad("degree difference != 1")
    orbit_pair = isinstance(t.target, OrbitGenerator) and \
        isinstance(t.source, OrbitGenerator)
    if orbit_pair:
        if index_identity_y_to_y(setup, t) != 1:
            bad("index identity != 1")
        if t.aug_count > 1:
            bad("more than one augmentation plane")
        if t.n_nonconstant > 1:
            bad("more than one non-constant level")
        if t.n_constant > t.aug_count:
            bad("constant levels exceed augmentations")
        if t.n_levels > 1:
            bad("more than one level")
    if t.case_label is Case.CASE0:
        if t.n_levels or t.classes_a or t.aug or t.sphere_b is not None:
            bad("Case 0 must be bare")
        if orbit_pair:
            if t.target.k != t.source.k:
                bad("Case 0 windings differ")
            di = t.target.point.fibre_index - t.source.point.fibre_index
            if di not in (0, -1):
                bad(f"Case 0 fibre step {di}")
    elif t.case_label is Case.CASE1:
        if not (orbit_pair and t.n_levels == 1 and t.n_nonconstant == 1
                and not t.aug and t.sphere_b is None):
            bad("Case 1 shape")
        elif not (t.target.point.flag is FibreFlag.CHECK
                  and t.source.point.flag is FibreFlag.HAT
                  and t.k_plus > t.k_minus):
            bad("Case 1 ends")
    elif t.case_label is Case.CASE2:
        if not (orbit_pair and t.n_levels == 1 and t.n_constant == 1
                and t.aug_count == 1 and t.sphere_b is None):
            bad("Case 2 shape")
        else:
            if t.target.point.base.name != t.source.point.base.name:
                bad("Case 2 base points differ")
            if not (t.target.point.flag is FibreFlag.CHECK
                    and t.source.point.flag is FibreFlag.HAT):
                bad("Case 2 ends")
            if augmentation_index(setup, t.aug[0].class_b) != 0:
                bad("Case 2 plane not rigid")
    elif t.case_label is Case.CASE3:
        if not isinstance(t.source, InteriorGenerator):
            bad("Case 3 source not interior")
        else:
            if index_identity_w_to_y(setup, t) != 1:
                bad("index identity != 1")
            if not (t.n_levels == 1 and t.n_constant == 1
                    and t.n_nonconstant == 0 and not t.aug
                    and t.sphere_b is not None):
                bad("Case 3 shape")
            elif not (t.target.point.flag is FibreFlag.CHECK
                      and t.multiplicities[0] == t.multiplicities[1]):
                bad("Case 3 ends")
    return v


def certify_classification(setup: SetupDescriptor, k_max: int,
                           class_bound: int) -> CertificationReport:
    """Enumerate over every generator up to the bounds and check the shapes.

    Every feasible type must match its case's structural constraints; any
    mismatch is reported as a counterexample.  Honors CASCADIX_THREADS for
    parallel per-target enumeration; output order never depends on it.
    """
    targets = enumerate_generators(setup, k_max)
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda t: enumerate_contributions(setup, t, k_max, class_bound),
                targets))
    else:
        results = [enumerate_contributions(setup, t, k_max, class_bound)
                   for t in targets]

    # pool.map preserves input order, so results are already deterministic
    violations: List[str] = []
    warnings: List[str] = []
    for res in results:
        warnings.extend(res.warnings)
        for t in res.types:
            violations.extend(_structural_violations(setup, t))
    return CertificationReport(setup.name, k_max, class_bound,
                               tuple(results), tuple(violations),
                               tuple(dict.fromkeys(warnings)))


def _thread_count() -> int:
    raw = os.environ.get("CASCADIX_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise CascadixError(f"CASCADIX_THREADS must be an integer, got {raw!r}")
    return max(1, n)
