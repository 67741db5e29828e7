"""Degrees of split-homology generators.

Generators come in two species: circle-fibre orbits over critical points of
the base Morse function, lifted to a check/hat pair and wound k >= 1 times,
and interior critical points of the filling's Morse function.  Degrees are
rationals in general; two generators interact only when their degrees differ
by an integer, so the grading group splits into cosets indexed by the
fractional part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import List, Optional, Sequence, Union

from .errors import CascadixError
from .model import (
    Ambient,
    CriticalPoint,
    FibreFlag,
    Functional,
    LiftedCriticalPoint,
    SetupDescriptor,
    pair,
)


class UnknownCriticalPoint(CascadixError):
    """Named critical point does not exist in the setup."""


class CapMismatch(CascadixError):
    """Capping class intersection number disagrees with the winding."""


@dataclass(frozen=True)
class OrbitGenerator:
    """k-fold cover of the circle fibre over a base critical point."""

    point: LiftedCriticalPoint
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise CascadixError(f"orbit winding must be >= 1, got {self.k}")

    @property
    def display_name(self) -> str:
        return f"{self.point.display_name}_{self.k}"

    @property
    def kind(self) -> str:
        return "orbit"


@dataclass(frozen=True)
class InteriorGenerator:
    """Critical point of the Morse function on the filling."""

    point: CriticalPoint

    def __post_init__(self):
        if self.point.ambient is not Ambient.W:
            raise CascadixError(
                f"interior generator needs a W critical point, got {self.point.name}"
            )

    @property
    def display_name(self) -> str:
        return self.point.name

    @property
    def kind(self) -> str:
        return "interior"


Generator = Union[OrbitGenerator, InteriorGenerator]


def orbit_generator(setup: SetupDescriptor, point_name: str, flag: FibreFlag,
                    k: int) -> OrbitGenerator:
    try:
        base = setup.sigma_point(point_name)
    except CascadixError as exc:
        raise UnknownCriticalPoint(str(exc)) from None
    return OrbitGenerator(LiftedCriticalPoint(base, flag), k)


def interior_generator(setup: SetupDescriptor, point_name: str) -> InteriorGenerator:
    try:
        p = setup.w_point(point_name)
    except CascadixError as exc:
        raise UnknownCriticalPoint(str(exc)) from None
    return InteriorGenerator(p)


def grade(setup: SetupDescriptor, gen: Generator) -> Fraction:
    """Degree of a generator.

    Orbit generators: (lifted Morse index) + 1 - n + 2*(tau_X - K)/K * k.
    Interior generators: n - (Morse index).
    """
    if isinstance(gen, InteriorGenerator):
        return Fraction(setup.n - gen.point.morse_index)
    lifted = gen.point.lifted_index
    return Fraction(lifted + 1 - setup.n) + 2 * setup.slope_ratio * gen.k


def grade_reeb(setup: SetupDescriptor, k: int) -> Fraction:
    """Degree weight of the k-fold Reeb fibre family itself: -2 + 2*(tau_X-K)/K*k."""
    if k < 1:
        raise CascadixError(f"orbit winding must be >= 1, got {k}")
    return Fraction(-2) + 2 * setup.slope_ratio * k


def cz_cap(setup: SetupDescriptor, gen: OrbitGenerator,
           class_b: Sequence[int]) -> Fraction:
    """Degree computed through a capping class B in the filling.

    B must intersect the divisor exactly k times.  The value
    (lifted index) + 1 - n - 2k + 2<c1(TX), B> then agrees with `grade`;
    the agreement is a consequence of monotonicity, not an input.
    """
    if not isinstance(gen, OrbitGenerator):
        raise CascadixError("cz_cap applies to orbit generators")
    inter = pair(setup.lattice_x, class_b, Functional.SIGMA_INTERSECTION)
    if inter != gen.k:
        raise CapMismatch(
            f"capping class meets the divisor {inter} times, orbit winds {gen.k}"
        )
    c1b = pair(setup.lattice_x, class_b, Functional.C1)
    return Fraction(gen.point.lifted_index + 1 - setup.n - 2 * gen.k) + 2 * c1b


def comparable(setup: SetupDescriptor, a: Generator, b: Generator) -> bool:
    """True when the two degrees differ by an integer."""
    return (grade(setup, a) - grade(setup, b)).denominator == 1


def coset_label(setup: SetupDescriptor, gen: Generator) -> Fraction:
    """Fractional part of the degree; constant on each interacting block."""
    g = grade(setup, gen)
    return g - floor(g)


def _sort_key(setup: SetupDescriptor, gen: Generator):
    if isinstance(gen, OrbitGenerator):
        return (grade(setup, gen), gen.kind, gen.point.base.name,
                gen.point.flag.value, gen.k)
    return (grade(setup, gen), gen.kind, gen.point.name, "", 0)


def enumerate_generators(setup: SetupDescriptor, k_max: int,
                         degree: Optional[Fraction] = None) -> List[Generator]:
    """All generators with winding <= k_max, sorted by degree then name.

    Without a degree filter the list has |crit W| + 2 * |crit Sigma| * k_max
    entries.  With one, only generators of exactly that degree survive.
    """
    if k_max < 0:
        raise CascadixError(f"k_max must be >= 0, got {k_max}")
    gens: List[Generator] = [InteriorGenerator(p) for p in setup.morse_w]
    for p in setup.morse_sigma:
        for k in range(1, k_max + 1):
            for flag in (FibreFlag.CHECK, FibreFlag.HAT):
                gens.append(OrbitGenerator(LiftedCriticalPoint(p, flag), k))
    if degree is not None:
        degree = Fraction(degree)
        gens = [g for g in gens if grade(setup, g) == degree]
    gens.sort(key=lambda g: _sort_key(setup, g))
    return gens
