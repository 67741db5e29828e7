"""Monotone-triple descriptors and exact lattice pairings.

The input to every computation is a closed monotone symplectic manifold
together with a distinguished symplectic hypersurface, auxiliary Morse data on
the hypersurface and on the complement, and an exact description of the two
relevant second-homology lattices.  This module holds the immutable setup
descriptor, the JSON loader, and the pairing of lattice classes against the
area, Chern, and intersection functionals.

Every scalar here is an exact `fractions.Fraction` (or int); floats are
rejected at parse time so downstream index arithmetic stays exact.

Monotonicity conventions enforced at validation time, writing tau for the
ambient monotonicity constant and K for the hypersurface degree:

* tau > K > 0;
* first Chern class pairs as tau * area on the ambient lattice;
* first Chern class pairs as (tau - K) * area on the hypersurface lattice;
* intersection with the hypersurface pairs as K * area on the ambient lattice.

The JSON format is documented in docs/setup-format.md.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import CascadixError


class ParseError(CascadixError):
    """Raised when a setup file is syntactically unusable."""


class ValidationError(CascadixError):
    """Raised when a parsed setup violates a structural invariant.

    The message names the first violated invariant, e.g. "tau_X <= K".
    """


class DimensionMismatch(CascadixError):
    """Raised when a class vector does not match the lattice rank."""


class MissingFunctional(CascadixError):
    """Raised when pairing against a functional the lattice does not carry."""


class Ambient(Enum):
    SIGMA = "Sigma"
    W = "W"


class FibreFlag(Enum):
    CHECK = "check"
    HAT = "hat"


class Functional(Enum):
    OMEGA = "omega"
    C1 = "c1"
    SIGMA_INTERSECTION = "sigma_intersection"


Rational = Union[int, Fraction]


def parse_rational(value) -> Fraction:
    """Parse an exact rational from an int or a "p/q" string.

    Floats are rejected: they would silently poison the exact arithmetic.
    """
    if isinstance(value, bool):
        raise ParseError(f"boolean is not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(f"float not allowed, write an int or 'p/q': {value!r}")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {value!r}") from exc
    raise ParseError(f"bad rational {value!r}")


def format_rational(value: Rational) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


@dataclass(frozen=True)
class HomologyLattice:
    """A free abelian lattice with exact functionals on it.

    omega is the symplectic area (rational per generator), c1 the first Chern
    number (integer per generator), and sigma_intersection the intersection
    number with the hypersurface (integer per generator, present only on the
    ambient lattice).
    """

    generator_names: tuple[str, ...]
    omega: tuple[Fraction, ...]
    c1: tuple[int, ...]
    sigma_intersection: Optional[tuple[int, ...]] = None

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def functional(self, which: Functional) -> tuple[Rational, ...]:
        if which is Functional.OMEGA:
            return self.omega
        if which is Functional.C1:
            return self.c1
        if self.sigma_intersection is None:
            raise MissingFunctional("lattice carries no sigma_intersection")
        return self.sigma_intersection


def pair(lattice: HomologyLattice, cls: Sequence[int], which: Functional) -> Fraction:
    """Pair an integer class vector against one of the lattice functionals.

    Exact: returns a Fraction (an integer-valued one for c1 and
    sigma_intersection).  The zero vector pairs to 0 with every functional.
    """
    if len(cls) != lattice.rank:
        raise DimensionMismatch(
            f"class vector of length {len(cls)} against lattice of rank {lattice.rank}"
        )
    values = lattice.functional(which)
    return sum((Fraction(c) * Fraction(v) for c, v in zip(cls, values)), Fraction(0))


@dataclass(frozen=True)
class CriticalPoint:
    name: str
    morse_index: int
    ambient: Ambient


@dataclass(frozen=True)
class LiftedCriticalPoint:
    """A critical point of the hypersurface Morse function lifted to the
    circle bundle: each base point contributes a "check" lift (same index)
    and a "hat" lift (index + 1)."""

    base: CriticalPoint
    flag: FibreFlag

    def __post_init__(self):
        if self.base.ambient is not Ambient.SIGMA:
            raise ValidationError("only hypersurface critical points lift")

    @property
    def fibre_index(self) -> int:
        return 1 if self.flag is FibreFlag.HAT else 0

    @property
    def lifted_index(self) -> int:
        return self.base.morse_index + self.fibre_index

    @property
    def display_name(self) -> str:
        return f"{self.base.name}_{self.flag.value}"


@dataclass(frozen=True)
class SetupDescriptor:
    """Validated description of a monotone triple plus Morse data.

    n is half the real dimension of the ambient manifold; the hypersurface has
    real dimension 2n - 2, so its Morse indices live in [0, 2n-2] and the
    filling's in [0, 2n].
    """

    n: int
    tau_x: Fraction
    k_const: Fraction
    t0: Fraction
    lattice_sigma: HomologyLattice
    lattice_x: HomologyLattice
    morse_sigma: tuple[CriticalPoint, ...]
    morse_w: tuple[CriticalPoint, ...]
    min_chern_sigma: Optional[int] = None
    x_classes_from_sigma: bool = False
    name: str = ""

    @property
    def slope_ratio(self) -> Fraction:
        """(tau - K) / K: the per-multiplicity degree shift is twice this."""
        return (self.tau_x - self.k_const) / self.k_const

    def sigma_point(self, name: str) -> CriticalPoint:
        for p in self.morse_sigma:
            if p.name == name:
                return p
        raise ValidationError(f"no hypersurface critical point named {name!r}")

    def w_point(self, name: str) -> CriticalPoint:
        for p in self.morse_w:
            if p.name == name:
                return p
        raise ValidationError(f"no filling critical point named {name!r}")


def _lattice_from_dict(raw: dict, where: str, want_sigma_int: bool) -> HomologyLattice:
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: lattice must be an object")
    known = {"generators", "omega", "c1", "sigma_intersection"}
    for key in raw:
        if key not in known:
            raise ParseError(f"{where}: unknown key {key!r}")
    names = tuple(raw.get("generators", ()))
    if not all(isinstance(s, str) for s in names):
        raise ParseError(f"{where}: generator names must be strings")
    rank = len(names)

    def vec(key, expect_int):
        if key not in raw:
            if key == "sigma_intersection":
                return None
            raise ParseError(f"{where}: missing {key}")
        entries = raw[key]
        if not isinstance(entries, list) or len(entries) != rank:
            raise ValidationError(f"{key} length != rank on {where}")
        out = []
        for e in entries:
            r = parse_rational(e)
            if expect_int:
                if r.denominator != 1:
                    raise ValidationError(f"{key} not integral on {where}")
                out.append(int(r))
            else:
                out.append(r)
        return tuple(out)

    omega = vec("omega", expect_int=False) or ()
    c1 = vec("c1", expect_int=True) or ()
    sig = vec("sigma_intersection", expect_int=True)
    if want_sigma_int and sig is None and rank > 0:
        raise ValidationError("sigma_intersection missing on X-lattice")
    if not want_sigma_int and sig is not None:
        raise ValidationError("sigma_intersection present on Sigma-lattice")
    if rank == 0:
        # degenerate but legal: all functionals empty
        return HomologyLattice((), (), (), () if want_sigma_int else None)
    return HomologyLattice(names, omega, c1, sig)


def _crit_list(raw, ambient: Ambient, where: str) -> tuple[CriticalPoint, ...]:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: must be a list")
    pts = []
    for entry in raw:
        if not isinstance(entry, dict) or set(entry) != {"name", "index"}:
            raise ParseError(f"{where}: entries need exactly 'name' and 'index'")
        if not isinstance(entry["index"], int) or isinstance(entry["index"], bool):
            raise ParseError(f"{where}: index must be an integer")
        pts.append(CriticalPoint(str(entry["name"]), entry["index"], ambient))
    return tuple(pts)


_TOP_KEYS = {
    "n", "tau_x", "k_const", "t0",
    "lattice_sigma", "lattice_x", "morse_sigma", "morse_w",
    "min_chern_sigma", "x_classes_from_sigma", "name",
}


def parse_setup(raw: dict, name: str = "") -> SetupDescriptor:
    """Build and validate a descriptor from already-decoded JSON data."""
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object")
    for key in raw:
        if key not in _TOP_KEYS:
            raise ParseError(f"unknown key {key!r}")
    for key in ("n", "tau_x", "k_const", "t0", "lattice_sigma", "lattice_x",
                "morse_sigma", "morse_w"):
        if key not in raw:
            raise ParseError(f"missing key {key!r}")

    n = raw["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError("n must be an integer")
    tau = parse_rational(raw["tau_x"])
    kc = parse_rational(raw["k_const"])
    t0 = parse_rational(raw["t0"])

    lat_sigma = _lattice_from_dict(raw["lattice_sigma"], "Sigma-lattice", want_sigma_int=False)
    lat_x = _lattice_from_dict(raw["lattice_x"], "X-lattice", want_sigma_int=True)
    morse_sigma = _crit_list(raw["morse_sigma"], Ambient.SIGMA, "morse_sigma")
    morse_w = _crit_list(raw["morse_w"], Ambient.W, "morse_w")

    min_chern = raw.get("min_chern_sigma")
    if min_chern is not None and (not isinstance(min_chern, int) or isinstance(min_chern, bool)):
        raise ParseError("min_chern_sigma must be an integer")
    flag = raw.get("x_classes_from_sigma", False)
    if not isinstance(flag, bool):
        raise ParseError("x_classes_from_sigma must be a boolean")

    desc = SetupDescriptor(
        n=n, tau_x=tau, k_const=kc, t0=t0,
        lattice_sigma=lat_sigma, lattice_x=lat_x,
        morse_sigma=morse_sigma, morse_w=morse_w,
        min_chern_sigma=min_chern if min_chern is not None else _default_min_chern(lat_sigma),
        x_classes_from_sigma=flag,
        name=name or str(raw.get("name", "")),
    )
    validate_setup(desc)
    return desc


def _default_min_chern(lat: HomologyLattice) -> Optional[int]:
    """gcd of Chern numbers over the hypersurface lattice generators.

    Any integer combination pairs with c1 to a multiple of this gcd, so it is
    the computable lower bound for the minimal Chern number.  All-zero (or a
    rank-0 lattice) means no spherical class has nonzero Chern number; that is
    reported as None and treated as "infinite" by the consumers.
    """
    g = 0
    for v in lat.c1:
        g = math.gcd(g, abs(v))
    return g if g > 0 else None


def validate_setup(desc: SetupDescriptor) -> None:
    """Check every structural invariant; raise ValidationError naming the
    first violated one."""
    if desc.n < 1:
        raise ValidationError("n < 1")
    if desc.tau_x <= 0:
        raise ValidationError("tau_X not positive")
    if desc.k_const <= 0:
        raise ValidationError("K not positive")
    if desc.tau_x <= desc.k_const:
        raise ValidationError("tau_X <= K")
    if desc.t0 <= 0:
        raise ValidationError("T0 not positive")

    tau, kc = desc.tau_x, desc.k_const
    for i in range(desc.lattice_x.rank):
        if Fraction(desc.lattice_x.c1[i]) != tau * desc.lattice_x.omega[i]:
            raise ValidationError("c1 != tau_X*omega on X-lattice")
    for i in range(desc.lattice_sigma.rank):
        if Fraction(desc.lattice_sigma.c1[i]) != (tau - kc) * desc.lattice_sigma.omega[i]:
            raise ValidationError("c1 != (tau_X-K)*omega on Sigma-lattice")
    if desc.lattice_x.rank > 0:
        sig = desc.lattice_x.sigma_intersection
        if sig is None:
            raise ValidationError("sigma_intersection missing on X-lattice")
        for i in range(desc.lattice_x.rank):
            if Fraction(sig[i]) != kc * desc.lattice_x.omega[i]:
                raise ValidationError("sigma_intersection != K*omega on X-lattice")

    top_sigma = 2 * desc.n - 2
    for p in desc.morse_sigma:
        if not 0 <= p.morse_index <= top_sigma:
            raise ValidationError(f"Morse index out of range on Sigma: {p.name}")
    for p in desc.morse_w:
        if not 0 <= p.morse_index <= 2 * desc.n:
            raise ValidationError(f"Morse index out of range on W: {p.name}")

    seen = set()
    for p in desc.morse_sigma + desc.morse_w:
        if p.name in seen:
            raise ValidationError(f"duplicate critical point name: {p.name}")
        seen.add(p.name)


def load_setup(path) -> SetupDescriptor:
    """Load, parse, and validate a setup descriptor from a JSON file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    return parse_setup(raw, name=path.stem)
