"""Signed Morse complexes with exact integer homology.

A complex is a list of named critical points plus signed flow counts, each
flow dropping the index by exactly one.  The boundary operator is assembled
per degree, its square is verified (never assumed), and homology is read off
a hand-rolled integer Smith normal form: betti numbers from ranks, torsion
from the invariant factors bigger than one.

Two derived complexes matter downstream:

* the circle-bundle lift, where every base point p contributes a pair of
  generators p_check (index M(p)) and p_hat (index M(p) + 1) and the lifted
  flow counts are user data, not derivable from the base;

* the negated filling complex (indices flipped through the ambient
  dimension, flows reversed), which is the complex whose degree-1 pairs
  mirror the flows between interior generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

from .errors import CascadixError


class BoundarySquaredNonzero(CascadixError):
    """The boundary operator fails to square to zero."""


Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class MorsePoint:
    name: str
    index: int

    def __post_init__(self):
        if not self.name:
            raise CascadixError("critical point needs a name")
        if self.index < 0:
            raise CascadixError(f"negative index on {self.name}")


@dataclass(frozen=True)
class SignedFlow:
    source: str
    target: str
    count: int


@dataclass(frozen=True)
class MorseData:
    points: Tuple[MorsePoint, ...]
    flows: Tuple[SignedFlow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "flows", tuple(self.flows))
        names = [p.name for p in self.points]
        if len(set(names)) != len(names):
            raise CascadixError("duplicate critical point names")
        by_name = {p.name: p for p in self.points}
        for f in self.flows:
            if f.source not in by_name or f.target not in by_name:
                raise CascadixError(
                    f"flow {f.source} -> {f.target} references unknown points")
            drop = by_name[f.source].index - by_name[f.target].index
            if drop != 1:
                raise CascadixError(
                    f"flow {f.source} -> {f.target} drops index by {drop}, "
                    "need exactly 1")

    def point(self, name: str) -> MorsePoint:
        for p in self.points:
            if p.name == name:
                return p
        raise CascadixError(f"unknown critical point {name!r}")

    def max_index(self) -> int:
        return max((p.index for p in self.points), default=-1)

    def points_of_degree(self, degree: int) -> Tuple[MorsePoint, ...]:
        return tuple(p for p in self.points if p.index == degree)


@dataclass(frozen=True)
class LiftedMorseData:
    """Base complex plus user-supplied signed counts for the lifted flows."""

    base: MorseData
    lifted_flows: Tuple[SignedFlow, ...] = ()

    def lifted(self) -> MorseData:
        return MorseData(lift_generators(self.base), tuple(self.lifted_flows))


def lift_generators(base: MorseData) -> Tuple[MorsePoint, ...]:
    """Two generators per base point: name_check at M, name_hat at M + 1."""
    out = []
    for p in base.points:
        out.append(MorsePoint(f"{p.name}_check", p.index))
        out.append(MorsePoint(f"{p.name}_hat", p.index + 1))
    return tuple(out)


def negated(data: MorseData, ambient_dim: int) -> MorseData:
    """The complex of the sign-flipped function: indices mirrored, flows
    reversed.  Transposing every boundary matrix preserves d^2 = 0."""
    top = data.max_index()
    if ambient_dim < top:
        raise CascadixError(
            f"ambient dimension {ambient_dim} below top index {top}")
    points = tuple(MorsePoint(p.name, ambient_dim - p.index)
                   for p in data.points)
    flows = tuple(SignedFlow(f.target, f.source, f.count)
                  for f in data.flows)
    return MorseData(points, flows)


def differential(data: MorseData) -> Dict[int, Matrix]:
    """Boundary matrices keyed by source degree; raises if d^2 != 0.

    The degree-d matrix has one column per index-d point and one row per
    index-(d-1) point, entries the aggregated signed flow counts.
    """
    counts: Dict[Tuple[str, str], int] = {}
    for f in data.flows:
        counts[(f.source, f.target)] = counts.get((f.source, f.target), 0) \
            + f.count
    matrices: Dict[int, Matrix] = {}
    for d in range(1, data.max_index() + 1):
        sources = data.points_of_degree(d)
        targets = data.points_of_degree(d - 1)
        if not sources:
            continue
        matrices[d] = tuple(
            tuple(counts.get((s.name, t.name), 0) for s in sources)
            for t in targets)
    _check_square_zero(data, matrices)
    return matrices


def _check_square_zero(data: MorseData, matrices: Dict[int, Matrix]) -> None:
    for d in sorted(matrices):
        if d - 1 not in matrices:
            continue
        upper, lower = matrices[d], matrices[d - 1]
        sources = data.points_of_degree(d)
        finals = data.points_of_degree(d - 2)
        mids = range(len(data.points_of_degree(d - 1)))
        for j, src in enumerate(sources):
            for i, fin in enumerate(finals):
                total = sum(lower[i][k] * upper[k][j] for k in mids)
                if total:
                    raise BoundarySquaredNonzero(
                        f"d^2 sends {src.name} to {fin.name} "
                        f"with coefficient {total}")


def smith_invariant_factors(matrix: Matrix) -> List[int]:
    """Positive invariant factors of an integer matrix, in divisibility order."""
    a = [list(row) for row in matrix]
    nr = len(a)
    nc = len(a[0]) if a else 0
    factors: List[int] = []
    t = 0
    while t < min(nr, nc):
        pivot = min(
            ((i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]),
            key=lambda ij: abs(a[ij[0]][ij[1]]), default=None)
        if pivot is None:
            break
        i0, j0 = pivot
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            restart = False
            for i in range(t + 1, nr):
                if a[i][t] == 0:
                    continue
                q, r = divmod(a[i][t], a[t][t])
                for j in range(t, nc):
                    a[i][j] -= q * a[t][j]
                if r:
                    a[t], a[i] = a[i], a[t]
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, nc):
                if a[t][j] == 0:
                    continue
                q, r = divmod(a[t][j], a[t][t])
                for i in range(t, nr):
                    a[i][j] -= q * a[i][t]
                if r:
                    for i in range(t, nr):
                        a[i][t], a[i][j] = a[i][j], a[i][t]
                    restart = True
                    break
            if restart:
                continue
            bad = next(((i, j) for i in range(t + 1, nr)
                        for j in range(t + 1, nc)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            for j in range(t, nc):
                a[t][j] += a[bad[0]][j]
        factors.append(abs(a[t][t]))
        t += 1
    return factors


def integer_rank(matrix: Matrix) -> int:
    return len(smith_invariant_factors(matrix))


def homology(data: MorseData) -> List[Tuple[int, int, Tuple[int, ...]]]:
    """Per degree: (degree, betti rank, torsion invariant factors)."""
    matrices = differential(data)
    out = []
    for d in range(data.max_index() + 1):
        dim = len(data.points_of_degree(d))
        rank_out = integer_rank(matrices.get(d, ()))
        above = matrices.get(d + 1, ())
        rank_in = integer_rank(above)
        torsion = tuple(f for f in smith_invariant_factors(above) if f > 1)
        out.append((d, dim - rank_out - rank_in, torsion))
    return out


def euler_characteristic(data: MorseData) -> int:
    return sum((-1) ** p.index for p in data.points)


def load_morse_data(path):
    """Read a complex from JSON; a "base" key marks a lifted-complex file."""
    raw = json.loads(Path(path).read_text())
    if "base" in raw:
        base = _plain_from_dict(raw["base"])
        flows = _flows_from_list(raw.get("lifted_flows", []))
        return LiftedMorseData(base, flows)
    return _plain_from_dict(raw)


def _plain_from_dict(raw: dict) -> MorseData:
    try:
        points = tuple(MorsePoint(p["name"], int(p["index"]))
                       for p in raw["points"])
    except (KeyError, TypeError) as exc:
        raise CascadixError(f"malformed critical point list: {exc}") from None
    return MorseData(points, _flows_from_list(raw.get("flows", [])))


def _flows_from_list(raw) -> Tuple[SignedFlow, ...]:
    try:
        return tuple(SignedFlow(f["source"], f["target"], int(f["count"]))
                     for f in raw)
    except (KeyError, TypeError) as exc:
        raise CascadixError(f"malformed flow list: {exc}") from None
