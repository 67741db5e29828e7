"""Fibre-sum orientations as exact determinant-sign linear algebra.

An OrientedSpace is an abstract rational vector space with a reference basis
and a sign; every orientation question below reduces to the sign of a
determinant, computed exactly (fraction-free elimination on integers after
clearing denominators with positive multipliers, so no sign is ever touched).

Two conventions drive everything:

* Quotients: a complement representative C of a subspace S in a total space
  is oriented so that the combined basis (S, C) carries the total space's
  orientation.

* Fibre sums: the kernel of f1 - f2 : V1 (+) V2 -> W is oriented so that the
  induced isomorphism (V1 (+) V2)/ker -> W changes orientation by exactly
  (-1)^(dim V2 * dim W).

Dimension-zero spaces are bare signs and empty determinants count as +1, so
all formulas extend without special cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

from .errors import CascadixError


class NotASubspace(CascadixError):
    """Claimed subspace vectors are dependent or dimensionally impossible."""


class NotSurjective(CascadixError):
    """The difference map does not reach all of W."""


Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]  # rows


def _frac_rows(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                 for i in range(n))


def _columns(m: Matrix) -> List[Vector]:
    if not m:
        return []
    return [tuple(m[i][j] for i in range(len(m))) for j in range(len(m[0]))]


def _from_columns(cols: Sequence[Vector]) -> Matrix:
    if not cols:
        return ()
    n = len(cols[0])
    return tuple(tuple(col[i] for col in cols) for i in range(n))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return ()
    inner = len(b)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0))
              for j in range(len(b[0])))
        for i in range(len(a))
    )


def det_sign(m: Matrix) -> int:
    """Sign of the determinant of a square rational matrix: -1, 0, or +1.

    Denominators are cleared row by row with positive multipliers, then a
    fraction-free (Bareiss) elimination runs in exact integers.
    """
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise CascadixError("determinant of a non-square matrix")
    a: List[List[int]] = []
    for row in m:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        a.append([int(x * mult) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    last = a[n - 1][n - 1]
    return sign * (0 if last == 0 else (1 if last > 0 else -1))


def _rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot column list."""
    rows = [list(r) for r in m]
    nrows, ncols = len(rows), (len(m[0]) if m else 0)
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), pivots


def matrix_rank(m: Matrix) -> int:
    return len(_rref(m)[1]) if m else 0


def kernel_basis(m: Matrix, ncols: int) -> List[Vector]:
    """Canonical primitive integer basis of the kernel, one per free column."""
    if not m:
        return [tuple(Fraction(1 if i == j else 0) for i in range(ncols))
                for j in range(ncols)]
    rref, pivots = _rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            v[p] = -rref[row_idx][f]
        mult = lcm(*(x.denominator for x in v))
        basis.append(tuple(x * mult for x in v))
    return basis


def _extend_to_basis(cols: List[Vector], candidates: List[Vector],
                     dim: int) -> List[Vector]:
    """Greedily pick candidates that extend cols to a basis of dimension dim."""
    chosen: List[Vector] = []
    current = list(cols)
    for cand in candidates:
        if len(current) == dim:
            break
        if matrix_rank(_from_columns(current + [cand])) > len(current):
            current.append(cand)
            chosen.append(cand)
    if len(current) != dim:
        raise CascadixError("could not extend to a full basis")
    return chosen


@dataclass(frozen=True)
class OrientedSpace:
    """Abstract oriented rational vector space with a reference basis."""

    dim: int
    reference_basis: Matrix = ()
    sign: int = 1

    def __post_init__(self):
        if self.dim < 0:
            raise CascadixError(f"dimension {self.dim} < 0")
        if self.sign not in (1, -1):
            raise CascadixError(f"sign must be +-1, got {self.sign}")
        basis = self.reference_basis or _identity(self.dim)
        basis = _frac_rows(basis)
        object.__setattr__(self, "reference_basis", basis)
        if len(basis) != self.dim or any(len(r) != self.dim for r in basis):
            raise CascadixError("reference basis must be square of size dim")
        if self.dim >= 1 and det_sign(basis) == 0:
            raise CascadixError("reference basis is singular")

    @classmethod
    def standard(cls, dim: int, sign: int = 1) -> "OrientedSpace":
        return cls(dim, _identity(dim), sign)

    def basis_det_sign(self) -> int:
        return det_sign(self.reference_basis)

    def orientation_of(self, vectors: Sequence[Vector]) -> int:
        """+1 if the given ordered vectors are positively oriented here."""
        if len(vectors) != self.dim:
            raise CascadixError("need exactly dim vectors")
        d = det_sign(_from_columns(list(vectors))) if self.dim else 1
        return self.sign * d * self.basis_det_sign()


@dataclass(frozen=True)
class LinearMapSpec:
    """Rational matrix, rows = target dimension, columns = source dimension."""

    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frac_rows(self.matrix))
        widths = {len(r) for r in self.matrix}
        if len(widths) > 1:
            raise CascadixError("ragged matrix")

    @property
    def rows(self) -> int:
        return len(self.matrix)

    def cols_or(self, default: int) -> int:
        return len(self.matrix[0]) if self.matrix else default

    def apply_columns(self, cols: Sequence[Vector]) -> List[Vector]:
        return _columns(_matmul(self.matrix, _from_columns(list(cols))))


@dataclass(frozen=True)
class IncludedSubspace:
    """An oriented space together with its inclusion into a larger one."""

    space: OrientedSpace
    inclusion: LinearMapSpec


@dataclass(frozen=True)
class OrientedFrame:
    """Ordered vectors inside an ambient space, with an orientation sign."""

    vectors: Tuple[Vector, ...]
    sign: int

    @property
    def dim(self) -> int:
        return len(self.vectors)


def quotient_orientation(total: OrientedSpace,
                         sub: IncludedSubspace) -> OrientedFrame:
    """Oriented complement representative for total/sub.

    The representative is drawn from total's reference basis columns, and
    its sign makes (sub basis, representative) carry total's orientation.
    """
    inc = sub.inclusion
    if inc.rows != total.dim or inc.cols_or(sub.space.dim) != sub.space.dim:
        raise NotASubspace(
            f"inclusion is {inc.rows}x{inc.cols_or(sub.space.dim)}, need "
            f"{total.dim}x{sub.space.dim}"
        )
    s_cols = inc.apply_columns(_columns(sub.space.reference_basis)) \
        if sub.space.dim else []
    if matrix_rank(_from_columns(s_cols)) != sub.space.dim:
        raise NotASubspace("inclusion image is degenerate")
    reps = _extend_to_basis(s_cols, _columns(total.reference_basis), total.dim)
    combined = _from_columns(s_cols + reps)
    sign = sub.space.sign * total.sign * det_sign(combined) \
        * total.basis_det_sign()
    return OrientedFrame(tuple(reps), sign)


def _product_space(v1: OrientedSpace, v2: OrientedSpace) -> OrientedSpace:
    n1, n2 = v1.dim, v2.dim
    rows = []
    for i in range(n1):
        rows.append(tuple(v1.reference_basis[i]) + tuple([Fraction(0)] * n2))
    for i in range(n2):
        rows.append(tuple([Fraction(0)] * n1) + tuple(v2.reference_basis[i]))
    return OrientedSpace(n1 + n2, tuple(rows), v1.sign * v2.sign)


def fibre_sum_orientation(v1: OrientedSpace, v2: OrientedSpace,
                          w: OrientedSpace, f1: LinearMapSpec,
                          f2: LinearMapSpec) -> OrientedFrame:
    """Oriented kernel of f1 - f2 inside the product of v1 and v2.

    The returned vectors are a canonical primitive integer basis; the sign
    is pinned by requiring the induced map (V1 (+) V2)/ker -> W to change
    orientation by (-1)^(dim V2 * dim W).
    """
    d1, d2, dw = v1.dim, v2.dim, w.dim
    for f, d, name in ((f1, d1, "f1"), (f2, d2, "f2")):
        if f.rows != dw or f.cols_or(d) != d:
            raise CascadixError(
                f"{name} is {f.rows}x{f.cols_or(d)}, need {dw}x{d}")

    # difference map on raw product coordinates
    diff_rows = []
    for i in range(dw):
        row1 = f1.matrix[i] if f1.matrix else ()
        row2 = f2.matrix[i] if f2.matrix else ()
        diff_rows.append(tuple(row1) + tuple(-x for x in row2))
    diff = tuple(diff_rows)

    product = _product_space(v1, v2)
    if dw == 0:
        return OrientedFrame(tuple(_columns(product.reference_basis)),
                             product.sign)
    if matrix_rank(diff) != dw:
        raise NotSurjective("difference map is not onto W")

    kernel = kernel_basis(diff, d1 + d2)
    reps = _extend_to_basis(kernel, _columns(product.reference_basis),
                            d1 + d2)
    epsilon = -1 if (d2 * dw) % 2 else 1
    image = _matmul(diff, _from_columns(reps))
    sign_q = epsilon * w.sign * det_sign(image) * w.basis_det_sign()
    combined = _from_columns(kernel + reps)
    sign_k = sign_q * product.sign * det_sign(combined) \
        * product.basis_det_sign()
    return OrientedFrame(tuple(kernel), sign_k)


def frame_orientations_agree(a: OrientedFrame, b: OrientedFrame) -> bool:
    """Do two oriented frames of the same subspace give the same orientation?"""
    if a.dim != b.dim:
        raise CascadixError("frames have different dimensions")
    if a.dim == 0:
        return a.sign == b.sign
    basis = _from_columns(list(a.vectors))
    # solve a.vectors * M = b.vectors using a full-rank row subset
    rows_idx = _independent_rows(basis, a.dim)
    sq_a = tuple(basis[i] for i in rows_idx)
    sq_b = tuple(tuple(v[i] for v in b.vectors) for i in rows_idx)
    m = _solve(sq_a, sq_b)
    # verify b really lies in the span of a
    recon = _matmul(basis, m)
    full_b = _from_columns(list(b.vectors))
    if recon != full_b:
        raise CascadixError("frames span different subspaces")
    return a.sign * b.sign * det_sign(m) == 1


def _independent_rows(m: Matrix, want: int) -> List[int]:
    chosen: List[int] = []
    for i in range(len(m)):
        trial = chosen + [i]
        rows = tuple(m[j] for j in trial)
        if matrix_rank(rows) == len(trial):
            chosen.append(i)
        if len(chosen) == want:
            return chosen
    raise CascadixError("matrix has too few independent rows")


def _solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve a @ x = b for square exact a."""
    n = len(a)
    aug = tuple(tuple(a[i]) + tuple(b[i]) for i in range(n))
    rref, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise CascadixError("singular system")
    return tuple(tuple(rref[i][n:]) for i in range(n))
