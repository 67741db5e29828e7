"""Model asymptotic operators, their spectra, and Conley-Zehnder indices.

Two families of self-adjoint first-order operators on loops cover every
asymptote the engine meets:

* `VerticalC(c)`: -i d/dt - diag(c, 0) on complex-valued loops, c >= 0.
  This is the linearization transverse to an orbit circle: c = h''(rho)*rho
  at a Hamiltonian orbit level, c = 0 at a Reeb orbit.
* `ComplexLinear(rank)`: -i d/dt on loops in C^rank, the fully degenerate
  operator governing the directions tangent to the orbit family.

Spectrum of VerticalC(c): for each integer Fourier mode k the two values
( -c +- sqrt(c^2 + 16 pi^2 k^2) ) / 2.  For c > 0 every eigenvalue has
multiplicity 2 except -c and 0 (mode 0), which are simple; for c = 0 the
spectrum is 2 pi Z with every multiplicity 2.  ComplexLinear(m) has spectrum
2 pi Z with multiplicity 2m.  The winding number attached to an eigenvalue
from mode k is |k| when the eigenvalue is >= 0 and -|k| when it is <= 0
(0 always winds 0, and both conventions agree there).

Degenerate operators are used only after a symbolic perturbation by +-delta
for an infinitesimal delta > 0; `cz_perturbed` gives the Conley-Zehnder index
of that perturbation, computed from the windings adjacent to 0:

    VerticalC(c>0):  cz(+delta) = 0,   cz(-delta) = 1
    VerticalC(0):    cz(+delta) = -1,  cz(-delta) = 1
    ComplexLinear(m): cz(+delta) = -m, cz(-delta) = +m

and the crossing relation cz(-delta) - cz(+delta) = dim ker holds throughout
(kernel dimensions 1, 2, 2m respectively).

`discretize_spectrum` assembles the operator in a truncated real Fourier
basis and diagonalizes numerically.  Because the symmetric part is constant
in t, the truncation is block-exact: every eigenvalue whose mode is inside
the cutoff is reproduced to rounding error, which is what makes it an honest
independent check of the closed forms above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Union

from .errors import CascadixError

TWO_PI = 2.0 * math.pi


class SpectrumError(CascadixError):
    pass


@dataclass(frozen=True)
class ComplexLinear:
    """-i d/dt on loops in C^rank; spectrum 2 pi Z, multiplicity 2*rank."""

    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise SpectrumError(f"complex rank must be >= 1, got {self.rank}")

    @property
    def complex_rank(self) -> int:
        return self.rank

    @property
    def label(self) -> str:
        return f"ComplexLinear{{{self.rank}}}"


@dataclass(frozen=True)
class VerticalC:
    """-i d/dt - diag(c, 0) on complex-valued loops, c >= 0."""

    c: float

    def __post_init__(self):
        c = float(self.c)
        if not math.isfinite(c) or c < 0.0:
            raise SpectrumError(f"vertical constant must be finite and >= 0, got {self.c}")
        object.__setattr__(self, "c", c)

    @property
    def complex_rank(self) -> int:
        return 1

    @property
    def label(self) -> str:
        return f"VerticalC{{{self.c:g}}}"


AsymptoticOperator = Union[ComplexLinear, VerticalC]


class Side(Enum):
    """Symbolic sign of the perturbation: the operator plus or minus delta."""

    PLUS_SMALL = "+delta"
    MINUS_SMALL = "-delta"


@dataclass(frozen=True, order=True)
class SpectralPoint:
    eigenvalue: float
    mode: int
    multiplicity: int
    winding: int


def vertical_eigenvalue(c: float, mode: int, branch: int) -> float:
    return 0.5 * (-c + branch * math.sqrt(c * c + 16.0 * math.pi ** 2 * mode * mode))


def spectrum_window(op: AsymptoticOperator, lo: float, hi: float) -> List[SpectralPoint]:
    """All spectral points with lo <= eigenvalue <= hi, sorted ascending."""
    if lo > hi:
        raise SpectrumError(f"empty window [{lo}, {hi}]")
    pts: List[SpectralPoint] = []
    if isinstance(op, ComplexLinear):
        m = op.rank
        j = math.ceil(lo / TWO_PI - 1e-15)
        while j * TWO_PI <= hi + 1e-15:
            ev = j * TWO_PI
            if ev >= lo - 1e-15:
                pts.append(SpectralPoint(ev, abs(j), 2 * m, j))
            j += 1
        return pts

    c = op.c
    if c == 0.0:
        j = math.ceil(lo / TWO_PI - 1e-15)
        while j * TWO_PI <= hi + 1e-15:
            pts.append(SpectralPoint(j * TWO_PI, abs(j), 2, j))
            j += 1
        return pts

    # c > 0: mode 0 gives the two simple eigenvalues -c and 0
    for ev in (-c, 0.0):
        if lo <= ev <= hi:
            pts.append(SpectralPoint(ev, 0, 1, 0))
    k = 1
    while True:
        lam_minus = vertical_eigenvalue(c, k, -1)
        lam_plus = vertical_eigenvalue(c, k, +1)
        emitted = False
        if lo <= lam_minus <= hi:
            pts.append(SpectralPoint(lam_minus, k, 2, -k))
            emitted = True
        if lo <= lam_plus <= hi:
            pts.append(SpectralPoint(lam_plus, k, 2, k))
            emitted = True
        if not emitted and lam_plus > hi and lam_minus < lo:
            break
        k += 1
    pts.sort()
    return pts


def kernel_dimension(op: AsymptoticOperator) -> int:
    if isinstance(op, ComplexLinear):
        return 2 * op.rank
    return 2 if op.c == 0.0 else 1


def cz_perturbed(op: AsymptoticOperator, side: Side) -> int:
    """Conley-Zehnder index of the operator perturbed by +-delta.

    Computed from the windings of the eigenvalues straddling 0 after the
    shift; tabulated in the module docstring.
    """
    plus = side is Side.PLUS_SMALL
    if isinstance(op, ComplexLinear):
        return -op.rank if plus else op.rank
    if op.c == 0.0:
        return -1 if plus else 1
    return 0 if plus else 1


def cz_with_critical(op: AsymptoticOperator, morse_index: int) -> int:
    """Index of the pair (operator, critical point): cz(+delta) + Morse index."""
    return cz_perturbed(op, Side.PLUS_SMALL) + morse_index


def discretize_spectrum(op: AsymptoticOperator, fourier_cutoff: int = 64):
    """Eigenvalues of the operator restricted to Fourier modes <= cutoff.

    Returns a sorted numpy array, eigenvalues repeated per multiplicity.
    Intended as the numerical cross-check of `spectrum_window`; the matrix is
    assembled in the orthonormal real basis {1, sqrt2 cos(2 pi k t),
    sqrt2 sin(2 pi k t)} per real coordinate.
    """
    import numpy as np

    if fourier_cutoff < 4:
        raise SpectrumError(f"fourier_cutoff must be >= 4, got {fourier_cutoff}")
    m = op.complex_rank
    nreal = 2 * m
    if isinstance(op, VerticalC):
        s_diag = [op.c, 0.0]
    else:
        s_diag = [0.0] * nreal

    # basis labels: (kind, k) with kind "c" (cos, k >= 0) or "s" (sin, k >= 1)
    funcs = [("c", 0)] + [(kind, k) for k in range(1, fourier_cutoff + 1)
                          for kind in ("c", "s")]
    findex = {f: i for i, f in enumerate(funcs)}
    dim = nreal * len(funcs)
    mat = np.zeros((dim, dim))

    def slot(j, f):
        return j * len(funcs) + findex[f]

    for j in range(nreal):
        cpx, re_part = divmod(j, 2)
        # J e_j: real part -> imaginary, imaginary -> minus real
        jj = 2 * cpx + 1 if re_part == 0 else 2 * cpx
        jsign = 1.0 if re_part == 0 else -1.0
        for kind, k in funcs:
            col = slot(j, (kind, k))
            # -S e_j * phi
            mat[slot(j, (kind, k)), col] += -s_diag[j]
            if k == 0:
                continue
            w = TWO_PI * k
            if kind == "c":
                # phi' = -w * sin_k; -J e_j phi' = w * jsign * e_jj * sin_k
                mat[slot(jj, ("s", k)), col] += w * jsign
            else:
                # phi' = w * cos_k; -J e_j phi' = -w * jsign * e_jj * cos_k
                mat[slot(jj, ("c", k)), col] += -w * jsign

    if not np.allclose(mat, mat.T, atol=1e-12):
        raise SpectrumError("discretized operator failed to be symmetric")
    return np.sort(np.linalg.eigvalsh(0.5 * (mat + mat.T)))


def operator_catalog() -> Iterable[AsymptoticOperator]:
    """Representative operators used by exhaustive invariant checks."""
    ops: List[AsymptoticOperator] = [VerticalC(0.0)]
    ops += [VerticalC(c) for c in (0.3, float(Fraction(1, 2)), 1.0, 5.0, 100.0)]
    ops += [ComplexLinear(m) for m in range(1, 7)]
    return ops
