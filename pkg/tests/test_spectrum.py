import math
import random

import numpy as np
import pytest

import oracles
from cascadix.spectrum import (
    ComplexLinear,
    Side,
    SpectrumError,
    VerticalC,
    cz_perturbed,
    cz_with_critical,
    discretize_spectrum,
    kernel_dimension,
    operator_catalog,
    spectrum_window,
    vertical_eigenvalue,
)

TWO_PI = 2.0 * math.pi


def test_degenerate_vertical_table():
    # spectrum of -i d/dt - 0: all of 2 pi Z, multiplicity 2, winding = mode
    pts = spectrum_window(VerticalC(0.0), -7.0, 7.0)
    assert [(p.winding, p.multiplicity) for p in pts] == [(-1, 2), (0, 2), (1, 2)]
    assert pts[0].eigenvalue == pytest.approx(-TWO_PI)
    assert pts[1].eigenvalue == 0.0
    assert pts[2].eigenvalue == pytest.approx(TWO_PI)


def test_positive_vertical_table():
    pts = spectrum_window(VerticalC(5.0), -6.0, 7.0)
    # -c and 0 are simple; the next eigenvalue up is mode 1 with winding +1
    lam1 = oracles.vertical_eigenvalue(5.0, 1, +1)
    assert [(p.multiplicity, p.winding) for p in pts] == [(1, 0), (1, 0), (2, 1)]
    assert pts[0].eigenvalue == -5.0
    assert pts[1].eigenvalue == 0.0
    assert pts[2].eigenvalue == pytest.approx(lam1)
    # the mode-1 lower eigenvalue sits below the window
    assert oracles.vertical_eigenvalue(5.0, 1, -1) < -6.0


def test_complex_linear_window():
    pts = spectrum_window(ComplexLinear(3), -0.5, 4 * TWO_PI + 0.5)
    assert [(p.winding, p.multiplicity) for p in pts] == \
        [(j, 6) for j in range(0, 5)]


def test_windings_sorted_monotone():
    for op in operator_catalog():
        pts = spectrum_window(op, -50.0, 50.0)
        evs = [p.eigenvalue for p in pts]
        assert evs == sorted(evs)
        winds = [p.winding for p in pts]
        assert winds == sorted(winds)


def test_cz_frozen_values():
    assert cz_perturbed(VerticalC(5.0), Side.PLUS_SMALL) == 0
    assert cz_perturbed(VerticalC(5.0), Side.MINUS_SMALL) == 1
    assert cz_perturbed(VerticalC(0.0), Side.PLUS_SMALL) == -1
    assert cz_perturbed(VerticalC(0.0), Side.MINUS_SMALL) == 1
    for m in range(1, 7):
        assert cz_perturbed(ComplexLinear(m), Side.PLUS_SMALL) == -m
        assert cz_perturbed(ComplexLinear(m), Side.MINUS_SMALL) == m


def test_crossing_formula_exhaustive():
    for op in operator_catalog():
        drop = cz_perturbed(op, Side.MINUS_SMALL) - cz_perturbed(op, Side.PLUS_SMALL)
        assert drop == kernel_dimension(op)


def test_cz_with_critical():
    assert cz_with_critical(VerticalC(5.0), 2) == 2
    assert cz_with_critical(VerticalC(0.0), 3) == 2


def test_kernel_dimensions():
    assert kernel_dimension(VerticalC(7.5)) == 1
    assert kernel_dimension(VerticalC(0.0)) == 2
    assert kernel_dimension(ComplexLinear(4)) == 8


def test_discretized_vertical_matches_closed_form():
    c = 5.0
    num = discretize_spectrum(VerticalC(c), fourier_cutoff=64)
    lo, hi = -20.0, 20.0
    want = []
    for p in spectrum_window(VerticalC(c), lo, hi):
        want.extend([p.eigenvalue] * p.multiplicity)
    got = [ev for ev in num if lo - 1e-6 <= ev <= hi + 1e-6]
    # window edges: keep only values that match the closed-form count
    assert len(got) == len(want)
    for g, w in zip(sorted(got), sorted(want)):
        assert abs(g - w) <= 1e-9


def test_discretized_complex_linear():
    num = discretize_spectrum(ComplexLinear(1), fourier_cutoff=8)
    want = []
    for j in range(-8, 9):
        want.extend([TWO_PI * j] * 2)
    assert len(num) == len(want)
    for g, w in zip(sorted(num), sorted(want)):
        assert abs(g - w) <= 1e-9


def test_discretized_random_c_agreement():
    rng = random.Random(20260822)
    for _ in range(10):
        c = rng.uniform(0.0, 100.0)
        num = discretize_spectrum(VerticalC(c), fourier_cutoff=48)
        lo, hi = -50.0, 50.0
        want = []
        for p in spectrum_window(VerticalC(c), lo, hi):
            want.extend([p.eigenvalue] * p.multiplicity)
        got = [ev for ev in num if ev >= lo and ev <= hi]
        assert len(got) == len(want)
        assert np.max(np.abs(np.array(sorted(got)) - np.array(sorted(want)))) <= 1e-9


def test_closed_form_eigenvalues_solve_characteristic():
    # lambda(lambda + c) = 4 pi^2 k^2 for the vertical family
    for c in (0.0, 0.3, 2.0, 41.7):
        for k in range(0, 6):
            for br in (+1, -1):
                lam = vertical_eigenvalue(c, k, br)
                assert lam * (lam + c) == pytest.approx(
                    4.0 * math.pi ** 2 * k * k, abs=1e-6)


def test_bad_inputs():
    with pytest.raises(SpectrumError):
        VerticalC(-1.0)
    with pytest.raises(SpectrumError):
        ComplexLinear(0)
    with pytest.raises(SpectrumError):
        spectrum_window(VerticalC(1.0), 3.0, -3.0)
    with pytest.raises(SpectrumError):
        discretize_spectrum(VerticalC(1.0), fourier_cutoff=2)
