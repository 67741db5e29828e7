import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cascadix.model import (
    Ambient,
    CriticalPoint,
    DimensionMismatch,
    FibreFlag,
    Functional,
    HomologyLattice,
    LiftedCriticalPoint,
    MissingFunctional,
    ParseError,
    ValidationError,
    load_setup,
    pair,
    parse_rational,
    parse_setup,
)


def base_raw():
    return {
        "n": 2,
        "tau_x": 3,
        "k_const": 1,
        "t0": 1,
        "lattice_sigma": {"generators": ["A"], "omega": [1], "c1": [2]},
        "lattice_x": {
            "generators": ["L"], "omega": [1], "c1": [3], "sigma_intersection": [1],
        },
        "morse_sigma": [{"name": "m", "index": 0}, {"name": "M", "index": 2}],
        "morse_w": [{"name": "x0", "index": 0}],
    }


def test_cp2_file_loads(cp2):
    assert cp2.n == 2
    assert cp2.tau_x == 3 and cp2.k_const == 1
    assert cp2.slope_ratio == 2
    assert cp2.lattice_x.sigma_intersection == (1,)
    assert cp2.min_chern_sigma == 2  # gcd default from c1 = [2]
    assert cp2.x_classes_from_sigma


def test_k_equal_tau_rejected():
    raw = base_raw()
    raw["k_const"] = 3
    with pytest.raises(ValidationError, match=r"tau_X <= K"):
        parse_setup(raw)


def test_rank_zero_valid(rank0):
    assert rank0.lattice_sigma.rank == 0
    assert rank0.lattice_x.rank == 0
    assert rank0.min_chern_sigma is None


def test_pair_examples(cp2):
    assert pair(cp2.lattice_x, [1], Functional.OMEGA) == 1
    assert pair(cp2.lattice_x, [2], Functional.C1) == 6
    assert pair(cp2.lattice_x, [0], Functional.OMEGA) == 0
    assert pair(cp2.lattice_x, [2], Functional.SIGMA_INTERSECTION) == 2
    assert pair(cp2.lattice_sigma, [1], Functional.C1) == 2


def test_pair_errors(cp2):
    with pytest.raises(DimensionMismatch):
        pair(cp2.lattice_x, [1, 0], Functional.OMEGA)
    with pytest.raises(MissingFunctional):
        pair(cp2.lattice_sigma, [1], Functional.SIGMA_INTERSECTION)


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=2),
       st.lists(st.integers(-50, 50), min_size=2, max_size=2))
def test_pair_is_linear(u, v):
    lat = HomologyLattice(("a", "b"), (Fraction(1, 3), Fraction(5, 2)), (1, 2))
    s = [u[i] + v[i] for i in range(2)]
    assert pair(lat, s, Functional.OMEGA) == \
        pair(lat, u, Functional.OMEGA) + pair(lat, v, Functional.OMEGA)


def test_monotonicity_identities(cp2, tau2):
    # built-in consistency: c1 = tau*omega on X, (tau-K)*omega on Sigma,
    # intersection = K*omega on X
    for desc in (cp2, tau2):
        for i in range(desc.lattice_x.rank):
            e = [0] * desc.lattice_x.rank
            e[i] = 1
            assert pair(desc.lattice_x, e, Functional.C1) == \
                desc.tau_x * pair(desc.lattice_x, e, Functional.OMEGA)
            assert pair(desc.lattice_x, e, Functional.SIGMA_INTERSECTION) == \
                desc.k_const * pair(desc.lattice_x, e, Functional.OMEGA)
        for i in range(desc.lattice_sigma.rank):
            e = [0] * desc.lattice_sigma.rank
            e[i] = 1
            assert pair(desc.lattice_sigma, e, Functional.C1) == \
                (desc.tau_x - desc.k_const) * pair(desc.lattice_sigma, e, Functional.OMEGA)


def test_bad_chern_convention_rejected():
    raw = base_raw()
    raw["lattice_x"]["c1"] = [2]  # should be tau*omega = 3
    with pytest.raises(ValidationError, match="c1 != tau_X"):
        parse_setup(raw)
    raw = base_raw()
    raw["lattice_sigma"]["c1"] = [3]
    with pytest.raises(ValidationError, match="Sigma-lattice"):
        parse_setup(raw)


def test_sigma_intersection_convention_rejected():
    raw = base_raw()
    raw["lattice_x"]["sigma_intersection"] = [2]
    with pytest.raises(ValidationError, match="sigma_intersection != K"):
        parse_setup(raw)
    raw = base_raw()
    del raw["lattice_x"]["sigma_intersection"]
    with pytest.raises(ValidationError, match="missing on X-lattice"):
        parse_setup(raw)
    raw = base_raw()
    raw["lattice_sigma"]["sigma_intersection"] = [1]
    with pytest.raises(ValidationError, match="present on Sigma-lattice"):
        parse_setup(raw)


def test_morse_range_checks():
    raw = base_raw()
    raw["morse_sigma"] = [{"name": "m", "index": 3}]  # top index is 2n-2 = 2
    with pytest.raises(ValidationError, match="on Sigma: m"):
        parse_setup(raw)
    raw = base_raw()
    raw["morse_w"] = [{"name": "x0", "index": 5}]
    with pytest.raises(ValidationError, match="on W: x0"):
        parse_setup(raw)


def test_duplicate_names_rejected():
    raw = base_raw()
    raw["morse_w"] = [{"name": "m", "index": 0}]
    with pytest.raises(ValidationError, match="duplicate"):
        parse_setup(raw)


def test_rational_parsing():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(7) == 7
    with pytest.raises(ParseError):
        parse_rational(0.5)
    with pytest.raises(ParseError):
        parse_rational("3/0")
    with pytest.raises(ParseError):
        parse_rational(True)


def test_fractional_constants_accepted():
    raw = base_raw()
    raw["tau_x"] = "5/2"
    raw["k_const"] = "1/2"
    # keep conventions consistent: c1 = tau*omega must stay integral
    raw["lattice_x"] = {
        "generators": ["L"], "omega": [2], "c1": [5], "sigma_intersection": [1],
    }
    raw["lattice_sigma"] = {"generators": ["A"], "omega": [1], "c1": [2]}
    desc = parse_setup(raw)
    assert desc.tau_x == Fraction(5, 2)
    assert desc.slope_ratio == 4


def test_parse_errors():
    with pytest.raises(ParseError, match="unknown key"):
        parse_setup({**base_raw(), "extra": 1})
    with pytest.raises(ParseError, match="missing key"):
        parse_setup({k: v for k, v in base_raw().items() if k != "t0"})
    with pytest.raises(ParseError):
        parse_setup("not a dict")


def test_load_setup_bad_file(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{nope")
    with pytest.raises(ParseError, match="invalid JSON"):
        load_setup(p)
    with pytest.raises(ParseError, match="cannot read"):
        load_setup(tmp_path / "absent.json")


def test_lifted_points():
    base = CriticalPoint("m", 0, Ambient.SIGMA)
    chk = LiftedCriticalPoint(base, FibreFlag.CHECK)
    hat = LiftedCriticalPoint(base, FibreFlag.HAT)
    assert chk.lifted_index == 0 and hat.lifted_index == 1
    assert chk.display_name == "m_check"
    with pytest.raises(ValidationError):
        LiftedCriticalPoint(CriticalPoint("x", 0, Ambient.W), FibreFlag.CHECK)


def test_min_chern_override():
    raw = base_raw()
    raw["min_chern_sigma"] = 1
    assert parse_setup(raw).min_chern_sigma == 1
