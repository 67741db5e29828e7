import random
from fractions import Fraction

import pytest

import oracles

from cascadix import selfcheck as props
from cascadix.errors import CascadixError
from cascadix.orientation import (
    IncludedSubspace,
    LinearMapSpec,
    NotASubspace,
    NotSurjective,
    OrientedFrame,
    OrientedSpace,
    det_sign,
    fibre_sum_orientation,
    frame_orientations_agree,
    quotient_orientation,
)

R1 = OrientedSpace.standard(1)
R2 = OrientedSpace.standard(2)
ZERO = OrientedSpace.standard(0)
IDENT1 = LinearMapSpec(((1,),))


def axis(total_dim, index, sign=1):
    column = tuple((1,) if i == index else (0,) for i in range(total_dim))
    return IncludedSubspace(OrientedSpace.standard(1, sign),
                            LinearMapSpec(column))


# --- quotient orientation ----------------------------------------------


def test_quotient_by_first_axis():
    frame = quotient_orientation(R2, axis(2, 0))
    assert (frame.vectors, frame.sign) == oracles.QUOTIENT_BY_E1


def test_quotient_by_second_axis():
    frame = quotient_orientation(R2, axis(2, 1))
    assert (frame.vectors, frame.sign) == oracles.QUOTIENT_BY_E2


@pytest.mark.parametrize("s_total,s_sub", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
def test_quotient_by_whole_space_multiplies_signs(s_total, s_sub):
    total = OrientedSpace.standard(2, s_total)
    sub = IncludedSubspace(OrientedSpace.standard(2, s_sub),
                           LinearMapSpec(((1, 0), (0, 1))))
    frame = quotient_orientation(total, sub)
    assert frame.dim == 0
    assert frame.sign == s_total * s_sub


def test_quotient_tracks_total_reference_basis():
    # total oriented by the swapped basis (e2, e1): the complement of e1
    # must be -e2 to restore that orientation, hence sign -1.
    swapped = OrientedSpace(2, ((0, 1), (1, 0)))
    frame = quotient_orientation(swapped, axis(2, 0))
    assert frame.vectors == ((0, 1),)
    assert frame.sign == -1


def test_quotient_rejects_dependent_inclusion():
    doubled = IncludedSubspace(OrientedSpace.standard(2),
                               LinearMapSpec(((1, 1), (0, 0))))
    with pytest.raises(NotASubspace):
        quotient_orientation(R2, doubled)


def test_quotient_rejects_shape_mismatch():
    too_tall = IncludedSubspace(OrientedSpace.standard(1),
                                LinearMapSpec(((1,), (0,), (0,))))
    with pytest.raises(NotASubspace):
        quotient_orientation(R2, too_tall)


# --- fibre sum ---------------------------------------------------------


def test_fibre_sum_diagonal_oracle():
    frame = fibre_sum_orientation(R1, R1, R1, IDENT1, IDENT1)
    assert (frame.vectors, frame.sign) == oracles.FIBRE_SUM_DIAGONAL


def test_fibre_sum_projection_oracle():
    proj = LinearMapSpec(((1, 0),))
    none = LinearMapSpec(((),))
    frame = fibre_sum_orientation(R2, ZERO, R1, proj, none)
    assert (frame.vectors, frame.sign) == oracles.FIBRE_SUM_PROJECTION


@pytest.mark.parametrize("s1,s2", [(1, 1), (1, -1), (-1, -1)])
def test_fibre_sum_over_point_is_product(s1, s2):
    v1 = OrientedSpace.standard(2, s1)
    v2 = OrientedSpace.standard(1, s2)
    empty = LinearMapSpec(())
    frame = fibre_sum_orientation(v1, v2, ZERO, empty, empty)
    assert frame.vectors == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert frame.sign == s1 * s2


def test_fibre_sum_rejects_non_surjective():
    zero_map = LinearMapSpec(((0,),))
    with pytest.raises(NotSurjective):
        fibre_sum_orientation(R1, R1, R1, zero_map, zero_map)


def test_fibre_sum_rejects_shape_mismatch():
    wide = LinearMapSpec(((1, 0),))
    with pytest.raises(CascadixError):
        fibre_sum_orientation(R1, R1, R1, wide, IDENT1)


def test_kernel_vectors_are_primitive_integers():
    # f1 doubles, f2 triples: kernel of 2x - 3y spanned by (3, 2).
    frame = fibre_sum_orientation(R1, R1, R1,
                                  LinearMapSpec(((2,),)),
                                  LinearMapSpec(((3,),)))
    assert frame.vectors == ((3, 2),)
    assert all(x.denominator == 1 for vec in frame.vectors for x in vec)


# --- invariance properties ---------------------------------------------


def test_basis_independence():
    rng = random.Random(7)
    for _ in range(40):
        inst = props.random_triple(rng)
        v1, v2, v3, w12, w23, f1, f2, g2, g3 = inst
        try:
            base = fibre_sum_orientation(v1, v2, w12, f1, f2)
        except NotSurjective:
            continue
        transformed = []
        for space in (v1, v2, w12):
            p = props.random_positive_transform(rng, space.dim)
            new_basis = _matmul_rows(space.reference_basis, p)
            transformed.append(OrientedSpace(space.dim, new_basis, space.sign))
        again = fibre_sum_orientation(transformed[0], transformed[1],
                                      transformed[2], f1, f2)
        assert again.sign == base.sign
        if w12.dim >= 1:
            # kernel vectors depend only on the maps; over a point the
            # frame is the product reference basis, which does move
            assert again.vectors == base.vectors


def _matmul_rows(a, b):
    if not a:
        return ()
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b)))
                       for j in range(len(b[0]))) for i in range(len(a)))


def test_single_sign_flip_flips_output():
    rng = random.Random(11)
    flips_seen = 0
    while flips_seen < 30:
        v1, v2, v3, w12, w23, f1, f2, g2, g3 = props.random_triple(rng)
        try:
            base = fibre_sum_orientation(v1, v2, w12, f1, f2)
        except NotSurjective:
            continue
        # over a point W never enters, so only V1/V2 flips count there
        flippable = 3 if w12.dim >= 1 else 2
        for which in range(flippable):
            spaces = [v1, v2, w12]
            old = spaces[which]
            spaces[which] = OrientedSpace(old.dim, old.reference_basis,
                                          -old.sign)
            flipped = fibre_sum_orientation(spaces[0], spaces[1], spaces[2],
                                            f1, f2)
            assert flipped.sign == -base.sign
            assert flipped.vectors == base.vectors
        flips_seen += 1


def test_associativity_over_random_instances():
    failures = props.run_associativity_trials(seed=20260822, instances=200)
    assert failures == []


def test_packaged_property_runners_pass():
    assert props.run_basis_independence_trials(5, 25) == []
    for which in ("v1", "v2", "w"):
        assert props.run_flip_trials(6, 25, which) == []
    assert props.crossing_identity_failures() == []


# --- frame comparison helper -------------------------------------------


def test_frames_of_different_spans_rejected():
    a = OrientedFrame(((Fraction(1), Fraction(0)),), 1)
    b = OrientedFrame(((Fraction(0), Fraction(1)),), 1)
    with pytest.raises(CascadixError):
        frame_orientations_agree(a, b)


def test_frame_agreement_is_scale_invariant():
    a = OrientedFrame(((Fraction(1), Fraction(2)),), 1)
    b = OrientedFrame(((Fraction(2), Fraction(4)),), 1)
    c = OrientedFrame(((Fraction(-1), Fraction(-2)),), 1)
    assert frame_orientations_agree(a, b)
    assert not frame_orientations_agree(a, c)
    assert frame_orientations_agree(a, OrientedFrame(a.vectors, 1))


def test_det_sign_matches_float_determinant():
    rng = random.Random(3)
    import numpy as np
    for _ in range(60):
        n = rng.randint(1, 4)
        m = props.random_matrix(rng, n, n)
        exact = det_sign(m)
        approx = np.linalg.det([[float(x) for x in row] for row in m])
        if abs(approx) > 1e-9:
            assert exact == (1 if approx > 0 else -1)
        else:
            assert exact == 0
