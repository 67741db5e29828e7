"""Randomized property drills backing the `selftest` subcommand.

Everything here is deterministic given the seed: instances are drawn from a
private random.Random, and each runner returns the list of failing
instances (empty = pass).  The same machinery drives the test suite and the
acceptance checks, so the CLI exercises exactly what the tests do.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .orientation import (
    LinearMapSpec,
    NotSurjective,
    OrientedFrame,
    OrientedSpace,
    det_sign,
    fibre_sum_orientation,
    frame_orientations_agree,
)
from .spectrum import Side, cz_perturbed, kernel_dimension, operator_catalog

ENTRY_POOL = (
    [Fraction(n) for n in (-2, -1, 0, 0, 1, 1, 2)]
    + [Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2)]
)


def random_matrix(rng, rows, cols):
    return tuple(tuple(rng.choice(ENTRY_POOL) for _ in range(cols))
                 for _ in range(rows))


def random_space(rng, dim):
    sign = rng.choice((1, -1))
    if dim == 0:
        return OrientedSpace(0, (), sign)
    while True:
        basis = random_matrix(rng, dim, dim)
        if det_sign(basis) != 0:
            return OrientedSpace(dim, basis, sign)


def random_positive_transform(rng, dim):
    """Random positive-determinant rational matrix."""
    if dim == 0:
        return ()
    while True:
        m = random_matrix(rng, dim, dim)
        if det_sign(m) == 1:
            return m


def random_triple(rng):
    """A composable fibre-sum triple: V1, V2, V3 over W12 and W23."""
    d1, d2, d3 = (rng.randint(0, 3) for _ in range(3))
    dw12 = rng.randint(0, min(2, d1 + d2))
    dw23 = rng.randint(0, min(2, d2 + d3))
    v1, v2, v3 = (random_space(rng, d) for d in (d1, d2, d3))
    w12, w23 = random_space(rng, dw12), random_space(rng, dw23)
    f1 = LinearMapSpec(random_matrix(rng, dw12, d1))
    f2 = LinearMapSpec(random_matrix(rng, dw12, d2))
    g2 = LinearMapSpec(random_matrix(rng, dw23, d2))
    g3 = LinearMapSpec(random_matrix(rng, dw23, d3))
    return v1, v2, v3, w12, w23, f1, f2, g2, g3


def _compose_on_block(outer, frame_vectors, width, offset):
    """Matrix of outer applied to one coordinate block of each frame vector."""
    rows = outer.rows
    cols = []
    for v in frame_vectors:
        part = v[offset:offset + width]
        cols.append(tuple(
            sum((outer.matrix[i][j] * part[j] for j in range(width)),
                Fraction(0))
            for i in range(rows)))
    return LinearMapSpec(tuple(tuple(col[i] for col in cols)
                               for i in range(rows)))


def left_association(v1, v2, v3, w12, w23, f1, f2, g2, g3):
    """((V1 x V2) x V3) as an oriented frame in V1+V2+V3 coordinates."""
    x12 = fibre_sum_orientation(v1, v2, w12, f1, f2)
    inner = OrientedSpace(x12.dim, (), x12.sign)
    g2_prime = _compose_on_block(g2, x12.vectors, v2.dim, v1.dim)
    y = fibre_sum_orientation(inner, v3, w23, g2_prime, g3)
    big = []
    for vec in y.vectors:
        top, bottom = vec[:x12.dim], vec[x12.dim:]
        embedded = tuple(
            sum((x12.vectors[j][i] * top[j] for j in range(x12.dim)),
                Fraction(0))
            for i in range(v1.dim + v2.dim))
        big.append(embedded + tuple(bottom))
    return OrientedFrame(tuple(big), y.sign)


def right_association(v1, v2, v3, w12, w23, f1, f2, g2, g3):
    """(V1 x (V2 x V3)) as an oriented frame in V1+V2+V3 coordinates."""
    x23 = fibre_sum_orientation(v2, v3, w23, g2, g3)
    inner = OrientedSpace(x23.dim, (), x23.sign)
    f2_prime = _compose_on_block(f2, x23.vectors, v2.dim, 0)
    y = fibre_sum_orientation(v1, inner, w12, f1, f2_prime)
    big = []
    for vec in y.vectors:
        top, bottom = vec[:v1.dim], vec[v1.dim:]
        embedded = tuple(
            sum((x23.vectors[j][i] * bottom[j] for j in range(x23.dim)),
                Fraction(0))
            for i in range(v2.dim + v3.dim))
        big.append(tuple(top) + embedded)
    return OrientedFrame(tuple(big), y.sign)


def associativity_verdict(instance):
    """True/False for agreement, None when a stage map is not surjective."""
    try:
        lf = left_association(*instance)
        rf = right_association(*instance)
    except NotSurjective:
        return None
    return frame_orientations_agree(lf, rf)


def run_associativity_trials(seed, instances):
    """Check `instances` surjective triples; return the failing ones."""
    rng = random.Random(seed)
    failures = []
    checked = 0
    while checked < instances:
        inst = random_triple(rng)
        verdict = associativity_verdict(inst)
        if verdict is None:
            continue
        if not verdict:
            failures.append(inst)
        checked += 1
    return failures


def run_basis_independence_trials(seed, instances):
    """Positive-determinant basis changes must fix every output sign."""
    rng = random.Random(seed)
    failures = []
    checked = 0
    while checked < instances:
        inst = random_triple(rng)
        v1, v2, v3, w12, w23, f1, f2, g2, g3 = inst
        try:
            base = fibre_sum_orientation(v1, v2, w12, f1, f2)
        except NotSurjective:
            continue
        transformed = []
        for space in (v1, v2, w12):
            p = random_positive_transform(rng, space.dim)
            new_basis = _right_multiply(space.reference_basis, p)
            transformed.append(OrientedSpace(space.dim, new_basis, space.sign))
        again = fibre_sum_orientation(transformed[0], transformed[1],
                                      transformed[2], f1, f2)
        if again.sign != base.sign:
            failures.append(inst)
        checked += 1
    return failures


def run_flip_trials(seed, instances, which):
    """Flipping the sign of exactly one space must flip the output sign.

    which is "v1", "v2", or "w"; over a zero-dimensional W the W sign never
    enters (the product-orientation convention), so those draws are skipped
    for the "w" runner.
    """
    slot = {"v1": 0, "v2": 1, "w": 2}[which]
    rng = random.Random(seed)
    failures = []
    checked = 0
    while checked < instances:
        inst = random_triple(rng)
        v1, v2, v3, w12, w23, f1, f2, g2, g3 = inst
        if which == "w" and w12.dim == 0:
            continue
        try:
            base = fibre_sum_orientation(v1, v2, w12, f1, f2)
        except NotSurjective:
            continue
        spaces = [v1, v2, w12]
        old = spaces[slot]
        spaces[slot] = OrientedSpace(old.dim, old.reference_basis, -old.sign)
        flipped = fibre_sum_orientation(spaces[0], spaces[1], spaces[2],
                                        f1, f2)
        if flipped.sign != -base.sign or flipped.vectors != base.vectors:
            failures.append(inst)
        checked += 1
    return failures


def _right_multiply(a, b):
    if not a:
        return ()
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b)))
                       for j in range(len(b[0]))) for i in range(len(a)))


def crossing_identity_failures():
    """Operators violating CZ(-delta) - CZ(+delta) == dim ker; exhaustive."""
    out = []
    for op in operator_catalog():
        drop = cz_perturbed(op, Side.MINUS_SMALL) \
            - cz_perturbed(op, Side.PLUS_SMALL)
        if drop != kernel_dimension(op):
            out.append(op)
    return out
