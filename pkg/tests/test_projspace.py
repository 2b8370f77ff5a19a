"""Point enumeration, subspaces, and q-binomials against brute oracles."""

import itertools
import random

import pytest

from conftest import random_nonzero_vector

from prmquadrics.gf import field_create, field_from_order
from prmquadrics.linalg import rref, vec_scale
from prmquadrics.projspace import (
    EqualPoints,
    OutOfRange,
    enumerate_points,
    gaussian_binomial,
    hyperplane,
    line_through,
    normalize,
    projective_size,
    projective_space,
    subspace_from_vectors,
    subspace_points,
)


def test_projective_size_values():
    assert projective_size(2, 1) == 3
    assert projective_size(2, 2) == 7
    assert projective_size(2, 3) == 15
    assert projective_size(3, 2) == 13
    assert projective_size(3, 3) == 40
    assert projective_size(7, -1) == 0
    with pytest.raises(OutOfRange):
        projective_size(2, -2)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 3), (3, 2), (4, 2), (5, 1)])
def test_enumerate_points_count_and_normalization(q, n):
    field = field_from_order(q)
    pts = enumerate_points(field, n)
    assert len(pts) == projective_size(q, n)
    assert len(set(pts)) == len(pts)
    for pt in pts:
        last = max(i for i, c in enumerate(pt) if c)
        assert pt[last] == 1
        assert normalize(field, pt) == pt  # idempotent


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (4, 1)])
def test_every_nonzero_vector_normalizes_into_list(q, n):
    field = field_from_order(q)
    pts = set(enumerate_points(field, n))
    for vec in itertools.product(range(q), repeat=n + 1):
        if not any(vec):
            continue
        assert normalize(field, vec) in pts


def test_scaling_invariance_of_normalization():
    rng = random.Random(3)
    for q in (3, 4, 5):
        field = field_from_order(q)
        for _ in range(100):
            v = random_nonzero_vector(field, 4, rng)
            for lam in range(1, q):
                assert normalize(field, vec_scale(field, lam, v)) == normalize(field, v)


def _subspace_count_bruteforce(n, k, q):
    """Oracle: count k-dim subspaces of F_q**n by canonical rref forms."""
    field = field_from_order(q)
    seen = set()
    for vecs in itertools.combinations(itertools.product(range(q), repeat=n), k):
        red, pivots = rref(field, [list(v) for v in vecs])
        if len(pivots) != k:
            continue
        seen.add(tuple(tuple(r) for r in red[:k]))
    return len(seen)


def test_gaussian_binomial_against_bruteforce():
    assert _subspace_count_bruteforce(4, 2, 2) == 35
    assert gaussian_binomial(4, 2, 2) == 35
    assert _subspace_count_bruteforce(3, 2, 3) == 13
    assert gaussian_binomial(3, 2, 3) == 13
    assert gaussian_binomial(3, 1, 2) == _subspace_count_bruteforce(3, 1, 2) == 7


def test_gaussian_binomial_identities():
    for n in range(6):
        for q in (2, 3, 4, 5):
            assert gaussian_binomial(n, 0, q) == 1
            for k in range(n + 1):
                assert gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q)
    with pytest.raises(OutOfRange):
        gaussian_binomial(3, 4, 2)
    with pytest.raises(OutOfRange):
        gaussian_binomial(3, -1, 2)


def test_line_through_examples():
    f2 = field_create(2, 1)
    pts = line_through(f2, (1, 0, 0, 1), (0, 1, 0, 1))
    assert len(pts) == 3
    assert (1, 1, 0, 0) in pts
    f3 = field_create(3, 1)
    pts3 = line_through(f3, (1, 0, 1), (0, 1, 1))
    assert len(pts3) == 4  # q + 1 rational points
    with pytest.raises(EqualPoints):
        line_through(f2, (1, 0, 0, 1), (1, 0, 0, 1))


def test_line_points_lie_on_line():
    rng = random.Random(5)
    f4 = field_from_order(4)
    space = projective_space(f4, 2)
    for _ in range(20):
        p, q = rng.sample(space.points, 2)
        pts = line_through(f4, p, q)
        assert len(pts) == 5
        sub = subspace_from_vectors(f4, 2, [p, q])
        assert all(sub.contains(x) for x in pts)


def test_subspace_points_sizes():
    f2 = field_create(2, 1)
    pt = subspace_from_vectors(f2, 3, [(1, 0, 0, 1)])
    assert pt.dimension == 0 and len(subspace_points(pt)) == 1
    plane = subspace_from_vectors(f2, 3, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    assert plane.dimension == 2 and len(subspace_points(plane)) == 7
    f3 = field_create(3, 1)
    line = subspace_from_vectors(f3, 2, [(1, 0, 0), (0, 1, 0)])
    assert line.dimension == 1 and len(subspace_points(line)) == 4
    empty = subspace_from_vectors(f3, 2, [])
    assert empty.dimension == -1
    with pytest.raises(ValueError):
        subspace_points(empty)


def test_subspace_canonical_and_dependent_input():
    f3 = field_create(3, 1)
    a = subspace_from_vectors(f3, 2, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    b = subspace_from_vectors(f3, 2, [(1, 2, 0), (2, 0, 0)])
    assert a.dimension == 1
    assert a == b  # canonical spanning set


def test_subspace_dual_equations():
    from prmquadrics.linalg import kernel_basis

    f3 = field_create(3, 1)
    line = subspace_from_vectors(f3, 3, [(1, 0, 2, 0), (0, 1, 1, 0)])
    eqs = line.equations()
    assert len(eqs) == 2  # vector-space codimension
    for pt in subspace_points(line):
        for eq in eqs:
            acc = 0
            for a, b in zip(eq, pt):
                acc = f3.add(acc, f3.mul(a, b))
            assert acc == 0
    # round trip: the joint kernel of the equations is the subspace again
    assert subspace_from_vectors(f3, 3, kernel_basis(f3, eqs, 4)) == line
    empty = subspace_from_vectors(f3, 2, [])
    assert len(empty.equations()) == 3


def test_hyperplane():
    f3 = field_create(3, 1)
    h = hyperplane(f3, (1, 0, 0, 0))
    assert h.dimension == 2
    assert all(pt[0] == 0 for pt in subspace_points(h))
    assert len(subspace_points(h)) == projective_size(3, 2)
    with pytest.raises(ValueError):
        hyperplane(f3, (0, 0, 0, 0))


def test_point_index_bijective():
    for q, n in [(2, 3), (3, 2), (4, 2)]:
        field = field_from_order(q)
        space = projective_space(field, n)
        for i, pt in enumerate(space.points):
            assert space.point_index(pt) == i
        # index also resolves unnormalized representatives
        assert space.point_index(vec_scale(field, field.q - 1, space.points[0]) if q > 2 else space.points[0]) == 0


def test_point_rendering():
    f4 = field_from_order(4)
    space = projective_space(f4, 2)
    z = f4.from_coeffs((0, 1))
    assert space.render_point((1, z, 0)) == "(1:z:0)"
