"""Property-based checks on small random inputs."""

from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st

from posetcoh import io
from posetcoh.derived import cohomology, homology, nerve_cohomology_oracle, nerve_homology_oracle
from posetcoh.functor import CO, CONTRA, direct_sum
from posetcoh.linalg import QQ, Matrix, det, kernel_basis, solve

from random_functors import F5, random_functor

fields = st.sampled_from([QQ, F5])
small = st.integers(min_value=0, max_value=5)


@st.composite
def matrices(draw, rows=small, cols=small):
    field = draw(fields)
    r, c = draw(rows), draw(cols)
    data = draw(st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(field, data, cols=c)


@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert k.cols + m.rank() == m.cols


@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert k.rank() == k.cols


@given(matrices(), st.integers(1, 3), st.randoms(use_true_random=False))
def test_solve_recovers_consistent_systems(a, width, rnd):
    x = Matrix(a.field, a.cols, width,
               [[a.field(rnd.randint(-2, 2)) for _ in range(width)] for _ in range(a.cols)])
    b = a @ x
    assert a @ solve(a, b) == b


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(st.just(n), st.just(n)),
                                                      matrices(st.just(n), st.just(n)))))
def test_determinant_is_multiplicative(pair):
    a, b = pair
    b = Matrix(a.field, b.rows, b.cols, [[a.field(x) for x in row] for row in b.tolist()])
    assert det(a @ b) == a.field.reduce(det(a) * det(b))


seeds = st.integers(0, 2**32 - 1)
variances = st.sampled_from([CONTRA, CO])


def _functor(seed, variance, max_size=6):
    return random_functor(random.Random(seed), variance, max_size=max_size, max_dim=2)


@settings(max_examples=40, deadline=None)
@given(seeds, variances)
def test_generated_functors_are_functorial(seed, variance):
    assert _functor(seed, variance).violations() == []


@settings(max_examples=40, deadline=None)
@given(seeds, variances)
def test_replacement_matches_nerve_oracle(seed, variance):
    f = _functor(seed, variance)
    if variance == CONTRA:
        assert cohomology(f) == nerve_cohomology_oracle(f)
    else:
        assert homology(f) == nerve_homology_oracle(f)


@settings(max_examples=25, deadline=None)
@given(seeds, seeds)
def test_cohomology_is_additive(seed_a, seed_b):
    rng = random.Random(seed_a)
    f = random_functor(rng, CONTRA, QQ, max_size=6, max_dim=2)
    g = random_functor(random.Random(seed_b), CONTRA, QQ, poset=f.poset, max_dim=2)
    total = cohomology(direct_sum(f, g))
    parts = [cohomology(f), cohomology(g)]
    for k in set(total) | set(parts[0]) | set(parts[1]):
        assert total.get(k, 0) == parts[0].get(k, 0) + parts[1].get(k, 0)


@settings(max_examples=25, deadline=None)
@given(seeds, variances)
def test_functor_json_round_trip(seed, variance):
    f = _functor(seed, variance)
    g = io.functor_from_json(f.to_json())
    assert g.dims == f.dims and g.maps == f.maps and g.variance == f.variance
