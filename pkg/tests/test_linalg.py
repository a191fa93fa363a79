import random
from itertools import product as iproduct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgroupdim.errors import ContainmentError, DimensionMismatchError, ParameterError
from pgroupdim.linalg import (
    MutableBasis,
    Subspace,
    full_subspace,
    quotient_logorder,
    rref,
    subspace_intersect,
    subspace_sum,
    zero_subspace,
)


def span_brute(rows, p, n):
    """All vectors in the span, by enumerating every coefficient vector."""
    out = set()
    for coeffs in iproduct(range(p), repeat=len(rows)):
        v = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(n))
        out.add(v)
    return out


def test_empty_span_is_zero():
    s = rref([], 3, 4)
    assert s.dim == 0 and s.ambient_dim == 4
    assert s.contains((0, 0, 0, 0))
    assert not s.contains((1, 0, 0, 0))


def test_known_reduction():
    s = rref([(1, 1, 0), (0, 2, 0), (1, 0, 0)], 3, 3)
    assert s.basis == ((1, 0, 0), (0, 1, 0))
    assert s.dim == 2


def test_full_span():
    rows = list(iproduct(range(3), repeat=2))
    s = rref(rows, 3, 2)
    assert s.is_full() and s.dim == 2


def test_rref_idempotent():
    rng = random.Random(0)
    for _ in range(30):
        rows = [[rng.randrange(5) for _ in range(6)] for _ in range(rng.randrange(1, 7))]
        s = rref(rows, 5, 6)
        again = rref(s.basis, 5, 6)
        assert again == s


def test_rref_canonical_across_generating_sets():
    rng = random.Random(1)
    for _ in range(25):
        p = rng.choice([3, 5])
        n = rng.randrange(2, 7)
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randrange(1, n + 1))]
        s = rref(rows, p, n)
        # remix the generators: random invertible row operations and shuffles
        mixed = [list(r) for r in rows]
        for _ in range(12):
            i, j = rng.randrange(len(mixed)), rng.randrange(len(mixed))
            if i != j:
                f = rng.randrange(1, p)
                mixed[i] = [(a + f * b) % p for a, b in zip(mixed[i], mixed[j])]
        rng.shuffle(mixed)
        mixed.append([0] * n)
        assert rref(mixed, p, n) == s


def test_contains_matches_brute_force_enumeration():
    rng = random.Random(2)
    for p, n in [(3, 4), (3, 5), (5, 4)]:
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(2)]
        s = rref(rows, p, n)
        brute = span_brute(rows, p, n)
        for v in iproduct(range(p), repeat=n):
            assert s.contains(v) == (v in brute)


def test_dimension_formula_and_intersection_brute():
    rng = random.Random(3)
    for _ in range(20):
        p, n = 3, 5
        a = rref([[rng.randrange(p) for _ in range(n)] for _ in range(rng.randrange(1, 4))], p, n)
        b = rref([[rng.randrange(p) for _ in range(n)] for _ in range(rng.randrange(1, 4))], p, n)
        tot = subspace_sum(a, b)
        cap = subspace_intersect(a, b)
        assert a.dim + b.dim == tot.dim + cap.dim
        brute = span_brute(a.basis, p, n) & span_brute(b.basis, p, n)
        assert span_brute(cap.basis, p, n) == brute
        assert subspace_sum(a, a) == a
        assert subspace_intersect(a, a) == a


def test_quotient_logorder():
    z = zero_subspace(3, 4)
    f = full_subspace(3, 4)
    assert quotient_logorder(f, z) == 4
    assert quotient_logorder(f, f) == 0
    with pytest.raises(ContainmentError):
        quotient_logorder(z, f)


def test_quotient_logorder_counts_cosets():
    rng = random.Random(4)
    p, n = 5, 6
    small = rref([[rng.randrange(p) for _ in range(n)]], p, n)
    big = subspace_sum(small, rref([[rng.randrange(p) for _ in range(n)] for _ in range(2)], p, n))
    lo = quotient_logorder(big, small)
    # count cosets directly
    reps = {big.reduce(v) for v in span_brute(big.basis, p, n)}
    small_sz = len(span_brute(small.basis, p, n))
    assert len(span_brute(big.basis, p, n)) // small_sz == p**lo


def test_parameter_errors():
    with pytest.raises(ParameterError):
        rref([], 4, 2)
    with pytest.raises(ParameterError):
        rref([], 2, 2)
    with pytest.raises(DimensionMismatchError):
        rref([(1, 0)], 3, 3)
    s = rref([(1, 0)], 3, 2)
    with pytest.raises(DimensionMismatchError):
        s.contains((1, 0, 0))
    t = rref([(1, 0, 0)], 3, 3)
    with pytest.raises(DimensionMismatchError):
        subspace_sum(s, t)


@given(
    st.integers(min_value=0, max_value=3**6 - 1),
    st.lists(st.lists(st.integers(0, 2), min_size=6, max_size=6), min_size=1, max_size=6),
)
def test_mutable_basis_agrees_with_rref(seedvec, rows):
    mb = MutableBasis(3, 6)
    for r in rows:
        mb.add(r)
    assert mb.snapshot() == rref(rows, 3, 6)
    probe = [(seedvec // 3**i) % 3 for i in range(6)]
    assert mb.contains(probe) == rref(rows, 3, 6).contains(probe)


def test_vectors_enumerates_span():
    s = rref([(1, 0, 1), (0, 1, 2)], 3, 3)
    vs = set(s.vectors())
    assert len(vs) == 9
    assert vs == span_brute(s.basis, 3, 3)
