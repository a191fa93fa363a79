import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_element
from pgroupdim import group as gp
from pgroupdim.errors import ParameterError
from pgroupdim.group import (
    Element,
    GroupParams,
    b,
    c,
    c2,
    commutator,
    conjugate,
    conjugate_by_x_power,
    element_from_dict,
    element_to_dict,
    evaluate_word,
    identity,
    inverse,
    multiply,
    power,
    theta,
    untheta,
    x,
    y,
    zgen,
)


def test_params_validation():
    with pytest.raises(ParameterError):
        GroupParams(2, 1)
    with pytest.raises(ParameterError):
        GroupParams(9, 1)
    with pytest.raises(ParameterError):
        GroupParams(3, 0)
    P = GroupParams(3, 2)
    assert (P.n, P.zdim, P.log_order) == (9, 36, 47)


def test_identity_laws(p31):
    g = Element(1, (0, 1, 2), (1, 0, 2))
    e = identity(p31)
    assert multiply(g, e, p31) == g
    assert multiply(e, g, p31) == g
    assert inverse(e, p31) == e


def test_shift_action_on_base_generator(p31):
    # conjugating y by x moves it to the next base generator
    assert conjugate(y(p31), x(p31), p31) == b(1, p31)
    assert conjugate(b(1, p31), x(p31), p31) == b(2, p31)
    assert conjugate(b(2, p31), x(p31), p31) == b(0, p31)


def test_defining_commutator(p31):
    cm = commutator(b(0, p31), b(1, p31), p31)
    assert cm == Element(0, (0, 0, 0), (1, 0, 0))


def test_generator_orders(p31):
    assert power(x(p31), 3, p31) == identity(p31)
    assert power(y(p31), 3, p31) == identity(p31)


def test_group_order_annihilates(p31):
    rng = random.Random(5)
    for _ in range(100):
        g = random_element(p31, rng)
        assert power(g, 2187, p31) == identity(p31)


@pytest.mark.parametrize("pk", [(3, 1), (3, 2), (5, 1)])
def test_random_associativity_and_inverses(pk):
    P = GroupParams(*pk)
    rng = random.Random(6)
    e = identity(P)
    trials = 10_000 if pk != (3, 1) else 2_000
    for _ in range(trials):
        g, h, u = (random_element(P, rng) for _ in range(3))
        assert multiply(multiply(g, h, P), u, P) == multiply(g, multiply(h, u, P), P)
    for _ in range(300):
        g = random_element(P, rng)
        assert multiply(g, inverse(g, P), P) == e
        assert multiply(inverse(g, P), g, P) == e


def test_power_laws(p32):
    rng = random.Random(7)
    for _ in range(40):
        g = random_element(p32, rng)
        e1, e2 = rng.randrange(-40, 40), rng.randrange(-40, 40)
        assert multiply(power(g, e1, p32), power(g, e2, p32), p32) == power(g, e1 + e2, p32)


def test_conjugation_automorphism_of_order_n(p32):
    rng = random.Random(8)
    for _ in range(50):
        g, h = random_element(p32, rng), random_element(p32, rng)
        cg = conjugate_by_x_power(g, 1, p32)
        assert cg == conjugate(g, x(p32), p32)
        # multiplicative
        assert conjugate_by_x_power(multiply(g, h, p32), 1, p32) == multiply(
            conjugate_by_x_power(g, 1, p32), conjugate_by_x_power(h, 1, p32), p32
        )
        # order p^k
        w = g
        for _ in range(p32.n):
            w = conjugate_by_x_power(w, 1, p32)
        assert w == g


def test_base_part_exponent_p(p32):
    rng = random.Random(9)
    for _ in range(60):
        g = random_element(p32, rng)
        g = Element(0, g.v, g.m)
        assert power(g, 3, p32) == identity(p32)


def test_base_commutators_are_central(p32):
    rng = random.Random(10)
    for _ in range(60):
        g, h = random_element(p32, rng), random_element(p32, rng)
        g, h = Element(0, g.v, g.m), Element(0, h.v, h.m)
        cm = commutator(g, h, p32)
        assert cm.is_central()


def test_named_elements(p32):
    assert c(1, p32) == y(p32)
    assert c(2, p32) == commutator(y(p32), x(p32), p32)
    assert c2(3, 1, p32) == commutator(c(3, p32), y(p32), p32)
    assert c2(3, 2, p32) == commutator(c2(3, 1, p32), x(p32), p32)
    assert zgen(4, 4, p32) == identity(p32)
    assert zgen(2, 1, p32) == commutator(c(2, p32), c(1, p32), p32)
    assert zgen(2, 1, p32).is_central()
    with pytest.raises(ParameterError):
        c(0, p32)
    with pytest.raises(ParameterError):
        zgen(0, 1, p32)


def test_deep_iterated_commutators_vanish(p31):
    # base components die at depth n+1, everything at the class bound
    assert not any(c(4, p31).v)
    assert c(7, p31) == identity(p31)


def test_word_evaluation(p31):
    assert evaluate_word("", p31) == identity(p31)
    assert evaluate_word("YXyx", p31) == commutator(y(p31), x(p31), p31)
    assert evaluate_word("YXyx", p31) == c(2, p31)
    with pytest.raises(ParameterError):
        evaluate_word("z", p31)


def test_word_homomorphism(p31):
    rng = random.Random(11)
    alphabet = "xXyY"
    for _ in range(80):
        w = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 21)))
        cut = rng.randrange(0, len(w) + 1)
        lhs = evaluate_word(w, p31)
        rhs = multiply(evaluate_word(w[:cut], p31), evaluate_word(w[cut:], p31), p31)
        assert lhs == rhs


def test_theta_roundtrip_and_laws(p32):
    rng = random.Random(12)
    st_ = None
    for _ in range(60):
        g = random_element(p32, rng)
        g = Element(0, g.v, g.m)
        h = random_element(p32, rng)
        h = Element(0, h.v, h.m)
        assert untheta(theta(g, p32), p32) == g
        # inversion is negation in log coordinates
        assert theta(inverse(g, p32), p32) == tuple((-t) % 3 for t in theta(g, p32))
    with pytest.raises(ParameterError):
        theta(x(p32), p32)


elements31 = st.tuples(
    st.integers(0, 2),
    st.tuples(*[st.integers(0, 2)] * 3),
    st.tuples(*[st.integers(0, 2)] * 3),
)


@given(elements31)
def test_serialization_roundtrip(triple):
    P = GroupParams(3, 1)
    g = Element(*triple)
    assert element_from_dict(element_to_dict(g), P) == g


def test_serialization_rejects_malformed(p31):
    with pytest.raises(ParameterError):
        element_from_dict({"a": 0, "v": [0, 0]}, p31)
    with pytest.raises(ParameterError):
        element_from_dict({"a": 5, "v": [0, 0, 0], "m": [0, 0, 0]}, p31)
    with pytest.raises(ParameterError):
        element_from_dict({"a": 0, "v": [0, 0, 3], "m": [0, 0, 0]}, p31)
