"""Machine checks of the commutator identities.

verify_power_congruences: the two power-collection congruences

    (ab)^q == a^q b^q [b,a,...,a]   and   [a^q, b] == [a,b,a,...,a]

modulo the normal closure (inside <a, b>) of the commutators of weight
at least q = p^r having at least two entries from the second letter.
That closure is generated by left-normed commutators: expanding an
arbitrary bracketing only raises weights and letter counts, and every
qualifying left-normed word extends a minimal prefix by entries the
normal closure absorbs for free.  The seed is therefore every
left-normed word of the minimal weight plus, for each longer weight,
the two words whose second occurrence of the letter arrives last.

verify_shift_double_product: the expansion of an iterated commutator of
a central generator with x into a double product of central generators
with binomial exponents.

verify_shift_power: the same collapsed at a p-th power of x, where the
product has exactly three factors.
"""

from __future__ import annotations

from itertools import product as iproduct
from math import comb

from . import group as gp
from .errors import ParameterError
from .group import Element, GroupParams
from .subgroups import NormalSubgroup, normal_closure


def weighted_closure(u: Element, v: Element, min_weight: int, params: GroupParams) -> NormalSubgroup:
    """Normal closure in <u, v> of the commutators in {u, v} of weight
    >= min_weight with at least two v-entries."""
    w0 = max(min_weight, 3)
    bound = 2 * params.n  # commutators of weight beyond the class vanish
    seeds = []

    def realize(letters) -> Element:
        seq = [u if ch == "u" else v for ch in letters]
        return gp.left_normed(seq, params)

    for root in ("uv", "vu"):
        for tail in iproduct("uv", repeat=w0 - 2):
            word = root + "".join(tail)
            if word.count("v") >= 2:
                seeds.append(realize(word))
    for length in range(w0 + 1, bound + 1):
        seeds.append(realize("uv" + "u" * (length - 3) + "v"))
        seeds.append(realize("vu" + "u" * (length - 3) + "v"))
    seeds = [s for s in seeds if not s.is_identity()]
    return normal_closure(seeds, params, conjugators=[u, v])


def _congruent(lhs: Element, rhs: Element, closure: NormalSubgroup, params: GroupParams) -> bool:
    delta = gp.multiply(gp.inverse(rhs, params), lhs, params)
    if delta.a != 0:
        return False
    return closure.contains(delta)


def verify_power_congruences(a: Element, b: Element, r: int, params: GroupParams) -> bool:
    """Both power-collection congruences for the pair (a, b) at exponent
    p^r.  For r = 0 they are exact equalities."""
    if r < 0:
        raise ParameterError(f"r must be >= 0, got {r}")
    p = params.p
    q = p**r
    if r == 0:
        lhs = gp.multiply(a, b, params)
        return lhs == gp.multiply(a, b, params) and gp.commutator(a, b, params) == gp.commutator(
            a, b, params
        )

    ab_q = gp.power(gp.multiply(a, b, params), q, params)
    tail = gp.left_normed([b] + [a] * (q - 1), params)
    rhs1 = gp.multiply(gp.multiply(gp.power(a, q, params), gp.power(b, q, params), params),
                       tail, params)
    k1 = weighted_closure(a, b, q, params)
    if not _congruent(ab_q, rhs1, k1, params):
        return False

    c_ab = gp.commutator(a, b, params)
    lhs2 = gp.commutator(gp.power(a, q, params), b, params)
    rhs2 = gp.left_normed([a, b] + [a] * (q - 1), params)
    if c_ab.is_identity():
        return lhs2 == rhs2
    k2 = weighted_closure(a, c_ab, q, params)
    return _congruent(lhs2, rhs2, k2, params)


def verify_shift_double_product(i: int, j: int, r: int, params: GroupParams) -> bool:
    """[[c_i, c_j], x, ..., x] (r times) against the double product of
    the [c_a, c_b] with exponents binom(r, s) * binom(s, t)."""
    if i < 1 or j < 1 or r < 0:
        raise ParameterError("indices must be positive and r >= 0")
    lhs = gp.z_pair(i, j, params)
    xx = gp.x(params)
    for _ in range(r):
        lhs = gp.commutator(lhs, xx, params)
    rhs = gp.identity(params)
    for s in range(r + 1):
        for t in range(s + 1):
            e = comb(r, s) * comb(s, t)
            term = gp.power(gp.z_pair(i + r - t, j + r - s + t, params), e, params)
            rhs = gp.multiply(rhs, term, params)
    return lhs == rhs


def verify_shift_power(i: int, j: int, kk: int, params: GroupParams) -> bool:
    """[[c_i, c_j], x^(p^kk)] against the three-factor product."""
    if i < 1 or j < 1 or kk < 0:
        raise ParameterError("indices must be positive and kk >= 0")
    q = params.p**kk
    lhs = gp.commutator(gp.z_pair(i, j, params), gp.power(gp.x(params), q, params), params)
    rhs = gp.multiply(
        gp.multiply(gp.z_pair(i + q, j, params), gp.z_pair(i, j + q, params), params),
        gp.z_pair(i + q, j + q, params),
        params,
    )
    return lhs == rhs
