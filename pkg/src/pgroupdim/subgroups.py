"""Subgroups of the ambient group in split form, and closures.

Every subgroup handled here has the shape

    < x^(p^m) >  *  S        with S inside the base*center part,

stored as the top exponent m (m = k means trivial top, printed as
infinity) together with the log-coordinate image of S, a subspace of
F_p^(n + zdim) closed under the wedge bracket.  Membership, products,
intersections and indices all reduce to row arithmetic on that
subspace; see group.theta for why conjugation acts linearly there.

Normal closures are computed by a certified fixed point: every vector
added to the candidate space is derived from the generators by
operations valid in any normal subgroup containing them (commutators
with the conjugating generators, powers landing in the base part,
reduction by an already-certified top power), so the result is exactly
the normal closure, never an over-approximation.  Generator sets whose
closure cannot be written in split form are rejected.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from . import group as gp
from .errors import ClosureConsistencyError, DimensionMismatchError, ParameterError
from .group import Element, GroupParams, theta, untheta
from .linalg import MutableBasis, Subspace, rref, zero_subspace


@lru_cache(maxsize=None)
def structure(params: GroupParams) -> "Structure":
    return Structure(params)


class Structure:
    """Cached linear data for one parameter set: the conjugation maps in
    log coordinates and the wedge bracket."""

    def __init__(self, params: GroupParams):
        self.params = params
        p, n, zd = params.p, params.n, params.zdim
        self.d = n + zd
        # shift on the v-block: out[i] = in[(i-1) mod n]
        self._vsrc = tuple((i - 1) % n for i in range(n))
        # signed pair shift on the center block
        pair_index = params.pair_index
        dst = [0] * zd
        sgn = [0] * zd
        q = 0
        for s in range(n):
            for t in range(s + 1, n):
                s2, t2 = (s + 1) % n, (t + 1) % n
                if s2 < t2:
                    dst[q], sgn[q] = pair_index(s2, t2), 1
                else:
                    dst[q], sgn[q] = pair_index(t2, s2), p - 1
                q += 1
        self._zdst = tuple(dst)
        self._zsgn = tuple(sgn)

    def ax_apply(self, vec):
        """Conjugation by x on log coordinates (block permutation with
        sign flips on wrapped center pairs)."""
        p = self.params.p
        n = self.params.n
        zd = self.params.zdim
        out = [0] * self.d
        vsrc = self._vsrc
        for i in range(n):
            out[i] = vec[vsrc[i]]
        zdst, zsgn = self._zdst, self._zsgn
        for q in range(zd):
            c = vec[n + q]
            if c:
                out[n + zdst[q]] = (out[n + zdst[q]] + zsgn[q] * c) % p
        return tuple(out)

    def wedge(self, v1, v2):
        """Center vector of the commutator of two base-part vectors."""
        p, n = self.params.p, self.params.n
        out = [0] * self.params.zdim
        q = 0
        for s in range(n):
            a = v1[s]
            b = v2[s]
            for t in range(s + 1, n):
                w = a * v2[t] - b * v1[t]
                if w:
                    out[q] = w % p
                q += 1
        return out

    def wedge_vec(self, vec, hv):
        """Conjugation correction: log(g^h) = log(g) + (0, wedge(v_g, v_h))."""
        n = self.params.n
        p = self.params.p
        if not any(vec[:n]) or not any(hv):
            return tuple(vec)
        w = self.wedge(vec[:n], hv)
        return tuple(vec[:n]) + tuple((vec[n + q] + w[q]) % p for q in range(self.params.zdim))

    def conj_apply(self, h: Element):
        """Linear map vec -> log(g^h) for a fixed conjugator h = x^a * h0."""
        n = self.params.n
        a = h.a % n
        hv = h.v
        has_h = any(hv)

        def apply(vec):
            w = vec
            for _ in range(a):
                w = self.ax_apply(w)
            if has_h:
                w = self.wedge_vec(w, hv)
            return tuple(w)

        return apply


def _val_p(a: int, p: int) -> int:
    j = 0
    while a % p == 0:
        a //= p
        j += 1
    return j


@dataclass(frozen=True)
class NormalSubgroup:
    """Split-form subgroup: top exponent plus log-coordinate space.

    `top` is clamped to 0..k with k meaning trivial top part; the `m`
    property renders that as infinity.  `normal` records whether the
    instance was built or verified as normal in the full group (the
    sandwich bounds use plain subgroups too); it does not enter
    equality.
    """

    params: GroupParams
    top: int
    space: Subspace
    normal: bool = field(default=True, compare=False)

    @property
    def m(self):
        return self.top if self.top < self.params.k else math.inf

    @property
    def log_order(self) -> int:
        return (self.params.k - self.top) + self.space.dim

    @property
    def log_index(self) -> int:
        return self.params.log_order - self.log_order

    def is_trivial(self) -> bool:
        return self.top == self.params.k and self.space.dim == 0

    def is_full(self) -> bool:
        return self.top == 0 and self.space.is_full()

    def contains(self, g: Element) -> bool:
        if g.a % self.params.p**self.top:
            return False
        return self.space.contains(theta(Element(0, g.v, g.m), self.params))

    def contains_subgroup(self, other: "NormalSubgroup") -> bool:
        if self.params != other.params:
            raise DimensionMismatchError("subgroups live in different groups")
        return other.top >= self.top and self.space.contains_space(other.space)

    # spec-facing views -------------------------------------------------

    @property
    def base_image(self) -> Subspace:
        """Image of the base part modulo the center (U)."""
        n = self.params.n
        return rref([row[:n] for row in self.space.basis], self.params.p, n)

    @property
    def central_part(self) -> Subspace:
        """The center slice (V): vectors of the space with zero base part."""
        n = self.params.n
        rows = [row[n:] for row in self.space.basis if not any(row[:n])]
        return rref(rows, self.params.p, self.params.zdim)

    def is_split(self) -> bool:
        """True when space = U + V as a block sum, i.e. the standard base
        lifts themselves belong to the subgroup."""
        n = self.params.n
        v = self.central_part
        return all(v.contains(row[n:]) for row in self.space.basis if any(row[:n]))

    # enumeration -------------------------------------------------------

    def elements(self):
        P = self.params
        p, k = P.p, P.k
        step = p**self.top
        for t in range(p ** (k - self.top)):
            a = (t * step) % p**k
            for vec in self.space.vectors():
                el = untheta(vec, P)
                yield Element(a, el.v, el.m)

    def generator_elements(self) -> list[Element]:
        P = self.params
        gens = []
        if self.top < P.k:
            gens.append(gp.power(gp.x(P), P.p**self.top, P))
        gens.extend(untheta(row, P) for row in self.space.basis)
        return gens

    # verification ------------------------------------------------------

    def validate(self) -> None:
        """Check the stored data is an actual subgroup of the claimed
        shape (and normal when flagged).  Raises on violation."""
        P = self.params
        st = structure(P)
        S = self.space
        rows = S.basis
        for r1, r2 in combinations(rows, 2):
            w = st.wedge(r1[: P.n], r2[: P.n])
            if any(w) and not S.contains((0,) * P.n + tuple(w)):
                raise ClosureConsistencyError("space not closed under the bracket")
        conj_maps = []
        if self.normal:
            conj_maps = [st.ax_apply, st.conj_apply(gp.y(P))]
        elif self.top < P.k:
            t_map = st.conj_apply(gp.power(gp.x(P), P.p**self.top, P))
            conj_maps = [t_map]
        for amap in conj_maps:
            for r in rows:
                if not S.contains(amap(r)):
                    raise ClosureConsistencyError("space not conjugation-invariant")
        if self.normal and self.top < P.k:
            t_el = gp.power(gp.x(P), P.p**self.top, P)
            cm = gp.commutator(t_el, gp.y(P), P)
            if not cm.is_identity() and not S.contains(theta(cm, P)):
                raise ClosureConsistencyError("top generator commutator escapes the space")
        if self.normal:
            # base lifts must commute into the center slice
            v = self.central_part
            u_rows = [row[: P.n] for row in rows]
            for u in u_rows:
                if not any(u):
                    continue
                for j in range(P.n):
                    ej = tuple(1 if i == j else 0 for i in range(P.n))
                    w = st.wedge(u, ej)
                    if any(w) and not v.contains(w):
                        raise ClosureConsistencyError("base lift commutator escapes V")

    def describe(self) -> dict:
        return {
            "top": "inf" if self.top >= self.params.k else self.top,
            "dim_base_image": self.base_image.dim,
            "dim_central": self.central_part.dim,
            "log_order": self.log_order,
            "log_index": self.log_index,
        }


# -- canonical subgroups -----------------------------------------------------

def trivial_subgroup(params: GroupParams) -> NormalSubgroup:
    return NormalSubgroup(params, params.k, zero_subspace(params.p, params.dim))


def full_group(params: GroupParams) -> NormalSubgroup:
    rows = [[1 if i == j else 0 for j in range(params.dim)] for i in range(params.dim)]
    return NormalSubgroup(params, 0, rref(rows, params.p, params.dim))


def base_subgroup(params: GroupParams) -> NormalSubgroup:
    """H: the base*center part (everything with trivial top)."""
    rows = [[1 if i == j else 0 for j in range(params.dim)] for i in range(params.dim)]
    return NormalSubgroup(params, params.k, rref(rows, params.p, params.dim))


def center_subgroup(params: GroupParams) -> NormalSubgroup:
    d, n = params.dim, params.n
    rows = [[1 if i == j else 0 for j in range(d)] for i in range(n, d)]
    return NormalSubgroup(params, params.k, rref(rows, params.p, d))


def central_span(vectors, params: GroupParams, *, verify: bool = True) -> NormalSubgroup:
    """Subgroup of the center spanned by the given center vectors (each of
    length zdim), closed under conjugation by x."""
    st = structure(params)
    basis = MutableBasis(params.p, params.dim)
    queue = []
    for w in vectors:
        added = basis.add((0,) * params.n + tuple(w))
        if added:
            queue.append(added)
    while queue:
        r = queue.pop()
        added = basis.add(st.ax_apply(r))
        if added:
            queue.append(added)
    ns = NormalSubgroup(params, params.k, basis.snapshot())
    if verify:
        ns.validate()
    return ns


# -- closures ----------------------------------------------------------------

def _close_space(basis: MutableBasis, queue: list, maps, st: Structure) -> None:
    """Worklist closure of the basis under linear maps and the bracket."""
    n = st.params.n
    while queue:
        r = queue.pop()
        for amap in maps:
            added = basis.add(amap(r))
            if added:
                queue.append(added)
        if any(r[:n]):
            for s in list(basis.rows):
                if any(s[:n]):
                    w = st.wedge(r[:n], s[:n])
                    if any(w):
                        added = basis.add((0,) * n + tuple(w))
                        if added:
                            queue.append(added)


def normal_closure(
    gens,
    params: GroupParams,
    *,
    conjugators=None,
) -> NormalSubgroup:
    """Least subgroup containing gens that is closed under conjugation by
    the given conjugators (default: the group generators x and y, i.e.
    the normal closure in the full group).

    Exact: the fixed point only ever adds certified members, and raises
    ClosureConsistencyError if the closure cannot be written in split
    form (mixed top/base cosets).
    """
    P = params
    st = structure(P)
    p, k = P.p, P.k
    ambient = conjugators is None
    conj_elems = [gp.x(P), gp.y(P)] if ambient else list(conjugators)
    maps = [st.conj_apply(h) for h in conj_elems]

    basis = MutableBasis(p, P.dim)
    queue: list = []

    def add_vec(vec):
        added = basis.add(vec)
        if added:
            queue.append(added)

    def add_elem(el: Element):
        if not el.is_identity():
            add_vec(theta(el, P))

    mixed: list[tuple[Element, int]] = []
    for g in gens:
        if g.is_identity():
            continue
        if g.a == 0:
            add_elem(g)
        else:
            mixed.append((g, _val_p(g.a, p)))
    for g, j in mixed:
        for h in conj_elems:
            add_elem(gp.commutator(g, h, P))
        add_elem(gp.power(g, p ** (k - j), P))
    if mixed:
        # cancel tops pairwise against a minimum-valuation generator:
        # g0^s * g lands in the base part and certifies that, modulo the
        # growing space, every generator is a power of g0
        g0, j0 = min(mixed, key=lambda it: it[1])
        u0 = g0.a // p**j0
        mod0 = p ** (k - j0)
        for g, j in mixed:
            if g is g0:
                continue
            s = (-(g.a // p**j0) * pow(u0, -1, mod0)) % mod0
            add_elem(gp.multiply(gp.power(g0, s, P), g, P))

    mtop = k
    t_mark = k
    while True:
        _close_space(basis, queue, maps, st)
        if mtop < k and t_mark != mtop:
            t_mark = mtop
            t_el = gp.power(gp.x(P), p**mtop, P)
            for h in conj_elems:
                add_elem(gp.commutator(t_el, h, P))
            if queue:
                continue
        progressed = False
        for item in mixed[:]:
            g, j = item
            h_part = Element(0, g.v, g.m)
            if j >= mtop:
                # x^(-a) is already in the closure, so the base part is too
                add_elem(h_part)
                mixed.remove(item)
                progressed = True
            elif basis.contains(theta(h_part, P)):
                # g times the inverse base part puts x^(p^j) in the closure
                mixed.remove(item)
                mtop = j
                progressed = True
        if progressed or queue:
            continue
        break

    if mixed:
        raise ClosureConsistencyError(
            "closure of the given generators needs mixed top/base cosets; "
            "it has no split form"
        )
    return NormalSubgroup(P, mtop, basis.snapshot(), normal=ambient)


def subgroup_generated(
    h_elements,
    params: GroupParams,
    *,
    top: int | None = None,
) -> NormalSubgroup:
    """Subgroup generated by base-part elements and optionally x^(p^top).
    Closed under the internal conjugation only; not normal in general."""
    P = params
    st = structure(P)
    eff_top = P.k if top is None else min(top, P.k)
    basis = MutableBasis(P.p, P.dim)
    queue = []
    for el in h_elements:
        if el.a != 0:
            raise ParameterError("subgroup_generated takes base-part elements only")
        if el.is_identity():
            continue
        added = basis.add(theta(el, P))
        if added:
            queue.append(added)
    maps = []
    if eff_top < P.k:
        maps.append(st.conj_apply(gp.power(gp.x(P), P.p**eff_top, P)))
    _close_space(basis, queue, maps, st)
    return NormalSubgroup(P, eff_top, basis.snapshot(), normal=False)


def product(n1: NormalSubgroup, n2: NormalSubgroup) -> NormalSubgroup:
    """Product subgroup N1 N2 (at least one factor should be normal,
    which holds at every call site)."""
    P = n1.params
    if P != n2.params:
        raise DimensionMismatchError("subgroups live in different groups")
    st = structure(P)
    top = min(n1.top, n2.top)
    basis = MutableBasis(P.p, P.dim)
    queue = []
    for row in list(n1.space.basis) + list(n2.space.basis):
        added = basis.add(row)
        if added:
            queue.append(added)
    maps = []
    if top < P.k:
        maps.append(st.conj_apply(gp.power(gp.x(P), P.p**top, P)))
    if n1.normal and n2.normal:
        maps = [st.ax_apply, st.conj_apply(gp.y(P))]
    _close_space(basis, queue, maps, st)
    return NormalSubgroup(P, top, basis.snapshot(), normal=n1.normal and n2.normal)


def intersect(n1: NormalSubgroup, n2: NormalSubgroup) -> NormalSubgroup:
    P = n1.params
    if P != n2.params:
        raise DimensionMismatchError("subgroups live in different groups")
    return NormalSubgroup(
        P,
        max(n1.top, n2.top),
        n1.space.intersect(n2.space),
        normal=n1.normal and n2.normal,
    )


def commutator_subgroup(
    n1: NormalSubgroup,
    n2: NormalSubgroup,
    *,
    gens1=None,
    gens2=None,
) -> NormalSubgroup:
    """[N1, N2] as the normal closure of pairwise generator commutators.
    Exact for normal inputs with full generating sets."""
    P = n1.params
    g1 = n1.generator_elements() if gens1 is None else list(gens1)
    g2 = n2.generator_elements() if gens2 is None else list(gens2)
    comms = []
    for a in g1:
        for b in g2:
            cm = gp.commutator(a, b, P)
            if not cm.is_identity():
                comms.append(cm)
    return normal_closure(comms, P)


_POWERS_CACHE: dict = {}


def powers_subgroup(
    n1: NormalSubgroup,
    e: int,
    *,
    seed: int = 0,
    exhaustive_log_cap: int = 8,
    sample_size: int = 64,
    confirm_rounds: int = 3,
) -> NormalSubgroup:
    """Subgroup generated by the e-th powers of N (normal when N is).

    When p^(log order of N) is small enough the powers are enumerated
    exhaustively and the result is exact.  Otherwise a deterministic
    slate (top powers times base lifts and their pairwise products) is
    extended by seeded random sampling until the closure is stable for
    the configured number of confirmation rounds.
    """
    P = n1.params
    if e == 1:
        return n1
    key = (P, n1.top, n1.space.basis, e, seed)
    hit = _POWERS_CACHE.get(key)
    if hit is not None:
        return hit

    if n1.log_order <= exhaustive_log_cap:
        gens = []
        seen = set()
        for g in n1.elements():
            w = gp.power(g, e, P)
            f = w.flat()
            if f not in seen:
                seen.add(f)
                gens.append(w)
        out = normal_closure(gens, P)
    else:
        p, k = P.p, P.k
        rng = random.Random(seed * 0x9E3779B1 + e * 101 + n1.top * 7 + n1.space.dim)
        lifts = [untheta(row, P) for row in n1.space.basis]
        slate = [gp.identity(P)] + lifts
        slate += [gp.multiply(a, b, P) for a, b in combinations(lifts, 2)]
        gens = []
        seen = set()

        def push(g: Element):
            w = gp.power(g, e, P)
            f = w.flat()
            if f not in seen:
                seen.add(f)
                gens.append(w)

        step = p**n1.top
        for aa in range(p ** (k - n1.top)):
            t_el = gp.power(gp.x(P), step * aa, P)
            for s in slate:
                push(gp.multiply(t_el, s, P))
        out = normal_closure(gens, P)

        def random_member():
            coeffs = [rng.randrange(p) for _ in range(n1.space.dim)]
            vec = [0] * P.dim
            for cfc, row in zip(coeffs, n1.space.basis):
                if cfc:
                    for i in range(P.dim):
                        vec[i] = (vec[i] + cfc * row[i]) % p
            el = untheta(vec, P)
            a = (step * rng.randrange(p ** (k - n1.top))) % p**k
            return Element(a, el.v, el.m)

        stable = 0
        while stable < confirm_rounds:
            for _ in range(sample_size):
                push(random_member())
            nxt = normal_closure(gens, P)
            if nxt == out:
                stable += 1
            else:
                out = nxt
                stable = 0
    _POWERS_CACHE[key] = out
    return out


def power_subgroup(n1: NormalSubgroup, params: GroupParams, **kw) -> NormalSubgroup:
    """The p-th power subgroup N^p."""
    return powers_subgroup(n1, params.p, **kw)
