"""Normal-form arithmetic in the ambient group.

The group is the semidirect product of a cyclic top group <x> of order
p^k acting on the free class-2 exponent-p group on base generators
b_0, ..., b_{n-1} (n = p^k), the action shifting indices cyclically.
Every element has the unique normal form

    x^a * prod_i b_i^{v_i} * prod_{s<t} [b_s, b_t]^{M_st}

with base factors in increasing index order and center factors in
lexicographic pair order; two elements are equal iff the triples
(a, v, M) agree.  y is b_0 and the group is generated by {x, y}.

Commutators are written [g, h] = g^-1 h^-1 g h and iterated commutators
left-normed.  The derived elements c_i (iterated commutators of y by x)
and their pairwise commutators carry the whole structure theory; they
are exposed here as constructors.

For subgroup work the base*center part also has exact logarithm
coordinates (theta/untheta below): products become vector addition plus
a half-wedge correction and conjugation by x becomes a linear map.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

from . import kernels
from .errors import ParameterError
from .linalg import check_odd_prime


@dataclass(frozen=True)
class GroupParams:
    """The pair (p, k) fixing the ambient group."""

    p: int
    k: int

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.k < 1:
            raise ParameterError(f"k must be >= 1, got {self.k}")

    @property
    def n(self) -> int:
        """Base rank p^k."""
        return self.p**self.k

    @property
    def zdim(self) -> int:
        """Dimension of the center, n choose 2."""
        n = self.n
        return n * (n - 1) // 2

    @property
    def dim(self) -> int:
        """n + zdim, the F_p-dimension of the base*center part."""
        return self.n + self.zdim

    @property
    def log_order(self) -> int:
        return self.k + self.dim

    @property
    def order(self) -> int:
        return self.p**self.log_order

    @property
    def half(self) -> int:
        """Inverse of 2 mod p (p is odd)."""
        return (self.p + 1) // 2

    def pair_index(self, s: int, t: int) -> int:
        n = self.n
        return s * n - s * (s + 1) // 2 + (t - s - 1)

    def pairs(self):
        n = self.n
        for s in range(n):
            for t in range(s + 1, n):
                yield (s, t)


@lru_cache(maxsize=None)
def _ctx(params: GroupParams):
    return kernels.make_ctx(params.p, params.k)


@dataclass(frozen=True)
class Element:
    """Normal-form triple.  a is the x-exponent mod p^k, v the base
    exponent vector, m the flattened strict upper triangle of center
    exponents."""

    a: int
    v: tuple[int, ...]
    m: tuple[int, ...]

    def flat(self) -> tuple[int, ...]:
        return (self.a,) + self.v + self.m

    def is_identity(self) -> bool:
        return self.a == 0 and not any(self.v) and not any(self.m)

    def is_central(self) -> bool:
        return self.a == 0 and not any(self.v)

    def in_base_part(self) -> bool:
        """True when the element lies in the base*center subgroup."""
        return self.a == 0


def _from_flat(t, params: GroupParams) -> Element:
    n = params.n
    return Element(t[0], tuple(t[1 : 1 + n]), tuple(t[1 + n :]))


def validate_element(g: Element, params: GroupParams) -> None:
    p, pk = params.p, params.n
    if not (0 <= g.a < params.p**params.k):
        raise ParameterError(f"top exponent {g.a} out of range for p^k={pk}")
    if len(g.v) != params.n or len(g.m) != params.zdim:
        raise ParameterError(
            f"element shape ({len(g.v)}, {len(g.m)}) does not match params "
            f"({params.n}, {params.zdim})"
        )
    if any(not 0 <= x < p for x in g.v) or any(not 0 <= x < p for x in g.m):
        raise ParameterError("element entries must be residues 0..p-1")


def identity(params: GroupParams) -> Element:
    return Element(0, (0,) * params.n, (0,) * params.zdim)


def x(params: GroupParams) -> Element:
    return Element(1, (0,) * params.n, (0,) * params.zdim)


def b(i: int, params: GroupParams) -> Element:
    if not 0 <= i < params.n:
        raise ParameterError(f"base index {i} out of range")
    return Element(0, tuple(1 if j == i else 0 for j in range(params.n)), (0,) * params.zdim)


def y(params: GroupParams) -> Element:
    return b(0, params)


def central(mvec, params: GroupParams) -> Element:
    return Element(0, (0,) * params.n, tuple(x % params.p for x in mvec))


def multiply(g: Element, h: Element, params: GroupParams) -> Element:
    return _from_flat(kernels.mul(g.flat(), h.flat(), _ctx(params)), params)


def inverse(g: Element, params: GroupParams) -> Element:
    return _from_flat(kernels.inv(g.flat(), _ctx(params)), params)


def power(g: Element, e: int, params: GroupParams) -> Element:
    return _from_flat(kernels.power(g.flat(), e, _ctx(params)), params)


def conjugate(g: Element, h: Element, params: GroupParams) -> Element:
    """g^h = h^-1 g h."""
    ctx = _ctx(params)
    hf = h.flat()
    return _from_flat(
        kernels.mul(kernels.mul(kernels.inv(hf, ctx), g.flat(), ctx), hf, ctx), params
    )


def conjugate_by_x_power(g: Element, beta: int, params: GroupParams) -> Element:
    """g^(x^beta), via the shift automorphism (no general products)."""
    return _from_flat(kernels.conj_x_pow(g.flat(), beta, _ctx(params)), params)


def commutator(g: Element, h: Element, params: GroupParams) -> Element:
    ctx = _ctx(params)
    gf, hf = g.flat(), h.flat()
    left = kernels.mul(kernels.inv(gf, ctx), kernels.inv(hf, ctx), ctx)
    return _from_flat(kernels.mul(left, kernels.mul(gf, hf, ctx), ctx), params)


def left_normed(entries, params: GroupParams) -> Element:
    """Left-normed iterated commutator [g1, g2, g3, ...]."""
    seq = list(entries)
    if not seq:
        raise ParameterError("left_normed needs at least one entry")
    return reduce(lambda acc, g: commutator(acc, g, params), seq[1:], seq[0])


# -- named elements -------------------------------------------------------

@lru_cache(maxsize=None)
def _c_cached(i: int, params: GroupParams) -> Element:
    if i == 1:
        return y(params)
    return commutator(_c_cached(i - 1, params), x(params), params)


def c(i: int, params: GroupParams) -> Element:
    """c_1 = y, c_i = [c_{i-1}, x]: the iterated commutators of y by x."""
    if i < 1:
        raise ParameterError(f"c index must be >= 1, got {i}")
    return _c_cached(i, params)


@lru_cache(maxsize=None)
def _c2_cached(i: int, j: int, params: GroupParams) -> Element:
    if j == 1:
        return commutator(c(i, params), y(params), params)
    return commutator(_c2_cached(i, j - 1, params), x(params), params)


def c2(i: int, j: int, params: GroupParams) -> Element:
    """c_{i,1} = [c_i, y], c_{i,j} = [c_{i,j-1}, x]."""
    if i < 1 or j < 1:
        raise ParameterError(f"c2 indices must be >= 1, got ({i}, {j})")
    return _c2_cached(i, j, params)


def zgen(i: int, j: int, params: GroupParams) -> Element:
    """The central generator [c_i, c_j] for i > j >= 1, identity in every
    degenerate case (i <= j, or indices deep enough that the commutator
    collapses on its own)."""
    if i < 1 or j < 1:
        raise ParameterError(f"z indices must be >= 1, got ({i}, {j})")
    if i <= j:
        return identity(params)
    return commutator(c(i, params), c(j, params), params)


def z_pair(i: int, j: int, params: GroupParams) -> Element:
    """[c_i, c_j] for arbitrary positive indices, no degeneracy shortcut.
    Used by the identity verifiers, where terms with i <= j occur with
    their honest values."""
    if i < 1 or j < 1:
        raise ParameterError(f"z indices must be >= 1, got ({i}, {j})")
    return commutator(c(i, params), c(j, params), params)


# -- words over the generators --------------------------------------------

WORD_TOKENS = {"x": ("x", 1), "X": ("x", -1), "y": ("y", 1), "Y": ("y", -1)}


def evaluate_word(word, params: GroupParams) -> Element:
    """Evaluate a word over {x, x^-1, y, y^-1}.

    Accepts a compact string over the alphabet 'xXyY' (capital means
    inverse) or any iterable of those one-character tokens.  Evaluation
    is homomorphic: concatenation of words multiplies their values.
    """
    gens = {
        "x": x(params),
        "X": inverse(x(params), params),
        "y": y(params),
        "Y": inverse(y(params), params),
    }
    acc = identity(params)
    for tok in word:
        if tok not in gens:
            raise ParameterError(f"unknown word token {tok!r}; expected one of x X y Y")
        acc = multiply(acc, gens[tok], params)
    return acc


# -- logarithm coordinates -------------------------------------------------

def theta(g: Element, params: GroupParams) -> tuple[int, ...]:
    """Exact log coordinates of an element of the base*center part.

    Sends the normal form (v, M) to (v, M + half * v_s v_t).  Under this
    map products become addition plus a half-wedge of the v-parts,
    inverses become negation, and conjugation by x becomes the linear
    map that shifts v-indices and pair-shifts the center block with a
    sign flip on wrapped pairs.  Requires a = 0.
    """
    if g.a != 0:
        raise ParameterError("theta is defined on the base*center part only (a = 0)")
    p, half = params.p, params.half
    L = list(g.m)
    q = 0
    v = g.v
    for s in range(params.n):
        vs = v[s]
        for t in range(s + 1, params.n):
            if vs and v[t]:
                L[q] = (L[q] + half * vs * v[t]) % p
            q += 1
    return v + tuple(L)


def untheta(vec, params: GroupParams) -> Element:
    p, half, n = params.p, params.half, params.n
    v = tuple(x % p for x in vec[:n])
    L = [x % p for x in vec[n:]]
    q = 0
    for s in range(n):
        vs = v[s]
        for t in range(s + 1, n):
            if vs and v[t]:
                L[q] = (L[q] - half * vs * v[t]) % p
            q += 1
    return Element(0, v, tuple(L))


# -- serialization ---------------------------------------------------------

def element_to_dict(g: Element) -> dict:
    return {"a": g.a, "v": list(g.v), "m": list(g.m)}


def element_from_dict(d: dict, params: GroupParams) -> Element:
    try:
        g = Element(int(d["a"]), tuple(int(t) for t in d["v"]), tuple(int(t) for t in d["m"]))
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed element payload: {exc}") from exc
    validate_element(g, params)
    return g
