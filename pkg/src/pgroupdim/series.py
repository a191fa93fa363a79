"""The five standard filtration series and the lower central series.

All series are computed by their defining recursions (never from the
closed forms, which serve only as checks):

    gamma : G_1 = G,   G_{i+1} = [G_i, G]
    L     : P_1 = G,   P_i = P_{i-1}^p [P_{i-1}, G]
    D     : D_1 = G,   D_i = D_{ceil(i/p)}^p prod_{j<i} [D_j, D_{i-j}]
    P     : pi_i = < g^(p^i) : g in G >
    Pstar : pi*_0 = G, pi*_i = (pi*_{i-1})^p
    F     : F_0 = G,   F_i = F_{i-1}^p [F_{i-1}, F_{i-1}]

Each computed term is validated (normal, split, descending) and the
series runs down to the trivial subgroup, which is included as the
final term; deeper indices read as trivial.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import group as gp
from .errors import ParameterError
from .group import GroupParams
from .subgroups import (
    NormalSubgroup,
    center_subgroup,
    central_span,
    commutator_subgroup,
    full_group,
    intersect,
    powers_subgroup,
    product,
    subgroup_generated,
    trivial_subgroup,
)


class SeriesKind(enum.Enum):
    GAMMA = "gamma"
    L = "L"
    D = "D"
    P = "P"
    PSTAR = "Pstar"
    F = "F"

    @property
    def start_index(self) -> int:
        return 0 if self in (SeriesKind.P, SeriesKind.PSTAR, SeriesKind.F) else 1

    @classmethod
    def parse(cls, name: str) -> "SeriesKind":
        for kind in cls:
            if kind.value.lower() == name.lower():
                return kind
        raise ParameterError(f"unknown series kind {name!r}; expected one of "
                             f"{[k.value for k in cls]}")


@dataclass(frozen=True)
class FiltrationSeries:
    kind: SeriesKind
    params: GroupParams
    terms: tuple[NormalSubgroup, ...]

    @property
    def start_index(self) -> int:
        return self.kind.start_index

    def __len__(self) -> int:
        return len(self.terms)

    def term(self, i: int) -> NormalSubgroup:
        """Term S_i; indices beyond the computed tail read as trivial."""
        if i < self.start_index:
            raise ParameterError(f"series {self.kind.value} starts at {self.start_index}")
        pos = i - self.start_index
        if pos < len(self.terms):
            return self.terms[pos]
        return trivial_subgroup(self.params)

    def levels(self):
        for pos, term in enumerate(self.terms):
            yield self.start_index + pos, term

    def proper_levels(self):
        """Levels with S_i a proper subgroup (used by density profiles)."""
        for i, term in self.levels():
            if not term.is_full():
                yield i, term


_MAX_LEN_FACTOR = 4  # safety bound: every series dies well before 4n levels


def _run(params: GroupParams, first: NormalSubgroup, step) -> tuple[NormalSubgroup, ...]:
    terms = [first]
    while not terms[-1].is_trivial():
        nxt = step(terms)
        nxt.validate()
        if not terms[-1].contains_subgroup(nxt):
            raise ParameterError("series recursion produced a non-descending term")
        if nxt == terms[-1]:
            raise ParameterError("series recursion stalled above the trivial group")
        terms.append(nxt)
        if len(terms) > _MAX_LEN_FACTOR * params.n + 4:
            raise ParameterError("series failed to reach the trivial group")
    return tuple(terms)


@lru_cache(maxsize=None)
def series(kind: SeriesKind, params: GroupParams, seed: int = 0) -> FiltrationSeries:
    G = full_group(params)
    xy = [gp.x(params), gp.y(params)]
    p = params.p

    if kind is SeriesKind.GAMMA:
        def step(terms):
            return commutator_subgroup(terms[-1], G, gens2=xy)
    elif kind is SeriesKind.L:
        def step(terms):
            prev = terms[-1]
            return product(
                powers_subgroup(prev, p, seed=seed),
                commutator_subgroup(prev, G, gens2=xy),
            )
    elif kind is SeriesKind.D:
        def step(terms):
            i = len(terms) + 1
            acc = powers_subgroup(terms[(i + p - 1) // p - 1], p, seed=seed)
            for j in range(1, i // 2 + 1):
                acc = product(acc, commutator_subgroup(terms[j - 1], terms[i - j - 1]))
            return acc
    elif kind is SeriesKind.P:
        def step(terms):
            return powers_subgroup(G, p ** len(terms), seed=seed)
    elif kind is SeriesKind.PSTAR:
        def step(terms):
            return powers_subgroup(terms[-1], p, seed=seed)
    elif kind is SeriesKind.F:
        def step(terms):
            prev = terms[-1]
            return product(
                powers_subgroup(prev, p, seed=seed),
                commutator_subgroup(prev, prev),
            )
    else:  # pragma: no cover
        raise ParameterError(f"unhandled series kind {kind}")

    return FiltrationSeries(kind, params, _run(params, G, step))


def gamma_term(i: int, params: GroupParams) -> NormalSubgroup:
    return series(SeriesKind.GAMMA, params).term(i)


def nilpotency_class(params: GroupParams) -> int:
    return len(series(SeriesKind.GAMMA, params).terms) - 1


# -- closed forms used as checks -------------------------------------------

def expected_gamma_rank(i: int, params: GroupParams) -> int:
    """Rank of the i-th lower central quotient from the case split on
    parity and position relative to n = p^k."""
    n = params.n
    if i == 1:
        return params.k + 1
    if 2 <= i <= n:
        return i // 2 if i % 2 == 0 else (i + 1) // 2
    if n < i <= 2 * n - 1:
        return (2 * n - i) // 2 if i % 2 == 0 else (2 * n - i + 1) // 2
    return 0


def gamma_rank_report(params: GroupParams) -> list[dict]:
    """Per-level ranks of the lower central series against the closed
    forms; the final row checks the rank sum against the group order."""
    gam = series(SeriesKind.GAMMA, params)
    rows = []
    total = 0
    for i, term in gam.levels():
        if term.is_trivial():
            break
        nxt = gam.term(i + 1)
        rank = term.log_order - nxt.log_order
        total += rank
        rows.append(
            {
                "index": i,
                "computed": rank,
                "expected": expected_gamma_rank(i, params),
                "pass": rank == expected_gamma_rank(i, params),
            }
        )
    rows.append(
        {
            "index": "sum",
            "computed": total,
            "expected": params.log_order,
            "pass": total == params.log_order,
        }
    )
    rows.append(
        {
            "index": "class",
            "computed": nilpotency_class(params),
            "expected": 2 * params.n - 1,
            "pass": nilpotency_class(params) == 2 * params.n - 1,
        }
    )
    return rows


def closed_form_term(kind: SeriesKind, i: int, params: GroupParams) -> NormalSubgroup:
    """The predicted shape <x^(p^e)> gamma_i with e = i-1 for the L
    series and e = ceil(log_p i) for the D series."""
    if kind is SeriesKind.L:
        e = i - 1
    elif kind is SeriesKind.D:
        e = _ceil_log(params.p, i)
    else:
        raise ParameterError(f"no closed form registered for {kind.value}")
    top = min(e, params.k)
    xpart = subgroup_generated([], params, top=top)
    return product(xpart, gamma_term(i, params))


def _ceil_log(p: int, i: int) -> int:
    e = 0
    v = 1
    while v < i:
        v *= p
        e += 1
    return e


def closed_form_report(kind: SeriesKind, params: GroupParams) -> list[dict]:
    ser = series(kind, params)
    rows = []
    for i, term in ser.levels():
        expect = closed_form_term(kind, i, params)
        rows.append(
            {
                "index": i,
                "computed": term.describe(),
                "expected": expect.describe(),
                "pass": term == expect,
            }
        )
        if term.is_trivial():
            break
    return rows


# -- the center against the lower central series ----------------------------

def gamma_cap_center(i: int, params: GroupParams, *, verify: bool = False) -> NormalSubgroup:
    """The span of the central generators [c_a, c_b] with b < a and
    a + b >= i.  With verify=True, checked against the independently
    computed intersection of gamma_i with the center."""
    if i < 2:
        raise ParameterError(f"index must be >= 2, got {i}")
    n = params.n
    vectors = []
    for a in range(2, n + 1):
        for bb in range(1, a):
            if a + bb >= i:
                z = gp.zgen(a, bb, params)
                if not z.is_identity():
                    vectors.append(z.m)
    out = central_span(vectors, params)
    if verify:
        direct = intersect(gamma_term(i, params), center_subgroup(params))
        if out != direct:
            raise ParameterError(
                f"central generator span disagrees with gamma_{i} cap Z"
            )
    return out


def center_index_formula(i: int) -> int:
    """Predicted log index of gamma_i cap Z in Z: (i^2-4i+3)/4 for odd i,
    (i^2-4i+4)/4 for even i (nonnegative from i = 2 on)."""
    if i % 2:
        return (i * i - 4 * i + 3) // 4
    return (i * i - 4 * i + 4) // 4


def center_index_report(params: GroupParams) -> list[dict]:
    """Log indices of gamma_i cap Z in Z against the quadratic formula.

    The formula describes the limit group; in the finite group it holds
    until the bounded generator indices bite (observed: up to n + 2).
    The report carries the per-level agreement and the validated range.
    """
    Z = center_subgroup(params)
    gam = series(SeriesKind.GAMMA, params)
    rows = []
    valid_until = 1
    contiguous = True
    last = 2 * params.n
    for i in range(2, last + 1):
        cap = intersect(gam.term(i), Z)
        via_z = gamma_cap_center(i, params)
        idx = Z.log_order - cap.log_order
        formula = center_index_formula(i)
        match = idx == formula
        if contiguous and match:
            valid_until = i
        elif contiguous and not match:
            contiguous = False
        rows.append(
            {
                "index": i,
                "computed": idx,
                "expected": formula,
                "pass": match,
                "zspan_equal": cap == via_z,
            }
        )
    rows.append(
        {
            "index": "validated_range",
            "computed": f"2..{valid_until}",
            "expected": f"2..{params.n + 2}",
            "pass": valid_until >= params.n + 2,
        }
    )
    return rows


# -- sandwich bounds ---------------------------------------------------------

def repunit(p: int, i: int) -> int:
    """(p^i - 1) / (p - 1)."""
    return (p**i - 1) // (p - 1)


def frattini_bracket(i: int, params: GroupParams) -> tuple[NormalSubgroup, NormalSubgroup]:
    """Lower and upper companions of the i-th Frattini term: the cyclic
    top power with the tail of the c_j chain, widened by a slice of the
    center pinned between two lower-central depths."""
    p = params.p
    j0 = 1 + repunit(p, i)
    c_elements = []
    for j in range(j0, 2 * params.n + 1):
        cj = gp.c(j, params)
        if not cj.is_identity():
            c_elements.append(cj)
    core = subgroup_generated(c_elements, params, top=min(i, params.k))
    lo_depth = 1 + 2 * repunit(p, i - 1) + p ** (i - 1)
    hi_depth = 2 + 2 * repunit(p, i - 1)
    Z = center_subgroup(params)
    gam = series(SeriesKind.GAMMA, params)

    def central_slice(depth: int) -> NormalSubgroup:
        if depth > 2 * params.n:
            return trivial_subgroup(params)
        return intersect(gam.term(depth), Z)

    lower = product(core, central_slice(lo_depth))
    upper = product(core, central_slice(hi_depth))
    return lower, upper


def frattini_sandwich_report(params: GroupParams) -> list[dict]:
    ser = series(SeriesKind.F, params)
    rows = []
    for i, term in ser.levels():
        if i == 0:
            continue
        lower, upper = frattini_bracket(i, params)
        holds_lo = term.contains_subgroup(lower)
        holds_hi = upper.contains_subgroup(term)
        rows.append(
            {
                "index": i,
                "computed": f"lower={holds_lo},upper={holds_hi}",
                "expected": "lower=True,upper=True",
                "pass": holds_lo and holds_hi,
            }
        )
        if term.is_trivial():
            break
    return rows


def power_sandwich_report(params: GroupParams, i_values=(0, 1, 2)) -> list[dict]:
    """gamma_{2p^i} <= G^(p^i) <= iterated-p-power term <= <x^(p^i)> gamma_{p^i}."""
    gam = series(SeriesKind.GAMMA, params)
    pser = series(SeriesKind.P, params)
    pstar = series(SeriesKind.PSTAR, params)
    rows = []
    for i in i_values:
        q = params.p**i
        pi_i = pser.term(i)
        pistar_i = pstar.term(i)
        upper = product(
            subgroup_generated([], params, top=min(i, params.k)),
            gam.term(min(q, 2 * params.n)),
        )
        ok = (
            pi_i.contains_subgroup(gam.term(min(2 * q, 2 * params.n)))
            and pistar_i.contains_subgroup(pi_i)
            and upper.contains_subgroup(pistar_i)
        )
        rows.append(
            {
                "index": i,
                "computed": ok,
                "expected": True,
                "pass": ok,
            }
        )
    return rows


def wreath_quotient_report(params: GroupParams) -> list[dict]:
    """Lower central ranks of the quotient by the center: expected
    (k+1, 1, ..., 1) with length n."""
    Z = center_subgroup(params)
    gam = series(SeriesKind.GAMMA, params)
    rows = []
    prev = product(gam.term(1), Z)
    i = 1
    while True:
        nxt = product(gam.term(i + 1), Z)
        rank = prev.log_order - nxt.log_order
        expected = (params.k + 1) if i == 1 else (1 if i <= params.n else 0)
        rows.append({"index": i, "computed": rank, "expected": expected,
                     "pass": rank == expected})
        if nxt == Z:
            break
        prev = nxt
        i += 1
    rows.append(
        {
            "index": "class",
            "computed": i,
            "expected": params.n,
            "pass": i == params.n,
        }
    )
    return rows
