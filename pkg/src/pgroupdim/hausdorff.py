"""Logarithmic density profiles along filtration series.

A finite group has no limits to take: the profile records the exact
rational quotients

    q_i = log_p |H S_i : S_i| / log_p |G : S_i|

for every level with S_i proper, and the cross-parameter reports track
how the final quotients move with k.  Everything is a Fraction; floats
appear only when rendering.

dial_density constructs a normal subgroup of the center whose final
density hits a requested target.  It walks the central layers from the
deepest one upward, adding normal closures of single generators, so
each step grows the subgroup by one dimension and the achieved density
lands within half a reciprocal of the full central dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import group as gp
from .errors import ParameterError
from .group import Element, GroupParams
from .linalg import MutableBasis
from .series import FiltrationSeries, SeriesKind, series
from .subgroups import (
    NormalSubgroup,
    center_subgroup,
    intersect,
    normal_closure,
    product,
    structure,
    trivial_subgroup,
)


@dataclass(frozen=True)
class DimensionProfile:
    kind: SeriesKind
    params: GroupParams
    subgroup: dict
    levels: tuple[int, ...]
    quotients: tuple[Fraction, ...]

    @property
    def final(self) -> Fraction:
        return self.quotients[-1]

    def rows(self) -> list[dict]:
        out = []
        for i, q in zip(self.levels, self.quotients):
            out.append(
                {
                    "kind": self.kind.value,
                    "p": self.params.p,
                    "k": self.params.k,
                    "index": i,
                    "numerator": q.numerator,
                    "denominator": q.denominator,
                    "quotient": str(q),
                    "decimal": float(q),
                }
            )
        return out


def profile(H: NormalSubgroup, S: FiltrationSeries) -> DimensionProfile:
    """Exact density quotients of H along S, one per proper level."""
    P = S.params
    if H.params != P:
        raise ParameterError("subgroup and series parameters differ")
    levels = []
    quots = []
    total = P.log_order
    for i, term in S.proper_levels():
        hs = product(H, term)
        num = hs.log_order - term.log_order
        den = total - term.log_order
        levels.append(i)
        quots.append(Fraction(num, den))
    return DimensionProfile(S.kind, P, H.describe(), tuple(levels), tuple(quots))


def center_levels(S: FiltrationSeries) -> list[tuple[int, NormalSubgroup]]:
    """The series restricted to the center: (i, S_i cap Z) for each level."""
    Z = center_subgroup(S.params)
    return [(i, intersect(term, Z)) for i, term in S.levels()]


def growth_bound_report(z: Element, S: FiltrationSeries) -> list[dict]:
    """Growth of the normal closure of a central element along the series
    restricted to the center, against the nilpotency-depth bound.

    At each level: growth = log |<z>^G Y_i : Y_i| where Y_i = S_i cap Z,
    and the bound is n_i = least n with gamma_{n+1} cap Z <= Y_i (the
    central quotients all have exponent p, so the exponent factor is 1).
    """
    P = S.params
    if not z.is_central():
        raise ParameterError("growth bound needs a central element")
    Z = center_subgroup(P)
    gam = series(SeriesKind.GAMMA, P)
    caps = []
    for nn in range(1, 2 * P.n + 1):
        caps.append(intersect(gam.term(nn + 1), Z))
    cz = normal_closure([z], P) if not z.is_identity() else trivial_subgroup(P)
    rows = []
    for i, yi in center_levels(S):
        growth = product(cz, yi).log_order - yi.log_order
        n_i = next(
            nn for nn in range(1, 2 * P.n + 1) if yi.contains_subgroup(caps[nn - 1])
        )
        rows.append(
            {
                "index": i,
                "computed": growth,
                "expected": f"<= {n_i}",
                "bound": n_i,
                "pass": growth <= n_i,
            }
        )
    return rows


@dataclass(frozen=True)
class DialPlan:
    target: Fraction
    kind: SeriesKind
    params: GroupParams
    chosen: tuple[dict, ...]
    achieved: Fraction
    subgroup: NormalSubgroup

    def to_dict(self) -> dict:
        return {
            "target": str(self.target),
            "kind": self.kind.value,
            "p": self.params.p,
            "k": self.params.k,
            "chosen": list(self.chosen),
            "achieved": str(self.achieved),
            "achieved_decimal": float(self.achieved),
            "subgroup": self.subgroup.describe(),
        }


def _central_generator_ladder(params: GroupParams):
    """Central generators [c_a, c_b] grouped by depth a+b, deepest first.
    Conjugation by x moves each one into strictly deeper spans, so a
    deep-first walk adds one dimension at a time."""
    n = params.n
    ladder = []
    for depth in range(2 * n - 1, 2, -1):
        layer = []
        for a in range(2, n + 1):
            b = depth - a
            if 1 <= b < a:
                z = gp.zgen(a, b, params)
                if not z.is_identity():
                    layer.append(((a, b), z))
        if layer:
            ladder.append((depth, layer))
    return ladder


def dial_density(eta, S: FiltrationSeries, depth: int | None = None) -> DialPlan:
    """Normal subgroup of the center whose density along S hits eta.

    eta may be a Fraction, an int, or a string like "1/2".  The walk
    adds normal closures of single central generators, deepest layers
    first, until the exact integer target for the final quotient is
    reached; granularity is one dimension per step.
    """
    eta = Fraction(eta)
    if not 0 <= eta <= 1:
        raise ParameterError(f"target density must be in [0, 1], got {eta}")
    P = S.params
    st = structure(P)
    zlv = center_levels(S)
    if depth is not None:
        if not 0 <= depth < len(zlv):
            raise ParameterError(f"depth {depth} out of range for series of length {len(zlv)}")
        zlv = zlv[: depth + 1]
    deepest = zlv[-1][1]
    Z = center_subgroup(P)
    den = Z.log_order - deepest.log_order
    if den == 0:
        raise ParameterError("series restricted to the center is still full at this depth")
    target_num = round(eta * den)

    basis = MutableBasis(P.p, P.dim)
    chosen = []

    def current_num() -> int:
        joined = MutableBasis(P.p, P.dim)
        for row in deepest.space.basis:
            joined.add(row)
        for row in basis.rows:
            joined.add(row)
        return joined.dim - deepest.space.dim

    num = 0
    for depth_level, layer in _central_generator_ladder(P):
        for (a, b), z in layer:
            if num >= target_num:
                break
            vec = (0,) * P.n + z.m
            added = basis.add(vec)
            if added is None:
                continue
            # normal closure repair: conjugates land in deeper layers,
            # already present or added now
            queue = [added]
            while queue:
                r = queue.pop()
                more = basis.add(st.ax_apply(r))
                if more:
                    queue.append(more)
            new_num = current_num()
            chosen.append(
                {
                    "depth": depth_level,
                    "generator": [a, b],
                    "gained": new_num - num,
                }
            )
            num = new_num
        if num >= target_num:
            break

    H = NormalSubgroup(P, P.k, basis.snapshot())
    H.validate()
    achieved = Fraction(current_num(), den)
    return DialPlan(eta, S.kind, P, tuple(chosen), achieved, H)


def center_density_report(kind: SeriesKind, ks, p: int = 3) -> list[dict]:
    """Final density of the center per k, against the closed-form value
    zdim / (k + n + zdim), plus the vanishing depth ratio that drives
    the full-interval argument in the limit."""
    rows = []
    prev = None
    prev_ratio = None
    for k in ks:
        P = GroupParams(p, k)
        S = series(kind, P)
        Z = center_subgroup(P)
        prof = profile(Z, S)
        expected = Fraction(P.zdim, P.log_order)
        deep = 2 * P.n - 1
        gam = series(SeriesKind.GAMMA, P)
        cap = intersect(gam.term(deep), Z)
        ratio = Fraction(2 * deep, Z.log_order - cap.log_order)
        ok = prof.final == expected and (prev is None or prof.final > prev)
        ok = ok and (prev_ratio is None or ratio < prev_ratio)
        rows.append(
            {
                "index": k,
                "computed": str(prof.final),
                "expected": str(expected),
                "depth_ratio": str(ratio),
                "pass": ok,
            }
        )
        prev = prof.final
        prev_ratio = ratio
    return rows
