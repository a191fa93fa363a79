"""Exhaustive reference group at p = 3, k = 1.

The 2187 elements are enumerated outright and every question is
answered from the full multiplication table, so this module referees
the split-form engine without sharing its subgroup machinery.  The
table itself is built by an independent vectorized routine and then
cross-checked three ways: against the scalar kernels on random pairs,
against the defining relations, and for associativity via Light's test
(associativity on a generating set implies associativity everywhere,
and the table is closed from {x, y} by construction).

Elements are packed into indices by mixed radix over the seven digit
positions (a, v0, v1, v2, m01, m02, m12); index 0 is the identity.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import OracleError, ParameterError
from .group import Element, GroupParams
from .subgroups import NormalSubgroup

_P, _K = 3, 1
_N = 3
_ZD = 3
_SIZE = 3**7
_POS = 1 + _N + _ZD


class OracleGroup:
    """Element table plus multiplication memo for the smallest group."""

    def __init__(self):
        params = GroupParams(_P, _K)
        self.params = params
        self.ctx = kernels.make_ctx(_P, _K)

        closed = self._closure_from_generators()
        if len(closed) != _SIZE:
            raise OracleError(
                f"closure of the generators has {len(closed)} elements, expected {_SIZE}"
            )
        self.closure_size = len(closed)

        digits = self._all_digits()
        if {self._pack_digits(d) for d in closed} != set(range(_SIZE)):
            raise OracleError("closure does not exhaust the normal-form space")

        self.table = self._build_table(digits)
        eye = self.table[0]
        if not np.array_equal(eye, np.arange(_SIZE)):
            raise OracleError("index 0 does not act as identity")
        inv = np.full(_SIZE, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.table == 0)
        inv[rows] = cols
        if np.any(inv < 0):
            raise OracleError("some element has no right inverse")
        self.inverse = inv
        self._spot_check()
        self._relation_check()

    # -- construction -----------------------------------------------------

    def _closure_from_generators(self):
        gx = self.xi_flat = (1, 0, 0, 0, 0, 0, 0)
        gy = self.yi_flat = (0, 1, 0, 0, 0, 0, 0)
        seen = {kernels.identity(self.ctx), gx, gy}
        frontier = [gx, gy]
        while frontier:
            new = []
            for g in frontier:
                for h in (gx, gy):
                    w = kernels.mul(g, h, self.ctx)
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
            frontier = new
        return seen

    @staticmethod
    def _all_digits():
        idx = np.arange(_SIZE)
        out = np.empty((_SIZE, _POS), dtype=np.int64)
        rem = idx
        for pos in range(_POS):
            out[:, pos] = rem % 3
            rem = rem // 3
        return out

    @staticmethod
    def _pack_digits(flat) -> int:
        acc = 0
        for pos in reversed(range(_POS)):
            acc = acc * 3 + flat[pos]
        return acc

    def pack(self, g: Element) -> int:
        return self._pack_digits(g.flat())

    def unpack(self, idx: int) -> Element:
        digs = []
        rem = int(idx)
        for _ in range(_POS):
            digs.append(rem % 3)
            rem //= 3
        return Element(digs[0], tuple(digs[1:4]), tuple(digs[4:7]))

    def _build_table(self, digits):
        """Vectorized product over all pairs, one row (left factor) at a
        time, grouping right factors by their top digit."""
        A = digits[:, 0]
        V = digits[:, 1:4]
        M = digits[:, 4:7]
        radix = 3 ** np.arange(_POS, dtype=np.int64)
        table = np.empty((_SIZE, _SIZE), dtype=np.int32)
        pidx = {(0, 1): 0, (0, 2): 1, (1, 2): 2}
        masks = [np.nonzero(A == beta)[0] for beta in range(3)]
        for g in range(_SIZE):
            ga, gv, gm = int(A[g]), V[g], M[g]
            for beta in range(3):
                cols = masks[beta]
                # conjugate (gv, gm) by the shift applied beta times
                cv = np.roll(gv, beta)
                cm = np.zeros(3, dtype=np.int64)
                for (s, t), q in pidx.items():
                    s2, t2 = (s + beta) % 3, (t + beta) % 3
                    if s2 < t2:
                        cm[pidx[(s2, t2)]] += gm[q]
                    else:
                        cm[pidx[(t2, s2)]] -= gm[q]
                for cc in range(beta):
                    for aa in range(beta, 3):
                        cm[pidx[(cc, aa)]] -= gv[aa - beta] * gv[cc + 3 - beta]
                cm %= 3
                # compose with every right factor whose top digit is beta
                hv = V[cols]
                hm = M[cols]
                vv = (cv[None, :] + hv) % 3
                corr = np.stack(
                    [
                        cv[1] * hv[:, 0],
                        cv[2] * hv[:, 0],
                        cv[2] * hv[:, 1],
                    ],
                    axis=1,
                )
                mm = (cm[None, :] + hm - corr) % 3
                aa_out = np.full(len(cols), (ga + beta) % 3, dtype=np.int64)
                packed = (
                    aa_out * radix[0]
                    + vv[:, 0] * radix[1]
                    + vv[:, 1] * radix[2]
                    + vv[:, 2] * radix[3]
                    + mm[:, 0] * radix[4]
                    + mm[:, 1] * radix[5]
                    + mm[:, 2] * radix[6]
                )
                table[g, cols] = packed
        return table

    # -- sanity -----------------------------------------------------------

    def _spot_check(self, trials: int = 4000):
        rng = random.Random(20)
        for _ in range(trials):
            g, h = rng.randrange(_SIZE), rng.randrange(_SIZE)
            viaker = kernels.mul(self.unpack(g).flat(), self.unpack(h).flat(), self.ctx)
            if self._pack_digits(viaker) != int(self.table[g, h]):
                raise OracleError(f"table disagrees with scalar kernels at ({g}, {h})")

    def _relation_check(self):
        xi = self.pack(Element(1, (0, 0, 0), (0, 0, 0)))
        yi = self.pack(Element(0, (1, 0, 0), (0, 0, 0)))
        self.x_idx, self.y_idx = xi, yi
        if self.power_index(xi, 3) != 0 or self.power_index(yi, 3) != 0:
            raise OracleError("generator orders are wrong")
        if not self.light_associativity((xi, yi)):
            raise OracleError("Light's associativity test failed")
        # the centralizer of the base subgroup is the distinguished
        # 27-element central block; the center of the whole group is the
        # shift-invariant line inside it
        if len(self.base_centralizer()) != 27:
            raise OracleError("base centralizer has the wrong size")
        if len(self.center()) != 3:
            raise OracleError("center has the wrong size")

    def light_associativity(self, gen_idxs) -> bool:
        """(a s) u == a (s u) for every a, u and s in a generating set of
        the closed table; this is exhaustive associativity."""
        T = self.table
        rows = np.arange(_SIZE)[:, None]
        for s in gen_idxs:
            left = T[T[:, s], :]
            right = T[rows, T[s, :][None, :]]
            if not np.array_equal(left, right):
                return False
        return True

    # -- table operations ---------------------------------------------------

    def mul_index(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def power_index(self, g: int, e: int) -> int:
        r, base = 0, g
        if e < 0:
            base, e = int(self.inverse[g]), -e
        while e:
            if e & 1:
                r = int(self.table[r, base])
            e >>= 1
            if e:
                base = int(self.table[base, base])
        return r

    def power_all(self, idxs, e: int):
        """Elementwise e-th power of an index array."""
        r = np.zeros(len(idxs), dtype=np.int64)
        base = np.asarray(idxs, dtype=np.int64)
        if e < 0:
            base, e = self.inverse[base], -e
        while e:
            if e & 1:
                r = self.table[r, base]
            e >>= 1
            if e:
                base = self.table[base, base]
        return r

    def conjugate_all(self, idxs, h: int):
        g = np.asarray(idxs, dtype=np.int64)
        return self.table[self.table[int(self.inverse[h]), g], h]

    def commutator_pairs(self, s1, s2):
        """All [g, h] for g in s1, h in s2."""
        g = np.asarray(s1, dtype=np.int64)[:, None]
        h = np.asarray(s2, dtype=np.int64)[None, :]
        left = self.table[self.inverse[g], self.inverse[h]]
        right = self.table[g, h]
        return np.unique(self.table[left, right])

    def subgroup_closure(self, seed):
        cur = np.unique(np.concatenate([np.asarray(seed, dtype=np.int64), [0]]))
        while True:
            prods = np.unique(self.table[np.ix_(cur, cur)])
            if len(prods) == len(cur):
                return prods
            cur = prods

    def normal_closure_set(self, seed):
        cur = self.subgroup_closure(seed)
        while True:
            conj = np.concatenate(
                [self.conjugate_all(cur, self.x_idx), self.conjugate_all(cur, self.y_idx)]
            )
            nxt = self.subgroup_closure(np.concatenate([cur, conj]))
            if len(nxt) == len(cur):
                return nxt
            cur = nxt

    def center(self):
        T = self.table
        ok = np.nonzero(
            (T[:, self.x_idx] == T[self.x_idx, :]) & (T[:, self.y_idx] == T[self.y_idx, :])
        )[0]
        return ok

    def base_centralizer(self):
        """Elements commuting with every base generator b_0, b_1, b_2."""
        T = self.table
        mask = np.ones(_SIZE, dtype=bool)
        for i in range(3):
            bi = self.pack(Element(0, tuple(1 if j == i else 0 for j in range(3)), (0, 0, 0)))
            mask &= T[:, bi] == T[bi, :]
        return np.nonzero(mask)[0]

    # -- brute-force series -------------------------------------------------

    def all_indices(self):
        return np.arange(_SIZE, dtype=np.int64)

    @lru_cache(maxsize=None)
    def set_series(self, kind_value: str) -> tuple[tuple[int, ...], ...]:
        """Series terms as sorted index tuples, by the defining recursions
        executed on raw element sets."""
        everything = self.all_indices()

        def power_sub(idxs, e):
            return self.subgroup_closure(np.unique(self.power_all(idxs, e)))

        def comm_sub(s1, s2):
            return self.subgroup_closure(self.commutator_pairs(s1, s2))

        def join(s1, s2):
            return self.subgroup_closure(np.concatenate([s1, s2]))

        terms = [everything]
        if kind_value == "gamma":
            while len(terms[-1]) > 1:
                terms.append(comm_sub(terms[-1], everything))
        elif kind_value == "L":
            while len(terms[-1]) > 1:
                prev = terms[-1]
                terms.append(join(power_sub(prev, 3), comm_sub(prev, everything)))
        elif kind_value == "D":
            while len(terms[-1]) > 1:
                i = len(terms) + 1
                acc = power_sub(terms[(i + 2) // 3 - 1], 3)
                for j in range(1, i // 2 + 1):
                    acc = join(acc, comm_sub(terms[j - 1], terms[i - j - 1]))
                terms.append(acc)
        elif kind_value == "P":
            while len(terms[-1]) > 1:
                terms.append(power_sub(everything, 3 ** len(terms)))
        elif kind_value == "Pstar":
            while len(terms[-1]) > 1:
                terms.append(power_sub(terms[-1], 3))
        elif kind_value == "F":
            while len(terms[-1]) > 1:
                prev = terms[-1]
                terms.append(join(power_sub(prev, 3), comm_sub(prev, prev)))
        else:
            raise ParameterError(f"unknown series kind {kind_value!r}")
        return tuple(tuple(int(i) for i in t) for t in terms)

    def subgroup_indices(self, ns: NormalSubgroup) -> tuple[int, ...]:
        if ns.params != self.params:
            raise ParameterError("oracle only covers p=3, k=1")
        return tuple(sorted(self.pack(g) for g in ns.elements()))


@lru_cache(maxsize=1)
def oracle() -> OracleGroup:
    return OracleGroup()
