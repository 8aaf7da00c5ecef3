"""Buchberger's algorithm over Q and the queries built on it.

The engine works on plain ``{exponents: Fraction}`` dicts; :class:`MPoly`
objects are only created at the boundary. Pair selection is the normal
strategy (smallest lcm first) and pairs are pruned with the Gebauer-Moeller
update, which covers both the coprime and the chain criterion.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import Ideal, MPoly, Ring, RingMismatchError

INFINITE = "infinite"


class ResourceLimitExceeded(RuntimeError):
    """The engine ran out of its pair or wall-clock budget.

    Distinct from any mathematical outcome: nothing is known about the ideal.
    """

    def __init__(self, reason: str, stats: dict):
        super().__init__(reason)
        self.reason = reason
        self.stats = stats


@dataclass(frozen=True)
class Budget:
    """Resource guard for one Groebner computation. ``None`` means unlimited."""

    max_pairs: int | None = None
    seconds: float | None = None

    def deadline(self) -> float | None:
        if self.seconds is None:
            return None
        return time.monotonic() + self.seconds


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    basis: tuple[MPoly, ...]
    reduced: bool = True
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def ring(self) -> Ring:
        return self.ideal.ring

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial() for g in self.basis]

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.basis)

    def __contains__(self, p: MPoly) -> bool:
        return normal_form(p, self).is_zero()

    def __len__(self):
        return len(self.basis)


# -- dict-level helpers ---------------------------------------------------


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Engine:
    def __init__(self, ring: Ring, budget: Budget):
        self.ring = ring
        self.key = ring.key
        self.max_pairs = budget.max_pairs
        self.deadline = budget.deadline()
        self.polys: list[dict] = []
        self.lms: list[tuple] = []
        self.pairs_done = 0
        self.reductions = 0
        self.started = time.monotonic()

    def stats(self) -> dict:
        return {
            "pairs": self.pairs_done,
            "reductions": self.reductions,
            "basis_size": len(self.polys),
            "seconds": round(time.monotonic() - self.started, 3),
        }

    def check_clock(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitExceeded("time budget exceeded", self.stats())

    def lm(self, p: dict):
        return max(p, key=self.key)

    def reduce(self, p: dict, active: Sequence[int]) -> dict:
        """Full reduction of ``p`` by the polynomials in ``active`` (monic)."""
        p = dict(p)
        rem: dict = {}
        key = self.key
        polys, lms = self.polys, self.lms
        steps = 0
        while p:
            m = max(p, key=key)
            c = p[m]
            for idx in active:
                g_lm = lms[idx]
                if _divides(g_lm, m):
                    break
            else:
                rem[m] = p.pop(m)
                continue
            shift = tuple(x - y for x, y in zip(m, g_lm))
            for gm, gc in polys[idx].items():
                t = tuple(x + y for x, y in zip(gm, shift))
                v = p.get(t, 0) - c * gc
                if v:
                    p[t] = v
                else:
                    del p[t]
            steps += 1
            if steps & 255 == 0:
                self.check_clock()
        self.reductions += steps
        return rem

    def add(self, p: dict) -> int:
        lm = self.lm(p)
        inv = 1 / p[lm]
        if inv != 1:
            p = {m: c * inv for m, c in p.items()}
        self.polys.append(p)
        self.lms.append(lm)
        return len(self.polys) - 1

    def spoly(self, i: int, j: int) -> dict:
        a, b = self.lms[i], self.lms[j]
        l = _lcm(a, b)
        si = tuple(x - y for x, y in zip(l, a))
        sj = tuple(x - y for x, y in zip(l, b))
        out: dict = {}
        for m, c in self.polys[i].items():
            out[tuple(x + y for x, y in zip(m, si))] = c
        for m, c in self.polys[j].items():
            t = tuple(x + y for x, y in zip(m, sj))
            v = out.get(t, 0) - c
            if v:
                out[t] = v
            else:
                del out[t]
        return out

    def update(self, G: list[int], B: dict, h: int):
        """Gebauer-Moeller update; ``B`` maps pairs to their lcm."""
        lms = self.lms
        lm_h = lms[h]
        C = [(g, _lcm(lms[g], lm_h)) for g in G]
        D = []
        while C:
            g, l = C.pop(0)
            if _coprime(lms[g], lm_h) or not (
                any(_divides(l2, l) for _, l2 in C) or any(_divides(l2, l) for _, l2 in D)
            ):
                D.append((g, l))
        E = {(g, h): l for g, l in D if not _coprime(lms[g], lm_h)}
        kept = {}
        for (g1, g2), l in B.items():
            if (
                _divides(lm_h, l)
                and _lcm(lms[g1], lm_h) != l
                and _lcm(lms[g2], lm_h) != l
            ):
                continue
            kept[(g1, g2)] = l
        kept.update(E)
        G_new = [g for g in G if not _divides(lm_h, lms[g])]
        G_new.append(h)
        return G_new, kept

    def run(self, gens: list[dict]) -> list[dict]:
        key = self.key
        G: list[int] = []
        B: dict = {}
        # smallest leading monomials first; reduce each input by what is active
        for f in sorted(gens, key=lambda p: key(self.lm(p))):
            r = self.reduce(f, G)
            if r:
                G, B = self.update(G, B, self.add(r))
        while B:
            self.check_clock()
            pair = min(B, key=lambda pr: (key(B[pr]), pr))
            del B[pair]
            self.pairs_done += 1
            if self.max_pairs is not None and self.pairs_done > self.max_pairs:
                raise ResourceLimitExceeded("S-pair budget exceeded", self.stats())
            r = self.reduce(self.spoly(*pair), G)
            if r:
                h = self.add(r)
                if not any(r_m for r_m in self.lms[h]):
                    # a nonzero constant: the unit ideal
                    return [{self.lms[h]: Fraction(1)}]
                G, B = self.update(G, B, h)
        return self.interreduce(G)

    def interreduce(self, G: list[int]) -> list[dict]:
        lms = self.lms
        minimal = [
            g for g in G
            if not any(h != g and _divides(lms[h], lms[g]) for h in G)
        ]
        out = []
        for g in minimal:
            others = [h for h in minimal if h != g]
            p = dict(self.polys[g])
            lead = lms[g]
            tail = {m: c for m, c in p.items() if m != lead}
            red = self.reduce(tail, others)
            red[lead] = Fraction(1)
            out.append(red)
        out.sort(key=lambda p: key_of(p, self.key), reverse=True)
        return out


def key_of(p: dict, key):
    return key(max(p, key=key))


def groebner(ideal: Ideal, budget: Budget | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` in its ring's monomial order.

    Elements are monic and sorted by decreasing leading monomial, so the output
    is identical for any permutation of the generators. Raises
    :class:`ResourceLimitExceeded` when ``budget`` runs out.
    """
    ring = ideal.ring
    engine = _Engine(ring, budget or Budget())
    gens = [dict(g.terms) for g in ideal.generators if not g.is_zero()]
    if not gens:
        return GroebnerBasis(ideal, (), True, engine.stats())
    basis = engine.run(gens)
    polys = tuple(MPoly._raw(ring, p) for p in basis)
    return GroebnerBasis(ideal, polys, True, engine.stats())


def normal_form(p: MPoly, gb: GroebnerBasis | Sequence[MPoly]) -> MPoly:
    """Remainder of ``p`` under full multivariate division by the basis."""
    basis = gb.basis if isinstance(gb, GroebnerBasis) else tuple(gb)
    for g in basis:
        if g.ring != p.ring:
            raise RingMismatchError("polynomial and basis live in different rings")
    if p.is_zero() or not basis:
        return p
    engine = _Engine(p.ring, Budget())
    active = [engine.add(dict(g.terms)) for g in basis if not g.is_zero()]
    return MPoly._raw(p.ring, engine.reduce(dict(p.terms), active))


def _minimal_supports(lms: list[tuple[int, ...]]) -> list[int]:
    masks = set()
    for m in lms:
        mask = 0
        for i, e in enumerate(m):
            if e:
                mask |= 1 << i
        masks.add(mask)
    return [s for s in masks if not any(t != s and t & s == t for t in masks)]


def ideal_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of the quotient ring; -1 for the unit ideal.

    The largest set S of variables such that no leading monomial is supported
    inside S (a maximal independent set of the leading-term ideal).
    """
    n = gb.ring.nvars
    if gb.is_unit():
        return -1
    supports = _minimal_supports(gb.leading_monomials())
    if not supports:
        return n
    best = 0

    def search(i: int, chosen: int, size: int):
        nonlocal best
        if size + (n - i) <= best:
            return
        if i == n:
            best = size
            return
        bit = 1 << i
        with_i = chosen | bit
        if not any(s & bit and s & with_i == s for s in supports):
            search(i + 1, with_i, size + 1)
        search(i + 1, chosen, size)

    search(0, 0, 0)
    return best


def standard_monomials(gb: GroebnerBasis, limit: int | None = None) -> list[tuple[int, ...]] | None:
    """Monomials outside the leading-term ideal, or None if there are infinitely many."""
    n = gb.ring.nvars
    if gb.is_unit():
        return []
    lms = gb.leading_monomials()
    bounds = [None] * n
    for m in lms:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = m[i] if bounds[i] is None else min(bounds[i], m[i])
    if any(b is None for b in bounds):
        return None
    out = []

    def walk(exps: list[int], start: int):
        out.append(tuple(exps))
        if limit is not None and len(out) > limit:
            raise ValueError("standard monomial count above limit")
        for i in range(start, n):
            exps[i] += 1
            t = tuple(exps)
            if exps[i] < bounds[i] and not any(_divides(m, t) for m in lms):
                walk(exps, i)
            exps[i] -= 1

    walk([0] * n, 0)
    return out


def vector_space_dimension(gb: GroebnerBasis) -> int | str:
    """Dimension of the quotient as a Q-vector space, or ``"infinite"``."""
    std = standard_monomials(gb)
    if std is None:
        return INFINITE
    return len(std)
