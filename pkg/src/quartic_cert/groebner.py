"""Buchberger's algorithm, normal forms and graded quotient dimensions.

Pairs are selected by the normal strategy (smallest lcm first, ties broken
by the monomial order and then by generator index so runs are
reproducible).  Useless pairs are pruned with the Gebauer-Moeller update,
which implements Buchberger's coprime and chain criteria.

Internally polynomials are plain ``{exponent tuple: coefficient}`` dicts;
:class:`~quartic_cert.multipoly.MPoly` is used only at the boundary.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from operator import le
from typing import Iterable, Sequence

from .multipoly import ORDERS, MPoly, graded_monomials


class NonHomogeneousError(ValueError):
    """A graded query was made on an inhomogeneous ideal."""


def _divides(a: tuple, b: tuple) -> bool:
    return all(map(le, a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Ring:
    """Order-specific helpers with a cache of descending heap keys."""

    def __init__(self, order: str):
        self.order = order
        self.key = ORDERS[order]
        self._desc: dict = {}

    def desc(self, m: tuple):
        k = self._desc.get(m)
        if k is None:
            if self.order == "grevlex":
                k = (-sum(m),) + tuple(reversed(m))
            else:
                k = tuple(-e for e in m)
            self._desc[m] = k
        return k

    def lead(self, p: dict) -> tuple:
        return max(p, key=self.key)

    def reduce(self, p: dict, basis: Sequence[tuple], memo: dict | None = None) -> dict:
        """Full reduction of ``p`` by ``basis`` entries ``(lm, lc, terms)``.

        ``memo`` caches monomial -> first divisor and must only be shared
        between calls with the same basis.
        """
        p = dict(p)
        desc = self.desc
        if memo is None:
            memo = {}
        heap = [(desc(m), m) for m in p]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            hit = memo.get(m, False)
            if hit is False:
                hit = next((e for e in basis if _divides(e[0], m)), None)
                memo[m] = hit
            if hit is None:
                rem[m] = c
                continue
            lm, lc, g = hit
            q = tuple(a - b for a, b in zip(m, lm))
            f = c / lc
            for gm, gc in g.items():
                if gm == lm:
                    continue
                nm = tuple(a + b for a, b in zip(gm, q))
                old = p.get(nm)
                if old is None:
                    p[nm] = -f * gc
                    heapq.heappush(heap, (desc(nm), nm))
                else:
                    v = old - f * gc
                    if v == 0:
                        del p[nm]
                    else:
                        p[nm] = v
        return rem

    def spoly(self, f: tuple, g: tuple) -> dict:
        lf, cf, tf = f
        lg, cg, tg = g
        l = _lcm(lf, lg)
        qf = tuple(a - b for a, b in zip(l, lf))
        qg = tuple(a - b for a, b in zip(l, lg))
        out: dict = {}
        for m, c in tf.items():
            if m != lf:
                out[tuple(a + b for a, b in zip(m, qf))] = c / cf
        for m, c in tg.items():
            if m == lg:
                continue
            nm = tuple(a + b for a, b in zip(m, qg))
            v = out.get(nm, 0) - c / cg
            if v == 0:
                out.pop(nm, None)
            else:
                out[nm] = v
        return out


def _monic(ring: _Ring, p: dict) -> tuple:
    lm = ring.lead(p)
    lc = p[lm]
    if lc != 1:
        p = {m: c / lc for m, c in p.items()}
    return lm, p[lm], p


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis; generators monic, sorted by leading monomial."""

    generators: tuple
    order: str = "grevlex"
    nvars: int = 5
    homogeneous: bool = True
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.leading_term(self.order)[0] for g in self.generators]

    def _entries(self) -> list[tuple]:
        out = []
        for g in self.generators:
            lm, lc = g.leading_term(self.order)
            out.append((lm, lc, g.terms))
        return out

    def normal_form(self, f: MPoly) -> MPoly:
        return normal_form(f, self)

    def contains(self, f: MPoly) -> bool:
        return normal_form(f, self).is_zero()

    def quotient_graded_dim(self, d: int) -> int:
        return quotient_graded_dim(self, d)

    def render(self) -> str:
        return "\n".join(str(g) for g in self.generators)

    def __len__(self):
        return len(self.generators)


def _update(ring: _Ring, polys: list, active: list[int], pairs: set, h: int):
    """Gebauer-Moeller installation of generator ``h``."""
    lh = polys[h][0]
    cands = [(h, g) for g in active]
    kept = []
    for idx, (_, g1) in enumerate(cands):
        l1 = _lcm(lh, polys[g1][0])
        if _coprime(lh, polys[g1][0]):
            kept.append((h, g1))
            continue
        # chain criterion against the other new pairs (pending and kept)
        redundant = False
        for (_, g2) in cands[idx + 1 :] + kept:
            if _divides(_lcm(lh, polys[g2][0]), l1):
                redundant = True
                break
        if not redundant:
            kept.append((h, g1))
    new_pairs = {(g, hh) if g < hh else (hh, g) for hh, g in kept if not _coprime(lh, polys[g][0])}
    survivors = set()
    for (a, b) in pairs:
        lab = _lcm(polys[a][0], polys[b][0])
        if (
            _divides(lh, lab)
            and _lcm(polys[a][0], lh) != lab
            and _lcm(polys[b][0], lh) != lab
        ):
            continue
        survivors.add((a, b))
    new_active = [g for g in active if not _divides(lh, polys[g][0])]
    new_active.append(h)
    return new_active, survivors | new_pairs


def buchberger(gens: Iterable[MPoly], order: str = "grevlex") -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    nvars = gens[0].nvars if gens else 0
    if any(g.nvars != nvars for g in gens):
        raise ValueError("generators live in different rings")
    homogeneous = all(g.is_zero() or g.is_homogeneous() for g in gens)
    ring = _Ring(order)
    polys: list[tuple] = []
    active: list[int] = []
    pairs: set = set()
    for g in gens:
        if g.is_zero():
            continue
        polys.append(_monic(ring, dict(g.terms)))
        active, pairs = _update(ring, polys, active, pairs, len(polys) - 1)

    n_reductions = 0
    n_zero = 0
    while pairs:
        best = min(
            pairs,
            key=lambda ab: (
                sum(_lcm(polys[ab[0]][0], polys[ab[1]][0])),
                ring.key(_lcm(polys[ab[0]][0], polys[ab[1]][0])),
                ab,
            ),
        )
        pairs.discard(best)
        s = ring.spoly(polys[best[0]], polys[best[1]])
        n_reductions += 1
        r = ring.reduce(s, [polys[i] for i in active])
        if not r:
            n_zero += 1
            continue
        polys.append(_monic(ring, r))
        active, pairs = _update(ring, polys, active, pairs, len(polys) - 1)

    # minimal basis, then inter-reduce the tails
    minimal = [
        polys[i]
        for i in active
        if not any(j != i and _divides(polys[j][0], polys[i][0]) for j in active)
    ]
    reduced = []
    for k, (lm, lc, terms) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        tail = {m: c for m, c in terms.items() if m != lm}
        tail = ring.reduce(tail, others)
        tail[lm] = lc
        reduced.append(MPoly(tail, nvars))
    reduced.sort(key=lambda g: ring.key(g.leading_term(order)[0]), reverse=True)
    return GroebnerBasis(
        tuple(reduced),
        order,
        nvars,
        homogeneous,
        {"pairs_reduced": n_reductions, "zero_reductions": n_zero},
    )


def normal_form(f: MPoly, gb: GroebnerBasis) -> MPoly:
    """Remainder of ``f`` on division by ``gb``; zero iff ``f`` is in the ideal."""
    if gb.generators and f.nvars != gb.nvars:
        raise ValueError("polynomial and basis live in different rings")
    ring = _Ring(gb.order)
    return MPoly(ring.reduce(f.terms, gb._entries()), f.nvars)


def s_polynomial(f: MPoly, g: MPoly, order: str = "grevlex") -> MPoly:
    ring = _Ring(order)
    fe = (*f.leading_term(order), f.terms)
    ge = (*g.leading_term(order), g.terms)
    return MPoly(ring.spoly(fe, ge), f.nvars)


def s_pairs_reduce_to_zero(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion, checked on every pair of the basis."""
    ring = _Ring(gb.order)
    entries = gb._entries()
    memo: dict = {}
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            if ring.reduce(ring.spoly(entries[i], entries[j]), entries, memo):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    """Monic generators, no term of any generator divisible by another's lead."""
    lms = gb.leading_monomials
    for k, g in enumerate(gb.generators):
        if g.leading_term(gb.order)[1] != 1:
            return False
        for m in g.terms:
            if any(j != k and _divides(lm, m) for j, lm in enumerate(lms)):
                return False
    return True


def quotient_graded_dim(gb: GroebnerBasis, d: int) -> int:
    """Number of standard monomials of degree ``d`` (dimension of (S/I)_d)."""
    if not gb.homogeneous:
        raise NonHomogeneousError("graded dimension needs a homogeneous ideal")
    lms = gb.leading_monomials
    return sum(
        1 for m in graded_monomials(gb.nvars, d) if not any(_divides(lm, m) for lm in lms)
    )


def hilbert_function(gb: GroebnerBasis, upto: int) -> list[int]:
    return [quotient_graded_dim(gb, d) for d in range(upto + 1)]


def stable_hilbert_value(gb: GroebnerBasis, d_from: int, span: int = 3) -> int | None:
    """The constant value of the Hilbert function on ``[d_from, d_from + span]``.

    Returns None when the values in the window differ.
    """
    values = {quotient_graded_dim(gb, d) for d in range(d_from, d_from + span + 1)}
    return values.pop() if len(values) == 1 else None
