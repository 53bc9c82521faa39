"""The symmetric group S6 acting on C^6 by permuting coordinates.

Permutations, conjugacy classes, projective orbits over Q(w), characters
and the normal-subgroup bookkeeping needed for the transitive-action
exclusions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Callable, Iterable, Sequence

from .exactfield import QQW, CycNum, Rat

N = 6
GROUP_ORDER = factorial(N)


class Perm(tuple):
    """A permutation of {0, ..., n-1} stored as its tuple of images.

    Composition follows function composition: ``(g * h)(i) == g(h(i))``.
    """

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int = N) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], n: int = N) -> "Perm":
        images = list(range(n))
        for cyc in cycles:
            for k, a in enumerate(cyc):
                images[a] = cyc[(k + 1) % len(cyc)]
        return cls(images)

    def __call__(self, i: int) -> int:
        return self[i]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(self[other[i]] for i in range(len(self)))

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (len(self) - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self) if i == j)

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def __repr__(self):
        return f"Perm({self.to_str()!r})"

    def to_str(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(a) for a in c) + ")" for c in cyc)

    __str__ = to_str


@lru_cache(maxsize=None)
def all_perms(n: int = N) -> tuple[Perm, ...]:
    return tuple(Perm(p) for p in permutations(range(n)))


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@dataclass(frozen=True)
class ClassData:
    representative: Perm
    cycle_type: tuple[int, ...]
    size: int

    @property
    def is_even(self) -> bool:
        return self.representative.sign() == 1


@lru_cache(maxsize=None)
def conjugacy_classes(n: int = N) -> tuple[ClassData, ...]:
    """Classes of S_n ordered by cycle type, identity first."""
    sizes: dict[tuple, int] = {}
    for g in all_perms(n):
        ct = g.cycle_type()
        sizes[ct] = sizes.get(ct, 0) + 1
    out = []
    for part in sorted(_partitions(n), key=lambda p: (len(p), p), reverse=True):
        cycles, start = [], 0
        for k in part:
            cycles.append(tuple(range(start, start + k)))
            start += k
        out.append(ClassData(Perm.from_cycles(cycles, n), part, sizes[part]))
    return tuple(out)


def class_index(g: Perm) -> int:
    ct = g.cycle_type()
    for i, cd in enumerate(conjugacy_classes(len(g))):
        if cd.cycle_type == ct:
            return i
    raise AssertionError("unreachable")


# --- characters -----------------------------------------------------------


def standard_character(g: Perm) -> int:
    """Character of V = {sum x_i = 0}: fixed points minus one."""
    return g.fixed_points() - 1


def class_function(fn: Callable[[Perm], object], n: int = N) -> list:
    """Values of ``fn`` on the class representatives."""
    return [fn(cd.representative) for cd in conjugacy_classes(n)]


def char_inner_product(chi1: Sequence, chi2: Sequence, n: int = N) -> Rat:
    """(1/|G|) sum over classes of size * chi1 * chi2.

    Characters of symmetric groups are rational, so no complex conjugation
    is applied.
    """
    classes = conjugacy_classes(n)
    if len(chi1) != len(classes) or len(chi2) != len(classes):
        raise ValueError(f"class functions need {len(classes)} values")
    total = Rat(0)
    for cd, a, b in zip(classes, chi1, chi2):
        total += cd.size * _as_rat(a) * _as_rat(b)
    return total / factorial(n)


def char_inner_product_brute(f1: Callable[[Perm], object], f2: Callable[[Perm], object], n: int = N) -> Rat:
    """The same inner product summed over every group element."""
    total = Rat(0)
    for g in all_perms(n):
        total += _as_rat(f1(g)) * _as_rat(f2(g))
    return total / factorial(n)


def _as_rat(x) -> Rat:
    if isinstance(x, CycNum):
        if not x.is_rational():
            raise ValueError(f"character value {x} is not rational")
        return x.a
    return Rat(x)


def trivial_character(n: int = N) -> list[int]:
    return [1] * len(conjugacy_classes(n))


def sign_character(n: int = N) -> list[int]:
    return [cd.representative.sign() for cd in conjugacy_classes(n)]


def faithfulness_check(chi: Sequence | None = None, n: int = N) -> bool:
    """True iff only the identity class has character value equal to the degree.

    ``chi(g) == chi(1)`` exactly when g acts trivially, so this decides
    faithfulness.  Defaults to the standard character.
    """
    if chi is None:
        chi = class_function(standard_character, n)
    degree = chi[0]
    return all(v != degree for v in chi[1:])


# --- normal subgroups and transitive actions ------------------------------


@dataclass(frozen=True)
class NormalSubgroup:
    order: int
    classes: tuple[tuple[int, ...], ...]  # cycle types of the member classes

    def describe(self) -> str:
        return " + ".join("".join(map(str, ct)) for ct in self.classes)


@lru_cache(maxsize=None)
def _class_products(n: int = N) -> tuple[tuple[frozenset, ...], ...]:
    """products[i][j] = classes meeting (rep_i * C_j)."""
    classes = conjugacy_classes(n)
    by_class: list[list[Perm]] = [[] for _ in classes]
    for g in all_perms(n):
        by_class[class_index(g)].append(g)
    table = []
    for cd in classes:
        x = cd.representative
        table.append(tuple(frozenset(class_index(x * y) for y in members) for members in by_class))
    return tuple(table)


@lru_cache(maxsize=None)
def normal_subgroups(n: int = N) -> tuple[NormalSubgroup, ...]:
    """All unions of classes containing the identity that are closed under products.

    A conjugation-stable set N is closed iff rep(C) * N lies in N for each
    class C in N, so the check runs on the class-multiplication table.
    """
    classes = conjugacy_classes(n)
    table = _class_products(n)
    k = len(classes)
    found = []
    for mask in range(1 << (k - 1)):
        members = {0} | {i + 1 for i in range(k - 1) if mask >> i & 1}
        if all(table[i][j] <= members for i in members for j in members):
            order = sum(classes[i].size for i in members)
            found.append(
                NormalSubgroup(order, tuple(classes[i].cycle_type for i in sorted(members)))
            )
    found.sort(key=lambda s: (s.order, s.classes))
    return tuple(found)


def is_closed_union(cycle_types: Iterable[tuple[int, ...]], n: int = N) -> bool:
    """Whether a union of classes is closed under multiplication."""
    classes = conjugacy_classes(n)
    wanted = set(cycle_types)
    members = {i for i, cd in enumerate(classes) if cd.cycle_type in wanted}
    table = _class_products(n)
    return all(table[i][j] <= members for i in members for j in members)


def transitive_action_possible(p: int, n: int = N) -> tuple[bool, list[str]]:
    """Whether the quotient-order test leaves room for a transitive action on p points.

    An action on p points factors through G/K for a normal subgroup K.  A
    transitive image of order m needs p | m (orbit-stabilizer) and
    m | p! (it sits inside S_p).  Returns the verdict and a step trace.
    """
    order = factorial(n)
    images = sorted({order // ns.order for ns in normal_subgroups(n)})
    trace = [f"normal subgroup orders {[ns.order for ns in normal_subgroups(n)]}",
             f"possible image orders {images}"]
    possible = False
    for m in images:
        if factorial(p) % m:
            trace.append(f"image order {m}: {m} does not divide {p}! = {factorial(p)}")
        elif m % p:
            trace.append(f"image order {m}: orbits have size dividing {m}, not {p}")
        else:
            trace.append(f"image order {m}: not excluded")
            possible = True
    return possible, trace


def no_transitive_action_on(p: int) -> tuple[bool, list[str]]:
    """S6 has no transitive action on p points, for 3 <= p <= 5."""
    if not 3 <= p <= 5:
        raise ValueError(f"p must lie in 3..5, got {p}")
    possible, trace = transitive_action_possible(p)
    return not possible, trace


# --- projective points ----------------------------------------------------


class ProjPoint(tuple):
    """A point of P^{n-1} over Q(w), scaled so its first nonzero coordinate is 1."""

    def __new__(cls, coords: Iterable):
        coords = [QQW(c) for c in coords]
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        if lead != 1:
            inv = lead.inverse()
            coords = [c * inv for c in coords]
        return super().__new__(cls, coords)

    def act(self, g: Perm) -> "ProjPoint":
        """(g.p)_{g(i)} = p_i."""
        out = [None] * len(self)
        for i, c in enumerate(self):
            out[g[i]] = c
        return ProjPoint(out)

    def sort_key(self):
        return tuple(c.sort_key() for c in self)

    def coordinate_sum(self):
        return sum(self, CycNum(0))

    def __repr__(self):
        return "ProjPoint(" + ", ".join(str(c) for c in self) + ")"

    def to_str(self) -> str:
        return "(" + ", ".join(str(c) for c in self) + ")"


def permute_vector(g: Perm, v: Sequence) -> tuple:
    out = [None] * len(v)
    for i, c in enumerate(v):
        out[g[i]] = c
    return tuple(out)


def orbit(seed: Sequence, projective: bool = True) -> list:
    """S6-orbit of ``seed``, sorted canonically.

    With ``projective=True`` points are identified up to scaling; otherwise
    raw coordinate vectors are kept.
    """
    if projective:
        p = ProjPoint(seed)
        pts = {p.act(g) for g in all_perms(len(p))}
        return sorted(pts, key=ProjPoint.sort_key)
    v = tuple(QQW(c) for c in seed)
    pts = {permute_vector(g, v) for g in all_perms(len(v))}
    return sorted(pts, key=lambda x: tuple(c.sort_key() for c in x))


NODE_SEED = (1, 1, CycNum(0, 1), CycNum(0, 1), CycNum(-1, -1), CycNum(-1, -1))
