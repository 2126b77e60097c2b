"""Acyclic line bundles, exceptional collections of length 4, and their helices.

Collections are always handled in normalized form ``(O, L1, L2, L3)``: a
common twist by ``E0^*`` is removed first.  Bidegrees are in the K-basis
throughout this module, which is where all exceptional collections live.
"""

from __future__ import annotations

import contextvars
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from . import faults
from .charpoly import TRIVIAL, Character
from .surface import (
    SURFACE_DIM,
    CohomologyRanks,
    LineBundle,
    canonical_class,
    cohomology_S,
    euler_char,
    hochschild_cohomology,
    hochschild_homology_dim,
    kunneth_poly,
)

LENGTH = 4
FAMILIES = ("I", "II", "III", "IV")


class RangeTooSmallError(ValueError):
    """The bidegree box cannot certify that no acyclic bundle lies outside it."""


class NotExceptionalError(ValueError):
    pass


# acyclic sets


@dataclass(frozen=True)
class AcyclicSet:
    bundle: LineBundle
    characters: frozenset[Character]

    def __contains__(self, chi: Character) -> bool:
        return chi in self.characters

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self):
        return iter(sorted(self.characters))

    def __str__(self) -> str:
        return "{" + ", ".join(str(c) for c in self) + "}"


@lru_cache(maxsize=4096)
def _acyclic_chars(i: int, j: int, fault_state: frozenset) -> frozenset[Character]:
    support = kunneth_poly(LineBundle.K(i, j)).character_support()
    return frozenset(Character.all()) - support


def acyclic_set(i: int, j: int) -> AcyclicSet:
    """A(K(i,j)): characters chi with chi absent from [H^*(T, K(i,j))]."""
    return AcyclicSet(LineBundle.K(i, j), _acyclic_chars(i, j, faults.active()))


def _acyclic(bidegree: tuple[int, int]) -> frozenset[Character]:
    return _acyclic_chars(bidegree[0], bidegree[1], faults.active())


DEFAULT_BOX = ((-5, 7), (-5, 7))


def enumerate_acyclic_bundles(
    i_range: tuple[int, int] = DEFAULT_BOX[0], j_range: tuple[int, int] = DEFAULT_BOX[1]
) -> list[LineBundle]:
    """All acyclic line bundles ``K(i,j)(chi)``, certified complete.

    Only bidegrees with i = 1 or j = 1 have Euler characteristic zero.  Along
    such a line, once the acyclic set is empty at some bidegree >= 3 it stays
    empty further out: H^1 of the curve factor vanishes there and multiplying
    by a section of O(1) maps the full character support into itself.  The
    negative side follows by Serre duality.  So the box is sufficient iff the
    acyclic sets on its four edge crossings are empty with the edges far enough
    out.
    """
    (imin, imax), (jmin, jmax) = i_range, j_range
    if not (imin <= -2 and imax >= 4 and jmin <= -2 and jmax >= 4):
        raise RangeTooSmallError(
            f"box [{imin},{imax}]x[{jmin},{jmax}] must reach at least [-2,4] in each direction"
        )
    edges = [(imin, 1), (imax, 1), (1, jmin), (1, jmax)]
    nonempty = [e for e in edges if _acyclic(e)]
    if nonempty:
        raise RangeTooSmallError(f"acyclic sets on the box edge are nonempty at {nonempty}")
    out = []
    for i in range(imin, imax + 1):
        for j in range(jmin, jmax + 1):
            if euler_char(LineBundle.K(i, j)) != 0:
                continue
            for chi in sorted(_acyclic((i, j))):
                out.append(LineBundle.K(i, j, -chi))
    return out


def acyclic_support(
    i_range: tuple[int, int] = DEFAULT_BOX[0], j_range: tuple[int, int] = DEFAULT_BOX[1]
) -> list[tuple[int, int]]:
    """Bidegrees (K-basis) with a nonempty acyclic set."""
    return sorted({L.bidegree for L in enumerate_acyclic_bundles(i_range, j_range)})


# numerical types


@dataclass(frozen=True, order=True)
class NumericalType:
    family: str
    c: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.c == 0 and self.family in ("III", "IV"):
            object.__setattr__(self, "family", "I" if self.family == "III" else "II")

    def sort_key(self) -> tuple[int, int]:
        return (FAMILIES.index(self.family), self.c)

    def __str__(self) -> str:
        return f"{self.family}_{self.c}"

    @classmethod
    def parse(cls, text: str) -> NumericalType:
        family, c = text.split("_")
        return cls(family, int(c))


def type_bidegrees(t: NumericalType) -> tuple[tuple[int, int], ...]:
    """The three bidegrees following O in a collection of numerical type ``t``."""
    c = t.c
    return {
        "I": ((-1, 0), (c - 1, -1), (c - 2, -1)),
        "II": ((0, -1), (-1, c - 1), (-1, c - 2)),
        "III": ((-1, c), (-1, c - 1), (-2, -1)),
        "IV": ((c, -1), (c - 1, -1), (-1, -2)),
    }[t.family]


def is_numerically_exceptional(bidegrees: Sequence[tuple[int, int]]) -> bool:
    """chi(E_j, E_i) = 0 for all j > i."""
    return all(
        (bi[0] - bj[0] - 1) * (bi[1] - bj[1] - 1) == 0 for bi, bj in combinations(bidegrees, 2)
    )


def _classify(rel: tuple[tuple[int, int], ...]) -> NumericalType | None:
    (a1, b1), (a2, b2), (a3, b3) = rel
    candidates = []
    if (a1, b1) == (-1, 0):
        candidates.append(NumericalType("I", a2 + 1))
        candidates.append(NumericalType("III", 0))
    if (a1, b1) == (0, -1):
        candidates.append(NumericalType("II", b2 + 1))
        candidates.append(NumericalType("IV", 0))
    if a1 == -1:
        candidates.append(NumericalType("III", b1))
    if b1 == -1:
        candidates.append(NumericalType("IV", a1))
    for t in candidates:
        if type_bidegrees(t) == rel:
            return t
    return None


# collections


@dataclass(frozen=True)
class Collection:
    entries: tuple[LineBundle, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if len(entries) != LENGTH:
            raise ValueError(f"collections have length {LENGTH}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_bidegrees(cls, bidegrees: Iterable[tuple[int, int]], chars: Iterable[Character] | None = None) -> Collection:
        """``O, K(b1)(chi1), K(b2)(chi2), K(b3)(chi3)`` (K-basis)."""
        bidegrees = list(bidegrees)
        if len(bidegrees) == LENGTH - 1:
            bidegrees = [(0, 0)] + bidegrees
        chars = [TRIVIAL] * LENGTH if chars is None else list(chars)
        if len(chars) == LENGTH - 1:
            chars = [TRIVIAL] + chars
        return cls(tuple(LineBundle.K(a, b, chi) for (a, b), chi in zip(bidegrees, chars)))

    def normalized(self) -> Collection:
        base = self.entries[0]
        return Collection(tuple((E / base).to_K_basis() for E in self.entries))

    def twist(self, L: LineBundle) -> Collection:
        return Collection(tuple(E * L for E in self.entries))

    def successor(self) -> Collection:
        """Next spire: drop E0 and append E0 (x) omega^{-1}."""
        E = self.entries
        return Collection(E[1:] + (E[0] / canonical_class(),)).normalized()

    @property
    def bidegrees(self) -> tuple[tuple[int, int], ...]:
        return tuple(E.bidegree for E in self.entries)

    def numerical_type(self) -> NumericalType | None:
        return numerical_type(self)

    def sort_key(self) -> tuple:
        n = self.normalized()
        t = n.numerical_type()
        tkey = t.sort_key() if t else (len(FAMILIES), 0)
        return (tkey, tuple(E.sort_key() for E in n.entries))

    def __str__(self) -> str:
        return ", ".join(str(E.to_K_basis()) if E.k_chi != TRIVIAL else f"K({E.a},{E.b})" for E in self.entries)

    def to_json(self) -> list[str]:
        return [str(E.to_K_basis()) for E in self.entries]


def numerical_type(c: Collection) -> NumericalType | None:
    """The numerical type of ``c``, or None when it is not numerically exceptional."""
    n = c.normalized()
    if not is_numerically_exceptional(n.bidegrees):
        return None
    return _classify(n.bidegrees[1:])


def _conditions(n: Collection):
    """The six (character, acyclic set) pairs whose memberships decide exceptionality."""
    L = [E.bidegree for E in n.entries]
    chi = [E.k_chi for E in n.entries]
    out = []
    for i, j in combinations(range(LENGTH), 2):
        # Ext^*(E_j, E_i) = H^*(E_i (x) E_j^*) = H^*(K(L_i - L_j)(chi_i - chi_j))
        diff = (L[i][0] - L[j][0], L[i][1] - L[j][1])
        out.append(((i, j), diff, chi[j] - chi[i]))
    return out


def is_exceptional(c: Collection) -> bool:
    """Membership test: chi_j - chi_i in A(L_i (x) L_j^*) for all j > i."""
    n = c.normalized()
    return all(d in _acyclic(diff) for _, diff, d in _conditions(n))


def is_exceptional_direct(c: Collection) -> bool:
    """Oracle: every Ext^*(E_j, E_i), j > i, vanishes by direct cohomology."""
    E = c.entries
    return all(cohomology_S(E[i] / E[j]).is_zero() for i, j in combinations(range(LENGTH), 2))


def _sub(u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
    return (u[0] - v[0], u[1] - v[1])


def lifts(t_or_bidegrees: NumericalType | Sequence[tuple[int, int]]) -> list[Collection]:
    """All character choices making ``O, K(b1), K(b2), K(b3)`` exceptional."""
    bidegrees = type_bidegrees(t_or_bidegrees) if isinstance(t_or_bidegrees, NumericalType) else tuple(t_or_bidegrees)
    b1, b2, b3 = bidegrees
    A1, A2, A3 = _acyclic(_sub((0, 0), b1)), _acyclic(_sub((0, 0), b2)), _acyclic(_sub((0, 0), b3))
    A12, A13, A23 = _acyclic(_sub(b1, b2)), _acyclic(_sub(b1, b3)), _acyclic(_sub(b2, b3))
    if not (A1 and A2 and A3 and A12 and A13 and A23):
        return []
    out = []
    for x1, x2 in product(sorted(A1), sorted(A2)):
        if x2 - x1 not in A12:
            continue
        for x3 in sorted(A3):
            if x3 - x1 in A13 and x3 - x2 in A23:
                out.append(Collection.from_bidegrees(bidegrees, (x1, x2, x3)))
    return out


def candidate_triples(support: Iterable[tuple[int, int]] | None = None) -> list[tuple[tuple[int, int], ...]]:
    """Bidegree triples whose six difference classes all have nonempty acyclic sets."""
    support = set(acyclic_support() if support is None else support)
    neg = [(-a, -b) for a, b in sorted(support)]
    out = []
    for b1, b2, b3 in product(neg, repeat=3):
        if all(_sub(u, v) in support for u, v in ((b1, b2), (b1, b3), (b2, b3))):
            out.append((b1, b2, b3))
    return out


def search_collections(n_jobs: int = 1) -> list[Collection]:
    """Every exceptional collection of 4 line bundles, up to a common twist.

    Brute force over the finite acyclic support; the result is sorted
    canonically so it does not depend on ``n_jobs``.
    """
    triples = candidate_triples()
    if n_jobs <= 1:
        found = [c for t in triples for c in lifts(t)]
    else:
        ctx = contextvars.copy_context()
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            chunks = pool.map(lambda t: ctx.copy().run(lifts, t), triples)
            found = [c for chunk in chunks for c in chunk]
    unique = {c.normalized() for c in found}
    return sorted(unique, key=Collection.sort_key)


def certificate(c: Collection) -> dict:
    """Self-contained evidence that ``c`` is exceptional (or why it is not)."""
    n = c.normalized()
    t = n.numerical_type()
    witnesses = []
    for (i, j), diff, d in _conditions(n):
        A = _acyclic(diff)
        bundle = n.entries[i] / n.entries[j]
        ranks = cohomology_S(bundle)
        witnesses.append(
            {
                "pair": [i, j],
                "ext_of": f"Ext*(E{j},E{i})",
                "acyclic_set_of": f"K({diff[0]},{diff[1]})",
                "acyclic_set": [str(x) for x in sorted(A)],
                "character": str(d),
                "member": d in A,
                "bundle": str(bundle.to_K_basis()),
                "cohomology": ranks.to_json(),
            }
        )
    return {
        "entries": n.to_json(),
        "numerical_type": str(t) if t else None,
        "exceptional_by_acyclic_sets": is_exceptional(n),
        "exceptional_by_cohomology": is_exceptional_direct(n),
        "conditions": witnesses,
    }


# helices


@dataclass(frozen=True)
class Helix:
    """The periodic extension ``E_{i-4k} = E_i (x) omega^k`` of a base spire."""

    base: Collection
    period: int = LENGTH

    def element(self, i: int) -> LineBundle:
        k, r = divmod(i, self.period)
        return self.base.entries[r] / (canonical_class() ** k)

    def spire(self, a: int) -> Collection:
        return Collection(tuple(self.element(a + t) for t in range(self.period)))

    def spire_sequence(self) -> list[Collection]:
        """Normalized spires E_0, ..., E_4 (the last repeats the first up to twist)."""
        return [self.spire(a).normalized() for a in range(self.period + 1)]

    def distinct_spires(self) -> list[Collection]:
        seen: list[Collection] = []
        for s in self.spire_sequence():
            if s not in seen:
                seen.append(s)
        return seen

    def type_sequence(self) -> list[NumericalType | None]:
        return [numerical_type(s) for s in self.spire_sequence()]

    def cycle(self) -> list[Collection]:
        """Normalized spires from the base until the base recurs (inclusive)."""
        out = [self.base.normalized()]
        while True:
            out.append(out[-1].successor())
            if out[-1] == out[0]:
                return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Helix):
            return NotImplemented
        return self.base.normalized() in other.distinct_spires()

    def __hash__(self) -> int:
        return hash(frozenset(self.distinct_spires()))

    def __str__(self) -> str:
        return " -> ".join(str(numerical_type(s)) for s in self.cycle())


def _base_preference(s: Collection) -> tuple[bool, int]:
    # The type-I spire with the largest c becomes the base.
    t = numerical_type(s)
    return (t is not None and t.family == "I", t.c if t is not None else 0)


def group_into_helices(cs: Iterable[Collection]) -> list[Helix]:
    """Partition collections into helices under the spire-successor relation."""
    remaining = []
    for c in cs:
        n = c.normalized()
        if not is_exceptional(n):
            raise NotExceptionalError(f"collection {n} is not exceptional")
        if n not in remaining:
            remaining.append(n)
    helices = []
    while remaining:
        orbit = [remaining[0]]
        nxt = orbit[0].successor()
        while nxt != orbit[0]:
            orbit.append(nxt)
            nxt = nxt.successor()
        base = max(sorted(orbit, key=Collection.sort_key), key=_base_preference)
        helices.append(Helix(base))
        remaining = [c for c in remaining if c not in orbit]
    helices.sort(key=lambda h: (-len(h.distinct_spires()), h.base.sort_key()))
    return helices


def ext_dims(h: Helix, a: int, b: int) -> CohomologyRanks:
    """Graded dimension of Ext^*(E_a, E_b) inside the helix."""
    if a > b:
        raise ValueError("ext_dims needs a <= b")
    return cohomology_S(h.element(b) / h.element(a))


def ext_matrix(h: Helix) -> list[list[CohomologyRanks]]:
    """M[i][j] = Ext^*(E_i, E_{i+j}) for 0 <= i, j < period."""
    return [[ext_dims(h, i, i + j) for j in range(h.period)] for i in range(h.period)]


def collection_ext_table(c: Collection) -> list[list[CohomologyRanks]]:
    """Ext^*(E_i, E_j) for all i, j within a single collection."""
    E = c.entries
    return [[cohomology_S(E[j] / E[i]) for j in range(LENGTH)] for i in range(LENGTH)]


def orthogonal_neighbours(c: Collection) -> list[tuple[int, int]]:
    """Consecutive pairs with Ext vanishing in both directions (blocks)."""
    E = c.entries
    return [
        (i, i + 1)
        for i in range(LENGTH - 1)
        if cohomology_S(E[i + 1] / E[i]).is_zero() and cohomology_S(E[i] / E[i + 1]).is_zero()
    ]


def _chains(start: int, period: int):
    inner = range(start + 1, start + period)
    for k in range(period):
        for mid in combinations(inner, k):
            yield (start, *mid, start + period)


def delta(h: Helix, chain: Sequence[int]) -> int | None:
    """sum of e(E_{a_t}, E_{a_{t+1}}) + 1 - k, or None if some Ext vanishes entirely."""
    total = 0
    for a, b in zip(chain, chain[1:]):
        e = ext_dims(h, a, b).min_degree()
        if e is None:
            return None
        total += e
    return total + 1 - (len(chain) - 1)


def anticanonical_height(h: Helix) -> int:
    values = [
        d
        for a0 in range(h.period)
        for chain in _chains(a0, h.period)
        if (d := delta(h, chain)) is not None
    ]
    return min(values)


@dataclass(frozen=True)
class ReportLine:
    quantity: str
    value: str
    status: str  # "computed" or "cited"
    reason: str

    def to_json(self) -> dict:
        return {"quantity": self.quantity, "value": self.value, "status": self.status, "reason": self.reason}


def quasi_phantom_report(h: Helix) -> list[ReportLine]:
    """Invariants of the right orthogonal A to a spire of ``h``."""
    n_chars = len(Character.all())
    torsion = "(Z/5)^2" if n_chars == 25 else f"order {n_chars}"
    k0_rank = 2 + 2  # Z^2 + Pic(S)/tors
    height = anticanonical_height(h)
    hh_s = hochschild_cohomology()
    hh_a_zero = hochschild_homology_dim() - h.period
    lines = [
        ReportLine(
            "K0(S)",
            f"Z^{k0_rank} + {torsion}",
            "cited",
            "K0 = Z^2 + Pic(S) for surfaces with CH_0 = Z; Pic(S) = Z^2 + characters of G",
        ),
        ReportLine(
            "K0(A)",
            torsion,
            "computed",
            f"K0(S) minus the free part Z^{h.period} spanned by the {h.period} exceptional objects",
        ),
        ReportLine("K0(A) torsion order", str(n_chars), "computed", "number of characters of G"),
        ReportLine("dim HH_*(S)", str(hochschild_homology_dim()), "cited", "dim H^*(S) = b0 + b2 + b4 = 1 + 2 + 1"),
        ReportLine(
            "dim HH_*(A)",
            str(hh_a_zero),
            "computed",
            f"additivity: dim HH_*(S) - {h.period} exceptional objects",
        ),
        ReportLine("anticanonical height", str(height), "computed", "min over chains of delta"),
    ]
    if 0 <= height + (SURFACE_DIM - 2):
        lines.append(
            ReportLine(
                "HH^0(A)",
                "C" if hh_s[0] == 1 else f"C^{hh_s[0]}",
                "computed",
                f"HH^k(S) -> HH^k(A) is an isomorphism for k <= h + dim S - 2 = {height + SURFACE_DIM - 2}",
            )
        )
    return lines


def lattice_span_check(cs: Iterable[Collection]) -> bool:
    """True iff every entry lies in the subgroup generated by K(1,0) and K(0,1)."""
    return all(E.k_chi == TRIVIAL for c in cs for E in c.entries)
