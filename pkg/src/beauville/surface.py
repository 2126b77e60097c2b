"""Line bundles and their cohomology on the Beauville surface S = (C x C')/G.

Every line bundle on S is ``O(a,b)(chi)``: a bidegree pulled back from the two
curve factors plus a torsion character.  The K-basis ``K(a,b)`` uses the square
roots of the curve canonical bundles instead of ``O(1)``; the two bases differ
only by a character offset.  Internally a :class:`LineBundle` is always stored
in the O-basis and the K-basis is a view used for display.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple

from . import faults
from .charpoly import TRIVIAL, Character, GradedCharPoly
from .curves import C, CPRIME, canonical_character, cohomology_poly, k_character

SURFACE_DIM = 2


class BundleParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


def k_offset(a: int, b: int) -> Character:
    """Character c with K(a,b) = O(a,b)(c)."""
    eta1, eta2 = k_character(C), k_character(CPRIME)
    if faults.enabled("k-offset"):
        eta1, eta2 = eta2, eta1
    return a * eta1 + b * eta2


@dataclass(frozen=True)
class LineBundle:
    """A line bundle ``O(a,b)(chi)``; ``basis`` only controls how it prints."""

    a: int
    b: int
    chi: Character = TRIVIAL
    basis: str = field(default="O", compare=False)

    def __post_init__(self):
        if not isinstance(self.chi, Character):
            object.__setattr__(self, "chi", Character(*self.chi))
        if self.basis not in ("O", "K"):
            raise ValueError("basis must be 'O' or 'K'")

    @classmethod
    def O(cls, a: int, b: int, chi: Character | tuple[int, int] = TRIVIAL) -> LineBundle:
        return cls(a, b, Character(*chi) if isinstance(chi, tuple) else chi, "O")

    @classmethod
    def K(cls, a: int, b: int, chi: Character | tuple[int, int] = TRIVIAL) -> LineBundle:
        chi = Character(*chi) if isinstance(chi, tuple) else chi
        return cls(a, b, chi + k_offset(a, b), "K")

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def k_chi(self) -> Character:
        """The torsion character when written in the K-basis."""
        return self.chi - k_offset(self.a, self.b)

    @property
    def display_chi(self) -> Character:
        return self.k_chi if self.basis == "K" else self.chi

    def to_O_basis(self) -> LineBundle:
        return LineBundle(self.a, self.b, self.chi, "O")

    def to_K_basis(self) -> LineBundle:
        return LineBundle(self.a, self.b, self.chi, "K")

    def tensor(self, other: LineBundle) -> LineBundle:
        return LineBundle(self.a + other.a, self.b + other.b, self.chi + other.chi, self.basis)

    def dual(self) -> LineBundle:
        return LineBundle(-self.a, -self.b, -self.chi, self.basis)

    def twist(self, chi: Character) -> LineBundle:
        return LineBundle(self.a, self.b, self.chi + chi, self.basis)

    __mul__ = tensor

    def __truediv__(self, other: LineBundle) -> LineBundle:
        """``L / M`` is ``L (x) M^*``."""
        return self.tensor(other.dual())

    def __pow__(self, k: int) -> LineBundle:
        return LineBundle(k * self.a, k * self.b, k * self.chi, self.basis)

    def __str__(self) -> str:
        return f"{self.basis}({self.a},{self.b}){self.display_chi}"

    def sort_key(self) -> tuple:
        return (self.a, self.b, self.k_chi.i, self.k_chi.j)


def O(a: int, b: int, chi=TRIVIAL) -> LineBundle:
    return LineBundle.O(a, b, chi)


def K(a: int, b: int, chi=TRIVIAL) -> LineBundle:
    return LineBundle.K(a, b, chi)


_BUNDLE = re.compile(r"\s*(?P<basis>[OK])\s*\(\s*(?P<a>[+-]?\d+)\s*,\s*(?P<b>[+-]?\d+)\s*\)\s*")
_CHAR = re.compile(r"\[\s*(?P<i>[+-]?\d+)\s*,\s*(?P<j>[+-]?\d+)\s*\]\s*")


def parse_bundle(text: str) -> LineBundle:
    """Parse ``O(a,b)[i,j]`` or ``K(a,b)[i,j]``; the character suffix is optional.

    Character entries are residues mod 5 and any integer is accepted.
    """
    m = _BUNDLE.match(text)
    if not m:
        pos = len(text) - len(text.lstrip())
        if pos >= len(text) or text[pos] not in "OK":
            raise BundleParseError("expected 'O(' or 'K('", text, pos)
        raise BundleParseError("malformed bidegree", text, pos + 1)
    a, b = int(m.group("a")), int(m.group("b"))
    pos = m.end()
    chi = TRIVIAL
    if pos < len(text):
        if text[pos] != "[":
            raise BundleParseError("expected '[' or end of input", text, pos)
        cm = _CHAR.match(text, pos)
        if not cm:
            raise BundleParseError("malformed character bracket", text, pos)
        chi = Character(int(cm.group("i")), int(cm.group("j")))
        pos = cm.end()
        if pos < len(text):
            raise BundleParseError("trailing input", text, pos)
    return LineBundle.K(a, b, chi) if m.group("basis") == "K" else LineBundle.O(a, b, chi)


class CohomologyRanks(NamedTuple):
    h0: int
    h1: int
    h2: int

    @property
    def euler(self) -> int:
        return self.h0 - self.h1 + self.h2

    def reversed(self) -> CohomologyRanks:
        return CohomologyRanks(self.h2, self.h1, self.h0)

    def is_zero(self) -> bool:
        return self.h0 == self.h1 == self.h2 == 0

    def min_degree(self) -> int | None:
        """Lowest degree with nonzero cohomology, or None if everything vanishes."""
        for p, h in enumerate(self):
            if h:
                return p
        return None

    def to_text(self) -> str:
        """Rank polynomial in the layout of the printed tables: constant, q^2, then q."""
        parts = []
        for coef, mono in ((self.h0, ""), (self.h2, "q^2"), (self.h1, "q")):
            if coef:
                parts.append(mono if coef == 1 and mono else f"{coef}{mono}")
        return "+".join(parts) if parts else "0"

    __str__ = to_text

    @classmethod
    def parse(cls, text: str) -> CohomologyRanks:
        dims = GradedCharPoly.parse(text, q_bound=2).dims_by_degree()
        return cls(*dims)

    def to_json(self) -> dict:
        return {"h0": self.h0, "h1": self.h1, "h2": self.h2}


@lru_cache(maxsize=4096)
def _kunneth_untwisted(a: int, b: int, fault_state: frozenset) -> GradedCharPoly:
    from .charpoly import mul

    return mul(cohomology_poly(C, a), cohomology_poly(CPRIME, b), q_bound=2)


def kunneth_poly(L: LineBundle) -> GradedCharPoly:
    """[H^*(T, pi^*L)] as a graded G-representation."""
    return _kunneth_untwisted(L.a, L.b, faults.active()).twist(L.chi)


def cohomology_S(L: LineBundle) -> CohomologyRanks:
    """Ranks of H^p(S, L): the G-invariant part of the cohomology upstairs."""
    p = _kunneth_untwisted(L.a, L.b, faults.active())
    return CohomologyRanks(*(p.coefficient(q, -L.chi) for q in range(3)))


def euler_char(L: LineBundle) -> int:
    return (L.a - 1) * (L.b - 1)


def intersection(L1: LineBundle, L2: LineBundle) -> int:
    return L1.a * L2.b + L1.b * L2.a


def canonical_class() -> LineBundle:
    return LineBundle(2, 2, canonical_character(C) + canonical_character(CPRIME), "K")


def serre_dual(L: LineBundle) -> LineBundle:
    """omega_S (x) L^*, printed in the basis of ``L``."""
    w = canonical_class()
    return LineBundle(w.a - L.a, w.b - L.b, w.chi - L.chi, L.basis)


def hochschild_cohomology() -> list[int]:
    """dim HH^k(S) = sum_{p+q=k} h^p(Lambda^q T_S) for k = 0..4."""
    exterior = {
        0: [K(0, 0)],
        1: [K(-2, 0), K(0, -2)],
        2: [K(-2, -2)],
    }
    hh = [0] * (2 * SURFACE_DIM + 1)
    for q, bundles in exterior.items():
        for L in bundles:
            for p, h in enumerate(cohomology_S(L)):
                hh[p + q] += h
    return hh


def hochschild_homology_dim() -> int:
    """dim HH_*(S) = dim H^*(S) = b0 + b2 + b4 with b2 = 2 (not computed here)."""
    return 1 + 2 + 1


DEFAULT_RANGE = ((-5, 7), (-5, 7))


def cohomology_table(
    i_range: tuple[int, int] = DEFAULT_RANGE[0],
    j_range: tuple[int, int] = DEFAULT_RANGE[1],
    basis: str = "K",
    chi: Character = TRIVIAL,
) -> dict[tuple[int, int], CohomologyRanks]:
    """Ranks of ``K(i,j)(chi)`` (or ``O(i,j)(chi)``) over an inclusive box."""
    make = LineBundle.K if basis == "K" else LineBundle.O
    return {
        (i, j): cohomology_S(make(i, j, chi))
        for j in range(j_range[1], j_range[0] - 1, -1)
        for i in range(i_range[0], i_range[1] + 1)
    }


def bundles_in_box(i_range: tuple[int, int], j_range: tuple[int, int], basis: str = "K") -> Iterable[LineBundle]:
    make = LineBundle.K if basis == "K" else LineBundle.O
    for i in range(i_range[0], i_range[1] + 1):
        for j in range(j_range[0], j_range[1] + 1):
            for chi in Character.all():
                yield make(i, j, chi)
