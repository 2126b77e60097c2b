"""Equivariant cohomology of line bundles on (Z/5)^2-equivariant Fermat quintics.

A :class:`CurveAction` records, for each generator ``e1, e2`` of G, the power
of ``zeta_5`` by which it scales the coordinates X, Y, Z.  The character of a
monomial ``X^a Y^b Z^c`` is then read off the exponent matrix, and every
cohomology class below is expressed through that single rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import faults
from .charpoly import ORDER, TRIVIAL, Character, GradedCharPoly

COORDINATES = ("X", "Y", "Z")


@dataclass(frozen=True)
class CurveAction:
    name: str
    exponents: tuple[tuple[int, int, int], tuple[int, int, int]]

    def __post_init__(self):
        rows = tuple(tuple(int(e) % ORDER for e in row) for row in self.exponents)
        if len(rows) != 2 or any(len(r) != 3 for r in rows):
            raise ValueError("exponent matrix must be 2x3")
        object.__setattr__(self, "exponents", rows)

    def coordinate_character(self, k: int) -> Character:
        """Character of the coordinate function X, Y or Z (k = 0, 1, 2)."""
        return Character(self.exponents[0][k], self.exponents[1][k])

    def monomial_character(self, a: int, b: int, c: int) -> Character:
        return a * self.coordinate_character(0) + b * self.coordinate_character(1) + c * self.coordinate_character(2)

    def scaling(self, g: tuple[int, int], k: int) -> int:
        """Exponent of zeta_5 by which ``g = g1*e1 + g2*e2`` scales coordinate k."""
        return (g[0] * self.exponents[0][k] + g[1] * self.exponents[1][k]) % ORDER

    def kernel(self) -> list[tuple[int, int]]:
        """Group elements acting trivially on P^2 (scaling all coordinates equally)."""
        return [
            g
            for g in product(range(ORDER), repeat=2)
            if self.scaling(g, 0) == self.scaling(g, 1) == self.scaling(g, 2)
        ]

    def is_faithful(self) -> bool:
        # X^5+Y^5+Z^5 is invariant under every diagonal action, so faithfulness is the only condition.
        return self.kernel() == [(0, 0)]

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.exponents]


C = CurveAction("C", ((1, 0, 0), (0, 1, 0)))
CPRIME = CurveAction("Cprime", ((2, 4, 0), (1, 3, 0)))
ACTIONS = {"C": C, "Cprime": CPRIME}
for _a in ACTIONS.values():
    if not _a.is_faithful():
        raise RuntimeError(f"built-in action {_a.name} is not faithful")


def get_action(name: str) -> CurveAction:
    try:
        return ACTIONS[name]
    except KeyError:
        raise ValueError(f"unknown curve action {name!r}; choose from {sorted(ACTIONS)}") from None


def _plane_monomials(action: CurveAction, n: int) -> list[Character]:
    if n < 0:
        return []
    return [action.monomial_character(a, b, n - a - b) for a in range(n + 1) for b in range(n + 1 - a)]


@lru_cache(maxsize=None)
def _h0(action: CurveAction, n: int, broken: bool) -> GradedCharPoly:
    sections = GradedCharPoly.from_characters(_plane_monomials(action, n), q_bound=1)
    # 0 -> O_P2(n-5) -> O_P2(n) -> O_C(n) -> 0; the quintic itself is invariant.
    relations = GradedCharPoly.from_characters(_plane_monomials(action, n - (6 if broken else 5)), q_bound=1)
    return sections - relations


def h0_poly(action: CurveAction, n: int) -> GradedCharPoly:
    """[H^0(C, O(n))] in q-degree 0."""
    return _h0(action, n, faults.enabled("restriction"))


def canonical_character(action: CurveAction) -> Character:
    """Character of det V^*, so that the canonical bundle is O(2) twisted by it."""
    kappa = action.coordinate_character(0) + action.coordinate_character(1) + action.coordinate_character(2)
    if faults.enabled("canonical-character"):
        kappa = kappa + Character(1, 0)
    return kappa


def h1_poly(action: CurveAction, n: int) -> GradedCharPoly:
    """[H^1(C, O(n))] by equivariant Serre duality, placed in q-degree 1."""
    return h0_poly(action, 2 - n).dual().twist(-canonical_character(action)).shift(1, q_bound=1)


def k_character(action: CurveAction) -> Character:
    """The square root of the canonical character (3 inverts 2 mod 5)."""
    return 3 * canonical_character(action)


def cohomology_poly(action: CurveAction, n: int, chi: Character = TRIVIAL) -> GradedCharPoly:
    """[H^*(C, O(n)(chi))] with q marking H^1."""
    return (h0_poly(action, n) + h1_poly(action, n)).twist(chi)


def k_cohomology_poly(action: CurveAction, m: int) -> GradedCharPoly:
    """[H^*(C, K(m))] where K(1) is the square root of the canonical bundle."""
    return cohomology_poly(action, m, m * k_character(action))


@dataclass(frozen=True)
class StabilizerSubgroup:
    """A cyclic subgroup of (Z/5)^2, stored by a normalized generator.

    The generator has first nonzero coordinate 1; ``(0, 0)`` is the trivial group.
    """

    generator: tuple[int, int]

    def __post_init__(self):
        g = (self.generator[0] % ORDER, self.generator[1] % ORDER)
        if g != (0, 0):
            lead = g[0] if g[0] else g[1]
            inv = pow(lead, -1, ORDER)
            g = (g[0] * inv % ORDER, g[1] * inv % ORDER)
        object.__setattr__(self, "generator", g)

    @classmethod
    def from_elements(cls, elements) -> StabilizerSubgroup:
        elements = set(elements)
        nonzero = sorted(e for e in elements if e != (0, 0))
        if not nonzero:
            return cls((0, 0))
        sub = cls(nonzero[0])
        if sub.elements() != frozenset(elements):
            raise ValueError("elements do not form a cyclic subgroup")
        return sub

    def elements(self) -> frozenset[tuple[int, int]]:
        a, b = self.generator
        return frozenset(((k * a) % ORDER, (k * b) % ORDER) for k in range(ORDER))

    @property
    def order(self) -> int:
        return len(self.elements())

    def __and__(self, other: StabilizerSubgroup) -> StabilizerSubgroup:
        return StabilizerSubgroup.from_elements(self.elements() & other.elements())

    def __str__(self) -> str:
        a, b = self.generator
        if (a, b) == (0, 0):
            return "0"
        parts = []
        for coef, name in ((a, "e1"), (b, "e2")):
            if coef:
                parts.append(name if coef == 1 else f"{coef}{name}")
        return "Z/5*(" + "+".join(parts) + ")"


def stabilizer(action: CurveAction, ramification_index: int) -> StabilizerSubgroup:
    """Stabilizer of the points of D_k, the orbit cut out by the k-th coordinate."""
    if ramification_index not in (1, 2, 3):
        raise ValueError("ramification index must be 1, 2 or 3")
    zero = ramification_index - 1
    a, b = (k for k in range(3) if k != zero)
    return StabilizerSubgroup.from_elements(
        g for g in product(range(ORDER), repeat=2) if action.scaling(g, a) == action.scaling(g, b)
    )


def diagonal_action_is_free(a1: CurveAction, a2: CurveAction) -> bool:
    return all(
        (stabilizer(a1, i) & stabilizer(a2, j)).order == 1 for i in (1, 2, 3) for j in (1, 2, 3)
    )
