"""Graded character polynomials for G = (Z/5)^2.

The class of a Z_+-graded G-representation lives in Z[q, x, y]/(x^5 - 1, y^5 - 1).
A monomial ``q^a x^i y^j`` stands for the character ``[i, j]`` placed in
cohomological degree ``a``.  Values are immutable and every operation returns
a new polynomial in canonical sparse form (no stored zeros, terms ordered by
q, then i, then j).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

ORDER = 5
INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


class CoefficientOverflowError(OverflowError):
    """A coefficient left the signed 64-bit range."""


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def _checked(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise CoefficientOverflowError(f"coefficient {value} does not fit in int64")
    return value


@dataclass(frozen=True, order=True)
class Character:
    """The character ``e1 -> zeta^i, e2 -> zeta^j``, written ``[i,j]``."""

    i: int = 0
    j: int = 0

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % ORDER)
        object.__setattr__(self, "j", self.j % ORDER)

    @classmethod
    def all(cls) -> list[Character]:
        return [cls(i, j) for i in range(ORDER) for j in range(ORDER)]

    def __add__(self, other: Character) -> Character:
        return Character(self.i + other.i, self.j + other.j)

    def __sub__(self, other: Character) -> Character:
        return Character(self.i - other.i, self.j - other.j)

    def __neg__(self) -> Character:
        return Character(-self.i, -self.j)

    def __mul__(self, k: int) -> Character:
        return Character(k * self.i, k * self.j)

    __rmul__ = __mul__

    def is_trivial(self) -> bool:
        return self.i == 0 and self.j == 0

    def __str__(self) -> str:
        return f"[{self.i},{self.j}]"

    def to_list(self) -> list[int]:
        return [self.i, self.j]


TRIVIAL = Character(0, 0)

Key = tuple[int, Character]


class GradedCharPoly:
    """Element of Z[q,x,y]/(x^5-1, y^5-1) with q-degree at most ``q_bound``."""

    __slots__ = ("_coeffs", "_q_bound", "_hash")

    def __init__(self, coeffs: Mapping[Key, int] | Iterable[tuple[Key, int]] = (), q_bound: int = 0):
        if q_bound < 0:
            raise ValueError("q_bound must be non-negative")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Key, int] = {}
        for (q, chi), c in items:
            if not isinstance(chi, Character):
                chi = Character(*chi)
            if q < 0 or q > q_bound:
                raise ValueError(f"q-degree {q} outside [0, {q_bound}]")
            acc[(q, chi)] = _checked(acc.get((q, chi), 0) + c)
        self._coeffs = {k: acc[k] for k in sorted(acc) if acc[k] != 0}
        self._q_bound = q_bound
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, q_bound: int = 0) -> GradedCharPoly:
        return cls((), q_bound)

    @classmethod
    def monomial(cls, q: int = 0, chi: Character = TRIVIAL, c: int = 1, q_bound: int | None = None) -> GradedCharPoly:
        return cls({(q, chi): c}, q if q_bound is None else q_bound)

    @classmethod
    def from_characters(cls, chars: Iterable[Character], q: int = 0, q_bound: int | None = None) -> GradedCharPoly:
        """Sum of the given characters (with multiplicity) in degree ``q``."""
        acc: dict[Key, int] = {}
        for chi in chars:
            acc[(q, chi)] = acc.get((q, chi), 0) + 1
        return cls(acc, q if q_bound is None else q_bound)

    # basic protocol

    @property
    def q_bound(self) -> int:
        return self._q_bound

    def terms(self) -> list[tuple[int, Character, int]]:
        """Canonically ordered ``(q, chi, coefficient)`` triples."""
        return [(q, chi, c) for (q, chi), c in self._coeffs.items()]

    def __iter__(self) -> Iterator[tuple[int, Character, int]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedCharPoly):
            return self._coeffs == other._coeffs
        if other == 0:
            return not self._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"GradedCharPoly({self.to_text()!r}, q_bound={self._q_bound})"

    def __str__(self) -> str:
        return self.to_text()

    # ring structure

    def __add__(self, other: GradedCharPoly) -> GradedCharPoly:
        return add(self, other)

    def __neg__(self) -> GradedCharPoly:
        return GradedCharPoly({k: -c for k, c in self._coeffs.items()}, self._q_bound)

    def __sub__(self, other: GradedCharPoly) -> GradedCharPoly:
        return add(self, -other)

    def __mul__(self, other: GradedCharPoly) -> GradedCharPoly:
        return mul(self, other)

    # queries

    def coefficient(self, q: int, chi: Character) -> int:
        return self._coeffs.get((q, chi), 0)

    def degree_part(self, q: int) -> GradedCharPoly:
        return GradedCharPoly({k: c for k, c in self._coeffs.items() if k[0] == q}, self._q_bound)

    def shift(self, dq: int, q_bound: int | None = None) -> GradedCharPoly:
        """Move every term up by ``dq`` cohomological degrees."""
        bound = self._q_bound + dq if q_bound is None else q_bound
        return GradedCharPoly({(q + dq, chi): c for (q, chi), c in self._coeffs.items()}, bound)

    def with_q_bound(self, q_bound: int) -> GradedCharPoly:
        return GradedCharPoly(self._coeffs, q_bound)

    def dual(self) -> GradedCharPoly:
        return dual(self)

    def twist(self, chi: Character) -> GradedCharPoly:
        return twist(self, chi)

    def substitute(self, image_of_x: Character, image_of_y: Character) -> GradedCharPoly:
        return substitute(self, image_of_x, image_of_y)

    def character_support(self) -> frozenset[Character]:
        return character_support(self)

    def dims_by_degree(self) -> list[int]:
        return dims_by_degree(self)

    # serialization

    def to_text(self) -> str:
        return format_poly(self)

    def to_json(self) -> dict:
        return {
            "q_bound": self._q_bound,
            "terms": [{"q": q, "x": chi.i, "y": chi.j, "c": c} for q, chi, c in self.terms()],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> GradedCharPoly:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            [((t["q"], Character(t["x"], t["y"])), t["c"]) for t in data["terms"]],
            data["q_bound"],
        )

    @classmethod
    def parse(cls, text: str, q_bound: int | None = None) -> GradedCharPoly:
        return parse_poly(text, q_bound)


def add(p: GradedCharPoly, r: GradedCharPoly) -> GradedCharPoly:
    acc = dict(p._coeffs)
    for k, c in r._coeffs.items():
        acc[k] = _checked(acc.get(k, 0) + c)
    return GradedCharPoly(acc, max(p.q_bound, r.q_bound))


def mul(p: GradedCharPoly, r: GradedCharPoly, q_bound: int | None = None) -> GradedCharPoly:
    """Convolution product; the result bound defaults to the sum of the bounds."""
    bound = p.q_bound + r.q_bound if q_bound is None else q_bound
    acc: dict[Key, int] = {}
    for (q1, c1), a in p._coeffs.items():
        for (q2, c2), b in r._coeffs.items():
            key = (q1 + q2, c1 + c2)
            acc[key] = _checked(acc.get(key, 0) + _checked(a * b))
    return GradedCharPoly(acc, bound)


def dual(p: GradedCharPoly) -> GradedCharPoly:
    """Substitute x -> x^4, y -> y^4; the q-grading is left alone."""
    return GradedCharPoly({(q, -chi): c for (q, chi), c in p._coeffs.items()}, p.q_bound)


def substitute(p: GradedCharPoly, image_of_x: Character, image_of_y: Character) -> GradedCharPoly:
    acc: dict[Key, int] = {}
    for (q, chi), c in p._coeffs.items():
        key = (q, chi.i * image_of_x + chi.j * image_of_y)
        acc[key] = _checked(acc.get(key, 0) + c)
    return GradedCharPoly(acc, p.q_bound)


def twist(p: GradedCharPoly, chi: Character) -> GradedCharPoly:
    return GradedCharPoly({(q, c + chi): a for (q, c), a in p._coeffs.items()}, p.q_bound)


def coefficient(p: GradedCharPoly, q_degree: int, chi: Character) -> int:
    return p.coefficient(q_degree, chi)


def character_support(p: GradedCharPoly) -> frozenset[Character]:
    return frozenset(chi for (_, chi) in p._coeffs)


def dims_by_degree(p: GradedCharPoly) -> list[int]:
    dims = [0] * (p.q_bound + 1)
    for (q, _), c in p._coeffs.items():
        dims[q] += c
    return dims


# text form

def _format_monomial(q: int, chi: Character) -> str:
    factors = []
    for name, e in (("q", q), ("x", chi.i), ("y", chi.j)):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_poly(p: GradedCharPoly) -> str:
    """Canonical text form, e.g. ``3+3q`` or ``q*x^4*y^4``."""
    if not p:
        return "0"
    out = []
    for q, chi, c in p.terms():
        mono = _format_monomial(q, chi)
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+" if c > 0 else "-") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[qxy])(?:\^(?P<exp>\d+))?|(?P<op>[+\-*]))")


def parse_poly(text: str, q_bound: int | None = None) -> GradedCharPoly:
    """Parse the canonical text form (also accepts ``3*q`` and spaces)."""
    pos = 0
    terms: list[tuple[int, Character, int]] = []
    sign = 1
    coeff: int | None = None
    exps = {"q": 0, "x": 0, "y": 0}
    have_factor = False
    expect_factor = True

    def flush(at: int):
        nonlocal coeff, exps, have_factor
        if not have_factor:
            raise PolyParseError("expected a term", text, at)
        c = sign * (1 if coeff is None else coeff)
        terms.append((exps["q"], Character(exps["x"], exps["y"]), c))
        coeff, exps, have_factor = None, {"q": 0, "x": 0, "y": 0}, False

    stripped = text.strip()
    if stripped == "0":
        return GradedCharPoly.zero(q_bound or 0)
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError("unexpected character", text, pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group("num") is not None:
            if not expect_factor or coeff is not None or have_factor:
                raise PolyParseError("misplaced number", text, start)
            coeff = int(m.group("num"))
            have_factor = True
            expect_factor = False
        elif m.group("var") is not None:
            var = m.group("var")
            exps[var] += int(m.group("exp")) if m.group("exp") else 1
            have_factor = True
            expect_factor = False
        else:
            op = m.group("op")
            if op == "*":
                if expect_factor:
                    raise PolyParseError("dangling '*'", text, start)
                expect_factor = True
            else:
                if have_factor:
                    if expect_factor:
                        raise PolyParseError("dangling '*'", text, start)
                    flush(start)
                elif terms or coeff is not None:
                    raise PolyParseError("misplaced sign", text, start)
                sign = -1 if op == "-" else 1
                expect_factor = True
        pos = m.end()
    if expect_factor and have_factor:
        raise PolyParseError("dangling '*'", text, len(text))
    flush(len(text))
    bound = max([q for q, _, _ in terms], default=0) if q_bound is None else q_bound
    return GradedCharPoly([((q, chi), c) for q, chi, c in terms], bound)
