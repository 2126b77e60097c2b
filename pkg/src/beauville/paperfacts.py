"""Embedded published values and the harness that re-derives each of them.

Every fact in ``data/paper_facts.json`` names a *query* (one of the producers
below), its arguments, the expected value and a citation string.  The harness
recomputes the value with the engine and compares it in a query-specific way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any, Callable

from .charpoly import GradedCharPoly
from .curves import (
    canonical_character,
    cohomology_poly,
    diagonal_action_is_free,
    get_action,
    h0_poly,
    h1_poly,
    k_character,
    k_cohomology_poly,
    stabilizer,
)
from .exceptional import (
    acyclic_set,
    acyclic_support,
    anticanonical_height,
    collection_ext_table,
    enumerate_acyclic_bundles,
    ext_matrix,
    group_into_helices,
    is_exceptional,
    is_exceptional_direct,
    lattice_span_check,
    lifts,
    NumericalType,
    orthogonal_neighbours,
    quasi_phantom_report,
    search_collections,
    type_bidegrees,
    Collection,
)
from .reports import named_helices
from .surface import CohomologyRanks, canonical_class, cohomology_S, hochschild_cohomology, intersection, parse_bundle


@dataclass(frozen=True)
class PaperFact:
    id: str
    description: str
    citation: str
    query: str
    args: dict
    expected: Any

    def __post_init__(self):
        if not self.citation:
            raise ValueError(f"fact {self.id} has no citation")


@dataclass(frozen=True)
class FactResult:
    fact: PaperFact
    computed: Any
    passed: bool
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "id": self.fact.id,
            "description": self.fact.description,
            "citation": self.fact.citation,
            "expected": self.fact.expected,
            "computed": self.computed,
            "passed": self.passed,
            **({"error": self.error} if self.error else {}),
        }


def load_facts() -> list[PaperFact]:
    text = resources.files("beauville").joinpath("data/paper_facts.json").read_text()
    return [PaperFact(**f) for f in json.loads(text)["facts"]]


# producers return JSON-friendly values; comparators default to equality


def _curve_poly(action: str, basis: str, n: int, part: str) -> str:
    a = get_action(action)
    if part == "h0":
        p = h0_poly(a, n)
    elif part == "h1":
        p = h1_poly(a, n)
    elif basis == "K":
        p = k_cohomology_poly(a, n)
    else:
        p = cohomology_poly(a, n)
    if basis == "K" and part != "all":
        p = p.twist(n * k_character(a))
    return p.to_text()


def _collections_json() -> list[dict]:
    return [{"type": str(c.numerical_type()), "entries": c.to_json()} for c in search_collections()]


def _certified_collections() -> bool:
    return all(is_exceptional(c) and is_exceptional_direct(c) for c in search_collections())


def _helices() -> list[list[str]]:
    return [[str(c.numerical_type()) for c in h.cycle()] for h in group_into_helices(search_collections())]


def _ranks_grid(grid: list[list[CohomologyRanks]]) -> list[list[str]]:
    return [[str(r) for r in row] for row in grid]


def _phantom(helix: str) -> dict:
    return {line.quantity: line.value for line in quasi_phantom_report(named_helices()[helix])}


PRODUCERS: dict[str, Callable[..., Any]] = {
    "curve_poly": _curve_poly,
    "canonical_character": lambda action: str(canonical_character(get_action(action))),
    "k_character": lambda action: str(k_character(get_action(action))),
    "stabilizer": lambda action, index: list(stabilizer(get_action(action), index).generator),
    "free": lambda a1, a2: diagonal_action_is_free(get_action(a1), get_action(a2)),
    "canonical_class": lambda: str(canonical_class().to_O_basis()),
    "intersection": lambda L1, L2: intersection(parse_bundle(L1), parse_bundle(L2)),
    "surface_ranks": lambda bundle: str(cohomology_S(parse_bundle(bundle))),
    "hochschild": hochschild_cohomology,
    "acyclic_set": lambda i, j: [str(c) for c in acyclic_set(i, j)],
    "acyclic_support": lambda: [list(b) for b in acyclic_support()],
    "acyclic_count": lambda: len(enumerate_acyclic_bundles()),
    "collections": _collections_json,
    "certified": _certified_collections,
    "lift_count": lambda type: len(lifts(NumericalType.parse(type))),
    "helices": _helices,
    "ext_matrix": lambda helix: _ranks_grid(ext_matrix(named_helices()[helix])),
    "collection_ext_table": lambda type: _ranks_grid(
        collection_ext_table(Collection.from_bidegrees(type_bidegrees(NumericalType.parse(type))))
    ),
    "height": lambda helix: anticanonical_height(named_helices()[helix]),
    "phantom": _phantom,
    "lattice_span": lambda: lattice_span_check(search_collections()),
    "blocks": lambda: sum(len(orthogonal_neighbours(c)) for c in search_collections()),
}


def _same_poly(computed: str, expected: str) -> bool:
    return GradedCharPoly.parse(computed, q_bound=2) == GradedCharPoly.parse(expected, q_bound=2)


def _collection_key(item: dict) -> tuple:
    return (str(NumericalType.parse(item["type"])), tuple(parse_bundle(e).sort_key() for e in item["entries"]))


def _same_collections(computed: list[dict], expected: list[dict]) -> bool:
    return sorted(map(_collection_key, computed)) == sorted(map(_collection_key, expected))


def _same_sets(computed: list, expected: list) -> bool:
    return sorted(map(str, computed)) == sorted(map(str, expected))


def _same_phantom(computed: dict, expected: dict) -> bool:
    return all(computed.get(k) == v for k, v in expected.items())


COMPARATORS: dict[str, Callable[[Any, Any], bool]] = {
    "curve_poly": _same_poly,
    "surface_ranks": lambda c, e: CohomologyRanks.parse(c) == CohomologyRanks.parse(e),
    "acyclic_set": _same_sets,
    "acyclic_support": _same_sets,
    "collections": _same_collections,
    "helices": _same_sets,
    "phantom": _same_phantom,
}


def check_fact(fact: PaperFact) -> FactResult:
    try:
        computed = PRODUCERS[fact.query](**fact.args)
        compare = COMPARATORS.get(fact.query, lambda c, e: c == e)
        return FactResult(fact, computed, bool(compare(computed, fact.expected)))
    except Exception as exc:  # a crashing producer is a failed fact, not a crashed harness
        return FactResult(fact, None, False, f"{type(exc).__name__}: {exc}")


def run_paper_check(facts: list[PaperFact] | None = None) -> list[FactResult]:
    return [check_fact(f) for f in (load_facts() if facts is None else facts)]
