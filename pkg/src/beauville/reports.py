"""Presentation layer: naming, ordering and rendering of engine results."""

from __future__ import annotations

import json
from typing import Any, Sequence

from .exceptional import Collection, Helix, group_into_helices, numerical_type, search_collections
from .surface import CohomologyRanks, LineBundle

FORMATS = ("text", "markdown", "json")

# Order in which the collections and helices are displayed in the literature.
PUBLISHED_ORDER = ("I_1", "IV_1", "I_-1", "IV_-1", "II_0", "I_0")
HELIX_MARKERS = {"H1": "I_1", "H2": "I_0"}


def published_order(cs: Sequence[Collection]) -> list[Collection]:
    def key(c: Collection):
        label = str(numerical_type(c))
        return (PUBLISHED_ORDER.index(label) if label in PUBLISHED_ORDER else len(PUBLISHED_ORDER), c.sort_key())

    return sorted(cs, key=key)


def named_helices() -> dict[str, Helix]:
    """H1 is the helix through I_1, H2 the one through I_0."""
    helices = group_into_helices(search_collections())
    named: dict[str, Helix] = {}
    for h in helices:
        labels = {str(numerical_type(s)) for s in h.distinct_spires()}
        for name, marker in HELIX_MARKERS.items():
            if marker in labels:
                named[name] = h
    for k, h in enumerate(h for h in helices if h not in named.values()):
        named[f"H{len(HELIX_MARKERS) + k + 1}"] = h
    return named


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _grid(rows: list[list[str]], header: list[str], fmt: str) -> str:
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines)
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    return "\n".join("  ".join(x.rjust(w) for x, w in zip(r, widths)) for r in [header, *rows])


def render_table(table: dict[tuple[int, int], CohomologyRanks], fmt: str, basis: str = "K") -> str:
    """Rows are j (descending) and columns are i (ascending), as in the printed table."""
    if fmt == "json":
        items = sorted(table.items(), key=lambda kv: (-kv[0][1], kv[0][0]))
        return dumps([{"bundle": f"{basis}({i},{j})", **r.to_json()} for (i, j), r in items])
    if not table:
        return ""
    i_values = sorted({i for i, _ in table})
    j_values = sorted({j for _, j in table}, reverse=True)
    header = ["j \\ i"] + [str(i) for i in i_values]
    rows = [[str(j)] + [str(table[(i, j)]) for i in i_values] for j in j_values]
    return _grid(rows, header, fmt)


def render_matrix(matrix: list[list[CohomologyRanks]], fmt: str, title: str = "") -> str:
    cells = [[str(x) for x in row] for row in matrix]
    if fmt == "json":
        return dumps(cells)
    header = [title or "i \\ j"] + [str(j) for j in range(len(cells[0]))]
    return _grid([[str(i)] + row for i, row in enumerate(cells)], header, fmt)


def render_collections(cs: Sequence[Collection], fmt: str) -> str:
    rows = [[str(numerical_type(c)), *[str(E.to_K_basis()) for E in c.entries]] for c in cs]
    if fmt == "json":
        return dumps([{"type": r[0], "entries": r[1:]} for r in rows])
    return _grid(rows, ["type", "E0", "E1", "E2", "E3"], fmt)


def render_bundles(bundles: Sequence[LineBundle], fmt: str) -> str:
    if fmt == "json":
        return dumps([str(L.to_K_basis()) for L in bundles])
    body = "\n".join(str(L.to_K_basis()) for L in bundles)
    return body + f"\n{len(bundles)} acyclic line bundles"
