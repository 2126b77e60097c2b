"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The printed lines are also collected in ``RESULTS`` and repeated in the
terminal summary (see conftest.py), so they survive pytest's output capture.
"""

from itertools import product

from beauville.charpoly import Character, GradedCharPoly
from beauville.cli import main
from beauville.curves import C, CPRIME, cohomology_poly, diagonal_action_is_free, h0_poly, stabilizer
from beauville.exceptional import (
    NumericalType,
    anticanonical_height,
    enumerate_acyclic_bundles,
    group_into_helices,
    is_exceptional,
    is_exceptional_direct,
    lifts,
    numerical_type,
    quasi_phantom_report,
    search_collections,
)
from beauville.faults import FAULTS
from beauville.paperfacts import check_fact, load_facts
from beauville.reports import named_helices
from beauville.surface import K, cohomology_S, hochschild_cohomology, serre_dual

RESULTS: list[str] = []


def record(number: int, title: str, failures: list[str]) -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"{status} criterion {number:>2}: {title}"
    if failures:
        line += " [" + "; ".join(failures[:5]) + (" ..." if len(failures) > 5 else "") + "]"
    print(line)
    RESULTS.append(line)
    assert not failures, line


def failing_facts(predicate) -> list[str]:
    return [f"{r.fact.id}: computed {r.computed!r}" for r in map(check_fact, filter(predicate, load_facts())) if not r.passed]


def test_criterion_01_curve_tables():
    failures = failing_facts(lambda f: f.query == "curve_poly")
    # below degree 5 the restriction is injective: H^0 is every plane monomial once
    for n in range(4):
        expected = GradedCharPoly.from_characters(
            [C.monomial_character(a, b, n - a - b) for a in range(n + 1) for b in range(n + 1 - a)], q_bound=1
        )
        if h0_poly(C, n) != expected:
            failures.append(f"H^0(C,O({n}))")
    record(1, "curve tables and the eight K(n) polynomials match exactly", failures)


def test_criterion_02_surface_table():
    facts = [f for f in load_facts() if f.query == "surface_ranks"]
    failures = failing_facts(lambda f: f.query == "surface_ranks")
    cells = {f.args["bundle"] for f in facts}
    for f in facts:
        L = K(*map(int, f.args["bundle"][2:-1].split(",")))
        partner = serre_dual(L)
        if cohomology_S(partner) != cohomology_S(L).reversed():
            failures.append(f"Serre pair {L} / {partner}")
    if len(cells) < 30:
        failures.append(f"only {len(cells)} cells checked")
    record(2, f"all {len(cells)} printed surface-table cells reproduced, Serre pairs consistent", failures)


def test_criterion_03_acyclic_classification():
    failures = failing_facts(lambda f: f.query in ("acyclic_set", "acyclic_support", "acyclic_count"))
    bundles = enumerate_acyclic_bundles()
    if len(bundles) != 39:
        failures.append(f"{len(bundles)} acyclic bundles")
    if len({L.bidegree for L in bundles}) != 11:
        failures.append("support is not 11 bidegrees")
    record(3, "11 acyclic sets, 39 acyclic bundles, A(K(1,5)) = A(K(4,1)) = empty", failures)


def test_criterion_04_exceptional_search():
    failures = failing_facts(lambda f: f.query in ("collections", "certified", "lift_count"))
    found = search_collections()
    if len(found) != 6:
        failures.append(f"{len(found)} collections")
    failures += [str(c) for c in found if not (is_exceptional(c) and is_exceptional_direct(c))]
    for c in (1, 2):
        if lifts(NumericalType("II", c)):
            failures.append(f"II_{c} has lifts")
    record(4, "six collections, each certified twice; II_1 and II_2 have no lifts", failures)


def test_criterion_05_helices():
    failures = failing_facts(lambda f: f.query == "helices")
    hs = group_into_helices(search_collections())
    if len(hs) != 2:
        failures.append(f"{len(hs)} helices")
    sequences = sorted([str(numerical_type(s)) for s in h.cycle()] for h in hs)
    if sequences != sorted([["I_1", "IV_1", "I_-1", "IV_-1", "I_1"], ["I_0", "II_0", "I_0"]]):
        failures.append(f"sequences {sequences}")
    for h in hs:
        failures += [f"spire {a} of {h}" for a in range(-4, 8) if not is_exceptional(h.spire(a))]
    record(5, "two helices with the published spire sequences, every spire exceptional", failures)


def test_criterion_06_ext_matrices():
    failures = failing_facts(lambda f: f.query in ("ext_matrix", "collection_ext_table"))
    record(6, "Ext matrices of both helices and the I_-1 Ext table match entry for entry", failures)


def test_criterion_07_heights():
    hs = named_helices()
    got = {name: anticanonical_height(h) for name, h in hs.items()}
    failures = [] if got == {"H1": 2, "H2": 1} else [f"heights {got}"]
    record(7, "h(H1) = 2, h(H2) = 1", failures)


def test_criterion_08_hochschild_and_phantom():
    failures = []
    if hochschild_cohomology() != [1, 0, 0, 6, 9]:
        failures.append(f"HH^*(S) = {hochschild_cohomology()}")
    for name, h in named_helices().items():
        values = {line.quantity: line.value for line in quasi_phantom_report(h)}
        for quantity, expected in (("K0(A)", "(Z/5)^2"), ("dim HH_*(A)", "0"), ("HH^0(A)", "C")):
            if values.get(quantity) != expected:
                failures.append(f"{name} {quantity} = {values.get(quantity)}")
    record(8, "HH^*(S) = (1,0,0,6,9); K0(A) = (Z/5)^2, HH_*(A) = 0, HH^0(A) = C", failures)


def test_criterion_09_property_suites():
    failures = []
    for a, b in product(range(-5, 8), repeat=2):
        for chi in Character.all():
            L = K(a, b, chi)
            r = cohomology_S(L)
            if r.euler != (a - 1) * (b - 1):
                failures.append(f"Riemann-Roch at {L}")
            if cohomology_S(serre_dual(L)) != r.reversed():
                failures.append(f"Serre duality at {L}")
    for n in range(-10, 11):
        for action in (C, CPRIME):
            h0, h1 = cohomology_poly(action, n).dims_by_degree()
            if h0 - h1 != 5 * n - 5:
                failures.append(f"curve Riemann-Roch {action.name} n={n}")
        if cohomology_poly(CPRIME, n) != cohomology_poly(C, n).substitute(Character(2, 1), Character(4, 3)):
            failures.append(f"substitution law n={n}")
    failures += failing_facts(lambda f: f.query in ("stabilizer", "free"))
    if not diagonal_action_is_free(C, CPRIME):
        failures.append("diagonal action not free")
    if any(stabilizer(a, k).order != 5 for a in (C, CPRIME) for k in (1, 2, 3)):
        failures.append("stabilizer order")
    record(9, "Riemann-Roch, Serre duality, curve Riemann-Roch, substitution law, stabilizers, freeness", failures)


def test_criterion_10_paper_check_and_faults(capsys):
    failures = []
    if main(["paper-check"]) != 0:
        failures.append("clean build does not exit 0")
    for fault in sorted(FAULTS):
        code = main(["paper-check", "--inject-fault", fault])
        if code != 1:
            failures.append(f"fault {fault} exits {code}")
    capsys.readouterr()
    record(10, "paper-check exits 0, and 1 under each of the three faults", failures)
