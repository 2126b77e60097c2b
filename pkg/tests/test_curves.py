import pytest

from beauville.charpoly import Character, GradedCharPoly
from beauville.curves import (
    C,
    CPRIME,
    CurveAction,
    StabilizerSubgroup,
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

P = GradedCharPoly.parse
ACTIONS = [C, CPRIME]


def h0_oracle(action, n):
    """Independent H^0: monomials X^a Y^b Z^c with a < 5 span C[X,Y,Z]/(X^5+Y^5+Z^5) in degree n."""
    chars = [
        action.monomial_character(a, b, n - a - b)
        for a in range(min(n, 4) + 1)
        for b in range(n - a + 1)
    ]
    return GradedCharPoly.from_characters(chars, q_bound=1)


def test_h0_examples():
    assert h0_poly(C, 1) == P("1+x+y")
    expected = GradedCharPoly.from_characters(
        [Character(i, j) for i in range(6) for j in range(6) if i + j <= 5], q_bound=1
    ) - P("1")
    assert h0_poly(C, 5) == expected
    assert h0_poly(C, -3) == 0


@pytest.mark.parametrize("action", ACTIONS, ids=lambda a: a.name)
@pytest.mark.parametrize("n", range(-3, 16))
def test_h0_matches_normal_form_oracle(action, n):
    assert h0_poly(action, n) == (h0_oracle(action, n) if n >= 0 else 0)


@pytest.mark.parametrize("n", range(0, 5))
def test_h0_low_degree_terms_have_coefficient_one(n):
    for action in ACTIONS:
        terms = h0_poly(action, n).terms()
        assert len(terms) == (n + 1) * (n + 2) // 2
        assert all(c == 1 for _, _, c in terms)


def test_canonical_characters():
    assert canonical_character(C) == Character(1, 1)
    assert canonical_character(CPRIME) == Character(1, 4)


def test_canonical_character_of_trivial_action_is_trivial():
    trivial = CurveAction("trivial", ((0, 0, 0), (0, 0, 0)))
    assert not trivial.is_faithful()
    assert canonical_character(trivial) == Character(0, 0)


def test_h1_examples():
    assert h1_poly(C, 2) == P("q*x^4*y^4")
    assert h1_poly(C, 3) == 0
    assert h1_poly(C, 0) == P("q*x^4*y^4+q*x^4*y^3+q*x^3*y^4+q*x^4*y^2+q*x^3*y^3+q*x^2*y^4")
    assert h1_poly(C, 1) == P("q*x^4*y^4+q*x^4*y^3+q*x^3*y^4")


def test_k_characters():
    assert k_character(C) == Character(3, 3)
    assert k_character(CPRIME) == Character(3, 2)
    assert 2 * k_character(C) == canonical_character(C)
    assert 2 * k_character(CPRIME) == canonical_character(CPRIME)


def test_cohomology_poly_examples():
    assert cohomology_poly(C, 1, Character(3, 3)) == P("x^4*y^3+x^3*y^4+x^3*y^3+q*x^2*y^2+q*x^2*y+q*x*y^2")
    assert cohomology_poly(CPRIME, 2, Character(1, 4)) == P("x^2*y^3+x*y^4+x^4+x^3+y^2+y+q")
    assert cohomology_poly(C, 0).degree_part(0) == P("1")


@pytest.mark.parametrize("action", ACTIONS, ids=lambda a: a.name)
@pytest.mark.parametrize("n", range(-10, 11))
def test_curve_riemann_roch(action, n):
    for chi in (Character(0, 0), Character(2, 3), Character(4, 1)):
        h0, h1 = cohomology_poly(action, n, chi).dims_by_degree()
        assert h0 - h1 == 5 * n - 5


@pytest.mark.parametrize("action", ACTIONS, ids=lambda a: a.name)
@pytest.mark.parametrize("n", range(-8, 11))
def test_serre_symmetry(action, n):
    chi = Character(2, 1)
    p = cohomology_poly(action, n, chi)
    r = cohomology_poly(action, 2 - n, canonical_character(action) - chi)
    assert p.degree_part(0) == r.degree_part(1).dual().shift(-1, q_bound=1)
    assert p.degree_part(1) == r.degree_part(0).dual().shift(1, q_bound=1)


@pytest.mark.parametrize("n", range(-10, 11))
def test_substitution_law(n):
    assert cohomology_poly(CPRIME, n) == cohomology_poly(C, n).substitute(Character(2, 1), Character(4, 3))


def test_genus_six():
    assert cohomology_poly(C, 0).dims_by_degree() == [1, 6]
    assert k_cohomology_poly(C, 1).dims_by_degree() == [3, 3]


STABILIZERS = {
    (C, 1): (1, 0),
    (C, 2): (0, 1),
    (C, 3): (1, 1),
    (CPRIME, 1): (1, 2),
    (CPRIME, 2): (1, 3),
    (CPRIME, 3): (1, 4),
}


@pytest.mark.parametrize("key", STABILIZERS, ids=lambda k: f"{k[0].name}-D{k[1]}")
def test_stabilizers(key):
    sub = stabilizer(*key)
    assert sub == StabilizerSubgroup(STABILIZERS[key])
    assert sub.order == 5


def test_stabilizers_distinct_per_action():
    for action in ACTIONS:
        subs = {stabilizer(action, k) for k in (1, 2, 3)}
        assert len(subs) == 3


def test_stabilizer_normalization_and_printing():
    assert StabilizerSubgroup((2, 4)) == StabilizerSubgroup((1, 2))
    assert str(StabilizerSubgroup((1, 2))) == "Z/5*(e1+2e2)"
    assert (StabilizerSubgroup((1, 0)) & StabilizerSubgroup((0, 1))).order == 1
    with pytest.raises(ValueError):
        stabilizer(C, 4)


def test_diagonal_freeness():
    assert diagonal_action_is_free(C, CPRIME)
    assert not diagonal_action_is_free(C, C)
    assert not diagonal_action_is_free(CPRIME, CPRIME)


def test_actions_are_faithful_and_serializable():
    assert C.is_faithful() and CPRIME.is_faithful()
    assert CPRIME.to_json() == [[2, 4, 0], [1, 3, 0]]
    assert get_action("Cprime") is CPRIME
    with pytest.raises(ValueError):
        get_action("D")
