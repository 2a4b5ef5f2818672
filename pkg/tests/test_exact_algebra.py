import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crembed.exact_algebra import (
    GaussianRational,
    I,
    Polynomial,
    brute_force_product,
    format_rational,
    parse_rational,
    poly_arith,
    random_polynomial,
)

from oracles import from_sympy, to_sympy

VARS = ("x1", "x2", "x3", "x4")
x1, x2, x3, x4 = Polynomial.gens(VARS)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, fractions, fractions)


@st.composite
def polys(draw, variables=VARS, max_terms=5, max_degree=3):
    n = len(variables)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.lists(st.integers(0, max_degree), min_size=n, max_size=n)))
        terms[exp] = draw(gaussians)
    return Polynomial(variables, terms)


# -- scalars -----------------------------------------------------------------

def test_gaussian_canonical_form():
    a = GaussianRational(Fraction(2, 4), Fraction(-3, -6))
    assert a.re == Fraction(1, 2) and a.im == Fraction(1, 2)
    assert a == GaussianRational(Fraction(1, 2), Fraction(1, 2))
    assert hash(a) == hash(GaussianRational(Fraction(1, 2), Fraction(1, 2)))
    assert GaussianRational(3) == 3


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a


def test_rational_strings():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    for bad in ("1.5", "x", "1/0x", True):
        with pytest.raises(ValueError):
            parse_rational(bad)


# -- ring operations -----------------------------------------------------------

def test_poly_arith_examples():
    assert poly_arith(x1, Polynomial.zero(VARS), "add") == x1
    assert poly_arith(x1 + I * x2, x1 - I * x2, "mul") == x1**2 + x2**2
    sq = (x3 + x4) * (x3 + x4)
    assert sq == x3**2 + (x3 * x4).scale(2) + x4**2
    assert sq == brute_force_product(x3 + x4, x3 + x4)


def test_mismatched_variable_lists_rejected():
    y = Polynomial.var("y1", ("y1",))
    with pytest.raises(ValueError):
        poly_arith(x1, y, "add")
    with pytest.raises(ValueError):
        x1 * y


def test_zero_coefficients_pruned():
    p = x1 - x1
    assert p.terms == {}
    assert not p
    assert (x1 + I * x2 - I * x2).terms == x1.terms


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_product_against_sympy(a, b):
    assert a * b == from_sympy(to_sympy(a) * to_sympy(b), VARS)
    assert a * b == brute_force_product(a, b)


# -- conjugation ----------------------------------------------------------------

def test_conjugate_examples():
    assert (I * x1).conjugate() == -(I * x1)
    assert (x1**2 + x2**2).conjugate() == x1**2 + x2**2


def test_conjugate_involution_on_random_polynomials():
    rng = random.Random(7)
    for _ in range(100):
        p = random_polynomial(rng, VARS)
        assert p.conjugate().conjugate() == p


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_conjugate_is_ring_homomorphism(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


def test_conjugate_with_rename():
    v = ("z1", "zb1")
    z, zb = Polynomial.gens(v)
    p = (z * z * zb).scale(I)
    assert p.conjugate({"z1": "zb1", "zb1": "z1"}) == (zb * zb * z).scale(-I)


def test_real_and_imaginary_parts():
    p = x1.scale(GaussianRational(1, 2)) + x2**2
    assert p.real_part() == x1 + x2**2
    assert p.imag_part() == x1.scale(2)
    assert p.real_part() + p.imag_part().scale(I) == p


# -- substitution -----------------------------------------------------------------

def test_substitute_conjugate_pair():
    ab = Polynomial.gens(("a", "b"))
    p = ab[0] * ab[1]
    a_img = (x1 - I * x2).scale(Fraction(1, 2))
    b_img = (x1 + I * x2).scale(Fraction(1, 2))
    assert p.subs({"a": a_img, "b": b_img}) == (x1**2 + x2**2).scale(Fraction(1, 4))


def test_identity_substitution():
    p = x1 * x2 + I * x3
    assert p.subs({v: Polynomial.var(v, VARS) for v in VARS}) == p


def test_substitution_missing_variable_raises():
    p = x1 * x2
    with pytest.raises((KeyError, ValueError)):
        p.subs({"x1": Polynomial.var("y", ("y",))})


def test_substitute_then_evaluate_matches_composition():
    rng = random.Random(11)
    targets = ("y1", "y2")
    for _ in range(100):
        p = random_polynomial(rng, VARS, n_terms=3)
        images = {v: random_polynomial(rng, targets, n_terms=2, max_degree=2) for v in VARS}
        point = {t: GaussianRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for t in targets}
        lhs = p.subs(images, targets).evaluate(point)
        rhs = p.evaluate({v: q.evaluate(point) for v, q in images.items()})
        assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(polys(max_terms=3), polys(max_terms=3))
def test_substitution_commutes_with_product(a, b):
    targets = ("u", "w")
    u, w = Polynomial.gens(targets)
    images = {"x1": u + w, "x2": u * w, "x3": u.scale(I), "x4": w - 1}
    assert (a * b).subs(images, targets) == a.subs(images, targets) * b.subs(images, targets)


# -- differentiation ----------------------------------------------------------------

def test_derivative_examples():
    p = x3 - (x1**2 + x2**2).scale(I / 4)
    assert p.diff("x1") == x1.scale(-I / 2)
    assert Polynomial.constant(5, VARS).diff("x1") == Polynomial.zero(VARS)


def test_divided_differences_approach_derivative():
    rng = random.Random(3)
    for _ in range(20):
        p = random_polynomial(rng, VARS, n_terms=4, max_degree=3)
        point = {v: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for v in VARS}
        exact = p.diff("x2").evaluate(point)
        errors = []
        for h in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
            moved = dict(point, x2=point["x2"] + h)
            q = (p.evaluate(moved) - p.evaluate(point)) / h
            errors.append((q - exact).norm())
        assert errors[0] >= errors[1] >= errors[2]
        assert errors[2] <= errors[0] / 100 or errors[0] == 0


# -- serialization and printing -------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(polys())
def test_json_round_trip(p):
    data = json.loads(json.dumps(p.to_json()))
    assert Polynomial.from_json(data) == p


def test_json_layout():
    p = x1.scale(Fraction(1, 2)) - (x2**2).scale(I)
    data = p.to_json()
    assert data["vars"] == list(VARS)
    assert data["terms"] == [
        {"exp": [1, 0, 0, 0], "re": "1/2", "im": "0"},
        {"exp": [0, 2, 0, 0], "re": "0", "im": "-1"},
    ]


def test_text_order_is_graded():
    p = x3 - (x1**2 + x2**2).scale(I / 4)
    assert p.to_text() == "x3 - 1/4*i*x1^2 - 1/4*i*x2^2"
    assert (x1 * x2 + x1**2 + x2**2).to_text() == "x1^2 + x1*x2 + x2^2"


def test_align_inserts_variables():
    p = Polynomial.var("x2", ("x2",))
    q = p.align(("x1", "x2", "x3"))
    assert q == Polynomial.var("x2", ("x1", "x2", "x3"))
    with pytest.raises(ValueError):
        (x1 * x2).align(("x1",))
