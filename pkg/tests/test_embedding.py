import random
from fractions import Fraction

import sympy as sp

from crembed.catalog import catalog_all, catalog_get
from crembed.cr import CRStructure
from crembed.embedding import (
    Embedding,
    compute_embedding,
    normalize_embedding,
    recombination_holds,
    verify_cr_identity,
    verify_injectivity,
)
from crembed.exact_algebra import GaussianRational, I, Polynomial
from crembed.lie import CoordinateSystem, Subspace

from oracles import complex_matrix, nil_exp, random_model, random_point


def embed(name, **kw):
    return compute_embedding(catalog_get(name).cr, **kw)


def test_heisenberg_embedding():
    emb = embed("heisenberg3")
    assert emb.components == catalog_get("heisenberg3").expected["embedding"].value
    assert emb.frame_labels == ["X1 - iX2", "X3"]


def test_dim8_embedding():
    assert embed("dim8_noncommutative_h01").components == \
        catalog_get("dim8_noncommutative_h01").expected["embedding"].value


def test_free_x4_component():
    entry = catalog_get("free_2_3")
    assert embed("free_2_3").components[2] == entry.expected["x4_component"].value[0]


def test_dim6_embedding_in_adapted_charts():
    entry = catalog_get("dim6_omega2")
    exp = entry.expected["embedding_standard_J"]
    cr = CRStructure(entry.cr.algebra, [0, 1], exp.settings["J"], [2, 3, 4, 5])
    emb = compute_embedding(cr, chart=CoordinateSystem.parse(exp.settings["chart"]),
                            m_chart=CoordinateSystem.parse(exp.settings["m_chart"]))
    assert emb.components == exp.value
    assert recombination_holds(emb)
    assert verify_cr_identity(emb).passed
    # the catalog orientation is the complex conjugate, component by component
    emb_c = compute_embedding(entry.cr, chart=CoordinateSystem.parse(exp.settings["chart"]),
                              m_chart=CoordinateSystem.parse(exp.settings["m_chart"]))
    assert emb_c.components == [c.conjugate() for c in exp.value]


def test_origin_maps_to_origin():
    for entry in catalog_all():
        emb = compute_embedding(entry.cr)
        assert all(not c.constant_term() for c in emb.components)


def test_cr_identity_on_catalog():
    for entry in catalog_all():
        emb = compute_embedding(entry.cr)
        assert verify_cr_identity(emb).passed, entry.name


def test_corrupted_embedding_fails_cr_identity():
    emb = embed("heisenberg3")
    x1 = Polynomial.var("x1", emb.vars)
    bad = [emb.components[0], emb.components[1] + (x1 * x1).scale(I / 4)]
    rep = verify_cr_identity(Embedding(emb.cr, bad, emb.chart, emb.h01_part))
    assert not rep.passed
    assert {c for _, c in rep.failures} == {2}


def test_recombination_on_catalog():
    for entry in catalog_all():
        assert recombination_holds(compute_embedding(entry.cr)), entry.name


def test_normal_form_heisenberg():
    emb, rep = normalize_embedding(embed("heisenberg3"))
    assert emb.components == catalog_get("heisenberg3").expected["normalized_embedding"].value
    x1, x2, x3 = Polynomial.gens(emb.vars)
    assert rep.remainders[0].is_zero()
    assert rep.remainders[1] == (x1**2 + x2**2).scale(-I / 4)
    assert rep.passed
    assert recombination_holds(emb)


def test_normal_form_dim8():
    emb, rep = normalize_embedding(embed("dim8_noncommutative_h01"))
    assert rep.passed
    hvars = {f"x{j}" for j in range(1, 7)}
    for p in rep.remainders[:3]:
        assert set(p.used_variables()) <= hvars
    assert rep.linear_parts[3] == Polynomial.var("x7", emb.vars)
    assert rep.linear_parts[4] == Polynomial.var("x8", emb.vars)


def test_triangular_certificates():
    assert verify_injectivity(embed("heisenberg3")).order == ["x1", "x2", "x3"]
    for name in ("dim8_noncommutative_h01", "dim6_omega2", "free_2_3"):
        assert verify_injectivity(embed(name)).passed, name


def test_sampled_injectivity():
    rng = random.Random(12)
    emb = embed("dim6_omega2")
    images = set()
    for _ in range(100):
        pt = random_point(rng, emb.vars)
        images.add(tuple(emb.evaluate([pt[v] for v in emb.vars])))
    assert len(images) == 100


def test_embedding_against_matrix_exponentials():
    # exp(W) = exp(M) exp(A) checked with exact nilpotent matrix exponentials
    rng = random.Random(31)
    for two in (False, True):
        model = random_model(rng, two)
        emb = compute_embedding(model.cr)
        frames = model.cr.frames()
        for _ in range(3):
            pt = random_point(rng, emb.vars)
            W = complex_matrix(model, [pt[v] for v in emb.vars], {})
            comps = [c.evaluate(pt) for c in emb.components]
            mvec = [sum((c * v[k] for c, v in zip(comps, frames.m)), GaussianRational(0)) for k in range(len(emb.vars))]
            M = complex_matrix(model, mvec, {})
            A = complex_matrix(model, [c.evaluate(pt) for c in emb.h01_part.coeffs], {})
            lhs = nil_exp(W)
            rhs = (nil_exp(M) * nil_exp(A)).applyfunc(sp.expand)
            assert lhs == rhs
            a_vec = [c.evaluate(pt) for c in emb.h01_part.coeffs]
            assert Subspace(len(a_vec), frames.h01).contains(a_vec)


def test_normalization_scales_are_recorded():
    emb, _ = normalize_embedding(embed("free_2_3"))
    assert emb.normalized
    assert emb.scale[0] == 2 and emb.scale[1:] == [1, 1, 1]
    assert emb.components[0] == Polynomial.var("x1", emb.vars) + Polynomial.var("x2", emb.vars).scale(I)
    assert emb.components[0].coefficient((1, 0, 0, 0, 0)) == GaussianRational(Fraction(1))
