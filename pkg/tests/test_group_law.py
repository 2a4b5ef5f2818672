import random

from crembed.catalog import catalog_all, catalog_get
from crembed.embedding import compute_embedding
from crembed.exact_algebra import GaussianRational, Polynomial
from crembed.group_law import (
    inclusion_section,
    m_variable_names,
    star_at_points,
    star_product,
    verify_homomorphism,
    verify_left_holomorphic,
    verify_section,
)

from oracles import random_point

HEIS = catalog_get("heisenberg3")
ZERO = GaussianRational(0)


def test_heisenberg_product():
    sp = star_product(HEIS.cr)
    assert sp.map == HEIS.expected["star_product"].value
    assert [c.to_text() for c in sp.map] == ["z1 + z1'", "z2 + z2' - 2*i*zb1*z1'"]


def test_identity_element():
    for entry in catalog_all():
        sp = star_product(entry.cr)
        z, zb, zp, zbp = sp.names()
        zero = {v: 0 for v in zp + zbp}
        assert [c.subs(zero, z + zb) for c in sp.map] == list(Polynomial.gens(z + zb)[: len(z)])
        zero = {v: 0 for v in z + zb}
        assert [c.subs(zero, zp + zbp) for c in sp.map] == list(Polynomial.gens(zp + zbp)[: len(zp)])


def _iota_points(emb, rng, count):
    pts = []
    for _ in range(count):
        pt = random_point(rng, emb.vars)
        pts.append(emb.evaluate([pt[v] for v in emb.vars]))
    return pts


def test_associativity_on_image():
    rng = random.Random(41)
    for name in ("heisenberg3", "dim6_omega2"):
        cr = catalog_get(name).cr
        sp = star_product(cr)
        emb = compute_embedding(cr)
        for _ in range(50):
            a, b, c = _iota_points(emb, rng, 3)
            left = star_at_points(sp, star_at_points(sp, a, b), c)
            right = star_at_points(sp, a, star_at_points(sp, b, c))
            assert left == right


def test_inverses_on_image():
    rng = random.Random(42)
    cr = catalog_get("free_2_3").cr
    sp = star_product(cr)
    emb = compute_embedding(cr)
    for _ in range(20):
        pt = random_point(rng, emb.vars)
        g = [pt[v] for v in emb.vars]
        ginv = [-x for x in g]   # first-kind inverse
        assert star_at_points(sp, emb.evaluate(g), emb.evaluate(ginv)) == [ZERO] * len(emb.components)
        assert star_at_points(sp, emb.evaluate(ginv), emb.evaluate(g)) == [ZERO] * len(emb.components)


def test_section_property():
    for name in ("heisenberg3", "dim8_noncommutative_h01"):
        cr = catalog_get(name).cr
        assert verify_section(cr).passed
        assert verify_section(cr, inclusion_section).passed


def test_homomorphism_heisenberg():
    cr = HEIS.cr
    rep = verify_homomorphism(cr, compute_embedding(cr), star_product(cr))
    assert rep.passed and rep.first_failure is None


def test_homomorphism_with_identity_factor():
    cr = catalog_get("dim8_noncommutative_h01").cr
    sp = star_product(cr)
    emb = compute_embedding(cr)
    zero = [Polynomial.zero(emb.vars)] * len(emb.components)
    out = sp.apply(emb.components, [c.conjugate() for c in emb.components], zero, zero, emb.vars)
    assert out == emb.components


def test_left_holomorphic():
    assert verify_left_holomorphic(star_product(HEIS.cr)).passed
    z, zb = m_variable_names(2)
    zp, zbp = m_variable_names(2, primed=True)
    gens = dict(zip(z + zb + zp + zbp, Polynomial.gens(z + zb + zp + zbp)))
    abelian = [gens["z1"] + gens["z1'"], gens["z2"] + gens["z2'"]]
    assert verify_left_holomorphic(components=abelian, conj_primed=zbp).passed
    artificial = [gens["z1"] + gens["z1'"], gens["z2"] + gens["zb1'"]]
    rep = verify_left_holomorphic(components=artificial, conj_primed=zbp)
    assert not rep.passed and rep.first_failure == 2


def test_left_holomorphic_on_catalog():
    for entry in catalog_all():
        assert verify_left_holomorphic(star_product(entry.cr)).passed, entry.name
