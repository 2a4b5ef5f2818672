"""The five structural properties checked on catalog and random structures."""
from crembed.embedding import compute_embedding, recombination_holds, verify_cr_identity
from crembed.exact_algebra import Polynomial
from crembed.group_law import verify_section
from crembed.lie import CoordinateSystem, group_mult, left_invariant_fields


def cr_identity(cr, emb=None):
    return verify_cr_identity(emb or compute_embedding(cr)).passed


def round_trip(cr, emb=None):
    return recombination_holds(emb or compute_embedding(cr))


def associativity(cr):
    L = cr.algebra
    d = L.dim
    g = Polynomial.gens([f"{p}{j + 1}" for p in "xyz" for j in range(d)])
    x, y, z = (list(g[k * d:(k + 1) * d]) for k in range(3))
    cs = CoordinateSystem.first_kind(d)
    return group_mult(L, cs, group_mult(L, cs, x, y), z) == group_mult(L, cs, x, group_mult(L, cs, y, z))


def commutators(cr, chart=None):
    L = cr.algebra
    fields = left_invariant_fields(L, chart)
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            want = fields[0].scale(0)
            for k, c in L.bracket_basis(i, j).items():
                want = want + fields[k].scale(c)
            if fields[i].commutator(fields[j]) != want:
                return False
    return True


def section(cr):
    return verify_section(cr).passed


def all_properties(cr):
    emb = compute_embedding(cr)
    return {
        "a": cr_identity(cr, emb),
        "b": round_trip(cr, emb),
        "c": associativity(cr),
        "d": commutators(cr),
        "e": section(cr),
    }
