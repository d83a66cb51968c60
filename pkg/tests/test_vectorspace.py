import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import LT, P, delta
from folspace.constituents import enumerate_constituents
from folspace.errors import NonPositiveEntry, NotAProbability, OracleIncomplete, RankMismatch
from folspace.generators import representatives
from folspace.logic import FALSE, TRUE, Not, conj, parse_sentence
from folspace.vectorspace import (
    CoefficientScheme,
    SparseVector,
    complement,
    dagger_vector,
    embed,
    gram_schmidt,
    inner,
    join,
    meet,
    mp_apply,
    mp_chain,
    norm,
    plausibility,
    theory_dimension,
    unnorm_entropy,
)

EX = parse_sentence("exists x. P(x)", P)
ALL = parse_sentence("forall x. P(x)", P)
SPACE1 = enumerate_constituents(P, 1)
ONE = Fraction(1)


def vec(mapping):
    return SparseVector(P, 1, {delta(b): Fraction(a) for b, a in mapping.items()})


def test_embed_schemes():
    assert embed(EX, 1, P) == vec({"11": 1, "10": 1})
    assert embed(EX, 1, P, "uniform") == vec({"11": Fraction(1, 2), "10": Fraction(1, 2)})
    assert embed(EX, 1, P, CoefficientScheme.CARDINALITY) == vec({"11": 2, "10": 2})
    for scheme in CoefficientScheme:
        assert not embed(FALSE, 1, P, scheme)


def test_inner_products():
    assert inner(embed(EX, 1, P), embed(ALL, 1, P)) == 1
    assert inner(embed(EX, 1, P), SparseVector.zero(P, 1)) == 0
    nobody = parse_sentence("forall x. !P(x)", P)
    assert inner(embed(EX, 1, P), embed(nobody, 1, P)) == 0
    assert norm(embed(TRUE, 1, P)) == 2.0


def test_exclusive_sentences_are_orthogonal_exhaustively():
    reps = list(representatives(P, 1))
    for a, b in itertools.combinations(reps, 2):
        if not len(embed(conj(a, b), 1, P)):
            assert inner(embed(a, 1, P), embed(b, 1, P)) == 0


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        inner(embed(EX, 1, P), embed(EX, 2, P))


def test_vector_arithmetic_and_serialisation():
    v = vec({"11": 1, "01": Fraction(1, 3)})
    w = vec({"11": -1, "00": 2})
    assert v + w == vec({"01": Fraction(1, 3), "00": 2})
    assert (v - v) == SparseVector.zero(P, 1)
    assert 3 * v == vec({"11": 3, "01": 1})
    rows = v.to_list()
    assert rows == [("3", 1, 1), ("1", 1, 3)]
    assert SparseVector.from_list(rows, SPACE1, P) == v


def test_gram_schmidt_standard_basis_unchanged():
    basis = [SparseVector.basis(d) for d in SPACE1]
    assert gram_schmidt(basis) == basis


def test_gram_schmidt_enumeration_pattern():
    phis = [EX, ALL, parse_sentence("exists x. !P(x)", P)]
    pattern = [Not(phis[0]), phis[0], conj(Not(phis[0]), Not(phis[1])), phis[1], phis[2]]
    out = gram_schmidt([embed(f, 1, P) for f in pattern])
    for a, b in itertools.combinations(out, 2):
        assert inner(a, b) == 0


def test_gram_schmidt_drops_duplicates_and_normalizes():
    v = embed(EX, 1, P)
    assert len(gram_schmidt([v, v, 2 * v])) == 1
    w = gram_schmidt([v, embed(ALL, 1, P)], normalize=True)
    assert all(math.isclose(float(inner(x, x)), 1.0) for x in w)


def test_join_meet_complement():
    e, a = embed(EX, 1, P), embed(ALL, 1, P)
    c = complement(e, SPACE1)
    assert c == vec({"01": 1, "00": 1})
    assert not meet(e, c)
    assert join(e, c) == embed(TRUE, 1, P)
    assert meet(e, a) == vec({"10": 1})
    assert not complement(e, SPACE1, literal=True)


def test_mp_examples():
    assert mp_apply(EX, ALL, embed(EX, 1, P)) == embed(ALL, 1, P)
    assert mp_apply(EX, ALL, vec({"11": 1})) == embed(ALL, 1, P)
    chain = [EX, ALL, parse_sentence("forall x. P(x) | !P(x)", P)]
    assert mp_chain(chain, 1, P) == embed(chain[-1], 1, P)


def test_mp_fixpoints():
    for f in representatives(P, 1):
        v = embed(f, 1, P)
        assert mp_apply(f, f, v) == v
        top = embed(TRUE, 1, P)
        assert mp_apply(f, TRUE, top) == top
        assert plausibility(mp_apply(f, TRUE, top)) == 1


def test_mp_rank_mismatch():
    with pytest.raises(RankMismatch):
        mp_apply(EX, ALL, embed(EX, 1, P), r=2)


def test_plausibility():
    assert plausibility(embed(TRUE, 1, P)) == 1
    assert plausibility(embed(EX, 1, P)) == Fraction(1, 2)
    p = {delta("10"): ONE}
    assert plausibility(embed(ALL, 1, P), p) == 1
    with pytest.raises(NotAProbability):
        plausibility(embed(EX, 1, P), {delta("10"): Fraction(1, 2)})


def test_entropy_and_dagger():
    assert unnorm_entropy(embed(TRUE, 1, P)) == 4.0
    alpha = Fraction(1, 10)
    d = dagger_vector(EX, 1, alpha, P)
    assert d == vec({"11": 1, "10": 1, "01": alpha, "00": alpha})
    expected = 2 + 2 * 0.1 * (1 - math.log(0.1))
    assert math.isclose(unnorm_entropy(d), expected, rel_tol=1e-12)
    with pytest.raises(NonPositiveEntry):
        unnorm_entropy(embed(EX, 1, P), SPACE1)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_chain_of_three(i, j, k):
    reps = list(representatives(P, 1))
    chain = [reps[i], reps[j], reps[k]]
    assert mp_chain(chain, 1, P) == embed(reps[k], 1, P)


@pytest.mark.parametrize("axioms, r, expected", [("forall x. P(x)", 1, 1), ("forall x. P(x)", 2, 2), ("true", 1, 3)])
def test_theory_dimension(axioms, r, expected):
    res = theory_dimension(parse_sentence(axioms, P), r, P)
    assert res.exact and res.value == expected


def test_theory_dimension_non_monadic_is_an_interval():
    res = theory_dimension(TRUE, 1, LT)
    assert res.lower <= res.upper <= res.total
    if not res.exact:
        with pytest.raises(OracleIncomplete):
            res.value
