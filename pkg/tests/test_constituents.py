import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import LT, P, PQ, delta, small_models
from folspace.constituents import (
    TOP_CLAIM,
    ConstituentSet,
    constituent_bits,
    constituent_from_dict,
    constituent_id,
    constituent_to_dict,
    count_constituents,
    dnf,
    enumerate_attributive,
    enumerate_constituents,
    eval_constituent,
    expand,
    inconsistency_reason,
    is_prefix,
    remove_top_layer,
    set_representation,
    to_dense,
    to_formula,
    to_positive_set,
    trivially_inconsistent,
)
from folspace.errors import BudgetExceeded, RankMismatch, RankZero
from folspace.generators import random_formula
from folspace.logic import FALSE, TRUE, And, Not, conj, disj, parse_sentence, to_text
from folspace.models import check, realized_constituents, satisfying_constituent


def test_attributive_counts():
    assert len(enumerate_attributive(P, 0, ("y",))) == 2
    assert len(enumerate_attributive(P, 1, ())) == 4


def test_attributive_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_attributive(LT, 2, ())


def test_rank1_sentences_over_p():
    space = enumerate_constituents(P, 1)
    assert [constituent_bits(d) for d in space] == ["11", "10", "01", "00"]
    assert str(delta("10")) == "(existsE x1. P(x1)) & (forallE x1. P(x1))"


def test_rank0_is_single_empty_constituent():
    for vocab in (P, PQ, LT):
        space = enumerate_constituents(vocab, 0)
        assert len(space) == 1
        assert to_formula(space[0]) == And(())


def test_counts():
    assert count_constituents(P, 1) == (4, 4)
    assert count_constituents(P, 2) == (256, 256)
    assert count_constituents(LT, 2) == (2**512, 2**512)
    assert count_constituents(LT, 1)[1] == len(enumerate_constituents(LT, 1)) == 4


def test_counts_with_context():
    for k in (1, 2):
        ctx = tuple(f"y{i}" for i in range(k))
        gamma, total = count_constituents(P, 1, ctx)
        assert total == len(enumerate_constituents(P, 1, ctx))
        assert gamma == len(enumerate_attributive(P, 1, ctx))


def test_ids_are_hex_of_bits():
    for d in enumerate_constituents(P, 2):
        assert int(constituent_id(d), 16) == int(constituent_bits(d), 2)


def test_eval_examples():
    fx = parse_sentence("forall x. P(x)", P)
    assert eval_constituent(delta("10"), fx)
    assert not eval_constituent(delta("11"), fx)
    assert not eval_constituent(delta("00"), parse_sentence("exists x. P(x)", P))
    assert all(eval_constituent(d, TRUE) for d in enumerate_constituents(P, 2))


def test_dnf_examples():
    ex = parse_sentence("exists x. P(x)", P)
    assert set(dnf(ex, 1, P)) == {delta("11"), delta("10")}
    assert len(dnf(FALSE, 1, P)) == 0
    assert set(dnf(TRUE, 1, P)) == set(enumerate_constituents(P, 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 2**32))
def test_dnf_is_boolean_homomorphism(s1, s2):
    f = random_formula(random.Random(s1), P, 2)
    g = random_formula(random.Random(s2), P, 2)
    space = enumerate_constituents(P, 2)
    df, dg = dnf(f, 2, P).as_set(), dnf(g, 2, P).as_set()
    assert dnf(conj(f, g), 2, P).as_set() == df & dg
    assert dnf(disj(f, g), 2, P).as_set() == df | dg
    assert dnf(Not(f), 2, P).as_set() == space.as_set() - df


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_dnf_against_models_two_predicates(seed):
    f = random_formula(random.Random(seed), PQ, 1, size=8)
    members = dnf(f, 1, PQ)
    for m in small_models(PQ, 2):
        assert check(m, f) == (satisfying_constituent(m, 1) in members)


def test_expand_zero_steps():
    d = delta("11")
    assert list(expand(d, 0)) == [d]


def test_expand_partition_against_models():
    for d in enumerate_constituents(P, 1):
        kids = expand(d, 1)
        assert all(eval_constituent(k, to_formula(d)) for k in kids)
        for m in small_models(P, 3):
            inside = check(m, to_formula(d))
            assert sum(check(m, to_formula(k)) for k in kids) == int(inside)


def test_expansions_of_empty_constituent_have_no_positive_kinds():
    assert all(not k.positives for k in expand(delta("00"), 1))


def test_expansions_are_disjoint_and_cover():
    level1 = enumerate_constituents(P, 1)
    seen = set()
    for d in level1:
        kids = expand(d, 1).as_set()
        assert not (kids & seen)
        seen |= kids
    assert seen == enumerate_constituents(P, 2).as_set()


def test_set_representation():
    assert set_representation(enumerate_constituents(P, 0)[0]) == {TOP_CLAIM}
    rep = set_representation(delta("10"))
    assert sorted(s for s, _ in rep) == [False, True]


def test_dense_and_positive_set_forms_are_equal():
    for d in enumerate_constituents(P, 2):
        ac = d.attributive
        assert to_positive_set(ac) == to_dense(ac) == ac
        assert hash(to_positive_set(ac)) == hash(to_dense(ac))


def test_remove_top_layer():
    root = enumerate_constituents(P, 0)[0]
    assert all(remove_top_layer(d) == root for d in enumerate_constituents(P, 1))
    with pytest.raises(RankZero):
        remove_top_layer(root)


def test_remove_top_layer_on_model_constituents():
    for m in small_models(P, 3):
        d1, d2 = satisfying_constituent(m, 1), satisfying_constituent(m, 2)
        assert remove_top_layer(d2) == d1
        assert is_prefix(d1, d2)
    with pytest.raises(RankMismatch):
        is_prefix(delta("11"), delta("10"))


def test_trivial_inconsistency_examples():
    assert inconsistency_reason(delta("00")) == "TI-E"
    assert not trivially_inconsistent(delta("10"))


def test_trivial_inconsistency_is_exact_for_p_rank2():
    live = {d for d in enumerate_constituents(P, 2) if not trivially_inconsistent(d)}
    assert live == realized_constituents(P, 2)
    assert len(live) == 8


def test_trivial_inconsistency_is_sound_for_lt_rank1():
    sat = realized_constituents(LT, 1, max_size=2)
    assert not any(trivially_inconsistent(d) for d in sat)


@pytest.mark.parametrize("vocab, r", [(P, 1), (P, 2), (PQ, 1), (LT, 1)])
def test_serialisation_roundtrip(vocab, r):
    for d in list(enumerate_constituents(vocab, r))[:64]:
        assert constituent_from_dict(constituent_to_dict(d), vocab) == d


def test_constituent_set_algebra():
    space = enumerate_constituents(P, 1)
    a = ConstituentSet(1, (space[0], space[1]))
    b = ConstituentSet(1, (space[1], space[2]))
    assert list(a & b) == [space[1]]
    assert list(a - b) == [space[0]]
    assert list(a | b) == [space[0], space[1], space[2]]
    assert space.index(space[3]) == 3


def test_formula_roundtrip_through_text():
    for d in enumerate_constituents(P, 2):
        f = parse_sentence(to_text(to_formula(d)), P)
        assert set(dnf(f, 2, P)) == {d}
