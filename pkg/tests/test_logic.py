import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import LT, P, PQ
from folspace.errors import ArityMismatch, ParseError, UnboundVariable, UnknownPredicate, VocabularyError
from folspace.generators import random_formula
from folspace.logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Equal,
    Exists,
    ExistsExcl,
    Forall,
    Implies,
    Not,
    Or,
    Vocabulary,
    alpha_equivalent,
    desugar,
    free_variables,
    parse_formula,
    parse_sentence,
    quantifier_rank,
    to_text,
)


def test_parse_exists():
    assert parse_sentence("exists x. P(x)", P) == Exists("x", Atom("P", ("x",)))


def test_parse_antisymmetry():
    f = parse_sentence("forall x. forall y. x < y -> !(x = y | y < x)", LT)
    body = Implies(Atom("<", ("x", "y")), Not(Or((Equal("x", "y"), Atom("<", ("y", "x"))))))
    assert f == Forall("x", Forall("y", body))


def test_precedence():
    f = parse_sentence("exists x. !P(x) & P(x) | P(x) -> P(x)", P)
    px = Atom("P", ("x",))
    assert f == Exists("x", Implies(Or((And((Not(px), px)), px)), px))


@pytest.mark.parametrize(
    "text, exc",
    [
        ("P(x,y)", ArityMismatch),
        ("exists x. Q(x)", UnknownPredicate),
        ("P(x)", UnboundVariable),
        ("exists x. P(x", ParseError),
        ("exists . P(x)", ParseError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_sentence(text, P)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_sentence("exists x. P(x) &", P)
    assert "position 16" in str(info.value)


@pytest.mark.parametrize(
    "text, rank",
    [("true", 0), ("exists x. P(x)", 1), ("(exists x. P(x)) & (forall y. P(y))", 1),
     ("forall x. forall y. x < y -> exists z. x < z & y < z", 3)],
)
def test_rank(text, rank):
    vocab = LT if "<" in text else P
    assert quantifier_rank(parse_sentence(text, vocab)) == rank


def test_rank_of_atom():
    assert quantifier_rank(Atom("P", ("x",))) == 0


def test_desugar_exclusive_empty_context():
    f = ExistsExcl("z", Atom("P", ("z",)))
    assert desugar(f) == Exists("z", Atom("P", ("z",)))


def test_desugar_exclusive_in_context():
    f = ExistsExcl("z", Atom("<", ("z", "y1")))
    out = desugar(f, ("y1",))
    assert out == Exists("z", And((Not(Equal("z", "y1")), Atom("<", ("z", "y1")))))


def test_desugar_implication():
    a, b = Atom("P", ("x",)), Atom("Q", ("x",))
    assert desugar(Implies(a, b), ("x",)) == Or((Not(a), b))


def test_desugar_truth_constants():
    assert desugar(TRUE) == And(())
    assert desugar(FALSE) == Or(())
    lit = desugar(TRUE, literal_truth=True)
    assert quantifier_rank(lit) == 1


def test_free_variables():
    f = parse_formula("P(y) & exists x. P(x)", P, free=("y",))
    assert free_variables(f) == {"y"}


def test_alpha_equivalence():
    assert alpha_equivalent(parse_sentence("exists x. P(x)", P), parse_sentence("exists y. P(y)", P))
    assert not alpha_equivalent(parse_sentence("exists x. P(x)", P), parse_sentence("forall y. P(y)", P))


def test_vocabulary_validation():
    with pytest.raises(VocabularyError):
        Vocabulary((("P", 1), ("P", 2)))
    with pytest.raises(VocabularyError):
        Vocabulary((("P", 0),))
    with pytest.raises(VocabularyError):
        Vocabulary.from_dict({"preds": []})
    assert PQ.is_monadic and not LT.is_monadic
    assert Vocabulary.from_dict(LT.to_dict()) == LT


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([P, PQ, LT]), st.integers(0, 3), st.integers(1, 12))
def test_print_parse_roundtrip(seed, vocab, rank, size):
    f = random_formula(random.Random(seed), vocab, rank, (), size)
    assert parse_sentence(to_text(f), vocab) == f
    assert quantifier_rank(f) <= rank
