import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import LT, P, PQ, delta, small_models
from folspace.errors import VocabularyError, VocabularyMismatch
from folspace.generators import random_formula
from folspace.logic import (
    And,
    Atom,
    Bottom,
    Equal,
    Exists,
    ExistsExcl,
    ForallExcl,
    Implies,
    Not,
    Or,
    Top,
    parse_sentence,
)
from folspace.models import (
    FiniteModel,
    check,
    count_models,
    enumerate_models,
    isomorphic,
    load_model,
    load_models,
    monadic_bound,
    monadic_models,
    realized_constituents,
    satisfiable_monadic,
    satisfying_constituent,
    save_model,
)


def naive(m, f, env):
    """Reference evaluator written directly from the semantics."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return tuple(env[v] for v in f.args) in m.relation(f.pred)
    if isinstance(f, Equal):
        return env[f.left] == env[f.right]
    if isinstance(f, Not):
        return not naive(m, f.body, env)
    if isinstance(f, And):
        return all(naive(m, a, env) for a in f.args)
    if isinstance(f, Or):
        return any(naive(m, a, env) for a in f.args)
    if isinstance(f, Implies):
        return (not naive(m, f.left, env)) or naive(m, f.right, env)
    if isinstance(f, (ExistsExcl, ForallExcl)):
        taken = {env[v] for v in env if v != f.var}
        dom = [e for e in m.domain if e not in taken]
    else:
        dom = m.domain
    vals = (naive(m, f.body, {**env, f.var: e}) for e in dom)
    return any(vals) if isinstance(f, (Exists, ExistsExcl)) else all(vals)


def test_check_examples():
    one = FiniteModel.build(P, ["a"], {"P": [["a"]]})
    two = FiniteModel.build(P, ["a", "b"], {"P": [["a"]]})
    fx = parse_sentence("forall x. P(x)", P)
    assert check(one, fx) and not check(two, fx)


def test_dense_axiom_fails_on_finite_chain():
    chain = FiniteModel.build(LT, ["0", "1", "2"], {"<": [("0", "1"), ("0", "2"), ("1", "2")]})
    dense = parse_sentence("forall x. forall y. x < y -> exists z. x < z & z < y", LT)
    assert not check(chain, dense)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([P, LT]))
def test_check_matches_reference(seed, vocab):
    f = random_formula(random.Random(seed), vocab, 3, size=8)
    for m in small_models(vocab, 2):
        assert check(m, f) == naive(m, f, {})


def test_enumeration_counts():
    assert len(list(enumerate_models(P, 1))) == 2
    assert len(list(enumerate_models(P, 2))) == 6 == count_models(P, 2)
    assert len(list(enumerate_models(P, 2, reduced=True))) == 5
    assert len(list(enumerate_models(LT, 1))) == 2


def test_reduction_keeps_one_per_class():
    raw = list(enumerate_models(LT, 2))
    reduced = list(enumerate_models(LT, 2, reduced=True))
    for m in raw:
        assert sum(isomorphic(m, r) for r in reduced) == 1
    for a, b in itertools.combinations(reduced, 2):
        assert not isomorphic(a, b)


def test_monadic_models_cover_isomorphism_classes():
    mono = list(monadic_models(PQ, 2))
    reduced = list(enumerate_models(PQ, 2, reduced=True))
    assert len(mono) == len(reduced)
    assert all(any(isomorphic(a, b) for b in reduced) for a in mono)


def test_satisfying_constituent_examples():
    assert satisfying_constituent(FiniteModel.build(P, ["a"], {"P": [["a"]]}), 1) == delta("10")
    assert satisfying_constituent(FiniteModel.build(P, ["a", "b"], {"P": [["a"]]}), 1) == delta("11")


def test_satisfying_constituent_is_invariant_under_isomorphism():
    for m in enumerate_models(LT, 2):
        perm = {e: f"z{i}" for i, e in enumerate(reversed(m.domain))}
        tables = {n: [[perm[e] for e in row] for row in rows] for n, rows in m.tables}
        mm = FiniteModel.build(LT, [perm[e] for e in m.domain], tables)
        assert satisfying_constituent(m, 2) == satisfying_constituent(mm, 2)


def test_realized_constituents():
    assert realized_constituents(P, 1) == {delta("11"), delta("10"), delta("01")}
    assert monadic_bound(P, 2) == 4
    with pytest.raises(VocabularyError):
        realized_constituents(LT, 1)


def test_satisfiable_monadic():
    m = satisfiable_monadic(parse_sentence("(exists x. P(x)) & (exists x. !P(x))", P), P)
    assert m is not None and m.size == 2
    assert satisfiable_monadic(parse_sentence("(exists x. P(x)) & (forall x. !P(x))", P), P) is None


def test_model_validation():
    with pytest.raises(VocabularyError):
        FiniteModel.build(P, [], {})
    with pytest.raises(VocabularyMismatch):
        FiniteModel.build(P, ["a"], {"Q": [["a"]]})
    with pytest.raises(VocabularyMismatch):
        FiniteModel.build(P, ["a"], {"P": [["b"]]})


def test_model_io(tmp_path, data_dir):
    m = FiniteModel.build(LT, ["a", "b"], {"<": [["a", "b"]]})
    save_model(m, tmp_path / "m.json")
    assert load_model(tmp_path / "m.json", LT) == m
    assert json.loads((tmp_path / "m.json").read_text())["domain"] == ["a", "b"]
    loaded = load_models([data_dir / "models"], P)
    assert [str(x) for x in loaded] == ["({a}; P={a})", "({a}; P={})", "({a, b}; P={a})"]
