import random
from fractions import Fraction

import pytest

from conftest import P, delta, small_models
from folspace.errors import DegenerateMatrix, NegativeBelief
from folspace.generators import random_sentences
from folspace.logic import FALSE, Implies, parse_sentence
from folspace.models import FiniteModel, check
from folspace.reftree import build_tree, uniform_measure
from folspace.uncertainty import (
    belief_measure,
    beliefs,
    build_knowledge,
    constituent_beliefs,
    conjecturing_basis_report,
    rank_conjectures,
)

EX = parse_sentence("exists x. P(x)", P)
NEX = parse_sentence("!exists x. P(x)", P)
M1 = FiniteModel.build(P, ["a"], {"P": [["a"]]})


def test_single_conjecture_example():
    k = build_knowledge([FALSE], [EX], [M1], 1, refute_depth=0, vocab=P)
    assert k.N[1][0] == 0
    assert beliefs(k)[1] == 1
    assert k.invariant_violations() == []


def test_self_implication_by_refutation():
    k = build_knowledge([], [EX, EX], [], 1, refute_depth=0, vocab=P)
    assert k.N[1][2] == 1 and (1, 2) in k.refuted


def test_model_counts_match_definition():
    models = small_models(P, 2)
    rng = random.Random(2)
    for seed in range(8):
        sents = random_sentences(seed, 3, P, 1)
        sample = rng.sample(models, 4)
        alpha = Fraction(rng.randint(1, 3), 2)
        k = build_knowledge([], sents, sample, alpha, refute_depth=None)
        for i in range(1, 4):
            for j in range(4):
                if i == j:
                    continue
                want = Fraction(sum(check(m, Implies(k.sentences[i], k.sentences[j])) for m in sample)) / (4 + alpha)
                assert k.N[i][j] == want


def test_literal_refutation_flag():
    valid = parse_sentence("forall x. P(x) | !P(x)", P)
    unsat = parse_sentence("exists x. P(x) & !P(x)", P)
    literal = build_knowledge([], [valid, unsat], [M1], 1, refute_depth=0, vocab=P, literal_refute=True)
    default = build_knowledge([], [valid, unsat], [M1], 1, refute_depth=0, vocab=P)
    assert literal.N[1][2] == 1
    assert default.N[1][2] == 0
    # the unsatisfiable conjecture implies everything
    assert default.N[2][1] == 1


def test_invariant_violations_detected():
    k = build_knowledge([], [EX], [M1], 1, refute_depth=None)
    bad = type(k)(k.sentences, k.models, k.alpha, ((Fraction(1), Fraction(0)), k.N[1]))
    assert bad.invariant_violations() == ["row 0 is not all ones"]


def test_alpha_must_be_positive():
    with pytest.raises(ValueError):
        build_knowledge([], [EX], [], 0, refute_depth=None)


def test_belief_measure_examples():
    tree = build_tree(P, 1)
    assert belief_measure(tree, {d: Fraction(1, 2) for d in tree.nodes()}).values == uniform_measure(tree).values
    b = {d: Fraction(0) if d == delta("00") else Fraction(1) for d in tree.nodes()}
    nu = belief_measure(tree, b)
    assert [nu.value(delta(x)) for x in ("11", "10", "01", "00")] == [Fraction(1, 3)] * 3 + [0]
    with pytest.raises(NegativeBelief):
        belief_measure(tree, {delta("11"): Fraction(-1)})


def test_logical_omniscience_fails_without_evidence():
    tree = build_tree(P, 2)
    naive = belief_measure(tree, constituent_beliefs(P, tree.nodes(), (), 1, refute_depth=None))
    refuted_mass = naive.value(delta("00"))
    assert refuted_mass == Fraction(1, 4)
    informed = belief_measure(tree, constituent_beliefs(P, tree.nodes(), (), 1, refute_depth=0))
    assert informed.value(delta("00")) == 0
    assert informed.is_additive() and naive.is_additive()


def test_rank_single_and_identical():
    k = build_knowledge([], [EX], [M1], 1, refute_depth=None)
    r = rank_conjectures(k)
    assert [i for i, _ in r.order] == [1]
    k2 = build_knowledge([], [EX, EX], [M1], 1, refute_depth=None)
    r2 = rank_conjectures(k2)
    assert [i for i, _ in r2.order] == [1, 2] and r2.order[0][1] == r2.order[1][1]


def test_rank_all_true_beats_none_true():
    models = [M1, FiniteModel.build(P, ["a", "b"], {"P": [["a"], ["b"]]})]
    always = parse_sentence("exists x. P(x)", P)
    never = parse_sentence("forall x. !P(x)", P)
    k = build_knowledge([], [never, always], models, 1, refute_depth=None)
    r = rank_conjectures(k)
    assert r.order[0][0] == 2
    assert rank_conjectures(k, explore=True).order[0][0] == 1


def test_rank_degenerate():
    k = build_knowledge([], [EX, EX, EX], [], 1, refute_depth=0, vocab=P)
    r = rank_conjectures(k)
    assert not rank_conjectures(build_knowledge([], [EX, NEX], [], 1, refute_depth=None)).degenerate
    assert r.degenerate and r.order[0][1] == r.order[1][1]
    with pytest.raises(DegenerateMatrix):
        rank_conjectures(build_knowledge([], [], [], 1, refute_depth=None))


def test_basis_reports():
    both = conjecturing_basis_report(build_knowledge([], [EX, NEX], [], 1, refute_depth=None), P)
    assert both.contains_top and not both.dependent and both.dimension == 4
    single = conjecturing_basis_report(build_knowledge([], [EX], [], 1, refute_depth=None), P)
    assert not single.contains_top
    dup = conjecturing_basis_report(build_knowledge([], [EX, EX], [], 1, refute_depth=None), P)
    assert dup.dependent and dup.conjecture_rank == 1
