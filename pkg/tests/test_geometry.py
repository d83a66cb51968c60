import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, PQ, delta
from folspace.constituents import enumerate_constituents, to_formula
from folspace.errors import InvalidCounts, ModelMismatch, ModelsNotDistinct
from folspace.geometry import (
    LabeledHypercube,
    approx_span,
    bits_to_constituent,
    check_poincare,
    constituent_cube,
    constituent_to_bits,
    frank_wolfe,
    influence,
    influences,
    label_variance,
    model_span_report,
    total_influence,
    truth_omniscient,
    truth_uninformed,
    variance_of_valuation,
)
from folspace.logic import parse_sentence
from folspace.models import FiniteModel

M1 = FiniteModel.build(P, ["a"], {"P": [["a"]]})
M3 = FiniteModel.build(P, ["a", "b"], {"P": [["a"]]})


def brute_influence(cube, i):
    """Fraction of vertices x with label(x) != label(x with coordinate i flipped)."""
    n = cube.n
    flips = 0
    for bits in itertools.product("01", repeat=n):
        x = "".join(bits)
        y = x[: i - 1] + ("1" if x[i - 1] == "0" else "0") + x[i:]
        flips += cube.label(x) != cube.label(y)
    return Fraction(flips, 1 << n)


def test_bits_roundtrip():
    assert constituent_to_bits(delta("10")) == "10"
    assert constituent_to_bits(delta("00")) == "00"
    for vocab, r in ((P, 1), (P, 2), (PQ, 1)):
        for d in enumerate_constituents(vocab, r):
            assert bits_to_constituent(constituent_to_bits(d), vocab, r) == d
    with pytest.raises(ValueError):
        bits_to_constituent("101", P, 1)


def test_rank1_cube():
    cube = constituent_cube(P, 1)
    assert list(cube.labels) == [1, -1, -1, -1]
    assert influences(cube) == [Fraction(1, 2)] * 2
    assert total_influence(cube) == 1
    assert cube.boundary_edges() == [("00", "01"), ("00", "10")]
    rep = check_poincare(cube)
    assert rep.variance == Fraction(3, 4) and rep.holds


def test_dictator_and_constant():
    cube = LabeledHypercube.dictator(4, 2)
    assert influences(cube) == [0, 1, 0, 0]
    rep = check_poincare(cube)
    assert rep.variance == 1 == rep.total_influence and rep.holds
    const = LabeledHypercube.constant(3)
    assert influences(const) == [0, 0, 0]
    rep = check_poincare(const)
    assert rep.variance == 0 and rep.holds and rep.kkl_ratio is None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32))
def test_influence_matches_brute_force(n, seed):
    rng = np.random.default_rng(seed)
    cube = LabeledHypercube(n, rng.choice(np.array([-1, 1], dtype=np.int8), size=1 << n))
    for i in range(1, n + 1):
        assert influence(cube, i) == brute_influence(cube, i)
    assert check_poincare(cube).holds


def test_variance_formula():
    assert variance_of_valuation(3, 4) == Fraction(3, 4)
    assert variance_of_valuation(8, 16) == 1
    assert variance_of_valuation(1, 256) == Fraction(255, 16384)
    with pytest.raises(InvalidCounts):
        variance_of_valuation(5, 4)


def test_rank2_cube_matches_label_variance():
    cube = constituent_cube(P, 2)
    assert cube.n == 8
    assert int((cube.labels == -1).sum()) == 8
    assert label_variance(cube) == variance_of_valuation(8, 256)
    assert check_poincare(cube).holds


def test_span_uninformed_k1_is_exact():
    res = approx_span(truth_uninformed(P, 1), 1)
    assert res.squared_error == 0 and res.within_bound


def test_span_omniscient_against_vertex_pairs():
    target = truth_omniscient(P, 1)
    assert len(target.basis) == 3
    res = approx_span(target, 2)
    assert res.error <= math.sqrt(2 / 6)
    tv = target.vector
    scale = Fraction(1, 3)
    subsets = [s for r in range(4) for s in itertools.combinations(target.basis, r)]
    best = min(
        sum(((tv[d] - scale * ((d in a) + (d in b)) / 2) ** 2 for d in target.basis), Fraction(0))
        for a in subsets for b in subsets
    )
    assert best <= Fraction(2, 6)
    assert res.squared_error >= best


def test_span_k0_flagged():
    target = truth_uninformed(P, 1)
    res = approx_span(target, 0)
    assert res.bound is None and res.within_bound is None
    assert res.squared_error == Fraction(1, 4)


def test_span_best_iterate_is_monotone():
    basis = list(enumerate_constituents(P, 2))[:10]
    target = {d: Fraction(i % 3, 31) for i, d in enumerate(basis)}
    errs = [frank_wolfe(target, basis, k).squared_error for k in range(1, 9)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))


def test_model_span_complete_theory():
    target = truth_omniscient(P, 1, satisfiable=[delta("10")])
    rep = model_span_report(target, to_formula(delta("10")), 1, P, [M1])
    assert rep.distance == 0 and rep.squared_distance == 0


def test_model_span_uninformed_distance():
    ex = parse_sentence("exists x. P(x)", P)
    rep = model_span_report(truth_uninformed(P, 1), ex, 1, P, [M1, M3])
    assert rep.squared_distance == Fraction(1, 4)
    assert rep.derived_uninformed == 0.5
    # the stated bound is reported but differs from the exact distance
    assert math.isclose(rep.stated_bound_uninformed, math.sqrt(2) / 4)


def test_model_span_errors():
    ex = parse_sentence("exists x. P(x)", P)
    target = truth_uninformed(P, 1)
    with pytest.raises(ModelsNotDistinct):
        model_span_report(target, ex, 1, P, [M1, FiniteModel.build(P, ["b"], {"P": [["b"]]})])
    with pytest.raises(ModelMismatch):
        model_span_report(target, ex, 1, P, [FiniteModel.build(P, ["a"], {})])
