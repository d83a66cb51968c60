"""Agent knowledge matrices, beliefs, belief measures and conjecture ranking."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .constituents import DEFAULT_BUDGET, Constituent, enumerate_constituents
from .errors import DegenerateMatrix, NegativeBelief
from .logic import FALSE, Formula, Implies, Not, Vocabulary, conj, quantifier_rank
from .models import FiniteModel, check
from .prover import Refuter
from .reftree import RefinementTree, TreeMeasure, weighted_measure
from .vectorspace import embed


@dataclass(frozen=True)
class KnowledgeMatrix:
    """Implication scores between an agent's sentences.

    ``sentences[0]`` is the conjunction of the known-false sentences.
    ``N[i][j]`` estimates the probability that sentence ``i`` implies sentence ``j``.
    """

    sentences: tuple[Formula, ...]
    models: tuple[FiniteModel, ...]
    alpha: Fraction
    N: tuple[tuple[Fraction, ...], ...]
    refuted: frozenset[tuple[int, int]] = frozenset()
    diagnostics: tuple[str, ...] = ()

    @property
    def L(self) -> int:
        return len(self.sentences) - 1

    def invariant_violations(self) -> list[str]:
        out = []
        n = len(self.sentences)
        if any(self.N[0][j] != 1 for j in range(n)):
            out.append("row 0 is not all ones")
        if any(self.N[i][i] != 1 for i in range(n)):
            out.append("diagonal is not all ones")
        if any(not (0 <= x <= 1) for row in self.N for x in row):
            out.append("entry outside [0, 1]")
        return out

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.N], dtype=float)


def build_knowledge(
    false_sentences: Sequence[Formula],
    conjectures: Sequence[Formula],
    models: Sequence[FiniteModel],
    alpha: Fraction | int = 1,
    refute_depth: int | None = 0,
    rank: int | None = None,
    vocab: Vocabulary | None = None,
    literal_refute: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> KnowledgeMatrix:
    """Assemble the knowledge matrix of an agent.

    ``N[i][j] = 1`` when the refuter refutes ``phi_i & !phi_j`` (so the
    implication is valid); with ``literal_refute`` it refutes ``phi_i -> phi_j``
    instead.  Otherwise ``N[i][j]`` is the number of models where the
    implication holds divided by ``M + alpha``.  Row 0 and the diagonal are 1.
    ``refute_depth=None`` disables the refuter.  With no known-false sentences
    ``phi_0`` is ``false``.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    phi0 = conj(*false_sentences) if false_sentences else FALSE
    sentences = (phi0, *conjectures)
    if rank is None:
        rank = max(quantifier_rank(s) for s in sentences)
    if refute_depth is not None and vocab is None:
        raise ValueError("the refuter needs a vocabulary")
    refuter = Refuter(budget)
    models = tuple(models)
    denom = len(models) + alpha
    refuted: set[tuple[int, int]] = set()
    diags: list[str] = []
    n = len(sentences)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == 0 or i == j:
                row.append(Fraction(1))
                continue
            imp = Implies(sentences[i], sentences[j])
            if refute_depth is not None:
                target = imp if literal_refute else conj(sentences[i], Not(sentences[j]))
                res = refuter.refute(target, rank, refute_depth, vocab)
                if res.diagnostic:
                    diags.append(f"N[{i}][{j}]: {res.diagnostic}")
                if res.refuted:
                    refuted.add((i, j))
                    row.append(Fraction(1))
                    continue
            hits = sum(1 for m in models if check(m, imp))
            row.append(Fraction(hits) / denom)
        rows.append(tuple(row))
    return KnowledgeMatrix(sentences, models, alpha, tuple(rows), frozenset(refuted), tuple(diags))


def beliefs(k: KnowledgeMatrix) -> tuple[Fraction, ...]:
    """``1 - N[i][0]`` for every sentence (index 0 included)."""
    return tuple(1 - row[0] for row in k.N)


def constituent_beliefs(
    vocab: Vocabulary,
    constituents: Sequence[Constituent],
    models: Sequence[FiniteModel] = (),
    alpha: Fraction | int = 1,
    refute_depth: int | None = None,
    false_sentences: Sequence[Formula] = (),
    budget: int = DEFAULT_BUDGET,
) -> dict[Constituent, Fraction]:
    """Beliefs in constituents obtained by enrolling each one as a conjecture.

    Only the column against ``phi_0`` is needed, so the full matrix is not built.
    """
    from .constituents import to_formula

    alpha = Fraction(alpha)
    phi0 = conj(*false_sentences) if false_sentences else FALSE
    refuter = Refuter(budget)
    denom = len(models) + alpha
    out = {}
    for d in constituents:
        phi = to_formula(d)
        if refute_depth is not None:
            res = refuter.refute(conj(phi, Not(phi0)), d.rank, refute_depth, vocab)
            if res.refuted:
                out[d] = Fraction(0)
                continue
        imp = Implies(phi, phi0)
        hits = sum(1 for m in models if check(m, imp))
        out[d] = 1 - Fraction(hits) / denom
    return out


def belief_measure(
    tree: RefinementTree,
    belief: Mapping[Constituent, Fraction] | Callable[[Constituent], Fraction],
) -> TreeMeasure:
    """Normalize beliefs among siblings level by level, starting from mass 1.

    A node whose siblings all have belief 0 shares its parent's mass uniformly
    with them; a node of mass 0 passes 0 to its children.
    """
    get = belief.get if isinstance(belief, Mapping) else belief
    for d in tree.nodes():
        b = get(d)
        if b is not None and b < 0:
            raise NegativeBelief(f"negative belief {b}")
    return weighted_measure(tree, get)


# --------------------------------------------------------------------------
# Conjectures


@dataclass(frozen=True)
class ConjectureRanking:
    order: tuple[tuple[int, float], ...]
    singular_values: tuple[float, ...]
    degenerate: bool


def rank_conjectures(k: KnowledgeMatrix, explore: bool = False, center: bool = False, digits: int = 12) -> ConjectureRanking:
    """Order conjectures by singular-value-weighted squared loadings of the conjecture block.

    The score of conjecture ``j`` is ``sum_k s_k * V[j, k]^2`` where
    ``block = U diag(s) V^T``.  Descending order suits exploitation and
    ascending order (``explore``) exploration; ties go to the lower index.
    ``center`` subtracts column means first.
    """
    L = k.L
    if L < 1:
        raise DegenerateMatrix("no conjectures to rank")
    block = k.as_array()[1:, 1:]
    if center:
        block = block - block.mean(axis=0, keepdims=True)
    degenerate = bool(np.all(block == block[:, :1]))
    _, s, vt = np.linalg.svd(block)
    scores = [round(float(np.sum(s * vt[:, j] ** 2)), digits) for j in range(L)]
    if degenerate:
        scores = [round(sum(scores) / L, digits)] * L
    idx = list(range(1, L + 1))
    sign = 1 if explore else -1
    ordered = sorted(zip(idx, scores), key=lambda p: (sign * p[1], p[0]))
    return ConjectureRanking(tuple(ordered), tuple(float(x) for x in s), degenerate)


def _exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class BasisReport:
    rank: int
    dimension: int
    conjecture_rank: int
    dependent: bool
    contains_top: bool


def conjecturing_basis_report(k: KnowledgeMatrix, vocab: Vocabulary, rank: int | None = None,
                              budget: int = DEFAULT_BUDGET) -> BasisReport:
    """Linear dependence among embedded conjectures and whether the span reaches ``true``."""
    from .logic import TRUE

    r = max(quantifier_rank(s) for s in k.sentences) if rank is None else rank
    space = enumerate_constituents(vocab, r, (), budget)
    vecs = [embed(s, r, vocab, budget=budget) for s in k.sentences]
    coords = [[v[d] for d in space] for v in vecs]
    conj_rank = _exact_rank(coords[1:]) if len(coords) > 1 else 0
    span_rank = _exact_rank(coords)
    top = [embed(TRUE, r, vocab, budget=budget)[d] for d in space]
    with_top = _exact_rank(coords + [top])
    return BasisReport(
        rank=r,
        dimension=len(space),
        conjecture_rank=conj_rank,
        dependent=conj_rank < len(coords) - 1,
        contains_top=with_top == span_rank,
    )
