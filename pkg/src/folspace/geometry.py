"""Approximate spanning of truth vectors and the labeled constituent hypercube."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .constituents import (
    DEFAULT_BUDGET,
    AttributiveConstituent,
    Constituent,
    DenseLayer,
    constituent_bits,
    dnf,
    enumerate_constituents,
    layer_universe,
)
from .errors import BudgetExceeded, InvalidCounts, ModelMismatch, ModelsNotDistinct, RepresentationNotDense
from .logic import Formula, Vocabulary
from .models import FiniteModel, check, realized_constituents, satisfying_constituent

DENSE_CUBE_LIMIT = 24


# --------------------------------------------------------------------------
# Constituents as bit-strings


def constituent_to_bits(d: Constituent) -> str:
    """Sign bit-string under canonical layer order (head and base signs first, if any)."""
    return constituent_bits(d)


def bits_to_constituent(bits: str, vocab: Vocabulary, r: int, budget: int = DEFAULT_BUDGET) -> Constituent:
    """Inverse of :func:`constituent_to_bits` for sentence constituents of rank ``r >= 1``."""
    if r == 0:
        if bits:
            raise ValueError("the rank-0 constituent has the empty bit-string")
        return Constituent(AttributiveConstituent(vocab, 0, 0, (), DenseLayer((), ())))
    try:
        universe = layer_universe(vocab, r - 1, 1, budget)
    except BudgetExceeded as exc:
        raise RepresentationNotDense("layer universe is not enumerable") from exc
    if len(bits) != len(universe) or set(bits) - {"0", "1"}:
        raise ValueError(f"expected {len(universe)} bits")
    signs = tuple(c == "1" for c in bits)
    return Constituent(AttributiveConstituent(vocab, r, 0, (), DenseLayer(universe, signs)))


# --------------------------------------------------------------------------
# Labeled hypercube


@dataclass(frozen=True)
class LabeledHypercube:
    """Labels in {-1, +1} on ``{0,1}^N``; vertex ``x`` is stored at index ``int(x, 2)``.

    -1 marks satisfiable constituents and +1 unsatisfiable ones.
    """

    n: int
    labels: np.ndarray

    def __post_init__(self):
        if self.labels.shape != (1 << self.n,):
            raise ValueError("need one label per vertex")
        if not np.all(np.abs(self.labels) == 1):
            raise ValueError("labels must be -1 or +1")

    @classmethod
    def from_function(cls, n: int, f: Callable[[str], int]) -> LabeledHypercube:
        if n > DENSE_CUBE_LIMIT:
            raise BudgetExceeded(f"dense hypercube of dimension {n} exceeds {DENSE_CUBE_LIMIT}", 1 << n)
        labels = np.array([f(format(x, f"0{n}b")) if n else f("") for x in range(1 << n)], dtype=np.int8)
        return cls(n, labels)

    @classmethod
    def dictator(cls, n: int, i: int = 1) -> LabeledHypercube:
        return cls.from_function(n, lambda x: 1 if x[i - 1] == "1" else -1)

    @classmethod
    def constant(cls, n: int, value: int = 1) -> LabeledHypercube:
        return cls(n, np.full(1 << n, value, dtype=np.int8))

    def label(self, bits: str) -> int:
        return int(self.labels[int(bits, 2) if bits else 0])

    def boundary_edges(self) -> list[tuple[str, str]]:
        out = []
        for x in range(1 << self.n):
            for b in range(self.n):
                y = x ^ (1 << b)
                if x < y and self.labels[x] != self.labels[y]:
                    out.append((format(x, f"0{self.n}b"), format(y, f"0{self.n}b")))
        return sorted(out)


def constituent_cube(
    vocab: Vocabulary,
    r: int,
    satisfiable: Iterable[Constituent] | Callable[[Constituent], bool] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> LabeledHypercube:
    """The rank-``r`` sentence constituents as a hypercube labeled by satisfiability.

    The default labeling comes from bounded model search (exact for monadic
    vocabularies).
    """
    space = enumerate_constituents(vocab, r, (), budget)
    if satisfiable is None:
        sat = realized_constituents(vocab, r, None if vocab.is_monadic else 2, budget)
        is_sat = sat.__contains__
    elif callable(satisfiable):
        is_sat = satisfiable
    else:
        sat = set(satisfiable)
        is_sat = sat.__contains__
    n = len(constituent_bits(space[0])) if len(space) else 0
    if n > DENSE_CUBE_LIMIT:
        raise BudgetExceeded(f"dense hypercube of dimension {n} exceeds {DENSE_CUBE_LIMIT}", 1 << n)
    labels = np.ones(1 << n, dtype=np.int8)
    for d in space:
        bits = constituent_bits(d)
        labels[int(bits, 2) if bits else 0] = -1 if is_sat(d) else 1
    return LabeledHypercube(n, labels)


def influences(cube: LabeledHypercube) -> list[Fraction]:
    """``Inf_i`` for ``i = 1..N``: the fraction of vertices whose label flips with coordinate ``i``."""
    counts = kernels.influence_counts(cube.labels, cube.n)
    return [Fraction(int(c), 1 << cube.n) for c in counts]


def influence(cube: LabeledHypercube, i: int) -> Fraction:
    if not 1 <= i <= cube.n:
        raise IndexError(f"coordinate {i} outside 1..{cube.n}")
    return influences(cube)[i - 1]


def total_influence(cube: LabeledHypercube) -> Fraction:
    return sum(influences(cube), Fraction(0))


def variance_of_valuation(sat_count: int, total: int) -> Fraction:
    """``1 - ((total - 2D) / total)^2`` for a labeling with ``D`` vertices at -1."""
    if total < 1 or not 0 <= sat_count <= total:
        raise InvalidCounts(f"need 0 <= D <= total and total >= 1, got D={sat_count}, total={total}")
    m = Fraction(total - 2 * sat_count, total)
    return 1 - m * m


def label_variance(cube: LabeledHypercube) -> Fraction:
    """``E[l^2] - E[l]^2`` computed directly from the labels."""
    size = 1 << cube.n
    mean = Fraction(kernels.label_sum(cube.labels), size)
    return 1 - mean * mean


@dataclass(frozen=True)
class PoincareReport:
    variance: Fraction
    total_influence: Fraction
    holds: bool
    max_influence: Fraction
    kkl_ratio: float | None

    def to_dict(self) -> dict:
        return {
            "variance": _q(self.variance),
            "total_influence": _q(self.total_influence),
            "poincare_holds": self.holds,
            "max_influence": _q(self.max_influence),
            "kkl_ratio": self.kkl_ratio,
        }


def check_poincare(cube: LabeledHypercube) -> PoincareReport:
    """Compare ``Var`` with total influence; also report ``max Inf_i / (Var log N / N)``."""
    infs = influences(cube)
    var = label_variance(cube)
    tot = sum(infs, Fraction(0))
    mx = max(infs) if infs else Fraction(0)
    n = cube.n
    kkl = None
    if n >= 2 and var > 0:
        kkl = float(mx) / (float(var) * math.log(n) / n)
    return PoincareReport(var, tot, var <= tot, mx, kkl)


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# Truth representations and approximate spanning


class TruthKind(enum.Enum):
    UNINFORMED = "uninformed"
    OMNISCIENT = "omniscient"


@dataclass(frozen=True)
class TruthRepresentation:
    """Uniform mass over a basis: all constituents, or only the satisfiable ones."""

    kind: TruthKind
    basis: tuple[Constituent, ...]
    space: tuple[Constituent, ...]

    @property
    def vector(self) -> dict[Constituent, Fraction]:
        w = Fraction(1, len(self.basis))
        return {d: w for d in self.basis}


def truth_uninformed(vocab: Vocabulary, r: int, budget: int = DEFAULT_BUDGET) -> TruthRepresentation:
    space = tuple(enumerate_constituents(vocab, r, (), budget))
    return TruthRepresentation(TruthKind.UNINFORMED, space, space)


def truth_omniscient(
    vocab: Vocabulary, r: int, satisfiable: Iterable[Constituent] | None = None, budget: int = DEFAULT_BUDGET
) -> TruthRepresentation:
    space = tuple(enumerate_constituents(vocab, r, (), budget))
    sat = set(satisfiable) if satisfiable is not None else realized_constituents(vocab, r)
    return TruthRepresentation(TruthKind.OMNISCIENT, tuple(d for d in space if d in sat), space)


def _sq_dist(a: Mapping[Constituent, Fraction], b: Mapping[Constituent, Fraction]) -> Fraction:
    keys = set(a) | set(b)
    return sum(((a.get(k, 0) - b.get(k, 0)) ** 2 for k in keys), Fraction(0))


@dataclass(frozen=True)
class SpanResult:
    selected: tuple[tuple[Constituent, ...], ...]
    errors: tuple[Fraction, ...]
    bound: float | None

    @property
    def best_step(self) -> int:
        """Step with the smallest error (earliest on ties); 0 when no step was taken."""
        if len(self.errors) == 1:
            return 0
        tail = self.errors[1:]
        return 1 + tail.index(min(tail))

    @property
    def squared_error(self) -> Fraction:
        """Squared error of the best iterate within the step budget."""
        return self.errors[self.best_step]

    @property
    def error(self) -> float:
        return math.sqrt(self.squared_error)

    @property
    def within_bound(self) -> bool | None:
        return None if self.bound is None else self.error <= self.bound + 1e-12


def approx_span(target: TruthRepresentation, k: int) -> SpanResult:
    """Greedy approximate Caratheodory for a truth representation over its own basis."""
    return frank_wolfe(target.vector, target.basis, k)


def frank_wolfe(target: Mapping[Constituent, Fraction], basis: Sequence[Constituent], k: int) -> SpanResult:
    """Frank-Wolfe with averaging over the box ``[0, 1/n]^basis`` (``n = len(basis)``).

    Step ``t`` picks the vertex minimizing the linearized objective at the
    current average (the origin for ``t = 1``): coordinates with negative
    gradient are included and, on a zero gradient, coordinates where the
    target is positive.  The average of the ``t`` picked vertices becomes the
    new iterate.  ``errors[t]`` is the squared distance after ``t`` steps,
    ``errors[0]`` the squared norm of the target.  The reported bound is
    ``sqrt(2 / (k n))``.
    """
    n = len(basis)
    tv = dict(target)
    scale = Fraction(1, n)
    x: dict[Constituent, Fraction] = {}
    errors = [_sq_dist(tv, x)]
    picks: list[tuple[Constituent, ...]] = []
    for t in range(1, k + 1):
        chosen = []
        for d in basis:
            g = x.get(d, 0) - tv.get(d, 0)
            if g < 0 or (g == 0 and tv.get(d, 0) > 0):
                chosen.append(d)
        picks.append(tuple(chosen))
        sel = set(chosen)
        x = {d: (x.get(d, 0) * (t - 1) + (scale if d in sel else 0)) / t for d in basis}
        x = {d: a for d, a in x.items() if a}
        errors.append(_sq_dist(tv, x))
    bound = math.sqrt(2 / (k * n)) if k >= 1 else None
    return SpanResult(tuple(picks), tuple(errors), bound)


@dataclass(frozen=True)
class ModelSpanReport:
    """Exact distance to a truth vector next to two closed-form bound expressions.

    ``stated_bound_uninformed`` is ``sqrt((T^2 - 2NT + N^2) / (N T^2))``, which
    undershoots the exact distance ``sqrt((T - N) / (N T))``; both are kept so
    the discrepancy stays visible.  Only ``derived_uninformed`` is exact.
    """

    N: int
    total: int
    satisfiable: int
    models: int
    distance: float
    squared_distance: Fraction
    derived_uninformed: float | None
    stated_bound_uninformed: float
    stated_bound_omniscient: float

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "total": self.total,
            "satisfiable": self.satisfiable,
            "models": self.models,
            "distance": self.distance,
            "squared_distance": _q(self.squared_distance),
            "derived_uninformed": self.derived_uninformed,
            "stated_bound_uninformed": self.stated_bound_uninformed,
            "stated_bound_omniscient": self.stated_bound_omniscient,
        }


def derived_uninformed_distance(n_dnf: int, total: int) -> float:
    """Exact ``|| T_U - phi ||`` when ``phi`` is uniform ``1/N`` on ``N`` of ``total`` constituents."""
    return math.sqrt((total - n_dnf) / (n_dnf * total))


def model_span_report(
    target: TruthRepresentation,
    f: Formula,
    r: int,
    vocab: Vocabulary,
    models: Sequence[FiniteModel],
    budget: int = DEFAULT_BUDGET,
) -> ModelSpanReport:
    """Distance from ``target`` to the uniform embedding of ``f``, alongside the stated bounds."""
    kinds = [satisfying_constituent(m, r) for m in models]
    if len(set(kinds)) != len(kinds):
        raise ModelsNotDistinct("two models satisfy the same constituent")
    for m in models:
        if not check(m, f):
            raise ModelMismatch(f"model {m} does not satisfy the sentence")
    members = list(dnf(f, r, vocab, (), budget))
    n_dnf = len(members)
    if n_dnf == 0:
        raise ModelMismatch("the sentence has an empty normal form")
    phi = {d: Fraction(1, n_dnf) for d in members}
    sq = _sq_dist(target.vector, phi)
    total = len(target.space)
    D = len(target.basis) if target.kind is TruthKind.OMNISCIENT else total
    k = len(models)
    pu = math.sqrt((total * total - 2 * n_dnf * total + n_dnf * n_dnf) / (n_dnf * total * total))
    po_num = D * (D - 2 * k) + k * n_dnf
    po = math.sqrt(po_num / (n_dnf * D * D)) if po_num >= 0 else float("nan")
    derived = derived_uninformed_distance(n_dnf, total) if target.kind is TruthKind.UNINFORMED else None
    return ModelSpanReport(n_dnf, total, D, k, math.sqrt(sq), sq, derived, pu, po)
