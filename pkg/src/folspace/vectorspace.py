"""Sentences as vectors over the constituent basis.

Vectors are finitely supported maps from constituents to exact rationals.
Pointwise max and min play the roles of disjunction and conjunction on
indicator vectors, which is what the modus ponens operator relies on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .constituents import (
    DEFAULT_BUDGET,
    Constituent,
    ConstituentSet,
    constituent_id,
    dnf,
    enumerate_constituents,
    eval_constituent,
    sort_key,
    trivially_inconsistent,
)
from .errors import (
    NonPositiveEntry,
    NotAProbability,
    OracleIncomplete,
    RankMismatch,
)
from .logic import Formula, Vocabulary, quantifier_rank

Scalar = Fraction | float


class CoefficientScheme(enum.Enum):
    """How the coefficients of an embedded sentence are chosen."""

    INDICATOR = "indicator"
    UNIFORM = "uniform"
    CARDINALITY = "cardinality"

    @classmethod
    def parse(cls, value: str | CoefficientScheme) -> CoefficientScheme:
        if isinstance(value, cls):
            return value
        aliases = {"uniform-over-dnf": "uniform", "uniformoverdnf": "uniform"}
        key = str(value).lower()
        return cls(aliases.get(key, key))

    def coefficient(self, n: int) -> Fraction:
        if self is CoefficientScheme.INDICATOR:
            return Fraction(1)
        if self is CoefficientScheme.UNIFORM:
            return Fraction(1, n)
        return Fraction(n)


class SparseVector:
    """An immutable finitely supported vector of rank-``r`` constituents."""

    __slots__ = ("vocab", "rank", "context", "_entries")

    def __init__(
        self,
        vocab: Vocabulary,
        rank: int,
        entries: Mapping[Constituent, Scalar] | Iterable[tuple[Constituent, Scalar]] = (),
        context: tuple[str, ...] = (),
    ):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[Constituent, Scalar] = {}
        for d, a in items:
            if d.rank != rank or d.context != tuple(context):
                raise RankMismatch(f"constituent of rank {d.rank} in a rank-{rank} vector")
            if isinstance(a, Rational) and not isinstance(a, Fraction):
                a = Fraction(a)
            a = clean.get(d, 0) + a
            if a:
                clean[d] = a
            else:
                clean.pop(d, None)
        self.vocab = vocab
        self.rank = rank
        self.context = tuple(context)
        self._entries = clean

    @classmethod
    def zero(cls, vocab: Vocabulary, rank: int, context: tuple[str, ...] = ()) -> SparseVector:
        return cls(vocab, rank, {}, context)

    @classmethod
    def basis(cls, d: Constituent) -> SparseVector:
        return cls(d.vocab, d.rank, {d: Fraction(1)}, d.context)

    def __getitem__(self, d: Constituent) -> Scalar:
        return self._entries.get(d, Fraction(0))

    def get(self, d: Constituent, default=Fraction(0)):
        return self._entries.get(d, default)

    @property
    def support(self) -> frozenset[Constituent]:
        return frozenset(self._entries)

    def items(self) -> list[tuple[Constituent, Scalar]]:
        """Entries in canonical constituent order."""
        return sorted(self._entries.items(), key=lambda kv: _order(kv[0]))

    def __iter__(self) -> Iterator[Constituent]:
        return iter(d for d, _ in self.items())

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def _like(self, entries) -> SparseVector:
        return SparseVector(self.vocab, self.rank, entries, self.context)

    def _compatible(self, other: SparseVector) -> None:
        if not isinstance(other, SparseVector):
            raise TypeError("expected a SparseVector")
        if other.rank != self.rank or other.context != self.context:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")

    def __add__(self, other: SparseVector) -> SparseVector:
        self._compatible(other)
        return self._like(list(self._entries.items()) + list(other._entries.items()))

    def __neg__(self) -> SparseVector:
        return self._like({d: -a for d, a in self._entries.items()})

    def __sub__(self, other: SparseVector) -> SparseVector:
        return self + (-other)

    def __mul__(self, c: Scalar) -> SparseVector:
        return self._like({d: a * c for d, a in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (self.rank, self.context, self._entries) == (other.rank, other.context, other._entries)

    def __hash__(self):
        return hash((self.rank, self.context, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{_label(d)}: {_fmt(a)}" for d, a in self.items())
        return f"SparseVector(rank={self.rank}, {{{body}}})"

    def to_list(self) -> list[tuple[str, int, int] | tuple[str, float]]:
        """Serialize as ``(constituent id, numerator, denominator)`` triples."""
        out = []
        for d, a in self.items():
            if isinstance(a, Fraction):
                out.append((constituent_id(d), a.numerator, a.denominator))
            else:
                out.append((constituent_id(d), float(a)))
        return out

    @classmethod
    def from_list(cls, rows: Iterable[Sequence], space: ConstituentSet, vocab: Vocabulary) -> SparseVector:
        by_id = {constituent_id(d): d for d in space}
        entries = []
        for row in rows:
            d = by_id[row[0]]
            entries.append((d, Fraction(row[1], row[2]) if len(row) == 3 else float(row[1])))
        context = space[0].context if len(space) else ()
        return cls(vocab, space.rank, entries, context)


def _order(d: Constituent):
    try:
        return (0, sort_key(d))
    except Exception:
        return (1, repr(d))


def _label(d: Constituent) -> str:
    try:
        return constituent_id(d)
    except Exception:
        return repr(d)


def _fmt(a: Scalar) -> str:
    if isinstance(a, Fraction):
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
    return repr(a)


# --------------------------------------------------------------------------
# Embedding and inner product


def indicator(space: Iterable[Constituent], vocab: Vocabulary, rank: int, value: Scalar = Fraction(1), context=()) -> SparseVector:
    return SparseVector(vocab, rank, {d: value for d in space}, context)


def embed(
    f: Formula,
    r: int,
    vocab: Vocabulary,
    scheme: CoefficientScheme | str = CoefficientScheme.INDICATOR,
    context: Sequence[str] = (),
    budget: int = DEFAULT_BUDGET,
) -> SparseVector:
    """The vector of ``f`` at rank ``r``: support ``dnf(f, r)``, coefficients per ``scheme``."""
    scheme = CoefficientScheme.parse(scheme)
    members = dnf(f, r, vocab, tuple(context), budget)
    if not len(members):
        return SparseVector.zero(vocab, r, tuple(context))
    a = scheme.coefficient(len(members))
    return SparseVector(vocab, r, {d: a for d in members}, tuple(context))


def inner(v: SparseVector, w: SparseVector) -> Scalar:
    v._compatible(w)
    small, big = (v, w) if len(v) <= len(w) else (w, v)
    total: Scalar = Fraction(0)
    for d, a in small._entries.items():
        b = big._entries.get(d)
        if b is not None:
            total += a * b
    return total


def norm(v: SparseVector) -> float:
    return math.sqrt(inner(v, v))


def gram_schmidt(
    vs: Sequence,
    inner: Callable = inner,
    normalize: bool = False,
    tol: float = 1e-12,
) -> list:
    """Orthogonalize ``vs`` in order, dropping vectors dependent on earlier ones.

    Works for any vector type supporting ``+``, ``-`` and scalar ``*`` with the
    given ``inner``.  Exact inputs give exact outputs; ``normalize`` divides by
    the norm and therefore produces floats.
    """
    basis: list = []
    norms: list = []
    for v in vs:
        u = v
        for b, nb in zip(basis, norms):
            c = inner(u, b)
            if c:
                u = u - b * (c / nb)
        nn = inner(u, u)
        if _is_zero(nn, tol):
            continue
        basis.append(u)
        norms.append(nn)
    if normalize:
        return [b * (1.0 / math.sqrt(nb)) for b, nb in zip(basis, norms)]
    return basis


def _is_zero(x: Scalar, tol: float) -> bool:
    if isinstance(x, Fraction) or isinstance(x, int):
        return x == 0
    return abs(x) <= tol


# --------------------------------------------------------------------------
# Boolean-like operators and modus ponens


def join(v: SparseVector, w: SparseVector) -> SparseVector:
    """Pointwise maximum (absent coordinates count as 0)."""
    v._compatible(w)
    keys = v.support | w.support
    return v._like({d: max(v[d], w[d]) for d in keys})


def meet(v: SparseVector, w: SparseVector) -> SparseVector:
    """Pointwise minimum (absent coordinates count as 0)."""
    v._compatible(w)
    keys = v.support | w.support
    return v._like({d: min(v[d], w[d]) for d in keys})


def complement(v: SparseVector, space: Iterable[Constituent], literal: bool = False) -> SparseVector:
    """Indicator of the constituents of ``space`` outside the support of ``v``.

    With ``literal`` the coefficient is ``v``'s own coordinate there, which is
    always zero, giving the zero vector.
    """
    if literal:
        return SparseVector.zero(v.vocab, v.rank, v.context)
    supp = v.support
    return v._like({d: Fraction(1) for d in space if d not in supp})


def mp_apply(
    antecedent: Formula,
    consequent: Formula,
    state: SparseVector,
    r: int | None = None,
    scheme: CoefficientScheme | str = CoefficientScheme.INDICATOR,
    budget: int = DEFAULT_BUDGET,
) -> SparseVector:
    """Modus ponens on a system: ``(state meet antecedent-complement) join consequent``."""
    r = state.rank if r is None else r
    if r != state.rank:
        raise RankMismatch(f"state has rank {state.rank}, expected {r}")
    vocab = state.vocab
    space = enumerate_constituents(vocab, r, state.context, budget)
    ant = embed(antecedent, r, vocab, scheme, state.context, budget)
    cons = embed(consequent, r, vocab, scheme, state.context, budget)
    return join(meet(state, complement(ant, space)), cons)


def mp_chain(formulas: Sequence[Formula], r: int, vocab: Vocabulary, state: SparseVector | None = None,
             scheme: CoefficientScheme | str = CoefficientScheme.INDICATOR) -> SparseVector:
    """Apply ``phi_1 -> phi_2``, ``phi_2 -> phi_3``, ... starting from ``state`` (default ``phi_1``)."""
    if not formulas:
        raise ValueError("empty chain")
    v = embed(formulas[0], r, vocab, scheme) if state is None else state
    for a, b in zip(formulas, formulas[1:]):
        v = mp_apply(a, b, v, r, scheme)
    return v


# --------------------------------------------------------------------------
# Plausibility, entropy, dagger vectors


def uniform_distribution(space: ConstituentSet) -> dict[Constituent, Fraction]:
    n = len(space)
    return {d: Fraction(1, n) for d in space}


def plausibility(
    v: SparseVector,
    p: Mapping[Constituent, Scalar] | None = None,
    space: ConstituentSet | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Scalar:
    """``sum_d p(d) * v_d``; ``p`` defaults to uniform over all rank-``r`` constituents."""
    if space is None:
        space = enumerate_constituents(v.vocab, v.rank, v.context, budget)
    if p is None:
        p = uniform_distribution(space)
    else:
        _check_probability(p, space)
    return sum((p.get(d, 0) * a for d, a in v._entries.items()), Fraction(0))


def _check_probability(p: Mapping[Constituent, Scalar], space: ConstituentSet) -> None:
    if any(x < 0 for x in p.values()):
        raise NotAProbability("negative probability")
    if any(d not in space for d in p):
        raise NotAProbability("probability mass outside the basis")
    total = sum(p.values(), Fraction(0))
    if isinstance(total, Fraction) and total != 1 or not isinstance(total, Fraction) and abs(total - 1) > 1e-12:
        raise NotAProbability(f"probabilities sum to {total}, not 1")


def unnorm_entropy(v: SparseVector, basis: Iterable[Constituent] | None = None) -> float:
    """``sum a (1 - log a)`` over ``basis`` (default: the support); entries must be positive."""
    coords = list(v._entries.items()) if basis is None else [(d, v[d]) for d in basis]
    total = 0.0
    for d, a in coords:
        if a <= 0:
            raise NonPositiveEntry(f"coordinate {_label(d)} is {_fmt(a)}; entropy needs positive entries")
        x = float(a)
        total += x * (1.0 - math.log(x))
    return total


def dagger_of(v: SparseVector, alpha: Scalar, space: Iterable[Constituent]) -> SparseVector:
    """1 on the support of ``v`` and ``alpha`` elsewhere in ``space``."""
    if alpha <= 0:
        raise NonPositiveEntry("alpha must be positive")
    supp = v.support
    return v._like({d: (Fraction(1) if d in supp else alpha) for d in space})


def dagger_vector(f: Formula, r: int, alpha: Scalar, vocab: Vocabulary, budget: int = DEFAULT_BUDGET) -> SparseVector:
    space = enumerate_constituents(vocab, r, (), budget)
    return dagger_of(embed(f, r, vocab, CoefficientScheme.INDICATOR, (), budget), alpha, space)


# --------------------------------------------------------------------------
# Theory dimension


@dataclass(frozen=True)
class DimensionResult:
    """Number of rank-``r`` constituents consistent with a theory.

    ``lower`` counts constituents with a witnessing finite model, ``upper``
    those not refuted.  They coincide when the oracle is exact.
    """

    lower: int
    upper: int
    total: int
    exact: bool

    @property
    def value(self) -> int:
        if not self.exact:
            raise OracleIncomplete(f"dimension only known to lie in [{self.lower}, {self.upper}]")
        return self.lower


def theory_dimension(
    axioms: Formula,
    r: int,
    vocab: Vocabulary,
    sat_oracle: Callable[[Constituent], bool | None] | None = None,
    max_size: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> DimensionResult:
    """Count rank-``r`` constituents consistent with ``axioms``.

    Since a constituent decides every sentence of rank at most ``r``, it is
    consistent with the axioms iff it is satisfiable and makes them true.
    ``sat_oracle`` may return ``None`` for "unknown".  The default oracle is
    exact for monadic vocabularies (bounded model search) and otherwise uses
    models up to ``max_size`` (default 2) below and trivial inconsistency above.
    """
    from .models import realized_constituents

    if quantifier_rank(axioms) > r:
        raise RankMismatch(f"axioms have rank {quantifier_rank(axioms)} > {r}")
    space = enumerate_constituents(vocab, r, (), budget)
    candidates = [d for d in space if eval_constituent(d, axioms)]
    if sat_oracle is None:
        if vocab.is_monadic:
            realized = realized_constituents(vocab, r)
            sat_oracle = lambda d: d in realized  # noqa: E731
        else:
            realized = realized_constituents(vocab, r, max_size or 2, budget)

            def sat_oracle(d):
                if d in realized:
                    return True
                return False if trivially_inconsistent(d) else None

    lower = upper = 0
    for d in candidates:
        verdict = sat_oracle(d)
        if verdict is True:
            lower += 1
            upper += 1
        elif verdict is None:
            upper += 1
    return DimensionResult(lower, upper, len(space), lower == upper)
