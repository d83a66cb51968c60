"""Refutation by expansion, component proof systems and the sandwich procedure."""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .constituents import (
    DEFAULT_BUDGET,
    Constituent,
    ConstituentSet,
    constituent_id,
    dnf,
    enumerate_constituents,
    eval_constituent,
    expand,
    inconsistency_reason,
    to_formula,
)
from .errors import BasisMismatch, BudgetExceeded, OracleIncomplete
from .logic import Formula, Vocabulary, quantifier_rank
from .models import FiniteModel, check, realized_constituents
from .vectorspace import SparseVector, embed, inner, meet


# --------------------------------------------------------------------------
# Refutation


@dataclass(frozen=True)
class ExpansionTrace:
    """How one constituent of the target's normal form was (or was not) refuted.

    ``levels[s]`` is ``(alive, inconsistent)``: constituents examined at
    depth ``s`` and how many of them were trivially inconsistent.
    """

    constituent: str
    levels: tuple[tuple[int, int], ...]
    refuted_at: int | None
    reasons: tuple[str, ...] = ()


@dataclass(frozen=True)
class RefutationResult:
    refuted: bool
    depth_used: int
    certificate: tuple[ExpansionTrace, ...] = ()
    diagnostic: str | None = None

    def __bool__(self) -> bool:
        return self.refuted


class Refuter:
    """Breadth-first refutation with a shared expansion cache."""

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self._children: dict[Constituent, ConstituentSet] = {}

    def children(self, d: Constituent) -> ConstituentSet:
        hit = self._children.get(d)
        if hit is None:
            hit = expand(d, 1, self.budget)
            self._children[d] = hit
        return hit

    def refute_constituent(self, d: Constituent, depth: int) -> ExpansionTrace:
        frontier = [d]
        levels = []
        reasons: set[str] = set()
        for s in range(depth + 1):
            alive = []
            for c in frontier:
                why = inconsistency_reason(c)
                if why:
                    reasons.add(why.split(":")[0].split("/")[0])
                else:
                    alive.append(c)
            levels.append((len(frontier), len(frontier) - len(alive)))
            if not alive:
                return ExpansionTrace(_cid(d), tuple(levels), s, tuple(sorted(reasons)))
            if s == depth:
                break
            nxt: dict[Constituent, None] = {}
            for c in alive:
                for e in self.children(c):
                    nxt[e] = None
            frontier = list(nxt)
        return ExpansionTrace(_cid(d), tuple(levels), None, tuple(sorted(reasons)))

    def refute(self, f: Formula | Constituent, r: int | None = None, depth: int = 0,
               vocab: Vocabulary | None = None) -> RefutationResult:
        try:
            if isinstance(f, Constituent):
                members: Sequence[Constituent] = [f]
            else:
                if vocab is None:
                    raise ValueError("a vocabulary is needed to refute a formula")
                r = quantifier_rank(f) if r is None else r
                members = list(dnf(f, r, vocab, (), self.budget))
            traces = []
            used = 0
            for d in members:
                tr = self.refute_constituent(d, depth)
                traces.append(tr)
                if tr.refuted_at is None:
                    return RefutationResult(False, depth, tuple(traces))
                used = max(used, tr.refuted_at)
            return RefutationResult(True, used, tuple(traces))
        except BudgetExceeded as exc:
            return RefutationResult(False, depth, (), f"budget exceeded: {exc}")


def refute(f: Formula | Constituent, r: int | None = None, depth: int = 0,
           vocab: Vocabulary | None = None, budget: int = DEFAULT_BUDGET) -> RefutationResult:
    """Sound refutation: every constituent of ``dnf(f, r)`` expands to trivially inconsistent ones.

    A constituent counts as refuted at depth ``s`` when all of its rank
    ``r+s`` expansions (reached through consistent intermediate nodes) are
    trivially inconsistent.  Exceeding the enumeration budget yields an
    unrefuted result with a diagnostic rather than an exception.
    """
    return Refuter(budget).refute(f, r, depth, vocab)


def _cid(d: Constituent) -> str:
    try:
        return f"{d.rank}:{constituent_id(d)}"
    except Exception:
        return repr(d)


# --------------------------------------------------------------------------
# Component proof systems


Classifier = Callable[[Formula, SparseVector], int]


def standard_classifier(f: Formula, psi: SparseVector) -> int:
    """1 iff ``psi`` lies inside the normal form of ``f``.

    For a standard basis vector this is membership of its constituent in
    ``dnf(f)``; for other basis vectors every constituent of the support must
    be in ``dnf(f)``, which is what validity of ``psi -> f`` means.
    """
    return int(all(eval_constituent(d, f) for d in psi.support))


def overlap_classifier(f: Formula, psi: SparseVector) -> int:
    """1 iff ``psi`` meets the embedding of ``f`` (nonzero pointwise minimum)."""
    v = embed(f, psi.rank, psi.vocab, context=psi.context)
    return int(bool(meet(_abs(psi), v)))


def _abs(v: SparseVector) -> SparseVector:
    return v._like({d: abs(a) for d, a in v._entries.items()})


@dataclass
class ComponentProofSystem:
    """A basis of pairwise orthogonal vectors with a valuation and a classifier."""

    basis: tuple[SparseVector, ...]
    tau: tuple[int, ...]
    chi: Classifier = standard_classifier

    def __post_init__(self):
        self.basis = tuple(self.basis)
        self.tau = tuple(int(t) for t in self.tau)
        if len(self.tau) != len(self.basis):
            raise BasisMismatch("one valuation bit per basis element is required")
        ranks = {b.rank for b in self.basis}
        if len(ranks) > 1:
            raise BasisMismatch("basis elements of different ranks")
        for i, a in enumerate(self.basis):
            for b in self.basis[i + 1:]:
                if inner(a, b) != 0:
                    raise BasisMismatch("basis elements must be pairwise orthogonal")

    @property
    def rank(self) -> int:
        return self.basis[0].rank if self.basis else 0

    @property
    def labels(self) -> list[str]:
        out = []
        for b in self.basis:
            if len(b) == 1:
                out.append(constituent_id(next(iter(b.support))))
            else:
                out.append("{" + ",".join(constituent_id(d) for d in b) + "}")
        return out


def standard_system(
    vocab: Vocabulary,
    r: int,
    tau: Callable[[Constituent], int] | Sequence[int] | None = None,
    chi: Classifier = standard_classifier,
    budget: int = DEFAULT_BUDGET,
) -> ComponentProofSystem:
    """The standard basis of rank-``r`` constituents; ``tau`` defaults to all ones."""
    space = enumerate_constituents(vocab, r, (), budget)
    basis = tuple(SparseVector.basis(d) for d in space)
    if tau is None:
        bits = [1] * len(space)
    elif callable(tau):
        bits = [int(tau(d)) for d in space]
    else:
        bits = list(tau)
    return ComponentProofSystem(basis, tuple(bits), chi)


def ground_truth_system(vocab: Vocabulary, r: int, budget: int = DEFAULT_BUDGET) -> ComponentProofSystem:
    """Exact valuation from bounded model search (monadic vocabularies only)."""
    if not vocab.is_monadic:
        raise OracleIncomplete("ground-truth satisfiability is only decided for monadic vocabularies")
    sat = realized_constituents(vocab, r)
    return standard_system(vocab, r, lambda d: int(d in sat), standard_classifier, budget)


class Status(enum.Enum):
    KNOWN_ZERO = "known-zero"
    KNOWN_ONE = "known-one"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Component:
    label: str
    status: Status
    reason: str
    witness: object = None

    @property
    def bit(self) -> int | None:
        return {Status.KNOWN_ZERO: 0, Status.KNOWN_ONE: 1}.get(self.status)


@dataclass(frozen=True)
class ComponentProof:
    """Per-component outcome for a target sentence.

    ``value`` is the conjunction of the component bits and ``covered`` their
    disjunction; both are ``None`` while an undecided component could change
    them.
    """

    target: Formula
    components: tuple[Component, ...]

    @property
    def bits(self) -> tuple[int | None, ...]:
        return tuple(c.bit for c in self.components)

    @property
    def value(self) -> int | None:
        bits = self.bits
        if 0 in bits:
            return 0
        return None if None in bits else 1

    @property
    def covered(self) -> int | None:
        bits = self.bits
        if 1 in bits:
            return 1
        return None if None in bits else 0

    def count(self, status: Status) -> int:
        return sum(c.status is status for c in self.components)

    @property
    def complete(self) -> bool:
        return self.count(Status.UNKNOWN) == 0

    def to_dict(self) -> dict:
        return {
            "components": [
                {"id": c.label, "status": c.status.value, "reason": c.reason,
                 "witness": None if c.witness is None else str(c.witness)}
                for c in self.components
            ],
            "known_one": self.count(Status.KNOWN_ONE),
            "known_zero": self.count(Status.KNOWN_ZERO),
            "unknown": self.count(Status.UNKNOWN),
        }


def component_proof(f: Formula, sys: ComponentProofSystem) -> ComponentProof:
    """Evaluate ``tau(psi) and chi(f, psi)`` for every basis element ``psi``."""
    if quantifier_rank(f) > sys.rank:
        raise BasisMismatch(f"formula rank {quantifier_rank(f)} exceeds basis rank {sys.rank}")
    comps = []
    for label, psi, t in zip(sys.labels, sys.basis, sys.tau):
        c = int(sys.chi(f, psi))
        if t and c:
            comps.append(Component(label, Status.KNOWN_ONE, "system"))
        else:
            why = "valuation" if not t else "classifier"
            comps.append(Component(label, Status.KNOWN_ZERO, why))
    return ComponentProof(f, tuple(comps))


def proof_errors(hat: ComponentProofSystem, ground: ComponentProofSystem, f: Formula) -> tuple[int, int]:
    """``(E_V, E_f)``: disagreements of the valuations and of the classifiers on ``f``."""
    if len(hat.basis) != len(ground.basis) or any(a != b for a, b in zip(hat.basis, ground.basis)):
        raise BasisMismatch("systems use different bases")
    e_v = sum(abs(a - b) for a, b in zip(hat.tau, ground.tau))
    e_f = sum(abs(int(hat.chi(f, psi)) - int(ground.chi(f, psi))) for psi in hat.basis)
    return e_v, e_f


# --------------------------------------------------------------------------
# Sandwich


@dataclass
class SandwichStats:
    refuter_calls: int = 0
    model_checks: int = 0


def sandwich(
    f: Formula,
    r: int,
    vocab: Vocabulary,
    refute_depth: int = 0,
    models: Sequence[FiniteModel] = (),
    budget: int = DEFAULT_BUDGET,
    stats: SandwichStats | None = None,
    threads: int = 1,
) -> ComponentProof:
    """Bound each standard-basis component from below (refutation) and above (models).

    A constituent outside ``dnf(f)`` is a known zero without further work.
    Otherwise a refutation makes it a known zero, a model satisfying it makes
    it a known one, and anything left is unknown.  With ``threads > 1`` the
    components are decided concurrently; the result order is unchanged.
    """
    stats = stats if stats is not None else SandwichStats()
    space = list(enumerate_constituents(vocab, r, (), budget))
    refuter = Refuter(budget)
    models = tuple(models)

    def decide(d: Constituent) -> tuple[Component, int, int]:
        label = constituent_id(d)
        if not eval_constituent(d, f):
            return Component(label, Status.KNOWN_ZERO, "not-in-dnf"), 0, 0
        res = refuter.refute(d, r, refute_depth)
        if res.refuted:
            return Component(label, Status.KNOWN_ZERO, "refutation", _trace_text(res.certificate[0])), 1, 0
        phi = to_formula(d)
        checks = 0
        for m in models:
            checks += 1
            if check(m, phi):
                return Component(label, Status.KNOWN_ONE, "model", m), 1, checks
        return Component(label, Status.UNKNOWN, "undecided"), 1, checks

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(decide, space))
    else:
        outcomes = [decide(d) for d in space]
    for _, calls, checks in outcomes:
        stats.refuter_calls += calls
        stats.model_checks += checks
    return ComponentProof(f, tuple(c for c, _, _ in outcomes))


def _trace_text(t: ExpansionTrace) -> str:
    levels = " ".join(f"{a}/{b}" for a, b in t.levels)
    return f"depth {t.refuted_at} [{levels}] rules {','.join(t.reasons) or '-'}"
