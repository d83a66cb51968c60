"""Attributive constituents, constituents, and distributive normal forms.

A rank-``r`` attributive constituent over a context of ``k`` individuals fixes
the signs of the *base* atoms (those mentioning the last individual) and, when
``r >= 1``, says for every rank-``r-1`` kind of a further individual whether
such an individual exists.  Quantification is exclusive throughout: further
individuals are always distinct from the context.

Atoms are positional: ``("P", (0, 2))`` is ``P`` applied to the first and third
individual of the context.  Equality atoms are not part of the basis; under
exclusive quantification they are fixed (distinct positions are unequal).

Layers come in two representations that compare equal when they have the same
positive kinds: :class:`DenseLayer` stores a sign for every element of the
(enumerated) layer universe, :class:`PositiveSetLayer` stores only the kinds
that exist.  Canonical order is positive-first lexicographic on the sign
bit-string, so for ``{P/1}`` the rank-1 constituents come out as ``11, 10, 01,
00`` over the layer ``(P(z), !P(z))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BudgetExceeded,
    FormulaError,
    FreeVariableEscape,
    RankMismatch,
    RankTooHigh,
    RankZero,
    RepresentationNotDense,
    ResultTooLarge,
)
from .logic import (
    And,
    Atom,
    Bottom,
    Equal,
    Exists,
    ExistsExcl,
    Forall,
    ForallExcl,
    Formula,
    Implies,
    Not,
    Or,
    Top,
    Vocabulary,
    check_vocabulary,
    conj,
    disj,
    free_variables,
    quantifier_rank,
)

DEFAULT_BUDGET = 2**20
DEFAULT_BIT_CAP = 2**24

PosAtom = tuple[str, tuple[int, ...]]


# --------------------------------------------------------------------------
# Atom sets


@lru_cache(maxsize=None)
def all_atoms(vocab: Vocabulary, k: int) -> tuple[PosAtom, ...]:
    """A[y1..yk]: every predicate applied to every tuple of context positions."""
    return tuple(
        (name, args)
        for name, arity in vocab.predicates
        for args in itertools.product(range(k), repeat=arity)
    )


@lru_cache(maxsize=None)
def base_atoms(vocab: Vocabulary, k: int) -> tuple[PosAtom, ...]:
    """B[y1..yk]: the atoms of A[y1..yk] mentioning position ``k-1``."""
    if k == 0:
        return ()
    return tuple(a for a in all_atoms(vocab, k) if k - 1 in a[1])


@lru_cache(maxsize=None)
def head_atoms(vocab: Vocabulary, k: int) -> tuple[PosAtom, ...]:
    """Atoms over the context not mentioning its last position."""
    return all_atoms(vocab, k - 1) if k >= 1 else ()


def sign_assignments(n: int) -> Iterator[tuple[bool, ...]]:
    """All sign vectors of length ``n``, positive-first."""
    return itertools.product((True, False), repeat=n)


# --------------------------------------------------------------------------
# Layers and constituents


class Layer:
    """The existential layer of an attributive constituent."""

    __slots__ = ()
    positives: frozenset

    def sign(self, kind: AttributiveConstituent) -> bool:
        return kind in self.positives


class DenseLayer(Layer):
    __slots__ = ("universe", "signs", "positives")

    def __init__(self, universe: tuple, signs: tuple[bool, ...]):
        if len(universe) != len(signs):
            raise ValueError("dense layer needs one sign per universe element")
        self.universe = universe
        self.signs = signs
        self.positives = frozenset(u for u, s in zip(universe, signs) if s)

    def __repr__(self):
        return "DenseLayer(" + "".join("1" if s else "0" for s in self.signs) + ")"


class PositiveSetLayer(Layer):
    __slots__ = ("positives",)

    def __init__(self, positives: Iterable):
        self.positives = frozenset(positives)

    def __repr__(self):
        return f"PositiveSetLayer({len(self.positives)} kinds)"


_EMPTY_LAYER = PositiveSetLayer(())


class AttributiveConstituent:
    """A kind of individual relative to a context of ``depth - 1`` others.

    ``depth`` is the context length including the described individual; the
    sentence-level layer kinds have depth 1.  Depth 0 is the sentence itself.
    """

    __slots__ = ("vocab", "rank", "depth", "base", "layer", "_hash", "__dict__")

    def __init__(self, vocab: Vocabulary, rank: int, depth: int, base: tuple[bool, ...], layer: Layer):
        if len(base) != len(base_atoms(vocab, depth)):
            raise ValueError(f"base needs {len(base_atoms(vocab, depth))} signs, got {len(base)}")
        if rank == 0 and layer.positives:
            raise ValueError("rank-0 attributive constituents have an empty layer")
        self.vocab = vocab
        self.rank = rank
        self.depth = depth
        self.base = tuple(base)
        self.layer = layer
        self._hash = hash((vocab, rank, depth, self.base, layer.positives))

    @property
    def positives(self) -> frozenset[AttributiveConstituent]:
        return self.layer.positives

    @property
    def is_dense(self) -> bool:
        return self.rank == 0 or isinstance(self.layer, DenseLayer)

    @cached_property
    def base_map(self) -> dict[PosAtom, bool]:
        return dict(zip(base_atoms(self.vocab, self.depth), self.base))

    @cached_property
    def base_items(self) -> frozenset[tuple[PosAtom, bool]]:
        return frozenset(self.base_map.items())

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AttributiveConstituent):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.rank == other.rank
            and self.depth == other.depth
            and self.base == other.base
            and self.vocab == other.vocab
            and self.layer.positives == other.layer.positives
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"AttributiveConstituent(rank={self.rank}, depth={self.depth}, base={_bits(self.base)}, layer={self.layer!r})"


@dataclass(frozen=True, eq=False)
class Constituent:
    """A constituent: signs for the atoms among the context plus an attributive part.

    For sentences (empty context) the head is empty and the constituent is its
    attributive part.
    """

    attributive: AttributiveConstituent
    head: tuple[bool, ...] = ()
    context: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.context) != self.attributive.depth:
            raise ValueError("context length must equal the attributive depth")
        if len(self.head) != len(head_atoms(self.vocab, self.depth)):
            raise ValueError("head must sign every atom among the context")
        object.__setattr__(self, "_hash", hash((self.attributive, self.head, self.context)))

    @property
    def vocab(self) -> Vocabulary:
        return self.attributive.vocab

    @property
    def rank(self) -> int:
        return self.attributive.rank

    @property
    def depth(self) -> int:
        return self.attributive.depth

    @property
    def positives(self) -> frozenset[AttributiveConstituent]:
        return self.attributive.positives

    def __eq__(self, other):
        if not isinstance(other, Constituent):
            return NotImplemented
        return self._hash == other._hash and (self.attributive, self.head, self.context) == (
            other.attributive, other.head, other.context)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        try:
            tag = constituent_bits(self)
        except (RepresentationNotDense, BudgetExceeded):
            tag = f"{len(self.positives)} kinds"
        return f"Constituent(rank={self.rank}, {tag or 'empty'})"

    def __str__(self):
        from .logic import to_text

        return to_text(to_formula(self))


@dataclass(frozen=True)
class ConstituentSet:
    """A canonically ordered set of constituents of one rank and context."""

    rank: int
    members: tuple[Constituent, ...]

    @cached_property
    def _index(self) -> dict[Constituent, int]:
        return {c: i for i, c in enumerate(self.members)}

    def __contains__(self, item) -> bool:
        return item in self._index

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def index(self, c: Constituent) -> int:
        return self._index[c]

    def filter(self, pred) -> ConstituentSet:
        return ConstituentSet(self.rank, tuple(c for c in self.members if pred(c)))

    def __and__(self, other: ConstituentSet) -> ConstituentSet:
        return self.filter(lambda c: c in other)

    def __sub__(self, other: ConstituentSet) -> ConstituentSet:
        return self.filter(lambda c: c not in other)

    def __or__(self, other: ConstituentSet) -> ConstituentSet:
        extra = tuple(c for c in other.members if c not in self)
        return ConstituentSet(self.rank, self.members + extra)

    def as_set(self) -> frozenset[Constituent]:
        return frozenset(self.members)


def _bits(signs: Iterable[bool]) -> str:
    return "".join("1" if s else "0" for s in signs)


def _context_len(context: int | Sequence[str]) -> int:
    return context if isinstance(context, int) else len(context)


def _context_names(context: int | Sequence[str]) -> tuple[str, ...]:
    if isinstance(context, int):
        return tuple(f"y{i + 1}" for i in range(context))
    return tuple(context)


# --------------------------------------------------------------------------
# Counting


def _pow2(e: int, cap_bits: int) -> int:
    if e + 1 > cap_bits:
        raise ResultTooLarge(f"2^{e} has more than {cap_bits} bits")
    return 1 << e


@lru_cache(maxsize=None)
def _gamma_count(vocab: Vocabulary, r: int, k: int, cap_bits: int) -> int:
    base = len(base_atoms(vocab, k))
    if r == 0:
        return _pow2(base, cap_bits)
    return _pow2(base + _gamma_count(vocab, r - 1, k + 1, cap_bits), cap_bits)


def count_constituents(
    vocab: Vocabulary, r: int, context: int | Sequence[str] = (), bit_cap: int = DEFAULT_BIT_CAP
) -> tuple[int, int]:
    """Exact ``(|Gamma^(r)[y]|, |Delta^(r)[y]|)`` from the size recurrences."""
    k = _context_len(context)
    gamma = _gamma_count(vocab, r, k, bit_cap)
    delta = _pow2(len(head_atoms(vocab, k)), bit_cap) * gamma
    if delta.bit_length() > bit_cap:
        raise ResultTooLarge(f"|Delta| has more than {bit_cap} bits")
    return gamma, delta


def _capped_count(vocab: Vocabulary, r: int, k: int, budget: int) -> int:
    """|Gamma^(r)[k]| if at most ``budget``, otherwise some value above it."""
    limit = budget.bit_length() + 1
    try:
        return _gamma_count(vocab, r, k, limit)
    except ResultTooLarge:
        return budget + 1


# --------------------------------------------------------------------------
# Enumeration


@lru_cache(maxsize=64)
def _gamma(vocab: Vocabulary, r: int, k: int) -> tuple[AttributiveConstituent, ...]:
    bases = list(sign_assignments(len(base_atoms(vocab, k))))
    if r == 0:
        return tuple(AttributiveConstituent(vocab, 0, k, b, _EMPTY_LAYER) for b in bases)
    universe = _gamma(vocab, r - 1, k + 1)
    return tuple(
        AttributiveConstituent(vocab, r, k, b, DenseLayer(universe, s))
        for b in bases
        for s in sign_assignments(len(universe))
    )


def _check_budget(vocab: Vocabulary, r: int, k: int, budget: int) -> None:
    for level in range(r, -1, -1):
        size = _capped_count(vocab, level, k + (r - level), budget)
        if size > budget:
            try:
                exact = _gamma_count(vocab, level, k + (r - level), DEFAULT_BIT_CAP)
            except ResultTooLarge:
                exact = None
            raise BudgetExceeded(
                f"enumerating rank-{level} attributive constituents over {k + r - level} "
                f"individuals needs {'more than 2^%d' % DEFAULT_BIT_CAP if exact is None else exact} "
                f"elements; budget is {budget}",
                exact,
            )


def enumerate_attributive(
    vocab: Vocabulary, r: int, context: int | Sequence[str] = (), budget: int = DEFAULT_BUDGET
) -> list[AttributiveConstituent]:
    """All of Gamma^(r)[y] in dense representation and canonical order."""
    k = _context_len(context)
    _check_budget(vocab, r, k, budget)
    return list(_gamma(vocab, r, k))


def layer_universe(vocab: Vocabulary, r: int, k: int, budget: int = DEFAULT_BUDGET) -> tuple[AttributiveConstituent, ...]:
    """Gamma^(r)[k], the kinds a rank-``r+1`` layer at depth ``k-1`` ranges over."""
    _check_budget(vocab, r, k, budget)
    return _gamma(vocab, r, k)


@lru_cache(maxsize=64)
def _delta(vocab: Vocabulary, r: int, context: tuple[str, ...]) -> ConstituentSet:
    k = len(context)
    heads = list(sign_assignments(len(head_atoms(vocab, k))))
    gammas = _gamma(vocab, r, k)
    return ConstituentSet(r, tuple(Constituent(g, h, context) for h in heads for g in gammas))


def enumerate_constituents(
    vocab: Vocabulary, r: int, context: int | Sequence[str] = (), budget: int = DEFAULT_BUDGET
) -> ConstituentSet:
    """Delta^(r)[y]: every head sign assignment paired with every attributive constituent."""
    names = _context_names(context)
    k = len(names)
    _check_budget(vocab, r, k, budget)
    _, total = count_constituents(vocab, r, k, bit_cap=budget.bit_length() + 2)
    if total > budget:
        raise BudgetExceeded(f"|Delta^({r})| = {total} exceeds budget {budget}", total)
    return _delta(vocab, r, names)


def rank0_constituent(vocab: Vocabulary) -> Constituent:
    """The unique rank-0 sentence constituent (the empty conjunction)."""
    return Constituent(AttributiveConstituent(vocab, 0, 0, (), _EMPTY_LAYER))


def make_sentence_constituent(
    vocab: Vocabulary, rank: int, positives: Iterable[AttributiveConstituent]
) -> Constituent:
    """A sentence constituent from its set of existing kinds (positive-set representation)."""
    pos = frozenset(positives)
    for p in pos:
        if p.depth != 1 or p.rank != rank - 1 or p.vocab != vocab:
            raise ValueError("positive kinds must be rank-(r-1) kinds of one individual")
    layer = PositiveSetLayer(pos) if rank >= 1 else _EMPTY_LAYER
    return Constituent(AttributiveConstituent(vocab, rank, 0, (), layer))


# --------------------------------------------------------------------------
# Representations, bits and ids


def to_dense(ac: AttributiveConstituent, budget: int = DEFAULT_BUDGET) -> AttributiveConstituent:
    """The same attributive constituent with a dense layer (recursively)."""
    if ac.rank == 0 or isinstance(ac.layer, DenseLayer):
        return ac
    universe = layer_universe(ac.vocab, ac.rank - 1, ac.depth + 1, budget)
    pos = ac.positives
    unknown = pos.difference(universe)
    if unknown:
        raise ValueError("positive kinds outside the layer universe")
    return AttributiveConstituent(
        ac.vocab, ac.rank, ac.depth, ac.base, DenseLayer(universe, tuple(u in pos for u in universe))
    )


def to_positive_set(ac: AttributiveConstituent) -> AttributiveConstituent:
    if ac.rank == 0 or isinstance(ac.layer, PositiveSetLayer):
        return ac
    return AttributiveConstituent(ac.vocab, ac.rank, ac.depth, ac.base, PositiveSetLayer(ac.positives))


def layer_bits(ac: AttributiveConstituent) -> str:
    if ac.rank == 0:
        return ""
    layer = ac.layer
    if not isinstance(layer, DenseLayer):
        try:
            layer = to_dense(ac).layer
        except BudgetExceeded as exc:
            raise RepresentationNotDense("layer universe is not enumerable") from exc
    return _bits(layer.signs)


def constituent_bits(d: Constituent) -> str:
    """Head signs, then base signs, then layer signs."""
    return _bits(d.head) + _bits(d.attributive.base) + layer_bits(d.attributive)


def constituent_id(d: Constituent) -> str:
    """Hex rendering of the sign bit-string (``"0"`` for the empty string)."""
    bits = constituent_bits(d)
    if not bits:
        return "0"
    width = (len(bits) + 3) // 4
    return format(int(bits, 2), f"0{width}x")


def sort_key(d: Constituent) -> tuple[bool, ...]:
    return tuple(c == "0" for c in constituent_bits(d))


# --------------------------------------------------------------------------
# Formula view


def _var_names(prefix_names: Sequence[str], k: int) -> list[str]:
    names = list(prefix_names)
    taken = set(names)
    while len(names) < k:
        cand = f"x{len(names) + 1}"
        while cand in taken:
            cand += "'"
        names.append(cand)
        taken.add(cand)
    return names


def _literal(atom: PosAtom, sign: bool, names: Sequence[str]) -> Formula:
    a = Atom(atom[0], tuple(names[i] for i in atom[1]))
    return a if sign else Not(a)


def kind_formula(ac: AttributiveConstituent, names: Sequence[str]) -> Formula:
    """The attributive constituent as a formula in existential/universal form.

    ``names`` must name every position of the context including the described
    individual.  Positive kinds are asserted with ``existsE`` and closed off
    with a ``forallE`` over their disjunction.
    """
    parts: list[Formula] = [
        _literal(a, s, names) for a, s in zip(base_atoms(ac.vocab, ac.depth), ac.base)
    ]
    if ac.rank >= 1:
        child = _var_names(names, ac.depth + 1)
        w = child[-1]
        kinds = sorted(ac.positives, key=_kind_key)
        bodies = [kind_formula(p, child) for p in kinds]
        parts.extend(ExistsExcl(w, b) for b in bodies)
        parts.append(ForallExcl(w, disj(*bodies) if bodies else Or(())))
    if not parts:
        return And(())
    return conj(*parts)


def _kind_key(ac: AttributiveConstituent):
    try:
        return (0, tuple(c == "0" for c in _bits(ac.base) + layer_bits(ac)))
    except RepresentationNotDense:
        return (1, repr(ac))


def to_formula(d: Constituent) -> Formula:
    names = _var_names(d.context, d.depth)
    head = [_literal(a, s, names) for a, s in zip(head_atoms(d.vocab, d.depth), d.head)]
    body = kind_formula(d.attributive, names)
    return conj(*head, body) if head else body


# --------------------------------------------------------------------------
# Evaluation


def _split_by_max(signs: Mapping[PosAtom, bool], k: int) -> list[dict[PosAtom, bool]]:
    levels: list[dict[PosAtom, bool]] = [dict() for _ in range(k)]
    for atom, s in signs.items():
        levels[max(atom[1])][atom] = s
    return levels


class _Evaluator:
    def __init__(self, d: Constituent):
        self.d = d
        k = d.depth
        head = dict(zip(head_atoms(d.vocab, k), d.head))
        head.update(d.attributive.base_map)
        self.root_levels = tuple(_split_by_max(head, k))

    def run(self, f: Formula, env: dict[str, int]) -> bool:
        a = self.d.attributive
        return self.ev(f, env, self.root_levels, a.positives, a.rank)

    def ev(self, f, env, levels, kinds, rank) -> bool:
        if isinstance(f, Atom):
            idx = tuple(env[v] for v in f.args)
            return levels[max(idx)][(f.pred, idx)]
        if isinstance(f, Equal):
            return env[f.left] == env[f.right]
        if isinstance(f, Not):
            return not self.ev(f.body, env, levels, kinds, rank)
        if isinstance(f, And):
            return all(self.ev(g, env, levels, kinds, rank) for g in f.args)
        if isinstance(f, Or):
            return any(self.ev(g, env, levels, kinds, rank) for g in f.args)
        if isinstance(f, Implies):
            return (not self.ev(f.left, env, levels, kinds, rank)) or self.ev(f.right, env, levels, kinds, rank)
        if isinstance(f, Top):
            return True
        if isinstance(f, Bottom):
            return False
        if isinstance(f, (ExistsExcl, Exists)):
            if self.exclusive(f, env, levels, kinds, rank, any):
                return True
            if isinstance(f, Exists):
                return any(
                    self.ev(f.body, {**env, f.var: p}, levels, kinds, rank) for p in range(len(levels))
                )
            return False
        if isinstance(f, (ForallExcl, Forall)):
            if not self.exclusive(f, env, levels, kinds, rank, all):
                return False
            if isinstance(f, Forall):
                return all(
                    self.ev(f.body, {**env, f.var: p}, levels, kinds, rank) for p in range(len(levels))
                )
            return True
        raise TypeError(f"not a formula: {f!r}")

    def exclusive(self, f, env, levels, kinds, rank, combine) -> bool:
        if rank == 0:
            raise RankTooHigh("formula nests quantifiers deeper than the constituent's rank")
        pos = len(levels)
        inner_env = {**env, f.var: pos}
        return combine(
            self.ev(f.body, inner_env, levels + (kind.base_map,), kind.positives, kind.rank)
            for kind in kinds
        )


def eval_constituent(d: Constituent, f: Formula) -> bool:
    """Truth value of ``f`` in the kind of world described by ``d``.

    Atoms read the signs recorded in ``d``; an exclusive existential holds iff
    some existing kind of a further individual makes the body true; an
    inclusive existential additionally tries every individual already in the
    context.  For satisfiable ``d`` this coincides with truth in every model of
    ``d``.
    """
    if quantifier_rank(f) > d.rank:
        raise RankTooHigh(f"formula has rank {quantifier_rank(f)} > constituent rank {d.rank}")
    free = free_variables(f)
    if not free <= set(d.context):
        raise FreeVariableEscape(f"free variables {sorted(free - set(d.context))} not in context {d.context}")
    env = {v: i for i, v in enumerate(d.context)}
    return _Evaluator(d).run(f, env)


def dnf(
    f: Formula, r: int, vocab: Vocabulary, context: int | Sequence[str] = (), budget: int = DEFAULT_BUDGET
) -> ConstituentSet:
    """The rank-``r`` constituents in which ``f`` evaluates true."""
    if quantifier_rank(f) > r:
        raise RankTooHigh(f"formula has rank {quantifier_rank(f)} > {r}")
    check_vocabulary(f, vocab)
    space = enumerate_constituents(vocab, r, context, budget)
    return space.filter(lambda d: eval_constituent(d, f))


def expand(d: Constituent, s: int, budget: int = DEFAULT_BUDGET) -> ConstituentSet:
    """Rank-``rank(d)+s`` constituents whose disjunction is equivalent to ``d``."""
    if s == 0:
        return ConstituentSet(d.rank, (d,))
    return dnf(to_formula(d), d.rank + s, d.vocab, d.context, budget)


def expands(hi: Constituent, lo: Constituent) -> bool:
    """Whether ``hi`` belongs to the expansion of ``lo``."""
    return eval_constituent(hi, to_formula(lo))


# --------------------------------------------------------------------------
# Normalisation: formulas in constituent shape -> Constituent


def constituent_from_formula(f: Formula, vocab: Vocabulary, budget: int = DEFAULT_BUDGET) -> Constituent:
    """Read a sentence written as a constituent into a :class:`Constituent`.

    Accepted shapes are the existential/universal form produced by
    :func:`to_formula` (``existsE`` for each existing kind plus a closing
    ``forallE``) and the sign form (``existsE`` or ``!existsE`` for every kind
    of the layer).  Every base atom must be signed exactly once.  At sentence
    level plain ``exists``/``forall`` are accepted since there is nothing to
    exclude.
    """
    ac = _read_kind(f, vocab, 0, [], quantifier_rank(f), budget, top=True)
    return Constituent(ac)


def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        out: list[Formula] = []
        for g in f.args:
            out.extend(_conjuncts(g))
        return out
    return [f]


def _read_kind(f, vocab, depth, names, rank, budget, top=False) -> AttributiveConstituent:
    excl_e = (ExistsExcl, Exists) if top else (ExistsExcl,)
    excl_a = (ForallExcl, Forall) if top else (ForallExcl,)
    literals: dict[PosAtom, bool] = {}
    pos_bodies: list[tuple[str, Formula]] = []
    neg_bodies: list[tuple[str, Formula]] = []
    closures: list[tuple[str, Formula]] = []
    index = {n: i for i, n in enumerate(names)}
    for c in _conjuncts(f):
        sign = True
        lit = c
        if isinstance(lit, Not) and isinstance(lit.body, (Atom, ExistsExcl, Exists)):
            sign, lit = False, lit.body
        if isinstance(lit, Atom):
            try:
                key = (lit.pred, tuple(index[v] for v in lit.args))
            except KeyError as exc:
                raise FormulaError(f"variable {exc} not in scope") from exc
            if key in literals and literals[key] != sign:
                raise FormulaError(f"atom {lit} signed both ways")
            literals[key] = sign
        elif isinstance(lit, excl_e):
            (pos_bodies if sign else neg_bodies).append((lit.var, lit.body))
        elif sign and isinstance(lit, excl_a):
            closures.append((lit.var, lit.body))
        else:
            raise FormulaError(f"{c} is not a constituent conjunct")
    expected = base_atoms(vocab, depth)
    if set(literals) != set(expected):
        missing = set(expected) - set(literals)
        extra = set(literals) - set(expected)
        raise FormulaError(f"base atoms not signed exactly: missing {sorted(missing)}, unexpected {sorted(extra)}")
    base = tuple(literals[a] for a in expected)
    if rank == 0:
        if pos_bodies or neg_bodies or closures:
            raise FormulaError("rank-0 kind with quantified conjuncts")
        return AttributiveConstituent(vocab, 0, depth, base, _EMPTY_LAYER)

    def read_child(var, body):
        return _read_kind(body, vocab, depth + 1, names + [var], rank - 1, budget)

    positives = {read_child(v, b) for v, b in pos_bodies}
    negatives = {read_child(v, b) for v, b in neg_bodies}
    if positives & negatives:
        raise FormulaError("a kind is asserted both to exist and not to exist")
    if closures:
        if len(closures) != 1:
            raise FormulaError("more than one closing universal")
        var, body = closures[0]
        alts = body.args if isinstance(body, Or) else (body,)
        closed = {read_child(var, b) for b in alts}
        if closed != positives:
            raise FormulaError("closing universal does not list exactly the existing kinds")
        return AttributiveConstituent(vocab, rank, depth, base, PositiveSetLayer(positives))
    universe = layer_universe(vocab, rank - 1, depth + 1, budget)
    if positives | negatives != set(universe):
        raise FormulaError("sign form must sign every kind of the layer")
    return AttributiveConstituent(
        vocab, rank, depth, base, DenseLayer(universe, tuple(u in positives for u in universe))
    )


# --------------------------------------------------------------------------
# Set representation, layer removal, prefixes


TOP_CLAIM = ("true",)


def set_representation(d: Constituent, budget: int = DEFAULT_BUDGET) -> frozenset:
    """The set of signed layer claims ``(sign, kind)``; ``{TOP_CLAIM}`` at rank 0."""
    if d.rank == 0:
        return frozenset({TOP_CLAIM})
    pos = d.positives
    universe = layer_universe(d.vocab, d.rank - 1, d.depth + 1, budget)
    return frozenset((u in pos, u) for u in universe)


def truncate(ac: AttributiveConstituent) -> AttributiveConstituent:
    """Drop the deepest quantifier layer of an attributive constituent."""
    if ac.rank == 0:
        raise RankZero("rank-0 attributive constituents have no layer to remove")
    if ac.rank == 1:
        return AttributiveConstituent(ac.vocab, 0, ac.depth, ac.base, _EMPTY_LAYER)
    return AttributiveConstituent(
        ac.vocab, ac.rank - 1, ac.depth, ac.base, PositiveSetLayer(truncate(p) for p in ac.positives)
    )


def remove_top_layer(d: Constituent) -> Constituent:
    """Remove the deepest layer of quantification.

    Each existing kind keeps its sign with its own deepest layer removed, and the
    closing universal ranges over the shortened kinds, so the result is a
    rank-``r-1`` constituent implied by ``d``.
    """
    if d.rank == 0:
        raise RankZero("cannot remove a layer from a rank-0 constituent")
    return Constituent(truncate(d.attributive), d.head, d.context)


def is_prefix(lo: Constituent, hi: Constituent) -> bool:
    if hi.rank != lo.rank + 1:
        raise RankMismatch(f"prefix needs ranks r and r+1, got {lo.rank} and {hi.rank}")
    return remove_top_layer(hi) == lo


# --------------------------------------------------------------------------
# Trivial inconsistency


def _drop_position(items: frozenset, drop: int) -> frozenset:
    """Forget the individual at ``drop``: keep atoms not mentioning it and shift later positions down."""
    out = []
    for (pred, args), s in items:
        if drop in args:
            continue
        out.append(((pred, tuple(i - 1 if i > drop else i for i in args)), s))
    return frozenset(out)


def _mirror_base(kind: AttributiveConstituent, witness: AttributiveConstituent) -> frozenset:
    """Base of the witness's view of the described individual.

    ``kind`` describes ``w`` at position ``k`` and ``witness`` describes ``u``
    at position ``k+1`` relative to ``w``.  From ``u``'s point of view (``u`` at
    ``k``, ``w`` at ``k+1``) the base of ``w`` consists of ``w``'s atoms with the
    context (shifted to ``k+1``) and the atoms linking ``w`` and ``u`` (swapped).
    """
    k = kind.depth - 1
    swap = {k: k + 1, k + 1: k}
    out = [((p, tuple(k + 1 if i == k else i for i in args)), s) for (p, args), s in kind.base_items]
    for (p, args), s in witness.base_items:
        if k in args:
            out.append(((p, tuple(swap.get(i, i) for i in args)), s))
    return frozenset(out)


def _perspective_violation(kinds: frozenset[AttributiveConstituent]) -> str | None:
    """Check that the individuals described by ``kinds`` see each other consistently.

    ``kinds`` are the existing kinds of a layer: every individual distinct from
    the context has one of them, and each one exists.  Two sound requirements:

    * a witness ``u`` reported by the kind of ``w`` is itself distinct from the
      context, so some existing kind has ``u``'s base, and that kind reports a
      witness looking like ``w``;
    * an individual of a different existing kind is distinct from ``w``, so
      ``w``'s kind reports a witness with that kind's base.
    """
    if not kinds:
        return None
    if next(iter(kinds)).rank == 0:
        return None
    by_base: dict[frozenset, list[AttributiveConstituent]] = {}
    for kd in kinds:
        by_base.setdefault(kd.base_items, []).append(kd)
    for kd in kinds:
        k = kd.depth - 1
        projected = {_drop_position(w.base_items, k) for w in kd.positives}
        for w in kd.positives:
            seen_as = _drop_position(w.base_items, k)
            mirror = _mirror_base(kd, w)
            candidates = by_base.get(seen_as, ())
            if not any(any(x.base_items == mirror for x in c.positives) for c in candidates):
                return "witness-existence"
        for other in kinds:
            if other is not kd and other != kd and other.base_items not in projected:
                return "witness-completeness"
    return None


def _ti_base(ac: AttributiveConstituent) -> bool:
    # Sign maps are functions over the base atoms by construction; a malformed
    # hand-built constituent is the only way to fail.
    return len(ac.base_map) != len(base_atoms(ac.vocab, ac.depth))


@lru_cache(maxsize=200_000)
def _ti_kinds(kinds: frozenset[AttributiveConstituent]) -> str | None:
    v = _perspective_violation(kinds)
    if v:
        return "TI-P:" + v
    for kd in kinds:
        if _ti_base(kd):
            return "TI-B"
        if kd.rank >= 1:
            inner = _ti_kinds(kd.positives)
            if inner:
                return "TI-R/" + inner
    return None


def inconsistency_reason(d: Constituent) -> str | None:
    """Name of the first trivial-inconsistency rule ``d`` violates, or ``None``."""
    ac = d.attributive
    if _ti_base(ac) or len(d.head) != len(head_atoms(d.vocab, d.depth)):
        return "TI-B"
    if ac.rank >= 1 and ac.depth == 0 and not ac.positives:
        return "TI-E"
    if ac.rank >= 1:
        return _ti_kinds(ac.positives)
    return None


def trivially_inconsistent(d: Constituent) -> bool:
    """Sound syntactic test for unsatisfiability.

    Rules: TI-E (no individual exists at sentence level, violating a nonempty
    domain), TI-B (base/head signs not a consistent assignment), TI-P (existing
    kinds disagree about each other, see :func:`_perspective_violation`) and
    TI-R (TI-P inside the layer of an existing kind, recursively).
    """
    return inconsistency_reason(d) is not None


# --------------------------------------------------------------------------
# Serialisation


def atom_text(atom: PosAtom, names: Sequence[str] | None = None) -> str:
    pred, args = atom
    if names is None:
        names = [f"z{i + 1}" for i in range(max(args) + 1)]
    vs = [names[i] for i in args]
    from .logic import _is_symbolic

    if len(vs) == 2 and _is_symbolic(pred):
        return f"{vs[0]} {pred} {vs[1]}"
    return f"{pred}({', '.join(vs)})"


def attributive_to_dict(ac: AttributiveConstituent) -> dict:
    out: dict = {
        "rank": ac.rank,
        "base": {atom_text(a): s for a, s in zip(base_atoms(ac.vocab, ac.depth), ac.base)},
    }
    if ac.rank >= 1:
        if isinstance(ac.layer, DenseLayer):
            out["layer"] = {"repr": "dense", "signs": _bits(ac.layer.signs)}
        else:
            kinds = sorted(ac.positives, key=_kind_key)
            out["layer"] = {"repr": "set", "positives": [attributive_to_dict(p) for p in kinds]}
    return out


def constituent_to_dict(d: Constituent) -> dict:
    out = {
        "rank": d.rank,
        "context": list(d.context),
        "head": {atom_text(a): s for a, s in zip(head_atoms(d.vocab, d.depth), d.head)},
    }
    out.update({k: v for k, v in attributive_to_dict(d.attributive).items() if k != "rank"})
    try:
        out["id"] = constituent_id(d)
    except RepresentationNotDense:
        pass
    return out


def attributive_from_dict(data: dict, vocab: Vocabulary, depth: int) -> AttributiveConstituent:
    rank = int(data["rank"])
    atoms = base_atoms(vocab, depth)
    signs = data.get("base", {})
    base = tuple(bool(signs[atom_text(a)]) for a in atoms)
    if rank == 0:
        return AttributiveConstituent(vocab, 0, depth, base, _EMPTY_LAYER)
    layer = data["layer"]
    if layer["repr"] == "dense":
        universe = layer_universe(vocab, rank - 1, depth + 1)
        bits = layer["signs"]
        if len(bits) != len(universe):
            raise ValueError("dense layer signs do not match the layer universe")
        return AttributiveConstituent(vocab, rank, depth, base, DenseLayer(universe, tuple(c == "1" for c in bits)))
    kinds = [attributive_from_dict(p, vocab, depth + 1) for p in layer["positives"]]
    return AttributiveConstituent(vocab, rank, depth, base, PositiveSetLayer(kinds))


def constituent_from_dict(data: dict, vocab: Vocabulary) -> Constituent:
    context = tuple(data.get("context", ()))
    k = len(context)
    head_signs = data.get("head", {})
    head = tuple(bool(head_signs[atom_text(a)]) for a in head_atoms(vocab, k))
    ac = attributive_from_dict({**data, "rank": data["rank"]}, vocab, k)
    return Constituent(ac, head, context)
