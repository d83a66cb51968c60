"""Finite relational structures: model checking, enumeration and classification."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .constituents import (
    DEFAULT_BUDGET,
    AttributiveConstituent,
    Constituent,
    PositiveSetLayer,
    _EMPTY_LAYER,
    base_atoms,
    head_atoms,
)
from .errors import BudgetExceeded, VocabularyError, VocabularyMismatch
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
)

Element = str


def element_names(n: int) -> tuple[str, ...]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    if n <= len(letters):
        return tuple(letters[:n])
    return tuple(f"e{i}" for i in range(n))


@dataclass(frozen=True)
class FiniteModel:
    """A finite structure: a nonempty domain and one relation per predicate."""

    vocab: Vocabulary
    domain: tuple[Element, ...]
    tables: tuple[tuple[str, frozenset[tuple[Element, ...]]], ...]

    def __post_init__(self):
        if not self.domain:
            raise VocabularyError("domains are nonempty")
        if len(set(self.domain)) != len(self.domain):
            raise VocabularyError("duplicate domain elements")
        names = {n for n, _ in self.tables}
        for name, rows in self.tables:
            if name not in self.vocab:
                raise VocabularyMismatch(f"table for unknown predicate {name}")
            arity = self.vocab.arity(name)
            dom = set(self.domain)
            for row in rows:
                if len(row) != arity or not set(row) <= dom:
                    raise VocabularyMismatch(f"bad tuple {row} for {name}/{arity}")
        missing = {n for n, _ in self.vocab.predicates} - names
        if missing:
            object.__setattr__(
                self, "tables", self.tables + tuple((n, frozenset()) for n in sorted(missing))
            )
        object.__setattr__(self, "tables", tuple(sorted(self.tables)))

    @classmethod
    def build(cls, vocab: Vocabulary, domain: Iterable, tables: Mapping[str, Iterable] | None = None) -> FiniteModel:
        dom = tuple(str(e) for e in domain)
        tabs = []
        for name, rows in (tables or {}).items():
            tabs.append((name, frozenset(tuple(str(e) for e in row) for row in rows)))
        return cls(vocab, dom, tuple(tabs))

    def relation(self, name: str) -> frozenset[tuple[Element, ...]]:
        return self._tables[name]

    @property
    def _tables(self) -> dict[str, frozenset]:
        cached = self.__dict__.get("_tcache")
        if cached is None:
            cached = dict(self.tables)
            object.__setattr__(self, "_tcache", cached)
        return cached

    def holds(self, name: str, args: Sequence[Element]) -> bool:
        return tuple(args) in self._tables[name]

    @property
    def size(self) -> int:
        return len(self.domain)

    def to_dict(self) -> dict:
        return {
            "domain": list(self.domain),
            "tables": {name: sorted(list(row) for row in rows) for name, rows in self.tables},
        }

    @classmethod
    def from_dict(cls, data: Mapping, vocab: Vocabulary) -> FiniteModel:
        return cls.build(vocab, data["domain"], data.get("tables", {}))

    def __str__(self):
        parts = [f"{name}={{{', '.join('(' + ','.join(r) + ')' if len(r) > 1 else r[0] for r in sorted(rows))}}}"
                 for name, rows in self.tables]
        return f"({{{', '.join(self.domain)}}}; {'; '.join(parts)})"


def load_model(path: str | Path, vocab: Vocabulary) -> FiniteModel:
    return FiniteModel.from_dict(json.loads(Path(path).read_text()), vocab)


def save_model(m: FiniteModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(m.to_dict(), indent=2, sort_keys=True) + "\n")


def load_models(paths: Iterable[str | Path], vocab: Vocabulary) -> list[FiniteModel]:
    """Load model files; a directory contributes its ``*.json`` files in name order."""
    out: list[FiniteModel] = []
    for p in paths:
        p = Path(p)
        files = sorted(p.glob("*.json")) if p.is_dir() else [p]
        out.extend(load_model(f, vocab) for f in files)
    return out


# --------------------------------------------------------------------------
# Model checking


def check(m: FiniteModel, f: Formula, env: Mapping[str, Element] | None = None) -> bool:
    """Tarskian truth of ``f`` in ``m`` under ``env``.

    Exclusive quantifiers range over elements distinct from every value bound
    so far, shadowed bindings included (the context stack).
    """
    _check_vocab(m, f)
    env = dict(env or {})
    return _ev(m, f, env, tuple(env.values()))


def _check_vocab(m: FiniteModel, f: Formula) -> None:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            if g.pred not in m.vocab or m.vocab.arity(g.pred) != len(g.args):
                raise VocabularyMismatch(f"predicate {g.pred}/{len(g.args)} not in the model's vocabulary")
        elif isinstance(g, (And, Or)):
            stack.extend(g.args)
        elif isinstance(g, Implies):
            stack.extend((g.left, g.right))
        elif isinstance(g, Not):
            stack.append(g.body)
        elif hasattr(g, "body"):
            stack.append(g.body)


def _ev(m: FiniteModel, f: Formula, env: dict, stack: tuple) -> bool:
    if isinstance(f, Atom):
        return tuple(env[v] for v in f.args) in m._tables[f.pred]
    if isinstance(f, Equal):
        return env[f.left] == env[f.right]
    if isinstance(f, Not):
        return not _ev(m, f.body, env, stack)
    if isinstance(f, And):
        return all(_ev(m, g, env, stack) for g in f.args)
    if isinstance(f, Or):
        return any(_ev(m, g, env, stack) for g in f.args)
    if isinstance(f, Implies):
        return (not _ev(m, f.left, env, stack)) or _ev(m, f.right, env, stack)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, (Exists, Forall, ExistsExcl, ForallExcl)):
        if isinstance(f, (ExistsExcl, ForallExcl)):
            used = set(stack)
            elems = [e for e in m.domain if e not in used]
        else:
            elems = m.domain
        results = (_ev(m, f.body, {**env, f.var: e}, stack + (e,)) for e in elems)
        return any(results) if isinstance(f, (Exists, ExistsExcl)) else all(results)
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# Enumeration


def _table_slots(vocab: Vocabulary, n: int) -> int:
    return sum(n**a for _, a in vocab.predicates)


def count_models(vocab: Vocabulary, max_size: int) -> int:
    """Number of raw (labelled) models with domains ``a, b, ...`` of size 1..max_size."""
    return sum(2 ** _table_slots(vocab, n) for n in range(1, max_size + 1))


def _canonical(vocab: Vocabulary, n: int, tables: tuple[frozenset, ...]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(tuple(sorted(tuple(perm[i] for i in row) for row in t)) for t in tables)
        if best is None or key < best:
            best = key
    return best


def enumerate_models(
    vocab: Vocabulary, max_size: int, reduced: bool = False, budget: int = DEFAULT_BUDGET
) -> Iterator[FiniteModel]:
    """All models of size 1..max_size in a fixed order.

    With ``reduced`` only the first model of each isomorphism class is yielded
    (canonical labelling by brute-force permutation).
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    total = count_models(vocab, max_size)
    if total > budget:
        raise BudgetExceeded(f"{total} models exceed budget {budget}", total)
    for n in range(1, max_size + 1):
        idx = tuple(range(n))
        slots = [list(itertools.product(idx, repeat=a)) for _, a in vocab.predicates]
        seen: set = set()
        names = element_names(n)
        for choice in itertools.product(*(itertools.product((False, True), repeat=len(s)) for s in slots)):
            tables = tuple(
                frozenset(row for row, on in zip(s, bits) if on) for s, bits in zip(slots, choice)
            )
            if reduced:
                key = _canonical(vocab, n, tables)
                if key in seen:
                    continue
                seen.add(key)
            yield FiniteModel(
                vocab,
                names,
                tuple(
                    (name, frozenset(tuple(names[i] for i in row) for row in t))
                    for (name, _), t in zip(vocab.predicates, tables)
                ),
            )


def monadic_models(vocab: Vocabulary, max_size: int) -> Iterator[FiniteModel]:
    """One model per isomorphism class for a monadic vocabulary.

    A monadic structure is determined up to isomorphism by how many elements
    realize each of the ``2^p`` predicate-sign patterns.
    """
    if not vocab.is_monadic:
        raise VocabularyError("monadic_models needs unary predicates only")
    preds = [name for name, _ in vocab.predicates]
    types = list(itertools.product((True, False), repeat=len(preds)))
    for n in range(1, max_size + 1):
        names = element_names(n)
        for combo in itertools.combinations_with_replacement(range(len(types)), n):
            tables = {p: [] for p in preds}
            for e, t in zip(names, combo):
                for p, on in zip(preds, types[t]):
                    if on:
                        tables[p].append((e,))
            yield FiniteModel.build(vocab, names, tables)


def isomorphic(m1: FiniteModel, m2: FiniteModel) -> bool:
    if m1.vocab != m2.vocab or m1.size != m2.size:
        return False
    pos1 = {e: i for i, e in enumerate(m1.domain)}
    pos2 = {e: i for i, e in enumerate(m2.domain)}
    t1 = tuple(frozenset(tuple(pos1[e] for e in r) for r in rows) for _, rows in m1.tables)
    t2 = tuple(frozenset(tuple(pos2[e] for e in r) for r in rows) for _, rows in m2.tables)
    n = m1.size
    return _canonical(m1.vocab, n, t1) == _canonical(m2.vocab, n, t2)


# --------------------------------------------------------------------------
# Classification


def satisfying_constituent(m: FiniteModel, r: int, context: Sequence[Element] = (), names: Sequence[str] | None = None) -> Constituent:
    """The unique rank-``r`` constituent true in ``m`` (relative to ``context``).

    Built bottom-up with positive-set layers: the kinds listed in a layer are
    exactly those realized by elements outside the current context.
    """
    ctx = tuple(context)
    memo: dict = {}
    vocab = m.vocab

    def kind(stack: tuple, rank: int) -> AttributiveConstituent:
        key = (stack, rank)
        hit = memo.get(key)
        if hit is not None:
            return hit
        depth = len(stack)
        base = tuple(
            m.holds(p, [stack[i] for i in args]) for p, args in base_atoms(vocab, depth)
        )
        if rank == 0:
            ac = AttributiveConstituent(vocab, 0, depth, base, _EMPTY_LAYER)
        else:
            used = set(stack)
            kinds = {kind(stack + (e,), rank - 1) for e in m.domain if e not in used}
            ac = AttributiveConstituent(vocab, rank, depth, base, PositiveSetLayer(kinds))
        memo[key] = ac
        return ac

    head = tuple(m.holds(p, [ctx[i] for i in args]) for p, args in head_atoms(vocab, len(ctx)))
    var_names = tuple(names) if names is not None else tuple(f"y{i + 1}" for i in range(len(ctx)))
    return Constituent(kind(ctx, r), head, var_names)


def satisfying_constituent_cached(m: FiniteModel, r: int) -> Constituent:
    return _sat_cached(m, r)


@lru_cache(maxsize=65536)
def _sat_cached(m: FiniteModel, r: int) -> Constituent:
    return satisfying_constituent(m, r)


def monadic_bound(vocab: Vocabulary, r: int) -> int:
    """Model size sufficient for rank-``r`` monadic satisfiability: ``2^p * r`` (at least 1)."""
    return max(1, (2 ** len(vocab.predicates)) * r)


def realized_constituents(vocab: Vocabulary, r: int, max_size: int | None = None, budget: int = DEFAULT_BUDGET) -> set[Constituent]:
    """Constituents of rank ``r`` realized by some model of size at most ``max_size``.

    For monadic vocabularies the default size bound makes this exactly the
    satisfiable constituents.
    """
    if vocab.is_monadic:
        size = monadic_bound(vocab, r) if max_size is None else max_size
        models = monadic_models(vocab, size)
    else:
        if max_size is None:
            raise VocabularyError("non-monadic vocabularies need an explicit max_size")
        models = enumerate_models(vocab, max_size, reduced=False, budget=budget)
    return {satisfying_constituent(m, r) for m in models}


def satisfiable_monadic(f: Formula, vocab: Vocabulary) -> FiniteModel | None:
    """A model of ``f`` if one exists (exact for monadic vocabularies), else ``None``."""
    from .logic import quantifier_rank

    bound = monadic_bound(vocab, quantifier_rank(f))
    for m in monadic_models(vocab, bound):
        if check(m, f):
            return m
    return None
