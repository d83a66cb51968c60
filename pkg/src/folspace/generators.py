"""Seeded random sentences and other test-input generators."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .constituents import enumerate_constituents, to_formula
from .logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Equal,
    Exists,
    ExistsExcl,
    Forall,
    ForallExcl,
    Formula,
    Implies,
    Not,
    Or,
    Vocabulary,
    disj,
)

_VARS = ("x", "y", "z", "u", "v", "w")


def random_formula(
    rng: random.Random,
    vocab: Vocabulary,
    max_rank: int,
    scope: tuple[str, ...] = (),
    size: int = 6,
    exclusive: bool = True,
) -> Formula:
    """A random formula with free variables in ``scope`` and rank at most ``max_rank``."""
    choices = ["atom", "not", "and", "or", "implies"]
    if max_rank > 0:
        choices += ["quant"] * 3
    if not scope:
        choices = [c for c in choices if c != "atom"] or ["const"]
        if "quant" not in choices:
            choices.append("const")
    if size <= 1:
        if scope:
            choices = ["atom"]
        elif max_rank > 0:
            choices = ["quant"]
        else:
            choices = ["const"]
    kind = rng.choice(choices)
    if kind == "const":
        return rng.choice((TRUE, FALSE))
    if kind == "atom":
        if len(scope) >= 2 and rng.random() < 0.15:
            a, b = rng.sample(scope, 2)
            return Equal(a, b)
        name, arity = rng.choice(vocab.predicates)
        return Atom(name, tuple(rng.choice(scope) for _ in range(arity)))
    if kind == "not":
        return Not(random_formula(rng, vocab, max_rank, scope, size - 1, exclusive))
    if kind in ("and", "or", "implies"):
        left = random_formula(rng, vocab, max_rank, scope, size // 2, exclusive)
        right = random_formula(rng, vocab, max_rank, scope, size - size // 2 - 1, exclusive)
        return {"and": lambda: And((left, right)), "or": lambda: Or((left, right)),
                "implies": lambda: Implies(left, right)}[kind]()
    var = _VARS[len(scope) % len(_VARS)]
    if var in scope:
        var = f"{var}{len(scope)}"
    quants = [Exists, Forall] + ([ExistsExcl, ForallExcl] if exclusive else [])
    q = rng.choice(quants)
    return q(var, random_formula(rng, vocab, max_rank - 1, scope + (var,), size - 1, exclusive))


def random_sentences(seed: int, n: int, vocab: Vocabulary, max_rank: int, size: int = 6,
                     exclusive: bool = True) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, vocab, max_rank, (), size, exclusive) for _ in range(n)]


def representatives(vocab: Vocabulary, r: int) -> Iterator[Formula]:
    """One sentence per subset of the rank-``r`` constituents (their disjunction)."""
    space = list(enumerate_constituents(vocab, r))
    for bits in itertools.product((True, False), repeat=len(space)):
        members = [to_formula(d) for d, on in zip(space, bits) if on]
        yield disj(*members) if members else FALSE
