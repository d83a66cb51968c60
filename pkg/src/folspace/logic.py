"""Relational first-order syntax: vocabularies, formula trees, parsing and printing.

Formulas are immutable dataclasses.  Conjunction and disjunction are n-ary;
the empty conjunction is truth and the empty disjunction is falsehood, which is
what :func:`desugar` rewrites ``true``/``false`` into by default.

The concrete grammar (ASCII)::

    f ::= forall v. f | exists v. f | existsE v. f | forallE v. f
        | f -> f | f | f | f & f | !f
        | P(v, ..., v) | v = v | v != v | v OP v | true | false | (f)

with precedence ``!`` > ``&`` > ``|`` > ``->`` (right associative).  A
quantifier body extends as far right as possible.  ``v OP v`` is an infix atom
for a binary predicate whose name is made of operator characters, e.g. ``<``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import (
    ArityMismatch,
    ParseError,
    UnboundVariable,
    UnknownPredicate,
    VocabularyError,
)

__all__ = [
    "Vocabulary", "Formula", "Atom", "Equal", "Not", "And", "Or", "Implies",
    "Forall", "Exists", "ExistsExcl", "ForallExcl", "Top", "Bottom",
    "TRUE", "FALSE", "parse_sentence", "parse_formula", "to_text",
    "quantifier_rank", "free_variables", "desugar", "exclusive_form",
    "alpha_normalize", "alpha_equivalent", "substitute", "conj", "disj",
    "neg", "implies", "check_vocabulary",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_OPNAME = re.compile(r"[<>~^*+%@#$?][<>=~^*+%@#$?]*")


def _is_symbolic(name: str) -> bool:
    return _OPNAME.fullmatch(name) is not None


@dataclass(frozen=True)
class Vocabulary:
    """A finite relational signature: predicate names with positive arities."""

    predicates: tuple[tuple[str, int], ...]

    def __post_init__(self):
        preds = tuple((str(n), int(a)) for n, a in self.predicates)
        object.__setattr__(self, "predicates", preds)
        names = [n for n, _ in preds]
        if len(set(names)) != len(names):
            raise VocabularyError(f"duplicate predicate names in {names}")
        for name, arity in preds:
            if arity < 1:
                raise VocabularyError(f"predicate {name!r} has arity {arity}; arities must be >= 1")
            if not (_IDENT.fullmatch(name) or _is_symbolic(name)):
                raise VocabularyError(f"invalid predicate name {name!r}")
            if name in _KEYWORDS:
                raise VocabularyError(f"predicate name {name!r} is a keyword")

    @classmethod
    def of(cls, **arities: int) -> Vocabulary:
        return cls(tuple(arities.items()))

    @classmethod
    def from_dict(cls, data: dict) -> Vocabulary:
        try:
            return cls(tuple((p["name"], p["arity"]) for p in data["predicates"]))
        except (KeyError, TypeError) as exc:
            raise VocabularyError(f"malformed vocabulary document: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> Vocabulary:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return {"predicates": [{"name": n, "arity": a} for n, a in self.predicates]}

    def arity(self, name: str) -> int:
        for n, a in self.predicates:
            if n == name:
                return a
        raise UnknownPredicate(f"unknown predicate {name!r}")

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self.predicates)

    @property
    def is_monadic(self) -> bool:
        return all(a == 1 for _, a in self.predicates)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{n}/{a}" for n, a in self.predicates) + "}"


# --------------------------------------------------------------------------
# Formula trees


class Formula:
    """Base class of the formula AST."""

    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return conj(self, other)

    def __or__(self, other: Formula) -> Formula:
        return disj(self, other)

    def __invert__(self) -> Formula:
        return Not(self)

    def __rshift__(self, other: Formula) -> Formula:
        return Implies(self, other)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    pred: str
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __repr__(self):
        return f"Atom({self.pred!r}, {list(self.args)!r})"


@dataclass(frozen=True, repr=False)
class Equal(Formula):
    left: str
    right: str

    def __repr__(self):
        return f"Equal({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    body: Formula

    def __repr__(self):
        return f"Not({self.body!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    args: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __repr__(self):
        return f"And({list(self.args)!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    args: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __repr__(self):
        return f"Or({list(self.args)!r})"


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class _Quantifier(Formula):
    var: str
    body: Formula

    def __repr__(self):
        return f"{type(self).__name__}({self.var!r}, {self.body!r})"


class Forall(_Quantifier):
    pass


class Exists(_Quantifier):
    pass


class ExistsExcl(_Quantifier):
    """Existential ranging over individuals distinct from every variable in scope."""


class ForallExcl(_Quantifier):
    """Universal ranging over individuals distinct from every variable in scope."""


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    def __repr__(self):
        return "Bottom()"


TRUE = Top()
FALSE = Bottom()

_QUANTIFIERS = (Forall, Exists, ExistsExcl, ForallExcl)


def conj(*parts: Formula) -> Formula:
    """Flattening conjunction; a single part is returned unchanged."""
    flat: list[Formula] = []
    for p in parts:
        flat.extend(p.args if isinstance(p, And) else (p,))
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*parts: Formula) -> Formula:
    flat: list[Formula] = []
    for p in parts:
        flat.extend(p.args if isinstance(p, Or) else (p,))
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def neg(f: Formula) -> Formula:
    return Not(f)


def implies(a: Formula, b: Formula) -> Formula:
    return Implies(a, b)


# --------------------------------------------------------------------------
# Lexer and parser

_KEYWORDS = {"forall", "exists", "existsE", "forallE", "true", "false"}
_QUANT_KEYWORDS = {"forall": Forall, "exists": Exists, "existsE": ExistsExcl, "forallE": ForallExcl}
_PUNCT = ["->", "!=", "(", ")", ",", ".", "!", "&", "|", "="]


@dataclass
class _Tok:
    kind: str  # 'ident' | 'op' | 'punct' | 'eof'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        m = _IDENT.match(text, i)
        if m:
            toks.append(_Tok("ident", m.group(), i))
            i = m.end()
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                toks.append(_Tok("punct", p, i))
                i += len(p)
                break
        else:
            m = _OPNAME.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {c!r}", i)
            toks.append(_Tok("op", m.group(), i))
            i = m.end()
    toks.append(_Tok("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, vocab: Vocabulary | None, free: Sequence[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.vocab = vocab
        self.scope: list[str] = list(free)

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("punct", "op") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> _Tok:
        if self.tok.kind in ("punct", "op") and self.tok.text == text:
            return self.advance()
        raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)

    def parse(self) -> Formula:
        f = self.expr()
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return f

    def expr(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.expr())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.accept("|"):
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.accept("&"):
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.unary())
        t = self.tok
        if t.kind == "ident" and t.text in _QUANT_KEYWORDS:
            self.advance()
            v = self.advance()
            if v.kind != "ident" or v.text in _KEYWORDS:
                raise ParseError("expected a variable after quantifier", v.pos)
            self.expect(".")
            self.scope.append(v.text)
            try:
                body = self.expr()
            finally:
                self.scope.pop()
            return _QUANT_KEYWORDS[t.text](v.text, body)
        return self.primary()

    def name(self) -> _Tok:
        t = self.advance()
        if t.kind != "ident" or t.text in _KEYWORDS:
            raise ParseError(f"expected a variable, found {t.text or 'end of input'!r}", t.pos)
        return t

    def bound(self, t: _Tok) -> str:
        if t.text not in self.scope:
            raise UnboundVariable(f"unbound variable {t.text!r}", t.pos)
        return t.text

    def variable(self) -> str:
        return self.bound(self.name())

    def check_pred(self, name: str, arity: int, pos: int) -> None:
        if self.vocab is None:
            return
        if name not in self.vocab:
            raise UnknownPredicate(f"unknown predicate {name!r}", pos)
        expected = self.vocab.arity(name)
        if expected != arity:
            raise ArityMismatch(f"predicate {name!r} has arity {expected}, applied to {arity} arguments", pos)

    def primary(self) -> Formula:
        t = self.tok
        if self.accept("("):
            f = self.expr()
            self.expect(")")
            return f
        if t.kind == "ident" and t.text == "true":
            self.advance()
            return TRUE
        if t.kind == "ident" and t.text == "false":
            self.advance()
            return FALSE
        if t.kind != "ident":
            raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)
        nxt = self.toks[self.i + 1]
        if nxt.kind == "punct" and nxt.text == "(":
            self.advance()
            self.advance()
            args = [self.name()]
            while self.accept(","):
                args.append(self.name())
            self.expect(")")
            self.check_pred(t.text, len(args), t.pos)
            return Atom(t.text, tuple(self.bound(a) for a in args))
        left = self.variable()
        op = self.tok
        if self.accept("="):
            return Equal(left, self.variable())
        if self.accept("!="):
            return Not(Equal(left, self.variable()))
        if op.kind == "op":
            self.advance()
            right = self.variable()
            self.check_pred(op.text, 2, op.pos)
            return Atom(op.text, (left, right))
        raise ParseError(f"expected an atom after variable {left!r}", op.pos)


def parse_formula(text: str, vocab: Vocabulary | None = None, free: Sequence[str] = ()) -> Formula:
    """Parse a formula whose free variables are drawn from ``free``."""
    return _Parser(text, vocab, free).parse()


def parse_sentence(text: str, vocab: Vocabulary | None = None) -> Formula:
    """Parse a closed formula.

    >>> parse_sentence("exists x. P(x)", Vocabulary.of(P=1))
    Exists('x', Atom('P', ['x']))
    """
    return parse_formula(text, vocab, ())


# --------------------------------------------------------------------------
# Printer

def to_text(f: Formula) -> str:
    """Render ``f`` in the concrete grammar; ``parse(to_text(f)) == f``."""
    return _show(f)


def _show_child(f: Formula, parent: type) -> str:
    s = _show(f)
    if isinstance(f, _QUANTIFIERS) or isinstance(f, Implies):
        return f"({s})"
    if isinstance(f, (And, Or)) and len(f.args) == 0:
        return s
    if parent is And and isinstance(f, (And, Or)):
        return f"({s})"
    if parent is Or and isinstance(f, Or):
        return f"({s})"
    return s


def _show(f: Formula) -> str:
    if isinstance(f, Atom):
        if len(f.args) == 2 and _is_symbolic(f.pred):
            return f"{f.args[0]} {f.pred} {f.args[1]}"
        return f"{f.pred}({', '.join(f.args)})"
    if isinstance(f, Equal):
        return f"{f.left} = {f.right}"
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        b = f.body
        inner = _show(b)
        infix = isinstance(b, Atom) and len(b.args) == 2 and _is_symbolic(b.pred)
        if isinstance(b, (Atom, Top, Bottom, Not)) and not infix:
            return f"!{inner}"
        return f"!({inner})"
    if isinstance(f, And):
        if not f.args:
            return "true"
        if len(f.args) == 1:
            return _show(f.args[0])
        return " & ".join(_show_child(a, And) for a in f.args)
    if isinstance(f, Or):
        if not f.args:
            return "false"
        if len(f.args) == 1:
            return _show(f.args[0])
        return " | ".join(_show_child(a, Or) for a in f.args)
    if isinstance(f, Implies):
        left = _show(f.left)
        if isinstance(f.left, (Implies,) + _QUANTIFIERS):
            left = f"({left})"
        right = _show(f.right)
        if isinstance(f.right, _QUANTIFIERS):
            right = f"({right})"
        return f"{left} -> {right}"
    if isinstance(f, _QUANTIFIERS):
        kw = {Forall: "forall", Exists: "exists", ExistsExcl: "existsE", ForallExcl: "forallE"}[type(f)]
        return f"{kw} {f.var}. {_show(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# Syntactic utilities

def quantifier_rank(f: Formula) -> int:
    """Maximal quantifier nesting depth."""
    if isinstance(f, _QUANTIFIERS):
        return 1 + quantifier_rank(f.body)
    if isinstance(f, Not):
        return quantifier_rank(f.body)
    if isinstance(f, (And, Or)):
        return max((quantifier_rank(a) for a in f.args), default=0)
    if isinstance(f, Implies):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    return 0


def free_variables(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, Equal):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_variables(a) for a in f.args))
    if isinstance(f, Implies):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, _QUANTIFIERS):
        return free_variables(f.body) - {f.var}
    return frozenset()


def _all_variables(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return set(f.args)
    if isinstance(f, Equal):
        return {f.left, f.right}
    if isinstance(f, Not):
        return _all_variables(f.body)
    if isinstance(f, (And, Or)):
        return set().union(*(_all_variables(a) for a in f.args))
    if isinstance(f, Implies):
        return _all_variables(f.left) | _all_variables(f.right)
    if isinstance(f, _QUANTIFIERS):
        return {f.var} | _all_variables(f.body)
    return set()


def check_vocabulary(f: Formula, vocab: Vocabulary) -> None:
    """Raise if an atom of ``f`` is not in ``vocab`` or has the wrong arity."""
    for a in _atoms(f):
        if a.pred not in vocab:
            raise UnknownPredicate(f"unknown predicate {a.pred!r}")
        if vocab.arity(a.pred) != len(a.args):
            raise ArityMismatch(f"predicate {a.pred!r} has arity {vocab.arity(a.pred)}, got {len(a.args)}")


def _atoms(f: Formula) -> Iterator[Atom]:
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, Not) or isinstance(f, _QUANTIFIERS):
        yield from _atoms(f.body)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            yield from _atoms(a)
    elif isinstance(f, Implies):
        yield from _atoms(f.left)
        yield from _atoms(f.right)


def _rename(f: Formula, mapping: dict[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(mapping.get(v, v) for v in f.args))
    if isinstance(f, Equal):
        return Equal(mapping.get(f.left, f.left), mapping.get(f.right, f.right))
    if isinstance(f, Not):
        return Not(_rename(f.body, mapping))
    if isinstance(f, And):
        return And(tuple(_rename(a, mapping) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_rename(a, mapping) for a in f.args))
    if isinstance(f, Implies):
        return Implies(_rename(f.left, mapping), _rename(f.right, mapping))
    if isinstance(f, _QUANTIFIERS):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        return type(f)(f.var, _rename(f.body, inner))
    return f


def _fresh(base: str, taken: set[str]) -> str:
    i = 0
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def substitute(f: Formula, var: str, replacement: str) -> Formula:
    """Replace free occurrences of ``var`` by ``replacement``, renaming binders to avoid capture."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(replacement if v == var else v for v in f.args))
    if isinstance(f, Equal):
        return Equal(replacement if f.left == var else f.left, replacement if f.right == var else f.right)
    if isinstance(f, Not):
        return Not(substitute(f.body, var, replacement))
    if isinstance(f, And):
        return And(tuple(substitute(a, var, replacement) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(substitute(a, var, replacement) for a in f.args))
    if isinstance(f, Implies):
        return Implies(substitute(f.left, var, replacement), substitute(f.right, var, replacement))
    if isinstance(f, _QUANTIFIERS):
        if f.var == var or var not in free_variables(f.body):
            return f
        if f.var == replacement:
            taken = _all_variables(f) | {var, replacement}
            new = _fresh(f.var + "_", taken)
            body = _rename(f.body, {f.var: new})
            return type(f)(new, substitute(body, var, replacement))
        return type(f)(f.var, substitute(f.body, var, replacement))
    return f


def desugar(f: Formula, context: Sequence[str] = (), literal_truth: bool = False) -> Formula:
    """Rewrite into the core connectives {Atom, Equal, Not, And, Or, Forall, Exists}.

    ``context`` lists the free variables in scope; exclusive quantifiers are
    expanded against it and against enclosing binders.  With
    ``literal_truth`` the constants become ``(forall x. x = x) | !(forall x. x = x)``
    and its negation (rank 1) instead of the empty conjunction/disjunction.
    """
    return _desugar(f, tuple(context), literal_truth)


def _literal_top(avoid: Iterable[str]) -> Formula:
    x = _fresh("x", set(avoid))
    ax = Forall(x, Equal(x, x))
    return Or((ax, Not(ax)))


def _desugar(f: Formula, ctx: tuple[str, ...], lit: bool) -> Formula:
    if isinstance(f, (Atom, Equal)):
        return f
    if isinstance(f, Top):
        return _literal_top(ctx) if lit else And(())
    if isinstance(f, Bottom):
        return Not(_literal_top(ctx)) if lit else Or(())
    if isinstance(f, Not):
        return Not(_desugar(f.body, ctx, lit))
    if isinstance(f, And):
        return And(tuple(_desugar(a, ctx, lit) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_desugar(a, ctx, lit) for a in f.args))
    if isinstance(f, Implies):
        return Or((Not(_desugar(f.left, ctx, lit)), _desugar(f.right, ctx, lit)))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, _desugar(f.body, ctx + (f.var,), lit))
    if isinstance(f, (ExistsExcl, ForallExcl)):
        z = f.var
        others = tuple(dict.fromkeys(y for y in ctx if y != z))
        body = _desugar(f.body, ctx + (z,), lit)
        if isinstance(f, ExistsExcl):
            if not others:
                return Exists(z, body)
            return Exists(z, And(tuple(Not(Equal(z, y)) for y in others) + (body,)))
        if not others:
            return Forall(z, body)
        return Forall(z, Or(tuple(Equal(z, y) for y in others) + (body,)))
    raise TypeError(f"not a formula: {f!r}")


def exclusive_form(f: Formula, context: Sequence[str] = ()) -> Formula:
    """Translate inclusive quantifiers into exclusive ones.

    ``exists z. g`` becomes ``(existsE z. g) | g[z:=y1] | ... | g[z:=yk]`` for
    the variables ``y1..yk`` in scope, and dually for ``forall``.  Implications
    and constants are kept.  This is the companion of :func:`desugar` used when
    evaluating against constituents, where all quantification is exclusive.
    """
    return _excl(f, tuple(dict.fromkeys(context)))


def _excl(f: Formula, ctx: tuple[str, ...]) -> Formula:
    if isinstance(f, (Atom, Equal, Top, Bottom)):
        return f
    if isinstance(f, Not):
        return Not(_excl(f.body, ctx))
    if isinstance(f, And):
        return And(tuple(_excl(a, ctx) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_excl(a, ctx) for a in f.args))
    if isinstance(f, Implies):
        return Implies(_excl(f.left, ctx), _excl(f.right, ctx))
    z = f.var
    inner_ctx = tuple(y for y in ctx if y != z) + (z,)
    body = _excl(f.body, inner_ctx)
    others = tuple(y for y in ctx if y != z)
    if isinstance(f, (ExistsExcl, ForallExcl)):
        return type(f)(z, body)
    subs = tuple(_excl(substitute(f.body, z, y), ctx) for y in others)
    if isinstance(f, Exists):
        return disj(ExistsExcl(z, body), *subs) if subs else ExistsExcl(z, body)
    return conj(ForallExcl(z, body), *subs) if subs else ForallExcl(z, body)


def alpha_normalize(f: Formula) -> Formula:
    """Rename every binder by its nesting level so alpha-equivalent formulas coincide."""
    free = free_variables(f)
    prefix = "_"
    while any(v.startswith(prefix) for v in free):
        prefix += "_"
    return _alpha(f, {}, 0, prefix)


def _alpha(f: Formula, env: dict[str, str], depth: int, prefix: str) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(env.get(v, v) for v in f.args))
    if isinstance(f, Equal):
        return Equal(env.get(f.left, f.left), env.get(f.right, f.right))
    if isinstance(f, Not):
        return Not(_alpha(f.body, env, depth, prefix))
    if isinstance(f, And):
        return And(tuple(_alpha(a, env, depth, prefix) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_alpha(a, env, depth, prefix) for a in f.args))
    if isinstance(f, Implies):
        return Implies(_alpha(f.left, env, depth, prefix), _alpha(f.right, env, depth, prefix))
    if isinstance(f, _QUANTIFIERS):
        name = f"{prefix}{depth}"
        return type(f)(name, _alpha(f.body, {**env, f.var: name}, depth + 1, prefix))
    return f


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    return alpha_normalize(f) == alpha_normalize(g)
