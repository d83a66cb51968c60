"""Refinement trees over constituents, basic opens and measures on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .constituents import (
    DEFAULT_BUDGET,
    Constituent,
    ConstituentSet,
    constituent_bits,
    constituent_id,
    enumerate_constituents,
    eval_constituent,
    remove_top_layer,
    to_formula,
)
from .errors import AnchorNotInTree, NegativeBelief, NotANode
from .logic import Vocabulary

PREFIX = "prefix"
EXPANSION = "expansion"
ARBITRARY = "arbitrary"


def id_key(d: Constituent) -> int:
    """Numeric value of the constituent's bit-string (its hex id)."""
    bits = constituent_bits(d)
    return int(bits, 2) if bits else 0


@dataclass
class RefinementTree:
    vocab: Vocabulary
    depth: int
    levels: list[ConstituentSet]
    parent: dict[Constituent, Constituent]
    edge_kind: dict[Constituent, str]
    children: dict[Constituent, list[Constituent]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.children:
            kids: dict[Constituent, list[Constituent]] = {d: [] for lvl in self.levels for d in lvl}
            for lvl in self.levels[1:]:
                for d in lvl:
                    kids[self.parent[d]].append(d)
            self.children = kids

    @property
    def root(self) -> Constituent:
        return self.levels[0][0]

    def __contains__(self, d) -> bool:
        return isinstance(d, Constituent) and d.rank <= self.depth and d in self.levels[d.rank]

    def nodes(self) -> list[Constituent]:
        return [d for lvl in self.levels for d in lvl]

    def require(self, d: Constituent) -> None:
        if d not in self:
            raise NotANode(f"{d!r} is not a node of the tree")

    def path(self, d: Constituent) -> tuple[Constituent, ...]:
        """Root-to-``d`` path, the finite prefix identifying the basic open at ``d``."""
        self.require(d)
        out = [d]
        while out[-1].rank > 0:
            out.append(self.parent[out[-1]])
        return tuple(reversed(out))

    def is_ancestor(self, a: Constituent, b: Constituent) -> bool:
        """Whether ``a`` lies on the root path of ``b`` (``a == b`` included)."""
        if a.rank > b.rank:
            return False
        return self.path(b)[a.rank] == a

    def siblings(self, d: Constituent) -> list[Constituent]:
        if d.rank == 0:
            return list(self.levels[0])
        return self.children[self.parent[d]]

    def to_dict(self, measure: TreeMeasure | None = None) -> dict:
        rows = []
        for d in self.nodes():
            row = {
                "rank": d.rank,
                "id": constituent_id(d),
                "parent": None if d.rank == 0 else constituent_id(self.parent[d]),
                "edge": None if d.rank == 0 else self.edge_kind[d],
                "children": len(self.children[d]),
            }
            if measure is not None:
                row["measure"] = _frac_text(measure.value(d))
            rows.append(row)
        return {"depth": self.depth, "vocabulary": self.vocab.to_dict(), "nodes": rows}


def _frac_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _default_prefix_parents(level: ConstituentSet) -> Callable[[Constituent], list[Constituent]]:
    def parents(hi: Constituent) -> list[Constituent]:
        lo = remove_top_layer(hi)
        return [lo] if lo in level else []

    return parents


def build_tree(
    vocab: Vocabulary,
    depth: int,
    budget: int = DEFAULT_BUDGET,
    prefix: Callable[[Constituent, Constituent], bool] | None = None,
) -> RefinementTree:
    """Add edges rank by rank following the refinement-tree algorithm.

    A rank-``r+1`` node gets a prefix edge when some rank-``r`` constituent is
    its prefix.  Otherwise it attaches to a rank-``r`` constituent it expands,
    or to any rank-``r`` constituent when it expands none.  Every free choice
    takes the lowest id.  ``prefix`` replaces the prefix relation (the default
    removes the top layer and looks the result up).
    """
    levels = [enumerate_constituents(vocab, r, (), budget) for r in range(depth + 1)]
    parent: dict[Constituent, Constituent] = {}
    kind: dict[Constituent, str] = {}
    for r in range(depth):
        lo_level, hi_level = levels[r], levels[r + 1]
        if prefix is None:
            prefix_parents = _default_prefix_parents(lo_level)
        else:
            prefix_parents = lambda hi, lv=lo_level: [lo for lo in lv if prefix(lo, hi)]  # noqa: E731
        lo_sorted = sorted(lo_level, key=id_key)
        for hi in hi_level:
            cands = prefix_parents(hi)
            if cands:
                parent[hi], kind[hi] = min(cands, key=id_key), PREFIX
                continue
            expanded = [lo for lo in lo_sorted if eval_constituent(hi, to_formula(lo))]
            if expanded:
                parent[hi], kind[hi] = expanded[0], EXPANSION
            else:
                parent[hi], kind[hi] = lo_sorted[0], ARBITRARY
    return RefinementTree(vocab, depth, levels, parent, kind)


# --------------------------------------------------------------------------
# Basic opens and measures


@dataclass(frozen=True)
class BasicOpen:
    """All refinement paths through ``anchor``, identified by its root path."""

    anchor: Constituent
    path: tuple[Constituent, ...]

    def __le__(self, other: BasicOpen) -> bool:
        """Inclusion: ``self`` is inside ``other`` iff ``other``'s path is a prefix of ours."""
        n = len(other.path)
        return n <= len(self.path) and self.path[:n] == other.path

    def disjoint(self, other: BasicOpen) -> bool:
        return not (self <= other or other <= self)


def basic_open(t: RefinementTree, d: Constituent) -> BasicOpen:
    return BasicOpen(d, t.path(d))


@dataclass
class TreeMeasure:
    """Values of a measure on the basic opens of a tree, plus optional reference values."""

    tree: RefinementTree
    values: dict[Constituent, Fraction]
    reference: dict[Constituent, Fraction] | None = None

    def value(self, x: Constituent | BasicOpen) -> Fraction:
        d = x.anchor if isinstance(x, BasicOpen) else x
        if d not in self.values:
            raise NotANode(f"{d!r} is not a node of the tree")
        return self.values[d]

    def additivity_defects(self) -> list[Constituent]:
        """Nodes whose value differs from the sum over their children."""
        t = self.tree
        return [
            d for d in t.nodes()
            if d.rank < t.depth and sum((self.values[c] for c in t.children[d]), Fraction(0)) != self.values[d]
        ]

    def is_additive(self) -> bool:
        return not self.additivity_defects()

    def level_mass(self, r: int) -> Fraction:
        return sum((self.values[d] for d in self.tree.levels[r]), Fraction(0))


def weighted_measure(t: RefinementTree, weight: Callable[[Constituent], Fraction] | Mapping[Constituent, Fraction]) -> TreeMeasure:
    """Split each node's mass among its children in proportion to ``weight``.

    The root level gets mass 1 split the same way.  When all siblings weigh
    zero the mass is split uniformly, so the result is always a probability
    measure additive at every node.
    """
    w = weight.get if isinstance(weight, Mapping) else weight
    values: dict[Constituent, Fraction] = {}

    def split(mass: Fraction, kids: Sequence[Constituent]) -> None:
        ws = []
        for c in kids:
            x = Fraction(w(c) if w(c) is not None else 0)
            if x < 0:
                raise NegativeBelief(f"negative weight {x} for {constituent_id(c)}")
            ws.append(x)
        total = sum(ws, Fraction(0))
        for c, x in zip(kids, ws):
            values[c] = mass * x / total if total > 0 else mass / len(kids)

    split(Fraction(1), list(t.levels[0]))
    for r in range(t.depth):
        for d in t.levels[r]:
            kids = t.children[d]
            if kids:
                split(values[d], kids)
    return TreeMeasure(t, values)


def uniform_measure(t: RefinementTree) -> TreeMeasure:
    """Uniform split: each child receives its parent's mass divided by the number of siblings.

    ``reference`` holds the level-uniform values ``1/|Delta^(r)|`` for comparison.
    """
    m = weighted_measure(t, lambda d: Fraction(1))
    m.reference = {d: Fraction(1, len(t.levels[d.rank])) for d in t.nodes()}
    return m


# --------------------------------------------------------------------------
# Simple functions and the Hilbert inner product


class SimpleFunction:
    """A finite combination of basic-open indicators, keyed by anchor."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Constituent, Fraction] | Iterable[tuple[Constituent, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Constituent, Fraction] = {}
        for d, a in items:
            a = acc.get(d, 0) + a
            if a:
                acc[d] = a
            else:
                acc.pop(d, None)
        self.terms = acc

    @classmethod
    def indicator(cls, d: Constituent) -> SimpleFunction:
        return cls({d: Fraction(1)})

    def __add__(self, other: SimpleFunction) -> SimpleFunction:
        return SimpleFunction(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> SimpleFunction:
        return SimpleFunction({d: -a for d, a in self.terms.items()})

    def __sub__(self, other: SimpleFunction) -> SimpleFunction:
        return self + (-other)

    def __mul__(self, c) -> SimpleFunction:
        return SimpleFunction({d: a * c for d, a in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, SimpleFunction) and self.terms == other.terms

    def __repr__(self) -> str:
        return "SimpleFunction(" + ", ".join(f"{constituent_id(d)}@{d.rank}: {a}" for d, a in self.terms.items()) + ")"


def indicator_inner(t: RefinementTree, m: TreeMeasure, a: Constituent, b: Constituent) -> Fraction:
    for d in (a, b):
        if d not in t:
            raise AnchorNotInTree(f"{d!r} is not a node of the tree")
    lo, hi = (a, b) if a.rank <= b.rank else (b, a)
    return m.value(hi) if t.is_ancestor(lo, hi) else Fraction(0)


def hilbert_inner(t: RefinementTree, m: TreeMeasure, f: SimpleFunction, g: SimpleFunction) -> Fraction:
    """Integral of ``f * g`` against ``m``, by bilinearity over indicator pairs."""
    total = Fraction(0)
    for a, x in f.terms.items():
        for b, y in g.terms.items():
            total += x * y * indicator_inner(t, m, a, b)
    return total
