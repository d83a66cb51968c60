"""Command-line interface.

Exit codes: 0 success, 1 domain error (or an incomplete result where
completeness was requested), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import kernels
from .constituents import (
    DEFAULT_BUDGET,
    constituent_bits,
    constituent_id,
    constituent_to_dict,
    dnf,
    enumerate_constituents,
    inconsistency_reason,
)
from .errors import FolSpaceError
from .logic import Vocabulary, parse_sentence, quantifier_rank, to_text

DEFAULT_VOCAB = {"predicates": [{"name": "P", "arity": 1}]}


class UsageError(Exception):
    pass


def q(x) -> str:
    """Exact rationals as ``p/q``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# Rendering


def render_report(result: Any, fmt: str = "text") -> str:
    """Render a report: ``json`` gives sorted-key JSON, ``text`` an aligned listing."""
    if fmt == "json":
        return json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False)
    return _text(result)


def _text(result: Any) -> str:
    if isinstance(result, dict) and "table" in result:
        header = result.get("title")
        rows = result["table"]
        cols = result.get("columns") or (list(rows[0].keys()) if rows else [])
        lines = [header] if header else []
        cells = [[str(c) for c in cols]] + [[_cell(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
        for row in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        for k in sorted(result):
            if k not in ("table", "title", "columns"):
                lines.append(f"{k}: {_cell(result[k])}")
        return "\n".join(lines)
    if isinstance(result, dict):
        return "\n".join(f"{k}: {_cell(v)}" for k, v in sorted(result.items()))
    return str(result)


def _cell(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


# --------------------------------------------------------------------------
# Helpers


def _vocab(args) -> Vocabulary:
    if getattr(args, "vocab", None):
        return Vocabulary.load(args.vocab)
    return Vocabulary.from_dict(DEFAULT_VOCAB)


def _sentence(text: str, vocab: Vocabulary):
    p = Path(text)
    if text.endswith(".fol") and p.exists():
        text = p.read_text()
    return parse_sentence(text, vocab)


def _rank(args, *formulas) -> int:
    if getattr(args, "rank", None) is not None:
        return args.rank
    return max([quantifier_rank(f) for f in formulas] or [0])


def _models(paths: Sequence[str] | None, vocab: Vocabulary):
    from .models import load_models

    return load_models(paths or [], vocab)


def _cid(d) -> str:
    return constituent_id(d)


# --------------------------------------------------------------------------
# Commands


def cmd_constituents_enum(args) -> tuple[Any, int]:
    vocab = _vocab(args)
    space = enumerate_constituents(vocab, args.rank, args.context or (), args.budget)
    rows = []
    for d in space:
        rows.append({
            "id": _cid(d), "bits": constituent_bits(d),
            "trivially_inconsistent": inconsistency_reason(d) or "",
            "formula": str(d),
        })
    if args.json:
        return {"rank": args.rank, "count": len(rows), "constituents": rows,
                "structure": [constituent_to_dict(d) for d in space] if args.structure else None}, 0
    return {"title": f"{len(rows)} constituents of rank {args.rank}", "table": rows,
            "columns": ["id", "bits", "trivially_inconsistent", "formula"]}, 0


def cmd_constituents_dnf(args) -> tuple[Any, int]:
    vocab = _vocab(args)
    f = _sentence(args.formula, vocab)
    r = _rank(args, f)
    members = dnf(f, r, vocab, (), args.budget)
    rows = [{"id": _cid(d), "bits": constituent_bits(d), "formula": str(d)} for d in members]
    if args.json:
        return {"formula": to_text(f), "rank": r, "count": len(rows), "members": rows}, 0
    return {"title": f"dnf of {to_text(f)} at rank {r}: {len(rows)} constituents", "table": rows,
            "columns": ["id", "bits", "formula"]}, 0


def _vector_report(v) -> dict:
    return {"rank": v.rank, "entries": [{"id": _cid(d), "value": q(a) if isinstance(a, Fraction) else a}
                                        for d, a in v.items()]}


def cmd_vec_embed(args):
    from .vectorspace import embed

    vocab = _vocab(args)
    f = _sentence(args.formula, vocab)
    v = embed(f, _rank(args, f), vocab, args.scheme, (), args.budget)
    out = _vector_report(v)
    if args.json:
        return out, 0
    return {"title": f"{to_text(f)} ({args.scheme})", "table": out["entries"], "columns": ["id", "value"]}, 0


def cmd_vec_inner(args):
    from .vectorspace import embed, inner

    vocab = _vocab(args)
    f, g = _sentence(args.left, vocab), _sentence(args.right, vocab)
    r = _rank(args, f, g)
    val = inner(embed(f, r, vocab, args.scheme, (), args.budget), embed(g, r, vocab, args.scheme, (), args.budget))
    return {"rank": r, "inner": q(val)}, 0


def cmd_vec_mp(args):
    from .vectorspace import embed, mp_apply

    vocab = _vocab(args)
    a, c = _sentence(args.antecedent, vocab), _sentence(args.consequent, vocab)
    state_f = _sentence(args.state, vocab) if args.state else a
    r = _rank(args, a, c, state_f)
    state = embed(state_f, r, vocab, args.scheme, (), args.budget)
    out = mp_apply(a, c, state, r, args.scheme, args.budget)
    rep = _vector_report(out)
    rep["equals_consequent"] = out == embed(c, r, vocab, args.scheme, (), args.budget)
    if args.json:
        return rep, 0
    return {"title": f"MP[{to_text(a)} -> {to_text(c)}]", "table": rep["entries"], "columns": ["id", "value"],
            "equals_consequent": rep["equals_consequent"]}, 0


def cmd_vec_plaus(args):
    from .vectorspace import embed, plausibility

    vocab = _vocab(args)
    f = _sentence(args.formula, vocab)
    r = _rank(args, f)
    return {"rank": r, "plausibility": q(plausibility(embed(f, r, vocab, args.scheme, (), args.budget)))}, 0


def cmd_vec_entropy(args):
    from .vectorspace import dagger_vector, unnorm_entropy

    vocab = _vocab(args)
    f = _sentence(args.formula, vocab)
    r = _rank(args, f)
    alpha = Fraction(args.alpha)
    v = dagger_vector(f, r, alpha, vocab, args.budget)
    return {"rank": r, "alpha": q(alpha), "entropy": f"{unnorm_entropy(v):.12f}"}, 0


def cmd_model_check(args):
    from .models import check, load_model

    vocab = _vocab(args)
    m = load_model(args.model, vocab)
    f = _sentence(args.formula, vocab)
    return {"model": str(m), "formula": to_text(f), "holds": check(m, f)}, 0


def cmd_model_classify(args):
    from .models import load_models, satisfying_constituent

    vocab = _vocab(args)
    rows = []
    for path in args.model:
        for m in load_models([path], vocab):
            d = satisfying_constituent(m, args.rank)
            try:
                ident = _cid(d)
            except FolSpaceError:
                ident = None
            rows.append({"model": str(m), "id": ident, "formula": str(d)})
    if args.json:
        return {"rank": args.rank, "models": rows}, 0
    return {"title": f"rank-{args.rank} constituents of the models", "table": rows,
            "columns": ["model", "id", "formula"]}, 0


def cmd_tree_build(args):
    from .reftree import build_tree, uniform_measure

    vocab = _vocab(args)
    t = build_tree(vocab, args.depth, args.budget)
    if args.measure == "uniform":
        m = uniform_measure(t)
    else:
        from .uncertainty import belief_measure, constituent_beliefs

        beliefs = constituent_beliefs(vocab, t.nodes(), _models(args.models, vocab), Fraction(args.alpha),
                                      args.refute_depth, budget=args.budget)
        m = belief_measure(t, beliefs)
    data = t.to_dict(m)
    if m.reference is not None:
        ref = {(d.rank, _cid(d)): m.reference[d] for d in t.nodes()}
        for row in data["nodes"]:
            row["literal"] = q(ref[(row["rank"], row["id"])])
    data["additive"] = m.is_additive()
    if args.json:
        return data, 0
    cols = ["rank", "id", "parent", "edge", "children", "measure"] + (["literal"] if m.reference else [])
    return {"title": f"refinement tree to depth {args.depth}", "table": data["nodes"], "columns": cols,
            "additive": data["additive"]}, 0


def cmd_prove_sandwich(args):
    from .prover import Status, sandwich

    vocab = _vocab(args)
    f = _sentence(args.formula, vocab)
    r = _rank(args, f)
    proof = sandwich(f, r, vocab, args.depth, _models(args.models, vocab), args.budget, threads=args.threads)
    data = proof.to_dict()
    data["formula"] = to_text(f)
    data["rank"] = r
    code = 0 if proof.count(Status.UNKNOWN) == 0 else 1
    if args.json:
        return data, code
    return {"title": f"sandwich for {to_text(f)} at rank {r}", "table": data["components"],
            "columns": ["id", "status", "reason", "witness"], "known_one": data["known_one"],
            "known_zero": data["known_zero"], "unknown": data["unknown"]}, code


def cmd_prove_refute(args):
    from .prover import refute

    vocab = _vocab(args)
    f = _sentence(args.formula, vocab)
    r = _rank(args, f)
    res = refute(f, r, args.depth, vocab, args.budget)
    out = {"formula": to_text(f), "rank": r, "refuted": res.refuted, "depth_used": res.depth_used,
           "diagnostic": res.diagnostic,
           "certificate": [{"constituent": t.constituent, "levels": [list(x) for x in t.levels],
                            "refuted_at": t.refuted_at, "rules": list(t.reasons)} for t in res.certificate]}
    return out, 0 if res.refuted else 1


def _load_knowledge(args, vocab):
    from .uncertainty import build_knowledge

    path = Path(args.knowledge)
    data = json.loads(path.read_text())
    base = path.parent
    falses = [parse_sentence(s, vocab) for s in data.get("false", [])]
    conjs = [parse_sentence(s, vocab) for s in data.get("conjectures", [])]
    models = _models([str(base / p) for p in data.get("models", [])], vocab)
    alpha = Fraction(data.get("alpha", "1/1"))
    depth = data.get("refute_depth", 0)
    k = build_knowledge(falses, conjs, models, alpha, depth, data.get("rank"), vocab,
                        bool(data.get("literal_refute", False)), args.budget)
    return k, data


def _sentence_labels(k) -> list[str]:
    return [f"phi{i}" for i in range(len(k.sentences))]


def cmd_know_build(args):
    vocab = _vocab(args)
    k, _ = _load_knowledge(args, vocab)
    labels = _sentence_labels(k)
    rows = []
    for lab, s, row in zip(labels, k.sentences, k.N):
        entry = {"sentence": lab}
        entry.update({c: q(x) for c, x in zip(labels, row)})
        rows.append(entry)
    data = {"sentences": {lab: to_text(s) for lab, s in zip(labels, k.sentences)}, "matrix": rows,
            "invariants_ok": not k.invariant_violations(), "diagnostics": list(k.diagnostics)}
    if args.json:
        return data, 0
    return {"title": "knowledge matrix", "table": rows, "columns": ["sentence"] + labels,
            "invariants_ok": data["invariants_ok"]}, 0


def cmd_know_beliefs(args):
    from .uncertainty import beliefs

    vocab = _vocab(args)
    k, _ = _load_knowledge(args, vocab)
    rows = [{"sentence": f"phi{i}", "formula": to_text(s), "belief": q(b)}
            for i, (s, b) in enumerate(zip(k.sentences, beliefs(k)))]
    if args.json:
        return {"beliefs": rows}, 0
    return {"title": "beliefs", "table": rows, "columns": ["sentence", "belief", "formula"]}, 0


def cmd_know_rank(args):
    from .uncertainty import rank_conjectures

    vocab = _vocab(args)
    k, _ = _load_knowledge(args, vocab)
    res = rank_conjectures(k, explore=args.explore, center=args.center)
    rows = [{"sentence": f"phi{i}", "score": f"{s:.9f}", "formula": to_text(k.sentences[i])} for i, s in res.order]
    data = {"order": rows, "singular_values": [f"{s:.9f}" for s in res.singular_values],
            "degenerate": res.degenerate, "mode": "explore" if args.explore else "exploit"}
    if args.json:
        return data, 0
    return {"title": f"conjecture ranking ({data['mode']})", "table": rows,
            "columns": ["sentence", "score", "formula"], "degenerate": res.degenerate}, 0


def cmd_know_measure(args):
    from .reftree import build_tree
    from .uncertainty import belief_measure, constituent_beliefs

    vocab = _vocab(args)
    _, data = _load_knowledge(args, vocab)
    base = Path(args.knowledge).parent
    models = _models([str(base / p) for p in data.get("models", [])], vocab)
    falses = [parse_sentence(s, vocab) for s in data.get("false", [])]
    t = build_tree(vocab, args.depth, args.budget)
    b = constituent_beliefs(vocab, t.nodes(), models, Fraction(data.get("alpha", "1/1")),
                            data.get("refute_depth", 0), falses, args.budget)
    m = belief_measure(t, b)
    rows = t.to_dict(m)["nodes"]
    for row, d in zip(rows, t.nodes()):
        row["belief"] = q(b[d])
    out = {"nodes": rows, "additive": m.is_additive(),
           "total": [q(m.level_mass(r)) for r in range(args.depth + 1)]}
    if args.json:
        return out, 0
    return {"title": f"belief measure to depth {args.depth}", "table": rows,
            "columns": ["rank", "id", "parent", "belief", "measure"], "additive": out["additive"]}, 0


def cmd_cube_stats(args):
    from .constituents import eval_constituent
    from .geometry import check_poincare, constituent_cube, influences, variance_of_valuation
    from .models import realized_constituents

    vocab = _vocab(args)
    max_size = None if vocab.is_monadic else args.max_size
    sat = realized_constituents(vocab, args.rank, max_size, args.budget)
    if args.theory:
        axioms = _sentence(args.theory, vocab)
        label = lambda d: d in sat and eval_constituent(d, axioms)  # noqa: E731
    else:
        label = sat.__contains__
    cube = constituent_cube(vocab, args.rank, label, args.budget)
    rep = check_poincare(cube)
    D = int((cube.labels == -1).sum())
    total = 1 << cube.n
    out = {
        "dimension": cube.n,
        "satisfiable": D,
        "vertices": total,
        "influences": [q(x) for x in influences(cube)],
        "variance_closed_form": q(variance_of_valuation(D, total)),
        "backend": kernels.BACKEND if args.show_backend else None,
        "oracle": "exact" if max_size is None else f"models up to size {max_size} (satisfiable count is a lower bound)",
    }
    out.update(rep.to_dict())
    out["kkl_ratio"] = None if rep.kkl_ratio is None else f"{rep.kkl_ratio:.9f}"
    out = {k: v for k, v in out.items() if v is not None or k == "kkl_ratio"}
    return out, 0


def cmd_span_greedy(args):
    from .geometry import approx_span, truth_omniscient, truth_uninformed

    vocab = _vocab(args)
    target = (truth_uninformed if args.target == "uninformed" else truth_omniscient)(vocab, args.rank, budget=args.budget)
    res = approx_span(target, args.k)
    out = {
        "target": args.target, "k": args.k, "basis": len(target.basis),
        "squared_error": q(res.squared_error), "error": f"{res.error:.12f}",
        "bound": None if res.bound is None else f"{res.bound:.12f}",
        "within_bound": res.within_bound,
        "best_step": res.best_step,
        "steps": [[_cid(d) for d in step] for step in res.selected],
    }
    code = 0 if res.within_bound in (True, None) else 1
    return out, code


def cmd_span_models(args):
    from .geometry import model_span_report, truth_omniscient, truth_uninformed

    vocab = _vocab(args)
    f = _sentence(args.formula, vocab)
    r = _rank(args, f)
    target = (truth_uninformed if args.target == "uninformed" else truth_omniscient)(vocab, r, budget=args.budget)
    rep = model_span_report(target, f, r, vocab, _models(args.models, vocab), args.budget)
    out = rep.to_dict()
    for key in ("distance", "derived_uninformed", "stated_bound_uninformed", "stated_bound_omniscient"):
        if out[key] is not None:
            out[key] = f"{out[key]:.12f}"
    return out, 0


def cmd_gen_sentences(args):
    from .generators import random_sentences

    vocab = _vocab(args)
    fs = random_sentences(args.seed, args.count, vocab, args.rank if args.rank is not None else 2)
    return {"seed": args.seed, "sentences": [to_text(f) for f in fs]}, 0


# --------------------------------------------------------------------------
# Parser


def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--vocab", default=d(None), help="vocabulary JSON file (default: a single unary P)")
    p.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET), help="enumeration budget")
    p.add_argument("--scheme", choices=["indicator", "uniform", "cardinality"], default=d("indicator"))
    p.add_argument("--json", action="store_true", default=d(False), help="structured output")
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--threads", type=int, default=d(1))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="folspace", description="First-order logic as a linear space.")
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)

    def leaf(group, name, func, help_text):
        p = group.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    c = sub.add_parser("constituents", help="enumerate constituents and normal forms").add_subparsers(dest="sub", required=True)
    p = leaf(c, "enum", cmd_constituents_enum, "list rank-r constituents")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--context", nargs="*", help="free variable names")
    p.add_argument("--structure", action="store_true", help="include the nested sign structure (with --json)")
    p = leaf(c, "dnf", cmd_constituents_dnf, "distributive normal form of a sentence")
    p.add_argument("--rank", type=int)
    p.add_argument("formula")

    v = sub.add_parser("vec", help="vector-space operations").add_subparsers(dest="sub", required=True)
    p = leaf(v, "embed", cmd_vec_embed, "embed a sentence")
    p.add_argument("--rank", type=int)
    p.add_argument("formula")
    p = leaf(v, "inner", cmd_vec_inner, "inner product of two sentences")
    p.add_argument("--rank", type=int)
    p.add_argument("left")
    p.add_argument("right")
    p = leaf(v, "mp", cmd_vec_mp, "apply modus ponens to a state")
    p.add_argument("--rank", type=int)
    p.add_argument("--state", help="sentence whose embedding is the state (default: the antecedent)")
    p.add_argument("antecedent")
    p.add_argument("consequent")
    p = leaf(v, "plaus", cmd_vec_plaus, "plausibility under the uniform distribution")
    p.add_argument("--rank", type=int)
    p.add_argument("formula")
    p = leaf(v, "entropy", cmd_vec_entropy, "unnormalized entropy of the dagger vector")
    p.add_argument("--rank", type=int)
    p.add_argument("--alpha", default="1/10")
    p.add_argument("formula")

    m = sub.add_parser("model", help="finite models").add_subparsers(dest="sub", required=True)
    p = leaf(m, "check", cmd_model_check, "check a sentence in a model")
    p.add_argument("--model", required=True)
    p.add_argument("formula")
    p = leaf(m, "classify", cmd_model_classify, "the constituent a model satisfies")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--model", nargs="+", required=True, help="model file or directory (repeatable)")

    t = sub.add_parser("tree", help="refinement trees").add_subparsers(dest="sub", required=True)
    p = leaf(t, "build", cmd_tree_build, "build a refinement tree with a measure")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--measure", choices=["uniform", "beliefs"], default="uniform")
    p.add_argument("--models", action="append", help="models for belief-derived measures")
    p.add_argument("--alpha", default="1/1")
    p.add_argument("--refute-depth", type=int, default=None)

    pr = sub.add_parser("prove", help="refutation and component proofs").add_subparsers(dest="sub", required=True)
    p = leaf(pr, "sandwich", cmd_prove_sandwich, "bound each component by refutation and models")
    p.add_argument("--rank", type=int)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--models", action="append", help="model file or directory (repeatable)")
    p.add_argument("formula")
    p = leaf(pr, "refute", cmd_prove_refute, "try to refute a sentence")
    p.add_argument("--rank", type=int)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("formula")

    k = sub.add_parser("know", help="agent knowledge").add_subparsers(dest="sub", required=True)
    for name, func, text in [("build", cmd_know_build, "knowledge matrix"),
                             ("beliefs", cmd_know_beliefs, "beliefs in the sentences"),
                             ("rank", cmd_know_rank, "rank conjectures"),
                             ("measure", cmd_know_measure, "belief measure on the refinement tree")]:
        p = leaf(k, name, func, text)
        p.add_argument("--knowledge", required=True, help="knowledge JSON file")
        if name == "rank":
            p.add_argument("--explore", action="store_true", help="ascending order")
            p.add_argument("--center", action="store_true", help="center columns before the decomposition")
        if name == "measure":
            p.add_argument("--depth", type=int, required=True)

    cu = sub.add_parser("cube", help="constituent hypercube").add_subparsers(dest="sub", required=True)
    p = leaf(cu, "stats", cmd_cube_stats, "influences, variance and the Poincare check")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--theory", help="axioms (text or .fol file) restricting the satisfiable labels")
    p.add_argument("--show-backend", action="store_true", help="report which kernel backend ran")
    p.add_argument("--max-size", type=int, default=3, help="model search bound for non-monadic vocabularies")

    sp = sub.add_parser("span", help="approximate spanning").add_subparsers(dest="sub", required=True)
    p = leaf(sp, "greedy", cmd_span_greedy, "greedy Frank-Wolfe spanning of a truth vector")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--target", choices=["uninformed", "omniscient"], default="uninformed")
    p = leaf(sp, "models", cmd_span_models, "distance of a sentence vector to a truth vector")
    p.add_argument("--rank", type=int)
    p.add_argument("--target", choices=["uninformed", "omniscient"], default="uninformed")
    p.add_argument("--models", action="append")
    p.add_argument("formula")

    g = sub.add_parser("gen", help="seeded generators").add_subparsers(dest="sub", required=True)
    p = leaf(g, "sentences", cmd_gen_sentences, "random sentences")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--rank", type=int)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if args.budget < 1 or args.threads < 1:
        print("error: --budget and --threads must be positive", file=err)
        return 2
    try:
        result, code = args.func(args)
    except FolSpaceError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    print(render_report(result, "json" if args.json else "text"), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
