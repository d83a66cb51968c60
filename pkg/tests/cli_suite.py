"""The end-to-end CLI suite: every subcommand against files in data/."""

from __future__ import annotations

import io
import sys
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "data"


def suite(data: Path = DATA) -> list[list[str]]:
    p, lt = str(data / "p.json"), str(data / "lt.json")
    models, know = str(data / "models"), str(data / "knowledge.json")
    return [
        ["constituents", "enum", "--vocab", p, "--rank", "1"],
        ["constituents", "enum", "--vocab", lt, "--rank", "1", "--structure"],
        ["constituents", "enum", "--vocab", str(data / "pq.json"), "--rank", "1"],
        ["constituents", "dnf", "--vocab", p, "exists x. P(x)"],
        ["vec", "embed", "--vocab", p, "--rank", "1", "exists x. P(x)"],
        ["vec", "embed", "--vocab", p, "--scheme", "uniform", "--rank", "1", "exists x. P(x)"],
        ["vec", "inner", "--vocab", p, "exists x. P(x)", "forall x. P(x)"],
        ["vec", "mp", "--vocab", p, "exists x. P(x)", "forall x. P(x)"],
        ["vec", "plaus", "--vocab", p, "exists x. P(x)"],
        ["vec", "entropy", "--vocab", p, "--alpha", "1/10", "exists x. P(x)"],
        ["model", "check", "--vocab", p, "--model", str(data / "models" / "m3_ab_p.json"), "exists x. !P(x)"],
        ["model", "check", "--vocab", lt, "--model", str(data / "lt_models" / "chain3.json"),
         "forall x. forall y. x < y -> exists z. x < z & z < y"],
        ["model", "classify", "--vocab", p, "--rank", "1", "--model", models],
        ["tree", "build", "--vocab", p, "--depth", "2"],
        ["tree", "build", "--vocab", p, "--depth", "1", "--measure", "beliefs", "--models", models],
        ["prove", "sandwich", "--vocab", p, "--rank", "1", "--depth", "0", "--models", models, "true"],
        ["prove", "sandwich", "--vocab", p, "--rank", "1", "--depth", "0", "--threads", "2", "--models", models, "true"],
        ["prove", "refute", "--vocab", p, "(forall x. P(x)) & (exists x. !P(x))"],
        ["know", "build", "--vocab", p, "--knowledge", know],
        ["know", "beliefs", "--vocab", p, "--knowledge", know],
        ["know", "rank", "--vocab", p, "--knowledge", know],
        ["know", "rank", "--vocab", p, "--knowledge", know, "--explore"],
        ["know", "measure", "--vocab", p, "--knowledge", know, "--depth", "2"],
        ["cube", "stats", "--vocab", p, "--rank", "1"],
        ["cube", "stats", "--vocab", p, "--rank", "2", "--theory", str(data / "theory_p.fol")],
        ["span", "greedy", "--vocab", p, "--k", "4", "--target", "uninformed"],
        ["span", "greedy", "--vocab", p, "--k", "2", "--target", "omniscient"],
        ["span", "models", "--vocab", p, "--rank", "1", "--models", str(data / "span_models"), "exists x. P(x)"],
        ["gen", "sentences", "--vocab", p, "--count", "5"],
    ]


def run_suite(seed: int = 0, data: Path = DATA, fmt_json: bool = True) -> list[tuple[int, str]]:
    from folspace.cli import run

    out = []
    for argv in suite(data):
        buf, err = io.StringIO(), io.StringIO()
        flags = (["--json"] if fmt_json else []) + ["--seed", str(seed)]
        code = run(flags + argv, buf, err)
        out.append((code, buf.getvalue()))
    return out


if __name__ == "__main__":
    for code, text in run_suite(int(sys.argv[1]) if len(sys.argv) > 1 else 0):
        sys.stdout.write(f"## exit {code}\n{text}")
