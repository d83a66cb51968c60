"""Time the compiled and numpy influence kernels on random labelings.

    python3 benchmarks/bench_kernels.py [max_dim] [repeats]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from folspace import _kernels_py

try:
    from folspace import _kernels as compiled
except ImportError:
    compiled = None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("max_dim", type=int, nargs="?", default=20)
    ap.add_argument("repeats", type=int, nargs="?", default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'dim':>4} {'numpy ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for n in range(8, args.max_dim + 1, 4):
        labels = rng.choice(np.array([-1, 1], dtype=np.int8), size=1 << n)
        t_py = min(timeit.repeat(lambda: _kernels_py.influence_counts(labels, n), number=1, repeat=args.repeats))
        if compiled is None:
            print(f"{n:>4} {t_py * 1e3:>10.3f} {'n/a':>12} {'-':>8}")
            continue
        assert np.array_equal(compiled.influence_counts(labels, n), _kernels_py.influence_counts(labels, n))
        t_c = min(timeit.repeat(lambda: compiled.influence_counts(labels, n), number=1, repeat=args.repeats))
        print(f"{n:>4} {t_py * 1e3:>10.3f} {t_c * 1e3:>12.3f} {t_py / t_c:>8.2f}")


if __name__ == "__main__":
    main()
