import os
import subprocess
import sys

import numpy as np
import pytest

from folspace import _kernels_py, kernels


@pytest.mark.parametrize("n", [0, 1, 3, 8, 12])
def test_backends_agree(n):
    rng = np.random.default_rng(n)
    labels = rng.choice(np.array([-1, 1], dtype=np.int8), size=1 << n)
    np.testing.assert_array_equal(kernels.influence_counts(labels, n), _kernels_py.influence_counts(labels, n))
    assert kernels.label_sum(labels) == _kernels_py.label_sum(labels)


def test_python_kernel_on_dictator():
    labels = np.array([1 if (x >> 2) & 1 else -1 for x in range(8)], dtype=np.int8)
    assert list(_kernels_py.influence_counts(labels, 3)) == [8, 0, 0]


def test_bad_length():
    with pytest.raises(ValueError):
        kernels.influence_counts(np.ones(5, dtype=np.int8), 2)


def test_pure_python_switch():
    env = dict(os.environ, FOLSPACE_PURE_PYTHON="1")
    code = "from folspace import kernels; from folspace.cli import run; print(kernels.BACKEND); " \
           "raise SystemExit(run(['cube', 'stats', '--rank', '2']))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.startswith("python\n")
    assert "variance: 1/1" not in out.stdout and "satisfiable: 8" in out.stdout
