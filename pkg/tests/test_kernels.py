import random
import subprocess
import sys

from uudnlg import _kernels_py, kernels

from oracles import lcs_recursive


def test_pure_python_matches_recursive_oracle():
    rng = random.Random(41)
    for _ in range(300):
        a = [rng.randint(0, 5) for _ in range(rng.randint(0, 20))]
        b = [rng.randint(0, 5) for _ in range(rng.randint(0, 20))]
        assert _kernels_py.lcs_length(a, b) == lcs_recursive(a, b)


def test_selected_impl_matches_pure_python():
    rng = random.Random(42)
    for _ in range(300):
        a = [rng.randint(0, 8) for _ in range(rng.randint(0, 30))]
        b = [rng.randint(0, 8) for _ in range(rng.randint(0, 30))]
        assert kernels.lcs_length(a, b) == _kernels_py.lcs_length(a, b)


def test_lcs_length_tokens():
    assert kernels.lcs_length_tokens("abcd", "bdx") == 2
    assert kernels.lcs_length_tokens(["a", "b"], []) == 0


def test_pure_python_env_forces_fallback():
    out = subprocess.run(
        [sys.executable, "-c",
         "from uudnlg import kernels; print(kernels.HAVE_SPEEDUPS)"],
        env={"UUDNLG_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
