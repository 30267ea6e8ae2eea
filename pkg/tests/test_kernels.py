from __future__ import annotations

import os
import subprocess
import sys
from itertools import combinations

import numpy as np
import pytest

from tcarrange import kernels
from tcarrange.arrangement import braid, generic, mask_of

compiled = pytest.mark.skipif(kernels.compiled is None, reason="extension not built")


def closures_for(arr, idx):
    return [arr.closure_mask(mask_of(idx[q] for q in range(len(idx)) if m >> q & 1))
            for m in range(1 << len(idx))]


def independent_sets(arr, p):
    return [t for t in combinations(range(arr.size), p) if arr.is_independent(t)]


def test_backend_named():
    assert kernels.BACKEND in ("compiled", "python")


@compiled
@pytest.mark.parametrize("arr", [braid(4), braid(5), generic(3, 5, 1)], ids=["braid4", "braid5", "generic"])
def test_flag_expansion_backends_agree(arr):
    for p in range(arr.rank + 1):
        for t in independent_sets(arr, p):
            cl = closures_for(arr, t)
            py = sorted(kernels.python.flag_expansion(cl, t))
            cc = sorted((int(m), int(s)) for m, s in kernels.compiled.flag_expansion(cl, t))
            assert py == cc


@compiled
def test_geometry_kernels_agree():
    rng = np.random.default_rng(0)
    a = rng.normal(size=500) + 1j * rng.normal(size=500)
    b = np.where(rng.random(500) < 0.5, -a * rng.uniform(0.1, 3, 500), rng.normal(size=500) + 1j * rng.normal(size=500))
    punct = np.array([0, 1], dtype=complex)
    assert np.array_equal(kernels.python.segment_incidence(a, b, punct, 1e-12),
                          np.asarray(kernels.compiled.segment_incidence(a, b, punct, 1e-12)))
    frames = rng.normal(size=(50, 4, 2))
    for x, y in zip(kernels.python.frame_distances(frames), kernels.compiled.frame_distances(frames)):
        assert np.allclose(x, np.asarray(y), rtol=0, atol=1e-15)
    assert np.allclose(kernels.python.frame_steps(frames), np.asarray(kernels.compiled.frame_steps(frames)))


def test_pure_python_fallback_selected_by_env():
    env = dict(os.environ, TCARRANGE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from tcarrange import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_results_identical_under_fallback():
    code = ("from tcarrange.tc_report import report; import sys; "
            "sys.stdout.write(report('config-plane:4').dumps())")
    fast = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    env = dict(os.environ, TCARRANGE_PURE_PYTHON="1")
    slow = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert fast.stdout == slow.stdout


@compiled
def test_benchmark_script_runs(capsys):
    import importlib.util
    from pathlib import Path

    spec = importlib.util.spec_from_file_location(
        "bench_kernels", Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py")
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    assert bench.main(["--repeat", "1"]) == 0
    assert "flag_expansion" in capsys.readouterr().out
