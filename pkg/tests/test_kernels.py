import os
import subprocess
import sys

import pytest

from ribbon_moduli import _kernels_py, kernels
from ribbon_moduli.enumeration import enumerate_graphs

compiled = pytest.importorskip("ribbon_moduli._kernels")


def catalog_graphs():
    for t in [(0, 3), (1, 1), (0, 4), (1, 2)]:
        for c in enumerate_graphs(t):
            yield c.graph


def test_backends_agree_on_canonical():
    for g in catalog_graphs():
        for labels in (g.half_edge_label, (0,) * g.half_edge_count):
            assert compiled.canonical(g.sigma0, g.sigma1, labels) == _kernels_py.canonical(g.sigma0, g.sigma1, labels)


def test_backends_agree_on_traverse(double_noose):
    g = double_noose
    for start in range(g.half_edge_count):
        got = compiled.traverse(g.sigma0, g.sigma1, g.half_edge_label, start)
        assert tuple(got[0]) == _kernels_py.traverse(g.sigma0, g.sigma1, g.half_edge_label, start)[0]
        assert list(got[1]) == _kernels_py.traverse(g.sigma0, g.sigma1, g.half_edge_label, start)[1]


def test_disconnected_rejected_by_both():
    s0, s1, lab = (0, 1, 2, 3), (1, 0, 3, 2), (1, 1, 2, 2)
    for mod in (compiled, _kernels_py):
        with pytest.raises(ValueError):
            mod.traverse(s0, s1, lab, 0)


def test_compiled_backend_selected_by_default():
    if os.environ.get("RIBBON_MODULI_PURE"):
        pytest.skip("pure backend forced")
    assert kernels.BACKEND == "cython"


def test_pure_fallback_via_environment():
    env = dict(os.environ, RIBBON_MODULI_PURE="1")
    code = ("from ribbon_moduli import kernels, enumerate_graphs;"
            "print(kernels.BACKEND, len(enumerate_graphs((0, 3))))")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert proc.stdout.split() == ["python", "7"]
