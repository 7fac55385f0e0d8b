import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from heatgraph import _kernels_py, kernels
from heatgraph._util import max_workers, parallel_map

from helpers import random_graph

compiled = pytest.importorskip("heatgraph._kernels") if kernels.BACKEND == "cython" else None
BACKENDS = [_kernels_py] + ([compiled] if compiled is not None else [])


def csr_of(G):
    indptr, indices, w = G.csr
    return indptr, indices, np.asarray(w, dtype=np.float64)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_bfs_against_scipy(impl, rng):
    for _ in range(10):
        G = random_graph(rng, 40, p=0.05, connected=False)
        indptr, indices, w = csr_of(G)
        A = csr_matrix((np.ones(len(indices)), indices, indptr), shape=(G.n, G.n))
        ref = shortest_path(A, unweighted=True, indices=0)
        got = impl.bfs_distances(indptr, indices, 0).astype(float)
        got[got < 0] = np.inf
        assert np.array_equal(got, ref)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_dijkstra_against_scipy(impl, rng):
    for _ in range(10):
        G = random_graph(rng, 50, p=0.08, connected=False)
        indptr, indices, w = csr_of(G)
        lengths = rng.uniform(0.1, 3.0, size=len(indices))
        # symmetric lengths: copy the upper triangle onto the lower
        A = csr_matrix((lengths, indices, indptr), shape=(G.n, G.n))
        A = A.maximum(A.T).tocsr()
        A.sort_indices()
        lengths = A.data
        ip, ix = A.indptr.astype(np.int64), A.indices.astype(np.int64)
        ref = shortest_path(A, directed=False, indices=3)
        assert np.allclose(impl.dijkstra(ip, ix, lengths, 3), ref, rtol=1e-14)
        cut = impl.dijkstra(ip, ix, lengths, 3, 1.5)
        assert np.array_equal(np.where(ref <= 1.5, ref, np.inf), np.where(cut <= 1.5, cut, np.inf))


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_components_against_scipy(impl, rng):
    G = random_graph(rng, 80, p=0.01, connected=False)
    indptr, indices, _ = csr_of(G)
    A = csr_matrix((np.ones(len(indices)), indices, indptr), shape=(G.n, G.n))
    k, ref = connected_components(A, directed=False)
    got = np.asarray(impl.component_labels(indptr, indices))
    assert len(set(got.tolist())) == k
    # same partition: labels correspond one-to-one
    pairs = set(zip(got.tolist(), ref.tolist()))
    assert len(pairs) == k


@pytest.mark.skipif(compiled is None, reason="compiled extension not built")
@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1), st.integers(2, 60), st.integers(-1, 4))
def test_backend_parity(seed, n, depth):
    rng = np.random.default_rng(seed)
    G = random_graph(rng, n, p=0.1, connected=False)
    indptr, indices, _ = csr_of(G)
    lengths = np.abs(rng.normal(size=len(indices))) + 1e-3
    src = int(rng.integers(n))
    assert np.array_equal(_kernels_py.bfs_distances(indptr, indices, src, depth),
                          compiled.bfs_distances(indptr, indices, src, depth))
    assert np.array_equal(_kernels_py.dijkstra(indptr, indices, lengths, src),
                          compiled.dijkstra(indptr, indices, lengths, src))
    assert np.array_equal(np.asarray(_kernels_py.component_labels(indptr, indices)),
                          np.asarray(compiled.component_labels(indptr, indices)))


def test_pure_python_fallback_selected_by_env():
    env = dict(os.environ, HEATGRAPH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c",
                          "from heatgraph import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_threads_env(monkeypatch):
    monkeypatch.setenv("HEATGRAPH_THREADS", "3")
    assert max_workers() == 3
    monkeypatch.setenv("HEATGRAPH_THREADS", "junk")
    assert max_workers() >= 1
    monkeypatch.setenv("HEATGRAPH_THREADS", "1")
    assert parallel_map(lambda v: v * v, range(5)) == [0, 1, 4, 9, 16]
    monkeypatch.setenv("HEATGRAPH_THREADS", "4")
    assert parallel_map(lambda v: v * v, range(5)) == [0, 1, 4, 9, 16]
