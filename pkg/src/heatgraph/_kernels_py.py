"""Pure-Python graph traversal kernels over CSR adjacency.

Reference implementation and fallback for the compiled ``_kernels``
extension. Both expose the same functions with the same semantics.
"""
import heapq
from collections import deque

import numpy as np


def bfs_distances(indptr, indices, source, max_depth=-1):
    """Hop distances from ``source``; -1 marks unreached vertices.

    With ``max_depth >= 0`` the search stops expanding at that depth.
    """
    n = len(indptr) - 1
    ptr = indptr.tolist()
    nbr = indices.tolist()
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == max_depth:
            continue
        for k in range(ptr[u], ptr[u + 1]):
            v = nbr[k]
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return np.asarray(dist, dtype=np.int64)


def dijkstra(indptr, indices, lengths, source, cutoff=float("inf")):
    """Shortest path lengths from ``source`` under nonnegative edge lengths.

    Vertices farther than ``cutoff`` are reported as ``inf``.
    """
    n = len(indptr) - 1
    ptr = indptr.tolist()
    nbr = indices.tolist()
    lens = lengths.tolist()
    dist = [float("inf")] * n
    done = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > cutoff:
            break
        if done[u]:
            continue
        done[u] = True
        for k in range(ptr[u], ptr[u + 1]):
            v = nbr[k]
            alt = du + lens[k]
            if alt < dist[v]:
                dist[v] = alt
                heapq.heappush(heap, (alt, v))
    out = np.asarray(dist, dtype=np.float64)
    out[~np.asarray(done, dtype=bool)] = np.inf
    return out


def component_labels(indptr, indices):
    """Label connected components 0, 1, ... in order of smallest vertex index."""
    n = len(indptr) - 1
    ptr = indptr.tolist()
    nbr = indices.tolist()
    label = [-1] * n
    current = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = current
        stack = [s]
        while stack:
            u = stack.pop()
            for k in range(ptr[u], ptr[u + 1]):
                v = nbr[k]
                if label[v] < 0:
                    label[v] = current
                    stack.append(v)
        current += 1
    return np.asarray(label, dtype=np.int64)
