# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph traversal kernels; see ``_kernels_py`` for the reference."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY
from libc.stdlib cimport malloc, free

cnp.import_array()


def bfs_distances(const cnp.int64_t[:] indptr, const cnp.int64_t[:] indices,
                  Py_ssize_t source, long max_depth=-1):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[:] dist = out
    cdef cnp.int64_t* queue = <cnp.int64_t*> malloc(max(n, 1) * sizeof(cnp.int64_t))
    cdef Py_ssize_t head = 0, tail = 0, k, u, v
    cdef cnp.int64_t du
    if queue == NULL:
        raise MemoryError()
    try:
        dist[source] = 0
        queue[tail] = source
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du == max_depth:
                continue
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
    finally:
        free(queue)
    return out


cdef inline void _sift_up(double* key, cnp.int64_t* item, Py_ssize_t i) nogil:
    cdef Py_ssize_t parent
    cdef double k = key[i]
    cdef cnp.int64_t it = item[i]
    while i > 0:
        parent = (i - 1) >> 1
        if key[parent] <= k:
            break
        key[i] = key[parent]
        item[i] = item[parent]
        i = parent
    key[i] = k
    item[i] = it


cdef inline void _sift_down(double* key, cnp.int64_t* item, Py_ssize_t size) nogil:
    cdef Py_ssize_t i = 0, child
    cdef double k = key[0]
    cdef cnp.int64_t it = item[0]
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        if child + 1 < size and key[child + 1] < key[child]:
            child += 1
        if key[child] >= k:
            break
        key[i] = key[child]
        item[i] = item[child]
        i = child
    key[i] = k
    item[i] = it


def dijkstra(const cnp.int64_t[:] indptr, const cnp.int64_t[:] indices,
             const double[:] lengths, Py_ssize_t source, double cutoff=INFINITY):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t m = indices.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.full(n, np.inf)
    cdef double[:] dist = out
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] done_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[:] done = done_arr
    # lazy-deletion heap: at most one push per relaxation plus the source
    cdef Py_ssize_t cap = m + 1
    cdef double* hkey = <double*> malloc(cap * sizeof(double))
    cdef cnp.int64_t* hitem = <cnp.int64_t*> malloc(cap * sizeof(cnp.int64_t))
    cdef Py_ssize_t size = 0, k, u, v
    cdef double du, alt
    if hkey == NULL or hitem == NULL:
        free(hkey)
        free(hitem)
        raise MemoryError()
    try:
        with nogil:
            dist[source] = 0.0
            hkey[0] = 0.0
            hitem[0] = source
            size = 1
            while size > 0:
                du = hkey[0]
                u = hitem[0]
                if du > cutoff:
                    break
                size -= 1
                if size > 0:
                    hkey[0] = hkey[size]
                    hitem[0] = hitem[size]
                    _sift_down(hkey, hitem, size)
                if done[u]:
                    continue
                done[u] = 1
                for k in range(indptr[u], indptr[u + 1]):
                    v = indices[k]
                    alt = du + lengths[k]
                    if alt < dist[v]:
                        dist[v] = alt
                        hkey[size] = alt
                        hitem[size] = v
                        _sift_up(hkey, hitem, size)
                        size += 1
        for u in range(n):
            if not done[u]:
                dist[u] = INFINITY
    finally:
        free(hkey)
        free(hitem)
    return out


def component_labels(const cnp.int64_t[:] indptr, const cnp.int64_t[:] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[:] label = out
    cdef cnp.int64_t* stack = <cnp.int64_t*> malloc(max(n, 1) * sizeof(cnp.int64_t))
    cdef Py_ssize_t s, top, k, u, v
    cdef cnp.int64_t current = 0
    if stack == NULL:
        raise MemoryError()
    try:
        for s in range(n):
            if label[s] >= 0:
                continue
            label[s] = current
            top = 0
            stack[top] = s
            top += 1
            while top > 0:
                top -= 1
                u = stack[top]
                for k in range(indptr[u], indptr[u + 1]):
                    v = indices[k]
                    if label[v] < 0:
                        label[v] = current
                        stack[top] = v
                        top += 1
            current += 1
    finally:
        free(stack)
    return out
