# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled shortest-path kernel.

Must stay observably identical to ``_pyfallback``: binary heap keyed by
(distance, node id), strict-improvement relaxation, CSR-order neighbor scans.
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double INF = float("inf")


cdef inline bint _less(double da, long long va, double db, long long vb) nogil:
    if da != db:
        return da < db
    return va < vb


cdef class _Heap:
    cdef double* hd
    cdef long long* hv
    cdef Py_ssize_t size
    cdef Py_ssize_t cap
    cdef object _buf_d
    cdef object _buf_v

    def __cinit__(self, Py_ssize_t cap):
        if cap < 16:
            cap = 16
        self._buf_d = np.empty(cap, dtype=np.float64)
        self._buf_v = np.empty(cap, dtype=np.int64)
        self.hd = <double*> cnp.PyArray_DATA(<cnp.ndarray> self._buf_d)
        self.hv = <long long*> cnp.PyArray_DATA(<cnp.ndarray> self._buf_v)
        self.size = 0
        self.cap = cap

    cdef void _grow(self):
        cdef Py_ssize_t newcap = self.cap * 2
        buf_d = np.empty(newcap, dtype=np.float64)
        buf_v = np.empty(newcap, dtype=np.int64)
        cdef double* nd = <double*> cnp.PyArray_DATA(<cnp.ndarray> buf_d)
        cdef long long* nv = <long long*> cnp.PyArray_DATA(<cnp.ndarray> buf_v)
        cdef Py_ssize_t i
        for i in range(self.size):
            nd[i] = self.hd[i]
            nv[i] = self.hv[i]
        self._buf_d = buf_d
        self._buf_v = buf_v
        self.hd = nd
        self.hv = nv
        self.cap = newcap

    cdef void push(self, double d, long long v):
        if self.size == self.cap:
            self._grow()
        cdef Py_ssize_t i = self.size
        cdef Py_ssize_t parent
        self.size += 1
        while i > 0:
            parent = (i - 1) >> 1
            if _less(d, v, self.hd[parent], self.hv[parent]):
                self.hd[i] = self.hd[parent]
                self.hv[i] = self.hv[parent]
                i = parent
            else:
                break
        self.hd[i] = d
        self.hv[i] = v

    cdef bint pop(self, double* d_out, long long* v_out):
        if self.size == 0:
            return False
        d_out[0] = self.hd[0]
        v_out[0] = self.hv[0]
        self.size -= 1
        if self.size == 0:
            return True
        cdef double d = self.hd[self.size]
        cdef long long v = self.hv[self.size]
        cdef Py_ssize_t i = 0
        cdef Py_ssize_t child
        while True:
            child = 2 * i + 1
            if child >= self.size:
                break
            if child + 1 < self.size and _less(self.hd[child + 1], self.hv[child + 1], self.hd[child], self.hv[child]):
                child += 1
            if _less(self.hd[child], self.hv[child], d, v):
                self.hd[i] = self.hd[child]
                self.hv[i] = self.hv[child]
                i = child
            else:
                break
        self.hd[i] = d
        self.hv[i] = v
        return True


cdef class Graph:
    """Static CSR digraph; edge weights are supplied per call."""

    cdef readonly Py_ssize_t num_nodes
    cdef long long[::1] indptr
    cdef long long[::1] indices

    def __init__(self, num_nodes, indptr, indices):
        self.num_nodes = int(num_nodes)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)

    def sssp(self, weights, source, bound=INF):
        cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
        cdef Py_ssize_t n = self.num_nodes
        cdef cnp.ndarray dist_arr = np.full(n, INF, dtype=np.float64)
        cdef cnp.ndarray pred_arr = np.full(n, -1, dtype=np.int64)
        cdef double[::1] dist = dist_arr
        cdef long long[::1] pred = pred_arr
        cdef double b = float(bound)
        cdef long long src = int(source)
        cdef _Heap heap = _Heap(64)
        cdef double d, nd
        cdef long long u, v
        cdef Py_ssize_t i

        dist[src] = 0.0
        heap.push(0.0, src)
        while heap.pop(&d, &u):
            if d > dist[u]:
                continue
            for i in range(self.indptr[u], self.indptr[u + 1]):
                v = self.indices[i]
                nd = d + w[i]
                if nd < dist[v] and nd <= b:
                    dist[v] = nd
                    pred[v] = u
                    heap.push(nd, v)
        return dist_arr, pred_arr

    def shortest_to(self, weights, source, target, bound=INF):
        cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
        cdef Py_ssize_t n = self.num_nodes
        cdef cnp.ndarray dist_arr = np.full(n, INF, dtype=np.float64)
        cdef cnp.ndarray pred_arr = np.full(n, -1, dtype=np.int64)
        cdef double[::1] dist = dist_arr
        cdef long long[::1] pred = pred_arr
        cdef double b = float(bound)
        cdef long long src = int(source)
        cdef long long tgt = int(target)
        cdef _Heap heap = _Heap(64)
        cdef double d, nd
        cdef long long u, v
        cdef Py_ssize_t i

        dist[src] = 0.0
        heap.push(0.0, src)
        while heap.pop(&d, &u):
            if d > dist[u]:
                continue
            if u == tgt:
                return d, pred_arr
            for i in range(self.indptr[u], self.indptr[u + 1]):
                v = self.indices[i]
                nd = d + w[i]
                if nd < dist[v] and nd <= b:
                    dist[v] = nd
                    pred[v] = u
                    heap.push(nd, v)
        return INF, pred_arr
