# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled batch simulator: per-vector gate-table cascade in C loops."""


def run_batch(const int[::1] arities,
              const int[::1] line_offsets,
              const int[::1] line_indices,
              const int[::1] table_offsets,
              const int[::1] tables,
              unsigned char[:, ::1] states):
    """Apply the compiled cascade to every row of ``states`` in place.

    ``states`` is a C-contiguous (n_vectors, n_lines) array of 0/1 bytes;
    the flat program arrays are produced by engine.compile_program.
    """
    cdef Py_ssize_t n_vec = states.shape[0]
    cdef Py_ssize_t n_gates = arities.shape[0]
    cdef Py_ssize_t v, g
    cdef int k, off, code, out, p
    with nogil:
        for v in range(n_vec):
            for g in range(n_gates):
                k = arities[g]
                off = line_offsets[g]
                code = 0
                for p in range(k):
                    code = (code << 1) | states[v, line_indices[off + p]]
                out = tables[table_offsets[g] + code]
                for p in range(k - 1, -1, -1):
                    states[v, line_indices[off + p]] = out & 1
                    out >>= 1
