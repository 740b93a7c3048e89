"""Row-wise reductions over per-edge arrays.

Edges are ordered row by row (see ``SparseParityCheck.row_ptr``), so a
row's edges form one contiguous run and ``ufunc.reduceat`` reduces every
row at once. Within a row, edges are sorted by bit index.
"""
import numpy as np


def row_reduce(ufunc, values, h):
    return ufunc.reduceat(values, h.row_ptr[:-1])


def first_edge_of(values, h, per_row):
    """Index of the first edge of each row whose value equals ``per_row``
    for that row, i.e. the lowest bit index among ties."""
    hits = np.flatnonzero(values == per_row[h.edge_row])
    rows, first = np.unique(h.edge_row[hits], return_index=True)
    out = np.full(h.n_rows, -1, dtype=np.int64)
    out[rows] = hits[first]
    return out


def row_argmin(values, h):
    return first_edge_of(values, h, row_reduce(np.minimum, values, h))


def row_argmax(values, h):
    return first_edge_of(values, h, row_reduce(np.maximum, values, h))


def extrinsic_min(values, h):
    """For every edge, the minimum of ``values`` over the other edges of
    its row. Rows of degree one give ``inf``."""
    mins = row_reduce(np.minimum, values, h)
    arg = first_edge_of(values, h, mins)
    masked = np.array(values, dtype=np.float64)
    masked[arg] = np.inf
    second = row_reduce(np.minimum, masked, h)
    out = mins[h.edge_row].astype(np.float64)
    out[arg] = second
    return out


def extrinsic_sign(values, h):
    """Product of the signs of the other edges of each row, zero counted
    as positive."""
    negative = (values < 0).astype(np.int64)
    parity = row_reduce(np.add, negative, h) & 1
    return np.where((parity[h.edge_row] ^ negative) & 1, -1.0, 1.0)
