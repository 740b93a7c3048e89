"""Sparse parity-check matrices and the operations every decoder needs
from them.

A :class:`SparseParityCheck` is immutable once built, so one instance can
be shared by any number of decoders running side by side. Matrices come
from the finite-geometry constructions in :mod:`fgldpc.codes.geometry`
or from alist files via :mod:`fgldpc.codes.alist`; :func:`get_code`
resolves a command-line selector to either.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix

log = logging.getLogger("fgldpc.codes")

FAMILIES = ("EG-type1", "PG-type1", "imported")


class AlistFormatError(ValueError):
    pass


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SparseParityCheck:
    """The binary matrix H held as row and column neighbourhoods.

    ``row_adj[k]`` is the sorted tuple N(k) of bits checked by row k and
    ``col_adj[i]`` the sorted tuple M(i) of checks involving bit i.
    Edges are numbered row by row, so the edges of check k occupy
    ``row_ptr[k]:row_ptr[k+1]``.
    """

    n_cols: int
    n_rows: int
    row_adj: Tuple[Tuple[int, ...], ...]
    col_adj: Tuple[Tuple[int, ...], ...]
    name: str = "unnamed"
    family: str = "imported"
    s: Optional[int] = None
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        if len(self.row_adj) != self.n_rows or len(self.col_adj) != self.n_cols:
            raise ValueError(
                f"Adjacency lists do not describe a {self.n_rows}x{self.n_cols} matrix"
            )
        if self.family not in FAMILIES:
            raise ValueError(f"Unknown code family '{self.family}'")
        for k, row in enumerate(self.row_adj):
            if not row:
                raise ValueError(f"Check {k} has no bits")
        transposed = [[] for _ in range(self.n_cols)]
        for k, row in enumerate(self.row_adj):
            for i in row:
                if not 0 <= i < self.n_cols:
                    raise ValueError(f"Bit index {i} of check {k} is out of range")
                transposed[i].append(k)
        for i, (expected, actual) in enumerate(zip(transposed, self.col_adj)):
            if tuple(expected) != tuple(actual):
                raise ValueError(
                    f"Column {i} lists checks {list(actual)} but the rows give {expected}"
                )
        object.__setattr__(self, "_hash", hash((self.n_cols, self.row_adj)))

    @classmethod
    def from_rows(cls, n_cols: int, rows: Iterable[Iterable[int]], **kwargs):
        row_adj = []
        for k, row in enumerate(rows):
            row = tuple(sorted(int(i) for i in row))
            if len(set(row)) != len(row):
                raise ValueError(f"Check {k} lists a bit twice")
            row_adj.append(row)
        col_adj = [[] for _ in range(n_cols)]
        for k, row in enumerate(row_adj):
            for i in row:
                if not 0 <= i < n_cols:
                    raise ValueError(f"Bit index {i} of check {k} is out of range")
                col_adj[i].append(k)
        return cls(
            n_cols=n_cols,
            n_rows=len(row_adj),
            row_adj=tuple(row_adj),
            col_adj=tuple(tuple(c) for c in col_adj),
            **kwargs,
        )

    @classmethod
    def from_dense(cls, matrix, **kwargs):
        matrix = np.asarray(matrix)
        return cls.from_rows(
            matrix.shape[1], (np.flatnonzero(row) for row in matrix), **kwargs
        )

    def __eq__(self, other):
        if not isinstance(other, SparseParityCheck):
            return NotImplemented
        return self.n_cols == other.n_cols and self.row_adj == other.row_adj

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{self.name} ({self.n_rows}x{self.n_cols}, d_v={self.d_v}, d_c={self.d_c})"

    @cached_property
    def row_degrees(self) -> np.ndarray:
        return np.array([len(r) for r in self.row_adj], dtype=np.int64)

    @cached_property
    def col_degrees(self) -> np.ndarray:
        return np.array([len(c) for c in self.col_adj], dtype=np.int64)

    @property
    def d_v(self) -> int:
        return int(self.col_degrees.max(initial=0))

    @property
    def d_c(self) -> int:
        return int(self.row_degrees.max(initial=0))

    @property
    def is_regular(self) -> bool:
        return bool(
            (self.col_degrees == self.d_v).all() and (self.row_degrees == self.d_c).all()
        )

    @property
    def n_edges(self) -> int:
        return int(self.row_degrees.sum())

    @cached_property
    def row_ptr(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum(self.row_degrees)))

    @cached_property
    def edge_row(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_rows), self.row_degrees)

    @cached_property
    def edge_col(self) -> np.ndarray:
        return np.fromiter(
            (i for row in self.row_adj for i in row), dtype=np.int64, count=self.n_edges
        )

    @cached_property
    def matrix(self) -> csr_matrix:
        return csr_matrix(
            (np.ones(self.n_edges, dtype=np.int32), self.edge_col, self.row_ptr),
            shape=(self.n_rows, self.n_cols),
        )

    def dense(self) -> np.ndarray:
        return self.matrix.toarray().astype(np.uint8)


@dataclass(frozen=True)
class CodeDescriptor:
    family: str
    s: Optional[int]
    n: int
    k: int

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError(f"Dimension {self.k} is not in (0, {self.n})")

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def label(self) -> str:
        return f"({self.n},{self.k})"

    @classmethod
    def from_matrix(cls, h: SparseParityCheck):
        return cls(family=h.family, s=h.s, n=h.n_cols, k=h.n_cols - gf2_rank(h))


def syndrome(h: SparseParityCheck, c_hat: Sequence[int]) -> np.ndarray:
    c_hat = np.asarray(c_hat)
    if c_hat.shape != (h.n_cols,):
        raise ValueError(
            f"Hard decision has shape {c_hat.shape}, expected ({h.n_cols},)"
        )
    return (h.matrix.dot(c_hat.astype(np.int32)) & 1).astype(np.uint8)


def gf2_rank(h: SparseParityCheck) -> int:
    """Rank over GF(2), eliminating rows held as int bitsets."""
    basis = {}
    for row in h.row_adj:
        bits = 0
        for i in row:
            bits |= 1 << i
        while bits:
            lead = bits.bit_length() - 1
            if lead not in basis:
                basis[lead] = bits
                break
            bits ^= basis[lead]
    return len(basis)


def max_column_overlap(h: SparseParityCheck) -> int:
    """Largest number of checks shared by two distinct columns."""
    gram = (h.matrix.T @ h.matrix).tolil()
    gram.setdiag(0)
    return int(gram.tocsr().max()) if h.n_cols > 1 else 0


def get_code(selector: str) -> SparseParityCheck:
    """Resolve ``eg:S``, ``pg:S`` or ``alist:PATH`` to a matrix."""
    from fgldpc.codes.alist import load_alist
    from fgldpc.codes.geometry import build_eg_type1, build_pg_type1

    family, _, arg = selector.partition(":")
    if not arg:
        raise ValueError(f"Code selector '{selector}' needs the form family:arg")
    if family == "alist":
        with open(arg, "r") as fh:
            return load_alist(fh.read(), name=selector)
    builders = {"eg": build_eg_type1, "pg": build_pg_type1}
    if family not in builders:
        raise ValueError(
            f"Unknown code family '{family}' in '{selector}' (use eg, pg or alist)"
        )
    try:
        s = int(arg)
    except ValueError:
        raise ValueError(f"Geometry order '{arg}' in '{selector}' is not an integer")
    return builders[family](s)
