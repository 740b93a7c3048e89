"""Read and write parity-check matrices in MacKay's alist format.

Layout::

    N M
    max_col_degree max_row_degree
    <N column degrees>
    <M row degrees>
    <N lines: 1-based check indices of each column>
    <M lines: 1-based bit indices of each row>

Adjacency lines may be padded with zeros up to the maximum degree. A
blank adjacency line stands for a column of degree zero; anywhere else
blank lines are skipped.
"""
from fgldpc.codes import AlistFormatError, SparseParityCheck

HEADER_LINES = 4


def _parse_ints(line, lineno):
    try:
        return [int(word) for word in line.split()]
    except ValueError:
        raise AlistFormatError(f"Line {lineno}: non-integer entry in '{line.strip()}'")


def _next_entries(lines, degree):
    for lineno, ints in lines:
        if ints or degree == 0:
            return lineno, [e for e in ints if e != 0]
    return None, None


def _adjacency(lines, count, degrees, bound, kind):
    """Consume ``count`` adjacency lines from the iterator ``lines``."""
    blocks = []
    for offset in range(count):
        lineno, entries = _next_entries(lines, degrees[offset])
        if entries is None:
            raise AlistFormatError(
                f"Expected {count} {kind} adjacency lines, found {offset}"
            )
        if len(entries) != degrees[offset]:
            raise AlistFormatError(
                f"Line {lineno}: {kind} {offset + 1} lists {len(entries)} "
                f"entries but its degree is {degrees[offset]}"
            )
        for e in entries:
            if not 1 <= e <= bound:
                raise AlistFormatError(f"Line {lineno}: index {e} out of range 1..{bound}")
        blocks.append(tuple(sorted(e - 1 for e in entries)))
    return blocks


def load_alist(text: str, name: str = "imported") -> SparseParityCheck:
    numbered = (
        (lineno, _parse_ints(line, lineno))
        for lineno, line in enumerate(text.splitlines(), start=1)
    )
    header = []
    for _, ints in numbered:
        if ints:
            header.append(ints)
        if len(header) == HEADER_LINES:
            break
    if len(header) < HEADER_LINES or len(header[0]) != 2 or len(header[1]) != 2:
        raise AlistFormatError("Malformed alist header")
    n, m = header[0]
    max_col, max_row = header[1]
    if n < 1 or m < 1:
        raise AlistFormatError(f"Header declares a {m}x{n} matrix")
    col_deg, row_deg = header[2], header[3]
    if len(col_deg) != n or len(row_deg) != m:
        raise AlistFormatError(
            f"Expected {n} column and {m} row degrees, "
            f"got {len(col_deg)} and {len(row_deg)}"
        )
    if max(col_deg) != max_col or max(row_deg) != max_row:
        raise AlistFormatError("Maximum degrees disagree with the degree lists")
    if sum(col_deg) != sum(row_deg):
        raise AlistFormatError("Column and row degrees count different numbers of edges")

    columns = _adjacency(numbered, n, col_deg, m, "column")
    rows = _adjacency(numbered, m, row_deg, n, "row")
    try:
        h = SparseParityCheck.from_rows(n, rows, name=name, family="imported")
    except ValueError as e:
        raise AlistFormatError(str(e)) from e
    for i, (listed, derived) in enumerate(zip(columns, h.col_adj)):
        if listed != derived:
            raise AlistFormatError(
                f"Column {i + 1} lists checks {[k + 1 for k in listed]} "
                f"but the row block gives {[k + 1 for k in derived]}"
            )
    return h


def save_alist(h: SparseParityCheck) -> str:
    def adjacency_line(entries, width):
        padded = [e + 1 for e in entries] + [0] * (width - len(entries))
        return " ".join(map(str, padded))

    out = [
        f"{h.n_cols} {h.n_rows}",
        f"{h.d_v} {h.d_c}",
        " ".join(map(str, h.col_degrees)),
        " ".join(map(str, h.row_degrees)),
    ]
    out.extend(adjacency_line(col, h.d_v) for col in h.col_adj)
    out.extend(adjacency_line(row, h.d_c) for row in h.row_adj)
    return "\n".join(out) + "\n"
