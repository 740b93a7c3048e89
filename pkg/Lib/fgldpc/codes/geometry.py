"""Type-I cyclic finite-geometry LDPC codes.

Both constructions pick one line of the plane, express its points as
powers of a primitive element, and take the N cyclic shifts of that
incidence vector as the rows of H. Shifting by one corresponds to
multiplying every point by the primitive element.
"""
import logging

from fgldpc.codes import ConstructionError, SparseParityCheck
from fgldpc.constants import EG_ORDER_RANGE, PG_ORDER_RANGE
from fgldpc.galois import GaloisField

log = logging.getLogger("fgldpc.codes")


def _check_order(s, bounds, kind):
    lo, hi = bounds
    if not isinstance(s, int) or not lo <= s <= hi:
        raise ValueError(f"{kind} geometry order must be an integer in [{lo}, {hi}], got {s!r}")


def _cyclic_rows(line, n):
    rows = [tuple(sorted((p + k) % n for p in line)) for k in range(n)]
    if len(set(rows)) != n:
        raise ConstructionError(
            f"Orbit of line {sorted(line)} closes before {n} shifts"
        )
    return rows


def line_points(field: GaloisField, s: int, n: int):
    """Exponents, modulo ``n``, of the points {1 + beta*alpha : beta in GF(2^s)}."""
    alpha = field.antilog(1)
    points = []
    for beta in field.subfield(s):
        points.append(field.log(1 ^ field.mul(beta, alpha)) % n)
    return points


def build_eg_type1(s: int) -> SparseParityCheck:
    """Cyclic code from the lines of EG(2, 2^s) that miss the origin.

    N = M = 2^(2s) - 1 and every row and column has weight 2^s.
    """
    _check_order(s, EG_ORDER_RANGE, "EG")
    q = 1 << s
    field = GaloisField(2 * s)
    n = field.order
    line = line_points(field, s, n)
    if len(set(line)) != q:
        raise ConstructionError(f"Line of EG(2,{q}) has {len(set(line))} points, expected {q}")
    h = SparseParityCheck.from_rows(
        n, _cyclic_rows(line, n), name=f"eg:{s}", family="EG-type1", s=s
    )
    _verify_weights(h, q)
    log.debug("Built %s from line %s", h, sorted(line))
    return h


def is_perfect_difference_set(points, n) -> bool:
    seen = set()
    for a in points:
        for b in points:
            if a == b:
                continue
            d = (a - b) % n
            if d in seen:
                return False
            seen.add(d)
    return len(seen) == n - 1


def build_pg_type1(s: int) -> SparseParityCheck:
    """Cyclic code from the lines of PG(2, 2^s).

    Points of the plane are elements of GF(2^(3s)) up to GF(2^s) scalars,
    indexed by their logarithm mod N = 2^(2s) + 2^s + 1. A line is a
    planar perfect difference set of size 2^s + 1.
    """
    _check_order(s, PG_ORDER_RANGE, "PG")
    q = 1 << s
    field = GaloisField(3 * s)
    n = q * q + q + 1
    # The point [alpha] completes the affine part {1 + beta*alpha}
    line = line_points(field, s, n) + [1]
    if len(set(line)) != q + 1 or not is_perfect_difference_set(line, n):
        raise ConstructionError(
            f"Line {sorted(line)} is not a perfect difference set mod {n}"
        )
    h = SparseParityCheck.from_rows(
        n, _cyclic_rows(line, n), name=f"pg:{s}", family="PG-type1", s=s
    )
    _verify_weights(h, q + 1)
    log.debug("Built %s from line %s", h, sorted(line))
    return h


def _verify_weights(h, weight):
    if not ((h.row_degrees == weight).all() and (h.col_degrees == weight).all()):
        raise ConstructionError(f"{h.name} is not regular with weight {weight}")
