"""Effective Chebotarev bound formulas and the collapsed one-dimensional table.

The bounds have the shape ``p <= (a*log|d_K| + b*n_K + c)**2`` for triples
``(a, b, c)`` read from a two-dimensional table indexed by degree and by
``log|d_K|``. Collapsing the table removes the dependence on ``log|d_K|``: in
each degree column a pivot triple is chosen, earlier triples are absorbed
into a constant ``p0`` and later triples are checked to be dominated.

Logarithms are natural. Table constants are exact decimals; everything that
touches a logarithm is evaluated with outward-rounded intervals and integer
results are taken at the pessimistic endpoint.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import groupby
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from . import intervals as ivl
from .arith import is_squarefree

__all__ = [
    "BoundTriple",
    "TableRow",
    "CollapsedRow",
    "CollapsedTable",
    "DegreeDiscriminantData",
    "TableRangeExceeded",
    "CollapseFailed",
    "DEFAULT_TRIPLE",
    "COLLAPSED_TABLE",
    "REFERENCE_COEFFICIENTS",
    "OESTERLE_C3",
    "eval_bound",
    "discriminant_log_bounds",
    "collapsed_bound",
    "collapsed_coefficients",
    "collapse_table",
    "verify_pivot",
    "classical_bounds",
    "read_table_csv",
    "parse_table_csv",
    "format_table_csv",
    "render_table",
]


class TableRangeExceeded(ValueError):
    """Degree bound falls outside the collapsed table."""


class CollapseFailed(ValueError):
    """No row in a degree column can serve as pivot."""

    def __init__(self, column: tuple[int, int], reason: str = ""):
        self.column = column
        msg = f"no valid pivot in degree column {column[0]}-{column[1]}"
        super().__init__(f"{msg}: {reason}" if reason else msg)


def _frac(x) -> Fraction:
    return ivl.to_fraction(x)


@dataclass(frozen=True)
class BoundTriple:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = _frac(getattr(self, name))
            if value < 0:
                raise ValueError(f"triple component {name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def of(cls, a, b, c) -> "BoundTriple":
        return cls(_frac(a), _frac(b), _frac(c))

    def linear(self, log_abs_d, degree):
        """``a*L + b*n + c``, exact when L is rational, an interval otherwise."""
        if ivl.is_interval(log_abs_d):
            return ivl.exact(self.a) * log_abs_d + ivl.exact(self.b * degree + self.c)
        return self.a * _frac(log_abs_d) + self.b * degree + self.c

    def __str__(self) -> str:
        return f"({_dec(self.a)}, {_dec(self.b)}, {_dec(self.c)})"


def _dec(q: Fraction) -> str:
    """Render a decimal-exact fraction without trailing noise."""
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return str(q)
    digits = max(twos, fives)
    text = f"{q.numerator * 10**digits // q.denominator}"
    sign = "-" if text.startswith("-") else ""
    text = text.lstrip("-").rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


DEFAULT_TRIPLE = BoundTriple.of("4", "2.5", "5")
OESTERLE_C3 = 70


@dataclass(frozen=True)
class TableRow:
    """One cell of the two-dimensional (degree x log-discriminant) table."""

    n_min: int
    n_max: int
    logd_min: Fraction
    logd_max: Optional[Fraction]  # None means +inf
    triple: BoundTriple
    p0: Optional[int] = None

    def __post_init__(self):
        if self.n_min < 2 or self.n_max < self.n_min:
            raise ValueError(f"bad degree range {self.n_min}-{self.n_max}")
        object.__setattr__(self, "logd_min", _frac(self.logd_min))
        if self.logd_min < 0:
            raise ValueError("logd_min must be >= 0")
        if self.logd_max is not None:
            object.__setattr__(self, "logd_max", _frac(self.logd_max))
            if self.logd_max < self.logd_min:
                raise ValueError("logd_min > logd_max")
        if self.p0 is not None and self.p0 < 2:
            raise ValueError("p0 must be >= 2")

    @property
    def column(self) -> tuple[int, int]:
        return (self.n_min, self.n_max)


@dataclass(frozen=True)
class CollapsedRow:
    n_min: int
    n_max: int
    triple: BoundTriple
    p0: int = 2

    def covers(self, n: int) -> bool:
        return self.n_min <= n <= self.n_max


@dataclass(frozen=True)
class CollapsedTable:
    rows: tuple[CollapsedRow, ...]

    def __post_init__(self):
        rows = tuple(sorted(self.rows, key=lambda r: r.n_min))
        if not rows:
            raise ValueError("empty table")
        if rows[0].n_min != 2:
            raise ValueError("collapsed table must start at degree 2")
        for prev, nxt in zip(rows, rows[1:]):
            if nxt.n_min != prev.n_max + 1:
                raise ValueError(f"degree ranges do not partition: {prev.n_max} then {nxt.n_min}")
        object.__setattr__(self, "rows", rows)

    @property
    def max_degree(self) -> int:
        return self.rows[-1].n_max

    def row_for(self, n: int) -> CollapsedRow:
        for row in self.rows:
            if row.covers(n):
                return row
        raise TableRangeExceeded(f"degree {n} outside table range 2-{self.max_degree}")

    def triples(self) -> list[BoundTriple]:
        return [r.triple for r in self.rows]


# Reference collapsed table; p0 = 2 for every row (see verify_pivot tests).
COLLAPSED_TABLE = CollapsedTable(
    (
        CollapsedRow(2, 2, BoundTriple.of("1.446", "0.23", "6.8")),
        CollapsedRow(3, 4, BoundTriple.of("1.527", "0.17", "6.4")),
        CollapsedRow(5, 9, BoundTriple.of("1.629", "0.11", "6.1")),
        CollapsedRow(10, 14, BoundTriple.of("1.667", "0.09", "6.0")),
        CollapsedRow(15, 49, BoundTriple.of("1.745", "0.04", "5.8")),
        CollapsedRow(50, 128, BoundTriple.of("1.755", "0", "5.7")),
    )
)

# Reference coefficients for the three envelope computations, keyed by n0.
# They differ from the per-component maximum at 72 and 96 (1.745 vs 1.755).
REFERENCE_COEFFICIENTS = {
    72: BoundTriple.of("1.745", "0.23", "6.8"),
    96: BoundTriple.of("1.745", "0.23", "6.8"),
    128: BoundTriple.of("1.755", "0.23", "6.8"),
}


@dataclass(frozen=True)
class DegreeDiscriminantData:
    degree: int
    rad_d: int
    log_abs_d: object = field(default=None, compare=False)

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("degree must be >= 2 (nontrivial extension)")
        if self.rad_d < 2 or not is_squarefree(self.rad_d):
            raise ValueError(f"rad_d must be a squarefree integer >= 2, got {self.rad_d}")


def _check_nonneg(log_abs_d, degree: int) -> None:
    if degree < 2:
        raise ValueError("degree must be >= 2")
    if ivl.lower(log_abs_d) < 0:
        raise ValueError("log|d| must be nonnegative")


def eval_bound(triple: BoundTriple, log_abs_d, degree: int, prec: int = ivl.DEFAULT_PREC) -> int:
    """Integer upper bound for ``(a*log|d| + b*n + c)**2``.

    ``log_abs_d`` may be exact (int, str, Fraction) or an mpmath interval.
    """
    if not ivl.is_interval(log_abs_d):
        log_abs_d = _frac(log_abs_d)
    _check_nonneg(log_abs_d, degree)
    value = triple.linear(log_abs_d, degree)
    if ivl.is_interval(value):
        return ivl.ceil_upper(value * value)
    return math.ceil(value * value)


def discriminant_log_bounds(data: DegreeDiscriminantData, prec: int = ivl.DEFAULT_PREC):
    """Interval enclosures of the lower and upper bounds for ``log|d_K|``.

    lower = (log 3 / 2) * n and upper = (n - 1) log rad(d_K) + n log n.
    """
    n = data.degree
    low = ivl.log(3, prec) * n / 2
    high = ivl.log(data.rad_d, prec) * (n - 1) + ivl.log(n, prec) * n
    assert ivl.certainly_le(low, high), (n, data.rad_d)
    return low, high


def collapsed_coefficients(
    n_upper: int, table: CollapsedTable = COLLAPSED_TABLE, convention: str = "reference"
) -> BoundTriple:
    """Triple to use when only ``n_K <= n_upper`` is known.

    ``strict-max`` takes per-component maxima over every row whose degree
    range starts at or below ``n_upper``. ``reference`` returns the fixed constants
    for n0 in {72, 96, 128} with the default table
    and falls back to ``strict-max`` elsewhere.
    """
    if convention not in ("reference", "strict-max"):
        raise ValueError(f"unknown convention {convention!r}")
    if n_upper < 2:
        raise ValueError("n_upper must be >= 2")
    if n_upper > table.max_degree:
        raise TableRangeExceeded(
            f"degree bound {n_upper} exceeds table range 2-{table.max_degree}; "
            "use the generic constants instead"
        )
    n0 = max(72, n_upper)
    if convention == "reference" and table == COLLAPSED_TABLE and n0 in REFERENCE_COEFFICIENTS:
        return REFERENCE_COEFFICIENTS[n0]
    rows = [r for r in table.rows if r.n_min <= n_upper]
    return BoundTriple(
        max(r.triple.a for r in rows), max(r.triple.b for r in rows), max(r.triple.c for r in rows)
    )


def collapsed_expression(triple: BoundTriple, n0: int, log_rad, prec: int = ivl.DEFAULT_PREC):
    """Interval for ``a*((n0-1)*log_rad + n0*log n0) + b*n0 + c`` (not squared)."""
    log_rad = ivl.lift(log_rad, prec)
    inner = log_rad * (n0 - 1) + ivl.log(n0, prec) * n0
    return ivl.exact(triple.a, prec) * inner + ivl.exact(triple.b * n0 + triple.c, prec)


def collapsed_bound(
    n_upper: int,
    rad_2NN: int,
    table: CollapsedTable = COLLAPSED_TABLE,
    *,
    convention: str = "reference",
    triple: Optional[BoundTriple] = None,
    prec: int = ivl.DEFAULT_PREC,
) -> int:
    """Integer bound ``(a((n0-1) log rad + n0 log n0) + b n0 + c)**2``, n0 = max(72, n_upper).

    ``triple`` overrides the table lookup (used to check a fixed coefficient set).
    """
    if rad_2NN < 2 or rad_2NN % 2:
        raise ValueError(f"rad(2 N N') must be even and >= 2, got {rad_2NN}")
    coeffs = collapsed_coefficients(n_upper, table, convention)
    if triple is not None:
        coeffs = triple
    n0 = max(72, n_upper)
    expr = collapsed_expression(coeffs, n0, ivl.log(rad_2NN, prec), prec)
    return ivl.ceil_upper(expr * expr)


def verify_pivot(p0: int, triple: BoundTriple, n0: int, prec: int = ivl.DEFAULT_PREC) -> bool:
    """Does ``p0 <= (a((n0-1) log 2 + n0 log n0) + b n0 + c)**2`` hold pessimistically?"""
    if n0 < 2:
        raise ValueError("n0 must be >= 2")
    if p0 <= 0:
        return True
    expr = collapsed_expression(triple, n0, ivl.log(2, prec), prec)
    return p0 <= ivl.lower(expr * expr)


def _row_value_at(row: TableRow, logd: Fraction, n: int) -> Fraction:
    return row.triple.linear(logd, n)


def _dominated(smaller: TableRow, pivot: BoundTriple) -> bool:
    """Is ``smaller``'s expression <= the pivot's over the row's own region?

    Both expressions are affine in (log|d|, n) with nonnegative coefficients, so
    comparing the unsquared forms at the corners suffices; an infinite upper
    logd endpoint is handled by comparing slopes.
    """
    ends = [smaller.logd_min]
    if smaller.logd_max is not None:
        ends.append(smaller.logd_max)
    elif smaller.triple.a > pivot.a:
        return False
    for logd in ends:
        for n in (smaller.n_min, smaller.n_max):
            if smaller.triple.linear(logd, n) > pivot.linear(logd, n):
                return False
    return True


def _collapse_column(rows: Sequence[TableRow], prec: int) -> CollapsedRow:
    column = rows[0].column
    n_min, n_max = column
    n0 = max(72, n_min)
    reasons = []
    for i, candidate in enumerate(rows):
        absorbed = [2] + [r.p0 for r in rows if r.p0 is not None]
        unbounded = False
        for earlier in rows[:i]:
            if earlier.logd_max is None:
                unbounded = True
                break
            absorbed.append(math.ceil(_row_value_at(earlier, earlier.logd_max, n_max) ** 2))
        if unbounded:
            reasons.append(f"row {i}: an earlier row has an unbounded logd range")
            continue
        p0 = max(absorbed)
        if not verify_pivot(p0, candidate.triple, n0, prec):
            reasons.append(f"row {i}: p0={p0} fails the pivot inequality")
            continue
        later = [r for r in rows[i + 1 :] if not _dominated(r, candidate.triple)]
        if later:
            reasons.append(f"row {i}: {len(later)} later row(s) not dominated")
            continue
        return CollapsedRow(n_min, n_max, candidate.triple, p0)
    raise CollapseFailed(column, "; ".join(reasons))


def collapse_table(bs_table: Iterable[TableRow], prec: int = ivl.DEFAULT_PREC) -> CollapsedTable:
    """Collapse a (degree, log|d|) table to one triple per degree column.

    Adjacent columns that end up with the same triple are merged, keeping the
    larger p0.
    """
    rows = sorted(bs_table, key=lambda r: (r.n_min, r.n_max, r.logd_min))
    if not rows:
        raise ValueError("empty table")
    collapsed: list[CollapsedRow] = []
    for _, col in groupby(rows, key=lambda r: r.column):
        col = list(col)
        row = _collapse_column(col, prec)
        if collapsed and collapsed[-1].triple == row.triple and collapsed[-1].n_max + 1 == row.n_min:
            prev = collapsed.pop()
            row = CollapsedRow(prev.n_min, row.n_max, row.triple, max(prev.p0, row.p0))
        collapsed.append(row)
    return CollapsedTable(tuple(collapsed))


def classical_bounds(log_abs_d, c2=None, prec: int = ivl.DEFAULT_PREC):
    """Oesterle's ``70 (log|d|)^2`` (as an integer) and the Lagarias-Odlyzko shape.

    The second value is ``c2 (log|d|)^2 (log log|d|)^4`` as an interval, or
    None when no constant is supplied (there is no standard constant).
    """
    if not ivl.is_interval(log_abs_d):
        log_abs_d = _frac(log_abs_d)
    if ivl.lower(log_abs_d) < 0:
        raise ValueError("log|d| must be nonnegative")
    if ivl.is_interval(log_abs_d):
        oesterle = ivl.ceil_upper(log_abs_d * log_abs_d * OESTERLE_C3)
    else:
        oesterle = math.ceil(OESTERLE_C3 * log_abs_d**2)
    lo_shape = None
    if c2 is not None:
        if ivl.lower(log_abs_d) <= 1:
            raise ValueError("the log-log form needs log|d| > 1")
        big_l = ivl.lift(log_abs_d, prec)
        loglog = ivl.log(big_l, prec)
        lo_shape = ivl.lift(_frac(c2), prec) * big_l**2 * loglog**4
    return oesterle, lo_shape


# ---------------------------------------------------------------- CSV dialect


def _parse_logd(text: str) -> Optional[Fraction]:
    text = text.strip()
    if text.lower() in ("inf", "+inf", "infinity"):
        return None
    return _frac(text)


def parse_table_csv(text: str) -> list[TableRow]:
    """Rows ``n_min,n_max,logd_min,logd_max,a,b,c[,p0]``; '#' comments and a header are skipped."""
    out = []
    for lineno, rec in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not rec or not "".join(rec).strip() or rec[0].lstrip().startswith("#"):
            continue
        if not rec[0].strip().lstrip("+-").isdigit():
            if out:
                raise ValueError(f"line {lineno}: unexpected header-like row {rec}")
            continue
        if len(rec) not in (7, 8):
            raise ValueError(f"line {lineno}: expected 7 or 8 fields, got {len(rec)}")
        p0 = int(rec[7]) if len(rec) == 8 and rec[7].strip() else None
        out.append(
            TableRow(
                int(rec[0]),
                int(rec[1]),
                _frac(rec[2]),
                _parse_logd(rec[3]),
                BoundTriple.of(rec[4].strip(), rec[5].strip(), rec[6].strip()),
                p0,
            )
        )
    return out


def read_table_csv(path: Union[str, Path]) -> list[TableRow]:
    return parse_table_csv(Path(path).read_text())


def format_table_csv(table: CollapsedTable) -> str:
    lines = ["n_min,n_max,logd_min,logd_max,a,b,c,p0"]
    for r in table.rows:
        t = r.triple
        lines.append(f"{r.n_min},{r.n_max},0,inf,{_dec(t.a)},{_dec(t.b)},{_dec(t.c)},{r.p0}")
    return "\n".join(lines) + "\n"


def render_table(table: CollapsedTable) -> str:
    """Two-column text rendering of a collapsed table."""
    labels = [f"{r.n_min}" if r.n_min == r.n_max else f"{r.n_min}-{r.n_max}" for r in table.rows]
    width = max(len("n"), *(len(s) for s in labels))
    lines = [f"{'n'.center(width)} | (a, b, c)            | p0", "-" * (width + 30)]
    for label, r in zip(labels, table.rows):
        lines.append(f"{label.center(width)} | {str(r.triple):<20} | {r.p0}")
    return "\n".join(lines)
