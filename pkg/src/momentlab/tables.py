"""Exact distribution tables for three permutation cost statistics.

Every table row is computed bottom-up from its triangular recurrence in
arbitrary-precision integer arithmetic:

* ``cycles``      -- permutations of n counted by number of cycles,
                     via ``T[n][k] = (n-1) T[n-1][k] + T[n-1][k-1]``.
* ``inversions``  -- permutations counted by number of inversions, via an
                     n-wide sliding-window sum over the previous row.
* ``quicksort``   -- permutations counted by total comparisons used when
                     sorted with a fixed-pivot quicksort (equivalently,
                     pivot histories of randomized quicksort), via a
                     binomial-weighted polynomial convolution.

Rows are dense over k = 0 .. k_max with structural zeros stored explicitly,
and every row sums to n! exactly.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass

try:
    import gmpy2

    _MPZ = gmpy2.mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    gmpy2 = None
    _MPZ = int

__all__ = [
    "Model",
    "DistributionTable",
    "RowLimitError",
    "DEFAULT_ROW_LIMITS",
    "row_limit",
    "k_max",
    "cycle_counts",
    "inversion_counts",
    "quicksort_counts",
    "distribution_table",
    "distribution_tables",
]

ROW_LIMIT_ENV = "MOMENTLAB_ROW_LIMIT"

# Defaults keep a single row under about a minute on desktop hardware; the
# quicksort triangle costs ~n^5 coefficient operations, inversions rows are
# quadratic in length.
DEFAULT_ROW_LIMITS = {
    "cycles": 5000,
    "inversions": 1000,
    "quicksort": 120,
}


class Model(enum.Enum):
    """The three cost statistics this package analyzes."""

    CYCLES = "cycles"
    INVERSIONS = "inversions"
    QUICKSORT = "quicksort"

    def __str__(self) -> str:
        return self.value


class RowLimitError(RuntimeError):
    """Requested row exceeds the configured cap (resource guard, not math)."""


def row_limit(model: Model) -> int:
    """Effective row cap for ``model``; MOMENTLAB_ROW_LIMIT overrides all."""
    env = os.environ.get(ROW_LIMIT_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{ROW_LIMIT_ENV} must be an integer, got {env!r}")
    return DEFAULT_ROW_LIMITS[model.value]


def k_max(model: Model, n: int) -> int:
    """Largest attainable statistic value: n for cycles, n(n-1)/2 otherwise."""
    if model is Model.CYCLES:
        return n
    return n * (n - 1) // 2


@dataclass(frozen=True)
class DistributionTable:
    """One exact row: counts[k] permutations of n with statistic value k.

    ``counts`` is dense over 0..k_max(model, n) and sums to n! exactly.
    Instances are immutable and safe to share across threads.
    """

    model: Model
    n: int
    counts: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts)

    def check(self) -> None:
        """Raise ValueError unless the row passes its structural invariants."""
        if len(self.counts) != k_max(self.model, self.n) + 1:
            raise ValueError("row has wrong length")
        if self.total() != math.factorial(self.n):
            raise ValueError("row does not sum to n!")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative count")


def _check_row_request(model: Model, n: int, limit: int | None) -> None:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    cap = row_limit(model) if limit is None else limit
    if n > cap:
        raise RowLimitError(
            f"{model} row {n} exceeds the configured cap {cap}; "
            f"set {ROW_LIMIT_ENV} to raise it"
        )


def _cycle_rows(n: int) -> list[list[int]]:
    rows = [[1]]
    for m in range(1, n + 1):
        prev = rows[m - 1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            above = prev[k] if k <= m - 1 else 0
            row[k] = (m - 1) * above + prev[k - 1]
        rows.append(row)
    return rows


def _inversion_rows(n: int) -> list[list[int]]:
    rows = [[1]]
    row = [1]
    for m in range(1, n + 1):
        # prefix[i] = sum of row[:i]; new[k] = prefix[min(k+1, len)] - prefix[k-m+1]
        prefix = [0] * (len(row) + 1)
        for i, c in enumerate(row):
            prefix[i + 1] = prefix[i] + c
        top = len(row)
        new = [0] * (m * (m - 1) // 2 + 1)
        for k in range(len(new)):
            hi = prefix[k + 1] if k + 1 <= top else prefix[top]
            lo = prefix[k - m + 1] if k - m + 1 > 0 else 0
            new[k] = hi - lo
        rows.append(new)
        row = new
    return rows


def _quicksort_packed(n: int) -> tuple[list, int]:
    """Packed comparison-count polynomials A_0..A_n, n! times the PGF.

    A_m(z) = z^(m-1) * sum_j C(m-1, j-1) A_{m-j}(z) A_{j-1}(z), kept as one
    big integer per polynomial (Kronecker substitution: fixed-width slots,
    one slot per coefficient), so each convolution is a single big-integer
    multiply.  Slot width accommodates the row total m! <= n!, hence no
    inter-slot carries.  gmpy2 accelerates the multiplies when installed.
    """
    slot_bits = math.factorial(n).bit_length() + n.bit_length() + 1
    if gmpy2 is None:
        slot_bits = ((slot_bits + 7) // 8) * 8  # byte-aligned for int packing
    packed = [_MPZ(1)]  # A_0 = 1
    for m in range(1, n + 1):
        acc = _MPZ(0)
        # pair j with m+1-j: identical products, mirrored binomial weights
        for j in range(1, m // 2 + 1):
            acc += 2 * math.comb(m - 1, j - 1) * (packed[m - j] * packed[j - 1])
        if m % 2 == 1:
            j = (m + 1) // 2
            acc += math.comb(m - 1, j - 1) * (packed[m - j] * packed[j - 1])
        packed.append(acc << ((m - 1) * slot_bits))
    return packed, slot_bits


def _unpack_row(value, m: int, slot_bits: int) -> list[int]:
    length = m * (m - 1) // 2 + 1
    if gmpy2 is not None:
        vals = [int(v) for v in gmpy2.unpack(gmpy2.mpz(value), slot_bits)]
        return vals + [0] * (length - len(vals))
    slot = slot_bits // 8
    raw = int(value).to_bytes(slot * length, "little")
    return [
        int.from_bytes(raw[i * slot : (i + 1) * slot], "little")
        for i in range(length)
    ]


def _quicksort_rows(n: int) -> list[list[int]]:
    packed, slot_bits = _quicksort_packed(n)
    return [_unpack_row(packed[m], m, slot_bits) for m in range(n + 1)]


_BUILDERS = {
    Model.CYCLES: _cycle_rows,
    Model.INVERSIONS: _inversion_rows,
    Model.QUICKSORT: _quicksort_rows,
}


def cycle_counts(n: int, *, limit: int | None = None) -> DistributionTable:
    """Exact row of cycle counts: counts[k] permutations of n with k cycles."""
    _check_row_request(Model.CYCLES, n, limit)
    return DistributionTable(Model.CYCLES, n, tuple(_cycle_rows(n)[n]))


def inversion_counts(n: int, *, limit: int | None = None) -> DistributionTable:
    """Exact row of inversion counts (palindromic, k = 0 .. n(n-1)/2)."""
    _check_row_request(Model.INVERSIONS, n, limit)
    return DistributionTable(Model.INVERSIONS, n, tuple(_inversion_rows(n)[n]))


def quicksort_counts(n: int, *, limit: int | None = None) -> DistributionTable:
    """Exact row of quicksort comparison counts (k = 0 .. n(n-1)/2)."""
    _check_row_request(Model.QUICKSORT, n, limit)
    return DistributionTable(Model.QUICKSORT, n, tuple(_quicksort_rows(n)[n]))


def distribution_table(model: Model, n: int, *, limit: int | None = None) -> DistributionTable:
    """Dispatch to the row builder for ``model``."""
    _check_row_request(model, n, limit)
    return DistributionTable(model, n, tuple(_BUILDERS[model](n)[n]))


def distribution_tables(model: Model, n: int, *, limit: int | None = None) -> list[DistributionTable]:
    """All rows 0..n in one bottom-up pass (cheaper than n separate calls)."""
    _check_row_request(model, n, limit)
    rows = _BUILDERS[model](n)
    return [DistributionTable(model, m, tuple(rows[m])) for m in range(n + 1)]
