"""Monte Carlo estimation of factorial moments under uniform random
permutations, with a pinned, fully reproducible random number generator.

RNG contract
------------
Randomness comes from SplitMix64 run in counter mode.  With the 64-bit
finalizer ``mix64`` (xor-shift/multiply constants 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB) and GOLDEN = 0x9E3779B97F4A7C15, trial ``i`` of seed
``seed`` draws its t-th word (t = 1, 2, ...) as

    base_i = mix64((seed + (i+1) * GOLDEN) mod 2^64)
    word_t = mix64((base_i + t * GOLDEN) mod 2^64)

Every trial owns its own stream, so results are independent of execution
order and of the ``threads`` setting; bounded draws use rejection sampling,
so shuffles are exactly uniform.  Fixed seed means bit-identical results
across runs and platforms.

Per-trial falling factorials are exact integers and are accumulated as
exact integer sums, so parallel execution reproduces the sequential result
bit for bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .tables import Model

__all__ = [
    "TrialStream",
    "trial_stream",
    "MomentEstimate",
    "random_permutation",
    "count_cycles",
    "count_inversions",
    "quicksort_comparisons",
    "comparisons_first_pivot",
    "sample_cost",
    "estimate_factorial_moment",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_BATCH = 4096  # trials per vectorized permutation block


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


class TrialStream:
    """One trial's random stream (see module docstring for the definition)."""

    __slots__ = ("base", "counter")

    def __init__(self, seed: int, index: int = 0):
        if not 0 <= seed <= _MASK64:
            raise ValueError("seed must fit in 64 bits")
        if index < 0:
            raise ValueError("trial index must be nonnegative")
        self.base = _mix64(seed + (index + 1) * _GOLDEN)
        self.counter = 0

    def next_uint64(self) -> int:
        self.counter += 1
        return _mix64(self.base + self.counter * _GOLDEN)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (exactly unbiased)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (1 << 64) % bound
        while True:
            word = self.next_uint64()
            if word >= threshold:
                return word % bound


def trial_stream(seed: int, index: int = 0) -> TrialStream:
    """The random stream of trial ``index`` under ``seed``."""
    return TrialStream(seed, index)


def random_permutation(n: int, rng: TrialStream) -> list[int]:
    """Uniformly random permutation of 1..n via an unbiased Fisher-Yates
    shuffle; deterministic given the stream state."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    arr = list(range(1, n + 1))
    for pos in range(n - 1, 0, -1):
        j = rng.randbelow(pos + 1)
        arr[pos], arr[j] = arr[j], arr[pos]
    return arr


# -- vectorized batch twin of random_permutation ----------------------------

def _mix64_np(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def _permutation_batch(seed: int, n: int, start: int, stop: int) -> np.ndarray:
    """Permutations for trials start..stop-1, one per row.

    Word-for-word identical to driving ``random_permutation`` with each
    trial's ``TrialStream`` (asserted in the test suite); the whole batch
    is mixed and swapped with numpy for speed.
    """
    trials = stop - start
    idx = np.arange(start + 1, stop + 1, dtype=np.uint64)
    base = _mix64_np(np.uint64(seed) + idx * np.uint64(_GOLDEN))
    counter = np.ones(trials, dtype=np.uint64)
    arr = np.tile(np.arange(1, n + 1, dtype=np.int64), (trials, 1))
    rows = np.arange(trials)
    for pos in range(n - 1, 0, -1):
        bound = pos + 1
        threshold = np.uint64((1 << 64) % bound)
        word = _mix64_np(base + counter * np.uint64(_GOLDEN))
        counter += np.uint64(1)
        rejected = word < threshold
        while rejected.any():
            word[rejected] = _mix64_np(
                base[rejected] + counter[rejected] * np.uint64(_GOLDEN)
            )
            counter[rejected] += np.uint64(1)
            rejected = word < threshold
        j = (word % np.uint64(bound)).astype(np.int64)
        swapped = arr[rows, pos].copy()
        arr[rows, pos] = arr[rows, j]
        arr[rows, j] = swapped
    return arr


# -- cost statistics ---------------------------------------------------------

def _require_permutation(perm) -> int:
    n = len(perm)
    seen = bytearray(n)
    for v in perm:
        i = v - 1
        if not 0 <= i < n or seen[i]:
            raise ValueError("input is not a permutation of 1..n")
        seen[i] = 1
    return n


def count_cycles(perm) -> int:
    """Number of cycles (orbits) of a permutation of 1..n."""
    n = _require_permutation(perm)
    seen = bytearray(n)
    cycles = 0
    for i in range(n):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = 1
                j = perm[j] - 1
    return cycles


def count_inversions(perm) -> int:
    """Number of inversions, counted by an O(n log n) bottom-up merge."""
    n = _require_permutation(perm)
    src = list(perm)
    dst = [0] * n
    inversions = 0
    width = 1
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid >= n:
                dst[lo:n] = src[lo:n]
                break
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                left = src[i]
                if left <= src[j]:
                    dst[k] = left
                    i += 1
                else:
                    dst[k] = src[j]
                    j += 1
                    inversions += mid - i
                k += 1
            if i < mid:
                dst[k:hi] = src[i:mid]
            else:
                dst[k:hi] = src[j:hi]
            lo = hi
        src, dst = dst, src
        width *= 2
    return inversions


def quicksort_comparisons(n: int, rng: TrialStream) -> int:
    """Total comparisons of one randomized quicksort run on n elements.

    Size recursion: partitioning a subproblem of size m costs exactly m-1
    comparisons and splits it at a uniformly random pivot rank.  This is
    distribution-identical to instrumenting quicksort on a random array
    (see ``comparisons_first_pivot``) but touches no array.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    total = 0
    stack = [n]
    while stack:
        m = stack.pop()
        if m < 2:
            continue
        total += m - 1
        rank = rng.randbelow(m)
        stack.append(rank)
        stack.append(m - 1 - rank)
    return total


def comparisons_first_pivot(perm) -> int:
    """Comparisons used by first-element-pivot quicksort on ``perm``.

    The instrumented array-based variant: on a uniformly random input its
    comparison count has the same distribution as ``quicksort_comparisons``.
    """
    _require_permutation(perm)
    total = 0
    stack = [list(perm)]
    while stack:
        seq = stack.pop()
        if len(seq) < 2:
            continue
        pivot = seq[0]
        total += len(seq) - 1
        stack.append([x for x in seq[1:] if x < pivot])
        stack.append([x for x in seq[1:] if x > pivot])
    return total


def sample_cost(model: Model, n: int, rng: TrialStream) -> int:
    """Draw one cost sample of ``model`` at size n from ``rng``."""
    if model is Model.CYCLES:
        return count_cycles(random_permutation(n, rng))
    if model is Model.INVERSIONS:
        return count_inversions(random_permutation(n, rng))
    return quicksort_comparisons(n, rng)


# -- moment estimation -------------------------------------------------------

@dataclass(frozen=True)
class MomentEstimate:
    """Empirical factorial moment: sample mean of (X)_s with its standard
    error, plus everything needed to reproduce it."""

    s: int
    n: int
    trials: int
    mean: float
    stderr: float
    seed: int


def _accumulate_range(model: Model, n: int, s: int, seed: int, start: int, stop: int):
    """Exact integer sums of (X)_s and (X)_s^2 over trials start..stop-1."""
    total = 0
    total_sq = 0
    if model is Model.QUICKSORT:
        for i in range(start, stop):
            ff = math.perm(quicksort_comparisons(n, TrialStream(seed, i)), s)
            total += ff
            total_sq += ff * ff
        return total, total_sq
    counter = count_cycles if model is Model.CYCLES else count_inversions
    block = max(1, min(_BATCH, 2_000_000 // max(n, 1)))  # cap batch memory
    for lo in range(start, stop, block):
        hi = min(lo + block, stop)
        for row in _permutation_batch(seed, n, lo, hi).tolist():
            ff = math.perm(counter(row), s)
            total += ff
            total_sq += ff * ff
    return total, total_sq


def _range_worker(args):
    return _accumulate_range(*args)


def estimate_factorial_moment(
    model: Model,
    n: int,
    s: int,
    trials: int,
    seed: int,
    *,
    threads: int = 1,
) -> MomentEstimate:
    """Monte Carlo estimate of the s-th factorial moment at size n.

    Per-trial streams make the result a pure function of (model, n, s,
    trials, seed); ``threads`` only changes how trial ranges are divided
    among worker processes, never the result.
    """
    if trials < 2:
        raise ValueError(f"trials must be at least 2, got {trials}")
    if s < 0:
        raise ValueError(f"s must be nonnegative, got {s}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if threads < 1:
        raise ValueError(f"threads must be positive, got {threads}")
    if threads == 1:
        total, total_sq = _accumulate_range(model, n, s, seed, 0, trials)
    else:
        step = -(-trials // threads)
        ranges = [
            (model, n, s, seed, lo, min(lo + step, trials))
            for lo in range(0, trials, step)
        ]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_range_worker, ranges))
        total = sum(p[0] for p in parts)
        total_sq = sum(p[1] for p in parts)
    mean = float(Fraction(total, trials))
    variance_num = trials * total_sq - total * total  # >= 0 (Cauchy-Schwarz)
    stderr = math.sqrt(
        float(Fraction(variance_num, trials * trials * (trials - 1)))
    )
    return MomentEstimate(s, n, trials, mean, stderr, seed)
