"""Distribution-table recurrences against brute-force enumeration and
structural invariants."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_histogram, pivot_sequence_distribution
from momentlab import (
    DistributionTable,
    Model,
    RowLimitError,
    cycle_counts,
    distribution_table,
    distribution_tables,
    inversion_counts,
    k_max,
    quicksort_counts,
    row_limit,
)


class TestExamples:
    def test_cycle_row_base(self):
        assert cycle_counts(0).counts == (1,)

    def test_cycle_row_3(self):
        assert cycle_counts(3).counts == (0, 2, 3, 1)

    def test_cycle_row_4(self):
        assert cycle_counts(4).counts == (0, 6, 11, 6, 1)

    def test_inversion_row_3(self):
        assert inversion_counts(3).counts == (1, 2, 2, 1)

    def test_inversion_row_4_at_3(self):
        assert inversion_counts(4).counts[3] == 6

    def test_inversion_row_1(self):
        assert inversion_counts(1).counts == (1,)

    def test_quicksort_row_2(self):
        assert quicksort_counts(2).counts == (0, 2)

    def test_quicksort_row_3(self):
        # 3! * G_3(z) = z^2 (2 + 4z)
        assert quicksort_counts(3).counts == (0, 0, 2, 4)

    def test_quicksort_row_4_max(self):
        assert quicksort_counts(4).counts[6] == 8


class TestBruteForce:
    @pytest.mark.parametrize("model", list(Model))
    @pytest.mark.parametrize("n", range(7))
    def test_histogram_equality(self, model, n):
        table = distribution_table(model, n)
        assert list(table.counts) == brute_force_histogram(model, n)

    @pytest.mark.parametrize("n", range(6))
    def test_quicksort_pivot_sequences(self, n):
        table = quicksort_counts(n)
        dist = pivot_sequence_distribution(n)
        total = math.factorial(n)
        for k, c in enumerate(table.counts):
            assert dist.get(k, 0) * total == c


class TestInvariants:
    @settings(max_examples=20, deadline=None)
    @given(model=st.sampled_from(list(Model)), n=st.integers(0, 25))
    def test_row_sum_is_factorial(self, model, n):
        table = distribution_table(model, n)
        assert sum(table.counts) == math.factorial(n)
        assert len(table.counts) == k_max(model, n) + 1
        table.check()

    @pytest.mark.parametrize("n", range(1, 41))
    def test_cycle_structure(self, n):
        counts = cycle_counts(n).counts
        assert counts[0] == 0
        assert counts[n] == 1
        assert counts[1] == math.factorial(n - 1)

    @pytest.mark.parametrize("n", range(51))
    def test_inversion_palindrome(self, n):
        counts = inversion_counts(n).counts
        assert counts == counts[::-1]

    def test_quicksort_top_count_and_leading_zeros(self, quicksort_rows_60):
        for n in range(1, 21):
            counts = quicksort_rows_60[n].counts
            assert counts[-1] == 2 ** (n - 1)
        # no permutation sorts in fewer comparisons than the best case
        counts = quicksort_rows_60[8].counts
        first_nonzero = next(k for k, c in enumerate(counts) if c)
        assert all(c == 0 for c in counts[:first_nonzero])
        assert first_nonzero > 0

    def test_batch_rows_match_single_rows(self):
        for model in Model:
            rows = distribution_tables(model, 12)
            for n in (0, 5, 12):
                assert rows[n] == distribution_table(model, n)


class TestLimits:
    def test_negative_n(self):
        with pytest.raises(ValueError):
            cycle_counts(-1)

    def test_row_cap(self):
        with pytest.raises(RowLimitError):
            quicksort_counts(121)
        with pytest.raises(RowLimitError):
            inversion_counts(1001)
        with pytest.raises(RowLimitError):
            cycle_counts(5001)

    def test_explicit_limit_argument(self):
        with pytest.raises(RowLimitError):
            cycle_counts(11, limit=10)
        assert cycle_counts(10, limit=10).n == 10

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("MOMENTLAB_ROW_LIMIT", "10")
        assert row_limit(Model.CYCLES) == 10
        assert row_limit(Model.QUICKSORT) == 10
        with pytest.raises(RowLimitError):
            cycle_counts(11)
        monkeypatch.setenv("MOMENTLAB_ROW_LIMIT", "not-a-number")
        with pytest.raises(ValueError):
            row_limit(Model.CYCLES)

    def test_check_rejects_corruption(self):
        bad = DistributionTable(Model.CYCLES, 3, (0, 2, 3, 2))
        with pytest.raises(ValueError):
            bad.check()
