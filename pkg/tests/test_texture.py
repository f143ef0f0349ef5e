import datetime as dt
import json

import numpy as np
import pytest

from recurplot.autoreg import ARModel, simulate
from recurplot.errors import WindowTooLarge
from recurplot.recurrence import RecurrenceMatrix, binary_rp, distance_matrix, embed
from recurplot.series import TimeSeries
from recurplot.stats import threshold
from recurplot.texture import (
    column_density,
    detect_transitions,
    report_to_json,
    report_to_table,
    transition_scores,
)


def matrix_from_dense(dense):
    dense = np.asarray(dense, dtype=np.uint8)
    return RecurrenceMatrix(dense.shape[0], np.packbits(dense, axis=1), 1.0)


def all_ones(m):
    return matrix_from_dense(np.ones((m, m), dtype=np.uint8))


def block_diagonal(m):
    half = m // 2
    dense = np.zeros((m, m), dtype=np.uint8)
    dense[:half, :half] = 1
    dense[half:, half:] = 1
    return matrix_from_dense(dense)


def regime_change_series(seed, n_each=500, low=1.0, high=2.0,
                         rho=0.9, noise=0.05):
    """AR(1) wiggle around a level that steps halfway through."""
    wiggle = simulate(ARModel(0.0, (rho,), noise_std=noise), n=2 * n_each,
                      seed=seed, initial=[0.0])
    levels = np.concatenate([np.full(n_each, low), np.full(n_each, high)])
    return TimeSeries(wiggle.dates, wiggle.values + levels, label="regime")


class TestColumnDensity:
    def test_all_ones_saturates(self):
        profile = column_density(all_ones(8), window=3)
        assert np.all(profile.densities == 1.0)

    def test_identity_matrix_window_one(self):
        dense = np.eye(6, dtype=np.uint8)
        profile = column_density(matrix_from_dense(dense), window=1)
        assert np.all(profile.densities == 1.0 / 6.0)

    def test_block_diagonal_window_one(self):
        profile = column_density(block_diagonal(10), window=1)
        assert np.all(profile.densities == 0.5)

    def test_window_aggregates_rows(self):
        dense = np.zeros((4, 4), dtype=np.uint8)
        dense[0] = 1  # only row 0 set
        profile = column_density(matrix_from_dense(dense), window=2)
        assert profile.densities.tolist() == [1.0, 0.5, 0.0, 0.0]

    def test_window_bounds(self):
        with pytest.raises(WindowTooLarge):
            column_density(all_ones(4), window=5)
        with pytest.raises(WindowTooLarge):
            column_density(all_ones(4), window=0)


class TestTransitionScores:
    def test_all_ones_scores_zero(self):
        assert np.all(transition_scores(all_ones(20), window=4) == 0.0)

    def test_all_zeros_scores_zero(self):
        dense = np.zeros((20, 20), dtype=np.uint8)
        scores = transition_scores(matrix_from_dense(dense), window=4)
        assert np.all(scores == 0.0)

    def test_identity_matrix_scores_diagonal_leak_only(self):
        dense = np.eye(20, dtype=np.uint8)
        scores = transition_scores(matrix_from_dense(dense), window=4)
        # each flanking block holds exactly window diagonal ones, cross none
        assert np.all(scores == 2.0 / 4.0)

    def test_perfect_split_scores_two(self):
        m = 24
        scores = transition_scores(block_diagonal(m), window=6)
        split_at = m // 2 - 6  # score index of candidate j = m//2
        assert scores[split_at] == 2.0
        assert scores.max() == 2.0
        assert np.argmax(scores) == split_at

    def test_bounds(self):
        scores = transition_scores(block_diagonal(40), window=10)
        assert np.all(scores >= -2.0) and np.all(scores <= 2.0)

    def test_window_too_large(self):
        with pytest.raises(WindowTooLarge):
            transition_scores(all_ones(10), window=6)


class TestDetectTransitions:
    def test_all_ones_empty_report(self):
        report = detect_transitions(all_ones(30), window=5, score_threshold=0.0)
        assert report.transitions == ()

    def test_block_diagonal_found(self):
        report = detect_transitions(block_diagonal(40), window=8)
        assert report.transitions[0].index == 20
        assert report.transitions[0].score == 2.0

    def test_dates_attached(self):
        dates = [dt.date(2013, 1, 1) + dt.timedelta(days=k) for k in range(40)]
        report = detect_transitions(block_diagonal(40), window=8, dates=dates)
        assert report.transitions[0].date == dates[20]

    def test_min_separation_enforced(self, rng):
        dense = (rng.random((200, 200)) < 0.5).astype(np.uint8)
        dense = np.triu(dense) + np.triu(dense, 1).T
        report = detect_transitions(matrix_from_dense(dense), window=10,
                                    score_threshold=0.0, min_separation=25)
        indices = [t.index for t in report.transitions]
        for a in indices:
            for b in indices:
                assert a == b or abs(a - b) >= 25

    def test_ordering_score_descending(self, rng):
        dense = (rng.random((150, 150)) < 0.4).astype(np.uint8)
        dense = np.triu(dense) + np.triu(dense, 1).T
        report = detect_transitions(matrix_from_dense(dense), window=8,
                                    score_threshold=0.0, min_separation=1)
        scores = [t.score for t in report.transitions]
        assert scores == sorted(scores, reverse=True)

    def test_deterministic(self):
        a = detect_transitions(block_diagonal(60), window=10)
        b = detect_transitions(block_diagonal(60), window=10)
        assert a == b

    def test_synthetic_regime_change_located(self):
        # construct-then-detect: level step at index 500, far beyond the
        # cutoff, so the epochs never recur into each other
        for seed in range(3):
            s = regime_change_series(seed)
            rp = binary_rp(distance_matrix(embed(s)), threshold(s))
            report = detect_transitions(rp, window=30, dates=s.dates)
            assert report.transitions
            assert abs(report.transitions[0].index - 500) <= 30

    def test_homogeneous_noise_stays_quiet(self):
        # i.i.d. noise: no candidate crosses the default threshold
        for seed in range(20):
            noise = simulate(ARModel(0.0, (0.0,), noise_std=1.0), n=400,
                             seed=seed, initial=[0.0])
            rp = binary_rp(distance_matrix(embed(noise)), threshold(noise))
            scores = transition_scores(rp, window=50)
            assert scores.max() < 0.5

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            detect_transitions(all_ones(30), window=5, min_separation=0)
        with pytest.raises(ValueError):
            detect_transitions(all_ones(30), window=5, score_threshold=-1.0)
        with pytest.raises(ValueError):
            detect_transitions(all_ones(30), window=5, dates=[dt.date(2013, 1, 1)])


class TestReportExport:
    def test_json_shape(self):
        dates = [dt.date(2013, 4, 1) + dt.timedelta(days=k) for k in range(40)]
        report = detect_transitions(block_diagonal(40), window=8, dates=dates)
        payload = json.loads(report_to_json(report))
        assert payload["params"] == {"window": 8, "score_threshold": 0.5,
                                     "min_separation": 8}
        assert payload["transitions"][0]["index"] == 20
        assert payload["transitions"][0]["date"] == "2013-04-21"
        assert payload["transitions"][0]["score"] == 2.0

    def test_table_lists_transitions(self):
        report = detect_transitions(block_diagonal(40), window=8)
        table = report_to_table(report)
        assert "20" in table and "2.0000" in table

    def test_table_empty(self):
        report = detect_transitions(all_ones(30), window=5)
        assert "(none)" in report_to_table(report)
