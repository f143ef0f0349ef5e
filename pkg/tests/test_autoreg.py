import math

import numpy as np
import pytest

from recurplot.autoreg import (
    ARModel,
    ForecastResult,
    fit_ar,
    forecast,
    forecast_with_trend,
    impulse_response,
    simulate,
)
from recurplot.errors import (
    DegenerateSeries,
    InsufficientData,
    InsufficientHistory,
)


class TestARModel:
    def test_validation(self):
        with pytest.raises(ValueError):
            ARModel(c=0.0, rho=())
        with pytest.raises(ValueError):
            ARModel(c=float("nan"), rho=(0.5,))
        with pytest.raises(ValueError):
            ARModel(c=0.0, rho=(0.5,), noise_std=-1.0)

    def test_stationarity(self):
        assert ARModel(0.0, (0.5,)).is_stationary
        assert not ARModel(0.0, (1.1,)).is_stationary
        assert ARModel(0.0, (0.5, 0.25)).is_stationary
        assert not ARModel(0.0, (0.9, 0.2)).is_stationary

    def test_json_round_trip(self):
        model = ARModel(c=1.5, rho=(0.7, -0.2), noise_std=0.05)
        again = ARModel.from_json(model.to_json())
        assert again == model

    def test_json_order_mismatch_rejected(self):
        with pytest.raises(ValueError):
            ARModel.from_json('{"c": 0, "rho": [0.5], "p": 2, "noise_std": 0}')


class TestFitAr:
    def test_noiseless_ar1_recovery(self):
        # oracle is the generator: X_i = 1 + 0.7 X_{i-1}, X_0 = 0
        data = simulate(ARModel(c=1.0, rho=(0.7,)), n=50, seed=0, initial=[0.0])
        model = fit_ar(data, p=1)
        assert model.c == pytest.approx(1.0, abs=1e-8)
        assert model.rho[0] == pytest.approx(0.7, abs=1e-8)
        assert model.noise_std < 1e-10

    def test_noiseless_ar2_recovery(self):
        data = simulate(ARModel(c=0.0, rho=(0.5, 0.25)), n=100, seed=0,
                        initial=[1.0, 0.5])
        model = fit_ar(data, p=2)
        assert model.c == pytest.approx(0.0, abs=1e-8)
        assert model.rho == pytest.approx((0.5, 0.25), abs=1e-8)

    def test_constant_series_degenerate(self, make_series):
        with pytest.raises(DegenerateSeries):
            fit_ar(make_series([5.0] * 20), p=1)

    def test_insufficient_data(self, make_series):
        with pytest.raises(InsufficientData):
            fit_ar(make_series([1.0, 2.0]), p=1)

    def test_noisy_recovery_within_tolerance(self):
        # stationary models recovered within 0.05 at n=10000, noise 0.01
        for seed, (c, rho) in enumerate([(0.0, (0.5,)), (1.0, (0.7,)),
                                         (0.0, (0.5, 0.25))]):
            truth = ARModel(c=c, rho=rho, noise_std=0.01)
            data = simulate(truth, n=10000, seed=seed,
                            initial=[0.0] * truth.p)
            model = fit_ar(data, p=truth.p)
            assert model.c == pytest.approx(c, abs=0.05)
            for got, want in zip(model.rho, rho):
                assert got == pytest.approx(want, abs=0.05)
            assert model.noise_std == pytest.approx(0.01, rel=0.1)


class TestForecast:
    def test_decay_recursion(self):
        out = forecast(ARModel(0.0, (0.5,)), history=[1.0], horizon=3)
        assert out.predictions == (0.5, 0.25, 0.125)
        assert out.is_iterated

    def test_recursion_with_intercept(self):
        # hand recursion: 1, 1 + 0.5 = 1.5, 1 + 0.75 = 1.75
        out = forecast(ARModel(1.0, (0.5,)), history=[0.0], horizon=3)
        assert out.predictions == (1.0, 1.5, 1.75)

    def test_order_two_single_step(self):
        out = forecast(ARModel(0.0, (0.5, 0.25)), history=[1.0, 2.0], horizon=1)
        assert out.predictions == (1.25,)
        assert not out.is_iterated

    def test_insufficient_history(self):
        with pytest.raises(InsufficientHistory):
            forecast(ARModel(0.0, (0.5, 0.25)), history=[1.0], horizon=1)

    def test_chaining_identity(self, rng):
        # one horizon-k call equals k chained single-step calls, exactly
        model = ARModel(c=0.3, rho=(0.6, -0.2, 0.1), noise_std=1.0)
        history = list(rng.normal(size=10))
        whole = forecast(model, history, horizon=7).predictions
        rolling = list(history)
        for k in range(7):
            step = forecast(model, rolling, horizon=1).predictions[0]
            assert step == whole[k]
            rolling.append(step)

    def test_superposition_exact_on_dyadic_values(self):
        # affine in the history: bumping the last value by delta moves the
        # first prediction by rho_1 * delta (values chosen exact in binary)
        model = ARModel(c=0.0, rho=(0.5, 0.25))
        base = forecast(model, [0.0, 0.0], horizon=1).predictions[0]
        bumped = forecast(model, [0.0, 2.0], horizon=1).predictions[0]
        assert bumped - base == 0.5 * 2.0

    def test_superposition_random(self, rng):
        model = ARModel(c=0.1, rho=(0.7,))
        history = list(rng.normal(size=5))
        delta = 0.37
        base = forecast(model, history, horizon=1).predictions[0]
        bumped_history = history[:-1] + [history[-1] + delta]
        bumped = forecast(model, bumped_history, horizon=1).predictions[0]
        assert bumped - base == pytest.approx(0.7 * delta, rel=1e-9)


class TestImpulseResponse:
    def test_order_one_powers(self):
        model = ARModel(0.0, (0.5,))
        assert [impulse_response(model, k) for k in (0, 1, 2)] == [1.0, 0.5, 0.25]

    def test_lag_zero_is_one(self):
        assert impulse_response(ARModel(3.0, (0.9, -0.5)), 0) == 1.0

    def test_order_two_hand_recursion(self):
        # psi_2 = 0.5 * 0.5 + 0.25 * 1
        assert impulse_response(ARModel(0.0, (0.5, 0.25)), 2) == 0.5

    def test_stationary_decay(self):
        for rho in (0.5, -0.8, 0.95):
            model = ARModel(0.0, (rho,))
            k = int(math.log(1e-6) / math.log(abs(rho))) + 1
            assert abs(impulse_response(model, k)) < 1e-6
            # decay is monotone in magnitude
            mags = [abs(impulse_response(model, j)) for j in range(20)]
            assert all(a >= b for a, b in zip(mags, mags[1:]))


class TestSimulate:
    def test_noiseless_recursion(self):
        out = simulate(ARModel(0.0, (0.5,)), n=4, seed=1, initial=[1.0])
        assert list(out.values) == [1.0, 0.5, 0.25, 0.125]

    def test_deterministic_per_seed(self):
        model = ARModel(0.1, (0.6,), noise_std=0.3)
        a = simulate(model, n=200, seed=42, initial=[0.0])
        b = simulate(model, n=200, seed=42, initial=[0.0])
        assert a == b
        c = simulate(model, n=200, seed=43, initial=[0.0])
        assert not np.array_equal(a.values, c.values)

    def test_white_noise_scale(self):
        out = simulate(ARModel(0.0, (0.0,), noise_std=1.0), n=10000, seed=7,
                       initial=[0.0])
        assert np.std(out.values) == pytest.approx(1.0, rel=0.05)

    def test_consecutive_dates(self):
        out = simulate(ARModel(0.0, (0.5,)), n=5, seed=1, initial=[1.0])
        assert all((b - a).days == 1 for a, b in zip(out.dates, out.dates[1:]))

    def test_initial_length_checked(self):
        with pytest.raises(ValueError):
            simulate(ARModel(0.0, (0.5, 0.2)), n=10, seed=1, initial=[1.0])


class TestForecastWithTrend:
    def test_exactly_linear_series_degenerates(self, make_series):
        # zero residuals leave the autoregression without variance
        with pytest.raises(DegenerateSeries):
            forecast_with_trend(make_series([1.0, 2.0, 3.0, 4.0, 5.0]),
                                degree=1, p=1, horizon=2)

    def test_composition_matches_independent_pipeline(self, make_series):
        # independent oracle: numpy.polyfit for the trend, explicit lstsq for
        # the residual autoregression, manual recursion for the forecast
        n, horizon = 200, 5
        decay = 0.5 ** np.arange(n)
        values = 2.0 + 1.0 * np.arange(n) + decay
        s = make_series(values)
        got = forecast_with_trend(s, degree=1, p=1, horizon=horizon).predictions

        slope, intercept = np.polyfit(np.arange(n), values, 1)
        resid = values - (intercept + slope * np.arange(n))
        design = np.column_stack([np.ones(n - 1), resid[:-1]])
        c_hat, rho_hat = np.linalg.lstsq(design, resid[1:], rcond=None)[0]
        level = resid[-1]
        expected = []
        for k in range(horizon):
            level = c_hat + rho_hat * level
            expected.append(intercept + slope * (n + k) + level)
        assert got == pytest.approx(expected, abs=1e-6)
        # the construction's decay rate survives the trend fit approximately
        assert rho_hat == pytest.approx(0.5, abs=0.2)

    def test_flat_trend_matches_plain_forecast(self, make_series):
        # pure zero-mean autoregression: the fitted trend is negligible and
        # the combined forecast agrees with the plain one
        truth = ARModel(c=0.0, rho=(0.5,), noise_std=0.05)
        data = simulate(truth, n=4000, seed=3, initial=[0.0])
        combined = forecast_with_trend(data, degree=1, p=1, horizon=3).predictions
        plain = forecast(fit_ar(data, p=1), data.values, horizon=3).predictions
        assert combined == pytest.approx(plain, abs=0.02)
