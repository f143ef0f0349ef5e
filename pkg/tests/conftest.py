import datetime as dt

import numpy as np
import pytest

from recurplot.series import TimeSeries


@pytest.fixture
def make_series():
    def _make(values, start=dt.date(2010, 7, 1), label="test"):
        dates = [start + dt.timedelta(days=k) for k in range(len(values))]
        return TimeSeries(dates, values, label=label)

    return _make


@pytest.fixture
def rng():
    return np.random.default_rng(20100701)
