"""Bundled synthetic data.

The Canadian weather data (daily mean temperature at 35 stations) is not
shipped; ``scripts/convert_canadian_weather.py`` turns an export of it
into a dataset CSV.  :func:`synthetic_weather` produces curves of the
same 365 x 35 shape for tests and demos.
"""
import numpy as np

from .core import FunctionalSample, Grid
from .rng import RngStream


def synthetic_weather(seed: int = 0, n_stations: int = 35, n_days: int = 365):
    """Seasonal temperature-like curves; returns ``(sample, station_ids)``."""
    gen = RngStream(seed, (7,)).generator()
    day = np.arange(1, n_days + 1, dtype=float)
    phase = 2 * np.pi * (day - 200) / n_days
    level = gen.normal(2.0, 6.0, n_stations)
    amplitude = gen.uniform(6.0, 18.0, n_stations)
    curves = level[:, None] + amplitude[:, None] * np.cos(phase)[None, :]
    # smooth day-to-day weather noise: moving average of white noise
    raw = gen.normal(0.0, 2.0, (n_stations, n_days + 14))
    kernel = np.ones(15) / 15
    wiggle = np.array([np.convolve(r, kernel, mode="valid") for r in raw])
    ids = [f"station{i + 1:02d}" for i in range(n_stations)]
    return FunctionalSample(Grid(day), curves + wiggle), ids
