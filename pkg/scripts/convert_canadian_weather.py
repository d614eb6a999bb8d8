"""Convert the Canadian daily temperature data to an fdboot dataset CSV.

The data are distributed with the R package ``fda`` as
``CanadianWeather$dailyAv``, a 365 x 35 x 3 array (day x station x
variable).  Export the temperature slice from R with::

    library(fda)
    write.csv(CanadianWeather$dailyAv[, , "Temperature.C"], "daily_temp.csv")

which gives a header ``"",St. Johns,Halifax,...`` followed by one row per
day whose first field is a day label such as ``jan01``.  This script
replaces the day labels with day numbers 1..365 (the grid), keeps the
station names as curve ids and writes the result::

    python scripts/convert_canadian_weather.py daily_temp.csv weather.csv
    fdboot ci -i weather.csv --statistic mean --B1 399 --B2 399 -o weather_mean.csv

Daily values are used directly as grid values; no smoothing is applied.
"""
import argparse
import csv

import numpy as np

from fdboot.core import FunctionalSample, Grid
from fdboot.dataio import write_dataset


def convert(src, dst):
    with open(src, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    stations = [s.strip() for s in rows[0][1:]]
    values = np.array([[float(v) for v in r[1:]] for r in rows[1:] if r], dtype=float)
    grid = Grid(np.arange(1, values.shape[0] + 1, dtype=float))
    write_dataset(dst, FunctionalSample(grid, values.T), stations)
    return values.shape


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("source", help="CSV exported from R (days in rows, stations in columns)")
    p.add_argument("dest", help="output dataset CSV")
    args = p.parse_args()
    days, stations = convert(args.source, args.dest)
    print(f"wrote {args.dest}: {days} grid points x {stations} curves")


if __name__ == "__main__":
    main()
