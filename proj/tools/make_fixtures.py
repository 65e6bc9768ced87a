#!/usr/bin/env python3
"""Regenerates data/fixtures/ deterministically.

The fixtures are synthetic daily confirmed-case counts shaped after the
2020 Indian epidemic waves (national total plus six states). They are not
observed data. Run from the repository root:

    python3 tools/make_fixtures.py
"""

import datetime as dt
import pathlib

import numpy as np

START = dt.date(2020, 3, 14)
END = dt.date(2021, 1, 10)
OUT = pathlib.Path("data/fixtures")

# (column, [(peak day offset, peak height, rise width, fall width), ...])
LOCATIONS = [
    ("Maharashtra", [(185, 20000, 88, 45), (300, 3200, 40, 60)]),
    ("Andhra Pradesh", [(150, 10000, 67, 40)]),
    ("Tamil Nadu", [(135, 6500, 64, 90)]),
    ("Karnataka", [(195, 9000, 86, 35)]),
    ("Chhattisgarh", [(205, 3000, 90, 60)]),
    ("Kerala", [(215, 8500, 101, 60), (300, 5200, 30, 40)]),
]
REST = [(185, 45000, 90, 70)]


def curve(days, waves):
    t = np.arange(days, dtype=float)
    total = np.zeros(days)
    for peak, height, rise, fall in waves:
        width = np.where(t < peak, rise, fall)
        total += height * np.exp(-0.5 * ((t - peak) / (width / 2.0)) ** 2)
        # slow plateau after the wave, smoothly switched on around the peak
        switch = 1.0 / (1.0 + np.exp(-(t - peak) / (fall / 4.0)))
        total += 0.06 * height * switch * np.exp(-np.clip(t - peak, 0, None) / 120.0)
    return total


def draw(rng, mean):
    weekday = 1.0 + 0.06 * np.sin(2 * np.pi * np.arange(mean.size) / 7.0)
    rate = mean * weekday * np.exp(rng.normal(0.0, 0.07, mean.size))
    return rng.poisson(rate).astype(np.int64)


def main():
    rng = np.random.default_rng(20200314)
    days = (END - START).days + 1
    dates = [START + dt.timedelta(days=i) for i in range(days)]

    states = {name: draw(rng, curve(days, waves)) for name, waves in LOCATIONS}
    rest = draw(rng, curve(days, REST))
    india = rest + sum(states.values())

    OUT.mkdir(parents=True, exist_ok=True)
    columns = ["India"] + [name for name, _ in LOCATIONS]
    series = {"India": india, **states}
    with open(OUT / "india_panel.csv", "w", newline="\n") as f:
        f.write("date," + ",".join(columns) + "\n")
        for i, d in enumerate(dates):
            f.write(d.isoformat() + "," + ",".join(str(series[c][i]) for c in columns) + "\n")
    for name in columns:
        slug = name.lower().replace(" ", "_")
        with open(OUT / f"{slug}.csv", "w", newline="\n") as f:
            f.write("date,value\n")
            for i, d in enumerate(dates):
                f.write(f"{d.isoformat()},{series[name][i]}\n")

    with open(OUT / "linear.csv", "w", newline="\n") as f:
        f.write("date,value\n")
        for i in range(60):
            f.write(f"{(START + dt.timedelta(days=i)).isoformat()},{100 + 25 * i}\n")


if __name__ == "__main__":
    main()
