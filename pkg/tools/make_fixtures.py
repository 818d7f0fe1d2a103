#!/usr/bin/env python3
"""Regenerate the committed data fixtures.

The public Kaggle tables (303-row Cleveland-style heart-disease records,
768-row Pima-style diabetes records) are not redistributable here, so the
fixtures are seeded synthetic stand-ins with the same column names, row
counts, value ranges and overall marginals as the published summary
statistics.  A latent per-row severity score ties the attributes together
(Gaussian copula), reproducing the redundancy of real clinical data:
attributes correlate with the diagnosis and with each other, so no single
column is indispensable for classification.  Regeneration is deterministic.

Usage: python3 tools/make_fixtures.py [output_dir]
"""

import sys
from pathlib import Path

import numpy as np
from scipy.special import ndtri

SEED = 20240817


def _latent(rng, n, y, delta):
    """Standardized severity score: class shift delta plus unit noise."""
    s = delta * (y - 0.5) + rng.normal(size=n)
    return (s - s.mean()) / s.std()


def _view(rng, s, loading):
    """Unit-variance Gaussian view of the severity score."""
    return loading * s + np.sqrt(1.0 - loading**2) * rng.normal(size=len(s))


def _levels(v, levels, probs):
    """Map a standard-normal view onto discrete levels with given marginals."""
    thresholds = ndtri(np.cumsum(probs)[:-1])
    return np.asarray(levels)[np.searchsorted(thresholds, v)]


def _scaled(v, mean, sd, lo, hi, decimals=0):
    out = np.clip(mean + sd * v, lo, hi)
    out = np.round(out, decimals)
    return out.astype(int) if decimals == 0 else out


def make_heart(rng) -> dict:
    n = 303
    y = (rng.random(n) < 0.459).astype(int)
    s = _latent(rng, n, y, delta=2.4)
    v = lambda load: _view(rng, s, load)
    return {
        "age": _scaled(v(0.32), 54.4, 9.0, 29, 77),
        "sex": _levels(v(0.30), [0, 1], [0.32, 0.68]),
        "cp": _levels(v(0.62), [1, 2, 3, 4], [0.076, 0.165, 0.284, 0.475]),
        "trestbps": _scaled(v(0.18), 131.6, 17.5, 94, 200),
        "chol": _scaled(v(0.20), 246.7, 51.8, 126, 564),
        "fbs": _levels(v(0.06), [0, 1], [0.852, 0.148]),
        "restecg": _levels(v(0.16), [0, 1, 2], [0.498, 0.013, 0.489]),
        "thalach": _scaled(v(-0.55), 149.6, 22.9, 71, 202),
        "exang": _levels(v(0.48), [0, 1], [0.673, 0.327]),
        "oldpeak": np.round(np.clip(1.04 + 1.16 * v(0.52), 0.0, 6.2), 1),
        "slope": _levels(v(0.44), [1, 2, 3], [0.469, 0.462, 0.069]),
        "ca": _levels(v(0.58), [0, 1, 2, 3], [0.581, 0.215, 0.126, 0.078]),
        "thal": _levels(v(0.56), [3, 6, 7], [0.551, 0.060, 0.389]),
        "target": y,
    }


def make_diabetes(rng) -> dict:
    n = 768
    y = (rng.random(n) < 0.349).astype(int)
    s = _latent(rng, n, y, delta=1.9)
    v = lambda load: _view(rng, s, load)
    return {
        "Pregnancies": _scaled(v(0.24), 3.8, 3.4, 0, 17),
        "Glucose": _scaled(v(0.58), 120.9, 30.5, 44, 199),
        "BloodPressure": _scaled(v(0.14), 69.1, 18.0, 24, 122),
        "SkinThickness": _scaled(v(0.18), 18.5, 16.0, 0, 99),
        "Insulin": _scaled(v(0.22), 30.0, 118.0, 0, 846),
        "BMI": np.round(np.clip(32.0 + 7.4 * v(0.32), 18.2, 67.1), 1),
        "DiabetesPedigreeFunction": np.round(np.clip(0.47 + 0.33 * v(0.18), 0.078, 2.42), 3),
        "Age": _scaled(v(0.30), 33.2, 11.8, 21, 81),
        "Outcome": y,
    }


def _write_csv(path: Path, cols: dict):
    def fmt(v):
        f = float(v)
        return str(int(f)) if f == int(f) else repr(f)

    names = list(cols)
    n = len(cols[names[0]])
    lines = [",".join(names)]
    for i in range(n):
        lines.append(",".join(fmt(cols[name][i]) for name in names))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({n} rows)")


def main(out_dir: str = "data"):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(SEED)
    _write_csv(out / "heart.csv", make_heart(rng))
    _write_csv(out / "diabetes.csv", make_diabetes(rng))


if __name__ == "__main__":
    main(*sys.argv[1:])
