"""Regenerate the bundled synthetic fixtures in src/hboot/data/.

The h-value fixture hits each field's target count, minimum, maximum and
median exactly, the mean to two decimals, and the standard deviation as
close as an integer sample allows.  Every researcher value is synthetic.

    python scripts/make_fixtures.py
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "hboot" / "data"

# field_id: (mean, median, sd, min, max, count)
FIELD_SUMMARY = {
    "mathematics": (30.84, 26, 14.22, 14, 67, 31),
    "chemistry": (81.52, 77, 18.8, 54, 124, 31),
    "physics": (60.71, 61, 13.8, 22, 91, 31),
    "clinical_medicine": (95.87, 94, 17.6, 61, 141, 31),
    "economics_business": (31.0, 31, 11.65, 8, 61, 31),
    "social_sciences": (40.03, 37, 16.47, 19, 78, 31),
    "computer_science": (19.9, 18, 7.53, 7, 43, 31),
}


def fit_field(mean, median, sd, lo, hi, n, rng, iters=100_000):
    half = n // 2
    target_sum = round(mean * n)
    # Interior points live in [lo, median] below the median slot and in
    # [median, hi] above it, so the extremes and the median never move.
    bounds = [(lo, lo)] + [(lo, median)] * (half - 1) + [(median, median)] \
        + [(median, hi)] * (half - 1) + [(hi, hi)]
    lower = np.array([b[0] for b in bounds])
    upper = np.array([b[1] for b in bounds])
    v = rng.integers(lower, upper + 1)
    free = [i for i in range(n) if lower[i] < upper[i]]
    while v.sum() != target_sum:
        i = free[int(rng.integers(len(free)))]
        step = 1 if v.sum() < target_sum else -1
        if lower[i] <= v[i] + step <= upper[i]:
            v[i] += step
    best = abs(v.std(ddof=1) - sd)
    for _ in range(iters):
        i, j = (free[k] for k in rng.choice(len(free), 2, replace=False))
        if v[i] + 1 > upper[i] or v[j] - 1 < lower[j]:
            continue
        v[i] += 1
        v[j] -= 1
        loss = abs(v.std(ddof=1) - sd)
        if loss <= best:
            best = loss
        else:
            v[i] -= 1
            v[j] += 1
        if best < 5e-4:
            break
    return np.sort(v)


def main():
    rng = np.random.default_rng(20120501)
    OUT.mkdir(parents=True, exist_ok=True)
    rows = []
    for field, target in FIELD_SUMMARY.items():
        v = fit_field(*target, rng)
        order = rng.permutation(v.size)
        for k, i in enumerate(order):
            rows.append((field, f"{field[:4]}{k + 1:02d}", int(v[i])))
        print(f"{field:20s} mean={v.mean():.2f} median={np.median(v):g} sd={v.std(ddof=1):.2f} "
              f"min={v.min()} max={v.max()} n={v.size}")
    with open(OUT / "hcr_synthetic_h.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["field_id", "researcher_id", "h_value"])
        w.writerows(rows)

    # Citation profiles: papers per researcher ~ 20-80, citations Zipf-like
    # around a field-specific scale.
    scales = {"mathematics": 9.0, "physics": 22.0, "chemistry": 26.0}
    with open(OUT / "synthetic_profiles.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["researcher_id", "field_id", "citations"])
        for field, scale in scales.items():
            for k in range(12):
                n_papers = int(rng.integers(20, 81))
                cites = np.floor(scale * (rng.pareto(1.8, n_papers) + 0.2)).astype(int)
                w.writerow([f"{field[:4]}-p{k + 1:02d}", field, ";".join(map(str, cites))])

    with open(OUT / "synthetic_norms.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["field_id", "chi", "c0", "n0", "journal_h_max"])
        w.writerows([
            ["mathematics", 3.9, 3.9, 2.1, 190],
            ["chemistry", 13.2, 13.2, 4.4, 340],
            ["physics", 10.1, 10.1, 3.8, 330],
            ["clinical_medicine", 19.8, 19.8, 3.1, 600],
            ["economics_business", 6.3, 6.3, 1.6, 140],
            ["social_sciences", 5.4, 5.4, 1.5, 170],
            ["computer_science", 4.2, 4.2, 2.7, 180],
        ])
        w.writerow(["#reference", "physics"])

    with open(OUT / "synthetic_profile_norms.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["field_id", "chi", "c0", "n0", "journal_h_max"])
        w.writerows([
            ["mathematics", 3.9, 3.9, 2.1, 190],
            ["physics", 10.1, 10.1, 3.8, 330],
            ["chemistry", 13.2, 13.2, 4.4, 340],
        ])
        w.writerow(["#reference", "physics"])


if __name__ == "__main__":
    main()
