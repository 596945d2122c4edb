#!/usr/bin/env python3
"""Regenerates the bundled snapshot dataset under tests/fixtures/.

Writes a daily spending CSV and a weekly merchants CSV whose merged
statistics are pinned: per-column count/mean/std/min/quartiles/max, and the
complete-case regression of spend_all on merchants_all
(coefficients and classical standard errors). The pinned values live in
expected_stats.json next to the CSVs; the test suites assert against them.

The construction is exact by design: quartile anchors are placed at exact
order-statistic positions, moments are enforced by a two-parameter
(shift/scale) Newton iteration under per-segment box bounds, and the
regression is built from residuals projected orthogonal to [1, x] and
rescaled to a chosen residual sum of squares.

Deterministic (fixed seed). Needs numpy; this is a maintainer tool, not a
build or test dependency.
"""

import json
import os
from datetime import date, timedelta

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.normpath(os.path.join(HERE, "..", "tests", "fixtures"))

# ---------------------------------------------------------------- targets

N_DAILY = 1253
N_WEEKLY = 109

MERCH = dict(mean=-0.056, std=0.067, minv=-0.302, p25=-0.066, p50=-0.049,
             p75=-0.021, maxv=0.086)
# Mean chosen so that mean-filling the regressor moves the intercept to the
# pinned mean-imputed value while staying within 0.280 +/- 0.001.
SPEND = dict(mean=0.2801240, std=0.267, minv=-0.643, p25=0.124, p50=0.243,
             p75=0.455, maxv=1.200)
OLS = dict(const=0.0582, slope=1.6710, se_slope=0.198)

EPS = 2e-3   # keep free values this far from segment anchors


def moment_fit(v, lo, hi, target_sum, target_sumsq):
    """Shift/scale v inside [lo, hi] until sum and sum of squares match."""
    v = np.clip(v, lo, hi)
    for _ in range(400):
        s = v.sum()
        q = (v * v).sum()
        e1 = target_sum - s
        e2 = target_sumsq - q
        if abs(e1) < 1e-11 and abs(e2) < 1e-10:
            return v
        m = s / len(v)
        d = v - m
        # Jacobian of (sum, sumsq) wrt (shift a, deviation scale g):
        #   sum:   n*a                (scale keeps the mean)
        #   sumsq: 2*s*a + n*a^2 + (g^2-1)*sum(d^2) + ...
        # solve linearized system
        n = len(v)
        sd2 = (d * d).sum()
        a = e1 / n
        g2 = (e2 - 2.0 * s * a - n * a * a) / sd2 if sd2 > 0 else 0.0
        g = np.sqrt(max(0.25, 1.0 + 0.9 * g2))
        v = np.clip(m + a + g * d, lo, hi)
    raise RuntimeError(f"moment_fit stalled: e1={e1:.3g} e2={e2:.3g}")


def build_merchants(rng):
    t = MERCH
    anchors_pos = [0, 27, 54, 81, 108]
    anchors_val = [t["minv"], t["p25"], t["p50"], t["p75"], t["maxv"]]
    # 26 free values strictly inside each consecutive anchor interval
    segs = []
    for k in range(4):
        lo, hi = anchors_val[k] + EPS, anchors_val[k + 1] - EPS
        segs.append((lo, hi))
    # plausible start: recovery-shaped, most weeks in the shallow segments
    init = []
    shapes = [(1.2, 2.5), (1.0, 1.0), (1.0, 1.0), (2.5, 1.5)]
    for (lo, hi), (a, b) in zip(segs, shapes):
        init.append(lo + (hi - lo) * np.sort(rng.beta(a, b, 26)))
    free = np.concatenate(init)

    target_sum = N_WEEKLY * t["mean"] - sum(anchors_val)
    total_sumsq = (N_WEEKLY - 1) * t["std"] ** 2 + N_WEEKLY * t["mean"] ** 2
    target_sumsq = total_sumsq - sum(av * av for av in anchors_val)

    lo = np.concatenate([np.full(26, s[0]) for s in segs])
    hi = np.concatenate([np.full(26, s[1]) for s in segs])
    free = moment_fit(free, lo, hi, target_sum, target_sumsq)

    x = np.empty(N_WEEKLY)
    x[anchors_pos] = anchors_val
    pos = [p for p in range(N_WEEKLY) if p not in anchors_pos]
    x[pos] = np.sort(free)
    x.sort()
    assert np.allclose(x[anchors_pos], anchors_val, atol=1e-12)
    return x


def build_spend109(x, rng):
    """Responses over the weekly-observed rows with an exact OLS solution."""
    a, b = OLS["const"], OLS["slope"]
    sxx = ((x - x.mean()) ** 2).sum()
    s2 = OLS["se_slope"] ** 2 * sxx
    rss = (N_WEEKLY - 2) * s2
    for attempt in range(1000):
        e = rng.normal(0.0, 0.95 * np.sqrt(rss / N_WEEKLY), N_WEEKLY)
        e = np.clip(e, -0.33, 0.33)
        X = np.column_stack([np.ones(N_WEEKLY), x])
        beta, *_ = np.linalg.lstsq(X, e, rcond=None)
        e = e - X @ beta
        e *= np.sqrt(rss / (e * e).sum())
        y = a + b * x + e
        if y.min() > SPEND["minv"] + 0.05 and y.max() < SPEND["maxv"] - 0.05:
            return y
    raise RuntimeError("could not place regression responses in range")


def build_spend_free(y109, rng):
    """The 1144 spend values on rows without a weekly observation."""
    t = SPEND
    anchors_val = [t["minv"], t["p25"], t["p50"], t["p75"], t["maxv"]]
    # counts of values strictly below each interior anchor, over the union
    below = [313, 626, 939]
    m = [int((y109 < av).sum()) for av in (t["p25"], t["p50"], t["p75"])]
    cnt_a = below[0] - m[0] - 1            # minus the pinned minimum
    cnt_b = below[1] - m[1] - 2 - cnt_a    # minus min and p25 anchors
    cnt_c = below[2] - m[2] - 3 - cnt_a - cnt_b
    cnt_d = (N_DAILY - N_WEEKLY - 5) - cnt_a - cnt_b - cnt_c
    counts = [cnt_a, cnt_b, cnt_c, cnt_d]
    assert all(c > 0 for c in counts), counts

    segs = [(t["minv"] + EPS, t["p25"] - EPS),
            (t["p25"] + EPS, t["p50"] - EPS),
            (t["p50"] + EPS, t["p75"] - EPS),
            (t["p75"] + EPS, t["maxv"] - EPS)]
    init, shapes = [], [(2.2, 1.3), (1.1, 1.1), (1.1, 1.1), (1.4, 2.6)]
    for (lov, hiv), (sa, sb), c in zip(segs, shapes, counts):
        init.append(lov + (hiv - lov) * rng.beta(sa, sb, c))
    free = np.concatenate(init)

    total_sum = N_DAILY * t["mean"]
    total_sumsq = (N_DAILY - 1) * t["std"] ** 2 + N_DAILY * t["mean"] ** 2
    target_sum = total_sum - y109.sum() - sum(anchors_val)
    target_sumsq = (total_sumsq - (y109 * y109).sum()
                    - sum(av * av for av in anchors_val))

    lo = np.concatenate([np.full(c, s[0]) for s, c in zip(segs, counts)])
    hi = np.concatenate([np.full(c, s[1]) for s, c in zip(segs, counts)])
    free = moment_fit(free, lo, hi, target_sum, target_sumsq)
    return np.concatenate([free, anchors_val])


def spend_trend(n):
    """Shape used only to order values along the calendar."""
    d = np.arange(n, dtype=float)
    base = np.interp(d, [0, 55, 75, 120, 330, 700, 1100, n - 1],
                     [0.05, 0.03, -0.45, -0.15, 0.22, 0.38, 0.55, 0.66])
    yearend = 0.45 * np.exp(-0.5 * ((d % 365.25 - 345) / 9.0) ** 2)
    return base + yearend


def merch_trend(n):
    d = np.arange(n, dtype=float)
    return np.interp(d, [0, 6, 11, 30, 60, 90, n - 1],
                     [-0.02, -0.05, -0.29, -0.12, -0.07, -0.05, 0.02])


def assign_by_rank(values, trend, rng):
    """Sorted values placed where a noisy trend ranks them."""
    noisy = trend + rng.normal(0, 0.02, len(trend))
    order = np.argsort(np.argsort(noisy, kind="stable"), kind="stable")
    return np.sort(values)[order]


def main():
    rng = np.random.default_rng(20240117)
    os.makedirs(OUT, exist_ok=True)

    x = build_merchants(rng)                 # sorted merchants values
    y109 = build_spend109(x, rng)            # paired responses
    free = build_spend_free(y109, rng)

    start = date(2020, 1, 15)
    daily_dates = [start + timedelta(days=i) for i in range(N_DAILY)]
    week0 = date(2020, 1, 22)
    weekly_dates = [week0 + timedelta(days=7 * i) for i in range(N_WEEKLY)]
    weekly_idx = [(d - start).days for d in weekly_dates]
    free_idx = sorted(set(range(N_DAILY)) - set(weekly_idx))

    # temporal placement (cosmetic; every pinned statistic is placement-free)
    pair_order = np.argsort(np.argsort(
        merch_trend(N_WEEKLY) + rng.normal(0, 0.012, N_WEEKLY), kind="stable"),
        kind="stable")
    merch_series = x[pair_order]
    spend_weekly = y109[pair_order]
    trend_free = spend_trend(N_DAILY)[free_idx]
    spend_free = assign_by_rank(free, trend_free, rng)

    spend = np.empty(N_DAILY)
    spend[weekly_idx] = spend_weekly
    spend[free_idx] = spend_free

    # income-quartile companions: correlated with the headline series
    weights = [0.80, 0.92, 1.06, 1.22]
    offsets = [-0.035, -0.01, 0.012, 0.04]
    qs = []
    for w, o in zip(weights, offsets):
        noise = np.convolve(rng.normal(0, 0.018, N_DAILY + 6),
                            np.ones(7) / 7.0, mode="valid")
        qs.append(w * spend + o + noise)

    def fmt(v):
        return f"{v:.6f}"

    aff = os.path.join(OUT, "affinity_national_daily.csv")
    with open(aff, "w") as f:
        f.write("year,month,day,spend_all,spend_q1,spend_q2,spend_q3,spend_q4\n")
        for i, d in enumerate(daily_dates):
            cells = [fmt(spend[i])] + [fmt(q[i]) for q in qs]
            f.write(f"{d.year},{d.month},{d.day}," + ",".join(cells) + "\n")

    wom = os.path.join(OUT, "womply_national_weekly.csv")
    with open(wom, "w") as f:
        f.write("year,month,day,merchants_all\n")
        for i, d in enumerate(weekly_dates):
            f.write(f"{d.year},{d.month},{d.day},{fmt(merch_series[i])}\n")

    # ------------------------------------------------------------- verify
    def stats(v):
        v = np.sort(np.asarray(v))
        n = len(v)

        def q(p):
            h = (n - 1) * p
            lo = int(np.floor(h))
            if lo + 1 >= n:
                return v[-1]
            return v[lo] + (h - lo) * (v[lo + 1] - v[lo])

        return dict(count=n, mean=float(v.mean()),
                    std=float(v.std(ddof=1)), min=float(v[0]),
                    p25=float(q(0.25)), p50=float(q(0.50)),
                    p75=float(q(0.75)), max=float(v[-1]))

    sa = np.array([float(r.split(",")[3]) for r in open(aff).read().splitlines()[1:]])
    ma = np.array([float(r.split(",")[3]) for r in open(wom).read().splitlines()[1:]])
    s_stats, m_stats = stats(sa), stats(ma)

    spend_at_weeks = sa[weekly_idx]
    X = np.column_stack([np.ones(N_WEEKLY), ma])
    beta, *_ = np.linalg.lstsq(X, spend_at_weeks, rcond=None)
    resid = spend_at_weeks - X @ beta
    df = N_WEEKLY - 2
    s2 = (resid @ resid) / df
    cov = s2 * np.linalg.inv(X.T @ X)
    se = np.sqrt(np.diag(cov))

    # mean-imputed regression (slope must match the complete-case slope)
    filled = np.where(np.isin(np.arange(N_DAILY), weekly_idx),
                      0.0, ma.mean())
    filled[weekly_idx] = ma
    Xa = np.column_stack([np.ones(N_DAILY), filled])
    beta_mi, *_ = np.linalg.lstsq(Xa, sa, rcond=None)
    resid_mi = sa - Xa @ beta_mi
    s2_mi = (resid_mi @ resid_mi) / (N_DAILY - 2)
    se_mi = np.sqrt(np.diag(s2_mi * np.linalg.inv(Xa.T @ Xa)))

    report = {
        "files": {"daily": os.path.basename(aff), "weekly": os.path.basename(wom)},
        "daily_rows": N_DAILY, "weekly_rows": N_WEEKLY,
        "spend_all": s_stats, "merchants_all": m_stats,
        "complete_case_ols": {
            "const": float(beta[0]), "slope": float(beta[1]),
            "se_const": float(se[0]), "se_slope": float(se[1]),
            "n": N_WEEKLY, "df": df,
        },
        "mean_imputed_ols": {
            "const": float(beta_mi[0]), "slope": float(beta_mi[1]),
            "se_const": float(se_mi[0]), "se_slope": float(se_mi[1]),
        },
    }
    with open(os.path.join(OUT, "expected_stats.json"), "w") as f:
        json.dump(report, f, indent=2)

    for k, tgt in [("mean", MERCH["mean"]), ("std", MERCH["std"]),
                   ("min", MERCH["minv"]), ("p25", MERCH["p25"]),
                   ("p50", MERCH["p50"]), ("p75", MERCH["p75"]),
                   ("max", MERCH["maxv"])]:
        assert abs(m_stats[k] - tgt) < 2e-4, (k, m_stats[k], tgt)
    for k, tgt in [("mean", 0.280), ("std", SPEND["std"]),
                   ("min", SPEND["minv"]), ("p25", SPEND["p25"]),
                   ("p50", SPEND["p50"]), ("p75", SPEND["p75"]),
                   ("max", SPEND["maxv"])]:
        assert abs(s_stats[k] - tgt) < 5e-4, (k, s_stats[k], tgt)
    assert abs(beta[0] - OLS["const"]) < 1e-4
    assert abs(beta[1] - OLS["slope"]) < 1e-4
    assert abs(se[1] - OLS["se_slope"]) < 1e-4
    assert abs(se[0] - 0.017) < 4e-4
    assert abs(beta_mi[1] - beta[1]) < 1e-9

    print(json.dumps(report, indent=2))
    print("fixtures written to", OUT)


if __name__ == "__main__":
    main()
