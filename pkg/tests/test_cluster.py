"""Representative-day clustering: exact small cases, invariants, determinism."""

import numpy as np
import pytest

from scgep.ingest import RawHourlySeries, cluster_representative_days, default_seed


def _series(entity, values, year=2030):
    return RawHourlySeries(entity=entity, year=year, values=tuple(values))


def test_constant_year_collapses_to_one_day():
    s = _series("load/Z1", [50.0] * 8760)
    res = cluster_representative_days([s], 1)
    assert res.days == ["t1"]
    assert res.weights == {"t1": 365.0}
    assert res.profiles["load/Z1"]["t1"] == tuple([50.0] * 24)
    assert res.wcss == pytest.approx(0.0, abs=1e-18)


def test_two_level_year_splits_exactly():
    # 180 low days and 185 high days, interleaved; the two levels are far
    # apart so the optimal 2-clustering is exactly the level split
    lows = [10.0] * 24
    highs = [100.0] * 24
    values, n_low = [], 0
    for d in range(365):
        if d % 2 == 0 and n_low < 180:
            values.extend(lows)
            n_low += 1
        else:
            values.extend(highs)
    res = cluster_representative_days([_series("load/Z1", values)], 2)
    assert sorted(res.weights.values()) == [180.0, 185.0]
    profiles = sorted(res.profiles["load/Z1"].values(), key=lambda p: p[0])
    assert profiles[0] == tuple(lows)
    assert profiles[1] == tuple(highs)


def test_seasonal_sine_beats_contiguous_two_split():
    hours = np.arange(8760)
    season = 60.0 + 40.0 * np.sin(2 * np.pi * hours / 8760)
    daily = 10.0 * np.sin(2 * np.pi * hours / 24)
    values = season + daily
    series = [_series("load/Z1", values.tolist())]
    res = cluster_representative_days(series, 4)
    assert sum(res.weights.values()) == 365.0
    assert all(w > 0 for w in res.weights.values())

    # independent baseline: the best split of the year into two contiguous
    # day ranges; four free clusters must do at least as well
    X = (values / np.abs(values).max()).reshape(365, 24)
    best = np.inf
    for s in range(1, 365):
        a, b = X[:s], X[s:]
        wcss = (((a - a.mean(axis=0)) ** 2).sum()
                + ((b - b.mean(axis=0)) ** 2).sum())
        best = min(best, wcss)
    assert res.wcss <= best + 1e-9


def test_weight_sum_and_monotone_objective_random():
    rng = np.random.default_rng(421)
    for _ in range(25):
        n_days = int(rng.integers(4, 40))
        hours = int(rng.integers(2, 8))
        k = int(rng.integers(1, min(n_days, 6) + 1))
        n_series = int(rng.integers(1, 4))
        series = [_series(f"load/Z{i}", rng.uniform(0, 100, n_days * hours).tolist())
                  for i in range(n_series)]
        res = cluster_representative_days(series, k, hours_per_day=hours)
        assert sum(res.weights.values()) == float(n_days)
        hist = res.wcss_history
        assert all(b <= a + 1e-9 for a, b in zip(hist, hist[1:]))
        assert len(res.assignment) == n_days
        assert set(res.assignment) <= set(range(k))
        # representative profiles are averages of member days
        for s in series:
            arr = np.asarray(s.values).reshape(n_days, hours)
            for c, label in enumerate(res.days):
                members = [d for d, a in enumerate(res.assignment) if a == c]
                if members:
                    want = arr[members].mean(axis=0)
                    got = np.asarray(res.profiles[s.entity][label])
                    assert np.allclose(got, want, atol=1e-9)


def test_same_seed_reproduces_bitwise():
    rng = np.random.default_rng(7)
    series = [_series("load/Z1", rng.uniform(0, 50, 30 * 24).tolist())]
    a = cluster_representative_days(series, 3, seed=5)
    b = cluster_representative_days(series, 3, seed=5)
    assert a.weights == b.weights
    assert a.assignment == b.assignment
    assert a.profiles == b.profiles


def test_feature_weights_can_silence_a_series():
    rng = np.random.default_rng(11)
    driver = rng.uniform(0, 100, 20 * 6).tolist()
    noise = rng.uniform(0, 100, 20 * 6).tolist()
    alone = cluster_representative_days(
        [_series("load/Z1", driver)], 2, hours_per_day=6)
    silenced = cluster_representative_days(
        [_series("load/Z1", driver), _series("availability/Z1/spv", noise)],
        2, hours_per_day=6,
        feature_weights={"availability/Z1/spv": 0.0})
    assert silenced.assignment == alone.assignment
    assert silenced.weights == alone.weights


def test_input_errors():
    good = _series("load/Z1", [1.0] * 48)
    with pytest.raises(ValueError, match="cannot pick"):
        cluster_representative_days([good], 5, hours_per_day=24)
    with pytest.raises(ValueError, match=">= 1"):
        cluster_representative_days([good], 0)
    with pytest.raises(ValueError, match="expected 48"):
        cluster_representative_days(
            [good, _series("load/Z2", [1.0] * 24)], 1)
    with pytest.raises(ValueError, match="same year"):
        cluster_representative_days(
            [good, _series("load/Z2", [1.0] * 48, year=2031)], 1)
    with pytest.raises(ValueError, match="whole number"):
        cluster_representative_days([_series("load/Z1", [1.0] * 50)], 1)
    with pytest.raises(ValueError, match="non-finite"):
        _series("load/Z1", [float("nan")] * 24)
    with pytest.raises(ValueError, match="no series"):
        cluster_representative_days([], 1)


def test_default_seed_reads_environment(monkeypatch):
    monkeypatch.delenv("SCGEP_SEED", raising=False)
    assert default_seed() == 0
    monkeypatch.setenv("SCGEP_SEED", "42")
    assert default_seed() == 42
