import numpy as np
import pytest

from fgldpc.channel import ReceivedFrame
from fgldpc.codes.geometry import build_eg_type1, build_pg_type1
from fgldpc.constants import PUBLISHED_LF_WBF_VECTORS
from fgldpc.tuning import (
    Bound,
    DeConfig,
    ObjectiveBatch,
    de_optimize,
    default_bounds,
    objective_ber,
    tune,
)


def sphere(x):
    return float(np.sum(np.asarray(x) ** 2))


def test_sphere():
    config = DeConfig(bounds=[(-5, 5)] * 5, population=20, generations=100, f_weight=0.5, seed=1)
    result = de_optimize(sphere, config)
    assert result.score < 1e-3
    assert len(result.history) == 100
    scores = [score for _, score, _ in result.history]
    assert all(b <= a for a, b in zip(scores, scores[1:]))


def test_integer_dimension_finds_exact_minimiser():
    config = DeConfig(bounds=[Bound(-10, 10, integer=True)], population=8, generations=20, seed=3)
    result = de_optimize(lambda x: (x[0] - 3) ** 2, config)
    assert result.best[0] == 3
    assert result.score == 0


def test_evaluations_stay_in_bounds_and_integers_are_exact():
    seen = []

    def objective(x):
        seen.append(np.array(x))
        return float(x[0] + (x[1] - 0.3) ** 2)

    config = DeConfig(bounds=[Bound(1, 6, integer=True), Bound(0.0, 1.0)], generations=10, seed=2)
    de_optimize(objective, config)
    for x in seen:
        assert 1 <= x[0] <= 6 and x[0] == round(x[0])
        assert 0.0 <= x[1] <= 1.0


def test_same_seed_same_history():
    config = DeConfig(bounds=[(-2, 2)] * 3, generations=15, seed=9)
    assert de_optimize(sphere, config).history == de_optimize(sphere, config).history


@pytest.mark.parametrize(
    "kwargs",
    [
        {"bounds": []},
        {"bounds": [(0, 1)], "population": 3},
        {"bounds": [(0, 1)], "f_weight": 0},
        {"bounds": [(0, 1)], "f_weight": 2.5},
        {"bounds": [(0, 1)], "cr": 1.5},
        {"bounds": [(1, 1)]},
        {"bounds": [(0, 1)], "generations": 0},
    ],
)
def test_bad_config(kwargs):
    with pytest.raises(ValueError):
        DeConfig(**kwargs)


def test_default_population():
    assert DeConfig(bounds=[(0, 1)] * 5).population == 50


def test_default_bounds():
    h = build_pg_type1(4)
    bounds = default_bounds("lf-wbf", h)
    assert bounds[0] == Bound(1, 8, True)
    assert bounds[1] == Bound(1, 8, True)
    assert bounds[2] == Bound(1, 4, True)
    assert bounds[3] == Bound(0.0, 1.0)
    assert bounds[4] == Bound(1 / 273, 1.0)
    (beta5,) = default_bounds("nms", h)
    assert 0 < beta5.lo < 0.1 and beta5.hi == 10.0


def test_noiseless_batch_scores_zero():
    h = build_eg_type1(2)
    frames = [ReceivedFrame(y=np.ones(h.n_cols), sigma=0.5)] * 3
    batch = ObjectiveBatch(h, "lf-wbf", frames)
    assert objective_ber((2, 2, 2, 0.5, 0.2), batch) == 0.0


def test_batch_is_fixed_and_rounds_integer_parameters():
    h = build_eg_type1(2)
    batch = ObjectiveBatch.draw(h, "wz-wbf", 0.7, frames=30, seed=4)
    again = ObjectiveBatch.draw(h, "wz-wbf", 0.7, frames=30, seed=4)
    assert all((a.y == b.y).all() for a, b in zip(batch.frames, again.frames))
    assert batch.decoder((2.4, 1.3)).params.alpha2 == 2
    assert objective_ber((2.4, 1.3), batch) == objective_ber((2, 1.3), batch)
    with pytest.raises(ValueError):
        ObjectiveBatch(h, "gallager-b", [])


def test_tune_small_nms_search():
    h = build_eg_type1(2)
    batch = ObjectiveBatch.draw(h, "nms", 0.75, frames=40, seed=1, i_max=10)
    config = DeConfig(bounds=default_bounds("nms", h), population=6, generations=4, seed=0)
    result = tune(batch, config)
    assert 0.0 <= result.score <= 1.0
    assert result.score == pytest.approx(objective_ber(result.best, batch))


@pytest.mark.slow
def test_tuned_lf_wbf_beats_published_vector():
    h = build_pg_type1(4)
    batch = ObjectiveBatch.draw(h, "lf-wbf", 0.57, frames=2000, seed=0)
    result = tune(batch, DeConfig(bounds=default_bounds("lf-wbf", h), seed=0))
    published = PUBLISHED_LF_WBF_VECTORS["pg:4"][0.57]
    assert result.score <= objective_ber(published, batch)


@pytest.mark.slow
def test_tuned_nms_factor():
    h = build_pg_type1(4)
    batch = ObjectiveBatch.draw(h, "nms", 0.57, frames=2000, seed=0, i_max=20)
    config = DeConfig(bounds=[Bound(1.0, 6.0)], population=10, generations=20, seed=0)
    result = tune(batch, config)
    assert result.best[0] == pytest.approx(2.9, abs=0.5)
