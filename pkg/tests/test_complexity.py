import pytest

from fgldpc.channel import all_zero_frame, frame_rng
from fgldpc.codes.geometry import build_eg_type1
from fgldpc.complexity import (
    Averages,
    CodeDims,
    ComplexityLedger,
    asymptotic_ratio,
    complexity_ratio,
    concatenate,
    estimate_additions,
    exact_ratio,
    merge,
    ms_iteration_additions,
    nms_benchmark,
    preprocess_additions,
)
from fgldpc.decoders import get_decoder

EG5 = CodeDims(n=1023, m=1023, d_v=32, d_c=32, beta4=0.04)


@pytest.mark.parametrize(
    "scheme,averages,expected",
    [
        ("lz-wbf", Averages(a_ni=4.70, a_nc=8.11), 0.94e5),
        ("nt-wbf", Averages(a_ni=9.61, a_nb=9.73, a_nc=7.72), 1.94e5),
        ("wz-wbf", Averages(a_ni=4.48, a_ns=348.01, a_nc=10.41), 1.49e5),
        ("lf-wbf", Averages(a_ni=4.74, a_ns=373.63, a_nc=10.10), 1.95e5),
        ("sz-wbf", Averages(a_ni=49.08), 1.95e5),
        ("lp-wbf", Averages(a_ni=68.66), 2.34e5),
        ("nab", Averages(a_ni=5.53), 3.79e5),
        ("nms", Averages(a_ni=3.77), 4.93e5),
    ],
)
def test_published_totals_for_the_1023_code(scheme, averages, expected):
    assert estimate_additions(scheme, EG5, averages) == pytest.approx(expected, rel=5e-3)


@pytest.mark.parametrize(
    "bf,averages,ms_a_ni,expected",
    [
        ("lf-wbf", Averages(a_ni=4.74, a_ns=373.63, a_nc=10.10), 0.88, 3.10e5),
        ("lz-wbf", Averages(a_ni=4.70, a_nc=8.11), 1.88, 3.40e5),
    ],
)
def test_published_hybrid_totals(bf, averages, ms_a_ni, expected):
    total = estimate_additions(bf, EG5, averages) + estimate_additions(
        "nms", EG5, Averages(a_ni=ms_a_ni)
    )
    assert total == pytest.approx(expected, rel=5e-3)


def test_offset_and_normalized_cost_the_same_per_iteration():
    assert ms_iteration_additions("oms", EG5) == ms_iteration_additions("nms", EG5)
    assert ms_iteration_additions("nab", EG5) < ms_iteration_additions("nms", EG5)
    with pytest.raises(ValueError):
        ms_iteration_additions("bp", EG5)


def test_estimates_need_their_averages():
    with pytest.raises(ValueError):
        estimate_additions("lz-wbf", EG5, Averages(a_ni=4.7))
    with pytest.raises(ValueError):
        estimate_additions("wz-wbf", EG5, Averages(a_ni=4.7, a_nc=10.0))
    with pytest.raises(ValueError):
        preprocess_additions("lf-wbf", CodeDims(1023, 1023, 32, 32))
    with pytest.raises(ValueError):
        estimate_additions("gallager-a", EG5, Averages(a_ni=1.0))


def test_exact_ratios():
    assert exact_ratio("lz-wbf+nms", EG5, Averages(a_ni=2, a_nc=1)) == pytest.approx(0.197, abs=5e-4)
    lf = Averages(a_ni=1.5, a_ns=1023 / 3, a_nc=1)
    assert exact_ratio("lf-wbf+nms", EG5, lf) == pytest.approx(0.48, abs=5e-3)
    with pytest.raises(ValueError):
        exact_ratio("lz-wbf+oms", EG5, Averages(a_ni=2, a_nc=1))


def test_asymptotic_ratios():
    assert asymptotic_ratio("lz-wbf+nms", 2) == pytest.approx(0.2)
    assert asymptotic_ratio("lf-wbf+nms", 1.5) == pytest.approx(10.5 / 22.5)
    with pytest.raises(ValueError):
        asymptotic_ratio("lz-wbf+nms", 0)
    with pytest.raises(ValueError):
        asymptotic_ratio("wz-wbf+nms", 2)


@pytest.mark.parametrize(
    "scheme,averages",
    [
        ("lz-wbf+nms", lambda n: Averages(a_ni=2, a_nc=1)),
        ("lf-wbf+nms", lambda n: Averages(a_ni=1.5, a_ns=n / 3, a_nc=1)),
    ],
)
def test_exact_ratio_approaches_its_limit(scheme, averages):
    gaps = []
    for s, d in ((5, 32), (6, 64), (7, 128)):
        n = (1 << (2 * s)) - 1
        dims = CodeDims(n=n, m=n, d_v=d, d_c=d, beta4=0.04)
        a = averages(n)
        gaps.append(abs(exact_ratio(scheme, dims, a) - asymptotic_ratio(scheme, a.a_ni)))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[0] < 0.02


def test_benchmark_and_ratio():
    assert nms_benchmark(EG5, 0) == 0
    assert nms_benchmark(EG5, 1) == ms_iteration_additions("nms", EG5) + 1023 * 32
    ledger = ComplexityLedger(frames=4, real_additions=300.0, real_divisions=100)
    assert complexity_ratio(ledger, 200.0) == pytest.approx(0.5)
    assert complexity_ratio(50.0, 200.0) == 0.25
    with pytest.raises(ValueError):
        complexity_ratio(50.0, 0.0)


def test_ledger_averages():
    ledger = ComplexityLedger(
        scheme="lf-wbf",
        code="eg:5",
        n_cols=10,
        frames=2,
        iters=6,
        refresh_iters=4,
        unsat_checks=30,
        nt_flips=12,
        refreshed_terms=80,
    )
    averages = ledger.averages()
    assert averages.a_ni == 3
    assert averages.a_ns == 5
    assert averages.a_nb == 2
    assert averages.a_nc == 2
    with pytest.raises(ValueError):
        ComplexityLedger().averages()
    with pytest.raises(ValueError):
        ComplexityLedger(frames=-1)


def test_merge_and_concatenate():
    a = ComplexityLedger(scheme="nms", code="pg:4", n_cols=273, frames=1, iters=3, real_additions=10.0)
    b = ComplexityLedger(scheme="nms", code="pg:4", n_cols=273, frames=2, iters=1, real_additions=5.0)
    total = a + b
    assert (total.frames, total.iters, total.real_additions) == (3, 4, 15.0)
    assert total.scheme == "nms"
    assert (ComplexityLedger() + a).as_row() == a.as_row()
    assert ComplexityLedger().is_empty
    with pytest.raises(ValueError):
        merge([a, ComplexityLedger(scheme="oms", frames=1)])
    with pytest.raises(ValueError):
        merge([a, ComplexityLedger(scheme="nms", n_cols=1023, frames=1)])

    bf = ComplexityLedger(scheme="lz-wbf", code="pg:4", n_cols=273, frames=5, iters=9, real_additions=100.0)
    both = concatenate(bf, b, "lz-wbf+nms")
    assert both.frames == 5
    assert both.iters == 10
    assert both.real_additions == 105.0
    assert both.scheme == "lz-wbf+nms"


@pytest.mark.parametrize(
    "variant,values",
    [
        ("lz-wbf", (1.5,)),
        ("wz-wbf", (2, 1.0)),
        ("lf-wbf", (2, 2, 2, 0.5, 0.2)),
        ("sz-wbf", (2, 0.5)),
        ("lp-wbf", ()),
    ],
)
def test_measured_single_frames_match_the_model(variant, values):
    h = build_eg_type1(2)
    decoder = get_decoder(variant, values)
    dims = CodeDims.from_matrix(h, beta4=decoder.params.beta4 or None)
    checked = 0
    for j in range(40):
        ledger = decoder.decode(h, all_zero_frame(h.n_cols, 0.7, frame_rng(13, j))).ledger
        if not ledger.iters:
            continue
        checked += 1
        assert ledger.real_additions == pytest.approx(
            estimate_additions(variant, dims, ledger.averages())
        )
    assert checked > 10


def test_measured_nt_totals_are_close_to_the_model():
    h = build_eg_type1(3)
    decoder = get_decoder("nt-wbf")
    ledgers = [
        decoder.decode(h, all_zero_frame(h.n_cols, 0.55, frame_rng(2, j))).ledger
        for j in range(100)
    ]
    ledgers = [l for l in ledgers if l.iters]
    total = merge(ledgers)
    estimate = estimate_additions("nt-wbf", CodeDims.from_matrix(h), total.averages())
    assert total.additions_per_frame() == pytest.approx(estimate, rel=0.1)
