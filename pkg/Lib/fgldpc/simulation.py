"""Monte Carlo FER/BER sweeps over the all-zero codeword.

A sweep decodes, for every configured scheme and every SNR point, fixed
size batches of noisy frames until the point has collected enough frame
errors or hit the frame cap. Frame ``j`` of point ``p`` is always drawn
from the same generator, so all schemes of a sweep see the same noise and
the output does not depend on the number of worker processes.
"""
import csv
import logging
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from fgldpc.channel import all_zero_frame, frame_rng, sigma_to_snr_db, snr_db_to_sigma
from fgldpc.codes import CodeDescriptor, get_code
from fgldpc.complexity import (
    Averages,
    CodeDims,
    ComplexityLedger,
    complexity_ratio,
    estimate_additions,
    nms_benchmark,
)
from fgldpc.constants import (
    CSV_HEADER,
    DEFAULT_BATCH_SIZE,
    DEFAULT_MAX_FRAMES,
    DEFAULT_MIN_FRAME_ERRORS,
    PARAMETER_PRESETS,
)
from fgldpc.decoders import DecoderBase, known_decoders
from fgldpc.hybrid import HybridScheme, decode_hybrid
from fgldpc.schema import ConfigError

log = logging.getLogger("fgldpc.sim")

Scheme = Union[DecoderBase, HybridScheme]


def parse_decoder(selector: str, code_name: str, i_max: Optional[int] = None) -> DecoderBase:
    """Build a decoder from ``NAME[:p1,p2,...][@IMAX]``.

    Without explicit values the preset for ``code_name`` is used. An
    ``@IMAX`` suffix wins over ``i_max``, which wins over the decoder's
    own default.
    """
    body, at, imax_text = selector.strip().partition("@")
    name, colon, values_text = body.partition(":")
    name = name.strip().lower()
    if name not in known_decoders:
        raise ConfigError(
            f"Unknown decoder '{name}' in '{selector}'; known decoders: "
            f"{', '.join(sorted(known_decoders))}"
        )
    cls = known_decoders[name]
    if colon:
        try:
            values = tuple(float(v) for v in values_text.split(","))
        except ValueError:
            raise ConfigError(f"Could not read parameters '{values_text}' of '{selector}'")
    elif cls.parameters:
        values = PARAMETER_PRESETS.get(code_name, {}).get(name)
        if values is None:
            raise ConfigError(
                f"No preset parameters for {name} on code {code_name}; "
                f"give them as {name}:{','.join(cls.parameters)}"
            )
    else:
        values = ()
    if at:
        try:
            i_max = int(imax_text)
        except ValueError:
            raise ConfigError(f"Iteration cap '{imax_text}' of '{selector}' is not an integer")
    try:
        return cls.from_values(values, i_max=i_max)
    except ValueError as e:
        raise ConfigError(f"Bad decoder '{selector}': {e}") from e


def parse_hybrid(
    selector: str, code_name: str, i_max: Optional[int] = None
) -> HybridScheme:
    """Both stages share ``i_max`` unless their own selector carries @IMAX."""
    parts = selector.split("+")
    if len(parts) != 2:
        raise ConfigError(f"Hybrid '{selector}' must look like BF+MS")
    first, second = (parse_decoder(p, code_name, i_max) for p in parts)
    try:
        return HybridScheme(first, second)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def snr_grid(text: str) -> List[float]:
    """Expand ``a:b:step`` into the points a, a+step, ... up to b."""
    try:
        start, stop, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise ConfigError(f"SNR range '{text}' must look like start:stop:step")
    if step <= 0 or stop < start:
        raise ConfigError(f"SNR range '{text}' is empty")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return [round(start + i * step, 10) for i in range(count)]


@dataclass
class SweepConfig:
    code: str
    schemes: List[str] = field(default_factory=list)
    hybrids: List[str] = field(default_factory=list)
    snr_db: Optional[List[float]] = None
    sigma: Optional[List[float]] = None
    seed: int = 0
    min_errors: int = DEFAULT_MIN_FRAME_ERRORS
    max_frames: int = DEFAULT_MAX_FRAMES
    batch_size: int = DEFAULT_BATCH_SIZE
    workers: int = 1
    imax: Optional[int] = None
    out: Optional[str] = None

    def __post_init__(self):
        if not self.schemes and not self.hybrids:
            raise ConfigError("Nothing to simulate: give at least one scheme or hybrid")
        if (self.snr_db is None) == (self.sigma is None):
            raise ConfigError("Give exactly one of an SNR grid or a sigma list")
        if not (self.snr_db or self.sigma):
            raise ConfigError("Need at least one SNR point")
        if self.sigma and min(self.sigma) <= 0:
            raise ConfigError(f"Noise deviations must be positive, got {self.sigma}")
        for name in ("min_errors", "max_frames", "batch_size", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1, got {getattr(self, name)}")
        if self.imax is not None and self.imax < 1:
            raise ConfigError(f"imax must be at least 1, got {self.imax}")

    @classmethod
    def from_dict(cls, data: dict):
        """Build from the camelCase keys of a YAML sweep file."""
        keys = {
            "snrDb": "snr_db",
            "minErrors": "min_errors",
            "maxFrames": "max_frames",
            "batchSize": "batch_size",
        }
        return cls(**{keys.get(k, k): v for k, v in data.items()})

    def build(self, h) -> List[Scheme]:
        """Every configured scheme, standalone decoders first."""
        schemes = [parse_decoder(s, h.name, self.imax) for s in self.schemes]
        return schemes + [parse_hybrid(s, h.name, self.imax) for s in self.hybrids]

    def points(self, rate: float) -> List[Tuple[float, float]]:
        """(snr_db, sigma) pairs in configured order."""
        if self.snr_db is not None:
            return [(snr, snr_db_to_sigma(snr, rate)) for snr in self.snr_db]
        return [(sigma_to_snr_db(sigma, rate), sigma) for sigma in self.sigma]


def confidence(frame_errors: int, frames: int) -> Tuple[float, float]:
    """FER and its binomial standard error."""
    if frames <= 0:
        raise ValueError(f"Need at least one frame, got {frames}")
    fer = frame_errors / frames
    return fer, math.sqrt(fer * (1 - fer) / frames)


@dataclass
class PointTally:
    """Counts for one scheme at one point, summable over batches."""

    frames: int = 0
    frame_errors: int = 0
    bit_errors: int = 0
    ledger: ComplexityLedger = field(default_factory=ComplexityLedger)
    # hybrid only
    bf_frame_errors: int = 0
    bf_ledger: ComplexityLedger = field(default_factory=ComplexityLedger)
    ms_ledger: ComplexityLedger = field(default_factory=ComplexityLedger)
    ms_invocations: int = 0
    nms_alone_iters: int = 0

    def __add__(self, other):
        return PointTally(
            frames=self.frames + other.frames,
            frame_errors=self.frame_errors + other.frame_errors,
            bit_errors=self.bit_errors + other.bit_errors,
            ledger=self.ledger + other.ledger,
            bf_frame_errors=self.bf_frame_errors + other.bf_frame_errors,
            bf_ledger=self.bf_ledger + other.bf_ledger,
            ms_ledger=self.ms_ledger + other.ms_ledger,
            ms_invocations=self.ms_invocations + other.ms_invocations,
            nms_alone_iters=self.nms_alone_iters + other.nms_alone_iters,
        )

    def record(self, outcome):
        self.frames += 1
        self.frame_errors += outcome.frame_error
        self.bit_errors += outcome.bit_errors
        self.ledger += outcome.ledger


def decode_frame(scheme: Scheme, h, frame, tally: PointTally):
    if isinstance(scheme, DecoderBase):
        tally.record(scheme.decode(h, frame))
        return
    outcome = decode_hybrid(scheme, h, frame)
    tally.record(outcome)
    tally.bf_frame_errors += outcome.bf.frame_error
    tally.bf_ledger += outcome.bf_ledger
    tally.ms_ledger += outcome.ms_ledger
    tally.ms_invocations += outcome.ms is not None
    if scheme.second.name == "nms":
        alone = outcome.ms if outcome.ms is not None else scheme.second.decode(h, frame)
        tally.nms_alone_iters += alone.iters_used


_worker_state = {}


def _init_worker(h, schemes, seed):
    _worker_state.update(h=h, schemes=schemes, seed=seed)


def _decode_chunk(job) -> PointTally:
    scheme_index, point_index, sigma, start, stop = job
    h = _worker_state["h"]
    scheme = _worker_state["schemes"][scheme_index]
    tally = PointTally()
    for j in range(start, stop):
        frame = all_zero_frame(h.n_cols, sigma, frame_rng(_worker_state["seed"], point_index, j))
        decode_frame(scheme, h, frame, tally)
    return tally


def run_point(config: SweepConfig, scheme_index: int, point_index: int, sigma: float, pool=None) -> PointTally:
    """Decode batches until the stop rule fires."""
    tally = PointTally()
    while tally.frames < config.max_frames and tally.frame_errors < config.min_errors:
        start = tally.frames
        stop = min(start + config.batch_size, config.max_frames)
        if pool is None:
            tally += _decode_chunk((scheme_index, point_index, sigma, start, stop))
            continue
        bounds = np.linspace(start, stop, config.workers + 1).astype(int)
        jobs = [
            (scheme_index, point_index, sigma, int(lo), int(hi))
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        for part in pool.map(_decode_chunk, jobs):
            tally += part
    return tally


def _labels(schemes: Sequence[Scheme]) -> List[str]:
    """Short names, or full descriptions where short names collide."""
    short = [s.name for s in schemes]
    return [n if short.count(n) == 1 else str(s) for n, s in zip(short, schemes)]


def _beta4(decoder) -> Optional[float]:
    return getattr(getattr(decoder, "params", None), "beta4", None) or None


def _estimate(scheme_name: str, dims: CodeDims, averages: Averages) -> Optional[float]:
    try:
        return estimate_additions(scheme_name, dims, averages)
    except ValueError as e:
        log.debug("No estimate for %s: %s", scheme_name, e)
        return None


def _ledger_columns(decoder, ledger: ComplexityLedger) -> dict:
    averages = ledger.averages()
    row = {"a_ni": averages.a_ni}
    if decoder.family == "bf":
        row["a_ns"] = averages.a_ns
        if decoder.name == "nt-wbf":
            row["a_nb"] = averages.a_nb
        if not decoder.serial:
            row["a_nc"] = averages.a_nc
    if getattr(decoder, "counted", True):
        row["adds_measured"] = ledger.additions_per_frame()
    return row


def _error_columns(frame_errors, bit_errors, frames, n_cols) -> dict:
    return {
        "frame_errors": frame_errors,
        "bit_errors": bit_errors,
        "fer": frame_errors / frames,
        "ber": bit_errors / (frames * n_cols),
    }


def point_rows(label: str, scheme: Scheme, h, tally: PointTally) -> List[dict]:
    """Result rows of one point: one for a decoder, three for a hybrid
    (the whole scheme, then its BF and MS stages)."""
    if isinstance(scheme, DecoderBase):
        dims = CodeDims.from_matrix(h, beta4=_beta4(scheme))
        row = {"scheme": label, "frames": tally.frames}
        row.update(_error_columns(tally.frame_errors, tally.bit_errors, tally.frames, h.n_cols))
        row.update(_ledger_columns(scheme, tally.ledger))
        if getattr(scheme, "counted", True):
            row["adds_estimated"] = _estimate(scheme.name, dims, tally.ledger.averages())
        return [row]

    first, second = scheme.first, scheme.second
    dims = CodeDims.from_matrix(h, beta4=_beta4(first))
    ms_a_ni = tally.ms_ledger.averages().a_ni
    row = {
        "scheme": label,
        "frames": tally.frames,
        "a_ni": tally.ledger.averages().a_ni,
        "adds_measured": tally.ledger.additions_per_frame(),
        "ms_rate": tally.ms_invocations / tally.frames,
    }
    row.update(_error_columns(tally.frame_errors, tally.bit_errors, tally.frames, h.n_cols))
    bf_estimate = _estimate(first.name, dims, tally.bf_ledger.averages())
    ms_estimate = _estimate(second.name, dims, Averages(a_ni=ms_a_ni))
    if bf_estimate is not None and ms_estimate is not None:
        row["adds_estimated"] = bf_estimate + ms_estimate
    if second.name == "nms":
        benchmark = nms_benchmark(dims, tally.nms_alone_iters / tally.frames)
        if benchmark > 0:
            row["ratio_vs_nms"] = complexity_ratio(tally.ledger, benchmark)

    bf_row = {
        "scheme": f"{label}/{first.name}",
        "frames": tally.frames,
        "frame_errors": tally.bf_frame_errors,
        "fer": tally.bf_frame_errors / tally.frames,
    }
    bf_row.update(_ledger_columns(first, tally.bf_ledger))
    bf_row["adds_estimated"] = bf_estimate

    ms_row = {"scheme": f"{label}/{second.name}", "frames": tally.frames}
    ms_row.update(_ledger_columns(second, tally.ms_ledger))
    ms_row["adds_estimated"] = ms_estimate
    ms_row["ms_rate"] = row["ms_rate"]
    return [row, bf_row, ms_row]


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.6g" % value
    return str(value)


class CsvSink:
    """Writes result rows under the fixed header as they come in."""

    def __init__(self, out: Optional[str]):
        if out is None or out == "-":
            self.handle, self.owned = sys.stdout, False
        else:
            self.handle, self.owned = open(out, "w", newline=""), True
        self.writer = csv.writer(self.handle, lineterminator="\n")
        self.writer.writerow(CSV_HEADER)

    def write(self, row: dict):
        self.writer.writerow([format_value(row.get(column)) for column in CSV_HEADER])
        self.handle.flush()

    def close(self):
        if self.owned:
            self.handle.close()


def run_sweep(config: SweepConfig, h=None, sink: Optional[CsvSink] = None) -> List[dict]:
    """Simulate every scheme at every point, in configured order.

    Rows are returned and, when the config names an output, written out
    as CSV while the sweep runs.
    """
    h = h if h is not None else get_code(config.code)
    schemes = config.build(h)
    labels = _labels(schemes)
    points = config.points(CodeDescriptor.from_matrix(h).rate)
    owned_sink = sink is None and config.out is not None
    if owned_sink:
        sink = CsvSink(config.out)
    log.info(
        "Sweeping %s over %s: %d scheme(s), %d point(s)",
        ", ".join(labels),
        h.name,
        len(schemes),
        len(points),
    )

    pool = None
    _init_worker(h, schemes, config.seed)
    if config.workers > 1:
        pool = ProcessPoolExecutor(
            max_workers=config.workers,
            initializer=_init_worker,
            initargs=(h, schemes, config.seed),
        )
    rows = []
    try:
        for scheme_index, (label, scheme) in enumerate(zip(labels, schemes)):
            for point_index, (snr_db, sigma) in enumerate(points):
                started = time.perf_counter()
                tally = run_point(config, scheme_index, point_index, sigma, pool)
                wall = time.perf_counter() - started
                fer, std_error = confidence(tally.frame_errors, tally.frames)
                log.info(
                    "%s at %.3f dB (sigma %.4f): %d frames, %d frame errors, FER %.3g ± %.2g",
                    label,
                    snr_db,
                    sigma,
                    tally.frames,
                    tally.frame_errors,
                    fer,
                    std_error,
                )
                if tally.frame_errors < config.min_errors:
                    log.warning(
                        "%s at %.3f dB stopped after %d frames with only %d frame errors; "
                        "the estimate has not converged",
                        label,
                        snr_db,
                        tally.frames,
                        tally.frame_errors,
                    )
                for row in point_rows(label, scheme, h, tally):
                    row.update(code=h.name, snr_db=snr_db, sigma=sigma, wall_s=wall)
                    rows.append(row)
                    if sink is not None:
                        sink.write(row)
    finally:
        if pool is not None:
            pool.shutdown()
        if owned_sink:
            sink.close()
    return rows
