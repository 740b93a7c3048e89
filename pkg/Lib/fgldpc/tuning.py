"""Decoder parameter search by differential evolution.

The objective is the bit error rate of a decoder over a batch of noisy
all-zero frames that is drawn once and then held fixed, so every
candidate parameter vector is scored on exactly the same noise.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import differential_evolution

from fgldpc.channel import all_zero_frame, frame_rng
from fgldpc.decoders import get_decoder, known_decoders

log = logging.getLogger("fgldpc.tune")

# Keeps the reals of (0, 10] away from zero
POSITIVE_FLOOR = 0.01


@dataclass(frozen=True)
class Bound:
    lo: float
    hi: float
    integer: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"Bound needs lo < hi, got [{self.lo}, {self.hi}]")


@dataclass
class DeConfig:
    bounds: Sequence[Bound]
    population: Optional[int] = None
    generations: int = 60
    f_weight: float = 0.7
    cr: float = 0.9
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        self.bounds = [b if isinstance(b, Bound) else Bound(*b) for b in self.bounds]
        if not self.bounds:
            raise ValueError("Need at least one dimension to search")
        if self.population is None:
            self.population = 10 * len(self.bounds)
        if self.population < 4:
            raise ValueError(f"Population must be at least 4, got {self.population}")
        if not 0 < self.f_weight <= 2:
            raise ValueError(f"Mutation weight must lie in (0, 2], got {self.f_weight}")
        if not 0 <= self.cr <= 1:
            raise ValueError(f"Crossover rate must lie in [0, 1], got {self.cr}")
        if self.generations < 1:
            raise ValueError(f"Need at least one generation, got {self.generations}")

    @property
    def dims(self) -> int:
        return len(self.bounds)


@dataclass
class DeResult:
    best: np.ndarray
    score: float
    history: List[Tuple[int, float, Tuple[float, ...]]] = field(default_factory=list)
    evaluations: int = 0


def de_optimize(objective: Callable[[np.ndarray], float], config: DeConfig) -> DeResult:
    """Minimise ``objective`` with rand/1/bin differential evolution.

    Integer dimensions are rounded to the nearest integer and every
    trial vector is kept inside the bounds. The run is deterministic for
    a given seed.
    """
    history = []

    def record(intermediate_result):
        history.append(
            (
                len(history) + 1,
                float(intermediate_result.fun),
                tuple(float(v) for v in intermediate_result.x),
            )
        )
        log.debug("Generation %d: best %.6g at %s", *history[-1])

    result = differential_evolution(
        objective,
        bounds=[(b.lo, b.hi) for b in config.bounds],
        strategy="rand1bin",
        maxiter=config.generations,
        popsize=math.ceil(config.population / config.dims),
        mutation=config.f_weight,
        recombination=config.cr,
        seed=config.seed,
        integrality=[b.integer for b in config.bounds],
        updating="deferred",
        polish=False,
        tol=0,
        atol=0,
        callback=record,
        workers=config.workers,
    )
    return DeResult(
        best=np.asarray(result.x),
        score=float(result.fun),
        history=history,
        evaluations=int(result.nfev),
    )


@dataclass
class ObjectiveBatch:
    """A fixed set of received all-zero frames and the decoder to tune."""

    h: object
    variant: str
    frames: Tuple
    i_max: Optional[int] = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.variant not in known_decoders:
            raise ValueError(f"Unknown decoder '{self.variant}'")
        self.frames = tuple(self.frames)

    @classmethod
    def draw(cls, h, variant, sigma, frames=2000, seed=0, i_max=None, **options):
        return cls(
            h=h,
            variant=variant,
            frames=[all_zero_frame(h.n_cols, sigma, frame_rng(seed, i)) for i in range(frames)],
            i_max=i_max,
            options=options,
        )

    @property
    def parameters(self) -> Tuple[str, ...]:
        return known_decoders[self.variant].parameters

    def decoder(self, vector):
        values = [
            int(round(v)) if name.startswith("alpha") else float(v)
            for name, v in zip(self.parameters, vector)
        ]
        return get_decoder(self.variant, values, i_max=self.i_max, **self.options)


def objective_ber(vector: Sequence[float], batch: ObjectiveBatch) -> float:
    decoder = batch.decoder(vector)
    errors = sum(decoder.decode(batch.h, frame).bit_errors for frame in batch.frames)
    return errors / (len(batch.frames) * batch.h.n_cols)


def default_bounds(variant: str, h) -> List[Bound]:
    """Search box per parameter: alpha1 and alpha2 are integers in
    [1, d_v/2], alpha3 an integer in [1, 4], beta1 and beta4 reals in
    [0, 1] (beta4 at least 1/N) and the remaining weights reals in (0, 10]."""
    half = max(2, h.d_v // 2)
    boxes = {
        "alpha1": Bound(1, half, True),
        "alpha2": Bound(1, half, True),
        "alpha3": Bound(1, 4, True),
        "beta1": Bound(0.0, 1.0),
        "beta4": Bound(1.0 / h.n_cols, 1.0),
    }
    positive = Bound(POSITIVE_FLOOR, 10.0)
    return [boxes.get(name, positive) for name in known_decoders[variant].parameters]


def tune(batch: ObjectiveBatch, config: DeConfig) -> DeResult:
    log.info(
        "Tuning %s on %d frames: %d-member population, %d generations",
        batch.variant,
        len(batch.frames),
        config.population,
        config.generations,
    )
    result = de_optimize(partial(objective_ber, batch=batch), config)
    log.info("Best BER %.4g at %s", result.score, batch.decoder(result.best))
    return result
