"""
fgldpc sweep:

Simulate decoders over a grid of SNR points and write one CSV row per
(scheme, point), plus two stage rows per hybrid.

Usage:

$ fgldpc sweep --code pg:4 --scheme lf-wbf --scheme nms --snr 3:3.5:0.1 --out fer.csv

Decoder parameters follow the decoder name (``lf-wbf:6,4,2,0.45,0.07``) and
the iteration cap follows an ``@`` (``nms:2.9@50``); without parameters the
preset for the code is used. Hybrids join a bit-flipping and a Min-Sum
decoder with ``+``:

$ fgldpc sweep --code eg:5 --hybrid lf-wbf+nms --sigma 0.555 --out hybrid.csv

Everything can instead come from a YAML file:

$ fgldpc sweep --config sweep.yaml
"""
import argparse

from fgldpc.codes import get_code
from fgldpc.constants import DEFAULT_BATCH_SIZE, DEFAULT_MAX_FRAMES, DEFAULT_MIN_FRAME_ERRORS
from fgldpc.logging import add_logging_arguments, setup_logging
from fgldpc.schema import ConfigError, load_config
from fgldpc.simulation import CsvSink, SweepConfig, run_sweep, snr_grid


def config_from_args(args) -> SweepConfig:
    if args.config:
        with open(args.config, "r") as fh:
            return SweepConfig.from_dict(load_config(fh.read()))
    if not args.code:
        raise ConfigError("Give a code with --code, or a --config file")
    return SweepConfig(
        code=args.code,
        schemes=args.scheme,
        hybrids=args.hybrid,
        snr_db=snr_grid(args.snr) if args.snr else None,
        sigma=[float(s) for s in args.sigma.split(",")] if args.sigma else None,
        seed=args.seed,
        min_errors=args.min_errors,
        max_frames=args.max_frames,
        batch_size=args.batch_size,
        workers=args.workers,
        imax=args.imax,
        out=args.out,
    )


def main(args=None):
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("--config", help="YAML sweep description; other sweep flags are ignored")
    parser.add_argument("--code", help="eg:S, pg:S or alist:PATH")
    parser.add_argument(
        "--scheme",
        action="append",
        default=[],
        metavar="NAME[:p1,...][@IMAX]",
        help="Decoder to simulate (repeatable)",
    )
    parser.add_argument(
        "--hybrid",
        action="append",
        default=[],
        metavar="BF+MS",
        help="Bit-flipping decoder backed by a Min-Sum decoder (repeatable)",
    )
    points = parser.add_mutually_exclusive_group()
    points.add_argument("--snr", metavar="START:STOP:STEP", help="Eb/N0 grid in dB")
    points.add_argument("--sigma", metavar="S1,S2,...", help="Noise deviations")
    parser.add_argument(
        "--imax",
        type=int,
        help="Iteration cap for schemes and hybrid stages given without @IMAX",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--min-errors", type=int, default=DEFAULT_MIN_FRAME_ERRORS)
    parser.add_argument("--max-frames", type=int, default=DEFAULT_MAX_FRAMES)
    parser.add_argument("--batch-size", type=int, default=DEFAULT_BATCH_SIZE)
    parser.add_argument("--workers", type=int, default=1, help="Decoding processes")
    parser.add_argument("--out", help="CSV output path; standard output if omitted")
    add_logging_arguments(parser)
    args = parser.parse_args(args)
    setup_logging("fgldpc.sweep", args, __name__)

    try:
        config = config_from_args(args)
        h = get_code(config.code)
        config.build(h)
        sink = CsvSink(config.out)
    except (ConfigError, ValueError, OSError) as e:
        parser.error(str(e))
    try:
        run_sweep(config, h, sink)
    finally:
        sink.close()


if __name__ == "__main__":
    main()
