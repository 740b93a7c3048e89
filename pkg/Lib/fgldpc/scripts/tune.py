"""
fgldpc tune:

Search decoder parameters that minimise the bit error rate on a fixed
batch of noisy frames, by differential evolution.

Usage:

$ fgldpc tune --code pg:4 --variant lf-wbf --sigma 0.57 --out lf.csv

The CSV holds the best score and vector after every generation. For
LF-WBF the published vector closest in sigma is scored on the same batch
and reported alongside the result.
"""
import argparse
import csv
import logging
import sys

from tabulate import tabulate

from fgldpc.codes import get_code
from fgldpc.constants import PUBLISHED_LF_WBF_VECTORS
from fgldpc.decoders import known_decoders
from fgldpc.logging import add_logging_arguments, setup_logging
from fgldpc.schema import ConfigError
from fgldpc.tuning import DeConfig, ObjectiveBatch, default_bounds, objective_ber, tune

log = logging.getLogger("fgldpc.tune")


def published_vector(code_name, variant, sigma):
    """The published vector for the nearest sigma, if there is one."""
    if variant != "lf-wbf" or code_name not in PUBLISHED_LF_WBF_VECTORS:
        return None, None
    table = PUBLISHED_LF_WBF_VECTORS[code_name]
    nearest = min(table, key=lambda s: abs(s - sigma))
    return nearest, table[nearest]


def open_history(out):
    return sys.stdout if out in (None, "-") else open(out, "w", newline="")


def write_history(result, handle):
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(("generation", "best_score", "best_vector"))
    for generation, score, vector in result.history:
        writer.writerow((generation, "%.6g" % score, " ".join("%.6g" % v for v in vector)))
    if handle is not sys.stdout:
        handle.close()


def main(args=None):
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("--code", required=True, help="eg:S, pg:S or alist:PATH")
    parser.add_argument("--variant", required=True, choices=sorted(known_decoders))
    parser.add_argument("--sigma", type=float, required=True, help="Channel noise deviation")
    parser.add_argument("--frames", type=int, default=2000, help="Frames in the objective batch")
    parser.add_argument("--imax", type=int, help="Iteration cap of the tuned decoder")
    parser.add_argument("--population", type=int, help="Default: 10 per dimension")
    parser.add_argument("--generations", type=int, default=60)
    parser.add_argument("--f-weight", type=float, default=0.7, help="Mutation scale F")
    parser.add_argument("--cr", type=float, default=0.9, help="Crossover rate")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", help="CSV history path; standard output if omitted")
    add_logging_arguments(parser)
    args = parser.parse_args(args)
    setup_logging("fgldpc.tune", args, __name__)

    try:
        h = get_code(args.code)
        if known_decoders[args.variant].parameters == ():
            raise ConfigError(f"{args.variant} has no parameters to tune")
        config = DeConfig(
            bounds=default_bounds(args.variant, h),
            population=args.population,
            generations=args.generations,
            f_weight=args.f_weight,
            cr=args.cr,
            seed=args.seed,
            workers=args.workers,
        )
        batch = ObjectiveBatch.draw(
            h, args.variant, args.sigma, frames=args.frames, seed=args.seed, i_max=args.imax
        )
        handle = open_history(args.out)
    except (ConfigError, ValueError, OSError) as e:
        parser.error(str(e))

    result = tune(batch, config)
    write_history(result, handle)

    rows = [["differential evolution", str(batch.decoder(result.best)), result.score]]
    nearest, vector = published_vector(h.name, args.variant, args.sigma)
    if vector is not None:
        score = objective_ber(vector, batch)
        rows.append([f"published (sigma {nearest:g})", str(batch.decoder(vector)), score])
        log.info("Published vector for sigma %g scores %.4g on this batch", nearest, score)
    print(tabulate(rows, ["source", "decoder", "BER"], tablefmt="pipe"), file=sys.stderr)


if __name__ == "__main__":
    main()
