"""
fgldpc build-code:

Construct a parity-check matrix, print a summary and optionally save it
as an alist file.

Usage:

$ fgldpc build-code --code eg:5 --alist eg5.alist
"""
import argparse

from tabulate import tabulate

from fgldpc.codes import gf2_rank, get_code, max_column_overlap
from fgldpc.codes.alist import save_alist
from fgldpc.logging import add_logging_arguments, setup_logging


def summary(h) -> list:
    rank = gf2_rank(h)
    k = h.n_cols - rank
    return [
        ["code", h.name],
        ["family", h.family],
        ["N", h.n_cols],
        ["M", h.n_rows],
        ["d_v", h.d_v],
        ["d_c", h.d_c],
        ["regular", h.is_regular],
        ["rank", rank],
        ["K", k],
        ["rate", f"{k / h.n_cols:.4f}"],
        ["max column overlap", max_column_overlap(h)],
    ]


def main(args=None):
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("--code", required=True, help="eg:S, pg:S or alist:PATH")
    parser.add_argument("--alist", help="Write the matrix to this alist file")
    add_logging_arguments(parser)
    args = parser.parse_args(args)
    log = setup_logging("fgldpc.build-code", args, __name__)

    try:
        h = get_code(args.code)
    except (ValueError, OSError) as e:
        parser.error(str(e))
    print(tabulate(summary(h), ["property", "value"], tablefmt="pipe"))
    if args.alist:
        with open(args.alist, "w") as fh:
            fh.write(save_alist(h))
        log.info("Wrote %s", args.alist)


if __name__ == "__main__":
    main()
