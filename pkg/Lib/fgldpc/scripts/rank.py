"""
fgldpc rank:

Print the GF(2) rank of a parity-check matrix and the dimension K of
the code it defines.

Usage:

$ fgldpc rank --code pg:4
$ fgldpc rank --code alist:mycode.alist
"""
import argparse

from fgldpc.codes import gf2_rank, get_code
from fgldpc.logging import add_logging_arguments, setup_logging


def main(args=None):
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("--code", required=True, help="eg:S, pg:S or alist:PATH")
    add_logging_arguments(parser)
    args = parser.parse_args(args)
    setup_logging("fgldpc.rank", args, __name__)

    try:
        h = get_code(args.code)
    except (ValueError, OSError) as e:
        parser.error(str(e))
    rank = gf2_rank(h)
    print(f"{h.name}: N={h.n_cols} M={h.n_rows} rank={rank} K={h.n_cols - rank}")


if __name__ == "__main__":
    main()
