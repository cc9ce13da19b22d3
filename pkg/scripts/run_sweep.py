"""Write the scheme/oracle comparison CSV over the default oracle guard grid."""

import argparse
import sys

from cellassoc.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="sweep.csv")
    ap.add_argument("--K", default="1..10")
    args = ap.parse_args()
    sys.exit(main(["sweep", "--K", args.K, "--L", "1..3", "--Nc", "1..3", "--mode", "all", "--oracle", "--out", args.out]))
