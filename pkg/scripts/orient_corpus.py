"""Orient every TRS in a directory and tabulate verdicts next to the empirical pass."""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from rpolab.rewriting import empirical_termination
from rpolab.rpo import orient_trs
from rpolab.terms import ParseError
from rpolab.trsfile import load_trs


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("corpus", type=Path, nargs="?", default=Path(__file__).resolve().parents[1] / "corpus")
    ap.add_argument("--depth", type=int, default=2)
    ap.add_argument("--fuel", type=int, default=200)
    args = ap.parse_args(argv)
    print(f"{'file':<16}{'verdict':<8}{'statuses':<28}{'loops':>6}{'seconds':>9}")
    for path in sorted(args.corpus.glob("*.trs")):
        try:
            tf = load_trs(path)
        except ParseError as err:
            print(f"{path.stem:<16}{'ERROR':<8}{str(err)[:40]}")
            continue
        start = time.perf_counter()
        found = orient_trs(tf.signature, tf.trs.pairs())
        elapsed = time.perf_counter() - start
        statuses = ",".join(f"{f}={s}" for f, s in found[1].statuses.items()) if found else "-"
        loops = len(empirical_termination(tf.trs, args.depth, args.fuel).loops)
        print(f"{path.stem:<16}{'YES' if found else 'MAYBE':<8}{statuses:<28}{loops:>6}{elapsed:>9.3f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
