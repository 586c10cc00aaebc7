"""Run the finite-instance campaigns and write one JSON report per campaign."""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path

from rpolab.lab.campaigns import CAMPAIGNS, CampaignConfig

log = logging.getLogger("campaigns")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=sorted(CAMPAIGNS), help="campaigns to run (default: all)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--min-passing", type=int, default=0, help="stp only: instances meeting the hypotheses")
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in args.names:
        cfg = CampaignConfig(seed=args.seed, count=args.count,
                             min_passing=args.min_passing if name == "stp" else 0)
        report = CAMPAIGNS[name](cfg)
        (args.out / f"{name}.json").write_text(json.dumps(report.to_json(), indent=2))
        log.info("%s in %.1fs", report.summary(), report.seconds)
        failed += not report.ok
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
