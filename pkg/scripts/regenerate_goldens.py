#!/usr/bin/env python3
"""Regenerate the committed golden reports in goldens/.

Each golden file is the canonical JSON for one scenario at the default
configuration (symbolic genus where possible, genus 2 for the numeric-only
scenarios).  Run from the repository root:

    python3 scripts/regenerate_goldens.py [goldens/]
"""

import sys
from pathlib import Path

from chowforge.cli import NUMERIC_ONLY, SCENARIOS, RunConfig, build_report, canonical_json


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("goldens")
    out_dir.mkdir(parents=True, exist_ok=True)
    for scenario in SCENARIOS + ("all",):
        genus = 2 if scenario in NUMERIC_ONLY else "symbolic"
        cfg = RunConfig(scenario=scenario, genus=genus, format="json")
        path = out_dir / f"{scenario}.json"
        path.write_text(canonical_json(build_report(cfg)))
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
