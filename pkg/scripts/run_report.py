#!/usr/bin/env python3
"""Run the full scenario sweep at several genera and summarize check outcomes.

Usage:
    python3 scripts/run_report.py [--genera 2 3 4 5] [--format text|json]

For each genus (plus the symbolic run) this builds the `all` report and prints
a one-line summary per scenario; failing claim ids are listed explicitly.
"""

import argparse
import json

from chowforge.cli import RunConfig, build_report


def summarize(report: dict) -> list[str]:
    lines = []
    for out in report["scenarios"]:
        checks = out.get("checks", [])
        failed = [c["claim_id"] for c in checks if not c["pass"]]
        status = "ok" if not failed else "FAIL " + ",".join(failed)
        lines.append(f"  {out['scenario']:<18} {len(checks):>2} checks  {status}")
    for sk in report.get("skipped", []):
        lines.append(f"  {sk['scenario']:<18} skipped ({sk['reason']})")
    return lines


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--genera", type=int, nargs="*", default=[2, 3, 4, 5])
    parser.add_argument("--format", choices=("text", "json"), default="text")
    args = parser.parse_args()

    runs = ["symbolic"] + list(args.genera)
    results = {}
    for genus in runs:
        report = build_report(RunConfig(scenario="all", genus=genus, format="json"))
        results[str(genus)] = report
        if args.format == "text":
            print(f"genus = {genus}")
            print("\n".join(summarize(report)))
            print()
    if args.format == "json":
        print(json.dumps(
            {k: v["all_checks_pass"] for k, v in results.items()}, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
