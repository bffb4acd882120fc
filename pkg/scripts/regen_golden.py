"""Rewrite tests/golden/<name>.json from the jobs in tests/golden/jobs.

Run after an intentional change to report contents, then review the diff.
"""
import sys
from pathlib import Path

from mixedmult.cli import emit
from mixedmult.jobs import parse_job
from mixedmult.runner import RunOptions, run

ROOT = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main():
    for job_file in sorted((ROOT / "jobs").glob("*.json")):
        job = parse_job(job_file.read_text(encoding="utf-8"))
        report = run(job, RunOptions())
        out = ROOT / job_file.name
        out.write_bytes(emit(report, "json"))
        print(f"{job_file.stem}: {'pass' if report.passed else 'FAIL'} -> {out.name}")


if __name__ == "__main__":
    sys.exit(main())
