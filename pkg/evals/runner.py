"""CLI eval runner: loads the YAML case files and replays them through ``pullback``.

Usage:
    python -m evals --all
    python -m evals --suite portrait
    python -m evals --suite lattes --trials 2
    python -m evals --all --report results/report.json
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any

import yaml

from pullback.cli import main as pullback_main

from .graders.deterministic import check_exit, check_report
from .report import aggregate_results

logger = logging.getLogger(__name__)

SUITES_DIR = Path(__file__).parent / "tasks"
FIXTURES_DIR = Path(__file__).parent / "fixtures"


def load_cases(suite: str | None = None) -> list[dict[str, Any]]:
    """Cases from ``tasks/<suite>/cases.yaml``; every suite when *suite* is None.

    A case without an ``id`` is named after its file and position; its
    ``suite`` is the directory it was found in.
    """
    if suite is None:
        dirs = sorted(p for p in SUITES_DIR.iterdir() if p.is_dir())
    else:
        dirs = [SUITES_DIR / suite]

    cases: list[dict[str, Any]] = []
    for suite_dir in dirs:
        if not suite_dir.is_dir():
            logger.warning("No such suite: %s", suite_dir.name)
            continue
        for path in sorted(suite_dir.glob("*.yaml")):
            for i, case in enumerate(yaml.safe_load(path.read_text()) or []):
                cases.append({"id": f"{path.stem}-{i}", "suite": suite_dir.name, **case})
    return cases


def case_argv(case: dict[str, Any]) -> list[str]:
    """``--json`` plus the case arguments with ``{fixtures}`` expanded."""
    return ["--json"] + [str(a).replace("{fixtures}", str(FIXTURES_DIR)) for a in case["argv"]]


def run_cli_case(case: dict[str, Any]) -> tuple[int, dict[str, Any] | None]:
    """Run ``pullback`` in-process; the parsed JSON report, if one was printed."""
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        status = pullback_main(case_argv(case))
    text = out.getvalue().strip()
    return status, json.loads(text) if text else None


def grade_cli_case(case: dict[str, Any], status: int, report: dict[str, Any] | None) -> dict[str, Any]:
    expected_status = case.get("exit_status", 0)
    if report is None:
        return check_exit(status, expected_status)
    grade = check_report(
        report,
        case.get("expected", {}),
        exit_status=expected_status,
        citations=case.get("citations"),
    )
    if status != report.get("exit_status"):
        grade["passed"] = False
        grade["errors"].append(f"process exit {status} differs from report {report.get('exit_status')}")
    return grade


def replay(case: dict[str, Any], trials: int = 1) -> dict[str, Any]:
    """Grade *trials* independent runs of one case."""
    runs = []
    for n in range(1, trials + 1):
        start = time.perf_counter()
        status, report = run_cli_case(case)
        runs.append({
            "trial": n,
            "exit": status,
            "elapsed_s": round(time.perf_counter() - start, 4),
            **grade_cli_case(case, status, report),
        })
    return {"task_id": case["id"], "suite": case["suite"], "trials": runs}


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(description="Replay pullback eval cases")
    target = parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--all", action="store_true", help="every suite")
    target.add_argument("--suite", help="one suite, by directory name")
    parser.add_argument("--trials", type=int, default=1, help="runs per case")
    parser.add_argument("--report", type=Path, help="also write the results as JSON here")
    args = parser.parse_args(argv)

    cases = load_cases(args.suite)
    if not cases:
        sys.exit(f"no cases for suite {args.suite!r}")

    results = []
    for case in cases:
        result = replay(case, args.trials)
        ok = sum(t["passed"] for t in result["trials"])
        print(f"{'ok  ' if ok == args.trials else 'FAIL'} {case['suite']}/{case['id']} ({ok}/{args.trials})")
        for t in result["trials"]:
            for err in t.get("errors", []):
                print(f"       trial {t['trial']}: {err}")
        results.append(result)

    summary = aggregate_results(results)
    print(
        f"\n{summary['total_passed']}/{summary['total_tasks']} cases"
        f"  pass@1={summary['pass_at_1']:.2%}  pass@k={summary['pass_at_k']:.2%}"
        f"  pass^k={summary['pass_pow_k']:.2%}  avg_score={summary['avg_score']:.3f}"
    )

    if args.report:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(json.dumps({"tasks": results, "summary": summary}, indent=2))
        logger.info("report written to %s", args.report)

    if summary["total_passed"] != summary["total_tasks"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
