"""pass@1, pass@k, pass^k and score/latency averages over replayed cases."""

from __future__ import annotations

from statistics import fmean
from typing import Any


def aggregate_results(results: list[dict[str, Any]]) -> dict[str, Any]:
    """Summarize ``runner.replay`` outputs.

    Every case is deterministic, so ``flaky`` (passed at least once but
    not every time) should be zero.
    """
    graded = [r for r in results if r.get("trials")]
    n = len(graded)
    firsts = [r["trials"][0]["passed"] for r in graded]
    anys = [any(t["passed"] for t in r["trials"]) for r in graded]
    alls = [all(t["passed"] for t in r["trials"]) for r in graded]
    trials = [t for r in graded for t in r["trials"]]

    by_suite: dict[str, dict[str, int]] = {}
    for r, ok in zip(graded, alls):
        counts = by_suite.setdefault(r.get("suite", "unknown"), {"tasks": 0, "passed": 0})
        counts["tasks"] += 1
        counts["passed"] += ok

    def share(flags: list[bool]) -> float:
        return sum(flags) / n if n else 0.0

    return {
        "total_tasks": n,
        "total_passed": sum(alls),
        "flaky": sum(anys) - sum(alls),
        "k": len(graded[0]["trials"]) if graded else 0,
        "pass_at_1": share(firsts),
        "pass_at_k": share(anys),
        "pass_pow_k": share(alls),
        "avg_score": round(fmean(t.get("score", 0.0) for t in trials), 4) if trials else 0.0,
        "avg_latency_s": (
            round(fmean(t["elapsed_s"] for t in trials if "elapsed_s" in t), 4)
            if any("elapsed_s" in t for t in trials) else 0.0
        ),
        "by_suite": by_suite,
    }
