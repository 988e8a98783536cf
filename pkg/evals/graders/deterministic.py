"""Deterministic graders: compare a CLI report against the expectations of a case."""

from __future__ import annotations

from typing import Any


def check_report(
    report: dict[str, Any],
    expected: dict[str, Any],
    *,
    exit_status: int | None = None,
    citations: list[str] | None = None,
) -> dict[str, Any]:
    """Grade ``report["results"]`` against *expected* (a subset, compared deeply).

    Returns
    -------
    dict with keys:
        passed : bool
        score  : float   (fraction of checks that held)
        errors : list[str]
    """
    errors: list[str] = []
    total = 0
    held = 0

    results = report.get("results", {})
    for key, want in expected.items():
        total += 1
        problems = _compare(results.get(key, _MISSING), want, key)
        if problems:
            errors.extend(problems)
        else:
            held += 1

    if exit_status is not None:
        total += 1
        got = report.get("exit_status")
        if got != exit_status:
            errors.append(f"exit_status: expected {exit_status}, got {got}")
        else:
            held += 1

    for tag in citations or []:
        total += 1
        if tag not in report.get("citations", []):
            errors.append(f"missing citation: {tag}")
        else:
            held += 1

    score = held / total if total else 1.0
    return {"passed": not errors, "score": score, "errors": errors}


def check_exit(actual: int, expected: int) -> dict[str, Any]:
    """Grade a run that is expected to stop before producing a report."""
    if actual == expected:
        return {"passed": True, "score": 1.0, "errors": []}
    return {"passed": False, "score": 0.0, "errors": [f"exit: expected {expected}, got {actual}"]}


_MISSING = object()


def _compare(actual: Any, expected: Any, path: str) -> list[str]:
    if actual is _MISSING:
        return [f"missing key: {path}"]
    if isinstance(expected, dict) and isinstance(actual, dict):
        errors: list[str] = []
        for k, v in expected.items():
            errors.extend(_compare(actual.get(k, _MISSING), v, f"{path}.{k}"))
        return errors
    if isinstance(expected, list) and isinstance(actual, list):
        if len(actual) != len(expected):
            return [f"{path}: expected {len(expected)} entries, got {len(actual)}"]
        errors = []
        for i, (a, e) in enumerate(zip(actual, expected)):
            errors.extend(_compare(a, e, f"{path}[{i}]"))
        return errors
    if actual != expected:
        return [f"{path}: expected {expected!r}, got {actual!r}"]
    return []
