"""Weighted blow-ups, depth and links of terminal threefold points."""

import json

from ._core import JOB_VERSION, SchemaError, discrepancy as _discrepancy, parse_weight, run_job

__all__ = ["JOB_VERSION", "SchemaError", "parse_weight", "run", "depth", "discrepancy"]


def run(job, threads=1, budget=None):
    """Run a job given as a dict. Returns (exit_code, result) with DOT output left as text."""
    job = dict(job)
    job.setdefault("version", JOB_VERSION)
    code, text = run_job(json.dumps(job), threads, budget)
    if job.get("options", {}).get("format") == "dot" and code == 0:
        return code, text
    return code, json.loads(text)


def depth(model, threads=1, budget=None):
    code, out = run({"command": "depth", "model": model}, threads, budget)
    if code != 0:
        raise RuntimeError(out["error"]["message"])
    return out


def discrepancy(model, weight):
    return _discrepancy(json.dumps(model), weight)
