"""Deterministic CPU scheduling simulator.

Times are integer microseconds (``*_us``). Inputs given in milliseconds are
decimal strings with at most three fractional digits, so "8.019" is exactly
8019 us. Aggregate metrics come back as :class:`fractions.Fraction`.
"""

from fractions import Fraction

from . import _core
from ._core import (
    IncompleteTraceError,
    InternalError,
    Process,
    Slice,
    Trace,
    Workload,
    WorkloadError,
    context_switches,
    embedded_workload,
    generate_random,
    parse_workload,
    run_cli,
    simulate,
)

__all__ = [
    "IncompleteTraceError",
    "InternalError",
    "Process",
    "Slice",
    "Trace",
    "Workload",
    "WorkloadError",
    "compare",
    "compute_metrics",
    "context_switches",
    "embedded_workload",
    "generate_random",
    "parse_workload",
    "reproduce",
    "run_cli",
    "simulate",
]

_RATIONAL_KEYS = (
    "avg_waiting_ms",
    "avg_turnaround_ms",
    "avg_response_ms",
    "avg_burst_ms",
    "throughput_per_ms",
    "cpu_utilization",
)


def _fractions(report):
    for key in _RATIONAL_KEYS:
        num, den = report[key]
        report[key] = Fraction(num, den)
    return report


def compute_metrics(trace, mode="standard"):
    """Per-process and aggregate metrics; mode is "standard" or "paper"."""
    return _fractions(_core.compute_metrics(trace, mode))


def compare(workload, policies, quantum_ms=None, mode="standard", format="text"):
    """Comparison table for several policies, rendered as text, csv or json."""
    if isinstance(quantum_ms, (int, float)):
        raise TypeError("quantum_ms must be a decimal string such as '5' or '2.5'")
    return _core.compare(workload, list(policies), quantum_ms, mode, format)


def reproduce(experiment, oracle=False):
    """Re-run "expA" or "expB" and report every check."""
    run = _core.reproduce(experiment, oracle)
    _fractions(run["rr_metrics"])
    _fractions(run["omdrr_metrics"])
    return run
