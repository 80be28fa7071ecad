"""Command-line interface: one subcommand per verification family.

Every run produces a RunReport: the command and resolved configuration, a
JSON-ready payload that is byte-identical across reruns with the same
configuration, the identifiers of the formulas and rules applied, the library
version, and the wall-clock duration (kept outside the payload so reruns
still compare equal).  Exit codes separate outcomes for CI: 0 the property
checked holds, 1 it is violated, 2 the run was inconclusive (budget or
unsettled case), 3 usage error.

Environment variables: FATPOINTS_PRIME sets the default prime for the rank
oracle; FATPOINTS_THREADS sets the default worker count for enumeration
sweeps.  Flags override both.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .degen import InsufficientMultiplicity, ResidualTipsSplit, run_ledger
from .dims import (
    PlanarSeriesSpec,
    SurfaceSeriesSpec,
    check_small_pairs,
    edim,
    format_mults,
    g_value,
    h0_curve,
    h0_surface,
    parse_mults,
    scan_discrete_convexity,
    scan_superadditivity,
    vdim,
)
from .lowdeg import classify_lowdeg, enumerate_special
from .oracle import (
    BudgetExceeded,
    OracleConfig,
    RetriesExhausted,
    cross_prime_verdict,
    oracle_verdict,
)
from .planar import classify_planar
from .theoremb import verify_theorem_B

__all__ = ["RunReport", "main"]

_DEFAULT_PRIME = 32003

#: The two (a, a') pairs where strict superadditivity of the g-values is
#: expected to fail; they are exactly the cases covered by the enumerated
#: small-pairs inequalities instead.
_KNOWN_BOUNDARY_PAIRS = ((1, 1), (2, 1))


class _UsageError(Exception):
    """Raised for bad flags or bad flag values; mapped to exit code 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        raise _UsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class RunReport:
    """Machine-readable record of one CLI run."""

    command: str
    config: dict
    payload: dict
    verdict: int  # 0 verified, 1 violated, 2 inconclusive
    version: str
    rules: tuple[str, ...]
    duration_s: float

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "payload": self.payload,
            "verdict": self.verdict,
            "version": self.version,
            "rules": list(self.rules),
            "duration_s": self.duration_s,
        }

    def payload_bytes(self) -> bytes:
        """Canonical payload serialization; equal across identical reruns."""
        return json.dumps(self.payload, sort_keys=True, indent=1).encode() + b"\n"


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return fallback
    try:
        return int(raw)
    except ValueError as exc:
        raise _UsageError(f"environment variable {name}={raw!r} is not an integer") from exc


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise _UsageError(f"{flag} expects a comma list of integers, got {text!r}") from exc


def _parse_mults_arg(text: str) -> tuple[int, ...]:
    try:
        return parse_mults(text)
    except ValueError as exc:
        raise _UsageError(f"--mults expects m^k comma syntax like 4^2,3,2: {exc}") from exc


# ---------------------------------------------------------------------------
# dims


def _cmd_dims(args) -> tuple[str, dict, dict, int, tuple[str, ...], list[str]]:
    q = args.query
    if q == "h0-surface":
        value = h0_surface(args.d, args.e)
        config = {"d": args.d, "e": args.e}
        payload = {"query": q, "value": value, **config}
        rules = ("h0-surface:c3(e+3)-c3(e-d+3)",)
        lines = [f"h0_surface(d={args.d}, e={args.e}) = {value}"]
    elif q == "h0-curve":
        value = h0_curve(args.s, args.t, args.k)
        config = {"s": args.s, "t": args.t, "k": args.k}
        payload = {"query": q, "value": value, **config}
        rules = ("h0-curve:c3(k+3)-c3(k-s+3)-c3(k-t+3)+c3(k-s-t+3)",)
        lines = [f"h0_curve(s={args.s}, t={args.t}, k={args.k}) = {value}"]
    elif q == "vdim":
        mults = _parse_mults_arg(args.mults)
        spec = SurfaceSeriesSpec(d=args.d, e=args.e, mults=mults)
        config = {"d": args.d, "e": args.e, "mults": format_mults(mults)}
        payload = {
            "query": q,
            "spec": str(spec),
            "vdim": vdim(spec),
            "edim": edim(spec),
            **config,
        }
        rules = ("vdim:h0-surface-minus-sum-fat-degrees", "fat-degree:m(m+1)/2")
        lines = [f"{spec}: vdim {vdim(spec)}, edim {edim(spec)}"]
    elif q == "g-scan":
        failures = scan_superadditivity(args.d, args.amax)
        config = {"d": args.d, "amax": args.amax}
        payload = {
            "query": q,
            "failing_pairs": [list(p) for p in failures],
            "g_values": {str(a): g_value(args.d, a) for a in range(1, args.amax + 1)},
            **config,
        }
        rules = (
            "g:positive-root-of-g(g+1)/2=h0_surface(d,a)-1",
            "superadditivity:g(a)+g(a')<g(a+a')",
        )
        lines = [
            f"d={args.d}, a+a'<={args.amax}: "
            f"{len(failures)} failing pairs {failures}"
        ]
    elif q == "convexity-scan":
        violations = scan_discrete_convexity(args.d, args.kmax)
        config = {"d": args.d, "kmax": args.kmax}
        payload = {"query": q, "violations": violations, **config}
        rules = (
            "g:positive-root-of-g(g+1)/2=h0_surface(d,a)-1",
            "convexity:g(k+1)-g(k)>g(k)-g(k-1)",
        )
        lines = [
            f"d={args.d}, k<={args.kmax}: "
            + (f"violations at {violations}" if violations else "no violations")
        ]
    else:  # small-pairs
        report = check_small_pairs(args.d, args.r)
        config = {"d": args.d, "r": args.r}
        payload = {
            "query": q,
            "ok": report.ok,
            "rows": [
                {
                    "a": row.a,
                    "a_prime": row.a_prime,
                    "mults": list(row.mults),
                    "mults_prime": list(row.mults_prime),
                    "min_v": row.min_v,
                    "required": row.required,
                    "ok": row.ok,
                }
                for row in report.rows
            ],
            **config,
        }
        rules = (
            "projective-vdim:intersection-pairing-minus-point-weights",
            "pairs:every-assignment-of-two-vdim-zero-classes",
        )
        lines = [
            f"d={args.d}, r={args.r}: "
            + ("all pair inequalities hold" if report.ok else "VIOLATIONS")
            + f" ({len(report.rows)} class pairs)"
        ]
    verdict = 0
    if q == "g-scan":
        verdict = 0 if all(tuple(p) in _KNOWN_BOUNDARY_PAIRS for p in payload["failing_pairs"]) else 1
    elif q == "convexity-scan":
        verdict = 0 if not payload["violations"] else 1
    elif q == "small-pairs":
        verdict = 0 if payload["ok"] else 1
    return f"dims {q}", config, payload, verdict, rules, lines


# ---------------------------------------------------------------------------
# classify


def _trace_steps_payload(trace) -> list[dict]:
    return [
        {
            "move": step.kind.value,
            "before": str(step.before),
            "after": str(step.after),
            "indices": list(step.indices),
            "amount": step.amount,
        }
        for step in trace.steps
    ]


def _cmd_classify(args) -> tuple[str, dict, dict, int, tuple[str, ...], list[str]]:
    mults = _parse_mults_arg(args.mults)
    config = {
        "d": args.d,
        "e": args.e,
        "mults": format_mults(mults),
        "expect": args.expect,
    }
    if args.d < 1:
        raise _UsageError("--d must be >= 1")
    if args.d == 1:
        verdict_obj = classify_planar(PlanarSeriesSpec(args.e, mults))
        spec_str = str(verdict_obj.spec)
        trace = verdict_obj.trace
        confidence = verdict_obj.confidence
    elif args.d <= 3:
        verdict_obj = classify_lowdeg(SurfaceSeriesSpec(d=args.d, e=args.e, mults=mults))
        spec_str = str(verdict_obj.spec)
        trace = verdict_obj.planar.trace
        confidence = verdict_obj.confidence
    else:
        case = verify_theorem_B(args.d, args.e, mults)
        payload = {
            "spec": str(case.spec),
            "special": case.verdict == "special",
            "dim": case.dim,
            "verdict": case.verdict,
            "trace": case.as_dict(),
        }
        rules = (f"strategy:{case.case}",)
        lines = [f"{case.spec}: {case.verdict}"
                 + (f", dim {case.dim}" if case.dim is not None else "")]
        code = 0
        if case.verdict == "inconclusive":
            code = 2
        elif args.expect is not None:
            got = "special" if case.verdict == "special" else "nonspecial"
            if got != args.expect:
                code = 1
                lines.append(f"expected {args.expect}, got {got}")
        return "classify", config, payload, code, rules, lines

    label = "special" if verdict_obj.special else "nonspecial"
    payload = {
        "spec": spec_str,
        "special": verdict_obj.special,
        "dim": verdict_obj.dim,
        "confidence": confidence,
        "terminal": str(trace.terminal),
        "steps": _trace_steps_payload(trace),
    }
    moves = sorted({f"move:{step.kind.value}" for step in trace.steps})
    rules = tuple(moves) + ("terminal:max(vdim,0)", f"confidence:{confidence}")
    lines = [
        f"{spec_str}: {label}, dim {verdict_obj.dim} "
        f"({confidence}, {len(trace.steps)} reduction steps)"
    ]
    code = 0
    if args.expect is not None and label != args.expect:
        code = 1
        lines.append(f"expected {args.expect}, got {label}")
    return "classify", config, payload, code, rules, lines


# ---------------------------------------------------------------------------
# enumerate-special


def _enumeration_entries(d: int, e_max: int, slack: int, workers: int):
    if workers <= 1 or e_max <= 1:
        return enumerate_special(d, e_max, slack).entries
    # Fan out one sweep per series degree; entries merge deterministically
    # because each verdict carries its degree and the final sort is canonical.
    def per_degree(e: int):
        return [v for v in enumerate_special(d, e, slack).entries if v.spec.e == e]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(per_degree, range(1, e_max + 1)))
    entries = [v for chunk in chunks for v in chunk]
    entries.sort(key=lambda v: (v.spec.e, tuple(-m for m in v.spec.mults)))
    return tuple(entries)


def _cmd_enumerate(args) -> tuple[str, dict, dict, int, tuple[str, ...], list[str]]:
    workers = args.workers if args.workers else _env_int("FATPOINTS_THREADS", 1)
    entries = _enumeration_entries(args.d, args.emax, args.slack, workers)
    config = {
        "d": args.d,
        "emax": args.emax,
        "slack": args.slack,
        "workers": workers,
    }
    rows = [
        {
            "e": v.spec.e,
            "mults": format_mults(v.spec.mults),
            "spec": str(v.spec),
            "dim": v.dim,
            "vdim": vdim(v.spec),
            "edim": edim(v.spec),
            "confidence": v.confidence,
        }
        for v in entries
    ]
    payload = {
        "d": args.d,
        "emax": args.emax,
        "slack": args.slack,
        "count": len(rows),
        "entries": rows,
    }
    rules = (
        "scan:imposed-degree<=h0+slack",
        "classify:planar-reduction",
        "special:dim>max(vdim,0)",
    )
    lines = [f"degree-{args.d} surface, e <= {args.emax}: {len(rows)} special series"]
    by_e: dict[int, int] = {}
    for row in rows:
        by_e[row["e"]] = by_e.get(row["e"], 0) + 1
        lines.append(
            f"  e={row['e']}: {row['spec']} dim {row['dim']} "
            f"(edim {row['edim']}, {row['confidence']})"
        )
    lines.append("per-degree counts: " + (str(by_e) if by_e else "none"))
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.DictWriter(
                handle,
                fieldnames=["e", "mults", "spec", "dim", "vdim", "edim", "confidence"],
            )
            writer.writeheader()
            writer.writerows(rows)
        lines.append(f"wrote {len(rows)} rows to {args.csv}")
    return "enumerate-special", config, payload, 0, rules, lines


# ---------------------------------------------------------------------------
# oracle


def _cmd_oracle(args) -> tuple[str, dict, dict, int, tuple[str, ...], list[str]]:
    mults = _parse_mults_arg(args.mults)
    prime = args.prime if args.prime else _env_int("FATPOINTS_PRIME", _DEFAULT_PRIME)
    spec = SurfaceSeriesSpec(d=args.d, e=args.e, mults=mults)
    config = {
        "d": args.d,
        "e": args.e,
        "mults": format_mults(mults),
        "prime": prime,
        "prime2": args.prime2 or None,
        "trials": args.trials,
        "seed": args.seed,
    }
    rules = (
        "dim:nullity-of-condition-rows-minus-surface-relations",
        "observed:min-over-trials",
        "certified:some-trial-reaches-the-expected-dimension",
    )
    cfg = OracleConfig(p=prime, seed=args.seed, trials=args.trials)
    try:
        if args.prime2:
            cross = cross_prime_verdict(spec, cfg, args.prime2)
            payload = {
                "spec": str(spec),
                "expected_dim": cross.first.expected_dim,
                "observed_dim": cross.observed_dim,
                "certified": cross.certified,
                "agreed": cross.agreed,
                "trial_dims": list(cross.first.trial_dims),
                "trial_dims_second_prime": list(cross.second.trial_dims),
            }
            certified = cross.certified
            observed = cross.observed_dim
            expected = cross.first.expected_dim
        else:
            verdict_obj = oracle_verdict(spec, cfg)
            payload = {
                "spec": str(spec),
                "expected_dim": verdict_obj.expected_dim,
                "observed_dim": verdict_obj.observed_dim,
                "certified": verdict_obj.certified,
                "trial_dims": list(verdict_obj.trial_dims),
            }
            certified = verdict_obj.certified
            observed = verdict_obj.observed_dim
            expected = verdict_obj.expected_dim
    except (BudgetExceeded, RetriesExhausted) as exc:
        payload = {"spec": str(spec), "error": str(exc)}
        return (
            "oracle", config, payload, 2, rules,
            [f"{spec}: inconclusive ({exc})"],
        )
    code = {"nonspecial-certified": 0, "special-at-instances": 1}.get(certified, 2)
    lines = [
        f"{spec}: observed dim {observed}, expected {expected}, {certified} "
        f"[p={prime}" + (f", p2={args.prime2}" if args.prime2 else "")
        + f", trials={args.trials}, seed={args.seed}]"
    ]
    return "oracle", config, payload, code, rules, lines


# ---------------------------------------------------------------------------
# degen


def _render_case(trace_dict: dict, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    lines.append(f"{pad}{trace_dict['spec']}: strategy {trace_dict['case']}")
    for step in trace_dict["steps"]:
        lines.append(f"{pad}  - {step}")
    for child in trace_dict["children"]:
        _render_case(child, indent + 1, lines)
    lines.append(
        f"{pad}  => {trace_dict['verdict']}"
        + (f", dim {trace_dict['dim']}" if trace_dict["dim"] is not None else "")
    )


def _cmd_degen_verify(args) -> tuple[str, dict, dict, int, tuple[str, ...], list[str]]:
    mults = _parse_mults_arg(args.mults)
    spec = SurfaceSeriesSpec(d=args.d, e=args.e, mults=mults)
    config = {
        "d": args.d,
        "e": args.e,
        "mults": format_mults(mults),
        "pad": bool(args.pad),
    }
    pad_needed = max(vdim(spec), 0)
    if pad_needed > 0 and not args.pad:
        raise _UsageError(
            f"{spec} has positive expected dimension {pad_needed}; pass --pad "
            "to allow adding that many simple points before verifying"
        )
    case = verify_theorem_B(args.d, args.e, mults)
    payload = case.as_dict()
    rules = (f"strategy:{case.case}",)
    lines: list[str] = []
    _render_case(payload, 0, lines)
    code = {"nonspecial": 0, "special": 1}.get(case.verdict, 2)
    return "degen verify-theorem-b", config, payload, code, rules, lines


def _cmd_degen_ledger(args) -> tuple[str, dict, dict, int, tuple[str, ...], list[str]]:
    thresholds = _parse_int_list(args.thresholds, "--thresholds")
    queue = _parse_int_list(args.queue, "--queue")
    config = {
        "thresholds": list(thresholds),
        "queue": list(queue),
        "t": args.t,
    }
    rules = (
        "band:restrict-on-curve-schemes-then-tip-one-queue-point",
        "restrict:Fat(m)->m,Delta(m,n)->m+1",
        "colon:Fat(m)->Fat(m-1),Delta(m,n)->Delta(m-1,n-1)",
    )
    try:
        trace = run_ledger(queue=queue, thresholds=thresholds, t=args.t)
    except (InsufficientMultiplicity, ResidualTipsSplit) as exc:
        payload = {"error": str(exc), "kind": type(exc).__name__}
        return (
            "degen ledger", config, payload, 2, rules,
            [f"ledger stopped: {exc}"],
        )
    payload = trace.as_dict()
    lines = []
    for event in payload["events"]:
        lines.append(
            f"band {event['band']}: {event['action']} "
            f"{event['scheme'] or 'fresh point'} contributes {event['contributed']}"
            + (f", residual {event['residual']}" if event["residual"] else "")
        )
    lines.append(
        "final residuals: "
        + (", ".join(payload["residuals"]) or "none")
        + f"; queue remaining {payload['remaining_queue']}"
    )
    if payload["general_position"] is not None:
        lines.append(f"general position: {payload['general_position']}")
    code = 0 if payload["general_position"] is not False else 1
    return "degen ledger", config, payload, code, rules, lines


# ---------------------------------------------------------------------------
# check


def _cmd_check(args) -> tuple[str, dict, dict, int, tuple[str, ...], list[str]]:
    kmax = args.kmax if args.kmax else args.amax
    failures = scan_superadditivity(args.d, args.amax)
    convexity = scan_discrete_convexity(args.d, kmax)
    pairs = check_small_pairs(args.d, args.r)
    config = {"d": args.d, "amax": args.amax, "kmax": kmax, "r": args.r}
    payload = {
        "superadditivity_failures": [list(p) for p in failures],
        "expected_boundary_pairs": [list(p) for p in _KNOWN_BOUNDARY_PAIRS],
        "convexity_violations": convexity,
        "small_pairs_ok": pairs.ok,
        **config,
    }
    ok = (
        tuple(tuple(p) for p in failures) == _KNOWN_BOUNDARY_PAIRS
        and not convexity
        and pairs.ok
    )
    rules = (
        "superadditivity:g(a)+g(a')<g(a+a')",
        "convexity:g(k+1)-g(k)>g(k)-g(k-1)",
        "boundary-pairs:(1,1),(2,1)-settled-by-small-pairs-enumeration",
    )
    lines = [
        f"superadditivity failures: {failures} "
        f"(expected exactly {list(_KNOWN_BOUNDARY_PAIRS)})",
        f"convexity violations: {convexity or 'none'}",
        f"small-pairs inequalities: {'hold' if pairs.ok else 'VIOLATED'}",
        f"verdict: {'verified' if ok else 'violated'}",
    ]
    return "check inequalities", config, payload, 0 if ok else 1, rules, lines


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the full RunReport as JSON")
    common.add_argument("--out", metavar="FILE", help="also write the RunReport JSON to FILE")

    parser = _Parser(prog="fatpoints", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fatpoints {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    dims = sub.add_parser("dims", help="dimension formulas and inequality scans")
    dims_sub = dims.add_subparsers(dest="query", required=True)
    p = dims_sub.add_parser("h0-surface", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.set_defaults(handler=_cmd_dims)
    p = dims_sub.add_parser("h0-curve", parents=[common])
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=_cmd_dims)
    p = dims_sub.add_parser("vdim", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--mults", required=True)
    p.set_defaults(handler=_cmd_dims)
    p = dims_sub.add_parser("g-scan", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--amax", type=int, default=60)
    p.set_defaults(handler=_cmd_dims)
    p = dims_sub.add_parser("convexity-scan", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--kmax", type=int, default=60)
    p.set_defaults(handler=_cmd_dims)
    p = dims_sub.add_parser("small-pairs", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=12)
    p.set_defaults(handler=_cmd_dims)

    p = sub.add_parser("classify", parents=[common], help="exact classification or strategy verification")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--mults", required=True)
    p.add_argument("--expect", choices=("special", "nonspecial"))
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("enumerate-special", parents=[common], help="table of all special series on a low-degree surface")
    p.add_argument("--d", type=int, required=True, choices=(2, 3))
    p.add_argument("--emax", type=int, required=True)
    p.add_argument("--slack", type=int, default=20)
    p.add_argument("--csv", metavar="FILE")
    p.add_argument("--workers", type=int, default=0,
                   help="sweep workers (default: FATPOINTS_THREADS or 1)")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("oracle", parents=[common], help="independent dimension measurement over a prime field")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--mults", required=True)
    p.add_argument("--prime", type=int, default=0,
                   help="default: FATPOINTS_PRIME or 32003")
    p.add_argument("--prime2", type=int, default=0,
                   help="cross-check against a second prime")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_oracle)

    degen = sub.add_parser("degen", help="degeneration strategies and the specialization ledger")
    degen_sub = degen.add_subparsers(dest="subcommand", required=True)
    p = degen_sub.add_parser("verify-theorem-b", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--mults", required=True)
    p.add_argument("--pad", action="store_true",
                   help="allow padding with simple points to vdim <= 0")
    p.set_defaults(handler=_cmd_degen_verify)
    p = degen_sub.add_parser("ledger", parents=[common])
    p.add_argument("--thresholds", required=True, help="comma list of band quotas")
    p.add_argument("--queue", required=True, help="comma list of point multiplicities")
    p.add_argument("--t", type=int, default=None,
                   help="component degree for the general-position check")
    p.set_defaults(handler=_cmd_degen_ledger)

    check = sub.add_parser("check", help="numeric inequality suites")
    check_sub = check.add_subparsers(dest="subcommand", required=True)
    p = check_sub.add_parser("inequalities", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--amax", type=int, default=60)
    p.add_argument("--kmax", type=int, default=0, help="default: amax")
    p.add_argument("--r", type=int, default=12)
    p.set_defaults(handler=_cmd_check)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 3
    start = time.perf_counter()
    try:
        command, config, payload, verdict, rules, lines = args.handler(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"fatpoints: invalid arguments: {exc}", file=sys.stderr)
        return 3
    report = RunReport(
        command=command,
        config=config,
        payload=payload,
        verdict=verdict,
        version=__version__,
        rules=tuple(rules),
        duration_s=round(time.perf_counter() - start, 6),
    )
    rendered = json.dumps(report.as_dict(), sort_keys=True, indent=1)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(rendered + "\n")
    if args.json:
        print(rendered)
    else:
        for line in lines:
            print(line)
    return report.verdict


if __name__ == "__main__":
    sys.exit(main())
