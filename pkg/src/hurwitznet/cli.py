"""Command-line interface.

Subcommands:

  summary   parse a network file and print its ribbon-graph summary
  hurwitz   Hurwitz numbers via the character formula or the S_d oracles
  series    evaluate the weight-d Schur series for a network
  verify    exact Wick-vs-series comparisons and optional Monte Carlo

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource
guard.  Every command supports --format json; rationals serialize as
decimal strings in separate numerator/denominator fields so arbitrary
precision survives JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import errors
from .characters import PowerSumPoint
from .exact import GaussianRational, Matrix, matrix
from .hurwitz import brute_force_klein, brute_force_orientable, mednykh
from .network import ChordNetwork, parse_network, ribbon_summary
from .partitions import ContentProductSpec, partition
from .rmt import TraceObservable, mc_ginibre, wick_expectation, within_sigma
from .series import (MOBIUS, PowerSumFace, SchurSeriesSpec, theorem2_rhs,
                     series_degree, theorem1_rhs)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_GUARD = 3


@dataclass(frozen=True)
class RunConfig:
    """Parsed command plus the knobs shared by the computations."""

    command: str
    format: str
    weight: int = 0
    N: int = 1
    seed: int = 0
    samples: int = 0
    threads: int = 1
    input_path: Optional[str] = None
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.weight < 0 or self.N < 1 or self.threads < 1:
            raise ValueError("invalid run configuration")


def _emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _rat_fields(value: Fraction, prefix: str) -> dict:
    return {f"{prefix}_num": str(value.numerator),
            f"{prefix}_den": str(value.denominator)}


def _gauss_fields(value: GaussianRational) -> dict:
    out = _rat_fields(value.re, "re")
    out.update(_rat_fields(value.im, "im"))
    return out


# ---------------------------------------------------------------------------
# Input parsing helpers
# ---------------------------------------------------------------------------

def _parse_rational(v) -> Fraction:
    if isinstance(v, bool):
        raise ValueError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if (isinstance(v, list) and len(v) == 2
            and all(isinstance(x, int) for x in v)):
        return Fraction(v[0], v[1])
    raise ValueError(f"not a rational: {v!r}")


def _parse_entry(v) -> GaussianRational:
    """Matrix entry: integer, or [re, im] with re/im integers or [num, den]."""
    if isinstance(v, int):
        return GaussianRational(v)
    if isinstance(v, list) and len(v) == 2:
        return GaussianRational(_parse_rational(v[0]), _parse_rational(v[1]))
    raise ValueError(f"not a matrix entry: {v!r}")


def _load_sources(path: Optional[str], N: int) -> Optional[dict]:
    if path is None:
        return None
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    out = {}
    for key, value in raw.items():
        if value == "identity":
            out[key] = "identity"
        else:
            out[key] = matrix([[_parse_entry(e) for e in row] for row in value])
            if len(out[key]) != N:
                raise errors.DimensionMismatch(
                    f"source {key} is {len(out[key])}x{len(out[key])}, want {N}")
    return out


def _load_network(path: str) -> ChordNetwork:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_network(fh.read())


def _parse_profiles(text: str) -> List[Tuple[int, ...]]:
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(p, list) for p in data):
        raise ValueError("profiles must be a JSON list of lists")
    return [partition(p) for p in data]


def _threads_default() -> int:
    env = os.environ.get("HURWITZ_THREADS")
    return max(1, int(env)) if env else 1


# ---------------------------------------------------------------------------
# summary
# ---------------------------------------------------------------------------

def cmd_summary(args) -> int:
    summary = ribbon_summary(_load_network(args.network))
    payload = summary.to_dict()
    payload["genus_tilde"] = summary.genus_tilde
    payload["genus"] = summary.genus
    lines = [f"F = {summary.F}", f"n = {summary.n}", f"V = {summary.V}",
             f"euler = {summary.euler}",
             f"genus_tilde = {summary.genus_tilde}",
             f"genus = {summary.genus}"]
    for word in summary.word_symbols():
        lines.append("word: " + " ".join(word))
    _emit(payload, args.format, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# hurwitz
# ---------------------------------------------------------------------------

def _one_hurwitz(euler: int, profiles, oracle: str) -> dict:
    if oracle == "mednykh":
        value = mednykh(euler, profiles)
    elif oracle == "orientable":
        if euler % 2:
            raise ValueError("orientable oracle needs even Euler characteristic")
        value = brute_force_orientable((2 - euler) // 2, profiles)
    elif oracle == "klein":
        if euler > 1:
            raise ValueError("klein oracle needs Euler characteristic <= 1")
        value = brute_force_klein(2 - euler, profiles)
    else:
        raise ValueError(f"unknown oracle {oracle!r}")
    payload = {"euler": euler, "profiles": [list(p) for p in profiles],
               "method": oracle}
    payload.update(_rat_fields(value, "value"))
    return payload


def cmd_hurwitz(args) -> int:
    if args.batch:
        with open(args.batch, "r", encoding="utf-8") as fh:
            queries = json.load(fh)
        results = [_one_hurwitz(q["euler"],
                                [partition(p) for p in q["profiles"]],
                                q.get("oracle", args.oracle))
                   for q in queries]
        payload = {"results": results}
        lines = [f"H_{r['euler']}({r['profiles']}) = "
                 f"{r['value_num']}/{r['value_den']}" for r in results]
        _emit(payload, args.format, lines)
        return EXIT_OK
    if args.euler is None or args.profiles is None:
        raise ValueError("need --euler and --profiles (or --batch)")
    payload = _one_hurwitz(args.euler, _parse_profiles(args.profiles),
                           args.oracle)
    value = Fraction(int(payload["value_num"]), int(payload["value_den"]))
    _emit(payload, args.format, [f"H_{args.euler} = {value}"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

def _parse_content(text: Optional[str]) -> ContentProductSpec:
    if not text:
        return ContentProductSpec()
    data = json.loads(text)
    return ContentProductSpec.of(
        a=[_parse_rational(v) for v in data.get("a", [])],
        b=[_parse_rational(v) for v in data.get("b", [])],
        shift=_parse_rational(data.get("x", 0)))


def cmd_series(args) -> int:
    if args.variant != "theorem1":
        raise ValueError(f"unknown series variant {args.variant!r}")
    summary = ribbon_summary(_load_network(args.network))
    sources = _load_sources(args.sources, args.N)
    mobius = args.mobius_faces
    if mobius >= summary.F and mobius > 0:
        raise ValueError("at least one face must carry power sums (F - e > 0)")
    n_power = summary.F - mobius
    if args.face_p:
        pvecs = json.loads(args.face_p)
        if len(pvecs) != n_power:
            raise ValueError(f"need {n_power} face power-sum vectors")
        points = [PowerSumPoint.of([_parse_rational(v) for v in vec],
                                   weight=args.d) for vec in pvecs]
    else:
        points = [PowerSumPoint.infinity(args.d) for _ in range(n_power)]
    faces = tuple(PowerSumFace(pt) for pt in points) + (MOBIUS,) * mobius
    spec = SchurSeriesSpec(weight=args.d, N=args.N, summary=summary,
                           face_weights=faces, sources=sources,
                           content=_parse_content(args.content),
                           propagator=args.propagator)
    value = theorem1_rhs(spec)
    degree = series_degree(spec)
    payload = _gauss_fields(value)
    payload.update({"degree": degree, "weight": args.d, "N": args.N,
                    "F": summary.F, "n": summary.n, "V": summary.V,
                    "euler": summary.euler, "mobius_faces": mobius})
    lines = [f"value = {value}", f"degree = {degree} (euler {summary.euler},"
             f" {mobius} Mobius faces)"]
    _emit(payload, args.format, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

_BATTERY_SOURCES = {
    "C1": [[1, 1], [0, 1]],
    "C2": [[1, 0], [0, 2]],
    "C1*": [[1, 0], [1, 1]],
    "C2*": "identity",
}

# name, network text, mu list, sources (None = identities), N
_BATTERY = [
    ("trivial_loop", "X1: z1 z1'", [[1]], None, 3),
    ("trivial_loop_d2", "X1: z1 z1'", [[2]], None, 2),
    ("example1_torus", "X1: z1 z2 z1' z2'", [[1]], None, 3),
    ("example1_torus_d2", "X1: z1 z2 z1' z2'", [[2]], None, 2),
    ("example2_nested", "X1: z1 z2 z2' z1'", [[1, 1]], None, 2),
    ("example2_sources", "X1: z1 z2 z2' z1'", [[2]], _BATTERY_SOURCES, 2),
    ("example3_star", "X1: z1 z1' z2 z2'", [[1]], _BATTERY_SOURCES, 2),
    ("example5_chain", "X1: z1 z2'\nX2: z2 z1'", [[1], [1]], None, 3),
    ("link_pair", "X1: z1\nX2: z1'", [[1], [1]], None, 2),
]


def _battery_matrix(value):
    if value == "identity":
        return "identity"
    return matrix([[_parse_entry(e) for e in row] for row in value])


def _verify_case(name: str, network: ChordNetwork, mu, sources, N: int,
                 mode: str, samples: int, seed: int, threads: int,
                 variance_scale: float) -> dict:
    summary = ribbon_summary(network)
    obs = TraceObservable(network, mu, sources, N)
    case: dict = {"name": name, "mu": [list(m) for m in obs.mu_list], "N": N,
                  "F": summary.F, "n": summary.n, "V": summary.V}
    ok = True
    exact = None
    if mode in ("wick", "both"):
        exact = wick_expectation(obs)
        series_value = theorem2_rhs(summary, sources, N, mu)
        case.update(_gauss_fields(exact))
        case["wick_equals_series"] = exact == series_value
        ok = ok and case["wick_equals_series"]
    if mode in ("mc", "both"):
        if exact is None:
            exact = wick_expectation(obs)
            case.update(_gauss_fields(exact))
        report = mc_ginibre(obs, samples, seed, threads=threads,
                            variance_scale=variance_scale)
        case["mc_estimate_re"] = report.estimate.real
        case["mc_estimate_im"] = report.estimate.imag
        case["mc_se_re"] = report.standard_error.real
        case["mc_se_im"] = report.standard_error.imag
        case["mc_samples"] = report.samples
        case["mc_within_4_sigma"] = within_sigma(report, exact)
        ok = ok and case["mc_within_4_sigma"]
    case["pass"] = ok
    return case


def cmd_verify(args) -> int:
    threads = args.threads or _threads_default()
    cases = []
    if args.network:
        if not args.mu:
            raise ValueError("--network needs --mu")
        network = _load_network(args.network)
        sources = _load_sources(args.sources, args.N)
        mu = _parse_profiles(args.mu)
        cases.append(_verify_case("cli", network, mu, sources, args.N,
                                  args.mode, args.samples, args.seed, threads,
                                  args.debug_variance_scale))
    else:
        for idx, (name, text, mu, raw_sources, N) in enumerate(_BATTERY):
            sources = None
            if raw_sources:
                sources = {k: _battery_matrix(v) for k, v in raw_sources.items()}
            cases.append(_verify_case(
                name, parse_network(text), mu, sources, N, args.mode,
                args.samples, args.seed + idx, threads,
                args.debug_variance_scale))
    all_pass = all(c["pass"] for c in cases)
    payload = {"mode": args.mode, "samples": args.samples, "seed": args.seed,
               "all_pass": all_pass, "cases": cases}
    lines = []
    for c in cases:
        status = "PASS" if c["pass"] else "FAIL"
        lines.append(f"{status} {c['name']} (N={c['N']}, mu={c['mu']})")
        if not c["pass"]:
            lines.append(f"  detail: {json.dumps(c, sort_keys=True)}")
    lines.append("all passed" if all_pass else "FAILURES present")
    _emit(payload, args.format, lines)
    return EXIT_OK if all_pass else EXIT_VERIFY_FAIL


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hurwitznet",
        description="Hurwitz numbers, chord-diagram networks and exact "
                    "Ginibre matrix-model verification")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("summary", help="ribbon-graph summary of a network file")
    p.add_argument("--network", required=True)
    add_format(p)
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("hurwitz", help="Hurwitz numbers")
    p.add_argument("--euler", type=int, default=None,
                   help="Euler characteristic of the base surface")
    p.add_argument("--profiles", default=None,
                   help='JSON list of partitions, e.g. "[[3],[3]]"')
    p.add_argument("--oracle", choices=("mednykh", "orientable", "klein"),
                   default="mednykh")
    p.add_argument("--batch", default=None,
                   help="JSON file with a list of {euler, profiles} queries")
    add_format(p)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("series", help="evaluate the weight-d Schur series")
    p.add_argument("variant", choices=("theorem1",))
    p.add_argument("--network", required=True)
    p.add_argument("--sources", default=None, help="sources JSON file")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, required=True, help="truncation weight")
    p.add_argument("--content", default=None,
                   help='content product JSON {"a": [...], "b": [...], "x": r}')
    p.add_argument("--mobius-faces", type=int, default=0,
                   help="number of trailing faces glued by Mobius sheets")
    p.add_argument("--face-p", default=None,
                   help="JSON list of power-sum vectors for the ordinary faces"
                        " (default: p_infinity per face)")
    p.add_argument("--propagator", choices=("ginibre", "unitary"),
                   default="ginibre")
    add_format(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="exact and Monte Carlo verification")
    p.add_argument("--network", default=None,
                   help="single-case network file (default: shipped battery)")
    p.add_argument("--mu", default=None, help='JSON trace partitions per loop')
    p.add_argument("--sources", default=None)
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--mode", choices=("wick", "mc", "both"), default="wick")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--threads", type=int, default=None,
                   help="worker bound (default: HURWITZ_THREADS or 1)")
    p.add_argument("--debug-variance-scale", type=float, default=1.0,
                   help="test hook: mis-scale the Ginibre variance to force "
                        "a negative control failure")
    add_format(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except errors.SizeGuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (errors.NetworkSyntaxError, errors.DuplicateDart,
            errors.MissingPartner, errors.DisconnectedNetwork,
            errors.DimensionMismatch, errors.WeightMismatch,
            errors.UnknownPair, errors.TruncationTooSmall,
            errors.SingularSpecialization, errors.ZeroDenominatorContent,
            ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
