"""Command-line front end: JSON configs in, JSON/CSV reports out.

Four subcommands cover the library surface: `analyze` prints the spectral
and structural certificates of a configured operator, `sweep` emits one CSV
row per relaxation parameter, `demo` replays the golden worked examples,
and `verify` runs the randomized graph-pair consistency check. All output
is deterministic for a fixed config and seed; floats are printed with 12
significant digits.

Exit status: 0 on success, 1 when a check fails, 2 on configuration errors.
"""

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import experiments, graphs, splitting, subspaces
from ._rng import SplitMix64


class ConfigError(Exception):
    """Configuration file is malformed; the message names the bad field."""


def _fmt(x):
    return f"{float(x):.12g}"


def _sig12(x):
    return float(_fmt(x))


@dataclass
class ExperimentConfig:
    graph_pair: graphs.GraphPair
    spaces: subspaces.ProductSubspace
    thetas: list
    eps: float
    k_max: int
    seed: int
    v0: object  # numpy vector or the string "random"


def _expand_thetas(spec):
    if isinstance(spec, dict):
        for key in ("start", "stop", "step"):
            if key not in spec:
                raise ConfigError(f'thetas: missing "{key}" in range form')
        start, stop, step = float(spec["start"]), float(spec["stop"]), float(spec["step"])
        if step <= 0.0:
            raise ConfigError("thetas: step must be positive")
        values = []
        k = 0
        while True:
            theta = start + k * step
            if theta > stop + 1e-9:
                break
            values.append(theta)
            k += 1
        return values
    if isinstance(spec, list):
        return [float(t) for t in spec]
    raise ConfigError("thetas: expected a list or {start, stop, step}")


def load_config(obj, seed=None, eps=None):
    """Build an ExperimentConfig from a decoded JSON object.

    Command-line --seed and --eps take precedence over the file values.
    """
    if not isinstance(obj, dict):
        raise ConfigError("config: top level must be an object")
    if "graph" not in obj:
        raise ConfigError('config: missing "graph"')
    try:
        g = graphs.from_json(obj["graph"])
    except (graphs.GraphError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"graph: {exc}") from exc
    try:
        gp = graphs.from_json(obj["subgraph"]) if "subgraph" in obj else None
        pair = graphs.pair(g, gp)
    except (graphs.GraphError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"subgraph: {exc}") from exc

    if "ambient" not in obj:
        raise ConfigError('config: missing "ambient"')
    ambient = int(obj["ambient"])
    if ambient < 1:
        raise ConfigError("ambient: must be at least 1")

    fragments = obj.get("spaces")
    if not isinstance(fragments, list) or len(fragments) != g.n:
        raise ConfigError(f"spaces: need a list of exactly {g.n} subspace fragments")
    factors = []
    for idx, fragment in enumerate(fragments, start=1):
        try:
            factors.append(subspaces.from_json(fragment, ambient))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"spaces[{idx}]: {exc}") from exc

    thetas = _expand_thetas(obj.get("thetas", []))
    for theta in thetas:
        if not 0.0 < theta < 2.0:
            raise ConfigError(f"thetas: {theta} outside the open interval (0, 2)")

    eps_value = float(eps if eps is not None else obj.get("eps", experiments.DEFAULT_EPS))
    if eps_value <= 0.0:
        raise ConfigError("eps: must be positive")
    k_max = int(obj.get("k_max", experiments.DEFAULT_K_MAX))
    if k_max < 1:
        raise ConfigError("k_max: must be at least 1")
    seed_value = int(seed if seed is not None else obj.get("seed", 0))

    v0 = obj.get("v0", "random")
    if v0 != "random":
        flat = np.asarray(v0, dtype=float).ravel()
        if flat.shape[0] != (g.n - 1) * ambient:
            raise ConfigError(f"v0: expected {(g.n - 1) * ambient} numbers, got {flat.shape[0]}")
        v0 = flat

    return ExperimentConfig(
        graph_pair=pair,
        spaces=subspaces.product(factors),
        thetas=thetas,
        eps=eps_value,
        k_max=k_max,
        seed=seed_value,
        v0=v0,
    )


def _start_vector(config, op):
    if isinstance(config.v0, str):
        return SplitMix64(config.seed).normals(op.size)
    return config.v0


def cmd_analyze(config):
    """Spectral report of the configured operator as a JSON-ready dict."""
    op = splitting.build(config.graph_pair, config.spaces)
    report = splitting.spectral_report(op.T)
    eigenvalues = sorted(
        (_sig12(lam.real), _sig12(lam.imag)) for lam in report.eigenvalues
    )
    out = {
        "normality_defect": _sig12(report.normality_defect),
        "iso_defect": _sig12(report.iso_defect),
        "is_normal": report.is_normal,
        "is_iso_averaged": report.is_iso_averaged,
        "eigenvalues": [{"re": re, "im": im} for re, im in eigenvalues],
        "rho1": _sig12(report.rho1),
        "fix_dim": report.fix_dim,
    }
    if op.n == 2:
        out["friedrichs_cosine"] = _sig12(
            subspaces.friedrichs_cosine(config.spaces.factors[0], config.spaces.factors[1])
        )
    return out


def cmd_sweep(config):
    """CSV text: one convergence run per configured relaxation parameter."""
    op = splitting.build(config.graph_pair, config.spaces)
    v0 = _start_vector(config, op)
    records = experiments.theta_sweep(op, config.thetas, v0, eps=config.eps, k_max=config.k_max)
    lines = ["theta,k_stop,rho1_predicted,rho1_measured"]
    for rec in records:
        k_stop = "" if rec.k_stop is None else str(rec.k_stop)
        measured = "" if rec.rho1_measured is None else _fmt(rec.rho1_measured)
        lines.append(f"{_fmt(rec.theta)},{k_stop},{_fmt(rec.rho1_predicted)},{measured}")
    return "\n".join(lines) + "\n"


def _demo_text(report):
    lines = [f"example {report.name}: {'PASS' if report.passed else 'FAIL'}"]
    for line in report.lines:
        tag = "pass" if line.passed else "FAIL"
        lines.append(f"  [{tag}] {line.label}: measured {line.measured}, expected {line.expected}")
    return lines


def cmd_demo(name):
    """Replay golden examples; returns (text, all_passed)."""
    names = experiments.demo_names() if name == "all" else [name]
    out = []
    ok = True
    for demo_name in names:
        report = experiments.run_demo(demo_name)
        ok = ok and report.passed
        out.extend(_demo_text(report))
    return "\n".join(out) + "\n", ok


def cmd_verify(seed, trials):
    """Randomized graph-pair consistency report; returns (text, all_consistent)."""
    records = experiments.graph_equality_trials(seed, trials)
    lines = []
    total = good = 0
    by_pair = {}
    for rec in records:
        by_pair.setdefault(rec.pair_name, []).append(rec)
    for pair_name, recs in by_pair.items():
        n_ok = sum(r.consistent for r in recs)
        total += len(recs)
        good += n_ok
        relation = "G = G'" if recs[0].same else "G != G'"
        lines.append(f"pair {pair_name} ({relation}): {n_ok}/{len(recs)} trials consistent")
    lines.append(
        f"summary: {good}/{total} trials consistent with the graph-equality characterization"
    )
    return "\n".join(lines) + "\n", good == total


def _read_config(path, seed, eps):
    try:
        if path is None:
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path!r}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    return load_config(obj, seed=seed, eps=eps)


def _emit(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="graphsplit",
        description="Graph splitting operators on subspaces: certificates, sweeps, examples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("analyze", "print the spectral/structural report of a configured operator"),
        ("sweep", "CSV of stop iteration and rates per relaxation parameter"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="config JSON path (default: standard input)")
        cmd.add_argument("--seed", type=int, help="override the config seed")
        cmd.add_argument("--eps", type=float, help="override the config stopping tolerance")
        cmd.add_argument("--out", help="write output to this path instead of stdout")

    demo = sub.add_parser("demo", help="replay a golden worked example (or 'all')")
    demo.add_argument("name")
    demo.add_argument("--out", help="write output to this path instead of stdout")

    verify = sub.add_parser("verify", help="randomized graph-pair consistency check")
    verify.add_argument("--seed", type=int, default=1)
    verify.add_argument("--trials", type=int, default=20)
    verify.add_argument("--out", help="write output to this path instead of stdout")

    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            config = _read_config(args.config, args.seed, args.eps)
            _emit(json.dumps(cmd_analyze(config), indent=2) + "\n", args.out)
            return 0
        if args.command == "sweep":
            config = _read_config(args.config, args.seed, args.eps)
            _emit(cmd_sweep(config), args.out)
            return 0
        if args.command == "demo":
            text, ok = cmd_demo(args.name)
            _emit(text, args.out)
            return 0 if ok else 1
        text, ok = cmd_verify(args.seed, args.trials)
        _emit(text, args.out)
        return 0 if ok else 1
    except experiments.UnknownExampleError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
