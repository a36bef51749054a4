"""Command-line interface.

Subcommands: run (single point), sweep (grid -> CSV + sidecar JSON),
presets (list names), spectrum (eigenvalues and jump-channel table).
Exit codes: 0 success, 1 config error, 2 solver error (single-point mode).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import model
from .harness import ConfigError, RunConfig, run_point, run_sweep
from .lindblad import build_dissipators, default_gap_tol
from .presets import get_preset, list_presets
from .qlinalg import eig_hermitian
from .steadystate import SteadyStateError


def _load_config(args) -> RunConfig:
    if args.preset and args.config:
        raise ConfigError("give either --config or --preset, not both")
    if args.preset:
        cfg = get_preset(args.preset)
    elif args.config:
        cfg = RunConfig.from_file(args.config)
    else:
        raise ConfigError("one of --config or --preset is required")
    for item in getattr(args, "override", None) or []:
        key, _, raw = item.partition("=")
        if not _:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        doc = cfg.to_dict()
        _set_override(doc, key, value)
        cfg = RunConfig.from_dict(doc)
    return cfg


def _set_override(doc, path: str, value) -> None:
    parts = path.split(".")
    node = doc
    for key in parts[:-1]:
        if isinstance(node, list):
            node = node[int(key)]
        elif isinstance(node, dict):
            node = node.setdefault(key, {})
        else:
            raise ConfigError(f"cannot descend into {key!r} of {path!r}")
    if isinstance(node, list):
        node[int(parts[-1])] = value
    elif isinstance(node, dict):
        node[parts[-1]] = value
    else:
        raise ConfigError(f"cannot set {path!r}")


def _cmd_run(args) -> int:
    cfg = _load_config(args)
    record = run_point(cfg)
    doc = {
        "params": record.params,
        "observables": record.observables,
        "regime": record.regime,
        "residual": record.residual,
        "status": record.status,
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 2 if record.status.startswith("error") else 0


def _cmd_sweep(args) -> int:
    cfg = _load_config(args)
    out = args.out or cfg.output.get("path")
    if not out:
        raise ConfigError("no output path: give --out or set output.path")
    path = run_sweep(cfg, out, workers=args.workers)
    print(path)
    return 0


def _cmd_presets(_args) -> int:
    for name in list_presets():
        print(name)
    return 0


def _cmd_spectrum(args) -> int:
    cfg = _load_config(args)
    from .harness import apply_constraints, build_baths, build_system

    params = apply_constraints(cfg.base_params(), cfg.constraints)
    spec = build_system(params["system"])
    baths = build_baths(spec, params["baths"])
    h_ref = (
        model.local_hamiltonian(spec)
        if cfg.master_equation == "local"
        else model.system_hamiltonian(spec)
    )
    evals = eig_hermitian(h_ref).eigenvalues
    print(f"# reference spectrum ({cfg.master_equation} mode), dim={spec.dim}")
    print("  ".join(f"{e:.12g}" for e in evals))
    tol = cfg.gap_tol if cfg.gap_tol is not None else default_gap_tol(evals)
    print(f"# gap clustering tolerance: {tol:.3g}")
    channels = build_dissipators(spec, baths, cfg.master_equation, cfg.gap_tol)
    print(f"{'bath':>4} {'gap':>18} {'body':>4} {'eta1':>13} {'eta2':>13} {'|A|_F':>11}")
    for label, chs in channels.items():
        for ch in chs:
            print(
                f"{label:>4} {ch.energy_gap:>18.12g} {ch.body_order:>4d} "
                f"{ch.eta1:>13.6g} {ch.eta2:>13.6g} "
                f"{np.linalg.norm(ch.operator):>11.6g}"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtm-sim",
        description="Steady-state thermodynamics of multi-qubit absorption refrigerators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_options(p):
        p.add_argument("--config", help="run configuration JSON file")
        p.add_argument("--preset", help="named preset (see 'presets')")
        p.add_argument(
            "--override", action="append", metavar="KEY=VALUE",
            help="dotted-path config override, value parsed as JSON "
                 "(repeatable)",
        )

    p_run = sub.add_parser("run", help="solve a single point, print a JSON record")
    add_config_options(p_run)
    p_run.add_argument("--out", help="write the record here instead of stdout")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run the configured grid, write CSV")
    add_config_options(p_sweep)
    p_sweep.add_argument("--out", help="CSV output path (default: output.path)")
    p_sweep.add_argument("--workers", type=int, default=None,
                         help="thread pool size (default: min(4, cpus))")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_presets = sub.add_parser("presets", help="list preset names")
    p_presets.set_defaults(func=_cmd_presets)

    p_spec = sub.add_parser(
        "spectrum", help="dump reference eigenvalues and the jump-channel table"
    )
    add_config_options(p_spec)
    p_spec.set_defaults(func=_cmd_spectrum)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except SteadyStateError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
