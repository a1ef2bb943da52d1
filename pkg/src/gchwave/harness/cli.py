"""Command line entry point: simulate, certify, verify, sweep, preset."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from ..model import rotation_constants
from ..symbolic import verify as symverify
from .config import REFERENCE, ConfigError, dump, load
from .presets import SCENARIOS, scenario
from .report import emit_json, write_outputs
from .runner import EXIT_CONFIG, certificates, run
from .sweep import sweep


def _config(args):
    if args.preset and args.config:
        raise ConfigError("give a config file or --preset, not both")
    if args.preset:
        return scenario(args.preset)
    if not args.config:
        raise ConfigError("a config file or --preset is required")
    return load(args.config)


def cmd_simulate(args) -> int:
    cfg = _config(args)
    res = run(cfg, wall_time=args.wall_time)
    jp, cp = write_outputs(args.out, cfg.name, res.report, res.rows)
    r = res.report
    print(f"{cfg.name}: {r['classification']} ({r['run']['status']} at t={r['run']['t_stop']:.6g})"
          f" -> {cp}, {jp}")
    return res.exit_code


def cmd_certify(args) -> int:
    cfg = _config(args)
    text = emit_json({"config": cfg.to_dict(), "certificates": certificates(cfg)})
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    names = args.identities or ["all"]
    try:
        verdicts, timing = symverify.run(names)
    except KeyError as exc:
        print(f"unknown identity {exc.args[0]!r}; choose from "
              f"{sorted(symverify.IDENTITIES)} or all", file=sys.stderr)
        return EXIT_CONFIG
    ok = all(v.passed for v in verdicts)
    if args.json:
        sys.stdout.write(emit_json({"passed": ok, "verdicts": [v.as_dict() for v in verdicts]}))
    else:
        for v in verdicts:
            print(f"{v.identity:17s} {v.check:26s} terms={v.terms:<4d} {'PASS' if v.passed else 'FAIL'}"
                  + (f"  {v.detail}" if v.detail and not v.passed else ""))
        for k, t in timing.items():
            print(f"# {k}: {t:.3f} s")
    return 0 if ok else 1


def cmd_sweep(args) -> int:
    cfg = _config(args)
    if not args.axis:
        raise ConfigError("at least one --axis is required")
    rows = sweep(cfg, args.axis, args.out, args.workers)
    failed = sum(1 for r in rows if r["error"])
    print(f"{len(rows)} runs, {failed} failed -> {args.out}/summary.csv")
    return 0


def cmd_preset(args) -> int:
    if args.reference:
        sys.stdout.write(REFERENCE)
    elif args.list:
        for name in sorted(SCENARIOS):
            print(name)
    elif args.show:
        sys.stdout.write(dump(scenario(args.show)))
    else:
        sys.stdout.write(json.dumps(rotation_constants(args.omega).as_dict(), indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gchwave", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def cfg_args(p):
        p.add_argument("config", nargs="?", help="YAML run configuration")
        p.add_argument("--preset", choices=sorted(SCENARIOS), help="named scenario instead of a file")

    p = sub.add_parser("simulate", help="integrate and write CSV + JSON report")
    cfg_args(p)
    p.add_argument("--out", default="out")
    p.add_argument("--wall-time", action="store_true", help="record wall time (breaks byte stability)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("certify", help="evaluate certificates without time stepping")
    cfg_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="exact symbolic identity checks")
    p.add_argument("identities", nargs="*", help=f"any of {sorted(symverify.IDENTITIES)} or all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run a grid of configurations")
    cfg_args(p)
    p.add_argument("--axis", action="append", default=[], help="path=v1,v2 or path=lo:hi:num")
    p.add_argument("--out", default="sweep")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("preset", help="rotation constants, scenario listing, config reference")
    p.add_argument("--omega", type=float, default=0.0)
    p.add_argument("--list", action="store_true")
    p.add_argument("--show", choices=sorted(SCENARIOS))
    p.add_argument("--reference", action="store_true")
    p.set_defaults(func=cmd_preset)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
