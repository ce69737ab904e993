"""Command-line front end.

Subcommands: render-param, render-julia, classify, centers, misiurewicz,
census, probe, kernel-check, verify.  Numeric output uses 17 significant
digits for reproducible diffs.  Exit codes: 2 usage error, 3 config error,
1 verify failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import atlas, boettcher, cycles, escape, topology, verify
from .config import Config, parse_config
from .errors import ConfigError, QuartdynError
from .grid import GridSpec


def _parse_complex(s: str) -> complex:
    parts = s.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected RE,IM")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _load_config(path: Optional[str]) -> Config:
    if path is None:
        return Config()
    return parse_config(path)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quartdyn",
        description="Dynamics and parameter space of -(t/4)(z^2-2)^2/(z^2-1)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render-param", help="render the parameter plane to PPM")
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("render-julia", help="render a dynamical plane to PPM")
    p.add_argument("--t", type=_parse_complex, required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("classify", help="classify one parameter")
    p.add_argument("--t", type=_parse_complex, required=True)
    p.add_argument("--max-iter", type=int, default=escape.CLASSIFY_MAX_ITER)

    p = sub.add_parser("centers", help="superattracting centers of period n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("misiurewicz", help="(j,k)-preperiodic parameters")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("census", help="component census of the parameter plane")
    p.add_argument("--period-max", type=int, default=4)
    p.add_argument("--level-max", type=int, default=3)
    p.add_argument("--res", type=int, default=2048)
    p.add_argument("--max-iter", type=int, default=800)

    p = sub.add_parser("probe", help="Jordan/Sierpinski topology probe")
    p.add_argument("--t", type=_parse_complex, required=True)
    p.add_argument("--res", type=int, default=2048)
    p.add_argument("--max-iter", type=int, default=topology.PROBE_MAX_ITER)

    p = sub.add_parser("kernel-check", help="Xi_n against sqrt(-4 E_0)")
    p.add_argument("--t", type=_parse_complex, required=True)
    p.add_argument("--n-max", type=int, default=3)

    sub.add_parser("verify", help="run the full invariant suite")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except QuartdynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "render-param":
        cfg = _load_config(args.config)
        img = atlas.render_parameter(
            cfg.grid_spec(),
            max_iter=cfg.max_iter,
            period_max=cfg.period_max,
            workers=args.workers,
            bailout_constant=cfg.bailout_constant,
        )
        out = args.out or cfg.output_path
        atlas.write_ppm(img, out)
        print(out)
        return 0

    if args.command == "render-julia":
        cfg = _load_config(args.config)
        img = atlas.render_julia(
            args.t,
            cfg.grid_spec(),
            max_iter=cfg.max_iter,
            workers=args.workers,
            bailout_constant=cfg.bailout_constant,
        )
        out = args.out or cfg.output_path
        atlas.write_ppm(img, out)
        print(out)
        return 0

    if args.command == "classify":
        v = escape.classify_parameter(args.t, max_iter=args.max_iter)
        print(v.serialize(args.t.real, args.t.imag))
        return 0

    if args.command == "centers":
        for c in cycles.find_centers(args.n):
            lam = cycles.cycle_multiplier(c, c, args.n)
            mult = abs(lam) if lam is not None else float("nan")
            print(f"{_fmt(c.real)} {_fmt(c.imag)} {args.n} {_fmt(mult)}")
        return 0

    if args.command == "misiurewicz":
        for m in cycles.find_misiurewicz(args.j, args.k):
            c = m.parameter
            print(
                f"{_fmt(c.real)} {_fmt(c.imag)} {m.cycle.period} "
                f"{_fmt(abs(m.cycle.multiplier))}"
            )
        return 0

    if args.command == "census":
        spec = GridSpec.square(0j, 3.0, args.res)
        rows = cycles.census(
            spec, period_max=args.period_max, level_max=args.level_max, max_iter=args.max_iter
        )
        print("kind period components bound raw")
        for r in rows:
            print(f"{r.kind} {r.period} {r.components_found} {r.bound} {r.raw_components}")
        return 0

    if args.command == "probe":
        rep = topology.sierpinski_probe(args.t, resolution=args.res, max_iter=args.max_iter)
        print(rep.serialize())
        return 0

    if args.command == "kernel-check":
        print("n re_xi im_xi gap")
        for n, x, gap in boettcher.kernel_table(args.t, args.n_max):
            print(f"{n} {_fmt(x.real)} {_fmt(x.imag)} {_fmt(gap)}")
        return 0

    if args.command == "verify":
        return verify.run_verify()

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
