"""Command-line interface.

Subcommands: ``compute`` (single-state measures with component
breakdowns), ``table`` (the published-table layout for molecule
presets), ``sweep`` (CSV parameter sweeps for plotting), ``validate``
(the cross-validation suite).  Exit codes: 0 success, 1 computation or
validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings
from contextlib import nullcontext
from typing import IO

from . import molecules
from .measures import fisher_closed, renyi, shannon_closed, tsallis, wq_closed
from .oracle import AccuracyError, fisher_numeric, shannon_numeric, wq_numeric
from .specfun import (
    CancellationWarning,
    SeriesSingularError,
    TruncationError,
    ValidityWarning,
)
from .system import (
    AngularMode,
    StateSpec,
    SystemParams,
    UnboundAngularError,
    make_params,
    solve_state,
)
from .validation import run_checks

MEASURES = ("fisher", "shannon", "tsallis", "renyi", "wq", "energy")
UNIT_CHOICES = ("raw", "converted")


def _fmt(x: float) -> str:
    return "%.10g" % x


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")


def _add_state_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--n", type=int, default=0, help="radial quantum number (>= 0)")
    sub.add_argument("--m", type=int, default=0, help="angular quantum number (>= 0)")
    sub.add_argument(
        "--mode", choices=("cosine", "mathieu"), default="cosine",
        help="angular profile: closed-form cosine or numeric even solution",
    )
    sub.add_argument(
        "--method", choices=("series", "matrix"), default="series",
        help="angular eigenvalue route: power series or tridiagonal matrix",
    )


def _add_param_flags(sub: argparse.ArgumentParser, with_preset: bool = True) -> None:
    sub.add_argument("--De", type=float, help="well depth (hartree)")
    sub.add_argument("--re", type=float, help="equilibrium distance (bohr)")
    sub.add_argument("--D", type=float, default=0.0,
                     help="dipole strength (hartree*bohr^2)")
    sub.add_argument("--delta", type=float, default=0.0,
                     help="flux ratio (dimensionless)")
    sub.add_argument("--mu", type=float, default=None,
                     help="reduced mass (electron masses); default 1 or preset value")
    if with_preset:
        sub.add_argument("--preset", help="molecule preset name (e.g. Cs2, Li2, SiSn)")
        sub.add_argument("--preset-file", help="JSON file merged over built-in presets")
        sub.add_argument(
            "--units", choices=UNIT_CHOICES, default="raw",
            help="preset interpretation: 'raw' uses the tabulated numbers as "
            "atomic-unit values with mu=1 (reproduces the published tables); "
            "'converted' applies the physical unit conversion",
        )
        sub.add_argument(
            "--mu-convention", choices=molecules.MU_CONVENTIONS, default="nist",
            help="reduced-mass convention for --units converted",
        )


def _params_from_args(parser: argparse.ArgumentParser,
                      args: argparse.Namespace) -> tuple[SystemParams, str]:
    """Build SystemParams from either a preset or explicit values."""
    preset_name = getattr(args, "preset", None)
    if preset_name and (args.De is not None or args.re is not None):
        parser.error("--preset and explicit --De/--re are mutually exclusive")
    if preset_name:
        preset = molecules.get_preset(preset_name, getattr(args, "preset_file", None))
        if args.units == "raw":
            params = molecules.raw_number_params(preset, Dm=args.D, delta=args.delta)
            note = f"preset {preset.name}, raw-numbers interpretation (mu=1)"
        else:
            params = molecules.to_atomic_units(
                preset, Dm=args.D, delta=args.delta, mu_convention=args.mu_convention
            )
            note = f"preset {preset.name}, converted units ({args.mu_convention} mass)"
        if args.mu is not None:
            params = make_params(De=params.De, re=params.re, Dm=params.Dm,
                                 delta=params.delta, mu=args.mu)
            note += f", mu overridden to {args.mu}"
        return params, note
    if args.De is None or args.re is None:
        parser.error("either --preset or both --De and --re are required")
    mu = 1.0 if args.mu is None else args.mu
    params = make_params(De=args.De, re=args.re, Dm=args.D, delta=args.delta, mu=mu)
    return params, "explicit parameters"


def _mode_of(args: argparse.Namespace) -> AngularMode:
    return AngularMode.PAPER_COSINE if args.mode == "cosine" else AngularMode.MATHIEU_NUMERIC


def _parse_measures(parser: argparse.ArgumentParser, text: str) -> list[str]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    bad = [name for name in names if name not in MEASURES]
    if bad:
        parser.error(f"unknown measure(s) {bad}; choose from {', '.join(MEASURES)}")
    if not names:
        parser.error("no measure given")
    return names


def cmd_compute(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    params, note = _params_from_args(parser, args)
    measures = _parse_measures(parser, args.measure)
    if args.q < 2 and ({"tsallis", "renyi"} & set(measures)):
        parser.error("--q must be an integer >= 2 for tsallis/renyi")
    if args.q < 1 and "wq" in measures:
        parser.error("--q must be an integer >= 1 for wq")
    spec = StateSpec(args.n, args.m)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        state = solve_state(params, spec, mode=_mode_of(args), method=args.method)
        lines = [
            f"state: n={spec.n_r} m={spec.m} delta={_fmt(params.delta)} "
            f"D={_fmt(params.Dm)} mode={args.mode} method={args.method}",
            f"parameters: De={_fmt(params.De)} re={_fmt(params.re)} "
            f"mu={_fmt(params.mu)} ({note})",
            f"solution: b={_fmt(state.b)} E_theta={_fmt(state.e_theta)} "
            f"lambda={_fmt(state.lam)} beta={_fmt(state.beta)}",
        ]
        # Closed forms assume the cosine angular convention; under the
        # numeric angular profile the oracle routes carry the measures.
        cosine = state.mode is AngularMode.PAPER_COSINE

        def moment(q: int) -> float:
            return wq_closed(params, state, q).Wq if cosine else wq_numeric(params, state, q)

        for name in measures:
            if name == "fisher":
                f = fisher_closed(params, state) if cosine else fisher_numeric(params, state)
                route = "closed form" if cosine else "quadrature"
                lines.append(
                    f"fisher: I={_fmt(f.I)} (radial I1={_fmt(f.I1)}, "
                    f"angular I2={_fmt(f.I2)}; {route})"
                )
            elif name == "shannon":
                s_num = shannon_numeric(params, state)
                s = shannon_closed(params, state)
                lines.append(f"shannon: S={_fmt(s_num)} (quadrature)")
                lines.append(
                    f"shannon closed form (asymptotic): S={_fmt(s.S)} "
                    f"[S1={_fmt(s.S1)} S2={_fmt(s.S2)} S3={_fmt(s.S3)} S4={_fmt(s.S4)}]"
                )
            elif name == "tsallis":
                w = moment(args.q)
                lines.append(
                    f"tsallis: T_{args.q}={_fmt((1.0 - w) / (args.q - 1.0))} "
                    f"(W_{args.q}={_fmt(w)})"
                )
            elif name == "renyi":
                w = moment(args.q)
                lines.append(
                    f"renyi: R_{args.q}={_fmt(math.log(w) / (1.0 - args.q))} "
                    f"(W_{args.q}={_fmt(w)})"
                )
            elif name == "wq":
                lines.append(f"entropic moment: W_{args.q}={_fmt(moment(args.q))}")
            elif name == "energy":
                lines.append(
                    f"energy: E={_fmt(state.energy)} E_total={_fmt(state.energy_total)}"
                )
    for warning in caught:
        print(f"warning: {warning.message}", file=sys.stderr)
    if caught:
        lines.append(f"flags: {len(caught)} warning(s), see stderr")
    print("\n".join(lines))
    return 0


def _open_output(path: str | None) -> IO[str]:
    if path is None or path == "-":
        return nullcontext(sys.stdout)  # type: ignore[return-value]
    return open(path, "w", encoding="utf-8", newline="")


def cmd_sweep(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    if args.steps < 2:
        parser.error("--steps must be >= 2")
    if not args.start < args.stop:
        parser.error("--from must be < --to")
    measures = _parse_measures(parser, args.measure)
    if len(measures) != 1:
        parser.error("sweep takes exactly one --measure")
    measure = measures[0]
    if args.var != "De" and args.De is None:
        parser.error("--De is required when it is not the swept variable")
    deltas = sorted(args.deltas)
    if args.var == "delta":
        deltas = [None]  # the swept value supplies the flux ratio

    step = (args.stop - args.start) / (args.steps - 1)
    grid = [args.start + i * step for i in range(args.steps)]
    mode = _mode_of(args)

    def one(value: float, delta: float | None) -> tuple[float, float]:
        De = value if args.var == "De" else args.De
        Dm = value if args.var == "D" else args.D
        dl = value if args.var == "delta" else delta
        params = make_params(De=De, re=args.re, Dm=Dm, delta=dl,
                             mu=1.0 if args.mu is None else args.mu)
        state = solve_state(params, StateSpec(args.n, args.m),
                            mode=mode, method=args.method)
        # Same routing as compute: closed forms in the cosine convention,
        # oracle quadrature under the numeric angular profile.
        cosine = mode is AngularMode.PAPER_COSINE
        if measure == "fisher":
            out = (fisher_closed(params, state) if cosine
                   else fisher_numeric(params, state)).I
        elif measure == "shannon":
            out = shannon_numeric(params, state)
        elif measure == "tsallis":
            out = (tsallis(params, state, args.q) if cosine
                   else (1.0 - wq_numeric(params, state, args.q)) / (args.q - 1.0))
        elif measure == "renyi":
            out = (renyi(params, state, args.q) if cosine
                   else math.log(wq_numeric(params, state, args.q)) / (1.0 - args.q))
        elif measure == "wq":
            out = wq_closed(params, state, args.q).Wq if cosine \
                else wq_numeric(params, state, args.q)
        else:
            out = state.energy
        return out, dl

    rows = []
    messages: dict[str, None] = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for value in grid:
            for delta in deltas:
                result, dl = one(value, delta)
                rows.append((args.var, value, result, dl, args.n, args.m))
        for warning in caught:
            messages.setdefault(str(warning.message))
    for message in messages:
        print(f"warning: {message}", file=sys.stderr)

    with _open_output(args.output) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["var", "value", "measure", "delta", "n", "m"])
        for var, value, result, dl, n, m in rows:
            writer.writerow([var, _fmt(value), _fmt(result), _fmt(dl), n, m])
    return 0


def cmd_table(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    names = [part.strip() for part in args.presets.split(",") if part.strip()]
    if not names:
        parser.error("--presets must name at least one molecule")
    presets = {name: molecules.get_preset(name, args.preset_file) for name in names}
    if args.q < 2:
        parser.error("--q must be an integer >= 2 for the closed-form entropies")

    params_map: dict[str, SystemParams] = {}
    mass_notes = []
    for name, preset in presets.items():
        if args.units == "raw":
            params_map[name] = molecules.raw_number_params(
                preset, Dm=args.D, delta=args.delta
            )
            mass_notes.append(f"{name}: mu=1 (raw)")
        else:
            params_map[name] = molecules.to_atomic_units(
                preset, Dm=args.D, delta=args.delta, mu_convention=args.mu_convention
            )
            mass_notes.append(f"{name}: mu={_fmt(params_map[name].mu)}")

    n_values, m_values = (1, 2, 4, 6, 8), (0, 1, 2)
    left = ("I", "S") if args.tables == 1 else ("T", "R")
    header = ["n", "m"] + [f"{meas}({name})" for meas in left for name in names]

    body: list[list[str]] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for n in n_values:
            for m in m_values:
                cells = []
                for meas in left:
                    for name in names:
                        params = params_map[name]
                        state = solve_state(params, StateSpec(n, m),
                                            method=args.method)
                        if meas == "I":
                            value = fisher_closed(params, state).I
                        elif meas == "S":
                            value = shannon_numeric(params, state)
                        elif meas == "T":
                            value = tsallis(params, state, args.q)
                        else:
                            value = renyi(params, state, args.q)
                        cells.append(value)
                body.append([str(n), str(m)] + [
                    (_fmt(v) if args.format == "csv" else "%.6g" % v) for v in cells
                ])
    for message in {str(w.message) for w in caught}:
        print(f"warning: {message}", file=sys.stderr)

    units_note = (
        "raw-numbers interpretation (tabulated De/re used as atomic-unit values)"
        if args.units == "raw" else f"converted units, {args.mu_convention} masses"
    )
    footer = [
        f"q = {args.q} (Tsallis/Renyi order); delta = {_fmt(args.delta)}; "
        f"D = {_fmt(args.D)}",
        f"units: {units_note}; reduced masses: " + ", ".join(mass_notes),
        "Shannon column computed by quadrature of the exact density",
    ]
    with _open_output(args.output) as handle:
        if args.format == "csv":
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(body)
            for line in footer:
                handle.write(f"# {line}\n")
        else:
            widths = [max(len(h), *(len(row[i]) for row in body))
                      for i, h in enumerate(header)]
            def md_row(cells: list[str]) -> str:
                return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
            handle.write(md_row(header) + "\n")
            handle.write("|" + "|".join("-" * (w + 2) for w in widths) + "|\n")
            for row in body:
                handle.write(md_row(row) + "\n")
            for line in footer:
                handle.write(f"\n_{line}_\n")
    return 0


def cmd_validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    names = None
    if args.checks:
        names = [part.strip() for part in args.checks.split(",") if part.strip()]
    with warnings.catch_warnings():
        # The checks deliberately walk into warned-about territory
        # (out-of-range couplings, cancelling sums); the verdict lines
        # already carry the outcome.
        warnings.simplefilter("ignore", CancellationWarning)
        warnings.simplefilter("ignore", ValidityWarning)
        results = run_checks(names, progress=lambda r: print(r.line(), flush=True))
    failed = [r for r in results if not r.passed]
    print(f"{len(results)} checks: {len(results) - len(failed)} passed, "
          f"{len(failed)} failed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kratzer2d",
        description="Bound states and information measures of a planar "
        "Kratzer-type molecular potential with a dipole term and a "
        "magnetic-flux line.",
    )
    parser.add_argument("--config", help="JSON file of default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="measures for a single state")
    _add_param_flags(p_compute)
    _add_state_flags(p_compute)
    p_compute.add_argument("--measure", default="fisher",
                           help="comma list from: " + ", ".join(MEASURES))
    p_compute.add_argument("--q", type=int, default=2,
                           help="entropy order for tsallis/renyi/wq (integer >= 2)")
    p_compute.set_defaults(func=cmd_compute)

    p_table = sub.add_parser("table", help="published-table layout for presets")
    p_table.add_argument("--tables", type=int, choices=(1, 2), default=1,
                         help="1: Fisher/Shannon; 2: Tsallis/Renyi")
    p_table.add_argument("--presets", default="Cs2,Li2,SiSn",
                         help="comma list of preset names")
    p_table.add_argument("--preset-file", help="JSON file merged over built-ins")
    p_table.add_argument("--delta", type=float, default=0.2)
    p_table.add_argument("--D", type=float, default=0.4)
    p_table.add_argument("--q", type=int, default=2,
                         help="Tsallis/Renyi order (recorded in the footer)")
    p_table.add_argument("--units", choices=UNIT_CHOICES, default="raw")
    p_table.add_argument("--mu-convention", choices=molecules.MU_CONVENTIONS,
                         default="nist")
    p_table.add_argument("--method", choices=("series", "matrix"), default="series")
    p_table.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    p_table.add_argument("--output", help="output path (default stdout)")
    p_table.set_defaults(func=cmd_table)

    p_sweep = sub.add_parser("sweep", help="CSV sweep over De, D, or delta")
    p_sweep.add_argument("--var", choices=("De", "D", "delta"), required=True)
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--deltas", type=_float_list, default=[0.0],
                         help="comma list of flux ratios (ignored when --var delta)")
    p_sweep.add_argument("--De", type=float, help="well depth when not swept")
    p_sweep.add_argument("--re", type=float, default=1.0)
    p_sweep.add_argument("--D", type=float, default=0.0)
    p_sweep.add_argument("--mu", type=float, default=None)
    _add_state_flags(p_sweep)
    p_sweep.add_argument("--measure", default="fisher")
    p_sweep.add_argument("--q", type=int, default=2)
    p_sweep.add_argument("--output", help="output path (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_validate = sub.add_parser("validate", help="run the cross-validation suite")
    p_validate.add_argument("--checks", help="comma list of check names (default all)")
    p_validate.set_defaults(func=cmd_validate)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    """Use a JSON file of flag values as parse-time defaults."""
    path = None
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif token.startswith("--config="):
            path = token.split("=", 1)[1]
    if path is None:
        return
    with open(path, encoding="utf-8") as handle:
        config = json.load(handle)
    if not isinstance(config, dict):
        raise ValueError("--config must hold a JSON object of flag values")
    config = {str(k).replace("-", "_"): v for k, v in config.items()}
    for action in parser._subparsers._group_actions:  # noqa: SLF001
        if isinstance(action, argparse._SubParsersAction):  # noqa: SLF001
            for sub in action.choices.values():
                dests = {a.dest for a in sub._actions}  # noqa: SLF001
                sub.set_defaults(**{k: v for k, v in config.items() if k in dests})


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(parser, args)
    except SeriesSingularError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: retry with --method matrix", file=sys.stderr)
        return 1
    except (UnboundAngularError, TruncationError,
            AccuracyError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        detail = exc.args[0] if exc.args else exc
        print(f"error: {detail}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
