"""Command-line interface.

Subcommands:

* ``analyze``          peripheral structure, entropic constants, and the
                       zero-error threshold of a channel given as a JSON file;
* ``pauli-crossover``  passive/active bound curves for a Pauli channel,
                       written as CSV (plus a rendered figure) with a
                       crossover summary;
* ``code-logical``     exact logical channel of the (concatenated) 5-qubit
                       code under i.i.d. Pauli noise;
* ``zero-error``       zero-error stabilization threshold.

Exit codes: 0 success, 1 I/O or parse failure, 2 domain-validation failure.
Human-readable text goes to stdout; machine-readable JSON/CSV only behind
explicit --json/--out flags.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds as bounds_mod
from . import scenario as scenario_mod
from .channel import (
    DEFAULT_TOL,
    DensityMatrix,
    channel_from_json,
    check_gns_symmetric,
    find_invariant_state,
    matrix_from_json,
)
from .errors import ItercapError, NotGnsSymmetricError, SigmaNotFullRankError
from .pauli import PauliChannel, eigenvalues, repair_probabilities
from .spectral import extract_structure, peripheral_projection, structure_to_json
from .stabilizer import concatenated_logical_channel, five_qubit_code

__all__ = ["main"]


def _parse_pauli(text: str) -> PauliChannel:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"--p expects four comma-separated numbers, got {text!r}")
    return repair_probabilities([float(x) for x in parts])


def _parse_levels(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _fmt(x: float) -> str:
    return "inf" if x == math.inf else f"{x:.12g}"


def _cmd_analyze(args) -> int:
    doc = _load_json(args.channel)
    channel = channel_from_json(doc)
    try:
        if args.sigma:
            sigma_doc = _load_json(args.sigma)
            sigma = DensityMatrix(matrix_from_json(sigma_doc.get("matrix", sigma_doc)))
        else:
            sigma = find_invariant_state(channel)
        report = check_gns_symmetric(channel, sigma)
        print(f"GNS-symmetric: {report.symmetric} "
              f"(max deviation {report.max_deviation:.3g}, "
              f"invariance deviation {report.invariance_deviation:.3g})")
        if not report.symmetric:
            raise NotGnsSymmetricError(
                f"deviation {report.max_deviation:.3g} exceeds tolerance")
        projector = peripheral_projection(channel, sigma=sigma)
        structure = extract_structure(channel, projector, sigma, seed=args.seed)
        constants = bounds_mod.compute_entropic_constants(channel, projector, sigma)
        chi_p, ic_p = bounds_mod.peripheral_capacities(structure)
        threshold = bounds_mod.zero_error_threshold(constants, 1)
        print(f"K = {structure.K}, blocks (d_k, m_k) = "
              f"{[(b.d, b.m) for b in structure.blocks]}, h0_dim = {structure.h0_dim}")
        print(f"chi(P) = {_fmt(chi_p)} bits, I_c(P) = {_fmt(ic_p)} bits")
        print(f"lambda = {_fmt(constants.lambda_gap)}")
        print(f"Lambda = {_fmt(constants.Lambda)}, Lambda_c <= {_fmt(constants.Lambda_c_ub)}")
        print(f"alpha_c >= {_fmt(constants.alpha_c_lb)}")
        print(f"zero-error threshold (1 copy): {_fmt(threshold)}")
        if args.json:
            payload = {
                "gns": {"symmetric": True, "max_deviation": report.max_deviation},
                "structure": structure_to_json(structure),
                "chi_peripheral_bits": chi_p,
                "ic_peripheral_bits": ic_p,
                "lambda_gap": constants.lambda_gap,
                "Lambda": constants.Lambda,
                "Lambda_c_ub": constants.Lambda_c_ub,
                "alpha_c_lb": constants.alpha_c_lb,
                "zero_error_threshold": threshold,
            }
            Path(args.json).write_text(_json_dumps(payload), encoding="utf-8")
        return 0
    except (NotGnsSymmetricError, SigmaNotFullRankError) as exc:
        print(f"bounds inapplicable: {type(exc).__name__}: {exc}")
        if args.json:
            payload = {"gns": {"symmetric": False, "error": str(exc)}}
            Path(args.json).write_text(_json_dumps(payload), encoding="utf-8")
        return 2


def _json_dumps(payload) -> str:
    def default(obj):
        if isinstance(obj, float) and obj == math.inf:
            return "inf"
        raise TypeError(f"not JSON serializable: {obj!r}")

    return json.dumps(payload, indent=2, default=default) + "\n"


def _cmd_pauli_crossover(args) -> int:
    p = _parse_pauli(args.p)
    cfg = scenario_mod.ScenarioConfig(
        p=p,
        t_max=args.t_max,
        t_stride=args.stride,
        delta=args.delta,
        levels=_parse_levels(args.levels),
        mode=args.mode,
    )
    curve = scenario_mod.build_bound_curve(cfg)
    scenario_mod.emit_csv(curve, args.out)
    print(f"wrote {args.out} ({curve.grid.size} rows)")
    if args.gnuplot:
        script = str(args.out) + ".gnuplot"
        scenario_mod.emit_gnuplot(curve, args.out, script)
        print(f"wrote {script}")
    if not args.no_plot:
        from .plotting import render_curve_figure

        figure_path = args.plot or str(Path(args.out).with_suffix(".png"))
        render_curve_figure(curve, figure_path)
        print(f"wrote {figure_path}")
    constants = curve.metadata["constants"]
    print(f"lambda = {_fmt(constants['lambda_gap'])}, "
          f"alpha_c >= {_fmt(constants['alpha_c_lb'])}, "
          f"Lambda_c <= {_fmt(constants['Lambda_c_ub'])}")
    for level in cfg.levels:
        tau = scenario_mod.find_crossover(curve, f"active_q_lb_l{level}", "passive_q_ub")
        if tau is None:
            print(f"crossover level {level}: none within grid")
        else:
            print(f"crossover level {level}: t* = {tau}")
    return 0


def _cmd_code_logical(args) -> int:
    p = _parse_pauli(args.p)
    result = concatenated_logical_channel(five_qubit_code(), p, args.level)
    q = result.q.as_tuple()
    print(f"level {args.level} logical channel q (I, X, Y, Z):")
    print("  " + "  ".join(f"{v:.12g}" for v in q))
    if args.json:
        payload = {"level": args.level, "p": list(p.as_tuple()), "q": list(q)}
        Path(args.json).write_text(_json_dumps(payload), encoding="utf-8")
    return 0


def _cmd_zero_error(args) -> int:
    if args.p:
        p = _parse_pauli(args.p)
        constants = scenario_mod.pauli_entropic_constants(p)
    else:
        channel = channel_from_json(_load_json(args.channel))
        sigma = find_invariant_state(channel)
        projector = peripheral_projection(channel, sigma=sigma)
        constants = bounds_mod.compute_entropic_constants(channel, projector, sigma)
    threshold = bounds_mod.zero_error_threshold(constants, args.n_copies)
    lam, lc = constants.lambda_gap, constants.Lambda_c_ub
    print(f"threshold(n) = (n ln(Lambda_c) + ln 10) / lambda "
          f"with Lambda_c <= {_fmt(lc)}, lambda = {_fmt(lam)}")
    print(f"threshold({args.n_copies}) = {_fmt(threshold)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itercap",
        description="Convergence bounds on capacities of iterated GNS-symmetric channels.",
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the randomized structure extraction (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="peripheral structure and entropic constants")
    p_an.add_argument("--channel", required=True, help="channel JSON file")
    p_an.add_argument("--sigma", help="optional invariant-state JSON file")
    p_an.add_argument("--json", help="write a JSON report to this path")
    p_an.set_defaults(func=_cmd_analyze)

    p_sc = sub.add_parser("pauli-crossover", help="passive/active bound curves and crossover")
    p_sc.add_argument("--p", required=True, help="p0,px,py,pz")
    p_sc.add_argument("--t-max", dest="t_max", type=int, required=True)
    p_sc.add_argument("--stride", type=int, default=1)
    p_sc.add_argument("--delta", type=float, default=None,
                      help="also tabulate one-shot bounds at this error")
    p_sc.add_argument("--levels", default="1,2", help="code concatenation levels")
    p_sc.add_argument("--mode", choices=("discrete", "semigroup"), default="discrete")
    p_sc.add_argument("--out", required=True, help="CSV output path")
    p_sc.add_argument("--gnuplot", action="store_true",
                      help="also emit a gnuplot script referencing the CSV")
    p_sc.add_argument("--plot", default=None,
                      help="figure output path (default: CSV path with .png)")
    p_sc.add_argument("--no-plot", action="store_true", help="skip figure rendering")
    p_sc.set_defaults(func=_cmd_pauli_crossover)

    p_cl = sub.add_parser("code-logical", help="logical channel of the 5-qubit code")
    p_cl.add_argument("--p", required=True, help="p0,px,py,pz")
    p_cl.add_argument("--level", type=int, default=1)
    p_cl.add_argument("--json", help="write a JSON report to this path")
    p_cl.set_defaults(func=_cmd_code_logical)

    p_ze = sub.add_parser("zero-error", help="zero-error stabilization threshold")
    group = p_ze.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", help="p0,px,py,pz")
    group.add_argument("--channel", help="channel JSON file")
    p_ze.add_argument("--n-copies", dest="n_copies", type=int, default=1)
    p_ze.set_defaults(func=_cmd_zero_error)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ItercapError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
