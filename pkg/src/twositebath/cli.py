"""Command-line interface: rate tables, parameter sweeps, evolution runs,
bound-state queries, and figure-data emission.

Output contract: CSV for sweeps/curves (a '#' key=value preamble with the
full config, one header row, then rows at 17 significant digits with '\\n'
endings, byte-identical for identical config), JSON for single-point
results (flat object with config/result/diagnostics keys). Exit codes:
0 success, 2 config error, 3 numeric error.
"""

import argparse
import contextlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bound_states, born_markov, exact_rates, mfp, time_domain
from .core import (InvalidInputError, NumericsError, Occupation, Params,
                   PhysicalInputs, gamma_scale)


def _fmt(x):
    return format(float(x), ".17g")


def _config_dict(args, skip=("func", "out")):
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in skip or val is None:
            continue
        if isinstance(val, (list, tuple)):
            out[key] = ",".join(str(v) for v in val)
        else:
            out[key] = val
    return out


def _write_csv(stream, config, columns, rows):
    for key, val in sorted(config.items()):
        stream.write(f"# {key}={val}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(stream, config, result, diagnostics):
    doc = {"config": config, "result": result, "diagnostics": diagnostics}
    stream.write(json.dumps(doc, sort_keys=True, indent=2,
                            allow_nan=False) + "\n")


def _open_out(args):
    # stdout must survive the 'with' block; only real files get closed
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="ascii", newline="")
    return contextlib.nullcontext(sys.stdout)


def _parse_occ(text):
    try:
        n_p, n_m = (int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise InvalidInputError(f"occupation must be 'P,M' integers: "
                                f"{text!r}") from exc
    return Occupation(n_p, n_m)


def _parse_pair(text, what):
    try:
        p, m = (float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise InvalidInputError(f"{what} must be 'P,M' floats: "
                                f"{text!r}") from exc
    return p, m


def _axis_values(lo, hi, n, log):
    if n < 2:
        raise InvalidInputError("sweep needs at least 2 points")
    if log:
        if lo <= 0 or hi <= 0:
            raise InvalidInputError("log sweep needs positive bounds")
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def _physical_from(args):
    if args.physical is None:
        return None
    mass, lam, n_buffer = args.physical
    return PhysicalInputs(mass=mass, lam=lam, n_buffer=n_buffer,
                          a=args.a_over_lambda * lam)


# ---------------------------------------------------------------- commands

def cmd_rate_bm(args):
    config = _config_dict(args)
    config["command"] = "rate-bm"
    with _open_out(args) as stream:
        if args.sweep is not None:
            axis, lo, hi, n = args.sweep
            if axis != "s_over_lambda":
                raise InvalidInputError(
                    f"rate-bm sweeps over s_over_lambda only, got {axis!r}")
            xs = _axis_values(float(lo), float(hi), int(n), args.log)
            rows = [(x, born_markov.rate_R(x),
                     born_markov.rate_R_asymptote(x),
                     np.exp(-x * x)) for x in xs]
            _write_csv(stream, config, ["x", "rate_R", "asymptote",
                                        "gaussian"], rows)
        else:
            x = args.x
            if x is None:
                raise InvalidInputError("rate-bm needs --x or --sweep")
            result = {"x": x, "rate_R": born_markov.rate_R(x),
                      "asymptote": born_markov.rate_R_asymptote(x),
                      "gaussian": float(np.exp(-x * x))}
            _write_json(stream, config, result,
                        {"series_cutoff": born_markov.SERIES_CUTOFF})
    return 0


def cmd_gamma(args):
    config = _config_dict(args)
    config["command"] = "gamma"
    params = Params(a_over_lambda=args.a_over_lambda,
                    s_over_lambda=args.s_over_lambda)
    occ = _parse_occ(args.occ)
    occ_p = _parse_occ(args.occ_prime)
    res = exact_rates.rate_result(occ, occ_p, params)
    weak = exact_rates.gamma_weak_reference(occ, occ_p, params)
    result = {
        "gamma_re": res.gamma.real, "gamma_im": res.gamma.imag,
        "D_re": res.D.real, "D_im": res.D.imag,
        "omega": exact_rates.frequency_shift_omega(occ, params),
        "omega_prime": exact_rates.frequency_shift_omega(occ_p, params),
        "weak_limit_reference": weak,
    }
    diagnostics = {"z_max": exact_rates.Z_MAX,
                   "rel_tol": exact_rates.REL_TOL}
    phys = _physical_from(args)
    if phys is not None:
        result["gamma_scale_per_s"] = gamma_scale(phys)
    with _open_out(args) as stream:
        _write_json(stream, config, result, diagnostics)
    return 0


def cmd_evolve(args):
    config = _config_dict(args)
    config["command"] = "evolve"
    params = Params(a_over_lambda=args.a_over_lambda,
                    s_over_lambda=args.s_over_lambda)
    occ = _parse_occ(args.occ)
    occ_p = _parse_occ(args.occ_prime)
    lo, hi, n = args.t_grid
    ts = _axis_values(float(lo), float(hi), int(n), log=False)
    rows = []
    if args.mode == "bm":
        expo = born_markov.bm_exponents(occ.total, occ.relative,
                                        occ_p.total, occ_p.relative, params)
        for t in ts:
            rows.append((t, np.exp(-expo * t), 0.0))
    elif args.mode == "exact":
        res = exact_rates.rate_result(occ, occ_p, params)
        dom = (exact_rates.frequency_shift_omega(occ, params)
               - exact_rates.frequency_shift_omega(occ_p, params))
        for t in ts:
            fac = np.exp(-1j * dom * t) * np.exp(-res.D * t)
            rows.append((t, fac.real, fac.imag))
    else:
        for t in ts:
            fac = exact_rates.finite_N_factor(occ, occ_p, params, t,
                                              args.n_collisions)
            rows.append((t, fac.real, fac.imag))
    with _open_out(args) as stream:
        _write_csv(stream, config, ["t", "factor_re", "factor_im"], rows)
    return 0


def cmd_bound(args):
    config = _config_dict(args)
    config["command"] = "bound"
    ratio_p, ratio_m = _parse_pair(args.s_over_a, "--s-over-a")
    # work at s = 1: a_sigma = 1 / (s/a_sigma); ratio 0 means no scatterer
    a_p = 1.0 / ratio_p if ratio_p != 0.0 else 0.0
    a_m = 1.0 / ratio_m if ratio_m != 0.0 else 0.0
    with _open_out(args) as stream:
        if args.curve is not None:
            lo, hi, n = args.curve
            us = _axis_values(float(lo), float(hi), int(n), log=False)
            rows = [(u, (u - ratio_p) * (u - ratio_m), np.exp(-2.0 * u))
                    for u in us]
            _write_csv(stream, config, ["u", "lhs", "rhs"], rows)
            return 0
        states = bound_states.states_from_lengths(a_p, a_m, 1.0)
        result = {
            "count": len(states),
            "states": [{"q": st.q,
                        "chi_sq_re": st.chi_sq.real,
                        "chi_sq_im": st.chi_sq.imag,
                        "double_root": st.double_root}
                       for st in states],
        }
        _write_json(stream, config, result,
                    {"root_tol": bound_states.ROOT_TOL})
    return 0


def cmd_wave(args):
    config = _config_dict(args)
    config["command"] = "wave"
    params = Params(a_over_lambda=args.a_over_s, s_over_lambda=1.0)
    occ = _parse_occ(args.occ)
    inc = np.deg2rad(args.incidence_deg)
    k0_vec = args.k0 * np.array([np.sin(inc), 0.0, np.cos(inc)])
    ray_cos = np.cos(inc) if args.ray_cos is None else args.ray_cos
    ray_sin = np.sqrt(max(0.0, 1.0 - ray_cos * ray_cos))
    lo, hi, n = args.r_grid
    rows = []
    for r in _axis_values(float(lo), float(hi), int(n), log=False):
        r_vec = r * np.array([ray_sin, 0.0, ray_cos])
        psi = time_domain.scattered_wave(r_vec, args.t, k0_vec, occ, params)
        env = (time_domain.asymptotic_wave(r_vec, args.t, k0_vec, occ,
                                           params)
               - np.exp(-0.5j * args.k0 ** 2 * args.t)
               * np.exp(1j * k0_vec @ r_vec))
        rows.append((r, abs(psi), abs(env)))
    with _open_out(args) as stream:
        _write_csv(stream, config, ["r", "psi_scat_abs", "envelope_abs"],
                   rows)
    return 0


def cmd_mfp(args):
    config = _config_dict(args)
    config["command"] = "mfp"
    s = args.s_over_lambda
    with _open_out(args) as stream:
        if args.L_sweep is not None:
            lo, hi, n = args.L_sweep
            Ls = _axis_values(float(lo), float(hi), int(n), args.log)
            rows = [(L, mfp.rate_R_tilde_lengths(s, L),
                     mfp.rate_R_reference(s), mfp.suppressed_reference(s, L))
                    for L in Ls]
            _write_csv(stream, config,
                       ["L_over_lambda", "R_tilde", "R_ideal",
                        "suppressed_ref"], rows)
        else:
            if args.L_over_lambda is None:
                raise InvalidInputError("mfp needs --L-over-lambda or "
                                        "--L-sweep")
            L = args.L_over_lambda
            result = {"L_over_lambda": L, "s_over_lambda": s,
                      "R_tilde": mfp.rate_R_tilde_lengths(s, L),
                      "R_ideal": mfp.rate_R_reference(s),
                      "suppressed_ref": mfp.suppressed_reference(s, L)}
            _write_json(stream, config, result, {"k_max": mfp.K_MAX})
    return 0


def cmd_sweep(args):
    config = _config_dict(args)
    config["command"] = "sweep"
    axis, lo, hi, n = args.axis
    values = _axis_values(float(lo), float(hi), int(n), args.log)
    occ = _parse_occ(args.occ)
    occ_p = _parse_occ(args.occ_prime)
    base = {"a_over_lambda": args.a_over_lambda,
            "s_over_lambda": args.s_over_lambda}
    if axis not in base:
        raise InvalidInputError(f"unknown sweep axis {axis!r}")
    missing = [k for k, v in base.items() if v is None and k != axis]
    if missing:
        raise InvalidInputError(f"sweep needs --{missing[0].replace('_', '-')}")

    def one(val):
        here = dict(base)
        here[axis] = float(val)
        params = Params(**here)
        if args.quantity == "gamma":
            g = exact_rates.gamma_exact(occ, occ_p, params)
            return (val, g.real, g.imag)
        if args.quantity == "D":
            d = exact_rates.decoherence_D(occ, occ_p, params)
            return (val, d.real, d.imag)
        return (val, born_markov.rate_R(here["s_over_lambda"]), 0.0)

    with ThreadPoolExecutor() as pool:
        rows = list(pool.map(one, values))
    names = {"gamma": ["gamma_re", "gamma_im"],
             "D": ["D_re", "D_im"],
             "rate-bm": ["rate_R", "unused"]}[args.quantity]
    with _open_out(args) as stream:
        _write_csv(stream, config, [axis] + names, rows)
    return 0


# ----------------------------------------------------------------- parser

def build_parser():
    top = argparse.ArgumentParser(
        prog="twositebath",
        description="Collisional decoherence rates for bosons at two "
                    "sites in an ideal buffer gas (dimensionless units; "
                    "--physical converts the overall rate to SI).")
    sub = top.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("rate-bm", help="thermal interference factor R")
    p.add_argument("--x", type=float, help="evaluate R at one point")
    p.add_argument("--sweep", nargs=4,
                   metavar=("AXIS", "MIN", "MAX", "N"),
                   help="sweep axis (s_over_lambda)")
    p.add_argument("--log", action="store_true")
    add_out(p)
    p.set_defaults(func=cmd_rate_bm)

    p = sub.add_parser("gamma", help="nonperturbative pair rate")
    p.add_argument("--a-over-lambda", type=float, required=True)
    p.add_argument("--s-over-lambda", type=float, required=True)
    p.add_argument("--occ", required=True, metavar="P,M")
    p.add_argument("--occ-prime", required=True, metavar="P,M")
    p.add_argument("--physical", nargs=3, type=float,
                   metavar=("MASS", "LAM", "N_BUFFER"),
                   help="SI inputs for the rate prefactor")
    add_out(p)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("evolve", help="pair coherence factor on a time grid")
    p.add_argument("--mode", choices=("bm", "exact", "finite"),
                   default="exact")
    p.add_argument("--a-over-lambda", type=float, required=True)
    p.add_argument("--s-over-lambda", type=float, required=True)
    p.add_argument("--occ", required=True, metavar="P,M")
    p.add_argument("--occ-prime", required=True, metavar="P,M")
    p.add_argument("--t-grid", nargs=3, required=True,
                   metavar=("MIN", "MAX", "N"))
    p.add_argument("--n-collisions", type=int, default=1,
                   help="collision count for --mode finite")
    add_out(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("bound", help="two-scatterer bound states")
    p.add_argument("--s-over-a", required=True, metavar="P,M",
                   help="s/a ratios for the two sites")
    p.add_argument("--curve", nargs=3, metavar=("MIN", "MAX", "N"),
                   help="emit the crossing curves over u instead")
    add_out(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("wave", help="|psi_scat| vs radius with envelope")
    p.add_argument("--a-over-s", type=float, required=True)
    p.add_argument("--occ", required=True, metavar="P,M")
    p.add_argument("--k0", type=float, required=True,
                   help="incident wavenumber, units 1/s")
    p.add_argument("--incidence-deg", type=float, default=0.0)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r-grid", nargs=3, required=True,
                   metavar=("MIN", "MAX", "N"))
    p.add_argument("--ray-cos", type=float,
                   help="cos of the sampling ray (default: incidence)")
    add_out(p)
    p.set_defaults(func=cmd_wave)

    p = sub.add_parser("mfp", help="finite mean-free-path suppression")
    p.add_argument("--s-over-lambda", type=float, required=True)
    p.add_argument("--L-over-lambda", type=float)
    p.add_argument("--L-sweep", nargs=3, metavar=("MIN", "MAX", "N"))
    p.add_argument("--log", action="store_true")
    add_out(p)
    p.set_defaults(func=cmd_mfp)

    p = sub.add_parser("sweep", help="sweep a parameter axis")
    p.add_argument("--quantity", choices=("gamma", "D", "rate-bm"),
                   default="gamma")
    p.add_argument("--axis", nargs=4, required=True,
                   metavar=("NAME", "MIN", "MAX", "N"))
    p.add_argument("--log", action="store_true")
    p.add_argument("--a-over-lambda", type=float,
                   help="fixed value when not the sweep axis")
    p.add_argument("--s-over-lambda", type=float,
                   help="fixed value when not the sweep axis")
    p.add_argument("--occ", required=True, metavar="P,M")
    p.add_argument("--occ-prime", required=True, metavar="P,M")
    add_out(p)
    p.set_defaults(func=cmd_sweep)

    return top


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags already; keep that contract
        return exc.code if exc.code else 0
    try:
        return args.func(args)
    except InvalidInputError as exc:
        record = {"error": {"type": "config", "message": str(exc)}}
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
        return 2
    except NumericsError as exc:
        record = {"error": {"type": "numeric", "message": str(exc)}}
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
