"""Command-line front end: reproducible verification and integration reports.

Subcommands:

* ``verify``    run the exact theorem certificates for a family (or a range
                of n) and emit a PASS/FAIL report; exit 0 iff all pass.
* ``integrate`` integrate one trajectory, write the CSV and a summary JSON;
                optional h-sweep with a measured convergence order.
* ``symmetry``  apply a map to a numeric phase point / parameter set, and
                optionally run the trajectory-level finite-difference check.

Exit codes: 0 = all checks pass, 1 = a mathematical check failed,
2 = usage or configuration error.  Reports carry a versioned schema and keep
timestamps in a metadata block so the comparison payload is byte-stable.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
import time

from .hamiltonian import (HamSystem, make_system, reference_ode,
                          second_order_form, time_derivative_of_H,
                          verify_equivalence)
from .integrate import (NumericParams, SingularityError,
                        check_symmetry_on_trajectory, integrate,
                        richardson_order, write_trajectory_csv)
from .poly import LaurentPoly
from .symmetry import (autonomous_map, iterate_map, jacobian_determinant,
                       map_order, nonautonomous_map, verify_invariance)

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' complex literals (also plain reals and 'bi')."""
    s = text.strip().replace(" ", "")
    s = s.replace("i", "j")
    if s == "j":
        s = "1j"
    elif s.endswith("j") and s[-2] in "+-":
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"bad complex literal {text!r}") from None


def parse_params(text: str) -> dict[str, complex]:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"bad parameter assignment {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_complex(v)
    return out


def parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


# -- verify -----------------------------------------------------------------

def _check(name: str, family: str, residual) -> dict:
    if isinstance(residual, tuple):
        ok = all(r.is_zero() for r in residual)
        shown = "; ".join(r.serialize() for r in residual)
    elif isinstance(residual, LaurentPoly):
        ok = residual.is_zero()
        shown = residual.serialize()
    else:  # plain bool
        ok, shown = bool(residual), ""
    entry = {"check": name, "family": family,
             "status": "PASS" if ok else "FAIL"}
    if not ok:
        entry["residual"] = shown
    return entry


def _verify_family(sys: HamSystem, mutate: str | None = None) -> list[dict]:
    checks = []
    target = reference_ode(sys)
    if mutate == "ode":
        # flip the sign of one target term (vacuous-pass control)
        exps = sorted(target.rhs.terms)[0]
        flipped = dict(target.rhs.terms)
        flipped[exps] = -flipped[exps]
        target = type(target)(target.table, LaurentPoly(target.table, flipped))
    sys_checked = sys
    if mutate == "hamiltonian":
        exps = sorted(sys.H.terms)[0]
        flipped = dict(sys.H.terms)
        flipped[exps] = -flipped[exps]
        sys_checked = HamSystem(sys.name, sys.table,
                                LaurentPoly(sys.table, flipped),
                                sys.params, sys.autonomous, sys.n)
    checks.append(_check("second-order form equivalence", sys.name,
                         verify_equivalence(sys_checked, target)))

    dH = time_derivative_of_H(sys)
    if sys.autonomous:
        checks.append(_check("dH/dt = 0 (first integral)", sys.name, dH))
    else:
        expected = (LaurentPoly.var(sys.table, "q", 3)
                    * LaurentPoly.var(sys.table, "p")
                    + LaurentPoly.var(sys.table, "a2")
                    * LaurentPoly.var(sys.table, "q", 2))
        checks.append(_check("dH/dt = q^3*p + a2*q^2 (not conserved)",
                             sys.name, dH - expected))

    maps = []
    if sys.autonomous:
        maps.append(("s-auto", autonomous_map(sys)))
    else:
        maps.append(("s-nonauto[z]", nonautonomous_map(1)))
        maps.append(("s-nonauto[z^7]", nonautonomous_map(7)))
    for label, m in maps:
        if mutate == "map":
            exps = sorted(m.p_rule.terms)[0]
            flipped = dict(m.p_rule.terms)
            flipped[exps] = -flipped[exps]
            m = type(m)(m.name, m.table, m.q_rule,
                        LaurentPoly(m.table, flipped), m.t_rule, m.param_rules)
        checks.append(_check(f"invariance under {label}", sys.name,
                             verify_invariance(m, sys)))
        jac = jacobian_determinant(m) - LaurentPoly.const(sys.table, 1)
        checks.append(_check(f"unit Jacobian of {label}", sys.name, jac))
        if sys.autonomous:
            checks.append(_check(f"{label} order = 2", sys.name,
                                 map_order(m, 4) == 2))
        else:
            order_ok = (map_order(m, 10) == 8
                        and not iterate_map(m, 4).is_identity())
            checks.append(_check(f"{label} order = 8 (s^8 = identity)",
                                 sys.name, order_ok))
    return checks


def cmd_verify(args) -> int:
    families = []
    if args.family == "general":
        for n in parse_n_range(args.n or "2..8"):
            if not 2 <= n <= 16:
                raise UsageError(f"n = {n} outside the supported range 2..16")
            families.append(make_system("general", n))
    elif args.family in ("autonomous5", "nonautonomous3"):
        families.append(make_system(args.family))
    else:
        raise UsageError(f"unknown family {args.family!r}")

    checks = []
    for sys_ in families:
        checks.extend(_verify_family(sys_, mutate=args.mutate))
    report = {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "family": args.family,
        "checks": checks,
        "all_pass": all(c["status"] == "PASS" for c in checks),
    }
    for c in checks:
        line = f"[{c['status']}] {c['family']}: {c['check']}"
        if c["status"] == "FAIL":
            line += f"  residual = {c.get('residual', '')}"
        print(line)
    _emit(report, args.out)
    return 0 if report["all_pass"] else 1


# -- integrate ----------------------------------------------------------------

def cmd_integrate(args) -> int:
    sys_ = make_system(args.family, args.n_int)
    params = NumericParams(sys_.name, parse_params(args.params), sys_.n)
    traj = integrate(sys_, params, args.q0, args.p0, (args.t0, args.t1),
                     h=args.h, tol=args.tol, method=args.method)
    if args.out:
        write_trajectory_csv(traj, args.out)
    summary = {
        "schema": SCHEMA_VERSION,
        "command": "integrate",
        "family": sys_.name,
        "method": args.method,
        "steps": len(traj.times) - 1,
        "t_final": traj.times[-1],
        "drift": traj.drift,
        "termination": traj.termination,
    }
    if args.sweep:
        hs = tuple(float(x) for x in args.sweep.split(","))
        summary["sweep_h"] = list(hs)
        summary["measured_order"] = richardson_order(
            sys_, params, args.q0, args.p0, (args.t0, args.t1), hs)
    print(f"termination: {summary['termination']}  "
          f"steps: {summary['steps']}  drift: {summary['drift']:.3e}")
    if "measured_order" in summary:
        print(f"measured order: {summary['measured_order']:.3f}")
    _emit(summary, args.summary_out)
    return 0


# -- symmetry ------------------------------------------------------------------

def cmd_symmetry(args) -> int:
    sys_ = make_system(args.family, args.n_int)
    if args.map == "s-nonauto":
        m = nonautonomous_map(args.branch)
    elif args.map.startswith("s-auto"):
        m = autonomous_map(sys_)
    else:
        raise UsageError(f"unknown map {args.map!r}")
    params = parse_params(args.params)
    if abs(args.q0) < 1e-8:
        raise UsageError("q0 inside the singularity floor: the map divides by q")
    (Q, P, T), mapped = m.apply_numeric(
        {"q": args.q0, "p": args.p0, "t": complex(args.t0)}, params)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "symmetry",
        "map": m.name,
        "point": {"q": _cstr(args.q0), "p": _cstr(args.p0), "t": args.t0},
        "mapped_point": {"q": _cstr(Q), "p": _cstr(P), "t": _cstr(T)},
        "mapped_params": {k: _cstr(v) for k, v in mapped.items()},
    }
    print(f"{m.name}: (q, p, t) -> ({_cstr(Q)}, {_cstr(P)}, {_cstr(T)})")
    print("params ->", ", ".join(f"{k}={_cstr(v)}" for k, v in mapped.items()))
    if args.check_trajectory:
        np_ = NumericParams(sys_.name, params, sys_.n)
        traj = integrate(sys_, np_, args.q0, args.p0, (args.t0, args.t1),
                         h=args.h, method="fixed-rk4")
        residual = check_symmetry_on_trajectory(traj, m, sys_, np_)
        report["trajectory_residual"] = residual
        print(f"trajectory residual: {residual:.3e}")
    _emit(report, args.out)
    return 0


def _cstr(z) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _emit(payload: dict, path: str | None):
    doc = dict(payload)
    doc["metadata"] = {"generated_at": time.strftime("%Y-%m-%dT%H:%M:%SZ",
                                                     time.gmtime())}
    if path:
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")


# -- argument plumbing -----------------------------------------------------------

def _load_config(path: str) -> dict[str, str]:
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise UsageError(f"cannot read config file {path!r}")
    flat = {}
    for section in cp.sections():
        for key, value in cp.items(section):
            flat[key] = value
    return flat


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamfam",
        description="Verify and integrate the polynomial Hamiltonian families")
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run the exact theorem certificates")
    pv.add_argument("--family", required=True,
                    choices=["autonomous5", "general", "nonautonomous3"])
    pv.add_argument("--n", help="single n or range like 2..8 (general family)")
    pv.add_argument("--out", help="write the JSON report here")
    pv.add_argument("--config")
    pv.add_argument("--mutate", choices=["ode", "map", "hamiltonian"],
                    help=argparse.SUPPRESS)  # test-only control
    pv.set_defaults(func=cmd_verify)

    pi = sub.add_parser("integrate", help="integrate one trajectory")
    pi.add_argument("--family", required=True)
    pi.add_argument("--n", dest="n_int", type=int)
    pi.add_argument("--params", default="")
    pi.add_argument("--method", default="fixed-rk4",
                    choices=["fixed-rk4", "adaptive-rk45"])
    pi.add_argument("--h", type=float, default=1e-3)
    pi.add_argument("--tol", type=float, default=1e-9)
    pi.add_argument("--t0", type=float, default=0.0)
    pi.add_argument("--t1", type=float, default=1.0)
    pi.add_argument("--q0", type=parse_complex, default=1 + 0j)
    pi.add_argument("--p0", type=parse_complex, default=0j)
    pi.add_argument("--sweep", help="comma list of h values for order sweep")
    pi.add_argument("--out", help="trajectory CSV path")
    pi.add_argument("--summary-out", dest="summary_out",
                    help="summary JSON path")
    pi.add_argument("--config")
    pi.set_defaults(func=cmd_integrate)

    ps = sub.add_parser("symmetry", help="apply a symmetry map numerically")
    ps.add_argument("--family", required=True)
    ps.add_argument("--n", dest="n_int", type=int)
    ps.add_argument("--map", required=True)
    ps.add_argument("--branch", type=int, default=1)
    ps.add_argument("--params", default="")
    ps.add_argument("--q0", type=parse_complex, default=1 + 0j)
    ps.add_argument("--p0", type=parse_complex, default=0j)
    ps.add_argument("--t0", type=float, default=0.0)
    ps.add_argument("--t1", type=float, default=0.05)
    ps.add_argument("--h", type=float, default=1e-3)
    ps.add_argument("--check-trajectory", action="store_true")
    ps.add_argument("--out")
    ps.add_argument("--config")
    ps.set_defaults(func=cmd_symmetry)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        # config file supplies defaults; explicit command-line flags win
        if "--config" in argv:
            cfg_path = argv[argv.index("--config") + 1]
            defaults = _load_config(cfg_path)
            extra = []
            for key, value in defaults.items():
                flag = f"--{key.replace('_', '-')}"
                if flag not in argv:
                    extra.extend([flag, value])
            argv = argv[:1] + extra + argv[1:]
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SingularityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
