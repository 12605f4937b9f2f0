"""Command-line frontend tying the layers into reproducible runs.

Subcommands
    verify     symbolic identity suites (conservation tables, Lax pair,
               recursion, formal-symmetry test, dispersion relation)
    simulate   march a family member from a catalog profile, with
               conserved-integral monitoring
    miura map / kernel / lift
               second-derivative-ratio map of a sampled field, kernel
               bases of the associated Schroedinger operator, and
               evolution of kernel members under the compatible flow
    weak-test  quadrature evaluation of the weak identity for peaked
               profiles
    catalog    list or sample the closed-form solution catalog

Configuration is a flat key=value text file plus command-line
overrides; every physical parameter (eps, a, c, coefficients) is an
exact rational such as -2/3, never a float, so the symbolic and the
numeric layer select the same family member.  Numerical knobs
(tolerances, filter strengths) accept decimals.

Outputs are CSV files with '#'-prefixed metadata lines and floats at 17
significant digits (lossless round-trip), plus a manifest.json that
echoes the effective configuration; re-parsing the manifest yields an
equivalent configuration, and identical configuration plus seed yields
byte-identical primary outputs.

Exit codes: 0 pass, 1 check failure, 2 configuration error, 3 runtime
error.  Module errors surface as one machine-readable JSON line on
stderr.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import catalog, conserve, miura, operators, solver, weakform
from .equations import family, kdv, variant71, variant72
from .errors import ConfigError, DispkitError

_EXIT_PASS = 0
_EXIT_CHECK = 1
_EXIT_CONFIG = 2
_EXIT_RUNTIME = 3


# ---------------------------------------------------------------------------
# configuration


def parse_rational(text):
    """Exact rational from 'p/q' or integer text; floats are rejected."""
    t = str(text).strip()
    if not t:
        raise ConfigError("empty value where a rational was expected")
    if any(ch in t for ch in ".eE"):
        raise ConfigError(
            f"{text!r}: physical parameters must be exact rationals "
            f"like 1, -2/3 or 5/2, not floats")
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{text!r} is not a rational: {exc}")


def parse_number(text):
    """Float for numerical knobs; exact-rational text is also accepted."""
    t = str(text).strip()
    try:
        if not any(ch in t for ch in ".eE"):
            return float(Fraction(t))
        return float(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{text!r} is not a number: {exc}")


class RunConfig:
    """Flat key=value settings for one subcommand invocation."""

    def __init__(self, subcommand, values):
        self.subcommand = subcommand
        self.values = {k: str(v) for k, v in values.items()}

    @classmethod
    def load(cls, subcommand, path=None, overrides=None):
        values = {}
        if path:
            try:
                with open(path) as fh:
                    for lineno, raw in enumerate(fh, start=1):
                        line = raw.strip()
                        if not line or line.startswith("#"):
                            continue
                        key, sep, val = line.partition("=")
                        if not sep:
                            raise ConfigError(
                                f"{path}:{lineno}: expected key=value, "
                                f"got {line!r}")
                        values[key.strip()] = val.strip()
            except OSError as exc:
                raise ConfigError(f"cannot read config {path}: {exc}")
        for key, val in (overrides or {}).items():
            if val is not None:
                values[key] = str(val)
        return cls(subcommand, values)

    @classmethod
    def from_manifest(cls, path):
        with open(path) as fh:
            doc = json.load(fh)
        return cls(doc["subcommand"], doc["config"])

    def __eq__(self, other):
        return (isinstance(other, RunConfig)
                and self.subcommand == other.subcommand
                and self.values == other.values)

    def get(self, key, default=None):
        return self.values.get(key, default)

    def rational(self, key, default=None):
        if key not in self.values:
            if default is None:
                raise ConfigError(f"missing required setting {key!r}")
            return Fraction(default)
        return parse_rational(self.values[key])

    def number(self, key, default=None):
        if key not in self.values:
            if default is None:
                raise ConfigError(f"missing required setting {key!r}")
            return float(default)
        return parse_number(self.values[key])

    def integer(self, key, default=None):
        if key not in self.values:
            if default is None:
                raise ConfigError(f"missing required setting {key!r}")
            return int(default)
        try:
            return int(self.values[key])
        except ValueError as exc:
            raise ConfigError(f"{key}={self.values[key]!r}: {exc}")

    def flag(self, key, default=False):
        raw = self.values.get(key)
        if raw is None:
            return bool(default)
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}={raw!r} is not a boolean")


# ---------------------------------------------------------------------------
# shared parsing of entry / equation / potential specs


def parse_entry_spec(spec):
    """Catalog entry from 'kind' or 'kind:k=v,k=v' with rational values."""
    kind, _, rest = str(spec).partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, sep, val = item.partition("=")
            if not sep:
                raise ConfigError(f"bad entry parameter {item!r} in {spec!r}")
            params[key.strip()] = float(parse_rational(val))
    return catalog.make(kind.strip(), **params)


def parse_equation_spec(spec):
    """EquationSpec from 'eps=p/q,a=p/q' or a named variant."""
    text = str(spec).strip()
    name, _, rest = text.partition(":")
    if name == "kdv":
        return kdv()
    if name in ("variant71", "variant72"):
        key, sep, val = rest.partition("=")
        if key.strip() != "delta" or not sep:
            raise ConfigError(f"{spec!r}: variants take delta=p/q")
        delta = parse_rational(val)
        return variant71(delta) if name == "variant71" else variant72(delta)
    pairs = {}
    for item in text.split(","):
        key, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(f"bad equation parameter {item!r} in {spec!r}")
        pairs[key.strip()] = parse_rational(val)
    missing = {"eps", "a"} - set(pairs)
    if missing:
        raise ConfigError(f"{spec!r}: missing {sorted(missing)}")
    return family(pairs["eps"], pairs["a"], with_rho=False)


def parse_potential_spec(spec):
    """KdvPotential plus metadata from const:1, soliton:c=2, similarity."""
    name, _, rest = str(spec).partition(":")
    name = name.strip()
    if name == "const":
        value = parse_rational(rest or "1")
        return miura.KdvPotential.constant(float(value)), \
            {"name": "const", "value": value}
    if name == "similarity":
        return miura.KdvPotential.similarity(), {"name": "similarity"}
    if name == "soliton":
        key, sep, val = rest.partition("=")
        if key.strip() != "c" or not sep:
            raise ConfigError(f"{spec!r}: soliton potential takes c=p/q")
        c = parse_rational(val)
        if c <= 0:
            raise ConfigError("soliton potential requires c > 0")
        return miura.KdvPotential.soliton(float(c)), \
            {"name": "soliton", "c": c}
    raise ConfigError(
        f"unknown potential {spec!r}; use const:V, soliton:c=p/q "
        f"or similarity")


# ---------------------------------------------------------------------------
# output writers


def _fmt(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(path, meta, columns):
    """RFC-4180-style CSV with '#'-prefixed metadata header lines."""
    names = list(columns)
    arrays = [np.atleast_1d(np.asarray(columns[n])) for n in names]
    length = len(arrays[0])
    for n, arr in zip(names, arrays):
        if len(arr) != length:
            raise ConfigError(f"column {n} length {len(arr)} != {length}")
    with open(path, "w", newline="") as fh:
        for key in sorted(meta):
            fh.write(f"# {key}={meta[key]}\n")
        fh.write(",".join(names) + "\r\n")
        for i in range(length):
            fh.write(",".join(_fmt(arr[i]) for arr in arrays) + "\r\n")


def write_manifest(out_dir, config, outputs, results):
    doc = {
        "subcommand": config.subcommand,
        "config": dict(sorted(config.values.items())),
        "outputs": sorted(outputs),
        "results": results,
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _out_dir(args):
    out = getattr(args, "out", None) or os.environ.get("DISPKIT_OUT") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _trajectory_columns(traj):
    ts, xs, us = [], [], []
    for f in traj.fields:
        ts.append(np.full(f.n, f.time))
        xs.append(f.x)
        us.append(f.values)
    return {"t": np.concatenate(ts), "x": np.concatenate(xs),
            "u": np.concatenate(us)}


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify(args):
    cfg = RunConfig.load("verify", args.config, {
        "suite": args.suite, "n": args.n, "eps": args.eps})
    suite_arg = cfg.get("suite", "all")
    if suite_arg == "all":
        selected = list(operators.SUITES)
    else:
        selected = [s.strip() for s in suite_arg.split(",") if s.strip()]
        unknown = [s for s in selected if s not in operators.SUITES]
        if unknown:
            raise ConfigError(
                f"unknown suites {unknown}; known: {sorted(operators.SUITES)}")
    records = []
    for name in selected:
        records.extend(operators.SUITES[name]())
    if cfg.get("n") is not None:
        tag = f"n={cfg.integer('n')}"
        records = [r for r in records if tag in r.check_id]
    if cfg.get("eps") is not None:
        tag = f"eps={parse_rational(cfg.get('eps'))}"
        records = [r for r in records if tag in r.check_id]
    if not records:
        raise ConfigError("selection matched no checks")

    ok = True
    for rec in records:
        print(rec.line())
        if rec.status not in ("pass", "typo-suspect", "info"):
            ok = False
    n_pass = sum(r.status == "pass" for r in records)
    n_typo = sum(r.status == "typo-suspect" for r in records)
    n_info = sum(r.status == "info" for r in records)
    summary = f"{n_pass}/{len(records) - n_info} checks pass"
    if n_typo:
        summary += f" ({n_typo} typo-suspect with verified correction)"
    if n_info:
        summary += f"; {n_info} informational"
    print(summary)

    if args.out:
        out = _out_dir(args)
        report = [{"check": r.check_id, "status": r.status,
                   "residual": r.residual, "note": r.note} for r in records]
        with open(os.path.join(out, "verify.json"), "w") as fh:
            json.dump({"records": report, "summary": summary}, fh,
                      indent=2, sort_keys=True)
            fh.write("\n")
        write_manifest(out, cfg, ["verify.json"],
                       {"all_pass": ok, "checks": len(records)})
    return _EXIT_PASS if ok else _EXIT_CHECK


def _solve_options_from(cfg, n):
    # The command-line defaults are the validated decaying-profile
    # configuration (clamped edges, no positivity floor, mild
    # hyperviscosity on the deviation); library callers get the more
    # conservative SolveOptions defaults, which refuse runs where the
    # u-denominator dips below the floor.
    return solver.SolveOptions(
        n=n,
        cfl_factor=cfg.number("cfl", 0.5),
        t_end=cfg.number("tend", 1.0),
        output_every=cfg.integer("every", 0),
        scheme=cfg.get("scheme", "fd4"),
        u_floor=cfg.number("ufloor", 0.0),
        form=cfg.get("form", "direct"),
        reg_rel=cfg.number("regrel", 0.0),
        hyper_mu=cfg.number("hypermu", 0.35),
        anchor_quotient=cfg.flag("anchor", False),
        anchor_width=cfg.number("anchorwidth", 0.05),
        filter_frac=cfg.number("filterfrac", 0.0),
        sponge_points=cfg.integer("sponge", 0),
    )


def _cmd_simulate(args):
    cfg = RunConfig.load("simulate", args.config, {
        "eq": args.eq, "init": args.init, "n": args.n, "tend": args.tend,
        "xmin": args.xmin, "xmax": args.xmax, "boundary": args.boundary,
        "scheme": args.scheme, "form": args.form, "cfl": args.cfl,
        "ufloor": args.ufloor, "regrel": args.regrel,
        "hypermu": args.hypermu, "anchor": args.anchor,
        "anchorwidth": args.anchorwidth, "every": args.every})
    if cfg.get("eq") is None:
        raise ConfigError("simulate needs --eq (e.g. \"eps=1,a=1\")")
    if cfg.get("init") is None:
        raise ConfigError("simulate needs --init (e.g. sech2:c=1)")
    eq = parse_equation_spec(cfg.get("eq"))
    entry = parse_entry_spec(cfg.get("init"))
    n = cfg.integer("n", 512)
    opts = _solve_options_from(cfg, n)
    init_f = solver.grid_from_entry(
        entry, n, cfg.number("xmin", -20.0), cfg.number("xmax", 20.0),
        boundary=cfg.get("boundary", "clamped"))
    traj = solver.solve(eq, init_f, opts)

    out = _out_dir(args)
    meta = {"equation": eq.name, "init": cfg.get("init"),
            "n": n, "boundary": init_f.boundary}
    write_csv(os.path.join(out, "trajectory.csv"), meta,
              _trajectory_columns(traj))

    report = conserve.drift_report(conserve.IntegralSpec("H0"), traj)
    write_csv(os.path.join(out, "invariants.csv"), meta,
              {"t": report.times, "H0": report.values})
    final = traj.final
    deviation = float(np.max(np.abs(
        final.values - entry.u(final.x, final.time))))
    results = {
        "h0_series": {"times": [float(t) for t in report.times],
                      "values": [float(v) for v in report.values]},
        "h0_drift": report.max_drift,
        "h0_drift_relative": report.relative,
        "final_time": float(final.time),
        "final_deviation_from_entry": deviation,
        "steps_recorded": len(traj.fields),
    }
    write_manifest(out, cfg, ["trajectory.csv", "invariants.csv"], results)
    print(f"final t = {final.time:g}; H0 drift {report.max_drift:.3e}"
          f" ({'relative' if report.relative else 'absolute'});"
          f" deviation from closed form {deviation:.3e}")
    return _EXIT_PASS


def _cmd_miura_map(args):
    cfg = RunConfig.load("miura-map", args.config, {
        "init": args.init, "t": args.t, "n": args.n,
        "xmin": args.xmin, "xmax": args.xmax, "ufloor": args.ufloor})
    if cfg.get("init") is None:
        raise ConfigError("miura map needs --init")
    entry = parse_entry_spec(cfg.get("init"))
    n = cfg.integer("n", 512)
    t0 = cfg.number("t", 0.0)
    f = solver.grid_from_entry(
        entry, n, cfg.number("xmin", -12.0), cfg.number("xmax", 12.0),
        boundary="clamped", t0=t0)
    wf = miura.miura_map(f, solver.SolveOptions(
        n=n, u_floor=cfg.number("ufloor", 1e-8)))

    out = _out_dir(args)
    meta = {"init": cfg.get("init"), "t": _fmt(t0), "n": n}
    write_csv(os.path.join(out, "w.csv"), meta, {"x": wf.x, "w": wf.values})
    results = {"t": t0, "n": n}
    try:
        closed = entry.uxx_ratio(f.x, t0)
    except NotImplementedError:
        closed = None
    if closed is not None:
        dev = float(np.max(np.abs(wf.values - closed)[2:-2]))
        results["max_dev_vs_closed_form"] = dev
        print(f"second-derivative ratio: interior deviation from closed "
              f"form {dev:.3e}")
    write_manifest(out, cfg, ["w.csv"], results)
    return _EXIT_PASS


def _cmd_miura_kernel(args):
    cfg = RunConfig.load("miura-kernel", args.config, {
        "w": args.w, "t0": args.t0, "n": args.n,
        "xmin": args.xmin, "xmax": args.xmax})
    if cfg.get("w") is None:
        raise ConfigError("miura kernel needs --w")
    pot, pot_meta = parse_potential_spec(cfg.get("w"))
    n = cfg.integer("n", 2001)
    t0 = cfg.number("t0", 0.0 if pot_meta["name"] != "similarity" else 1.0)
    basis = miura.kernel_solve(pot, t0, cfg.number("xmin", -8.0),
                               cfg.number("xmax", 8.0), n)

    out = _out_dir(args)
    meta = {"potential": pot.label, "t0": _fmt(t0), "n": n}
    write_csv(os.path.join(out, "kernel.csv"), meta,
              {"x": basis.x, "u1": basis.u1, "du1": basis.du1,
               "u2": basis.u2, "du2": basis.du2})
    dev = basis.wronskian_deviation()
    results = {"wronskian_deviation": dev, "t0": t0}
    write_manifest(out, cfg, ["kernel.csv"], results)
    print(f"kernel basis on n = {n} points; Wronskian deviation {dev:.3e}")
    return _EXIT_PASS


def _lift_reference(pot_meta, coeffs):
    """Closed-form initial data for a lift with the given coefficients."""
    c1, c2 = coeffs
    name = pot_meta["name"]
    if name == "soliton":
        c = float(pot_meta["c"])
        modes = [catalog.make("kink", c=c), miura.LegendreSecondMode(c)]
        if c2 == 0 and c1 == 1:
            return modes[0]
        return miura.LinearCombo(modes, [float(c1), float(c2)])
    if name == "const" and pot_meta["value"] == 1:
        return catalog.make("kernelExp", c1=float(c1), c2=float(c2))
    if name == "const" and pot_meta["value"] == -1:
        return catalog.make("kernelTrig", c1=float(c1), c2=float(c2))
    if name == "similarity":
        return catalog.make("airy", c1=float(c1), c2=float(c2))
    raise ConfigError(
        f"no closed kernel basis for potential {name!r} with value "
        f"{pot_meta.get('value')}; supply --init instead")


def _cmd_miura_lift(args):
    cfg = RunConfig.load("miura-lift", args.config, {
        "w": args.w, "coeff": args.coeff, "init": args.init,
        "tend": args.tend, "n": args.n, "xmin": args.xmin,
        "xmax": args.xmax, "t0": args.t0, "every": args.every})
    if cfg.get("w") is None:
        raise ConfigError("miura lift needs --w")
    pot, pot_meta = parse_potential_spec(cfg.get("w"))
    if cfg.get("init") is not None:
        ref = parse_entry_spec(cfg.get("init"))
    else:
        raw = cfg.get("coeff", "1,0")
        parts = [parse_rational(p) for p in raw.split(",")]
        if len(parts) != 2:
            raise ConfigError(f"coeff must be two rationals, got {raw!r}")
        ref = _lift_reference(pot_meta, parts)
    n = cfg.integer("n", 512)
    t0 = cfg.number("t0", 0.0 if pot_meta["name"] != "similarity" else 0.5)
    tend = cfg.number("tend", 1.0)
    init_f = solver.grid_from_entry(
        ref, n, cfg.number("xmin", -12.0), cfg.number("xmax", 12.0),
        boundary="clamped", t0=t0)
    opts = solver.SolveOptions(n=n, u_floor=0.0, t_end=tend,
                               output_every=cfg.integer("every", 0))
    traj = miura.evolve_in_kernel(pot, init_f, tend, opts=opts)

    out = _out_dir(args)
    meta = {"potential": pot.label, "n": n, "t0": _fmt(t0),
            "tend": _fmt(tend)}
    write_csv(os.path.join(out, "trajectory.csv"), meta,
              _trajectory_columns(traj))
    final = traj.final
    res = miura.kernel_residual(final.values, final.x, final.time, pot,
                                final.dx)
    dev = float(np.max(np.abs(final.values - ref.u(final.x, final.time))))
    results = {"final_kernel_residual": res,
               "final_deviation_from_closed_form": dev,
               "final_time": float(final.time)}
    write_manifest(out, cfg, ["trajectory.csv"], results)
    print(f"lift to t = {final.time:g}: kernel residual {res:.3e}, "
          f"deviation from closed form {dev:.3e}")
    return _EXIT_PASS


def _random_test_functions(rng, count, c, T):
    """Bump family with varied centers and radii, support inside [0, T)."""
    phis = []
    for _ in range(count):
        t0 = float(rng.uniform(0.25 * T, 0.70 * T))
        rt_hi = min(0.30 * T, 0.90 * (T - t0))
        rt = float(rng.uniform(0.4 * rt_hi, rt_hi))
        x0 = float(rng.uniform(-2.0, 0.8 * c * T + 2.0))
        rx = float(rng.uniform(0.6, 2.2))
        phis.append(weakform.TestFunction(x0=x0, t0=t0, rx=rx, rt=rt))
    return phis


def _cmd_weak_test(args):
    cfg = RunConfig.load("weak-test", args.config, {
        "eps": args.eps, "c": args.c, "a": args.a, "phis": args.phis,
        "seed": args.seed, "T": args.T})
    c = cfg.rational("c", "2")
    a = cfg.rational("a", "1")
    eps_list = [parse_rational(s)
                for s in cfg.get("eps", "0").split(",") if s.strip()]
    if not eps_list:
        raise ConfigError("weak-test needs at least one eps value")
    count = cfg.integer("phis", 20)
    seed = cfg.integer("seed", 0)
    T = cfg.number("T", 2.0)
    pk = weakform.PeakonData(c=float(c), a=float(a))
    rng = np.random.default_rng(seed)
    phis = _random_test_functions(rng, count, float(c), T)

    residuals = {}
    for eps in eps_list:
        residuals[str(eps)] = [
            weakform.weak_residual(pk, float(eps), float(a), phi, T)
            for phi in phis]

    checks = {}
    if Fraction(0) in eps_list:
        worst = max(abs(r) for r in residuals["0"])
        checks["eps0_max_residual"] = worst
        checks["eps0_pass"] = bool(worst <= 1e-7)
    nonzero = [e for e in eps_list if e != 0]
    if len(nonzero) >= 2:
        spreads = []
        for i in range(count):
            ratios = [residuals[str(e)][i] / float(e) for e in nonzero]
            mid = ratios[len(ratios) // 2]
            scale = max(abs(r) for r in ratios)
            if scale == 0.0:
                continue
            spreads.append((max(ratios) - min(ratios)) / scale)
        worst_spread = max(spreads) if spreads else 0.0
        checks["proportionality_spread"] = worst_spread
        checks["proportionality_pass"] = bool(worst_spread <= 1e-6)
        checks["ratio_example"] = residuals[str(nonzero[0])][0] \
            / float(nonzero[0])

    left, right = weakform.peak_profile_check(pk)
    checks["slope_left"] = left
    checks["slope_right"] = right
    expected = pk.slope if pk.kind == "exp" else -pk.slope
    checks["slopes_pass"] = bool(abs(left - expected) <= 1e-8
                                 and abs(right + expected) <= 1e-8)

    ok = all(v for k, v in checks.items() if k.endswith("_pass"))
    out = _out_dir(args)
    doc = {"residuals": residuals, "checks": checks,
           "phis": [{"x0": p.x0, "t0": p.t0, "rx": p.rx, "rt": p.rt}
                    for p in phis]}
    with open(os.path.join(out, "weak-test.json"), "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    write_manifest(out, cfg, ["weak-test.json"], checks)

    for eps in eps_list:
        worst = max(abs(r) for r in residuals[str(eps)])
        print(f"eps = {eps}: max |residual| over {count} test functions "
              f"= {worst:.3e}")
    print(f"one-sided crest slopes: {left:+.10f} / {right:+.10f}")
    print("PASS" if ok else "FAIL")
    return _EXIT_PASS if ok else _EXIT_CHECK


def _cmd_catalog(args):
    cfg = RunConfig.load("catalog", args.config, {
        "kind": args.kind, "params": args.params, "n": args.n,
        "xmin": args.xmin, "xmax": args.xmax, "t": args.t,
        "check": args.check})
    if cfg.get("kind") is None:
        for kind in catalog.kinds():
            entry_cls = type(catalog.make(kind, **_EXAMPLE_PARAMS.get(
                kind, {})))
            doc = (entry_cls.__doc__ or "").strip().splitlines()
            print(f"{kind}: {doc[0] if doc else ''}")
        return _EXIT_PASS
    spec = cfg.get("kind")
    if cfg.get("params"):
        spec = f"{spec}:{cfg.get('params')}"
    entry = parse_entry_spec(spec)
    print(json.dumps(entry.describe(), sort_keys=True))
    wrote = []
    results = dict(entry.describe())
    out = None
    if cfg.get("n") is not None:
        n = cfg.integer("n")
        t0 = cfg.number("t", 0.0)
        x = np.linspace(cfg.number("xmin", -10.0), cfg.number("xmax", 10.0),
                        n)
        out = _out_dir(args)
        write_csv(os.path.join(out, "sample.csv"),
                  {"kind": entry.kind, "t": _fmt(t0)},
                  {"x": x, "u": entry.u(x, t0)})
        wrote.append("sample.csv")
    if cfg.flag("check", False):
        n = cfg.integer("n", 1024)
        res = catalog.residual_on_grid(
            entry, n, cfg.number("xmin", -10.0), cfg.number("xmax", 10.0),
            cfg.number("t", 0.0))
        results["max_residual"] = float(res)
        print(f"pointwise equation residual on {n} points: {res:.3e}")
    if out is None and (wrote or args.out):
        out = _out_dir(args)
    if out is not None:
        write_manifest(out, cfg, wrote, results)
    return _EXIT_PASS


_EXAMPLE_PARAMS = {
    "sech2": {"c": 1.0},
    "kink": {"c": 2.0},
    "kdvSoliton": {"c": 1.0},
    "exponential": {"eps": 1.0, "a": 1.0, "c": 1.0},
    "sinusoidal": {"eps": 1.0, "a": -1.0, "c": 1.0},
    "planePhase": {"eps": 1.0, "a": 1.0, "k": 1.0},
    "peakonExp": {"c": 2.0},
    "peakonSin": {"c": 2.0},
}


# ---------------------------------------------------------------------------
# argument wiring


def _add_common(p):
    p.add_argument("--config", help="flat key=value settings file")
    p.add_argument("--out", help="output directory (or env DISPKIT_OUT)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dispkit",
        description="verification and simulation toolkit for a family of "
                    "homogeneous dispersive equations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run symbolic identity suites")
    p.add_argument("--suite", default=None,
                   help="comma list of table1,table2,lax,recursion,"
                        "mikhailov,dispersion (default all)")
    p.add_argument("--n", default=None, help="restrict to one table index")
    p.add_argument("--eps", default=None, help="restrict to one eps value")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate", help="march a family member")
    p.add_argument("--eq", default=None,
                   help="\"eps=p/q,a=p/q\", kdv, or variant71:delta=p/q")
    p.add_argument("--init", default=None, help="catalog entry, kind:k=v,..")
    p.add_argument("--n", default=None)
    p.add_argument("--tend", default=None)
    p.add_argument("--xmin", default=None)
    p.add_argument("--xmax", default=None)
    p.add_argument("--boundary", default=None,
                   choices=(None, "clamped", "periodic"))
    p.add_argument("--scheme", default=None, choices=(None, "fd4",
                                                      "spectral"))
    p.add_argument("--form", default=None, choices=(None, "direct",
                                                    "logForm"))
    p.add_argument("--cfl", default=None)
    p.add_argument("--ufloor", default=None)
    p.add_argument("--regrel", default=None)
    p.add_argument("--hypermu", default=None)
    p.add_argument("--anchor", default=None)
    p.add_argument("--anchorwidth", default=None)
    p.add_argument("--every", default=None,
                   help="record every k-th step (0: ends only)")
    _add_common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("miura", help="ratio map, kernel bases, lifts")
    msub = p.add_subparsers(dest="miura_command", required=True)

    m = msub.add_parser("map", help="w = u_xx/u of a sampled profile")
    m.add_argument("--init", default=None)
    m.add_argument("--t", default=None)
    m.add_argument("--n", default=None)
    m.add_argument("--xmin", default=None)
    m.add_argument("--xmax", default=None)
    m.add_argument("--ufloor", default=None)
    _add_common(m)
    m.set_defaults(func=_cmd_miura_map)

    m = msub.add_parser("kernel", help="two-member basis of u_xx = w u")
    m.add_argument("--w", default=None,
                   help="const:V | soliton:c=p/q | similarity")
    m.add_argument("--t0", default=None)
    m.add_argument("--n", default=None)
    m.add_argument("--xmin", default=None)
    m.add_argument("--xmax", default=None)
    _add_common(m)
    m.set_defaults(func=_cmd_miura_kernel)

    m = msub.add_parser("lift", help="evolve a kernel member in time")
    m.add_argument("--w", default=None)
    m.add_argument("--coeff", default=None,
                   help="two rationals c1,c2 in the closed kernel basis")
    m.add_argument("--init", default=None,
                   help="explicit catalog entry overriding --coeff")
    m.add_argument("--tend", default=None)
    m.add_argument("--t0", default=None)
    m.add_argument("--n", default=None)
    m.add_argument("--xmin", default=None)
    m.add_argument("--xmax", default=None)
    m.add_argument("--every", default=None)
    _add_common(m)
    m.set_defaults(func=_cmd_miura_lift)

    p = sub.add_parser("weak-test", help="weak identity for peaked waves")
    p.add_argument("--eps", default=None, help="comma list of rationals")
    p.add_argument("--c", default=None)
    p.add_argument("--a", default=None)
    p.add_argument("--phis", default=None)
    p.add_argument("--seed", default=None)
    p.add_argument("--T", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_weak_test)

    p = sub.add_parser("catalog", help="list or sample closed forms")
    p.add_argument("--kind", default=None)
    p.add_argument("--params", default=None, help="k=v,k=v rationals")
    p.add_argument("--n", default=None)
    p.add_argument("--xmin", default=None)
    p.add_argument("--xmax", default=None)
    p.add_argument("--t", default=None)
    p.add_argument("--check", default=None,
                   help="true: report the pointwise equation residual")
    _add_common(p)
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(json.dumps(
            {"error": "ConfigError", "message": str(exc)},
            sort_keys=True) + "\n")
        return _EXIT_CONFIG
    except DispkitError as exc:
        sys.stderr.write(json.dumps(
            {"error": type(exc).__name__, "message": str(exc)},
            sort_keys=True) + "\n")
        return _EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
