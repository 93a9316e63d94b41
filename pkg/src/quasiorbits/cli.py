"""Experiment runner.

Subcommands: curve, classify, iwasawa, hausdorff, qc, orbit, bh-test,
limit-set, fatten.  Numeric options may come from the command line or from a
JSON config file (--config); command-line values win, unknown config fields
are rejected.  All outputs are deterministic: JSON files use sorted keys and
17-significant-digit floats, randomized subcommands take an explicit --seed.

Complex values are written [re, im] in config files; on the command line the
matrix/entry token format "re+imi" is used (e.g. "0.6-0.2i").
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from . import compacta as cp
from . import curves as cv
from . import groups as gr
from . import moebius as mb
from . import orbit as ob
from . import quasicircle as qc
from .serialize import jsonable, write_csv, write_json
from .svg import write_svg

OUTDIR_ENV = "QUASIORBITS_OUTDIR"

_GROUP_FIELDS = {"kind", "lambda", "tau", "generators", "element_budget"}


class CliError(ValueError):
    pass


def _parse_complex_token(tok) -> complex:
    if isinstance(tok, (list, tuple)) and len(tok) == 2:
        return complex(float(tok[0]), float(tok[1]))
    if isinstance(tok, (int, float)):
        return complex(tok)
    t = str(tok).strip().replace("I", "i").replace("i", "j")
    try:
        return complex(t)
    except ValueError as exc:
        raise CliError(f"cannot parse complex value {tok!r}") from exc


def _parse_group(obj) -> gr.GroupSpec:
    if obj is None:
        raise CliError("a group spec is required (--group or config field 'group')")
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise CliError(f"group spec is not valid JSON: {exc}") from exc
    unknown = set(obj) - _GROUP_FIELDS
    if unknown:
        raise CliError(f"unknown group fields: {sorted(unknown)}")
    kind = obj.get("kind")
    budget = int(obj.get("element_budget", gr.DEFAULT_ELEMENT_BUDGET))
    if kind == "trivial":
        return gr.GroupSpec.trivial(element_budget=budget)
    if kind == "cyclic_parabolic":
        return gr.GroupSpec.cyclic_parabolic(element_budget=budget)
    if kind == "cyclic_loxodromic":
        return gr.GroupSpec.cyclic_loxodromic(
            _parse_complex_token(obj["lambda"]), element_budget=budget
        )
    if kind == "rank_two_parabolic":
        return gr.GroupSpec.rank_two_parabolic(
            _parse_complex_token(obj["tau"]), element_budget=budget
        )
    if kind == "custom":
        gens = []
        for entry in obj.get("generators", []):
            vals = [_parse_complex_token(e) for e in entry]
            if len(vals) != 4:
                raise CliError("each generator needs 4 entries [a, b, c, d]")
            gens.append(mb.MoebiusMap(*vals))
        return gr.GroupSpec.custom(gens, element_budget=budget)
    raise CliError(f"unknown group kind {kind!r}")


def _resolutions_list(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    try:
        return [int(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError as exc:
        raise CliError(f"bad resolutions list {text!r}") from exc


def _load_config(path, allowed: dict) -> dict:
    cfg = dict(allowed)
    if path:
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise CliError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise CliError("config file must hold a JSON object")
        unknown = set(data) - set(allowed)
        if unknown:
            raise CliError(f"unknown config fields: {sorted(unknown)}")
        cfg.update(data)
    return cfg


def _effective(args, allowed: dict) -> dict:
    cfg = _load_config(getattr(args, "config", None), allowed)
    for key in allowed:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    return cfg


def _outdir(args) -> str:
    out = getattr(args, "outdir", None) or os.environ.get(OUTDIR_ENV) or "."
    os.makedirs(out, exist_ok=True)
    return out


def _base_curve(kind, n, cusp_exponent, center, radius):
    if kind == "cardioid":
        return cv.cardioid(n, cusp_exponent=cusp_exponent)
    if kind == "circle":
        return cv.circle(_parse_complex_token(center), float(radius), n)
    raise CliError(f"unknown curve kind {kind!r}")


def _base_generator(kind, cusp_exponent, center, radius):
    if kind == "cardioid":
        return lambda r: cv.cardioid(r, cusp_exponent=cusp_exponent)
    if kind == "circle":
        return lambda r: cv.circle(_parse_complex_token(center), float(radius), r)
    raise CliError(f"unknown curve kind {kind!r}")


def _estimate_payload(est: qc.TurningEstimate) -> dict:
    return {
        "constant": est.constant,
        "witness": list(est.witness),
        "witness_params": list(est.witness_params),
        "metric": est.metric_used,
        "resolution": est.resolution,
        "method": est.method,
    }


def _verdict_payload(v: qc.Verdict) -> dict:
    return {
        "kind": v.kind.value,
        "bound": v.bound,
        "slope": v.slope,
        "constants": list(v.constants),
        "diagnostics": v.diagnostics,
    }


# -- subcommand handlers ---------------------------------------------------------


def _cmd_curve(args) -> int:
    allowed = {
        "kind": "cardioid",
        "n": 512,
        "cusp_exponent": 1.0,
        "center": "0",
        "radius": 1.0,
        "affine_a": None,
        "affine_b": None,
        "moebius": None,
        "svg": False,
        "out_prefix": "curve",
    }
    cfg = _effective(args, allowed)
    curve = _base_curve(cfg["kind"], int(cfg["n"]), float(cfg["cusp_exponent"]), cfg["center"], cfg["radius"])
    if cfg["affine_a"] is not None:
        curve = cv.affine_image(
            curve,
            _parse_complex_token(cfg["affine_a"]),
            _parse_complex_token(cfg["affine_b"] or 0.0),
        )
    if cfg["moebius"]:
        curve = cv.moebius_image(curve, mb.parse_matrix_tokens(cfg["moebius"]))
    outdir = _outdir(args)
    prefix = os.path.join(outdir, cfg["out_prefix"])
    cv.write_curve_file(prefix + "_curve.txt", curve)
    cloud = cp.to_cloud(curve)
    payload = {
        "command": "curve",
        "config": {k: jsonable(v) for k, v in cfg.items()},
        "result": {
            "label": curve.label,
            "samples": len(curve),
            "epsilon": cloud.epsilon,
            "chordal_diameter": cp.chordal_diameter(cloud),
            "simple_at_sampling_scale": curve.is_simple_at_sampling_scale(),
            "curve_file": os.path.basename(prefix + "_curve.txt"),
        },
    }
    if cfg["svg"]:
        notices = write_svg(prefix + ".svg", [curve])
        payload["result"]["svg_notices"] = notices
    write_json(prefix + ".json", payload)
    print(f"curve: {curve.label} -> {prefix}.json")
    return 0


def _cmd_classify(args) -> int:
    allowed = {"matrix": None, "out_prefix": "classify"}
    cfg = _effective(args, allowed)
    if not cfg["matrix"]:
        raise CliError("--matrix is required")
    m = mb.parse_matrix_tokens(cfg["matrix"])
    cls = mb.classify(m)
    prefix = os.path.join(_outdir(args), cfg["out_prefix"])
    write_json(
        prefix + ".json",
        {
            "command": "classify",
            "config": {"matrix": cfg["matrix"]},
            "result": {
                "tag": cls.tag.value,
                "trace_squared": cls.trace_squared,
                "matrix": m,
            },
        },
    )
    print(cls.tag.value)
    return 0


def _cmd_iwasawa(args) -> int:
    allowed = {"matrix": None, "out_prefix": "iwasawa"}
    cfg = _effective(args, allowed)
    if not cfg["matrix"]:
        raise CliError("--matrix is required")
    m = mb.parse_matrix_tokens(cfg["matrix"])
    fac = mb.iwasawa(m)
    recomposed = mb.compose(fac.k, fac.b)
    residual = m.projective_distance(recomposed)
    prefix = os.path.join(_outdir(args), cfg["out_prefix"])
    write_json(
        prefix + ".json",
        {
            "command": "iwasawa",
            "config": {"matrix": cfg["matrix"]},
            "result": {
                "unitary": fac.k,
                "triangular": fac.b,
                "residual": residual,
                "unitary_tokens": mb.format_matrix_tokens(fac.k),
                "triangular_tokens": mb.format_matrix_tokens(fac.b),
            },
        },
    )
    print(f"iwasawa residual {residual:.3g}")
    return 0


def _cmd_hausdorff(args) -> int:
    allowed = {"a": None, "b": None, "method": "auto", "out_prefix": "hausdorff"}
    cfg = _effective(args, allowed)
    if not cfg["a"] or not cfg["b"]:
        raise CliError("--a and --b cloud/curve files are required")
    clouds = []
    for path in (cfg["a"], cfg["b"]):
        try:
            clouds.append(cp.read_cloud_file(path))
        except (ValueError, IndexError):
            clouds.append(cp.to_cloud(cv.read_curve_file(path)))
    d = cp.hausdorff_distance(clouds[0], clouds[1], method=cfg["method"], workers=args.threads)
    prefix = os.path.join(_outdir(args), cfg["out_prefix"])
    write_json(
        prefix + ".json",
        {
            "command": "hausdorff",
            "config": {"a": os.path.basename(cfg["a"]), "b": os.path.basename(cfg["b"]), "method": cfg["method"]},
            "result": {
                "distance": d,
                "epsilon_a": clouds[0].epsilon,
                "epsilon_b": clouds[1].epsilon,
                "error_bound": clouds[0].epsilon + clouds[1].epsilon,
            },
        },
    )
    print(f"hausdorff distance {d:.17g}")
    return 0


def _cmd_qc(args) -> int:
    allowed = {
        "curve": "cardioid",
        "resolutions": "512,1024,2048,4096",
        "metric": "euclidean",
        "cusp_exponent": 1.0,
        "center": "0",
        "radius": 1.0,
        "k_cap": 10.0,
        "out_prefix": "qc",
    }
    cfg = _effective(args, allowed)
    gen = _base_generator(cfg["curve"], float(cfg["cusp_exponent"]), cfg["center"], cfg["radius"])
    resolutions = _resolutions_list(cfg["resolutions"])
    trend = qc.divergence_trend(gen, resolutions, metric=cfg["metric"])
    verdict = qc.verdict_from_estimates(trend.resolutions, trend.constants, float(cfg["k_cap"]))
    prefix = os.path.join(_outdir(args), cfg["out_prefix"])
    write_json(
        prefix + ".json",
        {
            "command": "qc",
            "config": {k: jsonable(v) for k, v in cfg.items()},
            "result": {
                "estimates": [_estimate_payload(e) for e in trend.estimates],
                "slope": trend.slope,
                "verdict": _verdict_payload(verdict),
            },
        },
    )
    print(f"qc: slope {trend.slope:.3g}, verdict {verdict.kind.value}")
    return 0


def _members_csv(path, report: ob.OrbitReport) -> None:
    write_csv(
        path,
        ["index", "word", "diameter", "constant", "degenerate"],
        [
            (s.index, "".join(str(s.word).split()), s.diameter, s.constant, s.degenerate)
            for s in report.members
        ],
    )


def _report_payload(report: ob.OrbitReport) -> dict:
    return {
        "base": report.base_label,
        "group": report.spec_label,
        "bound": report.bound,
        "estimator_resolution": report.estimator_resolution,
        "metric": report.metric,
        "members": [
            {
                "index": s.index,
                "word": "".join(str(s.word).split()),
                "diameter": s.diameter,
                "constant": s.constant,
                "degenerate": s.degenerate,
            }
            for s in report.members
        ],
        "hausdorff": {
            "min": report.hausdorff_min,
            "median": report.hausdorff_median,
            "max": report.hausdorff_max,
        },
        "sup_constant": report.sup_constant,
        "resolutions": list(report.resolutions),
        "sup_constants": list(report.sup_constants),
        "trend_slope": report.trend_slope,
        "verdict": _verdict_payload(report.verdict),
        "divergence_detected": report.divergence_detected,
        "delta": report.delta,
    }


def _cmd_orbit(args) -> int:
    allowed = {
        "group": None,
        "base": "cardioid",
        "bound": 3,
        "n": 512,
        "cusp_exponent": 1.0,
        "center": "0",
        "radius": 1.0,
        "delta": ob.DEFAULT_DEGENERATION_DELTA,
        "metric": "euclidean",
        "svg": False,
        "out_prefix": "orbit",
    }
    cfg = _effective(args, allowed)
    spec = _parse_group(cfg["group"])
    base = _base_curve(cfg["base"], int(cfg["n"]), float(cfg["cusp_exponent"]), cfg["center"], cfg["radius"])
    family = ob.orbit_family(spec, base, int(cfg["bound"]), delta=float(cfg["delta"]))
    rows = []
    for i, m in enumerate(family.members):
        const = None
        if m.curve is not None and not m.degenerate:
            try:
                const = qc.turning_constant(m.curve, metric=cfg["metric"]).constant
            except ValueError:
                const = None
        rows.append((i, "".join(str(m.word).split()), m.diameter, const, m.degenerate))
    prefix = os.path.join(_outdir(args), cfg["out_prefix"])
    write_csv(prefix + "_members.csv", ["index", "word", "diameter", "constant", "degenerate"], rows)
    payload = {
        "command": "orbit",
        "config": {k: jsonable(v) for k, v in cfg.items()},
        "result": {
            "base": family.base_label,
            "group": spec.label(),
            "members": len(family),
            "degenerate_members": sum(1 for m in family.members if m.degenerate),
            "sup_constant": max((r[3] for r in rows if r[3] is not None), default=None),
            "members_csv": os.path.basename(prefix + "_members.csv"),
        },
    }
    if cfg["svg"]:
        drawable = [m.curve for m in family.members if m.curve is not None][:6]
        notices = write_svg(prefix + ".svg", drawable)
        payload["result"]["svg_notices"] = notices
    write_json(prefix + ".json", payload)
    print(f"orbit: {len(family)} members of {spec.label()}")
    return 0


def _cmd_bh_test(args) -> int:
    allowed = {
        "group": None,
        "base": "cardioid",
        "bound": 2,
        "resolutions": "512,1024,2048",
        "estimator_resolution": 1024,
        "cusp_exponent": 1.0,
        "center": "0",
        "radius": 1.0,
        "metric": "euclidean",
        "delta": ob.DEFAULT_DEGENERATION_DELTA,
        "k_cap": 10.0,
        "out_prefix": "bh_test",
    }
    cfg = _effective(args, allowed)
    spec = _parse_group(cfg["group"])
    gen = _base_generator(cfg["base"], float(cfg["cusp_exponent"]), cfg["center"], cfg["radius"])
    report = ob.orbit_boundedness_test(
        spec,
        gen,
        int(cfg["bound"]),
        _resolutions_list(cfg["resolutions"]),
        metric=cfg["metric"],
        estimator_resolution=int(cfg["estimator_resolution"]),
        delta=float(cfg["delta"]),
        k_cap=float(cfg["k_cap"]),
    )
    prefix = os.path.join(_outdir(args), cfg["out_prefix"])
    _members_csv(prefix + "_members.csv", report)
    write_json(
        prefix + ".json",
        {
            "command": "bh-test",
            "config": {k: jsonable(v) for k, v in cfg.items()},
            "result": _report_payload(report),
        },
    )
    print(
        f"bh-test: {report.spec_label} verdict {report.verdict.kind.value} "
        f"(slope {report.trend_slope:.3g})"
    )
    return 0


def _cmd_limit_set(args) -> int:
    allowed = {"group": None, "bound": 6, "out_prefix": "limit_set"}
    cfg = _effective(args, allowed)
    spec = _parse_group(cfg["group"])
    cloud = gr.limit_set_sample(spec, int(cfg["bound"]))
    prefix = os.path.join(_outdir(args), cfg["out_prefix"])
    cp.write_cloud_file(prefix + "_cloud.txt", cloud)
    write_json(
        prefix + ".json",
        {
            "command": "limit-set",
            "config": {k: jsonable(v) for k, v in cfg.items()},
            "result": {
                "group": spec.label(),
                "points": [jsonable(p) for p in cloud.points()],
                "count": len(cloud),
                "cloud_file": os.path.basename(prefix + "_cloud.txt"),
            },
        },
    )
    print(f"limit-set: {len(cloud)} points")
    return 0


def _demo_family(n: int) -> ob.CurveFamily:
    """Three curves avoiding the octahedral axis points 0, inf, +-1, +-i."""
    curves = [
        cv.circle(0.2 + 0.1j, 0.55, n),
        cv.affine_image(cv.cardioid(n), 1.0, 0.35 + 0.15j),
        cv.circle(-0.25 + 0.45j, 0.7, n),
    ]
    members = tuple(
        ob.FamilyMember(
            element=mb.MoebiusMap.identity(),
            word=(("base", i),),
            cloud=cp.to_cloud(c),
            diameter=cp.chordal_diameter(cp.to_cloud(c)),
            degenerate=False,
            curve=c,
        )
        for i, c in enumerate(curves)
    )
    return ob.CurveFamily(members=members, base_label="demo family")


def _cmd_fatten(args) -> int:
    allowed = {
        "net": "octahedral",
        "net_resolution": 0.8,
        "base_set": "demo",
        "n": 96,
        "trials": 100,
        "seed": 0,
        "svg": False,
        "out_prefix": "fatten",
    }
    cfg = _effective(args, allowed)
    if cfg["net"] == "octahedral":
        net = gr.octahedral_net()
    elif cfg["net"] == "grid":
        net = gr.psu2_net(float(cfg["net_resolution"]))
    else:
        raise CliError(f"unknown net kind {cfg['net']!r}")
    if cfg["base_set"] != "demo":
        raise CliError("only the built-in 'demo' base set is available")
    family = _demo_family(int(cfg["n"]))
    fat = ob.fatten_family(family, net)
    rng = np.random.default_rng(int(cfg["seed"]))
    closure = ob.fattening_closure_check(family, net, trials=int(cfg["trials"]), rng=rng)
    all_simple = all(
        m.curve is not None and m.curve.is_simple_at_sampling_scale() for m in fat.members
    )
    prefix = os.path.join(_outdir(args), cfg["out_prefix"])
    write_csv(
        prefix + "_members.csv",
        ["index", "net_index", "source_index", "diameter", "degenerate"],
        [
            (i, m.provenance[0], m.provenance[1], m.diameter, m.degenerate)
            for i, m in enumerate(fat.members)
        ],
    )
    payload = {
        "command": "fatten",
        "config": {k: jsonable(v) for k, v in cfg.items()},
        "result": {
            "net": net.description,
            "net_size": len(net),
            "family_size": len(family),
            "fattened_members": len(fat),
            "all_simple_at_sampling_scale": all_simple,
            "closure_max_residual": closure.max_residual,
            "closure_trials": closure.trials,
            "closure_passed": closure.passed,
            "members_csv": os.path.basename(prefix + "_members.csv"),
        },
    }
    if cfg["svg"]:
        drawable = [m.curve for m in fat.members if m.curve is not None][:6]
        payload["result"]["svg_notices"] = write_svg(prefix + ".svg", drawable)
    write_json(prefix + ".json", payload)
    print(
        f"fatten: {len(fat)} members, closure residual {closure.max_residual:.3g}, "
        f"all simple: {all_simple}"
    )
    return 0


# -- parser ------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--outdir", help=f"output directory (default ${OUTDIR_ENV} or .)")
    p.add_argument("--config", help="JSON config file; CLI flags override")
    p.add_argument("--threads", type=int, default=1, help="worker cap for spatial queries")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quasiorbits",
        description="Moebius-group orbit experiments on sampled Jordan curves",
    )
    ap.add_argument("--version", action="version", version=f"quasiorbits {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("curve", help="generate/transform a curve and export it")
    p.add_argument("--kind", choices=["cardioid", "circle"])
    p.add_argument("--n", type=int)
    p.add_argument("--cusp-exponent", dest="cusp_exponent", type=float)
    p.add_argument("--center")
    p.add_argument("--radius", type=float)
    p.add_argument("--affine-a", dest="affine_a")
    p.add_argument("--affine-b", dest="affine_b")
    p.add_argument("--moebius", help='matrix "a b c d" applied to the curve')
    p.add_argument("--svg", action="store_const", const=True, default=None)
    p.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p)
    p.set_defaults(fn=_cmd_curve)

    p = sub.add_parser("classify", help="classify a Moebius matrix")
    p.add_argument("--matrix", help='four complex tokens "a b c d"')
    p.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("iwasawa", help="unitary * upper-triangular factorization")
    p.add_argument("--matrix")
    p.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p)
    p.set_defaults(fn=_cmd_iwasawa)

    p = sub.add_parser("hausdorff", help="chordal Hausdorff distance between two files")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--method", choices=["auto", "brute", "kdtree"])
    p.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p)
    p.set_defaults(fn=_cmd_hausdorff)

    p = sub.add_parser("qc", help="turning constants across resolutions + verdict")
    p.add_argument("--curve", choices=["cardioid", "circle"])
    p.add_argument("--resolutions")
    p.add_argument("--metric", choices=["euclidean", "chordal"])
    p.add_argument("--cusp-exponent", dest="cusp_exponent", type=float)
    p.add_argument("--center")
    p.add_argument("--radius", type=float)
    p.add_argument("--k-cap", dest="k_cap", type=float)
    p.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p)
    p.set_defaults(fn=_cmd_qc)

    p = sub.add_parser("orbit", help="orbit family of a base curve under a group")
    p.add_argument("--group", help="JSON group spec")
    p.add_argument("--base", choices=["cardioid", "circle"])
    p.add_argument("--bound", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--cusp-exponent", dest="cusp_exponent", type=float)
    p.add_argument("--center")
    p.add_argument("--radius", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--metric", choices=["euclidean", "chordal"])
    p.add_argument("--svg", action="store_const", const=True, default=None)
    p.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p)
    p.set_defaults(fn=_cmd_orbit)

    p = sub.add_parser("bh-test", help="orbit-wide bounded-turning divergence test")
    p.add_argument("--group")
    p.add_argument("--base", choices=["cardioid", "circle"])
    p.add_argument("--bound", type=int)
    p.add_argument("--resolutions")
    p.add_argument("--estimator-resolution", dest="estimator_resolution", type=int)
    p.add_argument("--cusp-exponent", dest="cusp_exponent", type=float)
    p.add_argument("--center")
    p.add_argument("--radius", type=float)
    p.add_argument("--metric", choices=["euclidean", "chordal"])
    p.add_argument("--delta", type=float)
    p.add_argument("--k-cap", dest="k_cap", type=float)
    p.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p)
    p.set_defaults(fn=_cmd_bh_test)

    p = sub.add_parser("limit-set", help="sampled limit set of a group")
    p.add_argument("--group")
    p.add_argument("--bound", type=int)
    p.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p)
    p.set_defaults(fn=_cmd_limit_set)

    p = sub.add_parser("fatten", help="multiply a family by a unitary net + closure check")
    p.add_argument("--net", choices=["octahedral", "grid"])
    p.add_argument("--net-resolution", dest="net_resolution", type=float)
    p.add_argument("--base-set", dest="base_set")
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--svg", action="store_const", const=True, default=None)
    p.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p)
    p.set_defaults(fn=_cmd_fatten)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, gr.BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
