"""Command line entry point: ``ainfloops <command>``.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from . import assoc, cofacial as cf, cosimp as cs, geom as G, suites, surj, trees as tr

BUILTIN_ALGEBRAS = {
    "rationals": cs.rationals,
    "dual": cs.dual_numbers,
    "m2": lambda: cs.matrix_algebra(2),
    "poly3": lambda: cs.truncated_polynomials(3),
}


def _write(path, text: str):
    if path:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


@click.group()
@click.version_option(package_name="ainfloops")
def main():
    """Trees, cofacial trees, cosimplicial algebra and loop concatenation."""


@main.command("enumerate")
@click.argument("kind", type=click.Choice(["trees", "cofacial"]))
@click.argument("params", nargs=-1, type=click.IntRange(min=0), required=True)
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), help="Write the Hasse diagram.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the listing.")
def cmd_enumerate(kind, params, dot_path, json_path):
    """List T(n) (PARAMS = n) or the component CT(m_0, ..., m_n)."""
    if kind == "trees":
        if len(params) != 1 or params[0] < 1:
            raise click.UsageError("trees takes one arity n >= 1")
        n = params[0]
        items = [tr.to_string(t) for t in tr.enumerate_trees(n)]
        dot = tr.to_dot(n) if n >= 2 else None
    else:
        if len(params) < 2:
            raise click.UsageError("cofacial takes m_0 ... m_n with n >= 1")
        items = [cf.to_string(t) for t in cf.enumerate_component(params)]
        dot = cf.component_dot(params)
    for s in items:
        click.echo(s)
    if dot_path and dot:
        _write(dot_path, dot)
    _write(json_path, json.dumps(items, indent=1))


@main.command("fvector")
@click.argument("n", type=click.IntRange(min=2))
def cmd_fvector(n):
    """Face counts of K(n) by dimension."""
    click.echo(" ".join(str(x) for x in assoc.fvector(n)))


@main.command("verify")
@click.argument("suite", type=click.Choice([*suites.SUITES, "all"]))
@click.option("--seed", type=click.IntRange(min=0, max=2 ** 64 - 1), default=0, show_default=True)
@click.option("--samples", type=click.IntRange(min=0), default=None,
              help="Random samples per suite (suite default when omitted).")
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
@click.option("--timing", is_flag=True, help="Report wall time (output is then not byte-stable).")
def cmd_verify(suite, seed, samples, json_path, timing):
    """Run self-check suites; exit 1 on any failure."""
    names = suites.SUITES if suite == "all" else (suite,)
    reports = [suites.run(name, seed, samples) for name in names]
    for rep in reports:
        line = f"{rep.name:9s} {'PASS' if rep.ok else 'FAIL'}  checks={rep.checks} failures={len(rep.failures)}"
        if timing:
            line += f" time={rep.seconds:.2f}s"
        click.echo(line)
        for note in rep.notes:
            click.echo(f"  note: {note}")
        for f in rep.failures[:3]:
            click.echo(f"  failure: {json.dumps(f, sort_keys=True)}")
    _write(json_path, json.dumps([r.to_dict(timing) for r in reports], indent=1, sort_keys=True))
    sys.exit(0 if all(r.ok for r in reports) else 1)


def _load_algebra(spec: str):
    if spec in BUILTIN_ALGEBRAS:
        return BUILTIN_ALGEBRAS[spec]()
    p = Path(spec)
    if not p.exists():
        raise click.BadParameter(f"no such file or builtin: {spec}", param_hint="ALGEBRA")
    try:
        return cs.algebra_from_json(p.read_text())
    except (ValueError, KeyError) as exc:
        raise click.BadParameter(str(exc), param_hint="ALGEBRA") from exc


@main.command("hochschild")
@click.argument("algebra")
@click.option("-N", "--degree", "N", type=click.IntRange(min=1, max=6), default=3, show_default=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def cmd_hochschild(algebra, N, json_path):
    """HH ranks and cup table of ALGEBRA (a JSON file or rationals|dual|m2|poly3)."""
    A = _load_algebra(algebra)
    try:
        X, mu = cs.hochschild(A, N=N)
    except (ValueError, OverflowError) as exc:
        raise click.BadParameter(str(exc), param_hint="ALGEBRA") from exc
    v = cs.validate(X)
    ms = cs.ms_check(X, mu)
    ranks = cs.total_cohomology(X)
    table = cs.cup_table(X, mu)
    out = {
        "dims": list(X.dims),
        "identities_ok": v.ok,
        "ms_ok": ms.ok,
        "ranks": ranks,
        "cup": [{"p": p, "a": a, "q": q, "b": b, "class": [str(c) for c in cl]}
                for (p, a, q, b), cl in sorted(table.items())],
    }
    text = json.dumps(out, indent=1)
    click.echo(text)
    _write(json_path, text)
    sys.exit(0 if v.ok and ms.ok else 1)


def _demo_inputs(cfg: dict, seed: int):
    rng = np.random.default_rng(seed)
    f = surj.from_json(json.dumps(cfg["f"])) if "f" in cfg else surj.identity(cfg.get("arity", 2))
    n = f.arity
    if "u" in cfg:
        u = assoc.from_barycentric(assoc.barycentric_from_json(json.dumps(cfg["u"])))
    else:
        u = assoc.apex(n)
    if u.arity != n:
        raise click.BadParameter("cone point and reparameterization arities differ", param_hint="CONFIG")
    if "tubes" in cfg:
        tubes = [G.TubePoint.from_dict(t) for t in cfg["tubes"]]
    else:
        tubes = G.random_config(rng, u, fill=cfg.get("fill", 0.5))
    specs = cfg.get("loops", [{"winding": 1}] * n)
    if len(tubes) != n or len(specs) != n:
        raise click.BadParameter("need one tube point and one loop per input", param_hint="CONFIG")
    loops = []
    grid = np.linspace(0, 1, int(cfg.get("grid", 65)))
    for tp, spec in zip(tubes, specs):
        c = G.WindingLoop(G.M.angle(tp.base), int(spec.get("winding", 1)), float(spec.get("wobble", 0.0)))
        loops.append((tp, G.LoopSample.from_function(c, grid)))
    return f, u, loops


@main.command("loop-demo")
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=click.IntRange(min=0, max=2 ** 64 - 1), default=0, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="Write the composite loop.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the composite tube point.")
def cmd_loop_demo(config, seed, csv_path, json_path):
    """Concatenate loops per CONFIG (JSON: f, u, tubes, loops, fill, grid)."""
    try:
        cfg = json.loads(Path(config).read_text())
        f, u, loops = _demo_inputs(cfg, seed)
        res = G.loop_concat(f, u, loops)
    except (ValueError, KeyError) as exc:
        raise click.BadParameter(str(exc), param_hint="CONFIG") from exc
    if res is G.COLLAPSED:
        click.echo("result: collapsed (outside the admissible tube)")
        return
    tp, loop = res
    base = tp.base
    winding = (loop.angles[-1] - loop.angles[0]) / (2 * math.pi)
    click.echo(f"arity {f.arity}  eps {tp.eps:.6e}  dist {tp.distance():.6e}")
    click.echo(f"basepoint angle {G.M.angle(base):.12f}  start angle {loop.angle(0):.12f}")
    click.echo(f"winding {round(winding)}  samples {len(loop.grid)}")
    _write(csv_path, loop.to_csv())
    _write(json_path, json.dumps({**tp.to_dict(), "eps": tp.eps}))


@main.command("counterexample")
@click.argument("which", type=click.Choice(["delta_r", "d0_product"]))
@click.option("--seed", type=click.IntRange(min=0, max=2 ** 64 - 1), default=0, show_default=True)
def cmd_counterexample(which, seed):
    """Show why the naive constructions fail and how the fixes repair them."""
    rng = np.random.default_rng(seed)
    if which == "delta_r":
        phi = G.Expansion.random(rng, 3)
        y = G.M.point(float(rng.uniform(0, 2 * math.pi)))
        x = phi(y) * (1 + 0.01 / phi.c)
        t = G.M.point(float(rng.uniform(0, 2 * math.pi)))
        unital = G.cohen_counterexample(phi, x, t)
        zero = G.cohen_counterexample(phi, x, t, mode="zero")
        fixed = G.cohen_counterexample(phi, x, unital.first)
        click.echo(f"unital suspension gap      {unital.gap:.12e}")
        click.echo(f"gap at t = x_1             {fixed.gap:.12e}")
        click.echo(f"zero-padded suspension gap {zero.gap:.12e}")
    else:
        phi = G.Expansion.random(rng, 2)
        a = G.TubePoint(phi, 0.05, phi(G.M.point(0.3)) * 1.01)
        b = G.TubePoint(G.Expansion.identity(), 0.05, G.M.point(2.0) * 0.99)
        demo = G.ms_failure_demo(a, b)
        click.echo(f"naive product gap          {demo.gap:.12e}")
        click.echo(f"perturbed product gap      {G.perturbed_gap(a, b):.12e}")


if __name__ == "__main__":  # pragma: no cover
    main()
