"""Command-line interface: JSON in, deterministic reports out.

Exit codes: 0 all checks passed, 1 a law or property failed, 2 bad input,
3 an enumeration cap was exceeded.
"""

import functools
import json
import sys
import time

import click

from . import __version__
from . import descriptors as ds
from .coalg import (
    HComp,
    Id,
    behavioral_distance,
    check_coalgebra,
    equalizer,
    final_chain,
    initial_lift_coalgebra,
    is_coalg_hom,
)
from .errors import CapExceeded, DescriptorError, QuantcatError
from .hausdorff import cantor_check, hausdorff_distance, hausdorff_object, up_closure
from .omega import anamorphism, is_omega_hom, verify_chain_commutation
from .quantale import check_assumptions, check_quantale_laws
from .suites import run_law_suites
from .vcat import VFunctor, check_vcategory

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise DescriptorError(f"{path}: {e}")
    except json.JSONDecodeError as e:
        raise DescriptorError(f"{path}:{e.lineno}:{e.colno}: {e.msg}")


def _load_checked_category(path):
    cat = ds.load_vcategory(_read_json(path))
    rep = check_vcategory(cat)
    if not rep.ok:
        bad = rep.failures()[0]
        raise DescriptorError(f"{path}: not a V-category ({bad.law}, witness {bad.witness})")
    return cat


def _load_checked_coalgebra(path):
    spec = _read_json(path)
    if not isinstance(spec, dict) or spec.get("schema") != ds.COALGEBRA_SCHEMA:
        raise DescriptorError(f"{path}: expected a coalgebra descriptor")
    carrier_rep = check_vcategory(ds.load_vcategory(spec["category"]))
    if not carrier_rep.ok:
        raise DescriptorError(f"{path}: carrier is not a V-category")
    c = ds.load_coalgebra(spec)
    rep = check_coalgebra(c)
    if not rep.ok:
        bad = rep.failures()[0]
        raise DescriptorError(f"{path}: not a coalgebra ({bad.law}, witness {bad.witness})")
    return c


def _report(command, body, ok, fmt, timings=None):
    rep = {"schema": ds.REPORT_SCHEMA, "tool": "quantcat", "version": __version__,
           "command": command}
    rep.update(body)
    rep["ok"] = ok
    if timings is not None:
        rep["timings"] = timings
    if fmt == "json":
        click.echo(ds.canonical_json(rep), nl=False)
    elif fmt == "csv":
        for row in _flatten(rep):
            click.echo(",".join(str(v) for v in row))
    else:
        for row in _flatten(rep):
            click.echo(": ".join(str(v) for v in row))
    return EXIT_OK if ok else EXIT_FAILED


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}." if prefix else f"{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield (prefix.rstrip("."), obj)


def _law_entries(rep):
    return [
        {"law": e.law, "passed": e.passed,
         "witness": None if e.witness is None else [str(w) for w in e.witness],
         "analytic": e.analytic}
        for e in rep.entries
    ]


def _fail_input(message):
    click.echo(ds.canonical_json({"schema": ds.REPORT_SCHEMA, "error": message}),
               nl=False, err=True)


def _run(fn):
    """Wrap a command body with the error-to-exit-code mapping."""

    @functools.wraps(fn)
    def wrapper(*a, **kw):
        try:
            code = fn(*a, **kw)
        except CapExceeded as e:
            _fail_input(str(e))
            sys.exit(EXIT_CAP)
        except QuantcatError as e:
            _fail_input(str(e))
            sys.exit(EXIT_INPUT)
        sys.exit(code)

    return wrapper


_FMT = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]),
                    default="json", show_default=True)
_TIMINGS = click.option("--timings", is_flag=True,
                        help="Include wall-clock timings (breaks byte determinism).")


@click.group()
@click.version_option(__version__)
def main():
    """Quantale-enriched categories, Hausdorff liftings, and coalgebras."""


@main.command()
@click.argument("paths", nargs=-1, required=True)
@_FMT
@_TIMINGS
@_run
def check(paths, fmt, timings):
    """Run the law suites on every object in the given files."""
    t0 = time.monotonic()
    files = []
    ok = True
    for path in paths:
        spec = _read_json(path)
        schema = spec.get("schema") if isinstance(spec, dict) else None
        if schema == ds.QUANTALE_SCHEMA or isinstance(spec, str):
            q = ds.load_quantale(spec)
            laws = check_quantale_laws(q)
            assumptions = check_assumptions(q)
            entry_ok = laws.ok and assumptions.ok
            files.append({"path": path, "kind": "quantale",
                          "laws": _law_entries(laws),
                          "assumptions": _law_entries(assumptions),
                          "ok": entry_ok})
        elif schema == ds.VCATEGORY_SCHEMA:
            cat = ds.load_vcategory(spec)
            rep = check_vcategory(cat)
            files.append({"path": path, "kind": "vcategory",
                          "laws": _law_entries(rep), "ok": rep.ok})
            entry_ok = rep.ok
        elif schema == ds.COALGEBRA_SCHEMA:
            carrier = ds.load_vcategory(spec["category"])
            crep = check_vcategory(carrier)
            if not crep.ok:
                files.append({"path": path, "kind": "coalgebra",
                              "laws": _law_entries(crep), "ok": False})
                entry_ok = False
            else:
                c = ds.load_coalgebra(spec)
                rep = check_coalgebra(c)
                files.append({"path": path, "kind": "coalgebra",
                              "laws": _law_entries(rep), "ok": rep.ok})
                entry_ok = rep.ok
        else:
            raise DescriptorError(f"{path}: unrecognized schema {schema!r}")
        ok = ok and entry_ok
    tm = {"seconds": round(time.monotonic() - t0, 3)} if timings else None
    return _report("check", {"files": files}, ok, fmt, tm)


@main.command()
@click.option("--category", "category_path", required=True)
@click.option("--left", "-a", "left", default="", help="Comma-separated state ids.")
@click.option("--right", "-b", "right", default="", help="Comma-separated state ids.")
@_FMT
@_run
def hausdorff(category_path, left, right, fmt):
    """Lifted distances and up-closures for two subsets."""
    cat = _load_checked_category(category_path)
    q = cat.quantale

    def parse_subset(text):
        ids = [s for s in text.split(",") if s]
        for s in ids:
            if s not in cat.states:
                raise DescriptorError(f"unknown state {s!r}")
        return frozenset(ids)

    a, b = parse_subset(left), parse_subset(right)
    fwd = hausdorff_distance(cat, a, b)
    bwd = hausdorff_distance(cat, b, a)
    body = {
        "left": ds.subset_to_json(a),
        "right": ds.subset_to_json(b),
        "distance": q.format(fwd),
        "reverse": q.format(bwd),
        "symmetric": q.format(q.meet(fwd, bwd)),
        "up_left": ds.subset_to_json(up_closure(cat, a)),
        "up_right": ds.subset_to_json(up_closure(cat, b)),
    }
    return _report("hausdorff", body, True, fmt)


def _parse_functor(text, quantale):
    if text == "H":
        return HComp(Id())
    return ds.load_functor(json.loads(text), quantale)


@main.command()
@click.option("--functor", "functor_text", default="H", show_default=True,
              help='"H" or an inline functor AST as JSON.')
@click.option("--quantale", "quantale_name", default="bool", show_default=True)
@click.option("--depth", type=int, required=True)
@click.option("--cap", type=int, default=4096, show_default=True)
@_FMT
@_run
def chain(functor_text, quantale_name, depth, cap, fmt):
    """Level sizes of the final chain of a polynomial functor."""
    q = ds.load_quantale(quantale_name)
    expr = _parse_functor(functor_text, q)
    levels = final_chain(expr, depth, quantale=q, cap=cap)
    body = {"functor": functor_text, "quantale": quantale_name, "depth": depth,
            "sizes": [len(l.obj.states) for l in levels]}
    return _report("chain", body, True, fmt)


@main.command()
@click.option("--coalgebra", "coalgebra_path", required=True)
@click.option("--depth", type=int, required=True)
@click.option("--symmetric", is_flag=True)
@click.option("--cap", type=int, default=4096, show_default=True)
@_FMT
@_run
def behave(coalgebra_path, depth, symmetric, cap, fmt):
    """Depth-indexed behavioural distance table over all state pairs."""
    c = _load_checked_coalgebra(coalgebra_path)
    q = c.carrier.quantale
    rows = []
    for x in c.carrier.states:
        for y in c.carrier.states:
            d = behavioral_distance(c, x, y, depth, symmetric=symmetric, cap=cap)
            rows.append({"from": x, "to": y,
                         "distances": [q.format(v) for v in d]})
    body = {"depth": depth, "symmetric": symmetric, "table": rows}
    if fmt == "csv":
        click.echo("from,to," + ",".join(f"d{k}" for k in range(depth + 1)))
        for r in rows:
            click.echo(",".join([r["from"], r["to"]] + r["distances"]))
        return EXIT_OK
    return _report("behave", body, True, fmt)


def _parse_state_map(text, source, target):
    mapping = {}
    for part in (p for p in text.split(",") if p):
        if "=" not in part:
            raise DescriptorError(f"bad map entry {part!r}, expected src=tgt")
        s, t = part.split("=", 1)
        mapping[s] = t
    if set(mapping) != set(source.states):
        raise DescriptorError("map does not cover the source carrier")
    return VFunctor.from_dict(source, target, mapping)


@main.command()
@click.option("--coalgebra", "coalgebra_path", required=True)
@click.option("--target", "target_path", required=True)
@click.option("--left", required=True, help="Comma-separated src=tgt pairs.")
@click.option("--right", required=True, help="Comma-separated src=tgt pairs.")
@_FMT
@_run
def equalize(coalgebra_path, target_path, left, right, fmt):
    """Largest sub-coalgebra on which two homomorphisms agree."""
    cx = _load_checked_coalgebra(coalgebra_path)
    cy = _load_checked_coalgebra(target_path)
    f = _parse_state_map(left, cx.carrier, cy.carrier)
    g = _parse_state_map(right, cx.carrier, cy.carrier)
    for name, h in (("left", f), ("right", g)):
        if not is_coalg_hom(h, cx, cy):
            raise DescriptorError(f"{name} map is not a coalgebra homomorphism")
    sub, incl = equalizer(cx, f, g)
    body = {
        "carrier": list(sub.carrier.states),
        "structure": {s: ds.dump_term(sub.functor, sub.structure[s], sub.carrier.quantale)
                      for s in sub.carrier.states},
        "inclusion": list(incl.mapping),
    }
    return _report("equalize", body, True, fmt)


@main.command()
@click.option("--file", "path", required=True,
              help="Set-level coalgebra descriptor, optionally with a cone.")
@_FMT
@_run
def lift(path, fmt):
    """Greatest structure making a set-level coalgebra a real one."""
    spec = _read_json(path)
    cone_specs = spec.pop("cone", [])
    expr, q, states, structure = ds.load_set_coalgebra(spec)
    cone = []
    for leg in cone_specs:
        if set(leg) != {"mapping", "coalgebra"}:
            raise DescriptorError("cone leg needs mapping and coalgebra fields")
        target = ds.load_coalgebra(leg["coalgebra"])
        mapping = [leg["mapping"][s] for s in states]
        cone.append((mapping, target))
    out = initial_lift_coalgebra(expr, q, states, structure, cone=cone)
    body = {
        "states": list(states),
        "matrix": [[q.format(v) for v in row] for row in out.carrier.matrix],
    }
    return _report("lift", body, True, fmt)


@main.command()
@click.option("--category", "category_path", required=True)
@click.option("--phi", "phi_text", default=None,
              help="JSON map from comma-joined sorted subsets to states.")
@click.option("--cap", type=int, default=20000, show_default=True)
@_FMT
@_run
def cantor(category_path, phi_text, cap, fmt):
    """Witness that maps from the lifted object back are never embeddings."""
    cat = _load_checked_category(category_path)
    hx = hausdorff_object(cat)

    def verdict_json(v):
        out = {"kind": v.kind}
        if v.subsets is not None:
            out["subsets"] = [ds.subset_to_json(s) for s in v.subsets]
        if v.point is not None:
            out["point"] = v.point
        if v.values is not None:
            out["values"] = [str(x) for x in v.values]
        return out

    if phi_text is not None:
        raw = json.loads(phi_text)
        key = {",".join(sorted(a)): a for a in hx.elements}
        if set(raw) != set(key):
            raise DescriptorError("phi keys do not match the lifted carrier")
        phi = {key[k]: v for k, v in raw.items()}
        v = cantor_check(cat, phi, hx=hx)
        return _report("cantor", {"verdicts": [verdict_json(v)]},
                       v.kind != "contradiction-witness", fmt)

    total = len(cat.states) ** len(hx.elements)
    if total > cap:
        raise CapExceeded("candidate maps from the lifted object", total, cap)
    from itertools import product as iproduct

    tallies = {}
    first = {}
    for images in iproduct(cat.states, repeat=len(hx.elements)):
        v = cantor_check(cat, list(images), hx=hx)
        tallies[v.kind] = tallies.get(v.kind, 0) + 1
        first.setdefault(v.kind, verdict_json(v))
    body = {"maps": total,
            "tallies": {k: tallies[k] for k in sorted(tallies)},
            "witnesses": {k: first[k] for k in sorted(first)}}
    return _report("cantor", body, "contradiction-witness" not in tallies, fmt)


@main.command("omega-verify")
@click.option("--depth", type=int, default=32, show_default=True)
@_FMT
@_run
def omega_verify(depth, fmt):
    """Check the truncation cone against the final chain."""
    rep = verify_chain_commutation(depth)
    return _report("omega-verify", {"depth": depth, "laws": _law_entries(rep)},
                   rep.ok, fmt)


@main.command()
@click.option("--coalgebra", "coalgebra_path", required=True)
@_FMT
@_run
def ana(coalgebra_path, fmt):
    """Behaviour of a Boolean-quantale lifting coalgebra in the extended
    naturals; emits "inf" for infinity."""
    c = _load_checked_coalgebra(coalgebra_path)
    beh = anamorphism(c)
    ok = is_omega_hom(c, beh)
    body = {"behavior": {s: repr(beh[s]) for s in c.carrier.states}}
    return _report("ana", body, ok, fmt)


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cases", type=int, default=50, show_default=True)
@_FMT
@_TIMINGS
@_run
def selfcheck(seed, cases, fmt, timings):
    """Run the seeded law sweeps and report per-suite results."""
    t0 = time.monotonic()
    rep = run_law_suites(seed, cases)
    tm = {"seconds": round(time.monotonic() - t0, 3)} if timings else None
    return _report("selfcheck", rep, rep["ok"], fmt, tm)


if __name__ == "__main__":
    main()
