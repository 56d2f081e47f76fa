"""Command-line front end: ``heckelab <command> ...``.

Exit codes: 0 verified / success, 1 counterexample, 2 usage error,
3 precondition error (e.g. ``gcd(N, m) != 1``).
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import click

from heckelab import bounds as bd
from heckelab import class_numbers, oracle
from heckelab import trace as tr
from heckelab import verify as vf
from heckelab.errors import HeckeLabError, PreconditionError
from heckelab.hecke_algebra import a2_value, char_poly_prefix

EXIT_COUNTEREXAMPLE = 1
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4


@dataclass
class RunConfig:
    fmt: str
    cache_dir: str | None
    workers: int
    cap: int


def parse_int_list(text: str) -> list[int]:
    """``"1,3,7"``, ``"1..99"`` or ``"1..99:2"`` (inclusive, optional step)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            rng, _, step = part.partition(":")
            lo, hi = rng.split("..")
            out.extend(range(int(lo), int(hi) + 1, int(step) if step else 1))
        else:
            out.append(int(part))
    return out


class IntList(click.ParamType):
    name = "INTLIST"

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        try:
            return parse_int_list(value)
        except ValueError:
            self.fail(f"{value!r} is not a list/range of integers", param, ctx)


INT_LIST = IntList()


# Small parameter fields stay JSON numbers; every computed value is a decimal string.
PLAIN_KEYS = frozenset({"N", "weight", "m", "k", "dim", "checked", "max_n", "k_N", "delta_k1"})


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, dict):
        return {k: v if k in PLAIN_KEYS and isinstance(v, int) else _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def emit(cfg: RunConfig, record: dict, rows: list[dict] | None = None) -> None:
    """Print one result in the configured format."""
    if cfg.fmt == "json":
        click.echo(json.dumps({"schema": vf.SCHEMA_VERSION, **_jsonable(record)}, indent=2, sort_keys=True))
    elif cfg.fmt == "csv":
        rows = rows if rows is not None else [record]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: str(v) for k, v in r.items()})
        click.echo(buf.getvalue(), nl=False)
    else:
        for key, val in record.items():
            click.echo(f"{key:>12}: {val}")


def _fail_precondition(err: Exception):
    click.echo(f"error: {err}", err=True)
    sys.exit(EXIT_PRECONDITION)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "human"]), default=None,
              help="Output format (default: human on a terminal, json when piped).")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None, envvar=class_numbers.CACHE_ENV,
              help="Directory for the Hurwitz class number cache.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--cap", type=click.IntRange(min=1), default=vf.DEFAULT_CAP, show_default=True,
              help="Stop after this many counterexamples.")
@click.pass_context
def cli(ctx, fmt, cache_dir, workers, cap):
    """Exact Hecke traces, Hecke polynomial coefficients and theorem checks."""
    if fmt is None:
        fmt = "human" if sys.stdout.isatty() else "json"
    ctx.obj = RunConfig(fmt, cache_dir, workers, cap)


def _index_options(f):
    f = click.option("--weight", type=int, required=True, help="Even weight 2k >= 2.")(f)
    f = click.option("--level", type=click.IntRange(min=1), default=1, show_default=True)(f)
    f = click.option("--m", "m", type=click.IntRange(min=1), required=True, help="Hecke index.")(f)
    return f


def _check_weight(weight: int):
    if weight < 2 or weight % 2:
        raise click.BadParameter(f"weight must be even and >= 2, got {weight}", param_hint="--weight")


@cli.command("trace")
@_index_options
@click.pass_obj
def cmd_trace(cfg: RunConfig, m, level, weight):
    """Tr T_m(N, 2k) with its four Eichler-Selberg terms."""
    _check_weight(weight)
    class_numbers.preload(4 * m, cfg.cache_dir)
    try:
        b = tr.trace(tr.HeckeIndex(level, weight, m))
    except PreconditionError as e:
        _fail_precondition(e)
    emit(cfg, {"N": level, "weight": weight, "m": m, "A1": b.A1, "A2": b.A2, "A3": b.A3, "A4": b.A4, "total": b.total})


@cli.command("dim")
@click.option("--level", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--weight", type=int, required=True)
@click.pass_obj
def cmd_dim(cfg: RunConfig, level, weight):
    """s(N, 2k) with the terms of the dimension formula."""
    _check_weight(weight)
    d = tr.dim_s(level, weight)
    rec = {"N": level, "weight": weight, "main": d.main, "boundary": d.boundary, "delta_k1": d.delta_k1,
           "c3_term": d.c3_term, "c4_term": d.c4_term, "total": d.total}
    if d.delta_k is not None:
        rec["delta_k"] = d.delta_k
    emit(cfg, rec)


@cli.command("a2")
@_index_options
@click.pass_obj
def cmd_a2(cfg: RunConfig, m, level, weight):
    """Second Hecke polynomial coefficient a_2(T_m(N, 2k))."""
    _check_weight(weight)
    class_numbers.preload(4 * m * m, cfg.cache_dir)
    try:
        v = a2_value(level, weight, m)
        a1 = tr.trace_value(level, weight, m)
    except PreconditionError as e:
        _fail_precondition(e)
    emit(cfg, {"N": level, "weight": weight, "m": m, "a1": a1, "a2": v})


@cli.command("charpoly")
@_index_options
@click.option("--n-max", type=click.IntRange(min=1), default=2, show_default=True)
@click.pass_obj
def cmd_charpoly(cfg: RunConfig, m, level, weight, n_max):
    """Leading coefficients a_0..a_n of the Hecke polynomial."""
    _check_weight(weight)
    try:
        cp = char_poly_prefix(tr.HeckeIndex(level, weight, m), n_max)
    except PreconditionError as e:
        _fail_precondition(e)
    emit(cfg, {"N": level, "weight": weight, "m": m, "dim": cp.dim, "power_sums": cp.power_sums, "coeffs": cp.coeffs})


@cli.command("table")
@click.option("--m", "m", type=click.IntRange(min=1), required=True)
@click.option("--levels", type=INT_LIST, default="1", show_default=True, help='e.g. "1..99:2"')
@click.option("--weights", type=INT_LIST, default="2..40:2", show_default=True)
@click.pass_obj
def cmd_table(cfg: RunConfig, m, levels, weights):
    """One row (N, weight, m, a1, a2) per level and weight with s(N, 2k) >= 2."""
    class_numbers.preload(4 * m * m, cfg.cache_dir)
    rows = []
    for N in levels:
        if N < 1 or gcd(N, m) != 1:
            continue
        for w in weights:
            if w < 2 or w % 2 or tr.dim(N, w) < 2:
                continue
            rows.append({"N": N, "weight": w, "m": m, "a1": tr.trace_value(N, w, m), "a2": a2_value(N, w, m)})
    if not rows:
        click.echo("no rows", err=True)
        return
    if cfg.fmt == "csv":
        emit(cfg, rows[0], rows)
    elif cfg.fmt == "json":
        click.echo(json.dumps({"schema": vf.SCHEMA_VERSION, "rows": _jsonable(rows)}, indent=2, sort_keys=True))
    else:
        for r in rows:
            click.echo(f"N={r['N']:<6} 2k={r['weight']:<4} a1={r['a1']}  a2={r['a2']}")


@cli.command("bounds")
@click.option("--variant", type=click.Choice(["t2", "t4"], case_sensitive=False), required=True)
@click.option("--level", type=click.IntRange(min=1), required=True)
@click.pass_obj
def cmd_bounds(cfg: RunConfig, variant, level):
    """E(N) upper bound, k_N and the global-threshold comparison."""
    r = bd.bound_report(level, variant)
    target = bd.T2_GLOBAL if r.variant == "T2" else bd.T4_GLOBAL
    env = bd.E_T2_envelope(level) if r.variant == "T2" else bd.E_T4_envelope(level)
    rec = {
        "N": level,
        "variant": r.variant,
        "E_upper": r.E_value,
        "E_upper_decimal": f"{float(r.E_value):.12g}",
        "target": target,
        "E_below_target": r.global_threshold_ok,
        "k_N": r.k_N,
        "envelope_upper_decimal": f"{float(env.hi):.12g}",
        "envelope_below_target": env.hi < target,
    }
    if r.E_components_value is not None:
        rec["E_upper_with_dimension_theta4"] = r.E_components_value
    emit(cfg, rec)


@cli.command("oracle-check")
@click.option("--m", "ms", type=INT_LIST, default="2,3,4,5,6,9,16", show_default=True)
@click.option("--weights", type=INT_LIST, default="12..60:2", show_default=True)
@click.pass_obj
def cmd_oracle_check(cfg: RunConfig, ms, weights):
    """Compare trace-formula a_1, a_2 with the level-one q-expansion oracle."""
    class_numbers.preload(4 * max(ms) ** 2, cfg.cache_dir)
    mismatches, checked = [], 0
    for w in weights:
        if oracle.level_one_dim(w) == 0:
            continue
        for m in ms:
            sig = oracle.oracle_signature(m, w)
            checked += 1
            a1 = tr.trace_value(1, w, m)
            a2 = a2_value(1, w, m) if sig.dim >= 2 else None
            if a1 != sig.a1 or a2 != sig.a2:
                mismatches.append({"weight": w, "m": m, "oracle": [sig.a1, sig.a2], "formula": [a1, a2]})
    emit(cfg, {"checked": checked, "mismatches": mismatches, "ok": not mismatches})
    if mismatches:
        sys.exit(EXIT_COUNTEREXAMPLE)


@cli.group("verify")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report here instead of stdout.")
@click.option("--timing/--no-timing", default=False, help="Include runtime_ms in the JSON report.")
@click.pass_context
def verify_group(ctx, out, timing):
    """Theorem checks; each writes a JSON verification report."""
    ctx.meta["out"] = out
    ctx.meta["timing"] = timing


def _report(ctx, fn, *args, **kwargs):
    cfg: RunConfig = ctx.obj
    try:
        rep = fn(*args, **kwargs)
    except PreconditionError as e:
        _fail_precondition(e)
    text = rep.to_json(include_timing=ctx.meta["timing"])
    if ctx.meta["out"]:
        with open(ctx.meta["out"], "w") as fh:
            fh.write(text + "\n")
    if cfg.fmt == "human" and not ctx.meta["out"]:
        click.echo(f"{rep.claim_id}: {rep.verdict} ({rep.details.get('checks', 0)} checks, {rep.runtime_ms} ms)")
        for w in rep.witnesses:
            click.echo(f"  {w['relation']}: " + ", ".join(f"{e['quantity']}(N={e['N']},{e['weight']},m={e['m']})={e['value']}" for e in w["entries"]))
    elif not ctx.meta["out"]:
        click.echo(text)
    sys.exit(EXIT_COUNTEREXAMPLE if rep.verdict == "counterexample" else 0)


@verify_group.command("t2-monotone")
@click.option("--level", "levels", type=INT_LIST, default="1", show_default=True, help='Odd levels, e.g. "1..199:2".')
@click.option("--k-max", type=click.IntRange(min=1), required=True)
@click.pass_context
def v_t2(ctx, levels, k_max):
    cfg = ctx.obj
    _report(ctx, vf.verify_T2_monotone, levels, k_max, cap=cfg.cap, workers=cfg.workers)


@verify_group.command("t4-nonrepeat")
@click.option("--level", "levels", type=INT_LIST, default="1", show_default=True)
@click.option("--k-max", type=click.IntRange(min=1), required=True)
@click.pass_context
def v_t4(ctx, levels, k_max):
    cfg = ctx.obj
    _report(ctx, vf.verify_T4_nonrepeat, levels, k_max, cap=cfg.cap, workers=cfg.workers)


@verify_group.command("t3-lt-t2")
@click.option("--k-min", type=click.IntRange(min=1), default=12, show_default=True)
@click.option("--k-max", type=click.IntRange(min=1), required=True)
@click.pass_context
def v_t3(ctx, k_min, k_max):
    _report(ctx, vf.verify_T3_lt_T2, k_max, k_min, cap=ctx.obj.cap)


@verify_group.command("prime-level")
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--primes", type=INT_LIST, required=True, help='Odd primes, e.g. "3,5,7" or "3..47".')
@click.option("--include-one/--no-include-one", default=True, show_default=True)
@click.option("--primes-only", is_flag=True, help="Drop non-primes from --primes instead of failing.")
@click.pass_context
def v_prime(ctx, k, primes, include_one, primes_only):
    from heckelab.arith import is_prime

    if primes_only:
        primes = [p for p in primes if p > 2 and is_prime(p)]
    _report(ctx, vf.verify_prime_level, k, primes, include_one, cap=ctx.obj.cap)


@verify_group.command("distinguish")
@click.option("--m", "m", type=click.Choice(["2", "4"]), required=True)
@click.option("--k-max", type=click.IntRange(min=1), required=True)
@click.pass_context
def v_dist(ctx, m, k_max):
    _report(ctx, vf.verify_distinguish, int(m), k_max, cap=ctx.obj.cap)


@verify_group.command("conj-scan")
@click.option("--m", "m", type=click.IntRange(min=2), required=True)
@click.option("--level", "levels", type=INT_LIST, default="1", show_default=True)
@click.option("--k-max", type=click.IntRange(min=1), required=True)
@click.option("--coprime-only", is_flag=True, help="Drop levels not coprime to m instead of failing.")
@click.pass_context
def v_conj(ctx, m, levels, k_max, coprime_only):
    from math import gcd

    if coprime_only:
        levels = [n for n in levels if gcd(n, m) == 1]
    cfg = ctx.obj
    _report(ctx, vf.conjecture_scan, m, levels, k_max, cap=cfg.cap, workers=cfg.workers)


@cli.command("hurwitz")
@click.option("--max-n", type=click.IntRange(min=0), required=True)
@click.pass_obj
def cmd_hurwitz(cfg: RunConfig, max_n):
    """Fill (and persist, with --cache-dir) the Hurwitz class number table."""
    t = class_numbers.preload(max_n, cfg.cache_dir)
    path = class_numbers.cache_path(cfg.cache_dir)
    emit(cfg, {"max_n": t.max_n, "cache": str(path) if path else None})


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="heckelab", standalone_mode=True)
    except PreconditionError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_PRECONDITION)
    except HeckeLabError as e:
        click.echo(f"internal error: {e}", err=True)
        sys.exit(EXIT_INTERNAL)


if __name__ == "__main__":
    main()
