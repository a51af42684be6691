"""Command-line front end.

Exit status: 0 when every requested verdict passes, 1 on a failed verdict or
an internal inconsistency (reported with the step that raised), 2 on an
unknown knot, a braid parse error or an unreadable knot table.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from kinv import algebra as alg
from kinv.alexander import alexander_poly
from kinv.diagrams import BraidSyntaxError, BraidWord, DiagramError, braid_to_long_knot, load_table, parse_braid, table_path
from kinv.engine import braid_conjugation_check, compute_z_algebra, compute_z_twisted, eval_verma, eval_vn, vn_as_series
from kinv.mmr import colored_jones_function, mm_bound_check, verify_mmr_equality
from kinv.modules import phi_t_eigenvalue, phi_w_eigenvalue, w_eigenvalue_closed_form

SCHEMA_VERSION = "kinv.cli/1"
COMMANDS = ("jones", "verma", "mmr", "verify", "table")
SUITES = ("bridge", "eigen", "invariance", "twist", "xc")


class UsageFailure(Exception):
    """Bad knot selector, parse error or unreadable table (exit 2)."""


class StepFailure(Exception):
    def __init__(self, step: str, exc: BaseException):
        super().__init__(f"{step}: {type(exc).__name__}: {exc}")
        self.step = step


@dataclass
class RunConfig:
    command: str
    knot: str | None = None
    braid: str | None = None
    order: int = 8
    n: int = 2
    sigma: int = -1
    format: str = "text"
    out: str | None = None
    suites: tuple[str, ...] = SUITES

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageFailure(f"unknown command {self.command!r}")
        if self.command in ("jones", "verma", "mmr") and (self.knot is None) == (self.braid is None):
            raise UsageFailure("give exactly one of --knot or --braid")
        if self.order < 0:
            raise UsageFailure("--order must be non-negative")
        if self.n < 1:
            raise UsageFailure("--n must be at least 1")
        if self.sigma not in (-1, 1):
            raise UsageFailure("--sigma must be 1 or -1")
        bad = set(self.suites) - set(SUITES)
        if bad:
            raise UsageFailure(f"unknown suite(s): {', '.join(sorted(bad))}")


def _step(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (UsageFailure, StepFailure):
        raise
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        raise StepFailure(name, exc) from exc


def _table() -> dict[str, list[BraidWord]]:
    try:
        return load_table()
    except (OSError, DiagramError, BraidSyntaxError, ValueError) as exc:
        raise UsageFailure(f"cannot read knot table {table_path()}: {exc}") from exc


def _select(cfg: RunConfig) -> BraidWord:
    if cfg.braid is not None:
        try:
            b = parse_braid(cfg.braid)
        except (BraidSyntaxError, DiagramError) as exc:
            raise UsageFailure(f"cannot parse braid {cfg.braid!r}: {exc}") from exc
    else:
        table = _table()
        if cfg.knot not in table:
            raise UsageFailure(f"unknown knot {cfg.knot!r}")
        b = table[cfg.knot][0]
    try:
        braid_to_long_knot(b)
    except DiagramError as exc:
        raise UsageFailure(str(exc)) from exc
    return b


# --- commands -----------------------------------------------------------------------


def cmd_jones(cfg: RunConfig) -> tuple[dict, str, bool]:
    b = _select(cfg)
    j = _step("eval_vn", eval_vn, braid_to_long_knot(b), cfg.n)
    data = {"knot": b.name or str(b), "braid": list(b.letters), "strands": b.strands, "n": cfg.n, "variable": "s", "jones": j.to_json()}
    return data, str(j), True


def cmd_verma(cfg: RunConfig) -> tuple[dict, str, bool]:
    b = _select(cfg)
    j = _step("colored_jones_function", colored_jones_function, b, cfg.sigma, cfg.order)
    ok, where = mm_bound_check(j.series)
    coeffs = [j.series[i] for i in range(cfg.order + 1)]
    data = {
        "knot": b.name or str(b),
        "order": cfg.order,
        "sigma": cfg.sigma,
        "variable": "lam",
        "coefficients": [c.to_json() for c in coeffs],
        "degree_bound": ok,
    }
    lines = [f"h^{i}: {c}" for i, c in enumerate(coeffs)]
    lines.append(f"degree bound: {'pass' if ok else 'FAIL'}" + (f" at {where}" if where else ""))
    return data, "\n".join(lines), ok


def cmd_mmr(cfg: RunConfig) -> tuple[dict, str, bool]:
    b = _select(cfg)
    rep = _step("verify_mmr_equality", verify_mmr_equality, b, cfg.order, cfg.sigma)
    data = json.loads(rep.to_json())
    data["report_schema"] = data.pop("schema")
    verdict = "pass" if rep.ok else "FAIL"
    text = "\n".join(
        [
            f"knot: {rep.knot}",
            f"order: {rep.order_used} (requested {rep.order_requested})",
            f"Delta: {rep.alexander}",
            f"rho10: {rep.rho10}",
            f"P1: {rep.p1}",
            f"rho11: {rep.rho11}",
            f"rho10 = P1: {'pass' if rep.equal else 'FAIL'}",
            f"degree bound: {'pass' if rep.degree_bound else 'FAIL'}",
            f"zeroth order 1/Delta: {'pass' if rep.zeroth_order else 'FAIL'}",
            f"first order residual: {'pass' if rep.first_order_residual_zero else 'FAIL'}",
            f"verdict: {verdict}",
        ]
    )
    return data, text, rep.ok


def cmd_table(cfg: RunConfig) -> tuple[dict, str, bool]:
    table = _table()
    rows = {name: [str(b).split(": ", 1)[-1] + (f" @{b.strands}" if b.strands != max((abs(g) for g in b.letters), default=0) + 1 else "") for b in bs] for name, bs in table.items()}
    text = "\n".join(f"{name}: {'; '.join(ws)}" for name, ws in rows.items())
    return {"path": str(table_path()), "knots": rows}, text, True


# --- verify suites ----------------------------------------------------------------------


def _suite_xc(order: int) -> dict[str, bool]:
    sp = alg.algebra(order)
    r = alg.r_matrix(order)
    rinv = alg.r_matrix_inverse(order)
    out = {}
    for label, rr, ri in [("R", r, rinv)] + [
        (f"R[{name}]", alg.twist(r, phi), alg.twist_inverse(rinv, phi))
        for name, phi in (("kappa", sp.kappa()), ("A", sp.A()), ("B", sp.B()))
    ]:
        rep = alg.verify_xc(rr, sp.kappa(), ri)
        for axiom, ok in asdict(rep).items():
            out[f"{label}.{axiom}"] = ok
    return out


def _suite_twist(order: int) -> dict[str, bool]:
    sp = alg.algebra(order)
    out = {}
    for word in ((1,), (1, 2), (1, 1, 2)):
        b = BraidWord(max(word) + 1, word)
        for name, phi in (("kappa", sp.kappa()), ("A", sp.A())):
            out[f"braid{list(word)}.{name}"] = braid_conjugation_check(b, phi, order)
    out["cartan_twist"] = alg.verify_cartan_twist_identity(order)
    table = _table()
    for knot in ("3_1", "4_1"):
        if knot not in table:
            continue
        d = braid_to_long_knot(table[knot][0])
        z = compute_z_algebra(d, order)
        for name, phi in (("kappa", sp.kappa()), ("A", sp.A())):
            out[f"{knot}.Z_twisted.{name}"] = compute_z_twisted(d, phi, order).equals(z)
    return out


def _suite_invariance(order: int) -> dict[str, bool]:
    out = {}
    for name, bs in _table().items():
        if len(bs) < 2:
            continue
        js = [eval_verma(braid_to_long_knot(b), -1, order) for b in bs]
        out[f"{name}.J"] = all(j.equals(js[0]) for j in js[1:])
        ds = [alexander_poly(b) for b in bs]
        out[f"{name}.Delta"] = all(d == ds[0] for d in ds[1:])
    return out


def _suite_bridge(order: int) -> dict[str, bool]:
    table = _table()
    out = {}
    for knot in ("3_1", "4_1"):
        if knot not in table:
            continue
        d = braid_to_long_knot(table[knot][0])
        j = eval_verma(d, -1, order)
        for n in (2, 3, 4):
            out[f"{knot}.n={n}"] = j.subs_var(n - 1).equals(vn_as_series(eval_vn(d, n), order))
    return out


def _suite_eigen(order: int) -> dict[str, bool]:
    from kinv.coeff import HSeries, LaurentPoly

    out = {}
    for s in (1, -1):
        out[f"W.sigma={s}"] = phi_w_eigenvalue(s, order).equals(w_eigenvalue_closed_form(s, order))
        t = HSeries.exp_linear(LaurentPoly.monomial(1, -2 * s, "lam"), order, "lam")
        out[f"T.sigma={s}"] = phi_t_eigenvalue(s, order).equals(t)
    return out


SUITE_RUNNERS = {
    "bridge": _suite_bridge,
    "eigen": _suite_eigen,
    "invariance": _suite_invariance,
    "twist": _suite_twist,
    "xc": _suite_xc,
}


def cmd_verify(cfg: RunConfig) -> tuple[dict, str, bool]:
    results = {}
    for suite in sorted(set(cfg.suites)):
        results[suite] = _step(f"verify.{suite}", SUITE_RUNNERS[suite], cfg.order)
    ok = all(all(r.values()) for r in results.values())
    lines = []
    for suite, checks in results.items():
        for check, passed in checks.items():
            lines.append(f"{suite:<11} {check:<32} {'pass' if passed else 'FAIL'}")
    lines.append(f"verdict: {'pass' if ok else 'FAIL'}")
    return {"order": cfg.order, "results": results, "ok": ok}, "\n".join(lines), ok


RUNNERS = {"jones": cmd_jones, "verma": cmd_verma, "mmr": cmd_mmr, "verify": cmd_verify, "table": cmd_table}


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        data, text, ok = RUNNERS[cfg.command](cfg)
    except UsageFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StepFailure as exc:
        print(f"internal inconsistency in step {exc}", file=sys.stderr)
        return 1
    if cfg.format == "json":
        payload = {"schema": SCHEMA_VERSION, "command": cfg.command, **data}
        payload.setdefault("ok", ok)
        body = json.dumps(payload, sort_keys=True, indent=2)
    else:
        body = text
    if cfg.out:
        Path(cfg.out).write_text(body + "\n", encoding="utf-8")
    else:
        print(body)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kinv", description="Universal sl2 knot invariants and their large-colour expansion.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--knot", help="name from the knot table")
    p.add_argument("--braid", help="braid literal, e.g. '[1,1,1]'")
    p.add_argument("--n", type=int, default=2, help="dimension of the colouring module (jones)")
    p.add_argument("--order", type=int, default=8, help="h-order of truncation")
    p.add_argument("--sigma", type=int, default=-1, choices=(-1, 1))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--suite", action="append", choices=SUITES, help="verify suite (repeatable; default all)")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(
        command=ns.command,
        knot=ns.knot,
        braid=ns.braid,
        order=ns.order,
        n=ns.n,
        sigma=ns.sigma,
        format=ns.format,
        out=ns.out,
        suites=tuple(ns.suite) if ns.suite else SUITES,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
