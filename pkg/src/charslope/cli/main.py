"""charslope command line: analyze, clean, blow up, resolve and verify."""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .. import __version__
from ..algebra.order import format_order
from ..errors import (CharslopeError, DegeneratePresentation, InputError, OutOfScope,
                      TheoremViolation)
from ..geometry import Center, CoordPoint
from ..presentation import PPresentation, adaptation_case, clean_at, slope_at
from ..rees import depth_bound, resolve_monomial
from ..transform import (blowup_presentation, lift_and_resolve, monomial_contact_check,
                         well_adapted_after_transform_check)
from ..verify import SUITES, verify_suite
from . import report as R
from .session import SessionInput, parse_input

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_SCOPE = 0, 1, 2, 3


@dataclass
class Session:
    """Mutable pipeline state: the input plus the list of active charts."""
    input: SessionInput | None
    charts: list[PPresentation] = field(default_factory=list)
    results: list[dict] = field(default_factory=list)
    suite_failed: bool = False

    @classmethod
    def start(cls, inp: SessionInput | None) -> "Session":
        return cls(inp, [inp.presentation()] if inp is not None else [])

    def _require(self) -> None:
        if self.input is None:
            raise InputError("", "this command needs an input file")

    def pick(self, chart_id: str | None) -> list[PPresentation]:
        self._require()
        if chart_id is None:
            return list(self.charts)
        for p in self.charts:
            if p.chart.id == chart_id:
                return [p]
        raise InputError("/chart", f"no active chart {chart_id!r}; active: "
                         + ", ".join(p.chart.id for p in self.charts))

    def replace(self, old: PPresentation, new: Sequence[PPresentation]) -> None:
        k = self.charts.index(old)
        self.charts[k:k + 1] = list(new)


def _names_to_point(pres: PPresentation, names: Sequence[str] | None) -> CoordPoint:
    if names is None:
        return pres.origin()
    vars_ = pres.chart.downstairs_vars
    out = []
    for n in names:
        if n not in vars_:
            raise InputError("/point", f"unknown variable {n!r} in chart {pres.chart.id}")
        out.append(vars_.index(n))
    return CoordPoint(out)


def _names_to_center(pres: PPresentation, names: Sequence[str]) -> Center:
    z = pres.chart.z_name
    vars_ = pres.chart.downstairs_vars
    idx = []
    for n in names:
        if n == z:
            continue
        if n not in vars_:
            raise InputError("/center", f"unknown variable {n!r} in chart {pres.chart.id}")
        idx.append(vars_.index(n))
    return Center(z in names, idx)


def _context(pres: PPresentation, what: str):
    class _Ctx:
        def __enter__(self):
            return self

        def __exit__(self, et, ev, tb):
            if isinstance(ev, CharslopeError) and not getattr(ev, "_ctx", False):
                ev.args = (f"chart {pres.chart.id}, {what}: {ev}",)
                ev._ctx = True
            return False
    return _Ctx()


# -- commands ---------------------------------------------------------------------

def cmd_analyze(S: Session, opts: dict) -> dict:
    charts = []
    for pres in S.pick(opts.get("chart")):
        with _context(pres, "analyze"):
            points = None
            if opts.get("point") is not None:
                points = [_names_to_point(pres, opts["point"])]
            ch = R.chart_summary(pres)
            ch["locus"] = R.locus_summary(pres)
            ch["rows"] = R.point_rows(pres, points)
        charts.append(ch)
    return {"command": "analyze", "charts": charts}


def cmd_clean(S: Session, opts: dict) -> dict:
    pres = S.pick(opts.get("chart"))[0]
    with _context(pres, "clean"):
        pt = _names_to_point(pres, opts.get("point"))
        names = pres.chart.downstairs_vars
        cleaned, log = clean_at(pres, pt)
        frag = {
            "command": "clean",
            "chart": pres.chart.id,
            "point": R.point_label(pres, pt),
            "passes": [{"case": st.case.value, "alpha": st.alpha.format(names),
                        "slope_before": format_order(st.slope_before),
                        "slope_after": format_order(st.slope_after)} for st in log],
            "final_case": adaptation_case(cleaned, pt).value,
            "slope": format_order(slope_at(cleaned, pt)),
            "result": R.chart_summary(cleaned),
        }
    S.replace(pres, [cleaned])
    return frag


def cmd_blowup(S: Session, opts: dict) -> dict:
    if not opts.get("center"):
        raise InputError("/center", "blowup needs --center")
    pres = S.pick(opts.get("chart"))[0]
    with _context(pres, "blowup"):
        center = _names_to_center(pres, opts["center"])
        blow = blowup_presentation(pres, center, regrid=bool(opts.get("regrid")))
        rec = blow.record
        children = []
        for chart, child in blow.children:
            var = chart.history[-1].chart_var
            pt = CoordPoint([var])
            ch = R.chart_summary(child)
            ch["exceptional"] = {
                "divisor": chart.ledger.entries[-1].id,
                "var": chart.downstairs_vars[var],
                "slope": format_order(slope_at(child, pt)),
                "case": adaptation_case(child, pt).value,
                "adapted": well_adapted_after_transform_check(child, var, rec.slope_at_center),
            }
            ch["contact"] = monomial_contact_check(child).ok
            ch["locus"] = R.locus_summary(child)
            ch["rows"] = R.point_rows(child)
            children.append(ch)
        frag = {
            "command": "blowup",
            "record": {
                "center": R.center_label(pres, center),
                "parent": rec.parent_id,
                "children": list(rec.child_ids),
                "slope_at_center": format_order(rec.slope_at_center),
                "q_H": format_order(rec.new_divisor_exponent),
                "h": rec.h,
                "s": rec.s,
            },
            "children": children,
        }
    S.replace(pres, [c for _, c in blow.children])
    return frag


def cmd_resolve(S: Session, opts: dict) -> dict:
    runs = []
    for pres in S.pick(opts.get("chart")):
        with _context(pres, "resolve"):
            res = lift_and_resolve(pres)
            names = pres.chart.downstairs_vars
            steps = [{
                "chart": st.chart_id,
                "center": st.center.label(names, pres.chart.z_name),
                "q_H": format_order(st.record.new_divisor_exponent),
                "h": st.record.h,
                "children": list(st.record.child_ids),
                "verdicts": {k: (v.value if v is not None else None) for k, v in st.verdicts.items()},
                "contact": dict(st.contact_ok),
            } for st in res.steps]
            leaves = []
            for node in res.leaves():
                lf = R.chart_summary(node.payload)
                lf["nonsingular"] = R.locus_summary(node.payload)["empty"]
                leaves.append(lf)
            sv = res.start_verdict
            runs.append({
                "chart": pres.chart.id,
                "start_verdict": sv.kind.value if sv is not None else None,
                "v_ord": format_order(sv.v_ord) if sv is not None else None,
                "ord_M": format_order(sv.monomial_order) if sv is not None else None,
                "steps": steps,
                "leaves": leaves,
            })
        S.replace(pres, [n.payload for n in res.leaves()])
    return {"command": "resolve", "runs": runs}


def cmd_resolve_monomial(S: Session, opts: dict) -> dict:
    runs = []
    for pres in S.pick(opts.get("chart")):
        with _context(pres, "resolve-monomial"):
            M = pres.chart.ledger
            res = resolve_monomial(M, pres.chart)
            names = pres.chart.downstairs_vars
            runs.append({
                "chart": pres.chart.id,
                "steps": [{"chart": cid, "center": Center(True, T).label(names, pres.chart.z_name)}
                          for cid, T in res.steps],
                "depth": res.depth(),
                "depth_bound": depth_bound(M),
                "max_final_order": format_order(res.max_final_order()),
                "leaves": [{"chart": n.chart.id,
                            "exponents": R.carrier_exponents(n.chart.ledger, names)}
                           for n in res.leaves()],
            })
    return {"command": "resolve-monomial", "runs": runs}


def cmd_verify(S: Session, opts: dict) -> dict:
    name = opts.get("suite") or "all"
    names = list(SUITES) if name == "all" else [name]
    if name != "all" and name not in SUITES:
        raise InputError("/suite", f"unknown suite {name!r}; known: all, {', '.join(SUITES)}")
    seed = opts.get("seed", 0)
    count = opts.get("count", 100)
    suites = []
    for n in names:
        rep = verify_suite(n, seed, count)
        suites.append(R.jsonable({
            "suite": rep.name, "seed": rep.seed, "count": rep.count, "ok": rep.ok,
            "passed": rep.passed, "failed": rep.failed, "out_of_regime": rep.out_of_regime,
            "notes": rep.notes, "failures": rep.failures,
        }))
        S.suite_failed |= not rep.ok
    return {"command": "verify", "suites": suites}


COMMANDS = {
    "analyze": cmd_analyze,
    "clean": cmd_clean,
    "blowup": cmd_blowup,
    "resolve": cmd_resolve,
    "resolve-monomial": cmd_resolve_monomial,
    "verify": cmd_verify,
}


def run_command(S: Session, command: str, opts: dict | None = None) -> dict:
    frag = COMMANDS[command](S, dict(opts or {}))
    S.results.append(frag)
    return frag


def run_pipeline(S: Session, base: dict) -> None:
    S._require()
    if not S.input.pipeline:
        raise InputError("/pipeline", "the input has no pipeline script")
    for step in S.input.pipeline:
        opts = {k: v for k, v in step.items() if k != "command"}
        if step["command"] == "verify":
            opts.setdefault("seed", base.get("seed", 0))
            if "CHARSLOPE_SEED" in os.environ:
                opts["seed"] = base["seed"]
        run_command(S, step["command"], opts)


def build_report(S: Session, error: CharslopeError | None = None) -> dict:
    inp = None
    if S.input is not None:
        p0 = S.input.presentation()
        inp = {"field": f"F_{S.input.field.q}", "p": S.input.field.p, "q": S.input.q,
               "vars": list(S.input.vars), "f": p0.format_f()}
    rep = {"tool": "charslope", "version": __version__, "input": inp,
           "results": S.results, "status": "ok"}
    if error is not None:
        rep["status"] = "error"
        rep["error"] = {"kind": type(error).__name__, "message": str(error)}
        if isinstance(error, InputError):
            rep["error"]["pointer"] = error.pointer
    return R.jsonable(rep)


def exit_code(error: CharslopeError | None, S: Session) -> int:
    if error is None:
        return EXIT_VIOLATION if S.suite_failed else EXIT_OK
    if isinstance(error, TheoremViolation):
        return EXIT_VIOLATION
    if isinstance(error, (OutOfScope, DegeneratePresentation)):
        return EXIT_SCOPE
    return EXIT_USAGE


def _csv(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charslope", description=__doc__)
    ap.add_argument("--version", action="version", version=f"charslope {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, help: str, needs_input: bool = True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("input", nargs=None if needs_input else "?", help="session JSON file")
        sp.add_argument("--json", action="store_true", help="emit the JSON report")
        sp.add_argument("--chart", help="restrict to one active chart id")
        return sp

    sp = add("analyze", "slope, case and v_ord table over coordinate points")
    sp.add_argument("--point", type=_csv, help="comma-separated variables, e.g. x,y")
    sp = add("clean", "clean the section at a point (default: origin)")
    sp.add_argument("--point", type=_csv)
    sp = add("blowup", "blow up a coordinate center <z, x_S>")
    sp.add_argument("--center", type=_csv, required=True, help="e.g. z,x,y")
    sp.add_argument("--regrid", action="store_true", help="refine s instead of failing off-grid")
    add("resolve", "lift the monomial resolution of the ledger")
    add("resolve-monomial", "combinatorial resolution of the ledger alone")
    sp = add("verify", "run randomised verification suites", needs_input=False)
    sp.add_argument("--suite", default="all", help=f"all or one of: {', '.join(SUITES)}")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=100, help="instances per (p, e) family")
    sp = add("pipeline", "run the input's pipeline script")
    sp.add_argument("--seed", type=int, default=0)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    opts = {k: v for k, v in vars(args).items()
            if k not in ("command", "input", "json") and v is not None}
    env_seed = os.environ.get("CHARSLOPE_SEED")
    if env_seed is not None and "seed" in opts:
        try:
            opts["seed"] = int(env_seed)
        except ValueError:
            print(f"charslope: CHARSLOPE_SEED must be an integer, got {env_seed!r}", file=sys.stderr)
            return EXIT_USAGE
    if args.command == "verify" and opts.get("count", 1) < 1:
        print("charslope: --count must be positive", file=sys.stderr)
        return EXIT_USAGE

    S = Session(None)
    error: CharslopeError | None = None
    try:
        if args.input is not None:
            S = Session.start(parse_input(args.input))
        if args.command == "pipeline":
            run_pipeline(S, opts)
        else:
            run_command(S, args.command, opts)
    except CharslopeError as exc:
        error = exc
        print(f"charslope: {type(exc).__name__}: {exc}", file=sys.stderr)

    rep = build_report(S, error)
    sys.stdout.write(R.dumps(rep) if args.json else R.render_text(rep))
    return exit_code(error, S)


if __name__ == "__main__":
    sys.exit(main())
