"""Report fragments (plain JSON data) and the derived text rendering."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from ..algebra.order import _Infinity, format_order
from ..geometry import Center, CoordPoint
from ..presentation import PPresentation, point_table, sing_locus
from ..rees import carrier_exponents, monomial_order_at
from .session import poly_terms


def jsonable(obj: Any) -> Any:
    """Exact, float-free JSON data: rationals become "n/d" strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (Fraction, _Infinity)):
        return format_order(obj)
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    return str(obj)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def point_label(pres: PPresentation, pt: CoordPoint) -> str:
    return pt.label(pres.chart.downstairs_vars)


def center_label(pres: PPresentation, center: Center) -> str:
    return center.label(pres.chart.downstairs_vars, pres.chart.z_name)


def chart_summary(pres: PPresentation) -> dict:
    names = pres.chart.downstairs_vars
    return {
        "chart": pres.chart.id,
        "f": pres.format_f(),
        "coeffs": {str(i): poly_terms(a) for i, a in enumerate(pres.coeffs, start=1) if a},
        "ledger": {"s": pres.chart.ledger.s, "exponents": carrier_exponents(pres.chart.ledger, names)},
    }


def point_rows(pres: PPresentation, points=None) -> list[dict]:
    rows = []
    for r in point_table(pres, points):
        rows.append({
            "point": point_label(pres, r.point),
            "slope": format_order(r.slope),
            "case": r.case.value,
            "v_ord": format_order(r.v_ord) if r.v_ord is not None else None,
            "singular": r.singular,
            "passes": r.passes,
            "ord_M": format_order(monomial_order_at(pres.chart.ledger, r.point)),
        })
    return rows


def locus_summary(pres: PPresentation) -> dict:
    loc = sing_locus(pres)
    return {
        "empty": loc.empty,
        "origin_singular": loc.origin_singular,
        "maximal": [point_label(pres, pt) for pt in loc.maximal],
    }


# -- text -----------------------------------------------------------------------

_ROW_COLS = ("point", "slope", "case", "v_ord", "singular", "passes", "ord_M")


def _cell(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def table(rows: list[dict], cols=_ROW_COLS, indent: str = "  ") -> list[str]:
    cells = [[c for c in cols]] + [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(row[k]) for row in cells) for k in range(len(cols))]
    out = []
    for row in cells:
        out.append(indent + "  ".join(s.ljust(w) for s, w in zip(row, widths)).rstrip())
    return out


def _chart_lines(ch: dict, indent: str = "  ") -> list[str]:
    lines = [f"{indent}chart {ch['chart']}: f = {ch['f']}"]
    exps = ch["ledger"]["exponents"]
    if exps:
        body = ", ".join(f"{k}:{v}" for k, v in exps.items())
        lines.append(f"{indent}  ledger s={ch['ledger']['s']} {{{body}}}")
    return lines


def _render_fragment(fr: dict) -> list[str]:
    cmd = fr["command"]
    lines = [f"== {cmd}"]
    if cmd == "analyze":
        for ch in fr["charts"]:
            lines += _chart_lines(ch)
            loc = ch.get("locus")
            if loc is not None:
                lines.append("    sing locus: " + ("empty" if loc["empty"] else
                                                  "maximal " + " ".join(loc["maximal"])))
            lines += table(ch["rows"], indent="    ")
    elif cmd == "clean":
        lines += _chart_lines(fr["result"])
        lines.append(f"  point {fr['point']}: {len(fr['passes'])} pass(es), final case "
                     f"{fr['final_case']}, slope {fr['slope']}")
        for k, st in enumerate(fr["passes"], start=1):
            lines.append(f"    pass {k}: case {st['case']}, alpha = {st['alpha']}, "
                         f"slope {st['slope_before']} -> {st['slope_after']}")
    elif cmd == "blowup":
        rec = fr["record"]
        lines.append(f"  center {rec['center']} on {rec['parent']}: slope {rec['slope_at_center']}, "
                     f"q_H = {rec['q_H']} (h={rec['h']}, s={rec['s']})")
        for ch in fr["children"]:
            lines += _chart_lines(ch)
            ex = ch["exceptional"]
            lines.append(f"    exceptional {ex['divisor']} ({ex['var']} = 0): slope {ex['slope']}, "
                         f"case {ex['case']}, adapted {_cell(ex['adapted'])}")
            lines.append(f"    contact {_cell(ch['contact'])}, nonsingular {_cell(ch['locus']['empty'])}")
            lines += table(ch["rows"], indent="    ")
    elif cmd == "resolve":
        for run in fr["runs"]:
            lines.append(f"  chart {run['chart']}: start verdict {run['start_verdict']}")
            for k, st in enumerate(run["steps"], start=1):
                lines.append(f"    {k}. {st['chart']}: blow up {st['center']} (q_H = {st['q_H']})")
            for lf in run["leaves"]:
                lines.append(f"    leaf {lf['chart']}: f = {lf['f']}, nonsingular "
                             f"{_cell(lf['nonsingular'])}")
    elif cmd == "resolve-monomial":
        for run in fr["runs"]:
            lines.append(f"  chart {run['chart']}: {len(run['steps'])} step(s), depth "
                         f"{run['depth']} (bound {run['depth_bound']}), final max order "
                         f"{run['max_final_order']}")
            for k, st in enumerate(run["steps"], start=1):
                lines.append(f"    {k}. {st['chart']}: {st['center']}")
    elif cmd == "verify":
        for s in fr["suites"]:
            status = "PASS" if s["ok"] else "FAIL"
            extra = f", {s['out_of_regime']} out of regime" if s["out_of_regime"] else ""
            lines.append(f"  {status} {s['suite']} seed={s['seed']}: "
                         f"{s['passed']}/{s['passed'] + s['failed']} passed{extra}")
            for n in s["notes"]:
                lines.append(f"    note: {n}")
            for f in s["failures"]:
                lines.append(f"    failure: {json.dumps(f, sort_keys=True)}")
    return lines


def render_text(report: dict) -> str:
    lines = []
    inp = report.get("input")
    if inp:
        lines.append(f"{inp['field']}, q = {inp['q']}: f = {inp['f']}")
    for fr in report["results"]:
        lines += _render_fragment(fr)
    if report.get("error"):
        er = report["error"]
        lines.append(f"error ({er['kind']}): {er['message']}")
    return "\n".join(lines) + "\n"
