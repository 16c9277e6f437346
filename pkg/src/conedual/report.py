"""JSON, CSV and SVG output for solved reports."""

import csv
import io
import json
import math
from pathlib import Path

from .serialize import to_jsonable

CSV_FIELDS = ("instance_id", "table1_cell", "primal_value", "primal_status",
              "dual_sum_value", "dual_sum_status", "dual_sum_attained",
              "dual_closure_value", "dual_closure_status", "gap",
              "sp", "sd", "tp", "td", "notes")

VIEW = 3.0  # viewport is [-VIEW, VIEW]^2
PX = 50     # pixels per unit


def _cell(v):
    if v is None:
        return ""
    return to_jsonable(v)


def csv_row(report):
    c = report.conditions
    row = {
        "instance_id": report.instance_id,
        "table1_cell": report.table1_cell,
        "primal_value": _cell(report.primal.value),
        "primal_status": report.primal.status.value,
        "dual_sum_value": _cell(report.dual_sum.value),
        "dual_sum_status": report.dual_sum.status.value,
        "dual_sum_attained": _cell(report.dual_sum.attained),
        "dual_closure_value": _cell(report.dual_closure.value),
        "dual_closure_status": report.dual_closure.status.value,
        "gap": _cell(report.gap),
        "notes": report.notes,
    }
    for k in ("sp", "sd", "tp", "td"):
        row[k] = getattr(c, k).value if c is not None else ""
    return row


def _write(path, text):
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def emit_reports(reports, formats=("json",), outdir=".", instances=None):
    """Write reports in the requested formats; returns the written paths.

    ``instances`` maps instance ids to instances; SVG needs their geometry and
    is produced for planar polyhedral ones only.
    """
    if isinstance(formats, str):
        formats = [f.strip() for f in formats.split(",") if f.strip()]
    unknown = set(formats) - {"json", "csv", "svg"}
    if unknown:
        raise ValueError(f"unknown report format(s): {', '.join(sorted(unknown))}")
    out = Path(outdir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create {out}: {exc.strerror or exc}") from exc
    reports = list(reports)
    written = []
    if "json" in formats:
        written.append(_write(out / "reports.json", json.dumps(to_jsonable(reports), indent=2) + "\n"))
    if "csv" in formats:
        written.append(_write(out / "cells.csv", reports_to_csv(reports)))
    if "svg" in formats:
        for r in reports:
            inst = (instances or {}).get(r.instance_id)
            if inst is not None and inst.ambient_dim == 2 and inst.K1.is_polyhedral:
                written.append(_write(out / f"{r.instance_id}.svg", render_svg(inst, r)))
    return written


def reports_to_csv(reports):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(csv_row(r))
    return buf.getvalue()


# --- SVG ---------------------------------------------------------------------------------

def _xy(p):
    return f"{(p[0] + VIEW) * PX:.2f}", f"{(VIEW - p[1]) * PX:.2f}"


def _sector_runs(poly, steps=720):
    """Runs of consecutive angles whose unit directions lie in the cone."""
    ineqs, eqs = poly.h
    ineqs = [tuple(map(float, a)) for a in ineqs]
    eqs = [tuple(map(float, e)) for e in eqs]

    def inside(a):
        u = (math.cos(a), math.sin(a))
        return (all(x * u[0] + y * u[1] >= -1e-9 for x, y in ineqs)
                and all(abs(x * u[0] + y * u[1]) <= 1e-9 for x, y in eqs))

    angles = {2 * math.pi * k / steps for k in range(steps)}
    for g in poly.generators:
        angles.add(math.atan2(float(g[1]), float(g[0])) % (2 * math.pi))
    angles = sorted(angles)
    flags = [inside(a) for a in angles]
    if all(flags):
        return None  # whole plane
    start = flags.index(False)
    runs, cur = [], []
    for i in range(1, len(angles) + 1):
        j = (start + i) % len(angles)
        if flags[j]:
            cur.append(angles[j])
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def _cone_shape(poly, fill, label):
    ox, oy = _xy((0, 0))
    if not poly.generators:
        return [f'<circle cx="{ox}" cy="{oy}" r="3" fill="{fill}"><title>{label}</title></circle>']
    runs = _sector_runs(poly)
    size = 2 * VIEW * PX
    if runs is None:
        return [f'<rect x="0" y="0" width="{size}" height="{size}" fill="{fill}" '
                f'fill-opacity="0.25"><title>{label}</title></rect>']
    r = VIEW * 1.5
    shapes = []
    for run in runs:
        pts = [(r * math.cos(a), r * math.sin(a)) for a in run]
        if len(run) == 1:
            x, y = _xy(pts[0])
            shapes.append(f'<line x1="{ox}" y1="{oy}" x2="{x}" y2="{y}" stroke="{fill}" '
                          f'stroke-width="3"><title>{label}</title></line>')
        else:
            path = " ".join(",".join(_xy(p)) for p in [(0, 0)] + pts)
            shapes.append(f'<polygon points="{path}" fill="{fill}" fill-opacity="0.3" '
                          f'stroke="{fill}"><title>{label}</title></polygon>')
    return shapes


def _segment(point, direction, color, label, dash=""):
    n = math.hypot(*direction)
    d = (direction[0] / n, direction[1] / n)
    x1, y1 = _xy((point[0] - 20 * d[0], point[1] - 20 * d[1]))
    x2, y2 = _xy((point[0] + 20 * d[0], point[1] + 20 * d[1]))
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" '
            f'stroke-width="1.5"{extra}><title>{label}</title></line>')


def _dot(p, color, label):
    x, y = _xy(p)
    return f'<circle cx="{x}" cy="{y}" r="4" fill="{color}"><title>{label}</title></circle>'


def render_svg(inst, report):
    """Cone, dual cone, hyperplane <h,x> = 1, the line q - h t and optimal points."""
    K = inst.intersection.poly
    q = tuple(float(a) for a in inst.q)
    h = tuple(float(a) for a in inst.h)
    size = 2 * VIEW * PX
    body = [f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>']
    body += _cone_shape(K.dual(), "#d62728", "dual cone")
    body += _cone_shape(K, "#1f77b4", "cone")
    hh = h[0] * h[0] + h[1] * h[1]
    body.append(_segment((h[0] / hh, h[1] / hh), (-h[1], h[0]), "#2ca02c", "hyperplane <h,x> = 1"))
    body.append(_segment(q, h, "#9467bd", "line q - h t", dash="5,3"))
    body.append(_dot(q, "#9467bd", "q"))
    if report.primal.solution is not None:
        body.append(_dot(tuple(float(a) for a in report.primal.solution), "#1f77b4", "primal optimum"))
    t = report.dual_closure.solution
    if t is not None and report.dual_closure.attained:
        body.append(_dot((q[0] - h[0] * float(t), q[1] - h[1] * float(t)), "#d62728", "dual optimum"))
    axes = (f'<line x1="0" y1="{size / 2}" x2="{size}" y2="{size / 2}" stroke="#999" stroke-width="0.5"/>'
            f'<line x1="{size / 2}" y1="0" x2="{size / 2}" y2="{size}" stroke="#999" stroke-width="0.5"/>')
    caption = (f'<text x="6" y="16" font-family="monospace" font-size="12">'
               f'{report.instance_id}: cell {report.table1_cell}</text>')
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n<clipPath id="v"><rect width="{size}" height="{size}"/></clipPath>\n'
            f'<g clip-path="url(#v)">\n' + "\n".join(body) + f"\n{axes}\n</g>\n{caption}\n</svg>\n")
