"""Line-oriented ``section.key = value`` reports of a pipeline run."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .shapes import DegenerateShapeError, ShapeAssignment, is_inf, tet_volume

__all__ = ["PipelineReport", "total_volume", "format_real", "format_complex", "render"]

DEFAULT_PRECISION = 9


def total_volume(s: ShapeAssignment) -> float:
    if not s.geometric:
        raise DegenerateShapeError("volume needs positively oriented shapes")
    return math.fsum(tet_volume(x) for x in s)


@dataclass
class PipelineReport:
    """Results of whichever stages ran; ``None`` marks a stage that did not."""

    source: str | None = None
    n_tets: int | None = None
    n_edges: int | None = None
    n_cusps: int | None = None
    equations: Sequence | None = None          # GluingEquation list
    solve: object | None = None                # SolveReport
    residuals: Sequence[complex] | None = None
    volume: float | None = None
    developing: object | None = None           # DevelopingMap
    table_deviation: dict | None = None
    holonomy: object | None = None             # HolonomyReport
    presentation: object | None = None         # Presentation (reduced)
    wirtinger: object | None = None            # Presentation (raw)
    notes: list[str] = field(default_factory=list)


def format_real(x: float, precision: int = DEFAULT_PRECISION) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = f"{x:.{precision}f}"
    if float(text) == 0:
        text = f"{0.0:.{precision}f}"
    return text


def format_complex(z, precision: int = DEFAULT_PRECISION) -> str:
    if is_inf(z):
        return "inf"
    z = complex(z)
    re_text = format_real(z.real, precision)
    im_text = format_real(z.imag, precision)
    if im_text.startswith("-"):
        return f"{re_text}-{im_text[1:]}i"
    return f"{re_text}+{im_text}i"


def render(r: PipelineReport, precision: int = DEFAULT_PRECISION) -> str:
    out: list[str] = []

    def put(key, value):
        out.append(f"{key} = {value}")

    R = lambda x: format_real(x, precision)  # noqa: E731
    C = lambda z: format_complex(z, precision)  # noqa: E731

    if r.source is not None:
        put("input.triangulation", r.source)
    if r.n_tets is not None:
        put("triangulation.tetrahedra", r.n_tets)
        put("triangulation.edges", r.n_edges)
        put("triangulation.cusps", r.n_cusps)
    if r.equations is not None:
        for i, eq in enumerate(r.equations):
            put(f"equation.{i}", f"{eq.kind} {eq.describe()} : arg {'2pi' if eq.target_arg else '0'}")
    if r.solve is not None:
        s = r.solve
        put("solve.iterations", s.iterations)
        put("solve.residual", R(s.final_residual))
        put("solve.geometric", "true" if s.geometric else "false")
        for i, z in enumerate(s.shapes.z):
            put(f"shape.{i}", C(z))
    if r.residuals is not None:
        for i, x in enumerate(r.residuals):
            put(f"residual.{i}", R(abs(x)))
    if r.volume is not None:
        if r.solve is not None:
            for i, tri in enumerate(r.solve.shapes):
                put(f"volume.{i}", R(tet_volume(tri)))
        put("volume.total", R(r.volume))
    if r.developing is not None:
        d = r.developing
        put("develop.anchor", d.anchor)
        put("develop.order", " ".join(map(str, d.order)))
        for tet in d.order:
            for v, p in enumerate(d.coords[tet]):
                put(f"coords.{tet}.{v}", C(p))
    if r.table_deviation is not None:
        worst = max(r.table_deviation.values()) if r.table_deviation else 0.0
        for tet in sorted(r.table_deviation):
            put(f"table.{tet}.deviation", R(r.table_deviation[tet]))
        put("table.max_deviation", R(worst))
    if r.holonomy is not None:
        h = r.holonomy
        for p in h.pairings:
            key = f"pairing.{p.name}"
            put(f"face.{p.name}", f"{p.src_tet}({' '.join(map(str, p.src_face))}) -> "
                              f"{p.dst_tet}({' '.join(map(str, p.dst_face))})")
            for entry in "abcd":
                put(f"{key}.{entry}", C(getattr(p.map, entry)))
        for label, word, m in h.generators:
            put(f"meridian.{label}.word", word)
            for entry in "abcd":
                put(f"meridian.{label}.{entry}", C(getattr(m, entry)))
        for i, (word, res) in enumerate(h.relation_residuals):
            put(f"relation.{i}.word", word)
            put(f"relation.{i}.residual", R(res))
    if r.wirtinger is not None:
        put("wirtinger.generators", " ".join(r.wirtinger.generators))
        for i, w in enumerate(r.wirtinger.relators):
            put(f"wirtinger.relator.{i}", str(w))
    if r.presentation is not None:
        put("presentation.generators", " ".join(r.presentation.generators))
        for i, w in enumerate(r.presentation.relators):
            put(f"presentation.relator.{i}", str(w))
    for i, note in enumerate(r.notes):
        put(f"note.{i}", note)
    return "\n".join(out) + "\n"
