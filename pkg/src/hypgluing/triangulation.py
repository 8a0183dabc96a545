"""Ideal triangulations: data model, text format, orbits of edges and vertices.

Faces are indexed by the opposite vertex.  A gluing of face ``f`` of
tetrahedron ``A`` to face ``g`` of tetrahedron ``B`` carries a vertex map
``perm`` (the image list of vertices 0..3) with ``perm[f] == g``.

Corner invariants sit on the edges of each tetrahedron as follows::

    z: {0,1} {2,3}    v: {0,2} {1,3}    w: {0,3} {1,2}
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "TriangulationError",
    "ParseError",
    "Gluing",
    "Triangulation",
    "EdgeMember",
    "EdgeClass",
    "CuspClass",
    "CurveStep",
    "CuspCurve",
    "CORNER_OF_EDGE",
    "corner_of",
    "parse_triangulation",
    "serialize_triangulation",
    "edge_classes",
    "cusp_classes",
    "parse_cusp_curves",
    "serialize_cusp_curves",
]

CORNER_OF_EDGE = {
    (0, 1): "z", (2, 3): "z",
    (0, 2): "v", (1, 3): "v",
    (0, 3): "w", (1, 2): "w",
}


def corner_of(a: int, b: int) -> str:
    return CORNER_OF_EDGE[(a, b) if a < b else (b, a)]


class TriangulationError(ValueError):
    """Combinatorially invalid triangulation or curve data."""


class ParseError(TriangulationError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)


@dataclass(frozen=True)
class Gluing:
    tet: int
    face: int
    perm: tuple[int, int, int, int]


@dataclass(frozen=True)
class Triangulation:
    n_tets: int
    # gluings[t][f] is the Gluing leaving face f of tetrahedron t
    gluings: tuple[tuple[Gluing, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        _validate(self)

    def glued(self, tet: int, face: int) -> Gluing:
        return self.gluings[tet][face]

    def pairs(self) -> list[tuple[int, int, Gluing]]:
        """Each geometric face pairing once, from the lexicographically smaller side."""
        out = []
        for t in range(self.n_tets):
            for f in range(4):
                g = self.gluings[t][f]
                if (t, f) <= (g.tet, g.face):
                    out.append((t, f, g))
        return out

    @classmethod
    def from_pairs(cls, n_tets: int, pairs: Iterable[tuple[int, int, int, int, Iterable[int]]],
                   labels=None) -> "Triangulation":
        """Build from one-sided ``(A, f, B, g, perm)`` records; reverses are implied."""
        slots: list[list[Gluing | None]] = [[None] * 4 for _ in range(n_tets)]
        for a, f, b, g, perm in pairs:
            perm = tuple(perm)
            _check_pair_record(n_tets, a, f, b, g, perm)
            inverse = [0] * 4
            for i, p in enumerate(perm):
                inverse[p] = i
            for (t, face, glue) in ((a, f, Gluing(b, g, perm)), (b, g, Gluing(a, f, tuple(inverse)))):
                existing = slots[t][face]
                if existing is not None and existing != glue:
                    raise TriangulationError(
                        f"non-involutive gluing: face {face} of tetrahedron {t} glued twice")
                slots[t][face] = glue
        for t in range(n_tets):
            for f in range(4):
                if slots[t][f] is None:
                    raise TriangulationError(f"unglued face {f} of tetrahedron {t}")
        return cls(n_tets, tuple(tuple(row) for row in slots), labels)


def _check_pair_record(n, a, f, b, g, perm):
    for t in (a, b):
        if not 0 <= t < n:
            raise TriangulationError(f"tetrahedron index {t} out of range")
    for face in (f, g):
        if face not in range(4):
            raise TriangulationError(f"face index {face} out of range")
    if sorted(perm) != [0, 1, 2, 3]:
        raise TriangulationError(f"{perm} is not a permutation of 0..3")
    if perm[f] != g:
        raise TriangulationError(
            f"permutation {''.join(map(str, perm))} does not carry face {f} to face {g}")
    if a == b and f == g:
        raise TriangulationError(f"face {f} of tetrahedron {a} glued to itself")


def _validate(t: Triangulation):
    if t.n_tets < 1:
        raise TriangulationError("a triangulation needs at least one tetrahedron")
    if len(t.gluings) != t.n_tets or any(len(row) != 4 for row in t.gluings):
        raise TriangulationError("gluing table shape does not match n_tets")
    if t.labels is not None and len(t.labels) != t.n_tets:
        raise TriangulationError("label count does not match n_tets")
    for a in range(t.n_tets):
        for f in range(4):
            g = t.gluings[a][f]
            if g is None:
                raise TriangulationError(f"unglued face {f} of tetrahedron {a}")
            _check_pair_record(t.n_tets, a, f, g.tet, g.face, g.perm)
            back = t.gluings[g.tet][g.face]
            if back.tet != a or back.face != f or any(back.perm[g.perm[i]] != i for i in range(4)):
                raise TriangulationError(
                    f"non-involutive gluing between tetrahedron {a} face {f} "
                    f"and tetrahedron {g.tet} face {g.face}")


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\S+")


def _tokens(line: str):
    line = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _int(tok, lineno, source, what):
    text, col = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {text!r}", lineno, col, source) from None


def parse_triangulation(text: str, source: str | None = None) -> Triangulation:
    """Parse the ``tetrahedra N`` / ``glue A f B g pppp`` line format."""
    n_tets = None
    labels = None
    records = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line)
        if not toks:
            continue
        keyword, col = toks[0]
        if keyword == "tetrahedra":
            if n_tets is not None:
                raise ParseError("duplicate header", lineno, col, source)
            if len(toks) != 2:
                raise ParseError("expected 'tetrahedra <N>'", lineno, col, source)
            n_tets = _int(toks[1], lineno, source, "tetrahedron count")
            if n_tets < 1:
                raise ParseError("tetrahedron count must be positive", lineno, toks[1][1], source)
        elif keyword == "labels":
            labels = tuple(t for t, _ in toks[1:])
        elif keyword == "glue":
            if n_tets is None:
                raise ParseError("'glue' before 'tetrahedra' header", lineno, col, source)
            if len(toks) != 6:
                raise ParseError("expected 'glue <A> <f> <B> <g> <p0p1p2p3>'", lineno, col, source)
            a, f, b, g = (_int(toks[i], lineno, source, name)
                          for i, name in zip(range(1, 5), ("tetrahedron", "face", "tetrahedron", "face")))
            ptext, pcol = toks[5]
            if not re.fullmatch(r"[0-3]{4}", ptext):
                raise ParseError(f"bad permutation {ptext!r}", lineno, pcol, source)
            perm = tuple(int(c) for c in ptext)
            try:
                _check_pair_record(n_tets, a, f, b, g, perm)
            except TriangulationError as exc:
                raise ParseError(str(exc), lineno, col, source) from None
            records.append((lineno, (a, f, b, g, perm)))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, col, source)
    if n_tets is None:
        raise ParseError("missing 'tetrahedra <N>' header", source=source)
    seen = {}
    for lineno, (a, f, b, g, perm) in records:
        for slot in ((a, f), (b, g)):
            if slot in seen and seen[slot] != lineno:
                raise ParseError(
                    f"non-involutive gluing: tetrahedron {slot[0]} face {slot[1]} "
                    f"already glued on line {seen[slot]}", lineno, None, source)
            seen[slot] = lineno
    try:
        return Triangulation.from_pairs(n_tets, (r for _, r in records), labels)
    except TriangulationError as exc:
        raise ParseError(str(exc), source=source) from None


def serialize_triangulation(t: Triangulation) -> str:
    lines = [f"tetrahedra {t.n_tets}"]
    if t.labels is not None:
        lines.append("labels " + " ".join(t.labels))
    for a, f, g in t.pairs():
        lines.append(f"glue {a} {f} {g.tet} {g.face} {''.join(map(str, g.perm))}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# orbits

@dataclass(frozen=True)
class EdgeMember:
    tet: int
    edge: tuple[int, int]
    corner: str


@dataclass(frozen=True)
class EdgeClass:
    index: int
    members: tuple[EdgeMember, ...]

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class CuspClass:
    index: int
    members: frozenset  # of (tet, vertex)

    def __contains__(self, item):
        return item in self.members


def edge_classes(t: Triangulation) -> list[EdgeClass]:
    """Trace every tetrahedron edge around its edge class.

    A cycle starts at the smallest untouched (tet, edge) and first leaves
    through the face opposite the smaller non-edge vertex; afterwards it
    always leaves through the face it did not enter by.
    """
    seen = set()
    classes = []
    limit = 6 * t.n_tets
    for tet in range(t.n_tets):
        for a in range(4):
            for b in range(a + 1, 4):
                if (tet, (a, b)) in seen:
                    continue
                members = []
                cur_tet, (x, y) = tet, (a, b)
                exit_face = min({0, 1, 2, 3} - {a, b})
                start = (tet, (a, b), exit_face)
                while True:
                    edge = (min(x, y), max(x, y))
                    if (cur_tet, edge) in seen:
                        raise TriangulationError(
                            f"edge cycle through tetrahedron {cur_tet} edge {edge} does not close")
                    seen.add((cur_tet, edge))
                    members.append(EdgeMember(cur_tet, edge, corner_of(*edge)))
                    other_face = ({0, 1, 2, 3} - {x, y, exit_face}).pop()
                    g = t.gluings[cur_tet][exit_face]
                    p = g.perm
                    cur_tet, x, y = g.tet, p[x], p[y]
                    # entered through g.face; leave through the image of the other face
                    exit_face = p[other_face]
                    edge = (min(x, y), max(x, y))
                    if (cur_tet, edge, exit_face) == start:
                        break
                    if len(members) > limit:
                        raise TriangulationError("edge cycle does not close")
                classes.append(EdgeClass(len(classes), tuple(members)))
    return classes


def cusp_classes(t: Triangulation) -> list[CuspClass]:
    parent = {(a, v): (a, v) for a in range(t.n_tets) for v in range(4)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(t.n_tets):
        for f in range(4):
            g = t.gluings[a][f]
            for v in range(4):
                if v != f:
                    ra, rb = find((a, v)), find((g.tet, g.perm[v]))
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for key in sorted(parent):
        groups.setdefault(find(key), set()).add(key)
    ordered = sorted(groups.values(), key=min)
    return [CuspClass(i, frozenset(m)) for i, m in enumerate(ordered)]


# ---------------------------------------------------------------------------
# cusp curves

@dataclass(frozen=True)
class CurveStep:
    tet: int
    vertex: int
    corner: str
    eps: int


@dataclass(frozen=True)
class CuspCurve:
    cusp: int
    name: str
    steps: tuple[CurveStep, ...] = field(default=())


def parse_cusp_curves(text: str, t: Triangulation, source: str | None = None) -> list[CuspCurve]:
    """Parse ``curve <cusp> <name>`` blocks of indented ``step`` lines."""
    cusps = cusp_classes(t)
    curves: list[tuple[int, int, str, list[CurveStep]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line)
        if not toks:
            continue
        keyword, col = toks[0]
        if keyword == "curve":
            if len(toks) != 3:
                raise ParseError("expected 'curve <cusp> <name>'", lineno, col, source)
            cusp = _int(toks[1], lineno, source, "cusp index")
            if not 0 <= cusp < len(cusps):
                raise ParseError(f"cusp {cusp} does not exist ({len(cusps)} cusps)",
                                 lineno, toks[1][1], source)
            curves.append((lineno, cusp, toks[2][0], []))
        elif keyword == "step":
            if not curves:
                raise ParseError("'step' outside a curve block", lineno, col, source)
            if len(toks) != 5:
                raise ParseError("expected 'step <tet> <vertex> <z|v|w> <+|->'", lineno, col, source)
            tet = _int(toks[1], lineno, source, "tetrahedron")
            vertex = _int(toks[2], lineno, source, "vertex")
            corner, ccol = toks[3]
            if corner not in ("z", "v", "w"):
                raise ParseError(f"unknown corner tag {corner!r}", lineno, ccol, source)
            sign, scol = toks[4]
            if sign not in ("+", "-"):
                raise ParseError(f"bad sign {sign!r}", lineno, scol, source)
            if not 0 <= tet < t.n_tets or vertex not in range(4):
                raise ParseError(f"no vertex {vertex} of tetrahedron {tet}", lineno, col, source)
            cusp = curves[-1][1]
            if (tet, vertex) not in cusps[cusp]:
                raise ParseError(
                    f"vertex {vertex} of tetrahedron {tet} is not in cusp {cusp}", lineno, col, source)
            curves[-1][3].append(CurveStep(tet, vertex, corner, 1 if sign == "+" else -1))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, col, source)
    out = []
    for lineno, cusp, name, steps in curves:
        if not steps:
            raise ParseError(f"curve {name!r} has no steps", lineno, None, source)
        out.append(CuspCurve(cusp, name, tuple(steps)))
    return out


def serialize_cusp_curves(curves: Iterable[CuspCurve]) -> str:
    lines = []
    for c in curves:
        lines.append(f"curve {c.cusp} {c.name}")
        for s in c.steps:
            lines.append(f"  step {s.tet} {s.vertex} {s.corner} {'+' if s.eps > 0 else '-'}")
    return "\n".join(lines) + "\n"
