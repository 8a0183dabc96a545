"""Developing solved tetrahedra into the boundary of upper half-space."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .holonomy import face_pairing, mobius_apply, triple_to_normal
from .shapes import INF, DegenerateShapeError, ShapeAssignment, is_inf, tetra_shape_from_vertices
from .triangulation import Triangulation

__all__ = [
    "DevelopingError",
    "DevelopedTetrahedron",
    "DevelopingMap",
    "normalize_anchor",
    "develop",
    "parse_point",
    "parse_table",
    "compare_table",
]


class DevelopingError(RuntimeError):
    pass


@dataclass(frozen=True)
class DevelopedTetrahedron:
    coords: tuple  # four extended-complex points, by vertex

    def __getitem__(self, i):
        return self.coords[i]

    def shape(self) -> complex:
        return tetra_shape_from_vertices(*self.coords)


@dataclass(frozen=True)
class DevelopingMap:
    tets: tuple[DevelopedTetrahedron, ...]
    anchor: int
    order: tuple[int, ...]
    tree: tuple[tuple[int, int, int, int], ...]  # (parent, face, child, child face)

    @property
    def coords(self):
        return [d.coords for d in self.tets]


def normalize_anchor(tet: int, s: ShapeAssignment) -> DevelopedTetrahedron:
    """Vertices 0, 1, 2, 3 at 0, INF, z, 1."""
    z = s[tet].z
    if not z.imag > 0:
        raise DegenerateShapeError(f"tetrahedron {tet} is not geometric")
    return DevelopedTetrahedron((0j, INF, z, 1 + 0j))


def _close(p, q, tol):
    if is_inf(p) or is_inf(q):
        return is_inf(p) and is_inf(q)
    return abs(p - q) <= tol * max(1.0, abs(p))


def develop(t: Triangulation, s: ShapeAssignment, anchor: int = 0,
            tol: float = 1e-9) -> DevelopingMap:
    """Breadth-first placement from ``anchor`` across face gluings.

    Each child copies the three shared vertices through the gluing
    permutation and places the fourth one with the Moebius map that takes
    the child's normalized position onto the shared vertices.
    """
    if not 0 <= anchor < t.n_tets:
        raise IndexError(f"anchor {anchor} out of range")
    coords: list = [None] * t.n_tets
    coords[anchor] = normalize_anchor(anchor, s).coords
    order = [anchor]
    tree = []
    queue = deque([anchor])
    while queue:
        a = queue.popleft()
        for f in range(4):
            g = t.gluings[a][f]
            b = g.tet
            if coords[b] is not None:
                continue
            new = [None] * 4
            for v in range(4):
                if v != f:
                    new[g.perm[v]] = coords[a][v]
            known = [v for v in range(4) if v != g.face]
            normal = normalize_anchor(b, s).coords
            # maps the normalized copy of b onto the three known points
            m = face_pairing([normal[v] for v in known], [new[v] for v in known])
            new[g.face] = mobius_apply(m, normal[g.face])
            coords[b] = tuple(new)
            order.append(b)
            tree.append((a, f, b, g.face))
            queue.append(b)
    if any(c is None for c in coords):
        raise DevelopingError("face-pairing graph is disconnected")
    # consistency: shape recovery everywhere, and no half-coincident faces
    for i, c in enumerate(coords):
        got = tetra_shape_from_vertices(*c)
        if abs(got - s[i].z) > tol * max(1.0, abs(s[i].z)):
            raise DevelopingError(
                f"tetrahedron {i}: developed shape {got} differs from {s[i].z}")
    tree_slots = {(a, f) for a, f, _, _ in tree} | {(b, g) for _, _, b, g in tree}
    for a, f, g in t.pairs():
        if (a, f) in tree_slots:
            continue
        verts = [v for v in range(4) if v != f]
        agree = sum(_close(coords[a][v], coords[g.tet][g.perm[v]], tol) for v in verts)
        if agree == 2:
            raise DevelopingError(
                f"inconsistent propagation across tetrahedron {a} face {f}: "
                f"two shared vertices agree but the third does not")
    return DevelopingMap(tuple(DevelopedTetrahedron(c) for c in coords), anchor,
                         tuple(order), tuple(tree))


def parse_point(text: str):
    """Parse ``inf``, ``-1``, ``i``, ``1+2i``, ``0.5-0.25i`` style points."""
    t = text.strip().replace(" ", "")
    if t.lower() in ("inf", "infinity", "∞"):
        return INF
    try:
        return complex(t.replace("i", "j"))
    except ValueError:
        pass
    if t.endswith("i"):
        # bare imaginary unit forms: i, -i, 1+i, 2-i
        head = t[:-1]
        for k in range(len(head), -1, -1):
            if k == len(head) or head[k] in "+-":
                re_part, im_part = head[:k], head[k:]
                if k < len(head) and k > 0 and head[k - 1] in "eE":
                    continue
                try:
                    real = float(re_part) if re_part else 0.0
                    imag = float(im_part + "1") if im_part in ("", "+", "-") else float(im_part)
                    return complex(real, imag)
                except ValueError:
                    continue
    raise ValueError(f"cannot parse point {text!r}")


def parse_table(text: str) -> dict[int, tuple]:
    rows = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split("#", 1)[0].split()
        if not toks:
            continue
        if len(toks) != 5:
            raise ValueError(f"line {lineno}: expected '<tet> z0 z1 z2 z3'")
        rows[int(toks[0])] = tuple(parse_point(x) for x in toks[1:])
    return rows


def compare_table(dev: DevelopingMap, table: dict[int, tuple]) -> dict[int, float]:
    """Per-row max deviation; infinite entries must match exactly (else inf)."""
    out = {}
    for tet, row in table.items():
        worst = 0.0
        for p, q in zip(dev.coords[tet], row):
            if is_inf(p) or is_inf(q):
                if not (is_inf(p) and is_inf(q)):
                    worst = float("inf")
            else:
                worst = max(worst, abs(p - q))
        out[tet] = worst
    return out
