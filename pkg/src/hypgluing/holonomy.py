"""PSL(2,C) arithmetic, face-pairing maps and relation checks."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .shapes import INF, is_inf

__all__ = [
    "MoebiusMap",
    "IDENTITY",
    "mobius_apply",
    "triple_to_normal",
    "face_pairing",
    "verify_relations",
    "psl_distance",
    "FacePairing",
    "HolonomyReport",
    "face_pairings",
    "holonomy",
    "WordFile",
    "parse_word_file",
]


class MoebiusMap:
    """z -> (a z + b)/(c z + d), normalized to determinant 1.

    Equality is equality in PSL(2,C), so ``m == -m``.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, normalize=True):
        a, b, c, d = (complex(x) for x in (a, b, c, d))
        if normalize:
            det = a * d - b * c
            if det == 0:
                raise ValueError("singular Moebius matrix")
            s = cmath.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a, normalize=False)

    def __call__(self, z):
        return mobius_apply(self, z)

    def distance(self, other: "MoebiusMap") -> float:
        """Max-abs entry distance in PSL(2,C), minimized over the sign."""
        x, y = self.matrix, other.matrix
        return float(min(np.max(np.abs(x - y)), np.max(np.abs(x + y))))

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.distance(other) < 1e-12

    __hash__ = None

    def __repr__(self):
        return f"MoebiusMap([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


IDENTITY = MoebiusMap(1, 0, 0, 1)


def mobius_apply(m: MoebiusMap, z):
    if is_inf(z):
        return INF if m.c == 0 else m.a / m.c
    den = m.c * z + m.d
    if den == 0:
        return INF
    w = (m.a * z + m.b) / den
    # overflow from a tiny denominator is the point at infinity
    return w if cmath.isfinite(w) else INF


def _distinct(p, q, r):
    keys = {("inf",) if is_inf(x) else complex(x) for x in (p, q, r)}
    if len(keys) < 3:
        raise ValueError("degenerate triple: points are not distinct")


def triple_to_normal(p, q, r) -> MoebiusMap:
    """The unique map sending p -> INF, q -> 0, r -> 1."""
    _distinct(p, q, r)
    # z -> ((z - q)(r - p)) / ((z - p)(r - q)), dropping factors with INF
    if is_inf(p):
        return MoebiusMap(1, -q, 0, r - q)
    if is_inf(q):
        return MoebiusMap(0, r - p, 1, -p)
    if is_inf(r):
        return MoebiusMap(1, -q, 1, -p)
    return MoebiusMap(r - p, -q * (r - p), r - q, -p * (r - q))


def face_pairing(src: Sequence, dst: Sequence) -> MoebiusMap:
    """The map g2^-1 g1 carrying src[i] to dst[i] for i = 0, 1, 2."""
    g1 = triple_to_normal(*src)
    g2 = triple_to_normal(*dst)
    return g2.inverse() @ g1


def psl_distance(m: MoebiusMap) -> float:
    """Distance from +-identity in the max-abs entry metric."""
    return m.distance(IDENTITY)


def verify_relations(words, assignment: Mapping[str, MoebiusMap]) -> list[float]:
    """Evaluate each group word and return its distance from +-I.

    ``words`` are :class:`hypgluing.wirtinger.GroupWord` values or strings
    in the word syntax accepted by :func:`hypgluing.wirtinger.parse_word`.
    """
    from .wirtinger import parse_word

    out = []
    for word in words:
        if isinstance(word, str):
            word = parse_word(word)
        m = IDENTITY
        for name, e in word.letters:
            if name not in assignment:
                raise KeyError(f"unassigned letter {name!r}")
            g = assignment[name]
            m = m @ (g if e > 0 else g.inverse())
        out.append(psl_distance(m))
    return out


# ---------------------------------------------------------------------------
# pairings of a developed triangulation


@dataclass(frozen=True)
class FacePairing:
    name: str
    src_tet: int
    src_face: tuple[int, int, int]
    dst_tet: int
    dst_face: tuple[int, int, int]
    map: MoebiusMap


@dataclass(frozen=True)
class HolonomyReport:
    pairings: tuple[FacePairing, ...]
    generators: tuple[tuple[str, str, MoebiusMap], ...]  # (name, word, matrix)
    relation_residuals: tuple[tuple[str, float], ...]

    def pairing(self, name: str) -> FacePairing:
        for p in self.pairings:
            if p.name == name:
                return p
        raise KeyError(name)


def _same_point(p, q, tol):
    if is_inf(p) or is_inf(q):
        return is_inf(p) and is_inf(q)
    return abs(p - q) <= tol


def face_pairings(t, dev, tol: float = 1e-9) -> list[FacePairing]:
    """Moebius maps for every gluing whose developed faces do not coincide.

    Names are ``A-B`` when the two tetrahedra share a single such pairing,
    otherwise ``A-B.f<face>`` with the source face index.
    """
    raw = []
    for a, f, g in t.pairs():
        verts = tuple(v for v in range(4) if v != f)
        images = tuple(g.perm[v] for v in verts)
        src = [dev.coords[a][v] for v in verts]
        dst = [dev.coords[g.tet][w] for w in images]
        if all(_same_point(p, q, tol) for p, q in zip(src, dst)):
            continue
        raw.append((a, f, verts, g.tet, images, face_pairing(src, dst)))
    counts: dict = {}
    for a, _, _, b, _, _ in raw:
        counts[(a, b)] = counts.get((a, b), 0) + 1
    out = []
    for a, f, verts, b, images, m in raw:
        name = f"{a}-{b}" if counts[(a, b)] == 1 else f"{a}-{b}.f{f}"
        out.append(FacePairing(name, a, verts, b, images, m))
    return out


def holonomy(t, dev, letters: Mapping[str, str] | None = None,
             meridians: Sequence[tuple[str, str]] = (),
             relations: Sequence[str] = ()) -> HolonomyReport:
    """Collect pairings, evaluate meridian words and relation residuals.

    ``letters`` binds word letters to pairing names; ``meridians`` is a
    list of (label, word) and ``relations`` a list of words.
    """
    from .wirtinger import parse_word

    pairings = face_pairings(t, dev)
    by_name = {p.name: p.map for p in pairings}
    assignment = {}
    for letter, pname in (letters or {}).items():
        if pname not in by_name:
            raise KeyError(f"letter {letter!r} refers to unknown pairing {pname!r}")
        assignment[letter] = by_name[pname]
    gens = []
    for label, word in meridians:
        m = IDENTITY
        for name, e in parse_word(word).letters:
            if name not in assignment:
                raise KeyError(f"unassigned letter {name!r}")
            m = m @ (assignment[name] if e > 0 else assignment[name].inverse())
        gens.append((label, word, m))
    residual_values = verify_relations(list(relations), assignment)
    return HolonomyReport(tuple(pairings), tuple(gens),
                          tuple(zip(relations, residual_values)))


@dataclass(frozen=True)
class WordFile:
    letters: dict
    meridians: tuple[tuple[str, str], ...]
    relations: tuple[str, ...]


def parse_word_file(text: str) -> WordFile:
    """``letter <name> <pairing>``, ``meridian <cusp> <word>``, ``relation <word>`` lines."""
    from .wirtinger import parse_word

    letters, meridians, relations = {}, [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        keyword, _, rest = body.partition(" ")
        rest = rest.strip()
        try:
            if keyword == "letter":
                name, pairing = rest.split()
                letters[name] = pairing
            elif keyword == "meridian":
                cusp, word = rest.split(None, 1)
                parse_word(word)
                meridians.append((cusp, word))
            elif keyword == "relation":
                parse_word(rest)
                relations.append(rest)
            else:
                raise ValueError(f"unknown keyword {keyword!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return WordFile(letters, tuple(meridians), tuple(relations))
