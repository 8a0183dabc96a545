"""Free-group words, Wirtinger presentations and generator elimination.

Word syntax: generator names separated by whitespace or ``*``, each
optionally raised to ``^-1`` (or ``^k`` for any integer k), brackets
``[x, y]`` for commutators and parentheses for grouping, e.g.
``"[c^-1, [b^-1, a]]"`` or ``"(g16 g27^-1)^-1"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "GroupWord",
    "Presentation",
    "Crossing",
    "CrossingList",
    "WordSyntaxError",
    "parse_word",
    "commutator",
    "free_reduce",
    "words_equal",
    "cyclically_reduce",
    "wirtinger_presentation",
    "parse_link",
    "eliminate_generator",
    "abelian_invariants",
    "drop_product_relators",
]

# Commutator convention: [x, y] = x^-1 y^-1 x y.


class WordSyntaxError(ValueError):
    pass


def free_reduce(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    stack: list[tuple[str, int]] = []
    for name, e in letters:
        if stack and stack[-1][0] == name and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((name, e))
    return tuple(stack)


class GroupWord:
    """Freely reduced word; ``letters`` is a tuple of (name, +-1)."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[str, int]] = ()):
        checked = []
        for name, e in letters:
            if e not in (1, -1):
                raise ValueError(f"exponent {e} is not +-1")
            checked.append((str(name), int(e)))
        self.letters = free_reduce(checked)

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        return parse_word(text)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord((n, -e) for n, e in reversed(self.letters))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, k: int) -> "GroupWord":
        base = self if k >= 0 else self.inverse()
        return GroupWord(base.letters * abs(k))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        if not isinstance(other, GroupWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    @property
    def generators(self) -> set[str]:
        return {n for n, _ in self.letters}

    def substitute(self, name: str, replacement: "GroupWord") -> "GroupWord":
        out = []
        inv = replacement.inverse()
        for n, e in self.letters:
            if n == name:
                out.extend((replacement if e > 0 else inv).letters)
            else:
                out.append((n, e))
        return GroupWord(out)

    def exponent_sum(self, name: str) -> int:
        return sum(e for n, e in self.letters if n == name)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(n if e > 0 else f"{n}^-1" for n, e in self.letters)

    def __repr__(self):
        return f"GroupWord({str(self)!r})"


def commutator(x: GroupWord, y: GroupWord) -> GroupWord:
    return x.inverse() * y.inverse() * x * y


_LEX = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<pow>\^\s*[+-]?\d+)|(?P<sym>[\[\](),*·]))")


def _lex(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _LEX.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unexpected character {text[pos:].strip()[:1]!r} at {pos}")
        pos = m.end()
        if m.group("name"):
            out.append(("name", m.group("name")))
        elif m.group("pow"):
            out.append(("pow", int(m.group("pow")[1:].replace(" ", ""))))
        else:
            out.append(("sym", m.group("sym")))
    return out


def parse_word(text: str) -> GroupWord:
    if text.strip() == "1":
        return GroupWord()
    toks = _lex(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def product(stop):
        nonlocal pos
        word = GroupWord()
        while True:
            kind, val = peek()
            if kind is None or (kind == "sym" and val in stop):
                return word
            if kind == "sym" and val in "*·":
                pos += 1
                continue
            word = word * factor()

    def factor():
        nonlocal pos
        kind, val = peek()
        if kind == "name":
            pos += 1
            base = GroupWord([(val, 1)])
        elif kind == "sym" and val == "(":
            pos += 1
            base = product(")")
            expect(")")
        elif kind == "sym" and val == "[":
            pos += 1
            x = product(",")
            expect(",")
            y = product("]")
            expect("]")
            base = commutator(x, y)
        else:
            raise WordSyntaxError(f"unexpected token {val!r}")
        while peek()[0] == "pow":
            base = base ** peek()[1]
            pos += 1
        return base

    def expect(sym):
        nonlocal pos
        kind, val = peek()
        if kind != "sym" or val != sym:
            raise WordSyntaxError(f"expected {sym!r}, got {val!r}")
        pos += 1

    word = product(())
    if pos != len(toks):
        raise WordSyntaxError(f"trailing input at token {toks[pos][1]!r}")
    return word


def cyclically_reduce(w: GroupWord) -> GroupWord:
    letters = list(w.letters)
    while len(letters) > 1 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    return GroupWord(letters)


def _rotations(letters):
    for i in range(max(1, len(letters))):
        yield letters[i:] + letters[:i]


def words_equal(u, v, mode: str = "free") -> bool:
    """Compare words.

    ``free``: equal free reductions.  ``cyclic``: equal up to cyclic
    permutation and inversion, i.e. as relators.
    """
    if isinstance(u, str):
        u = parse_word(u)
    if isinstance(v, str):
        v = parse_word(v)
    if mode == "free":
        return u.letters == v.letters
    if mode != "cyclic":
        raise ValueError(f"unknown comparison mode {mode!r}")
    cu, cv = cyclically_reduce(u).letters, cyclically_reduce(v).letters
    if len(cu) != len(cv):
        return False
    targets = {cv, cyclically_reduce(GroupWord(cv).inverse()).letters}
    return any(r in targets for r in _rotations(cu))


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[GroupWord, ...]

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            extra = r.generators - gens
            if extra:
                raise ValueError(f"relator {r} uses undeclared generators {sorted(extra)}")

    def __str__(self):
        return "< " + ", ".join(self.generators) + " | " + ", ".join(map(str, self.relators)) + " >"


@dataclass(frozen=True)
class Crossing:
    sign: int  # +1 or -1
    over: str
    under_in: str
    under_out: str


@dataclass(frozen=True)
class CrossingList:
    arcs: tuple[str, ...]
    crossings: tuple[Crossing, ...]

    def __post_init__(self):
        names = set(self.arcs)
        if len(names) != len(self.arcs):
            raise ValueError("duplicate arc names")
        for i, c in enumerate(self.crossings):
            for arc in (c.over, c.under_in, c.under_out):
                if arc not in names:
                    raise ValueError(f"crossing {i} references undeclared arc {arc!r}")
            if c.sign not in (1, -1):
                raise ValueError(f"crossing {i} has sign {c.sign}")


def parse_link(text: str) -> CrossingList:
    """``arcs a b c ...`` then ``crossing <+|-> <over> <under-in> <under-out>`` lines."""
    arcs = None
    crossings = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] == "arcs":
            arcs = tuple(toks[1:])
        elif toks[0] == "crossing":
            if len(toks) != 5 or toks[1] not in ("+", "-"):
                raise ValueError(f"line {lineno}: expected 'crossing <+|-> <over> <in> <out>'")
            crossings.append(Crossing(1 if toks[1] == "+" else -1, *toks[2:5]))
        else:
            raise ValueError(f"line {lineno}: unknown keyword {toks[0]!r}")
    if arcs is None:
        raise ValueError("missing 'arcs' line")
    try:
        return CrossingList(arcs, tuple(crossings))
    except ValueError as exc:
        raise ValueError(f"link file: {exc}") from None


def wirtinger_presentation(cl: CrossingList) -> Presentation:
    """One generator per arc; crossing relators

    positive: out * over^-1 * in^-1 * over
    negative: out * over * in^-1 * over^-1
    """
    relators = []
    for c in cl.crossings:
        s = c.sign
        relators.append(GroupWord([(c.under_out, 1), (c.over, -s), (c.under_in, -1), (c.over, s)]))
    return Presentation(cl.arcs, tuple(relators))


def eliminate_generator(p: Presentation, g: str, defn: GroupWord) -> Presentation:
    """Tietze move: drop ``g = defn`` and substitute it everywhere."""
    if g not in p.generators:
        raise ValueError(f"{g!r} is not a generator")
    if g in defn.generators:
        raise ValueError(f"definition of {g!r} contains {g!r}")
    target = GroupWord([(g, 1)]) * defn.inverse()
    defining = None
    for i, r in enumerate(p.relators):
        if words_equal(r, target, mode="cyclic"):
            defining = i
            break
    if defining is None:
        raise ValueError(f"no relator expresses {g} = {defn}")
    relators = tuple(r.substitute(g, defn) for i, r in enumerate(p.relators) if i != defining)
    return Presentation(tuple(x for x in p.generators if x != g), relators)


def abelian_invariants(p: Presentation) -> tuple[int, tuple[int, ...]]:
    """Free rank and non-trivial elementary divisors of the abelianization."""
    gens = list(p.generators)
    m = [[r.exponent_sum(x) for x in gens] for r in p.relators]
    divisors = _smith_diagonal(m, len(gens))
    nonzero = [d for d in divisors if d != 0]
    rank = len(gens) - len(nonzero)
    return rank, tuple(d for d in nonzero if d != 1)


def _smith_diagonal(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix (exact ints)."""
    a = [list(map(int, r)) for r in rows]
    nrows = len(a)
    diag = []
    t = 0
    while t < min(nrows, ncols):
        # pivot: smallest non-zero |entry| in the remaining block
        entries = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, nrows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                entries = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t]]
                entries += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
                _, pi, pj = min(entries)
                a[t], a[pi] = a[pi], a[t]
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                continue
            # divisibility of the rest of the block
            bad = [(i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % a[t][t]]
            if bad:
                i, _ = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def drop_product_relators(p: Presentation) -> tuple[Presentation, list[tuple[int, int, int]]]:
    """Drop relators that freely equal (r_i r_j)^-1 or r_i r_j for two others.

    Later relators are dropped first. Returns the smaller presentation and
    the (dropped, i, j) triples found, indexed into ``p.relators``.
    """
    relators = list(p.relators)
    dropped = []
    changed = True
    while changed:
        changed = False
        for k in reversed(range(len(relators))):
            rk = relators[k]
            others = [(i, r) for i, r in enumerate(relators) if i != k]
            for (i, ri), (j, rj) in ((x, y) for x in others for y in others if x[0] != y[0]):
                prod = ri * rj
                if rk == prod or rk == prod.inverse():
                    dropped.append((p.relators.index(rk), p.relators.index(ri), p.relators.index(rj)))
                    del relators[k]
                    changed = True
                    break
            if changed:
                break
    return Presentation(p.generators, tuple(relators)), dropped
