"""
Presentations of pi_1 and H_1 of branched double covers.

The white-graph algorithm: at each bounded white vertex e_i walk its edges
counterclockwise, writing (e_j e_i^-1)^s for an edge of sign s to e_j and
e_i^-s for an edge to the unbounded vertex; the concatenation is the relator
b_i.  Abelianising gives the Goeritz matrix, whose Smith form is H_1.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import gcd

from sympy import factorint

from .diagrams import (
    BraidWord,
    KanenobuParams,
    NotAKnot,
    SignedWhiteGraph,
    bbeta_sweep,
    goeritz_matrix,
    kanenobu_sweep,
    realize,
    white_graph,
)
from .intmatrix import AbelianStructure, IntMatrix, knot_determinant, smith_normal_form


class EmptyFamily(ValueError):
    """No member of the family has cyclic first homology."""


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word; letters are (generator index, nonzero exponent) syllables."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for (g, e), nxt in zip(self.letters, self.letters[1:] + ((None, None),)):
            if e == 0 or g == nxt[0]:
                raise ValueError(f"word not reduced: {self.letters}")

    @classmethod
    def of(cls, *syllables) -> FreeWord:
        """Build and reduce from (generator, exponent) pairs."""
        return cls(_reduce(list(syllables)))

    @classmethod
    def gen(cls, g: int, e: int = 1) -> FreeWord:
        return cls.of((g, e))

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(_reduce(list(self.letters) + list(other.letters)))

    def __pow__(self, k: int) -> FreeWord:
        base = self if k >= 0 else self.inverse()
        out = FreeWord()
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> FreeWord:
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def unit_letters(self) -> list[tuple[int, int]]:
        """Expanded into (generator, +-1) letters."""
        out = []
        for g, e in self.letters:
            out.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return out

    def exponent_sum(self, g: int) -> int:
        return sum(e for h, e in self.letters if h == g)

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def substitute(self, images: dict) -> FreeWord:
        """Replace each generator g by images[g] (a FreeWord); missing generators stay."""
        out = FreeWord()
        for g, e in self.letters:
            out = out * (images[g] if g in images else FreeWord.gen(g)) ** e
        return out

    def format(self, names=None) -> str:
        if not self.letters:
            return "1"
        name = (lambda g: names[g]) if names else (lambda g: f"e{g + 1}")
        return " ".join(name(g) if e == 1 else f"{name(g)}^{e}" for g, e in self.letters)

    def to_json(self) -> list[list[int]]:
        return [[g, e] for g, e in self.letters]


def _reduce(syllables: list) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for g, e in syllables:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


def cyclic_canonical(word: FreeWord) -> tuple[tuple[int, int], ...]:
    """Lexicographically least rotation of the cyclically reduced word or its inverse."""
    best = None
    for w in (word, word.inverse()):
        letters = w.unit_letters()
        # cyclic reduction
        while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
            letters = letters[1:-1]
        for k in range(max(len(letters), 1)):
            rot = tuple(letters[k:] + letters[:k])
            if best is None or rot < best:
                best = rot
    return best


def same_relator(a: FreeWord, b: FreeWord) -> bool:
    """Equality up to cyclic permutation and inversion."""
    return cyclic_canonical(a) == cyclic_canonical(b)


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[FreeWord, ...]

    def __post_init__(self):
        if len(self.relators) != self.generator_count:
            raise ValueError("expected as many relators as generators")
        for r in self.relators:
            if any(not 0 <= g < self.generator_count for g, _ in r.letters):
                raise ValueError("relator uses an unknown generator")

    def format(self) -> str:
        gens = ", ".join(f"e{i + 1}" for i in range(self.generator_count))
        rels = ", ".join(r.format() for r in self.relators)
        return f"< {gens} | {rels} >"

    def to_json(self) -> dict:
        return {
            "generator_count": self.generator_count,
            "relators": [r.to_json() for r in self.relators],
        }


def presentation_from_white_graph(g: SignedWhiteGraph) -> GroupPresentation:
    idx = {v: k for k, v in enumerate(g.vertices)}
    relators = []
    for v in g.vertices:
        i = idx[v]
        word = FreeWord()
        for k in g.rotation[v]:
            _, _, s = g.edges[k]
            u = g.other_end(k, v)
            if u == g.unbounded:
                word = word * FreeWord.gen(i, -s)
            else:
                word = word * (FreeWord.of((idx[u], 1), (i, -1)) ** s)
        relators.append(word)
    return GroupPresentation(len(idx), tuple(relators))


def kanenobu_presentation(params: KanenobuParams) -> GroupPresentation:
    """pi_1 of the branched double cover of K(n, p, q) on generators e1..e4 (indices 0..3)."""
    n, p, q = params.n, params.p, params.q
    e1, e2, e3, e4 = (FreeWord.gen(i) for i in range(4))
    inv = FreeWord.inverse
    b1 = e2 * e1 ** -2 * (e3 * inv(e1)) ** p
    b2 = e2 ** -n * e1 * inv(e2) * (e4 * inv(e2)) ** q
    b3 = e3 ** 2 * inv(e4) * (e1 * inv(e3)) ** p
    b4 = e4 ** n * (e2 * inv(e4)) ** q * e4 * inv(e3)
    return GroupPresentation(4, (b1, b2, b3, b4))


def kanenobu_matrix(params: KanenobuParams) -> IntMatrix:
    """The 4x4 presentation matrix of H_1 written out entrywise."""
    n, p, q = params.n, params.p, params.q
    return IntMatrix.from_lists([
        [-p - 2, 1, p, 0],
        [1, -q - n - 1, 0, q],
        [p, 0, -p + 2, -1],
        [0, q, -1, -q + n + 1],
    ])


def abelianize(pres: GroupPresentation) -> IntMatrix:
    """Entry (i, j) is the exponent sum of generator i in relator j."""
    w = pres.generator_count
    return IntMatrix.from_lists(
        [[r.exponent_sum(i) for r in pres.relators] for i in range(w)]
    )


def match_generators(pres: GroupPresentation, target: GroupPresentation):
    """A generator relabelling sending pres onto target up to cyclic rotation/inversion.

    Returns ``perm`` with pres generator k renamed to target generator perm[k],
    or None.  Relators are matched as a set.
    """
    import itertools

    if pres.generator_count != target.generator_count:
        return None
    want = sorted(cyclic_canonical(r) for r in target.relators)
    for perm in itertools.permutations(range(pres.generator_count)):
        images = {k: FreeWord.gen(perm[k]) for k in range(pres.generator_count)}
        got = sorted(cyclic_canonical(r.substitute(images)) for r in pres.relators)
        if got == want:
            return perm
    return None


def cyclicity_criterion(params: KanenobuParams) -> bool:
    """H_1 is cyclic iff gcd(2q + (n+1)p, 2n+1) = 1; checked against the equivalent forms."""
    n, p, q = params.n, params.p, params.q
    verdict = gcd(2 * q + (n + 1) * p, 2 * n + 1) == 1
    if verdict != (gcd(4 * q + p, 2 * n + 1) == 1):
        raise AssertionError(f"gcd criteria disagree at {params}")
    if verdict != smith_normal_form(kanenobu_matrix(params)).structure.is_cyclic:
        raise AssertionError(f"Smith form disagrees with the gcd criterion at {params}")
    return verdict


@dataclass(frozen=True)
class FamilySpec:
    n: int
    p0: int
    q0: int
    admissible_residues: frozenset[int]

    @property
    def modulus(self) -> int:
        return 2 * self.n + 1

    def admits(self, q: int) -> bool:
        return q % self.modulus in self.admissible_residues


def residue_count(n: int, s: int) -> int:
    """Number of q mod 2n+1 with gcd(3q + s, 2n+1) = 1, counted in closed form."""
    m = 2 * n + 1
    if m % 3:
        return int(_phi(m))
    if s % 3 == 0:
        return 0
    a = factorint(m)[3]
    b = m // 3 ** a
    return 3 ** a * _phi(b)


def _phi(m: int) -> int:
    out = 1
    for pr, k in factorint(m).items():
        out *= (pr - 1) * pr ** (k - 1)
    return out


def enumerate_family(n: int, p0: int, q0: int, p_range) -> tuple[FamilySpec, list[KanenobuParams]]:
    """Members K(n, p, p0+q0-p), p in p_range, whose branched double cover has cyclic H_1."""
    m = 2 * n + 1
    s = p0 + q0
    if gcd(m, s) % 3 == 0:
        raise EmptyFamily(f"3 divides gcd(2n+1, p0+q0) = gcd({m}, {s})")
    residues = frozenset(r for r in range(m) if gcd(3 * r + s, m) == 1)
    spec = FamilySpec(n, p0, q0, residues)
    members = [KanenobuParams(n, p, s - p) for p in p_range if spec.admits(s - p)]
    return spec, members


def family_rows(members) -> list[dict]:
    rows = []
    for k in members:
        snf = smith_normal_form(kanenobu_matrix(k)).structure
        rows.append({
            "n": k.n, "p": k.p, "q": k.q,
            "det": knot_determinant(kanenobu_matrix(k)),
            "cyclic": snf.is_cyclic,
            "h1_order": snf.order,
        })
    return rows


def family_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["n", "p", "q", "det", "cyclic", "h1_order"], lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({**r, "cyclic": str(r["cyclic"]).lower()})
    return buf.getvalue()


def generic_braid_h1(braid: BraidWord, p: int, q: int) -> tuple[int, AbelianStructure]:
    """det and H_1 of the branched double cover of K_beta(p, q) for any 3-braid."""
    d = realize(kanenobu_sweep(braid, p, q))
    if d.components() != 1:
        raise NotAKnot(f"K_beta({p},{q}) has {d.components()} components")
    m = abelianize(presentation_from_white_graph(white_graph(d)))
    return knot_determinant(m), smith_normal_form(m).structure


def bbeta_determinant(braid: BraidWord) -> int:
    d = realize(bbeta_sweep(braid))
    if d.components() != 1:
        raise NotAKnot("B_beta is a link")
    return knot_determinant(goeritz_matrix(white_graph(d)))
