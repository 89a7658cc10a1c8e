"""
Planar diagrams of generalised Kanenobu knots and their white graphs.

Every diagram here is described as a left-to-right *sweep*: a sequence of
events acting on a vertical stack of strand positions (0 = lowest).

    ("cup", i)        two new points appear at positions i, i+1, joined on the left
    ("cap", i)        points i and i+1 are joined and disappear
    ("x", i, kind)    the strands at i and i+1 cross; kind = +1 when the strand
                      running from upper-left to lower-right is over, -1 otherwise

The region below and above every strand is the unbounded region, which is
coloured white; colours then alternate across strands.  A crossing's four
slots are numbered counterclockwise SW=0, SE=1, NE=2, NW=3, and corner s is
the region between slots s and s+1 (bottom, right, top, left).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .intmatrix import IntMatrix

SW, SE, NE, NW = range(4)
WHITE, BLACK = "white", "black"


class NotAKnot(ValueError):
    """The diagram has more than one component."""


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, e in self.letters:
            if not 1 <= i <= self.strands - 1 or e not in (1, -1):
                raise ValueError(f"bad braid letter {(i, e)} on {self.strands} strands")

    @classmethod
    def parse(cls, strands: int, word) -> BraidWord:
        """From signed generator indices, e.g. [1, -2, 1, 1]."""
        return cls(strands, tuple((abs(g), 1 if g > 0 else -1) for g in word))

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def permutation(self) -> tuple[int, ...]:
        """perm[k] = final position of the strand starting at position k (0-based)."""
        where = list(range(self.strands))  # where[pos] = strand at pos
        for i, _ in self.letters:
            where[i - 1], where[i] = where[i], where[i - 1]
        perm = [0] * self.strands
        for pos, s in enumerate(where):
            perm[s] = pos
        return tuple(perm)

    def to_json(self) -> dict:
        return {"strands": self.strands, "letters": [[i, e] for i, e in self.letters]}


def beta_n(n: int) -> BraidWord:
    """sigma_1 sigma_2^-1 sigma_1^n."""
    return BraidWord(3, ((1, 1), (2, -1)) + ((1, 1),) * n)


@dataclass(frozen=True)
class KanenobuParams:
    n: int
    p: int
    q: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")

    def braid(self) -> BraidWord:
        return beta_n(self.n)


# ---------------------------------------------------------------------------
# sweeps


def _braid_events(braid: BraidWord, offset: int, mirror: bool = False) -> list[tuple]:
    """Crossing events for a braid box occupying positions offset..offset+strands-1.

    sigma_i acts on box positions (i-1, i) counted from the bottom, a
    positive letter is a kind=+1 crossing, and the word is read right to left
    as the sweep moves left to right.  ``mirror`` reflects the box in a
    horizontal line, which reverses positions and crossing kinds.
    """
    out = []
    for i, e in reversed(braid.letters):
        lo = i - 1
        if mirror:
            lo = braid.strands - 2 - lo
            e = -e
        out.append(("x", offset + lo, e))
    return out


def _twist_events(pos: int, count: int) -> list[tuple]:
    kind = 1 if count > 0 else -1
    return [("x", pos, kind)] * abs(count)


def kanenobu_sweep(braid: BraidWord, p: int, q: int) -> list[tuple]:
    """The diagram K_beta(p, q): beta at the bottom, its mirror on top, twists at the sides.

    Reading left to right: the outer arc and the two U-turns feeding the
    q-twist region, the q half twists between the middle strands, the boxes,
    the p half twists, and the closing caps.
    """
    if braid.strands != 3:
        raise ValueError("generalised Kanenobu knots use 3-braids")
    ev: list[tuple] = [("cup", 0), ("cup", 1), ("cup", 3)]
    ev += _twist_events(2, q)
    ev += _braid_events(braid, 0)
    ev += _braid_events(braid, 3, mirror=True)
    ev += _twist_events(2, p)
    ev += [("cap", 3), ("cap", 1), ("cap", 0)]
    return ev


def bbeta_sweep(braid: BraidWord) -> list[tuple]:
    """B_beta: the two upper box strands capped on both sides, the lowest one closed around."""
    if braid.strands != 3:
        raise ValueError("B_beta is defined for 3-braids")
    return [("cup", 0), ("cup", 1)] + _braid_events(braid, 0) + [("cap", 1), ("cap", 0)]


def closure_sweep(braid: BraidWord) -> list[tuple]:
    """Standard closure of a braid, nested cups on the left and caps on the right."""
    k = braid.strands
    # after k nested cups position i is paired with 2k-1-i; the braid runs on the top k
    ev = [("cup", i) for i in range(k)]
    ev += [("x", k + i - 1, e) for i, e in braid.letters]
    ev += [("cap", k - 1 - i) for i in range(k)]
    return ev


def mirror_sweep(events) -> list[tuple]:
    """Mirror image: every crossing changes kind."""
    return [(e[0], e[1], -e[2]) if e[0] == "x" else e for e in events]


def sweep_width(events) -> int:
    w = best = 0
    for e in events:
        if e[0] == "cup":
            w += 2
        elif e[0] == "cap":
            w -= 2
        best = max(best, w)
    return best


def check_sweep(events) -> None:
    w = 0
    for e in events:
        if e[0] == "cup":
            if not 0 <= e[1] <= w:
                raise ValueError(f"cup position out of range: {e}")
            w += 2
        elif e[0] in ("cap", "x"):
            if not 0 <= e[1] <= w - 2:
                raise ValueError(f"event position out of range: {e}")
            if e[0] == "cap":
                w -= 2
        else:
            raise ValueError(f"unknown event {e}")
    if w:
        raise ValueError("sweep does not close up")


# ---------------------------------------------------------------------------
# planar diagrams


@dataclass(frozen=True)
class Crossing:
    kind: int                      # +1: upper-left to lower-right strand is over
    edges: tuple[int, int, int, int]    # edge ids at SW, SE, NE, NW
    regions: tuple[int, int, int, int]  # bottom, right, top, left
    sign: int                      # white-graph sign (+1 / -1)


@dataclass(frozen=True)
class Region:
    id: int
    color: str
    unbounded: bool


@dataclass(frozen=True)
class PlanarDiagram:
    """Combinatorial chessboard-coloured diagram.

    ``faces`` lists, for each region, its corners ``(crossing, corner)`` in
    counterclockwise order around the region (clockwise for the unbounded one,
    seen from the outside).
    """

    crossings: tuple[Crossing, ...]
    regions: tuple[Region, ...]
    faces: dict = field(compare=False, hash=False)
    edge_ends: tuple = field(compare=False, hash=False)  # edge -> ((c, slot), (c, slot))
    free_loops: int = 0

    @property
    def unbounded(self) -> int:
        return next(r.id for r in self.regions if r.unbounded)

    def color(self, region: int) -> str:
        return self.regions[region].color

    def components(self) -> int:
        return len(self.oriented_components()) + self.free_loops

    def oriented_components(self) -> list[list[tuple[int, int]]]:
        """Each component as a list of (crossing, entry slot) visits."""
        seen = set()
        comps = []
        for start in range(len(self.edge_ends)):
            if start in seen:
                continue
            comp = []
            edge, end = start, 0
            while edge not in seen:
                seen.add(edge)
                c, slot = self.edge_ends[edge][1 - end]
                comp.append((c, slot))
                out_slot = (slot + 2) % 4
                edge = self.crossings[c].edges[out_slot]
                ends = self.edge_ends[edge]
                # leave through (c, out_slot); a kink may attach both ends here
                end = 0 if ends[0] == (c, out_slot) else 1
            comps.append(comp)
        return comps

    def orientation_signs(self) -> list[int]:
        """Right-handed (+1) / left-handed (-1) crossing signs for a knot."""
        if self.components() != 1:
            raise NotAKnot(f"diagram has {self.components()} components")
        direction = {}
        for c, slot in self.oriented_components()[0]:
            direction.setdefault(c, []).append(slot)
        vec = {SW: (1, 1), NE: (-1, -1), NW: (1, -1), SE: (-1, 1)}
        signs = []
        for c, x in enumerate(self.crossings):
            entries = direction[c]
            slash = next(vec[s] for s in entries if s in (SW, NE))
            back = next(vec[s] for s in entries if s in (NW, SE))
            over, under = (back, slash) if x.kind == 1 else (slash, back)
            signs.append(1 if over[0] * under[1] - over[1] * under[0] > 0 else -1)
        return signs

    def writhe(self) -> int:
        return sum(self.orientation_signs())

    def to_json(self) -> dict:
        return {
            "crossings": [
                {"kind": x.kind, "sign": x.sign, "edges": list(x.edges), "regions": list(x.regions)}
                for x in self.crossings
            ],
            "regions": [{"id": r.id, "color": r.color, "unbounded": r.unbounded} for r in self.regions],
            "edge_ends": [[list(a), list(b)] for a, b in self.edge_ends],
            "free_loops": self.free_loops,
        }


class _UnionFind:
    def __init__(self):
        self.parent = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def realize(events) -> PlanarDiagram:
    """Turn a sweep into a coloured planar diagram with faces."""
    check_sweep(events)
    regions = _UnionFind()
    colors = {}
    outer = regions.make()
    colors[outer] = WHITE
    gaps = [outer]
    points: list = []          # stub at each position
    links: dict = {}           # stub -> list of linked stubs
    xings = []                 # (kind, corner regions) per crossing
    virtual = itertools.count()

    def link(a, b):
        links.setdefault(a, []).append(b)
        links.setdefault(b, []).append(a)

    for ev in events:
        op, i = ev[0], ev[1]
        if op == "cup":
            a, b = ("v", next(virtual)), ("v", next(virtual))
            link(a, b)
            points[i:i] = [a, b]
            r = regions.make()
            colors[r] = WHITE if (i + 1) % 2 == 0 else BLACK
            gaps[i:i + 1] = [gaps[i], r, gaps[i]]
        elif op == "cap":
            link(points[i], points[i + 1])
            del points[i:i + 2]
            regions.union(gaps[i], gaps[i + 2])
            gaps[i:i + 3] = [gaps[i]]
        else:
            c = len(xings)
            link(points[i], (c, SW))
            link(points[i + 1], (c, NW))
            points[i], points[i + 1] = (c, SE), (c, NE)
            right = regions.make()
            colors[right] = colors[gaps[i + 1]]
            xings.append((ev[2], [gaps[i], right, gaps[i + 2], gaps[i + 1]]))
            gaps[i + 1] = right

    # edges: walk through virtual stubs between real crossing slots
    edge_ends = []
    slot_edge = {}
    visited_virtual = set()
    for c in range(len(xings)):
        for s in range(4):
            if (c, s) in slot_edge:
                continue
            prev, cur = (c, s), links[(c, s)][0]
            while cur[0] == "v":
                visited_virtual.add(cur)
                nxt = [x for x in links[cur] if x != prev]
                prev, cur = cur, (nxt[0] if nxt else prev)
            e = len(edge_ends)
            edge_ends.append(((c, s), cur))
            slot_edge[(c, s)] = e
            slot_edge[cur] = e
    # crossingless components are cycles among the unvisited virtual stubs
    rest = {k for k in links if k[0] == "v"} - visited_virtual
    free_loops = 0
    while rest:
        free_loops += 1
        stack = [rest.pop()]
        while stack:
            for y in links[stack.pop()]:
                if y in rest:
                    rest.remove(y)
                    stack.append(y)

    canon = {}
    for r in sorted({regions.find(r) for r in colors}):
        canon[r] = len(canon)
    region_objs = tuple(
        Region(canon[r], colors[r], r == regions.find(outer)) for r in canon
    )
    crossings = []
    for c, (kind, corners) in enumerate(xings):
        corners = tuple(canon[regions.find(r)] for r in corners)
        white_top_bottom = region_objs[corners[0]].color == WHITE
        sign = kind if white_top_bottom else -kind
        edges = tuple(slot_edge[(c, s)] for s in range(4))
        crossings.append(Crossing(kind, edges, corners, sign))

    faces = _trace_faces(crossings, edge_ends)
    for face in faces.values():
        # sanity: tracing and sweep bookkeeping agree on region identity
        ids = {crossings[c].regions[k] for c, k in face}
        if len(ids) != 1:
            raise AssertionError("face tracing disagrees with the sweep")
    by_region = {crossings[c].regions[k]: face for face in faces.values() for c, k in [face[0]]}
    return PlanarDiagram(tuple(crossings), region_objs, by_region, tuple(edge_ends), free_loops)


def _trace_faces(crossings, edge_ends) -> dict:
    """Orbits of corners; each returned counterclockwise around its face."""
    other = {}
    for a, b in edge_ends:
        other[a] = b
        other[b] = a
    seen = set()
    faces = {}
    for c in range(len(crossings)):
        for k in range(4):
            if (c, k) in seen:
                continue
            orbit = []
            cur = (c, k)
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur)
                x, s = cur
                cur = other[(x, (s + 1) % 4)]
            # the walk keeps the face on its right, i.e. runs clockwise
            orbit.reverse()
            faces[len(faces)] = orbit
    return faces


# ---------------------------------------------------------------------------
# white graphs


@dataclass(frozen=True)
class SignedWhiteGraph:
    """Reduced white graph with rotation system.

    ``vertices`` are labels of the bounded white regions; ``unbounded`` is the
    label of the removed vertex.  ``edges[k] = (u, v, sign)``.  ``rotation[v]``
    lists, counterclockwise, the edge ids at each bounded vertex (a loop edge
    appears twice).
    """

    vertices: tuple
    unbounded: object
    edges: tuple[tuple, ...]
    rotation: dict = field(hash=False)

    def degree(self, v) -> int:
        return len(self.rotation[v])

    def other_end(self, k: int, v):
        a, b, _ = self.edges[k]
        return b if a == v else a

    def relabel(self, mapping: dict, order=None) -> SignedWhiteGraph:
        """Rename vertices; ``order`` optionally fixes the new vertex order."""
        f = lambda v: mapping.get(v, v)
        return SignedWhiteGraph(
            tuple(order) if order is not None else tuple(f(v) for v in self.vertices),
            f(self.unbounded),
            tuple((f(a), f(b), s) for a, b, s in self.edges),
            {f(v): list(r) for v, r in self.rotation.items()},
        )

    def to_json(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "unbounded": str(self.unbounded),
            "edges": [[str(a), str(b), s] for a, b, s in self.edges],
            "rotation": {str(v): list(r) for v, r in self.rotation.items()},
        }

    @classmethod
    def from_json(cls, data) -> SignedWhiteGraph:
        return cls(
            tuple(data["vertices"]),
            data["unbounded"],
            tuple((a, b, int(s)) for a, b, s in data["edges"]),
            {v: [int(k) for k in r] for v, r in data["rotation"].items()},
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def white_graph(d: PlanarDiagram) -> SignedWhiteGraph:
    """Reduced white graph of a chessboard-coloured diagram."""
    edges = []
    for x in d.crossings:
        b, r, t, l = x.regions
        u, v = (b, t) if d.color(b) == WHITE else (r, l)
        edges.append((u, v, x.sign))
    out = d.unbounded
    verts = tuple(r.id for r in d.regions if r.color == WHITE and not r.unbounded)
    rotation = {}
    for v in verts:
        # white corners of a crossing are 0/2 or 1/3; the crossing's edge is the same either way
        rotation[v] = [c for c, k in d.faces[v]]
    return SignedWhiteGraph(verts, out, tuple(edges), rotation)


def kanenobu_white_graph(params: KanenobuParams) -> SignedWhiteGraph:
    """Reduced white graph of K(n, p, q) with vertices 'e1'..'e4' and 'U'.

    Edge order at each vertex is the counterclockwise order that makes the
    white-graph algorithm read off

        b1 = e2 e1^-2 (e3 e1^-1)^p
        b2 = e2^-n e1 e2^-1 (e4 e2^-1)^q
        b3 = e3^2 e4^-1 (e1 e3^-1)^p
        b4 = e4^n (e2 e4^-1)^q e4 e3^-1
    """
    n, p, q = params.n, params.p, params.q
    sp = 1 if p >= 0 else -1
    sq = 1 if q >= 0 else -1
    edges = []

    def add(u, v, s):
        edges.append((u, v, s))
        return len(edges) - 1

    e12 = add("e1", "e2", 1)
    e1u = add("e1", "U", 1)
    p13 = [add("e1", "e3", sp) for _ in range(abs(p))]
    u2 = [add("e2", "U", 1) for _ in range(n)]
    q24 = [add("e2", "e4", sq) for _ in range(abs(q))]
    e3u = add("e3", "U", -1)
    e34 = add("e3", "e4", -1)
    u4 = [add("e4", "U", -1) for _ in range(n)]
    rotation = {
        "e1": [e12, e1u] + p13,
        "e2": u2 + [e12] + q24,
        "e3": [e3u, e34] + p13[::-1],
        "e4": u4 + q24[::-1] + [e34],
    }
    return SignedWhiteGraph(("e1", "e2", "e3", "e4"), "U", tuple(edges), rotation)


def goeritz_matrix(g: SignedWhiteGraph) -> IntMatrix:
    """Goeritz matrix: the signed Laplacian of the white graph on its bounded vertices.

    Off-diagonal (i, j) is minus the signed number of e_i--e_j edges; the
    diagonal is the signed degree, edges to the unbounded vertex included.
    The abelianised white-graph presentation matrix is exactly its negative.
    """
    idx = {v: k for k, v in enumerate(g.vertices)}
    w = len(idx)
    if not w:
        raise ValueError("white graph has no bounded vertex")
    m = [[0] * w for _ in range(w)]
    for a, b, s in g.edges:
        if a == b:
            continue  # a loop adds 2s to the degree and -2s as an edge
        for v in (a, b):
            if v in idx:
                m[idx[v]][idx[v]] += s
        if a in idx and b in idx:
            m[idx[a]][idx[b]] -= s
            m[idx[b]][idx[a]] -= s
    return IntMatrix.from_lists(m)


def build_kanenobu_diagram(params: KanenobuParams) -> PlanarDiagram:
    return realize(kanenobu_sweep(params.braid(), params.p, params.q))


def bbeta_white_graph(n: int) -> SignedWhiteGraph:
    """Reduced white graph of B_beta_n, vertices ordered so the Goeritz matrix is [[2, -1], [-1, n+1]]."""
    if n < 2:
        raise ValueError("n must be at least 2")
    g = white_graph(realize(bbeta_sweep(beta_n(n))))
    # the bigon-free vertex (signed degree 2) comes first
    order = sorted(g.vertices, key=lambda v: sum(s for a, b, s in g.edges if v in (a, b)))
    names = {v: f"e{k + 1}" for k, v in enumerate(order)}
    names[g.unbounded] = "U"
    return g.relabel(names, order=[names[v] for v in order])
