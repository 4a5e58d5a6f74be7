"""Polygon gluing schemes with an explicit order-p symmetry.

A scheme is a list of polygonal faces, each a cyclic word of directed edge
occurrences, together with a permutation of the occurrences realizing the
symmetry.  Each edge letter appears in at most two occurrences (once for a
boundary edge); the two occurrences of a letter are the two sides of one
edge, glued with the relative direction their signs encode.  Vertices are
never stored: they are recovered by the usual union-find over polygon
corners, and everything else (Euler characteristic, orientability, fixed
points, local rotation data) is derived.

Occurrences carry persistent integer ids so that surgeries can rewrite
faces without invalidating the action permutation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from ..invariants import canonicalize_rotations
from ..modp import check_odd_prime, pair_rep


class SchemeError(ValueError):
    pass


@dataclass
class Scheme:
    p: int
    faces: list[list[int]]
    letter: dict[int, str]
    sign: dict[int, int]
    action: dict[int, int]

    def copy(self) -> "Scheme":
        return Scheme(
            self.p,
            [list(w) for w in self.faces],
            dict(self.letter),
            dict(self.sign),
            dict(self.action),
        )

    def occs(self) -> list[int]:
        return [o for w in self.faces for o in w]


def scheme_from_words(p: int, words: list[list[tuple[str, int]]], action_pos: dict) -> Scheme:
    """Build a scheme from signed-letter face words and a position-keyed
    action {(f, k): (f2, k2)}."""
    check_odd_prime(p)
    faces, letter, sign = [], {}, {}
    ids = {}
    nxt = 0
    for f, w in enumerate(words):
        face = []
        for k, (lab, s) in enumerate(w):
            ids[(f, k)] = nxt
            letter[nxt] = lab
            sign[nxt] = s
            face.append(nxt)
            nxt += 1
        faces.append(face)
    action = {ids[src]: ids[dst] for src, dst in action_pos.items()}
    return Scheme(p, faces, letter, sign, action)


# ---------------------------------------------------------------------------
# Derived structure


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = p = self.parent.setdefault(p, p)
            x, p = p, self.parent.setdefault(p, p)
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass
class Analysis:
    scheme: Scheme
    face_of: dict[int, int] = field(default_factory=dict)
    pos_of: dict[int, int] = field(default_factory=dict)
    nxt: dict[int, int] = field(default_factory=dict)
    prv: dict[int, int] = field(default_factory=dict)
    mate: dict[int, Optional[int]] = field(default_factory=dict)
    letter_occs: dict[str, list[int]] = field(default_factory=dict)
    uf: _UnionFind = field(default_factory=_UnionFind)

    def start_node(self, o):
        return ("T" if self.scheme.sign[o] == 1 else "H", self.scheme.letter[o])

    def end_node(self, o):
        return ("H" if self.scheme.sign[o] == 1 else "T", self.scheme.letter[o])

    def vertex_root(self, o):
        return self.uf.find(("c", o))

    def node_root(self, node):
        return self.uf.find(node)

    def vertex_classes(self) -> dict:
        """root -> sorted list of corners (occurrence ids)."""
        out: dict = {}
        for o in self.scheme.occs():
            out.setdefault(self.vertex_root(o), []).append(o)
        for v in out.values():
            v.sort()
        return out

    def vertex_key(self, root) -> tuple:
        """Stable, orientation-independent name for a vertex class: its
        least (T/H, letter) node."""
        nodes = self._root_nodes.get(root)
        return min(nodes)

    def is_boundary(self, o) -> bool:
        return self.mate[o] is None


def analyze(s: Scheme) -> Analysis:
    an = Analysis(s)
    for f, w in enumerate(s.faces):
        if not w:
            raise SchemeError(f"face {f} is empty")
        m = len(w)
        for k, o in enumerate(w):
            an.face_of[o] = f
            an.pos_of[o] = k
            an.nxt[o] = w[(k + 1) % m]
            an.prv[o] = w[(k - 1) % m]
            an.letter_occs.setdefault(s.letter[o], []).append(o)
    for lab, occ in an.letter_occs.items():
        if len(occ) == 1:
            an.mate[occ[0]] = None
        elif len(occ) == 2:
            an.mate[occ[0]] = occ[1]
            an.mate[occ[1]] = occ[0]
        else:
            raise SchemeError(f"letter {lab} used {len(occ)} times")
    for o in s.occs():
        an.uf.union(("c", o), an.start_node(o))
        an.uf.union(("c", o), an.end_node(an.prv[o]))
    root_nodes: dict = {}
    for o in s.occs():
        for node in (an.start_node(o), an.end_node(o)):
            root_nodes.setdefault(an.uf.find(node), set()).add(node)
    an._root_nodes = root_nodes
    return an


def counts(s: Scheme, an: Optional[Analysis] = None) -> tuple[int, int, int]:
    an = an or analyze(s)
    return len(an.vertex_classes()), len(an.letter_occs), len(s.faces)


def euler_characteristic(s: Scheme) -> int:
    v, e, f = counts(s)
    return v - e + f


def is_closed(s: Scheme, an: Optional[Analysis] = None) -> bool:
    an = an or analyze(s)
    return all(m is not None for m in an.mate.values())


def is_connected(s: Scheme, an: Optional[Analysis] = None) -> bool:
    an = an or analyze(s)
    if not s.faces:
        return False
    uf = _UnionFind()
    for occ in an.letter_occs.values():
        for o in occ[1:]:
            uf.union(an.face_of[occ[0]], an.face_of[o])
    roots = {uf.find(f) for f in range(len(s.faces))}
    return len(roots) == 1


def orientation_flips(s: Scheme, an: Optional[Analysis] = None) -> Optional[dict[int, bool]]:
    """Consistent face orientations (face -> reverse word?), or None if the
    surface is non-orientable."""
    an = an or analyze(s)
    flips: dict[int, Optional[bool]] = {f: None for f in range(len(s.faces))}
    for f0 in range(len(s.faces)):
        if flips[f0] is not None:
            continue
        flips[f0] = False
        stack = [f0]
        while stack:
            f = stack.pop()
            for o in s.faces[f]:
                m = an.mate[o]
                if m is None:
                    continue
                f2 = an.face_of[m]
                need_diff = s.sign[o] == s.sign[m]
                want = flips[f] ^ need_diff
                if flips[f2] is None:
                    flips[f2] = want
                    stack.append(f2)
                elif flips[f2] != want:
                    return None
    return flips


def orientability(s: Scheme) -> bool:
    return orientation_flips(s) is not None


def oriented_copy(s: Scheme) -> Scheme:
    """The same surface with every face word in the consistent orientation."""
    flips = orientation_flips(s)
    if flips is None:
        raise SchemeError("scheme is not orientable")
    out = s.copy()
    for f, flip in flips.items():
        if flip:
            out.faces[f] = list(reversed(out.faces[f]))
            for o in out.faces[f]:
                out.sign[o] = -out.sign[o]
    return out


# ---------------------------------------------------------------------------
# Corner walking: vertex links and boundary circles

def _cross(s: Scheme, an: Analysis, side: int, at_start: bool) -> tuple[int, str]:
    """Cross the edge `side` at its start (or end) node; return the corner
    on the other side and which of its sides we crossed."""
    m = an.mate[side]
    same = s.sign[side] == s.sign[m]
    if at_start == same:
        return m, "leave"
    return an.nxt[m], "enter"


def link_of(s: Scheme, an: Analysis, c0: int) -> tuple[list[int], bool]:
    """Corners around the vertex of corner c0, in gluing order.

    Returns (corners, is_cycle).  For an interior vertex the list is the
    full link cycle; for a boundary vertex it is the path between the two
    boundary sides.
    """
    def walk(side, at_start):
        seen = []
        while an.mate[side] is not None:
            c, arrived = _cross(s, an, side, at_start)
            if c == c0:
                return seen, True
            seen.append(c)
            if arrived == "leave":
                side, at_start = an.prv[c], False
            else:
                side, at_start = c, True
        return seen, False

    forward, cyc = walk(an.prv[c0], False)
    if cyc:
        return [c0] + forward, True
    backward, cyc2 = walk(c0, True)
    if cyc2:
        raise SchemeError("inconsistent link walk")
    return list(reversed(backward)) + [c0] + forward, False


def boundary_circles(s: Scheme, an: Optional[Analysis] = None) -> list[list[tuple[int, bool]]]:
    """Boundary circles as lists of (occurrence, traversed along word?)."""
    an = an or analyze(s)
    seen = set()
    circles = []
    for o in sorted(an.mate):
        if an.mate[o] is not None or o in seen:
            continue
        circle = []
        cur, along = o, True
        while True:
            circle.append((cur, along))
            seen.add(cur)
            cur, along = _boundary_successor(s, an, cur, along)
            if cur == o and along:
                break
        circles.append(circle)
    return circles


def _boundary_successor(s: Scheme, an: Analysis, o: int, along: bool) -> tuple[int, bool]:
    if along:
        c = an.nxt[o]
        side, at_start = c, True
    else:
        c = o
        side, at_start = an.prv[c], False
    while an.mate[side] is not None:
        c, arrived = _cross(s, an, side, at_start)
        if arrived == "leave":
            side, at_start = an.prv[c], False
        else:
            side, at_start = c, True
    return side, at_start


# ---------------------------------------------------------------------------
# The symmetry: derived maps and validation

def face_action(s: Scheme, an: Optional[Analysis] = None) -> dict[int, tuple[int, int, bool]]:
    """face -> (image face, rotation offset, reversed?)."""
    an = an or analyze(s)
    out = {}
    for f, w in enumerate(s.faces):
        img = [s.action[o] for o in w]
        f2 = an.face_of[img[0]]
        w2 = s.faces[f2]
        if len(w2) != len(w):
            raise SchemeError(f"action maps face {f} to a face of different length")
        m = len(w)
        k0 = an.pos_of[img[0]]
        if all(an.face_of[img[t]] == f2 and an.pos_of[img[t]] == (k0 + t) % m for t in range(m)):
            out[f] = (f2, k0, False)
        elif all(an.face_of[img[t]] == f2 and an.pos_of[img[t]] == (k0 - t) % m for t in range(m)):
            out[f] = (f2, k0, True)
        else:
            raise SchemeError(f"action does not map face {f} to a face word")
    return out


def letter_action(s: Scheme, an: Optional[Analysis] = None) -> dict[str, tuple[str, int]]:
    """letter -> (image letter, relative direction).

    A face carried to its image reversed flips the traversal direction, so
    the edge-map direction is sign * image sign * (face reversal)."""
    an = an or analyze(s)
    fmap = face_action(s, an)
    out = {}
    for lab, occ in an.letter_occs.items():
        images = set()
        for o in occ:
            o2 = s.action[o]
            rev = fmap[an.face_of[o]][2]
            images.add((s.letter[o2], s.sign[o] * s.sign[o2] * (-1 if rev else 1)))
        if len(images) != 1:
            raise SchemeError(f"action is not a well-defined edge map on {lab}")
        img_lab, d = next(iter(images))
        if len(an.letter_occs[img_lab]) != len(occ):
            raise SchemeError(f"action maps {lab} across the boundary")
        out[lab] = (img_lab, d)
    return out


def _perm_cycle_lengths(perm: dict) -> set[int]:
    seen = set()
    lengths = set()
    for start in perm:
        if start in seen:
            continue
        n, cur = 0, start
        while True:
            seen.add(cur)
            cur = perm[cur]
            n += 1
            if cur == start:
                break
        lengths.add(n)
    return lengths


def validate_scheme(s: Scheme, require_connected: bool = True) -> Analysis:
    """Check every structural invariant; returns the analysis on success."""
    an = analyze(s)
    occs = s.occs()
    if set(s.letter) != set(occs) or set(s.sign) != set(occs):
        raise SchemeError("occurrence tables do not match the faces")
    if set(s.action) != set(occs) or set(s.action.values()) != set(occs):
        raise SchemeError("action is not a permutation of the occurrences")
    lengths = _perm_cycle_lengths(s.action)
    if lengths != {s.p}:
        raise SchemeError(f"action order is not exactly p (cycles {sorted(lengths)})")

    lam = letter_action(s, an)
    if any(_orbit_len(lam, lab) != s.p for lab in an.letter_occs):
        raise SchemeError("an edge is fixed by a nontrivial power of the action")
    fmap = face_action(s, an)
    for f, (f2, _, rev) in fmap.items():
        if f == f2 and rev:
            raise SchemeError(f"invariant face {f} maps to itself reversed")
    forbit = _perm_cycle_lengths({f: fmap[f][0] for f in fmap})
    if not forbit <= {1, s.p}:
        raise SchemeError("face orbit sizes must be 1 or p")
    if require_connected and not is_connected(s, an):
        raise SchemeError("scheme is not connected")
    return an


def _orbit_len(lam: dict, lab: str) -> int:
    n, cur = 0, lab
    while True:
        cur = lam[cur][0]
        n += 1
        if cur == lab:
            return n


def scheme_is_valid(s: Scheme) -> bool:
    try:
        validate_scheme(s)
        return True
    except SchemeError:
        return False


# ---------------------------------------------------------------------------
# Fixed points and rotation data


@dataclass(frozen=True)
class FixedCell:
    kind: str          # "vertex" | "face-center"
    key: tuple         # vertex node key or ("face", index)
    value: int         # rotation exponent (orientable) or pair representative


def _solve_label(p: int, s_shift: int, m: int) -> int:
    ell = m // p
    if (s_shift * p) % m != 0 or s_shift % m == 0:
        raise SchemeError("fixed cell has an inconsistent shift")
    for t in range(1, p):
        if (t * s_shift - ell) % m == 0:
            return t
    raise SchemeError("no rotation exponent solves the shift equation")


def _vertex_shift(s: Scheme, an: Analysis, cycle: list[int]) -> int:
    m = len(cycle)
    pos = {c: t for t, c in enumerate(cycle)}
    img = s.action[cycle[0]]
    if img not in pos:
        raise SchemeError("action does not preserve the vertex link")
    shift = pos[img]
    for t, c in enumerate(cycle):
        if pos.get(s.action[c]) != (t + shift) % m:
            raise SchemeError("action does not rotate the vertex link")
    return shift


def _invariant_face_shift(s: Scheme, an: Analysis, f: int) -> int:
    w = s.faces[f]
    pos = {o: t for t, o in enumerate(w)}
    shift = pos[s.action[w[0]]]
    for t, o in enumerate(w):
        if pos.get(s.action[o]) != (t + shift) % len(w):
            raise SchemeError("action does not rotate the invariant face")
    return shift


def fixed_point_report(s: Scheme, an: Optional[Analysis] = None) -> list[FixedCell]:
    """All fixed cells with their local rotation data.

    Orientable schemes report signed monodromy exponents relative to one
    propagated global orientation; non-orientable schemes report unordered
    pair representatives.
    """
    orientable = orientability(s)
    work = oriented_copy(s) if orientable else s
    an2 = analyze(work)
    p = s.p
    report = []

    classes = an2.vertex_classes()
    for root, corners in sorted(classes.items(), key=lambda kv: kv[1][0]):
        img_root = an2.vertex_root(work.action[corners[0]])
        if img_root != root:
            continue
        cycle, is_cycle = link_of(work, an2, corners[0])
        if not is_cycle:
            continue  # boundary vertices carry no interior fixed point
        shift = _vertex_shift(work, an2, cycle)
        t = _solve_label(p, shift, len(cycle))
        value = t if orientable else pair_rep(t, p)
        report.append(FixedCell("vertex", an2.vertex_key(root), value))

    fmap = face_action(work, an2)
    for f, (f2, _, _) in sorted(fmap.items()):
        if f != f2:
            continue
        shift = _invariant_face_shift(work, an2, f)
        t = _solve_label(p, shift, len(work.faces[f]))
        value = t if orientable else pair_rep(t, p)
        report.append(FixedCell("face-center", ("face", f), value))

    return report


def rotation_tuple(s: Scheme) -> tuple[int, ...]:
    """Canonical rotation data of the scheme's fixed points."""
    cells = fixed_point_report(s)
    return canonicalize_rotations([c.value for c in cells], s.p, orientable=orientability(s))


@dataclass(frozen=True)
class BoundaryBetti:
    """First Betti number report for schemes with boundary."""

    first_betti: int
    boundary_circles: int


def beta_genus(s: Scheme):
    """beta = 2 - chi for closed schemes; surfaces with boundary report
    (first Betti number, boundary count) instead, as a distinct type."""
    an = analyze(s)
    v, e, f = counts(s, an)
    chi = v - e + f
    if is_closed(s, an):
        return 2 - chi
    return BoundaryBetti(first_betti=1 - chi, boundary_circles=len(boundary_circles(s, an)))


# ---------------------------------------------------------------------------
# JSON wire format: {"p", "faces", "pairing", "action"}; occurrences are
# addressed "face.position", overlines are "-" prefixes on letters.


def _occ_name(an: Analysis, o: int) -> str:
    return f"{an.face_of[o]}.{an.pos_of[o]}"


def scheme_to_json(s: Scheme) -> str:
    an = analyze(s)
    faces = [
        [("" if s.sign[o] == 1 else "-") + s.letter[o] for o in w]
        for w in s.faces
    ]
    pairing = {}
    for o in sorted(s.occs()):
        m = an.mate[o]
        if m is not None:
            pairing[_occ_name(an, o)] = _occ_name(an, m)
    action = {_occ_name(an, o): _occ_name(an, s.action[o]) for o in sorted(s.occs())}
    return json.dumps(
        {"p": s.p, "faces": faces, "pairing": pairing, "action": action},
        sort_keys=True,
        separators=(",", ":"),
    )


def scheme_from_json(text: str) -> Scheme:
    d = json.loads(text)
    words = []
    for w in d["faces"]:
        face = []
        for tok in w:
            if tok.startswith("-"):
                face.append((tok[1:], -1))
            else:
                face.append((tok, 1))
        words.append(face)

    def parse_occ(name):
        f, k = name.split(".")
        return int(f), int(k)

    action_pos = {parse_occ(a): parse_occ(b) for a, b in d["action"].items()}
    s = scheme_from_words(d["p"], words, action_pos)
    an = analyze(s)
    for a, b in d["pairing"].items():
        fa, ka = parse_occ(a)
        fb, kb = parse_occ(b)
        oa, ob = s.faces[fa][ka], s.faces[fb][kb]
        if an.mate[oa] != ob:
            raise SchemeError("pairing does not match the letter occurrences")
    return s
