"""Scheme-level surgeries.

Each constructive surgery is a composition of the primitives in ops.py:

  * connected sum: slit a free edge orbit open, glue in p cyclic copies of
    the punctured summand polygon;
  * ribbon: slit host and a rotation sphere, glue the p circle pairs
    equivariantly;
  * twisted ribbon / fixed-point-to-band: truncate the consumed fixed
    vertex (subdividing an invariant face first when the fixed point is a
    face center), then glue in the twisted-ribbon or band scheme along the
    hole.

The gluing direction and rotational offset are found by a deterministic
search over the equivariant candidates; a candidate is accepted when the
glued scheme validates and has exactly the Euler characteristic, fixed
point count and orientability the surgery must produce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ..invariants import InvariantRecord, canonicalize_rotations
from .ops import (
    barycentric_subdivide,
    glue_circles,
    glue_letters,
    merge_copies,
    merge_equivariant,
    refine_boundary_occs,
    slit_orbit,
    subdivide_letter_orbit,
    truncate_vertex,
)
from .scheme import (
    Scheme,
    SchemeError,
    analyze,
    boundary_circles,
    counts,
    fixed_point_report,
    is_closed,
    letter_action,
    orientability,
    validate_scheme,
)


class SchemeSurgeryError(SchemeError):
    pass


@dataclass(frozen=True)
class _Expect:
    chi: int
    fixed_points: int
    orientable: bool


def count_fixed_cells(s: Scheme, an=None) -> int:
    an = an or analyze(s)
    n = 0
    for root, corners in an.vertex_classes().items():
        if an.vertex_root(s.action[corners[0]]) == root:
            n += 1
    for f, w in enumerate(s.faces):
        if an.face_of[s.action[w[0]]] == f:
            n += 1
    return n


def record_of_scheme(s: Scheme) -> InvariantRecord:
    """The invariant record computed from the scheme (closed schemes)."""
    an = analyze(s)
    if not is_closed(s, an):
        raise SchemeError("records are defined for closed schemes")
    v, e, f = counts(s, an)
    orientable = orientability(s)
    cells = fixed_point_report(s)
    rotations = canonicalize_rotations([c.value for c in cells], s.p, orientable=orientable)
    return InvariantRecord(
        p=s.p,
        orientable=orientable,
        beta=2 - (v - e + f),
        fixed_points=len(cells),
        rotations=rotations,
    )


def _acceptable(s: Scheme, expect: _Expect) -> bool:
    try:
        an = validate_scheme(s)
    except SchemeError:
        return False
    if not is_closed(s, an):
        return False
    v, e, f = counts(s, an)
    if v - e + f != expect.chi:
        return False
    if count_fixed_cells(s, an) != expect.fixed_points:
        return False
    return orientability(s) == expect.orientable


def _expectation(s: Scheme, d_chi: int, d_fixed: int, orientable: bool) -> _Expect:
    an = analyze(s)
    v, e, f = counts(s, an)
    return _Expect(v - e + f + d_chi, count_fixed_cells(s, an) + d_fixed, orientable)


# ---------------------------------------------------------------------------
# Slitting and circle bookkeeping


def slit_site(s: Scheme, site: Optional[str] = None) -> tuple[Scheme, list[list[tuple[int, bool]]]]:
    """Open p conjugate slits in the free part, away from every vertex of
    the original scheme.  Returns the slitted scheme and the p bigon
    boundary circles in sigma order.  `site` picks the interior edge to
    slit along (default: the least)."""
    an = analyze(s)
    interior = sorted(lab for lab, occ in an.letter_occs.items() if len(occ) == 2)
    if not interior:
        raise SchemeSurgeryError("no interior edge to slit")
    if site is None:
        site = interior[0]
    elif site not in interior:
        raise SchemeSurgeryError(f"{site!r} is not an interior edge")
    s2, pieces = subdivide_letter_orbit(s, site, 3)
    mid = pieces[site][1]
    s3, pairs = slit_orbit(s2, mid)
    return s3, _circles_for_letters(s3, [fresh for _, fresh in pairs])


def _circles_for_letters(s: Scheme, letters: list[str]) -> list[list[tuple[int, bool]]]:
    circles = boundary_circles(s)
    out = []
    for lab in letters:
        found = None
        for c in circles:
            if any(s.letter[o] == lab for o, _ in c):
                found = c
                break
        if found is None:
            raise SchemeSurgeryError(f"no boundary circle through {lab}")
        out.append(found)
    return out


def _sole_boundary_circle(s: Scheme) -> list[tuple[int, bool]]:
    circles = boundary_circles(s)
    if len(circles) != 1:
        raise SchemeSurgeryError(f"expected one boundary circle, found {len(circles)}")
    return circles[0]


def _glue_orbit(s: Scheme, circles_a, circles_b, expect: _Expect) -> Scheme:
    """Glue the sigma-orbits of boundary circles pairwise (A_k to B_k),
    searching the equivariant offsets and directions."""
    L = len(circles_a[0])
    lam = letter_action(s)
    for rev in (False, True):
        for offset in range(L):
            base = glue_circles(s, circles_a[0], circles_b[0], offset, rev)
            pairs = list(base)
            cur = base
            for _ in range(1, s.p):
                nxt = []
                for a, b, d in cur:
                    a2, da = lam[a]
                    b2, db = lam[b]
                    nxt.append((a2, b2, d * da * db))
                pairs += nxt
                cur = nxt
            try:
                cand = glue_letters(s, pairs)
            except SchemeError:
                continue
            if _acceptable(cand, expect):
                return cand
    raise SchemeSurgeryError("no equivariant gluing matches the surgery")


def _glue_invariant(s: Scheme, circle_a, circle_b, expect: _Expect) -> Scheme:
    for rev in (False, True):
        for offset in range(len(circle_a)):
            try:
                cand = glue_letters(s, glue_circles(s, circle_a, circle_b, offset, rev))
            except SchemeError:
                continue
            if _acceptable(cand, expect):
                return cand
    raise SchemeSurgeryError("no equivariant gluing matches the surgery")


# ---------------------------------------------------------------------------
# The surgeries


def scheme_conn_sum(s: Scheme, summand_orientable: bool, genus: int) -> Scheme:
    p = s.p
    if genus == 0:
        return s
    host_or = orientability(s)
    if summand_orientable:
        word = [("u", 1), ("v", 1)]
        for i in range(genus):
            word += [(f"a{i}", 1), (f"b{i}", 1), (f"a{i}", -1), (f"b{i}", -1)]
        chi_y = 2 - 2 * genus
    else:
        word = [("u", 1), ("v", 1)]
        for i in range(genus):
            word += [(f"c{i}", 1), (f"c{i}", 1)]
        chi_y = 2 - genus
    expect_or = host_or and summand_orientable

    s1, host_circles = slit_site(s)
    expect = _expectation(s, p * (chi_y - 2), 0, expect_or)
    s2, copies = merge_copies(s1, word, "Y")
    guest_circles = []
    for k in range(p):
        # the copy's boundary circle runs through its "u" edge
        lab = s2.letter[copies[k][0]]
        guest_circles.append(_circles_for_letters(s2, [lab])[0])
    return _glue_orbit(s2, host_circles, guest_circles, expect)


def scheme_plus_ribbon(s: Scheme, i: int, site: Optional[str] = None) -> Scheme:
    from .builders import sphere_scheme

    p = s.p
    host_or = orientability(s)
    expect = _expectation(s, -2 * (p - 1), 2, host_or)
    sphere = sphere_scheme(p, i)
    sph_slit, sph_circles = slit_site(sphere)
    s1, host_circles = slit_site(s, site=site)
    s2, occ_map = merge_equivariant(s1, sph_slit, "R.")
    guest_circles = [[(occ_map[o], al) for o, al in c] for c in sph_circles]
    return _glue_orbit(s2, host_circles, guest_circles, expect)


def _consume_fixed_cell(s: Scheme, cell_key) -> tuple[Scheme, list[int]]:
    """Subdivide (if the cell is a face center) and truncate, returning the
    scheme with the hole and the fresh boundary occurrence ids."""
    if isinstance(cell_key, tuple) and len(cell_key) == 2 and cell_key[0] == "face":
        s, vkey = barycentric_subdivide(s, cell_key[1])
    else:
        vkey = cell_key
    return truncate_vertex(s, vkey)


def _glue_at_hole(s_holed: Scheme, guest: Scheme, prefix: str, expect: _Expect) -> Scheme:
    hole = _sole_boundary_circle(s_holed)
    guest_hole = _sole_boundary_circle(guest)
    L = math.lcm(len(hole), len(guest_hole))
    if L != len(hole):
        s_holed = refine_boundary_occs(s_holed, [o for o, _ in hole], L // len(hole))
        hole = _sole_boundary_circle(s_holed)
    if L != len(guest_hole):
        guest = refine_boundary_occs(guest, [o for o, _ in guest_hole], L // len(guest_hole))
        guest_hole = _sole_boundary_circle(guest)
    merged, occ_map = merge_equivariant(s_holed, guest, prefix)
    guest_circle = [(occ_map[o], al) for o, al in guest_hole]
    hole = [(o, al) for o, al in hole]
    return _glue_invariant(merged, hole, guest_circle, expect)


def scheme_plus_twisted(s: Scheme, cell_key) -> Scheme:
    from .builders import tr_scheme

    p = s.p
    expect = _expectation(s, -(p - 1), 1, orientability(s))
    s_holed, _ = _consume_fixed_cell(s, cell_key)
    last = None
    for j in range(1, p):
        try:
            return _glue_at_hole(s_holed, tr_scheme(p, j), f"T{j}.", expect)
        except SchemeSurgeryError as e:
            last = e
    raise SchemeSurgeryError(f"no twisted ribbon glues at {cell_key}: {last}")


def scheme_plus_fmb(s: Scheme, cell_key) -> Scheme:
    from .builders import mobius_scheme

    p = s.p
    expect = _expectation(s, -1, -1, False)
    s_holed, _ = _consume_fixed_cell(s, cell_key)
    last = None
    for j in range(1, p):
        try:
            return _glue_at_hole(s_holed, mobius_scheme(p, j), f"M{j}.", expect)
        except SchemeSurgeryError as e:
            last = e
    raise SchemeSurgeryError(f"no band glues at {cell_key}: {last}")


def scheme_surgery(s: Scheme, plan: dict, kind: str) -> Scheme:
    """Public dispatcher: kind in {conn-sum, plus-ribbon, plus-twisted,
    plus-fmb} with the plan naming the participating cells."""
    if kind == "conn-sum":
        return scheme_conn_sum(s, plan["orientable"], plan["genus"])
    if kind == "plus-ribbon":
        return scheme_plus_ribbon(s, plan["i"])
    if kind == "plus-twisted":
        return scheme_plus_twisted(s, plan["cell"])
    if kind == "plus-fmb":
        return scheme_plus_fmb(s, plan["cell"])
    raise SchemeSurgeryError(f"unknown surgery kind {kind!r}")


# ---------------------------------------------------------------------------
# Executing whole surgery words at scheme level


def _find_cell_with_value(s: Scheme, target: int, record_rotations) -> tuple:
    """Locate a fixed cell whose rotation value matches `target` from the
    running symbolic record, resolving the global orientation flip."""
    cells = fixed_point_report(s)
    values = sorted(c.value for c in cells)
    if record_rotations is None:
        raise SchemeSurgeryError("no rotation data to match cells against")
    expected = sorted(record_rotations)
    if values == expected:
        flip = 1
    elif sorted((-v) % s.p for v in values) == expected:
        flip = -1
    else:
        raise SchemeSurgeryError(
            f"scheme rotation data {values} does not match record {expected}"
        )
    for c in sorted(cells, key=lambda c: (c.kind, str(c.key))):
        if (flip * c.value) % s.p == target % s.p:
            return c.key
    raise SchemeSurgeryError(f"no fixed cell carries rotation {target}")


def scheme_of_word(word) -> Scheme:
    """Build the scheme for a surgery word, executing each step at scheme
    level.  Selector resolution reuses the symbolic evaluation so both
    layers consume fixed points with the same rotation data."""
    from ..calculus import EvalState, apply_step, base_state
    from .builders import base_scheme

    rec, roster = base_state(word.base, word.p)
    state = EvalState(rec, roster)
    s = base_scheme(word.base, word.p)
    for step in word.steps:
        if step.kind == "#M":
            s = scheme_conn_sum(s, True, step.genus)
        elif step.kind == "#N":
            s = scheme_conn_sum(s, False, step.genus)
        elif step.kind == "+R":
            s = scheme_plus_ribbon(s, step.i)
        elif step.kind in ("+TR", "+FMB"):
            entry = state.resolve(step.selector)
            if entry.label is None:
                raise SchemeSurgeryError("cannot locate a fixed cell without rotation data")
            cell = _find_cell_with_value(s, entry.label, state.record.rotations)
            if step.kind == "+TR":
                s = scheme_plus_twisted(s, cell)
            else:
                s = scheme_plus_fmb(s, cell)
        else:
            raise SchemeSurgeryError(f"step {step.kind} has no scheme-level execution")
        apply_step(state, step)
    return s
