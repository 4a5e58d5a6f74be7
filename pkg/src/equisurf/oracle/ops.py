"""Equivariant rewriting primitives on gluing schemes.

Everything here rewrites face words while keeping the action permutation
consistent: edge-orbit subdivision, slitting (cutting an edge open into a
bigon hole), barycentric subdivision of an invariant face, truncation of a
fixed vertex into a boundary circle, boundary refinement, disjoint unions
and boundary gluing.  Surgeries in surgery.py are compositions of these.
"""

from __future__ import annotations

from typing import Optional

from .scheme import (
    Analysis,
    Scheme,
    SchemeError,
    analyze,
    boundary_circles,
    face_action,
    letter_action,
)


def _fresh_ids(s: Scheme, n: int) -> list[int]:
    start = max(s.letter, default=-1) + 1
    return list(range(start, start + n))


def _fresh_letters(s: Scheme, n: int, prefix: str, taken: Optional[set] = None) -> list[str]:
    used = set(s.letter.values())
    if taken:
        used |= taken
    out = []
    k = 0
    while len(out) < n:
        name = f"{prefix}{k}"
        if name not in used:
            out.append(name)
            used.add(name)
        k += 1
    return out


def _sigma_letter_orbit(s: Scheme, an: Analysis, letter: str) -> list[str]:
    lam = letter_action(s, an)
    orbit = [letter]
    cur = letter
    for _ in range(s.p - 1):
        cur = lam[cur][0]
        orbit.append(cur)
    if lam[cur][0] != letter:
        raise SchemeError("letter orbit does not close")
    return orbit


def subdivide_letter_orbit(s: Scheme, letter: str, parts: int) -> tuple[Scheme, dict[str, list[str]]]:
    """Split every edge in the sigma-orbit of `letter` into `parts` pieces.

    Returns the new scheme and, per orbit letter, its piece letters in
    tail-to-head order.
    """
    an = analyze(s)
    orbit = _sigma_letter_orbit(s, an, letter)
    fmap = face_action(s, an)
    out = s.copy()
    pieces: dict[str, list[str]] = {}
    fresh = _fresh_letters(s, parts * len(orbit), "q")
    for idx, lab in enumerate(orbit):
        pieces[lab] = fresh[idx * parts:(idx + 1) * parts]

    # expand each occurrence of an orbit letter into `parts` fresh slots
    slot_ids: dict[int, list[int]] = {}
    expanded = [o for o in s.occs() if s.letter[o] in pieces]
    ids = _fresh_ids(s, parts * len(expanded))
    for idx, o in enumerate(expanded):
        slot_ids[o] = ids[idx * parts:(idx + 1) * parts]

    for f, w in enumerate(out.faces):
        new_w = []
        for o in w:
            if o in slot_ids:
                lab = s.letter[o]
                sgn = s.sign[o]
                order = pieces[lab] if sgn == 1 else list(reversed(pieces[lab]))
                for slot, plab in zip(slot_ids[o], order):
                    out.letter[slot] = plab
                    out.sign[slot] = sgn
                    new_w.append(slot)
                del out.letter[o], out.sign[o]
            else:
                new_w.append(o)
        out.faces[f] = new_w

    for o in expanded:
        o2 = s.action[o]
        rev = fmap[an.face_of[o]][2]
        for t, slot in enumerate(slot_ids[o]):
            t2 = t if not rev else parts - 1 - t
            out.action[slot] = slot_ids[o2][t2]
        del out.action[o]
    return out, pieces


def slit_orbit(s: Scheme, letter: str) -> tuple[Scheme, list[tuple[str, str]]]:
    """Cut the sigma-orbit of `letter` open: one occurrence of each orbit
    edge is renamed to a fresh letter, leaving p bigon boundary circles.

    Returns the new scheme and the (kept, fresh) letter pair per orbit edge
    in sigma order.
    """
    an = analyze(s)
    orbit = _sigma_letter_orbit(s, an, letter)
    out = s.copy()
    fresh = _fresh_letters(s, len(orbit), "s")
    # rename a sigma-consistent choice of occurrences
    o_cut = max(an.letter_occs[letter])
    pairs = []
    cur = o_cut
    for k, lab in enumerate(orbit):
        if s.letter[cur] != lab:
            raise SchemeError("slit orbit walk out of sync")
        out.letter[cur] = fresh[k]
        pairs.append((lab, fresh[k]))
        cur = s.action[cur]
    return out, pairs


def barycentric_subdivide(s: Scheme, face_idx: int) -> tuple[Scheme, tuple]:
    """Subdivide an invariant face into triangles around a fresh center
    vertex.  Returns the new scheme and the center's vertex key."""
    an = analyze(s)
    fmap = face_action(s, an)
    f2, shift, rev = fmap[face_idx]
    if f2 != face_idx:
        raise SchemeError("barycentric subdivision targets an invariant face")
    w = s.faces[face_idx]
    m = len(w)
    out = s.copy()
    spokes = _fresh_letters(s, m, "r")
    ids = _fresh_ids(s, 2 * m)
    out_ids = ids[:m]     # (r_t, +1) in triangle t
    in_ids = ids[m:]      # (r_{t+1}, -1) in triangle t

    del out.faces[face_idx]
    tri_index_base = len(out.faces)
    for t in range(m):
        out.letter[out_ids[t]] = spokes[t]
        out.sign[out_ids[t]] = 1
        out.letter[in_ids[t]] = spokes[(t + 1) % m]
        out.sign[in_ids[t]] = -1
        out.faces.append([out_ids[t], w[t], in_ids[t]])
    for t in range(m):
        out.action[out_ids[t]] = out_ids[(t + shift) % m]
        out.action[in_ids[t]] = in_ids[(t + shift) % m]

    an2 = analyze(out)
    root = an2.vertex_root(out_ids[0])
    return out, an2.vertex_key(root)


def vertex_class_by_key(s: Scheme, an: Analysis, key: tuple) -> list[int]:
    for root, corners in an.vertex_classes().items():
        if an.vertex_key(root) == key:
            return corners
    raise SchemeError(f"no vertex with key {key}")


def truncate_vertex(s: Scheme, key: tuple) -> tuple[Scheme, list[int]]:
    """Cut off a fixed vertex, leaving a boundary circle with one edge per
    corner.  Returns the new scheme and the fresh boundary occurrence ids."""
    an = analyze(s)
    corners = vertex_class_by_key(s, an, key)
    cset = set(corners)
    if any(s.action[o] not in cset for o in corners):
        raise SchemeError("truncation targets a fixed vertex")
    out = s.copy()
    ids = _fresh_ids(s, len(corners))
    taus = _fresh_letters(s, len(corners), "t")
    tau_of = {}
    for o, i, lab in zip(corners, ids, taus):
        tau_of[o] = i
        out.letter[i] = lab
        out.sign[i] = 1
    for f, w in enumerate(out.faces):
        new_w = []
        for o in w:
            if o in tau_of:
                new_w.append(tau_of[o])
            new_w.append(o)
        out.faces[f] = new_w
    for o in corners:
        out.action[tau_of[o]] = tau_of[s.action[o]]
    return out, ids


def refine_boundary_occs(s: Scheme, occ_ids: list[int], factor: int) -> Scheme:
    """Subdivide sigma-invariant boundary edges into `factor` pieces each."""
    if factor <= 1:
        return s
    an = analyze(s)
    fmap = face_action(s, an)
    oset = set(occ_ids)
    if any(s.action[o] not in oset for o in occ_ids):
        raise SchemeError("boundary refinement needs a sigma-invariant edge set")
    if any(an.mate[o] is not None for o in occ_ids):
        raise SchemeError("boundary refinement targets boundary edges")
    out = s.copy()
    fresh = _fresh_letters(s, factor * len(occ_ids), "u")
    ids = _fresh_ids(s, factor * len(occ_ids))
    slot_ids = {}
    slot_labs = {}
    for idx, o in enumerate(occ_ids):
        slot_ids[o] = ids[idx * factor:(idx + 1) * factor]
        slot_labs[o] = fresh[idx * factor:(idx + 1) * factor]
    for f, w in enumerate(out.faces):
        new_w = []
        for o in w:
            if o in slot_ids:
                for slot, lab in zip(slot_ids[o], slot_labs[o]):
                    out.letter[slot] = lab
                    out.sign[slot] = 1
                    new_w.append(slot)
                del out.letter[o], out.sign[o]
            else:
                new_w.append(o)
        out.faces[f] = new_w
    for o in occ_ids:
        o2 = s.action[o]
        rev = fmap[an.face_of[o]][2]
        for t, slot in enumerate(slot_ids[o]):
            t2 = t if not rev else factor - 1 - t
            out.action[slot] = slot_ids[o2][t2]
        del out.action[o]
    return out


def merge_equivariant(s: Scheme, guest: Scheme, prefix: str) -> tuple[Scheme, dict[int, int]]:
    """Disjoint union with another scheme carrying its own symmetry.
    Returns the union and the guest occurrence id map."""
    out = s.copy()
    used = set(s.letter.values())
    k = 0
    while any(f"{prefix}{k}.{lab}" in used for lab in set(guest.letter.values())):
        k += 1
    tag = f"{prefix}{k}."
    offset = max(s.letter, default=-1) + 1
    occ_map = {o: o + offset for o in guest.occs()}
    for w in guest.faces:
        out.faces.append([occ_map[o] for o in w])
    for o in guest.occs():
        out.letter[occ_map[o]] = tag + guest.letter[o]
        out.sign[occ_map[o]] = guest.sign[o]
    for o, o2 in guest.action.items():
        out.action[occ_map[o]] = occ_map[o2]
    return out, occ_map


def merge_copies(s: Scheme, word: list[tuple[str, int]], prefix: str) -> tuple[Scheme, list[list[int]]]:
    """Add p disjoint copies of a non-equivariant polygon, cyclically
    permuted by the action.  Returns the union and the copies' occurrence
    ids (one list per copy, in word order)."""
    p = s.p
    out = s.copy()
    used = set(s.letter.values())
    n = 0
    while any(f"{prefix}{n}.{lab}~0" in used for lab, _ in word):
        n += 1
    tag = f"{prefix}{n}."
    ids = _fresh_ids(s, p * len(word))
    copies = [ids[k * len(word):(k + 1) * len(word)] for k in range(p)]
    for k in range(p):
        face = []
        for t, (lab, sgn) in enumerate(word):
            o = copies[k][t]
            out.letter[o] = f"{tag}{lab}~{k}"
            out.sign[o] = sgn
            face.append(o)
        out.faces.append(face)
    for k in range(p):
        for t in range(len(word)):
            out.action[copies[k][t]] = copies[(k + 1) % p][t]
    return out, copies


def glue_letters(s: Scheme, pairs: list[tuple[str, str, int]]) -> Scheme:
    """Identify boundary letter pairs (keep, gone, relative direction)."""
    an = analyze(s)
    out = s.copy()
    for keep, gone, delta in pairs:
        ka, ga = an.letter_occs.get(keep), an.letter_occs.get(gone)
        if ka is None or ga is None or len(ka) != 1 or len(ga) != 1:
            raise SchemeError(f"gluing needs two boundary letters, got {keep}/{gone}")
        o = ga[0]
        out.letter[o] = keep
        out.sign[o] = out.sign[o] * delta
    return out


def circle_letters(s: Scheme, circle: list[tuple[int, bool]]) -> list[str]:
    return [s.letter[o] for o, _ in circle]


def glue_circles(
    s: Scheme,
    circle_a: list[tuple[int, bool]],
    circle_b: list[tuple[int, bool]],
    offset: int,
    rev: bool,
) -> list[tuple[str, str, int]]:
    """Letter identifications gluing two boundary circles of equal length,
    matching position j of A with position offset+j (or offset-j) of B."""
    L = len(circle_a)
    if len(circle_b) != L:
        raise SchemeError("boundary circles of different lengths")
    pairs = []
    for j, (oa, ala) in enumerate(circle_a):
        jb = (offset + j) % L if not rev else (offset - j) % L
        ob, alb = circle_b[jb]
        da = s.sign[oa] if ala else -s.sign[oa]
        db = s.sign[ob] if alb else -s.sign[ob]
        delta = -da * db if rev else da * db
        pairs.append((s.letter[oa], s.letter[ob], delta))
    return pairs
