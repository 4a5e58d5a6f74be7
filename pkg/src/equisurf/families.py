"""The six canonical families of closed surfaces with an order-p symmetry
and the (beta, F)-classifier.

Orientable:
    MFree(g)      free action on the genus 1+pg surface
    Sph(k, g)     sphere + k ribbons, summed with M_g      F = 2k+2
    Poly(n, k, g) polygon tower of height n + k ribbons    F = 3n+2k
Non-orientable:
    NFree(r)      free action on the genus 2+pr surface
    NSph(k, r)    sphere + k ribbons, summed with N_r      F = 2k+2, r >= 1
    NProj(k, r)   one-fixed-point projective base + k ribbons  F = 1+2k

For non-orientable surfaces (beta, F) determines the family uniquely.  For
orientable surfaces with F >= 2 all matching families share
beta = (F-2)(p-1) + 2pg, so Sph and Poly towers can collide; rotation data
separates them where available.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .invariants import InvariantRecord, canonicalize_rotations, validate
from .modp import check_odd_prime, half_mod


class ClassifyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyClass:
    p: int
    kind: str  # "MFree" | "Sph" | "Poly" | "NFree" | "NSph" | "NProj"
    params: tuple[int, ...]

    def __post_init__(self):
        check_odd_prime(self.p)
        k = self.kind
        pr = self.params
        ok = {
            "MFree": lambda: len(pr) == 1 and pr[0] >= 0,
            "Sph": lambda: len(pr) == 2 and all(x >= 0 for x in pr),
            "Poly": lambda: len(pr) == 3 and pr[0] >= 1 and pr[1] >= 0 and pr[2] >= 0,
            "NFree": lambda: len(pr) == 1 and pr[0] >= 0,
            "NSph": lambda: len(pr) == 2 and pr[0] >= 0 and pr[1] >= 1,
            "NProj": lambda: len(pr) == 2 and all(x >= 0 for x in pr),
        }.get(k)
        if ok is None or not ok():
            raise ClassifyError(f"bad family {k}{pr}")

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(str(x) for x in self.params)})"

    @property
    def orientable(self) -> bool:
        return self.kind in ("MFree", "Sph", "Poly")


def family_record(fam: FamilyClass) -> InvariantRecord:
    """The invariant record shared by every member of the family.

    Rotation data is not part of the family record: members of one family
    can differ by independent unit twists on the construction pieces.
    """
    p = fam.p
    if fam.kind == "MFree":
        (g,) = fam.params
        return InvariantRecord(p, True, 2 + 2 * p * g, 0, ())
    if fam.kind == "Sph":
        k, g = fam.params
        return InvariantRecord(p, True, 2 * (p - 1) * k + 2 * p * g, 2 * k + 2)
    if fam.kind == "Poly":
        n, k, g = fam.params
        return InvariantRecord(p, True, (3 * n - 2) * (p - 1) + 2 * (p - 1) * k + 2 * p * g, 3 * n + 2 * k)
    if fam.kind == "NFree":
        (r,) = fam.params
        return InvariantRecord(p, False, 2 + p * r, 0, ())
    if fam.kind == "NSph":
        k, r = fam.params
        return InvariantRecord(p, False, 2 * (p - 1) * k + p * r, 2 * k + 2)
    if fam.kind == "NProj":
        k, r = fam.params
        return InvariantRecord(p, False, 1 + 2 * (p - 1) * k + p * r, 1 + 2 * k)
    raise ClassifyError(fam.kind)


def family_reference_rotations(fam: FamilyClass) -> tuple[int, ...]:
    """Canonical rotation tuple of the default-twist family member."""
    p = fam.p
    if fam.kind in ("MFree", "NFree"):
        return ()
    if fam.kind == "Sph":
        k, _ = fam.params
        return canonicalize_rotations((1, p - 1) * (k + 1), p)
    if fam.kind == "Poly":
        n, k, _ = fam.params
        v = half_mod(p - 1, p)
        return canonicalize_rotations((1, v, v) * n + (1, p - 1) * k, p)
    if fam.kind == "NSph":
        k, _ = fam.params
        return canonicalize_rotations((1,) * (2 * k + 2), p, orientable=False)
    if fam.kind == "NProj":
        k, _ = fam.params
        return canonicalize_rotations((1,) * (1 + 2 * k), p, orientable=False)
    raise ClassifyError(fam.kind)


def nonorientable_family_from_record(p: int, beta: int, fixed_points: int) -> Optional[FamilyClass]:
    """The unique non-orientable family with this (beta, F), if any."""
    if fixed_points == 0:
        r = beta - 2
        if r >= 0 and r % p == 0:
            return FamilyClass(p, "NFree", (r // p,))
        return None
    if fixed_points % 2 == 0:
        k = (fixed_points - 2) // 2
        rem = beta - 2 * (p - 1) * k
        if rem >= p and rem % p == 0:
            return FamilyClass(p, "NSph", (k, rem // p))
        return None
    k = (fixed_points - 1) // 2
    rem = beta - 1 - 2 * (p - 1) * k
    if rem >= 0 and rem % p == 0:
        return FamilyClass(p, "NProj", (k, rem // p))
    return None


def orientable_candidates(p: int, beta: int, fixed_points: int) -> list[FamilyClass]:
    """Every orientable family matching (beta, F), Sph before Poly towers."""
    if beta % 2 != 0:
        return []
    if fixed_points == 0:
        g2 = beta - 2
        if g2 >= 0 and g2 % (2 * p) == 0:
            return [FamilyClass(p, "MFree", (g2 // (2 * p),))]
        return []
    if fixed_points == 1:
        return []
    rem = beta - (fixed_points - 2) * (p - 1)
    if rem < 0 or rem % (2 * p) != 0:
        return []
    g = rem // (2 * p)
    out = []
    if fixed_points % 2 == 0:
        out.append(FamilyClass(p, "Sph", ((fixed_points - 2) // 2, g)))
    n = 1
    while 3 * n <= fixed_points:
        if (fixed_points - 3 * n) % 2 == 0:
            out.append(FamilyClass(p, "Poly", (n, (fixed_points - 3 * n) // 2, g)))
        n += 1
    return out


def _sph_rotations_match(rotations: tuple[int, ...], p: int) -> bool:
    # realizable by k+1 ribbon pairs {x, p-x}
    counts = {}
    for r in rotations:
        counts[r] = counts.get(r, 0) + 1
    return all(counts.get(x, 0) == counts.get(p - x, 0) for x in counts)


def _poly_rotations_match(rotations: tuple[int, ...], p: int, n: int) -> bool:
    # realizable as a height-n tower with one twist plus ribbon pairs
    rot = list(rotations)
    for i in range(1, p):
        v = half_mod(p - i, p)
        rest = list(rot)
        ok = True
        for _ in range(n):
            for need in (i, v, v):
                if need in rest:
                    rest.remove(need)
                else:
                    ok = False
                    break
            if not ok:
                break
        if ok and _sph_rotations_match(tuple(rest), p):
            return True
    return False


@dataclass(frozen=True)
class ClassifyResult:
    families: tuple[FamilyClass, ...]

    @property
    def unique(self) -> Optional[FamilyClass]:
        return self.families[0] if len(self.families) == 1 else None


def classify(record: InvariantRecord) -> ClassifyResult:
    """Resolve a record to its canonical family (or the candidate set).

    Non-orientable records resolve uniquely from (beta, F).  Orientable
    records with rotation data resolve by matching the data against the
    families' realizable tuples; without rotation data the full (beta, F)
    candidate set is returned.
    """
    verdict = validate(record)
    if not verdict.ok:
        raise ClassifyError(f"invalid record: {', '.join(verdict.violations)}")
    p = record.p

    cands: list[FamilyClass] = []
    if record.orientable is not False:
        cands.extend(orientable_candidates(p, record.beta, record.fixed_points))
    if record.orientable is not True:
        fam = nonorientable_family_from_record(p, record.beta, record.fixed_points)
        if fam is not None:
            cands.append(fam)
    if not cands:
        raise ClassifyError(
            f"no family matches beta={record.beta}, F={record.fixed_points} at p={p}"
        )

    if record.orientable and record.rotations is not None and len(cands) > 1:
        canon = canonicalize_rotations(record.rotations, p)
        filtered = []
        for fam in cands:
            if fam.kind == "Sph" and _sph_rotations_match(canon, p):
                filtered.append(fam)
            elif fam.kind == "Poly" and _poly_rotations_match(canon, p, fam.params[0]):
                filtered.append(fam)
            elif fam.kind == "MFree":
                filtered.append(fam)
        if filtered:
            cands = filtered
    return ClassifyResult(tuple(cands))


# ---------------------------------------------------------------------------
# Atlas enumeration


@dataclass(frozen=True)
class AtlasRow:
    family: FamilyClass
    beta: int
    fixed_points: int
    rotations: tuple[int, ...]
    ambiguous: bool  # shares (beta, F, orientability) with another family


_KIND_ORDER = {"Sph": 0, "Poly": 1, "MFree": 2, "NFree": 3, "NSph": 4, "NProj": 5}


def enumerate_families(p: int, beta_max: int) -> list[FamilyClass]:
    check_odd_prime(p)
    fams = []
    g = 0
    while 2 + 2 * p * g <= beta_max:
        fams.append(FamilyClass(p, "MFree", (g,)))
        g += 1
    r = 0
    while 2 + p * r <= beta_max:
        fams.append(FamilyClass(p, "NFree", (r,)))
        r += 1
    k = 0
    while 2 * (p - 1) * k <= beta_max:
        g = 0
        while 2 * (p - 1) * k + 2 * p * g <= beta_max:
            fams.append(FamilyClass(p, "Sph", (k, g)))
            g += 1
        r = 1
        while 2 * (p - 1) * k + p * r <= beta_max:
            fams.append(FamilyClass(p, "NSph", (k, r)))
            r += 1
        r = 0
        while 1 + 2 * (p - 1) * k + p * r <= beta_max:
            fams.append(FamilyClass(p, "NProj", (k, r)))
            r += 1
        k += 1
    n = 1
    while (3 * n - 2) * (p - 1) <= beta_max:
        k = 0
        while (3 * n - 2) * (p - 1) + 2 * (p - 1) * k <= beta_max:
            g = 0
            while (3 * n - 2) * (p - 1) + 2 * (p - 1) * k + 2 * p * g <= beta_max:
                fams.append(FamilyClass(p, "Poly", (n, k, g)))
                g += 1
            k += 1
        n += 1
    return fams


def atlas(p: int, beta_max: int) -> list[AtlasRow]:
    """Every family member pattern with beta <= beta_max, sorted by (beta, F).

    Rows whose (beta, F, orientability) collide with another family are
    flagged ambiguous: rotation data is needed to tell them apart.
    """
    fams = enumerate_families(p, beta_max)
    keyed: dict[tuple[int, int, bool], list[FamilyClass]] = {}
    for fam in fams:
        rec = family_record(fam)
        keyed.setdefault((rec.beta, rec.fixed_points, fam.orientable), []).append(fam)
    rows = []
    for fam in fams:
        rec = family_record(fam)
        collide = keyed[(rec.beta, rec.fixed_points, fam.orientable)]
        rows.append(
            AtlasRow(
                family=fam,
                beta=rec.beta,
                fixed_points=rec.fixed_points,
                rotations=family_reference_rotations(fam),
                ambiguous=len(collide) > 1,
            )
        )
    rows.sort(
        key=lambda r: (r.beta, r.fixed_points, _KIND_ORDER[r.family.kind], r.family.params)
    )
    return rows
