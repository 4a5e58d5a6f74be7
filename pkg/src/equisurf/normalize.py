"""Normalization of surgery words to canonical families.

The word is folded step by step; alongside the invariant record we carry
the canonical family of the surface built so far and rewrite it with the
known identities:

  * ribbon surgery bumps the ribbon count; connected sums bump g or r;
  * twisted-ribbon surgery on the sphere family is independent of the
    chosen fixed point and lands in the height-1 polygon tower;
  * on a polygon tower with ribbons the outcome splits in two: consuming a
    ribbon south pole grows the tower (height n+1, one ribbon absorbed),
    while every other target collapses to height n-1 with two extra
    ribbons (height 0 meaning the sphere family);
  * the non-orientable side needs no case analysis at all, since (beta, F)
    determines the family there.

Band-to-fixed-point steps can make orientability undecidable from the
record; normalization then returns the candidate set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .calculus import EvalState, SurgeryError, apply_step, base_state
from .invariants import validate
from .families import (
    ClassifyError,
    FamilyClass,
    classify,
    family_record,
    nonorientable_family_from_record,
    orientable_candidates,
)
from .words import SurgeryStep, SurgeryWord


class NormalizeInternalError(RuntimeError):
    """A valid word failed to reach a canonical family: a rewrite-rule gap."""


@dataclass(frozen=True)
class NormalizeResult:
    families: tuple[FamilyClass, ...]
    record: "object"

    @property
    def unique(self) -> Optional[FamilyClass]:
        return self.families[0] if len(self.families) == 1 else None


_BASE_FAMILY = {
    "S": lambda p, base: FamilyClass(p, "Sph", (0, 0)),
    "M1free": lambda p, base: FamilyClass(p, "MFree", (0,)),
    "N2free": lambda p, base: FamilyClass(p, "NFree", (0,)),
    "N1_1": lambda p, base: FamilyClass(p, "NProj", (0, 0)),
    "Poly": lambda p, base: FamilyClass(p, "Poly", (base.n, 0, 0)),
}


def _orientable_step(fam: FamilyClass, step: SurgeryStep, p: int) -> Optional[FamilyClass]:
    """Family transition for one step on an orientable state.

    Returns None when the state leaves the orientable world.
    """
    kind, params = fam.kind, fam.params
    if step.kind == "#M":
        return FamilyClass(p, kind, params[:-1] + (params[-1] + step.genus,))
    if step.kind in ("#N", "+FMB"):
        return None
    if step.kind == "+R":
        if kind == "MFree":
            return FamilyClass(p, "Sph", (0, params[0] + 1))
        if kind == "Sph":
            return FamilyClass(p, "Sph", (params[0] + 1, params[1]))
        return FamilyClass(p, "Poly", (params[0], params[1] + 1, params[2]))
    if step.kind == "+TR":
        if kind == "Sph":
            return FamilyClass(p, "Poly", (1, params[0], params[1]))
        if kind == "Poly":
            n, k, g = params
            if step.selector.role == "ribbon-south" and k >= 1:
                return FamilyClass(p, "Poly", (n + 1, k - 1, g))
            if n == 1:
                return FamilyClass(p, "Sph", (k + 1, g))
            return FamilyClass(p, "Poly", (n - 1, k + 2, g))
        raise NormalizeInternalError(f"+TR on {fam}")
    if step.kind == "-R":
        if kind == "Sph":
            k, g = params
            if k >= 1:
                return FamilyClass(p, "Sph", (k - 1, g))
            return FamilyClass(p, "MFree", (g - 1,))
        if kind == "Poly":
            n, k, g = params
            return FamilyClass(p, "Poly", (n, k - 1, g))
        raise NormalizeInternalError(f"-R on {fam}")
    if step.kind == "-TR":
        if kind == "Sph":
            k, g = params
            return FamilyClass(p, "Poly", (1, k - 1, g))
        if kind == "Poly":
            n, k, g = params
            if n == 1:
                return FamilyClass(p, "Sph", (k, g))
            return FamilyClass(p, "Poly", (n - 1, k + 1, g))
        raise NormalizeInternalError(f"-TR on {fam}")
    raise NormalizeInternalError(f"unhandled step {step.kind} on {fam}")


def normalize(word: SurgeryWord) -> NormalizeResult:
    """Fold the word to its canonical family (or candidate set).

    The resulting family's record always equals the evaluated record on
    (p, orientability, beta, F); a mismatch means a rewrite rule is wrong
    and raises NormalizeInternalError.
    """
    p = word.p
    rec, roster = base_state(word.base, p)
    state = EvalState(rec, roster)
    fam: Optional[FamilyClass] = _BASE_FAMILY[word.base.kind](p, word.base)
    mode = "orientable" if fam.orientable else "nonorientable"

    for idx, step in enumerate(word.steps):
        try:
            apply_step(state, step)
        except SurgeryError as e:
            raise SurgeryError(str(e), step_index=idx) from None
        verdict = validate(state.record)
        if not verdict.ok:
            raise SurgeryError(
                f"invalid intermediate record: {', '.join(verdict.violations)}", step_index=idx
            )
        if mode == "orientable":
            try:
                fam = _orientable_step(fam, step, p)
            except ClassifyError:
                raise NormalizeInternalError(
                    f"family transition left the parameter range at step {idx} ({step})"
                ) from None
            if fam is None:
                mode = "nonorientable"
        elif mode == "nonorientable" and step.kind == "+MBF":
            if state.record.orientable is True:
                cands = orientable_candidates(p, state.record.beta, state.record.fixed_points)
                if len(cands) == 1:
                    fam, mode = cands[0], "orientable"
                else:
                    fam, mode = None, "unknown"
            elif state.record.orientable is None:
                fam, mode = None, "unknown"

    record = state.record
    if mode == "orientable":
        _check_family(fam, record)
        return NormalizeResult((fam,), record)
    if mode == "nonorientable":
        fam = nonorientable_family_from_record(p, record.beta, record.fixed_points)
        if fam is None:
            raise NormalizeInternalError(
                f"no non-orientable family for beta={record.beta}, F={record.fixed_points}"
            )
        return NormalizeResult((fam,), record)
    # orientability unknown: report every family the record allows
    result = classify(record)
    return NormalizeResult(result.families, record)


def _check_family(fam: FamilyClass, record) -> None:
    frec = family_record(fam)
    if (frec.beta, frec.fixed_points, frec.orientable) != (
        record.beta,
        record.fixed_points,
        record.orientable,
    ):
        raise NormalizeInternalError(
            f"family {fam} record {frec.beta, frec.fixed_points} does not match "
            f"evaluated record {record.beta, record.fixed_points}"
        )
