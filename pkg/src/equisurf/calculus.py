"""Record-level surgery calculus.

Each operation takes an InvariantRecord and returns the record of the
surgered surface.  The deltas:

    connected sum with Y:     F, beta + p*beta(Y), orientability AND
    +R  (ribbon):             F+2, beta + 2(p-1), adds rotation pair {i, p-i}
    +TR (twisted ribbon):     F+1, beta + (p-1), replaces one rotation entry
    -R:                       F-2, beta - 2(p-1)
    -TR:                      F-1, beta - (p-1)
    +FMB (fixed pt -> band):  F-1, beta + 1, result non-orientable
    +MBF (band -> fixed pt):  F+1, beta - 1, orientability re-derived

The twisted-ribbon replacement rotations come from the cell-complex oracle
(tr_rotation_table); the consumed entry with exponent t is replaced by the
pair (t/2, t/2) mod p, which is what the oracle computes for every p.

evaluate() folds a SurgeryWord over these operations while tracking a
roster of fixed-point roles so that selectors like ``ribbon-south:1``
resolve to concrete rotation entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .invariants import InvariantRecord, Verdict, validate
from .modp import pair_rep
from .words import BaseSpace, Selector, SurgeryStep, SurgeryWord


class SurgeryError(ValueError):
    """A surgery step whose preconditions fail on the running record."""

    def __init__(self, message: str, step_index: Optional[int] = None):
        self.step_index = step_index
        if step_index is not None:
            message = f"step {step_index}: {message}"
        super().__init__(message)


def _tr_pair(p: int, consumed: int) -> tuple[int, int]:
    from .oracle.builders import tr_rotation_table

    return tr_rotation_table(p, consumed)


def _to_pair_reps(record: InvariantRecord) -> Optional[tuple[int, ...]]:
    if record.rotations is None:
        return None
    return tuple(sorted(pair_rep(r, record.p) for r in record.rotations))


def _remove_entry(rotations: tuple[int, ...], value: int) -> tuple[int, ...]:
    rot = list(rotations)
    rot.remove(value)
    return tuple(rot)


def apply_conn_sum(rec: InvariantRecord, summand_orientable: bool, summand_beta: int) -> InvariantRecord:
    """Equivariant connected sum with a non-equivariant surface of the
    given beta-genus (2g orientable, r non-orientable)."""
    if summand_orientable:
        if summand_beta < 0 or summand_beta % 2 != 0:
            raise SurgeryError("orientable summand needs beta = 2g >= 0")
    elif summand_beta < 1:
        raise SurgeryError("non-orientable summand needs genus >= 1")
    if summand_beta == 0:
        return rec

    if summand_orientable:
        orientable = rec.orientable
    else:
        orientable = False
    rotations = rec.rotations
    if not summand_orientable and rec.orientable and rotations is not None:
        rotations = _to_pair_reps(rec)
    return rec.replace(
        beta=rec.beta + rec.p * summand_beta,
        orientable=orientable,
        rotations=rotations,
    )


def apply_plus_ribbon(rec: InvariantRecord, i: int) -> InvariantRecord:
    p = rec.p
    if i % p == 0:
        raise SurgeryError("ribbon twist must be a unit mod p")
    rotations = rec.rotations
    if rotations is not None:
        if rec.orientable is None:
            rotations = None
        elif rec.orientable:
            rotations = tuple(sorted(rotations + (i % p, (p - i) % p)))
        else:
            rotations = tuple(sorted(rotations + (pair_rep(i, p),) * 2))
    return rec.replace(beta=rec.beta + 2 * (p - 1), fixed_points=rec.fixed_points + 2, rotations=rotations)


def apply_plus_twisted(rec: InvariantRecord, target: Optional[int] = None) -> InvariantRecord:
    """Twisted-ribbon surgery at the fixed point carrying rotation `target`
    (default: the least rotation entry)."""
    p = rec.p
    if rec.fixed_points < 1:
        raise SurgeryError("twisted-ribbon surgery needs a fixed point")
    rotations = rec.rotations
    if rotations is not None and rec.orientable is not None:
        if target is None:
            target = min(rotations)
        if target not in rotations:
            raise SurgeryError(f"no fixed point with rotation {target}")
        if rec.orientable:
            r1, r2 = _tr_pair(p, target)
        else:
            half = _tr_pair(p, target)[0]
            r1 = r2 = pair_rep(half, p)
        rotations = tuple(sorted(_remove_entry(rotations, target) + (r1, r2)))
    else:
        rotations = None
    return rec.replace(beta=rec.beta + (p - 1), fixed_points=rec.fixed_points + 1, rotations=rotations)


def find_minus_ribbon_pair(rec: InvariantRecord) -> Optional[tuple[int, int]]:
    """Greedy choice of the rotation pair a -R step removes: for oriented
    data the {i, p-i} pair of least i, otherwise the least repeated pair
    representative (the tube's two ends carry the same unordered pair)."""
    if rec.rotations is None:
        return None
    p = rec.p
    if rec.orientable:
        for i in sorted(set(rec.rotations)):
            if i != (p - i) % p and i in rec.rotations and (p - i) % p in rec.rotations:
                return (i, (p - i) % p)
        return None
    for a in sorted(set(rec.rotations)):
        if rec.rotations.count(a) >= 2:
            return (a, a)
    return None


@dataclass(frozen=True)
class MinusRibbonResult:
    record: InvariantRecord
    connectivity: str  # "guaranteed" | "choice-dependent"


def apply_minus_ribbon(rec: InvariantRecord, pair: Optional[tuple[int, int]] = None) -> MinusRibbonResult:
    p = rec.p
    if rec.fixed_points < 2:
        raise SurgeryError("ribbon removal needs two fixed points")
    if rec.beta < 2 * (p - 1):
        raise SurgeryError("beta would drop below zero")
    rotations = rec.rotations
    if rotations is not None and rec.orientable is not None:
        if pair is None:
            pair = find_minus_ribbon_pair(rec)
        if pair is None:
            raise SurgeryError("record admits no removable rotation pair")
        a, b = pair
        if rec.orientable and (a + b) % p != 0:
            raise SurgeryError("oriented ribbon removal needs an {i, p-i} pair")
        for v in (a, b):
            if v not in rotations:
                raise SurgeryError(f"no fixed point with rotation {v}")
            rotations = _remove_entry(rotations, v)
    out = rec.replace(beta=rec.beta - 2 * (p - 1), fixed_points=rec.fixed_points - 2, rotations=rotations)
    if out.orientable and out.fixed_points == 1:
        raise SurgeryError("would leave an orientable surface with one fixed point")
    flag = "guaranteed" if rec.fixed_points >= 3 else "choice-dependent"
    return MinusRibbonResult(out, flag)


def apply_minus_twisted(rec: InvariantRecord, pair_label: Optional[int] = None) -> InvariantRecord:
    """Remove a twisted ribbon: consumes two fixed points with equal
    rotation entries and restores their merged fixed point."""
    p = rec.p
    if rec.fixed_points < 2:
        raise SurgeryError("twisted-ribbon removal needs two fixed points")
    if rec.beta < p - 1:
        raise SurgeryError("beta would drop below zero")
    if rec.orientable and rec.fixed_points == 2:
        raise SurgeryError("would leave an orientable surface with one fixed point")
    rotations = rec.rotations
    if rotations is not None and rec.orientable is not None:
        if pair_label is None:
            cands = sorted(a for a in set(rotations) if rotations.count(a) >= 2)
            if not cands:
                raise SurgeryError("record admits no equal rotation pair")
            pair_label = cands[0]
        if rotations.count(pair_label) < 2:
            raise SurgeryError(f"no repeated rotation {pair_label}")
        merged = (2 * pair_label) % p
        if not rec.orientable:
            merged = pair_rep(merged, p)
        rotations = _remove_entry(_remove_entry(rotations, pair_label), pair_label)
        rotations = tuple(sorted(rotations + (merged,)))
    return rec.replace(beta=rec.beta - (p - 1), fixed_points=rec.fixed_points - 1, rotations=rotations)


def apply_fmb(rec: InvariantRecord, target: Optional[int] = None) -> InvariantRecord:
    """Replace the fixed point carrying rotation `target` by a Mobius band."""
    if rec.fixed_points < 1:
        raise SurgeryError("no fixed point to replace")
    rotations = rec.rotations
    if rotations is not None and rec.orientable is not None:
        if target is None:
            target = min(rotations)
        if target not in rotations:
            raise SurgeryError(f"no fixed point with rotation {target}")
        rotations = _remove_entry(rotations, target)
        if rec.orientable:
            rotations = tuple(sorted(pair_rep(r, rec.p) for r in rotations))
    return rec.replace(
        beta=rec.beta + 1,
        fixed_points=rec.fixed_points - 1,
        orientable=False,
        rotations=rotations,
    )


def _resolve_mbf_orientability(p: int, beta: int, fixed_points: int) -> Optional[bool]:
    from .families import nonorientable_family_from_record, orientable_candidates

    has_or = bool(orientable_candidates(p, beta, fixed_points))
    has_nonor = nonorientable_family_from_record(p, beta, fixed_points) is not None
    if has_or and not has_nonor:
        return True
    if has_nonor and not has_or:
        return False
    if not has_or and not has_nonor:
        raise SurgeryError(f"no surface with beta={beta}, F={fixed_points} exists at p={p}")
    return None


def apply_mbf(rec: InvariantRecord) -> InvariantRecord:
    """Mobius band to fixed point surgery (the reverse of +FMB).

    The record alone does not say which band was removed, so the rotation
    data becomes unknown, and the orientability is re-derived from the
    family tables when they force it.
    """
    if rec.orientable is not False:
        raise SurgeryError("band-to-fixed-point surgery needs a non-orientable surface")
    if rec.beta < 1:
        raise SurgeryError("beta would drop below zero")
    beta = rec.beta - 1
    fixed_points = rec.fixed_points + 1
    orientable = _resolve_mbf_orientability(rec.p, beta, fixed_points)
    return rec.replace(beta=beta, fixed_points=fixed_points, orientable=orientable, rotations=None)


# ---------------------------------------------------------------------------
# Word evaluation with a fixed-point roster


@dataclass(frozen=True)
class RosterEntry:
    role: str
    index: Optional[int]
    label: Optional[int]  # rotation entry; None after orientability is lost track of

    def matches(self, sel: Selector) -> bool:
        role = sel.role
        if role == "base-pole":
            role = "base-north" if self.role == "base-north" else "base-point"
        if role != self.role:
            return False
        return sel.index is None or sel.index == self.index


BASE_RECORDS = {
    # kind -> (orientable, beta at p, fixed_points)
    "S": (True, lambda p: 0, 2),
    "M1free": (True, lambda p: 2, 0),
    "N2free": (False, lambda p: 2, 0),
    "N1_1": (False, lambda p: 1, 1),
}


def base_state(base: BaseSpace, p: int) -> tuple[InvariantRecord, tuple[RosterEntry, ...]]:
    from .modp import half_mod

    if base.kind == "S":
        i = base.i % p
        rec = InvariantRecord(p, True, 0, 2, (i, p - i))
        roster = (RosterEntry("base-north", None, i), RosterEntry("base-south", None, p - i))
    elif base.kind == "M1free":
        rec = InvariantRecord(p, True, 2, 0, ())
        roster = ()
    elif base.kind == "N2free":
        rec = InvariantRecord(p, False, 2, 0, ())
        roster = ()
    elif base.kind == "N1_1":
        i = base.i % p
        rec = InvariantRecord(p, False, 1, 1, (pair_rep(i, p),))
        roster = (RosterEntry("base-point", None, pair_rep(i, p)),)
    elif base.kind == "Poly":
        n, i = base.n, base.i % p
        v = half_mod(p - i, p)
        labels = [i, v, v] * n
        rec = InvariantRecord(p, True, (3 * n - 2) * (p - 1), 3 * n, tuple(labels))
        roster = tuple(RosterEntry("poly-vertex", m + 1, labels[m]) for m in range(3 * n))
    else:
        raise SurgeryError(f"unknown base space {base.kind}")
    return rec, roster


@dataclass
class EvalState:
    record: InvariantRecord
    roster: tuple[RosterEntry, ...]
    ribbon_count: int = 0
    tr_count: int = 0
    mbf_count: int = 0

    def resolve(self, sel: Selector) -> RosterEntry:
        for e in self.roster:
            if e.matches(sel):
                return e
        raise SurgeryError(f"selector {sel} matches no fixed point")


def _roster_relabel_nonorientable(state: EvalState, p: int):
    state.roster = tuple(
        RosterEntry(e.role, e.index, pair_rep(e.label, p) if e.label is not None else None)
        for e in state.roster
    )


def apply_step(state: EvalState, step: SurgeryStep) -> EvalState:
    """Apply one step to the evaluation state (record + roster), in place."""
    rec = state.record
    p = rec.p
    was_orientable = rec.orientable

    if step.kind == "#M":
        state.record = apply_conn_sum(rec, True, 2 * step.genus)
    elif step.kind == "#N":
        state.record = apply_conn_sum(rec, False, step.genus)
        if was_orientable:
            _roster_relabel_nonorientable(state, p)
    elif step.kind == "+R":
        state.record = apply_plus_ribbon(rec, step.i)
        state.ribbon_count += 1
        i = step.i % p
        if rec.orientable is None:
            labels = (None, None)
        elif rec.orientable:
            labels = (i, p - i)
        else:
            labels = (pair_rep(i, p), pair_rep(i, p))
        state.roster = state.roster + (
            RosterEntry("ribbon-north", state.ribbon_count, labels[0]),
            RosterEntry("ribbon-south", state.ribbon_count, labels[1]),
        )
    elif step.kind == "+TR":
        entry = state.resolve(step.selector)
        state.record = apply_plus_twisted(rec, entry.label)
        roster = tuple(e for e in state.roster if e is not entry)
        if entry.label is None or rec.orientable is None:
            new_labels = (None, None)
        elif rec.orientable:
            new_labels = _tr_pair(p, entry.label)
        else:
            half = _tr_pair(p, entry.label)[0]
            new_labels = (pair_rep(half, p), pair_rep(half, p))
        state.roster = roster + (
            RosterEntry("tr-vertex", state.tr_count + 1, new_labels[0]),
            RosterEntry("tr-vertex", state.tr_count + 2, new_labels[1]),
        )
        state.tr_count += 2
    elif step.kind == "-R":
        pair = find_minus_ribbon_pair(rec)
        result = apply_minus_ribbon(rec, pair)
        state.record = result.record
        if pair is not None:
            state.roster = _drop_labels(state.roster, [pair[0], pair[1]])
    elif step.kind == "-TR":
        rot_before = rec.rotations
        state.record = apply_minus_twisted(rec)
        if rot_before is not None and rec.orientable is not None:
            removed = sorted(a for a in set(rot_before) if rot_before.count(a) >= 2)[0]
            merged = (2 * removed) % p if rec.orientable else pair_rep(2 * removed, p)
            state.roster = _drop_labels(state.roster, [removed, removed])
            state.tr_count += 1
            state.roster = state.roster + (RosterEntry("tr-vertex", state.tr_count, merged),)
    elif step.kind == "+FMB":
        entry = state.resolve(step.selector)
        state.record = apply_fmb(rec, entry.label)
        state.roster = tuple(e for e in state.roster if e is not entry)
        if was_orientable:
            _roster_relabel_nonorientable(state, p)
    elif step.kind == "+MBF":
        state.record = apply_mbf(rec)
        state.mbf_count += 1
        state.roster = tuple(RosterEntry(e.role, e.index, None) for e in state.roster) + (
            RosterEntry("mbf-point", state.mbf_count, None),
        )
    else:
        raise SurgeryError(f"unknown step kind {step.kind}")
    return state


def _drop_labels(roster: tuple[RosterEntry, ...], labels: list[int]) -> tuple[RosterEntry, ...]:
    remaining = list(labels)
    out = []
    for e in roster:
        if e.label in remaining:
            remaining.remove(e.label)
        else:
            out.append(e)
    return tuple(out)


@dataclass(frozen=True)
class EvalResult:
    record: InvariantRecord
    roster: tuple[RosterEntry, ...]
    prefix_records: tuple[InvariantRecord, ...]


def evaluate(word: SurgeryWord) -> EvalResult:
    """Left fold of the surgery steps over the base record.

    Every intermediate record must validate; the first failing step is
    reported with its index (base = step -1 errors never occur for parsed
    words).
    """
    rec, roster = base_state(word.base, word.p)
    state = EvalState(rec, roster)
    prefixes = [state.record]
    _check(validate(state.record), -1)
    for idx, step in enumerate(word.steps):
        try:
            apply_step(state, step)
        except SurgeryError as e:
            raise SurgeryError(str(e), step_index=idx) from None
        _check(validate(state.record), idx)
        prefixes.append(state.record)
    return EvalResult(state.record, state.roster, tuple(prefixes))


def _check(verdict: Verdict, idx: int):
    if not verdict.ok:
        raise SurgeryError(f"invalid intermediate record: {', '.join(verdict.violations)}", step_index=idx)
