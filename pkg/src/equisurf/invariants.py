"""Invariant records for closed surfaces with an odd-prime cyclic symmetry.

A surface with an order-p symmetry is fingerprinted by (p, orientability,
beta, F, rotation data).  `beta` is dim H^1(X; Z/2): twice the genus for
orientable surfaces, the crosscap count otherwise.  `fixed_points` is the
number of isolated fixed points F.

Rotation data is one integer per fixed point.  For orientable surfaces the
entry is the monodromy exponent at the fixed point: lifting a small loop
around the image of the point in the quotient (positively oriented) lands on
the sigma^t-translate of the start, and we record t, a unit mod p.  For
non-orientable surfaces no global orientation picks a sign, so each fixed
point is recorded by the unordered pair {t, p-t}, stored as min(t, p-t).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Optional

from .modp import check_odd_prime, pair_rep, units


class MalformedRotationError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class InvariantRecord:
    """Algebraic fingerprint of a closed surface with an order-p symmetry.

    `orientable` is None only when a Mobius-to-fixed-point step made the
    orientability genuinely undecidable from (beta, F) alone.
    `rotations` is None when the rotation data is unknown.
    """

    p: int
    orientable: Optional[bool]
    beta: int
    fixed_points: int
    rotations: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.rotations is not None:
            object.__setattr__(self, "rotations", tuple(sorted(r % self.p for r in self.rotations)))

    def replace(self, **kw) -> "InvariantRecord":
        return replace(self, **kw)

    # -- JSON wire format (field names are a contract) --

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "orientable": self.orientable,
            "beta": self.beta,
            "fixed_points": self.fixed_points,
            "rotations": list(self.rotations) if self.rotations is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> "InvariantRecord":
        rot = d.get("rotations")
        return cls(
            p=d["p"],
            orientable=d["orientable"],
            beta=d["beta"],
            fixed_points=d["fixed_points"],
            rotations=tuple(rot) if rot is not None else None,
        )

    @classmethod
    def from_json(cls, text: str) -> "InvariantRecord":
        return cls.from_json_dict(json.loads(text))


def euler_characteristic(record: InvariantRecord) -> int:
    return 2 - record.beta


def canonicalize_rotations(entries, p: int, orientable: bool = True) -> tuple[int, ...]:
    """Canonical form of rotation data under unit multiplication.

    Among the p-1 unit multiples of the multiset, return the sorted tuple
    that is lexicographically least.  Idempotent.  For non-orientable data
    the entries are pair representatives and multiplication acts on pairs.
    """
    entries = tuple(e % p for e in entries)
    for e in entries:
        if e == 0:
            raise MalformedRotationError("rotation entries must be units mod p")
    if not entries:
        return ()
    best = None
    for u in units(p):
        if orientable:
            cand = tuple(sorted((u * e) % p for e in entries))
        else:
            cand = tuple(sorted(pair_rep(u * e, p) for e in entries))
        if best is None or cand < best:
            best = cand
    return best


# Rule names are stable identifiers reported by validate().
RULE_EULER = "euler-constraint"
RULE_ORIENTABLE_EVEN_BETA = "orientable-even-beta"
RULE_NO_ORIENTABLE_F1 = "no-orientable-single-fixed-point"
RULE_ROTATION_COUNT = "rotation-count"
RULE_ROTATION_UNITS = "rotation-units"
WARN_ROTATION_SUM = "rotation-sum-nonzero"
WARN_ORIENTABILITY_UNKNOWN = "orientability-unknown"


def validate(record: InvariantRecord) -> Verdict:
    """Check the record against every rule a realizable surface satisfies.

    Total and deterministic; an invalid record yields a verdict naming each
    violated rule, never an exception.  The rotation-sum rule is reported as
    a warning only: it holds on every computed example but is not asserted
    as a theorem here.
    """
    p = record.p
    violations = []
    warnings = []

    if (2 - record.beta - record.fixed_points) % p != 0:
        violations.append(RULE_EULER)

    if record.orientable is None:
        warnings.append(WARN_ORIENTABILITY_UNKNOWN)
    elif record.orientable:
        if record.beta % 2 != 0:
            violations.append(RULE_ORIENTABLE_EVEN_BETA)
        if record.fixed_points == 1:
            violations.append(RULE_NO_ORIENTABLE_F1)

    if record.rotations is not None:
        if len(record.rotations) != record.fixed_points:
            violations.append(RULE_ROTATION_COUNT)
        if record.orientable:
            if any(r % p == 0 for r in record.rotations):
                violations.append(RULE_ROTATION_UNITS)
            elif sum(record.rotations) % p != 0:
                warnings.append(WARN_ROTATION_SUM)
        elif record.orientable is False:
            if any(not (1 <= r <= (p - 1) // 2) for r in record.rotations):
                violations.append(RULE_ROTATION_UNITS)

    return Verdict(ok=not violations, violations=tuple(violations), warnings=tuple(warnings))
