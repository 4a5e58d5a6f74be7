"""Random valid surgery words, for the oracle/calculus sweeps.

Words are restricted to the steps with a scheme-level execution
(connected sums, ribbons, twisted ribbons, fixed-point-to-band); each
candidate step is accepted only if the symbolic calculus accepts it.
"""

from __future__ import annotations

import random

from .calculus import EvalState, SurgeryError, apply_step, base_state
from .words import BaseSpace, Selector, SurgeryStep, SurgeryWord


def _random_base(rng: random.Random, p: int) -> BaseSpace:
    kind = rng.choice(["S", "S", "M1free", "N2free", "N1_1", "Poly"])
    if kind == "S":
        return BaseSpace("S", i=rng.randrange(1, p))
    if kind == "Poly":
        return BaseSpace("Poly", i=rng.randrange(1, p), n=rng.choice([1, 1, 2]))
    if kind in ("N2free", "N1_1"):
        return BaseSpace(kind, i=rng.randrange(1, p))
    return BaseSpace("M1free")


def _random_step(rng: random.Random, p: int, state: EvalState) -> SurgeryStep:
    kind = rng.choice(["+R", "+R", "#M", "#N", "+TR", "+TR", "+FMB"])
    if kind == "+R":
        return SurgeryStep("+R", i=rng.randrange(1, p))
    if kind == "#M":
        return SurgeryStep("#M", genus=rng.choice([1, 1, 2]))
    if kind == "#N":
        return SurgeryStep("#N", genus=rng.choice([1, 1, 2]))
    entries = [e for e in state.roster if e.label is not None]
    if not entries:
        raise SurgeryError("no fixed point to target")
    e = rng.choice(entries)
    return SurgeryStep(kind, selector=Selector(e.role, e.index))


def random_word(rng: random.Random, p: int, max_steps: int = 4) -> SurgeryWord:
    base = _random_base(rng, p)
    rec, roster = base_state(base, p)
    state = EvalState(rec, roster)
    steps = []
    target = rng.randrange(0, max_steps + 1)
    attempts = 0
    while len(steps) < target and attempts < 30:
        attempts += 1
        try:
            step = _random_step(rng, p, state)
            apply_step(state, step)
        except SurgeryError:
            continue
        steps.append(step)
    return SurgeryWord(p, base, tuple(steps))
