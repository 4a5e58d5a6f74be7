"""Cross-checks between the gluing-scheme oracle and the symbolic calculus.

Scopes:
  examples   rebuild every built-in scheme, verify its invariants
  surgeries  execute fixed surgery words stepwise at both levels
  ding       rotation-tuple separation of the height-2 tower vs the
             two-ribbon sphere, plus disk-choice independence
  all        everything above plus a randomized word sweep
"""

from __future__ import annotations

import random

from ..calculus import evaluate
from ..invariants import canonicalize_rotations
from ..wordgen import random_word
from ..words import parse_word
from .builders import build_example
from .scheme import (
    beta_genus,
    boundary_circles,
    fixed_point_report,
    orientability,
    validate_scheme,
)
from .surgery import record_of_scheme, scheme_of_word, scheme_plus_ribbon


def compare_word(word) -> list[str]:
    """Mismatches between symbolic and scheme-level execution of a word."""
    sym = evaluate(word).record
    sch = record_of_scheme(scheme_of_word(word))
    out = []
    if (sym.orientable, sym.beta, sym.fixed_points) != (sch.orientable, sch.beta, sch.fixed_points):
        out.append(
            f"{word}: record (or={sym.orientable}, beta={sym.beta}, F={sym.fixed_points}) vs "
            f"scheme (or={sch.orientable}, beta={sch.beta}, F={sch.fixed_points})"
        )
        return out
    sym_rot = canonicalize_rotations(sym.rotations, word.p, orientable=sym.orientable)
    if sym_rot != sch.rotations:
        out.append(f"{word}: rotations {sym_rot} vs scheme {sch.rotations}")
    return out


def check_examples(p: int) -> tuple[list[str], list[str]]:
    failures, lines = [], []
    expectations = {
        # name -> (closed?, orientable, beta or first-betti, F, boundary circles)
        "Sphere": (True, True, 0, 2, 0),
        "Poly1": (True, True, p - 1, 3, 0),
        "M1Free": (True, True, 2, 0, 0),
        "KleinFree": (True, False, 2, 0, 0),
        "ProjPlaneOne": (True, False, 1, 1, 0),
        "TR": (False, True, p - 1, 2, 1),
        "Rp": (False, True, p - 1, 2, p),
        "MB": (False, False, 1, 0, 1),
    }
    for name, (closed, orient, beta, fixed, circles) in sorted(expectations.items()):
        for i in (1, (p - 1) // 2 + 1):
            s = build_example(name, p, i)
            try:
                validate_scheme(s)
            except Exception as e:  # pragma: no cover
                failures.append(f"{name}(p={p},i={i}): invalid scheme: {e}")
                continue
            got_or = orientability(s)
            b = beta_genus(s)
            if closed:
                got = (True, got_or, b, len(fixed_point_report(s)), 0)
            else:
                got = (
                    False,
                    got_or,
                    b.first_betti,
                    len(fixed_point_report(s)),
                    b.boundary_circles,
                )
            if got != (closed, orient, beta, fixed, circles):
                failures.append(f"{name}(p={p},i={i}): {got} != {(closed, orient, beta, fixed, circles)}")
    lines.append(f"examples p={p}: {len(expectations)} builders x 2 twists checked")
    return failures, lines


_SURGERY_WORDS = [
    "S(1) +TR(base-south)",
    "S(1) +R(1) +R(1)",
    "S(1) +R(1) #M(1)",
    "S(1) +FMB(base-south)",
    "S(1) +FMB(base-north) +FMB(base-south)",
    "S(1) #N(1)",
    "N1_1(1) +R(1)",
    "N2free(1) +R(1)",
    "Poly(1,1) +TR(poly-vertex:1)",
    "Poly(1,1) +R(1) +TR(ribbon-south:1)",
    "Poly(1,1) #N(1)",
    "M1free #M(2)",
]


def check_surgeries(p: int) -> tuple[list[str], list[str]]:
    failures, lines = [], []
    for text in _SURGERY_WORDS:
        word = parse_word(text, p)
        failures.extend(compare_word(word))
    lines.append(f"surgeries p={p}: {len(_SURGERY_WORDS)} fixed words executed at both levels")
    return failures, lines


def check_ding(p: int) -> tuple[list[str], list[str]]:
    failures, lines = [], []
    tower = record_of_scheme(scheme_of_word(parse_word("Poly(2,1)", p)))
    ribboned = record_of_scheme(scheme_of_word(parse_word("S(1) +R(1) +R(1)", p)))
    if tower.rotations == ribboned.rotations:
        failures.append(
            f"p={p}: tower and two-ribbon sphere share the rotation tuple {tower.rotations}"
        )
    lines.append(
        f"ding p={p}: tower tuple {tower.rotations} vs sphere tuple {ribboned.rotations}"
    )

    # disk-choice independence: ribbons at different slit sites agree
    base = build_example("Sphere", p, 1)
    interior = sorted({lab for lab in base.letter.values()})
    r1 = record_of_scheme(scheme_plus_ribbon(base, 1, site=interior[0]))
    r2 = record_of_scheme(scheme_plus_ribbon(base, 1, site=interior[-1]))
    if r1 != r2:
        failures.append(f"p={p}: ribbon surgery depends on the disk choice: {r1} vs {r2}")
    lines.append(f"ding p={p}: disk-choice independence checked on the sphere")
    return failures, lines


def check_random_words(p: int, count: int, seed: int) -> tuple[list[str], list[str]]:
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        word = random_word(rng, p)
        failures.extend(compare_word(word))
    return failures, [f"random sweep p={p}: {count} words compared"]


def run_oracle_check(scope: str, p: int, seed: int = 0, words: int = 40):
    failures, lines = [], []
    if scope in ("examples", "all"):
        f, l = check_examples(p)
        failures += f
        lines += l
    if scope in ("surgeries", "all"):
        f, l = check_surgeries(p)
        failures += f
        lines += l
    if scope in ("ding", "all"):
        f, l = check_ding(p)
        failures += f
        lines += l
    if scope == "all":
        f, l = check_random_words(p, words, seed)
        failures += f
        lines += l
    lines.append("PASS" if not failures else f"FAIL ({len(failures)} mismatches)")
    return failures, lines
