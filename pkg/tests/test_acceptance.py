"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion
lines and timings.
"""

import random
import time

import numpy as np
import pytest

from equisurf.calculus import (
    apply_conn_sum,
    apply_minus_ribbon,
    apply_minus_twisted,
    apply_plus_ribbon,
    apply_plus_twisted,
    evaluate,
)
from equisurf.families import FamilyClass, enumerate_families, family_record
from equisurf.invariants import canonicalize_rotations
from equisurf.modp import half_mod, pair_rep
from equisurf.normalize import normalize
from equisurf.oracle.builders import tr_rotation_table
from equisurf.oracle.checks import compare_word
from equisurf.oracle.scheme import rotation_tuple
from equisurf.oracle.surgery import scheme_of_word
from equisurf.orbits import SurfaceModel, orbit_count
from equisurf.wordgen import random_word
from equisurf.words import parse_word


def _report(n, name, elapsed, limit):
    print(f"ACCEPTANCE {n} ({name}): PASS in {elapsed:.1f}s (limit {limit}s)")
    assert elapsed < limit, f"criterion {n} exceeded its {limit}s budget"


def test_criterion_1_orbit_counts():
    t0 = time.time()
    for p in (3, 5, 7):
        for r in range(3, 9):
            got = orbit_count(SurfaceModel("closed-nonorientable", r), p).nonzero_orbit_count
            assert got == 1, (p, r, got)
        got = orbit_count(SurfaceModel("closed-nonorientable", 2), p).nonzero_orbit_count
        assert got == (p - 1) // 2, (p, 2, got)
        for g in (1, 2, 3):
            got = orbit_count(SurfaceModel("closed-orientable", g), p).nonzero_orbit_count
            assert got == 1, (p, g, got)
        for crosscaps, expect in [(1, (p - 1) // 2), (2, p - 1), (3, (p + 1) // 2), (4, (p + 1) // 2)]:
            got = orbit_count(SurfaceModel("boundary-nonorientable", crosscaps), p).nonzero_orbit_count
            assert got == expect, (p, crosscaps, got, expect)
    _report(1, "orbit counts", time.time() - t0, 60)


def test_criterion_2_euler_sweep():
    t0 = time.time()
    checked = 0
    for p in (3, 5, 7):
        for fam in enumerate_families(p, 40):
            rec = family_record(fam)
            assert rec.beta <= 40
            assert (2 - rec.beta - rec.fixed_points) % p == 0, fam
            checked += 1
    assert checked > 100
    _report(2, f"Euler sweep over {checked} family members", time.time() - t0, 5)


def test_criterion_3_rotation_tuple_separation():
    t0 = time.time()
    tower = rotation_tuple(scheme_of_word(parse_word("Poly(2,1)", 3)))
    spheres = rotation_tuple(scheme_of_word(parse_word("S(1) +R(1) +R(1)", 3)))
    assert tower == (1, 1, 1, 1, 1, 1)
    assert spheres == (1, 1, 1, 2, 2, 2)
    for u in (1, 2):
        twisted = tuple(sorted(u * x % 3 for x in tower))
        assert twisted != spheres
    _report(3, "rotation-tuple separation at p=3", time.time() - t0, 5)


def test_criterion_4_oracle_calculus_agreement():
    t0 = time.time()
    total = 0
    for p in (3, 5):
        rng = random.Random(20240 + p)
        for _ in range(500):
            word = random_word(rng, p)
            mismatches = compare_word(word)
            assert mismatches == [], mismatches
            total += 1
    _report(4, f"oracle/calculus agreement on {total} words", time.time() - t0, 600)


def test_criterion_5_rewrite_lemmas():
    t0 = time.time()
    for p in (3, 5):
        cases = [
            # word, family, record-equal counterpart word (piece twists matched)
            ("Poly(1,1) +TR(poly-vertex:1)", FamilyClass(p, "Sph", (1, 0)), "S(1) +R(1)"),
            ("N2free(1) +R(1)", FamilyClass(p, "NSph", (0, 2)), "S(1) #N(2)"),
            ("N1_1(1) +TR(base-point)", FamilyClass(p, "NSph", (0, 1)), "S(1) #N(1)"),
            (
                "Poly(1,1) #N(1)",
                FamilyClass(p, "NProj", (1, 0)),
                f"N1_1(1) +R({pair_rep(half_mod(p - 1, p), p)})",
            ),
        ]
        for text, family, other in cases:
            word = parse_word(text, p)
            res = normalize(word)
            assert res.unique == family, (p, text, res.families)
            left = evaluate(word).record
            right = evaluate(parse_word(other, p)).record
            assert (left.orientable, left.beta, left.fixed_points) == (
                right.orientable,
                right.beta,
                right.fixed_points,
            ), (p, text, other)
            lc = canonicalize_rotations(left.rotations, p, orientable=left.orientable)
            rc = canonicalize_rotations(right.rotations, p, orientable=right.orientable)
            assert lc == rc, (p, text, other, lc, rc)
    _report(5, "rewrite-lemma identities", time.time() - t0, 1)


def test_criterion_6_property_suites():
    t0 = time.time()
    rng = random.Random(77)

    # ribbon and twisted-ribbon round trips are identities
    for p in (3, 5):
        for _ in range(60):
            rec = evaluate(random_word(rng, p, max_steps=3)).record
            ribbon = apply_plus_ribbon(rec, 1)
            assert apply_minus_ribbon(ribbon, (1, p - 1) if rec.orientable else (1, 1)).record == rec
            if rec.rotations:
                target = rng.choice(rec.rotations)
                plus = apply_plus_twisted(rec, target)
                added = (
                    tr_rotation_table(p, target)[0]
                    if rec.orientable
                    else pair_rep(half_mod(target, p), p)
                )
                assert apply_minus_twisted(plus, pair_label=added) == rec

    # ribbon commutes with connected sum, on records and normal forms
    for p in (3, 5):
        for _ in range(40):
            rec = evaluate(random_word(rng, p, max_steps=3)).record
            i, g2 = rng.randrange(1, p), 2 * rng.randrange(0, 3)
            assert apply_conn_sum(apply_plus_ribbon(rec, i), True, g2) == apply_plus_ribbon(
                apply_conn_sum(rec, True, g2), i
            )
        a = normalize(parse_word("S(1) +R(1) #M(1)", p))
        b = normalize(parse_word("S(1) #M(1) +R(1)", p))
        assert a.unique == b.unique

    # canonical form: idempotent and invariant under unit twists
    for p in (3, 5, 7):
        for _ in range(80):
            entries = tuple(rng.randrange(1, p) for _ in range(rng.randrange(0, 6)))
            canon = canonicalize_rotations(entries, p)
            assert canonicalize_rotations(canon, p) == canon
            u = rng.randrange(1, p)
            assert canonicalize_rotations(tuple(u * e % p for e in entries), p) == canon

    # orbit partition is independent of the seed schedule
    model = SurfaceModel("closed-nonorientable", 4)
    base = orbit_count(model, 5)
    nprng = np.random.default_rng(3)
    for _ in range(10):
        order = [int(x) for x in nprng.permutation(np.arange(1, base.state_count))]
        rep = orbit_count(model, 5, seed_order=order)
        assert rep.representatives == base.representatives
        assert rep.orbit_sizes == base.orbit_sizes

    _report(6, "property suites", time.time() - t0, 120)
