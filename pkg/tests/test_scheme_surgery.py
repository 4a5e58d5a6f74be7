import pytest

from equisurf.modp import half_mod
from equisurf.oracle.builders import build_example, sphere_scheme, tr_rotation_table
from equisurf.oracle.checks import compare_word
from equisurf.oracle.scheme import fixed_point_report, rotation_tuple, validate_scheme
from equisurf.oracle.surgery import (
    SchemeSurgeryError,
    record_of_scheme,
    scheme_conn_sum,
    scheme_of_word,
    scheme_plus_fmb,
    scheme_plus_ribbon,
    scheme_plus_twisted,
    scheme_surgery,
)
from equisurf.words import parse_word


def _south_cell(s, p, i):
    return next(c.key for c in fixed_point_report(s) if c.value == (p - i) % p)


def test_sphere_plus_twisted_south_is_polygon_record():
    s = sphere_scheme(3, 1)
    out = scheme_plus_twisted(s, _south_cell(s, 3, 1))
    rec = record_of_scheme(out)
    assert (rec.beta, rec.fixed_points, rec.orientable) == (2, 3, True)
    assert rec.rotations == (1, 1, 1)


def test_sphere_two_bands_is_free_klein_bottle():
    s = sphere_scheme(3, 1)
    out = scheme_plus_fmb(s, _south_cell(s, 3, 1))
    out = scheme_plus_fmb(out, fixed_point_report(out)[0].key)
    rec = record_of_scheme(out)
    assert (rec.beta, rec.fixed_points, rec.orientable) == (2, 0, False)


def test_surgery_deltas_match_record_deltas():
    for p in (3, 5):
        base = sphere_scheme(p, 1)
        rec0 = record_of_scheme(base)
        ribbon = record_of_scheme(scheme_plus_ribbon(base, 1))
        assert (ribbon.beta - rec0.beta, ribbon.fixed_points - rec0.fixed_points) == (2 * (p - 1), 2)
        summed = record_of_scheme(scheme_conn_sum(base, True, 2))
        assert (summed.beta - rec0.beta, summed.fixed_points - rec0.fixed_points) == (4 * p, 0)
        twisted = record_of_scheme(scheme_plus_twisted(base, _south_cell(base, p, 1)))
        assert (twisted.beta - rec0.beta, twisted.fixed_points - rec0.fixed_points) == (p - 1, 1)
        banded = record_of_scheme(scheme_plus_fmb(base, _south_cell(base, p, 1)))
        assert (banded.beta - rec0.beta, banded.fixed_points - rec0.fixed_points) == (1, -1)
        assert banded.orientable is False


def test_disk_choice_independence():
    for p in (3, 5):
        base = build_example("Sphere", p, 1)
        sites = sorted(set(base.letter.values()))
        r1 = record_of_scheme(scheme_plus_ribbon(base, 1, site=sites[0]))
        r2 = record_of_scheme(scheme_plus_ribbon(base, 1, site=sites[-1]))
        assert r1 == r2


def test_tower_vs_ribboned_sphere_tuples_differ():
    for p in (3, 5):
        tower = rotation_tuple(scheme_of_word(parse_word("Poly(2,1)", p)))
        spheres = rotation_tuple(scheme_of_word(parse_word("S(1) +R(1) +R(1)", p)))
        assert tower != spheres


def test_tower_tuple_values_p3():
    assert rotation_tuple(scheme_of_word(parse_word("Poly(2,1)", 3))) == (1,) * 6
    assert rotation_tuple(scheme_of_word(parse_word("S(1) +R(1) +R(1)", 3))) == (1, 1, 1, 2, 2, 2)


def test_tr_rotation_table_pins():
    assert tr_rotation_table(3, 2) == (1, 1)
    assert tr_rotation_table(3, 1) == (2, 2)
    r1, r2 = tr_rotation_table(5, 1)
    assert (r1 + r2) % 5 == 1
    for p in (3, 5, 7):
        for i in range(1, p):
            pair = tr_rotation_table(p, i)
            assert sum(pair) % p == i % p
            assert pair == (half_mod(i, p),) * 2


def test_scheme_surgery_dispatcher():
    s = sphere_scheme(3, 1)
    out = scheme_surgery(s, {"orientable": True, "genus": 1}, "conn-sum")
    assert record_of_scheme(out).beta == 6
    out = scheme_surgery(s, {"i": 2}, "plus-ribbon")
    assert record_of_scheme(out).fixed_points == 4
    out = scheme_surgery(s, {"cell": _south_cell(s, 3, 1)}, "plus-twisted")
    assert record_of_scheme(out).fixed_points == 3
    with pytest.raises(SchemeSurgeryError):
        scheme_surgery(s, {}, "no-such-kind")


def test_every_surgery_output_validates():
    s = sphere_scheme(5, 2)
    for out in (
        scheme_plus_ribbon(s, 1),
        scheme_conn_sum(s, False, 1),
        scheme_plus_twisted(s, _south_cell(s, 5, 2)),
        scheme_plus_fmb(s, _south_cell(s, 5, 2)),
    ):
        validate_scheme(out)


def test_word_executor_agrees_with_calculus():
    for p in (3, 5):
        for text in (
            "S(1) +TR(base-south)",
            "S(2) +R(1) +TR(ribbon-north:1)",
            "N2free(1) #N(2)",
            "Poly(1,2) +FMB(poly-vertex:2)",
        ):
            word = parse_word(text, p)
            assert compare_word(word) == []


def test_mismatch_reporting_shape():
    word = parse_word("S(1) +R(1)", 3)
    assert compare_word(word) == []
