import pytest

from equisurf.oracle.builders import build_example
from equisurf.oracle.scheme import (
    SchemeError,
    analyze,
    beta_genus,
    boundary_circles,
    counts,
    euler_characteristic,
    fixed_point_report,
    orientability,
    rotation_tuple,
    scheme_from_json,
    scheme_from_words,
    scheme_to_json,
    validate_scheme,
)


def test_sphere_invariants():
    for p in (3, 5, 7):
        s = build_example("Sphere", p, 1)
        validate_scheme(s)
        assert euler_characteristic(s) == 2
        assert orientability(s)
        assert sorted(c.value for c in fixed_point_report(s)) == [1, p - 1]


def test_polygon_cell_counts_p3():
    s = build_example("Poly1", 3, 1)
    assert counts(s) == (2, 3, 1)  # two vertices, three edges, one face
    assert euler_characteristic(s) == 0


def test_polygon_p5():
    s = build_example("Poly1", 5, 1)
    assert euler_characteristic(s) == -2
    assert beta_genus(s) == 4 == (3 * 1 - 2) * (5 - 1)
    assert orientability(s)
    assert len(fixed_point_report(s)) == 3


def test_polygon_rotation_tuple_p3():
    assert rotation_tuple(build_example("Poly1", 3, 1)) == (1, 1, 1)


def test_free_torus():
    s = build_example("M1Free", 3, 1)
    assert euler_characteristic(s) == 0
    assert orientability(s)
    assert fixed_point_report(s) == []


def test_twisted_ribbon_has_two_fixed_vertices():
    for p in (3, 5):
        s = build_example("TR", p, 1)
        cells = fixed_point_report(s)
        assert len(cells) == 2
        assert all(c.kind == "vertex" for c in cells)
        b = beta_genus(s)
        assert (b.first_betti, b.boundary_circles) == (p - 1, 1)


def test_ribbon_boundary():
    s = build_example("Rp", 3, 1)
    b = beta_genus(s)
    assert (b.first_betti, b.boundary_circles) == (2, 3)


def test_mobius_band():
    s = build_example("MB", 3, 1)
    assert not orientability(s)
    assert fixed_point_report(s) == []
    b = beta_genus(s)
    assert (b.first_betti, b.boundary_circles) == (1, 1)


def test_klein_and_projective():
    k = build_example("KleinFree", 3, 1)
    assert (beta_genus(k), orientability(k), len(fixed_point_report(k))) == (2, False, 0)
    n = build_example("ProjPlaneOne", 5, 2)
    assert (beta_genus(n), orientability(n), len(fixed_point_report(n))) == (1, False, 1)


def test_unknown_example():
    with pytest.raises(SchemeError):
        build_example("Nope", 3, 1)


def test_fixed_edge_is_rejected():
    # one bigon face folded onto itself by the action: the edge orbit has
    # size 1, which no valid symmetry allows
    words = [[("a", 1), ("a", -1)]]
    action = {(0, 0): (0, 0), (0, 1): (0, 1)}
    s = scheme_from_words(3, words, action)
    with pytest.raises(SchemeError):
        validate_scheme(s)


def test_wrong_order_action_rejected():
    s = build_example("Sphere", 5, 1)
    s.p = 3
    with pytest.raises(SchemeError):
        validate_scheme(s)


def test_json_round_trip_bit_exact():
    for name, p in [("Sphere", 3), ("Poly1", 5), ("MB", 3), ("TR", 3)]:
        s = build_example(name, p, 1)
        blob = scheme_to_json(s)
        again = scheme_to_json(scheme_from_json(blob))
        assert blob == again


def test_json_fields():
    import json

    s = build_example("Sphere", 3, 1)
    d = json.loads(scheme_to_json(s))
    assert set(d) == {"p", "faces", "pairing", "action"}
    assert all(isinstance(w, list) for w in d["faces"])


def test_boundary_circle_walk():
    s = build_example("TR", 5, 2)
    circles = boundary_circles(s)
    assert len(circles) == 1
    assert len(circles[0]) == 10  # truncated center of the subdivided 2p-gon
