import pytest

from equisurf.families import (
    ClassifyError,
    FamilyClass,
    atlas,
    classify,
    enumerate_families,
    family_record,
    family_reference_rotations,
)
from equisurf.invariants import InvariantRecord


def test_classify_nonorientable_unique():
    rec = InvariantRecord(3, False, 8, 3, None)
    result = classify(rec)
    assert result.unique == FamilyClass(3, "NProj", (1, 1))


def test_classify_orientable_ambiguous_without_rotations():
    rec = InvariantRecord(3, True, 8, 6, None)
    fams = classify(rec).families
    assert set(fams) == {FamilyClass(3, "Sph", (2, 0)), FamilyClass(3, "Poly", (2, 0, 0))}


def test_classify_orientable_with_rotations():
    rec = InvariantRecord(3, True, 8, 6, (1, 1, 1, 1, 1, 1))
    assert classify(rec).unique == FamilyClass(3, "Poly", (2, 0, 0))
    rec2 = InvariantRecord(3, True, 8, 6, (1, 1, 1, 2, 2, 2))
    assert classify(rec2).unique == FamilyClass(3, "Sph", (2, 0))


def test_classify_rejects_invalid():
    with pytest.raises(ClassifyError):
        classify(InvariantRecord(3, True, 0, 1))


def test_classify_no_family():
    # valid Euler data that no family realizes: orientable beta=4, F=0
    with pytest.raises(ClassifyError):
        classify(InvariantRecord(3, True, 4, 0))


def test_family_records():
    assert family_record(FamilyClass(3, "MFree", (1,))).beta == 8
    rec = family_record(FamilyClass(3, "Sph", (1, 0)))
    assert (rec.beta, rec.fixed_points) == (4, 4)
    rec = family_record(FamilyClass(5, "Poly", (2, 0, 0)))
    assert (rec.beta, rec.fixed_points) == (16, 6)
    rec = family_record(FamilyClass(3, "NProj", (1, 0)))
    assert (rec.beta, rec.fixed_points) == (5, 3)


def test_family_reference_rotations_p3():
    assert family_reference_rotations(FamilyClass(3, "Sph", (2, 0))) == (1, 1, 1, 2, 2, 2)
    assert family_reference_rotations(FamilyClass(3, "Poly", (2, 0, 0))) == (1, 1, 1, 1, 1, 1)


def test_atlas_small():
    rows = atlas(3, 2)
    seen = {(str(r.family), r.beta, r.fixed_points) for r in rows}
    assert seen == {
        ("Sph(0, 0)", 0, 2),
        ("NProj(0, 0)", 1, 1),
        ("MFree(0)", 2, 0),
        ("NFree(0)", 2, 0),
        ("Poly(1, 0, 0)", 2, 3),
    }
    assert not any(r.ambiguous for r in rows)


def test_atlas_beta_zero():
    rows = atlas(3, 0)
    assert [str(r.family) for r in rows] == ["Sph(0, 0)"]


def test_atlas_flags_ambiguous_pairs():
    rows = atlas(3, 8)
    at86 = [r for r in rows if (r.beta, r.fixed_points) == (8, 6)]
    assert {str(r.family) for r in at86} == {"Sph(2, 0)", "Poly(2, 0, 0)"}
    assert all(r.ambiguous for r in at86)
    # distinct orientability classes never flag each other
    free2 = [r for r in rows if (r.beta, r.fixed_points) == (2, 0)]
    assert len(free2) == 2 and not any(r.ambiguous for r in free2)


def test_euler_constraint_across_all_families():
    for p in (3, 5, 7):
        for fam in enumerate_families(p, 40):
            rec = family_record(fam)
            assert (2 - rec.beta - rec.fixed_points) % p == 0, fam
