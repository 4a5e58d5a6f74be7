"""Built-in gluing schemes and the twisted-ribbon rotation table.

Conventions: the rotation-sphere builder takes the monodromy exponent of
its north pole, so sphere_scheme(p, i) reports rotation data {i, p-i}.
The closed 2p-gon and the twisted ribbon take the literal rotation index j
(rotation by 2*pi*j/p of the polygon).
"""

from __future__ import annotations

from functools import lru_cache

from ..modp import check_odd_prime, inv_mod
from .ops import barycentric_subdivide, truncate_vertex
from .scheme import Scheme, SchemeError, fixed_point_report, scheme_from_words
from .surgery import scheme_plus_fmb, slit_site


def sphere_scheme(p: int, i: int) -> Scheme:
    """Two p-gon caps glued along the equator; north pole exponent i."""
    check_odd_prime(p)
    if i % p == 0:
        raise SchemeError("pole exponent must be a unit")
    j = inv_mod(i, p)
    north = [(f"a{k}", 1) for k in range(p)]
    south = [(f"a{p - 1 - k}", -1) for k in range(p)]
    action = {}
    for k in range(p):
        action[(0, k)] = (0, (k + j) % p)
        action[(1, k)] = (1, (k - j) % p)
    return scheme_from_words(p, [north, south], action)


def polygon_scheme(p: int, j: int) -> Scheme:
    """Closed 2p-gon with opposite edges identified in parallel, rotated by
    2*pi*j/p (occurrence shift 2j)."""
    check_odd_prime(p)
    if j % p == 0:
        raise SchemeError("rotation index must be a unit")
    word = [(f"e{t}", 1) for t in range(p)] + [(f"e{t}", -1) for t in range(p)]
    action = {(0, t): (0, (t + 2 * j) % (2 * p)) for t in range(2 * p)}
    return scheme_from_words(p, [word], action)


def torus_free_scheme(p: int) -> Scheme:
    """Free rotation of the torus: a cyclic strip of p squares."""
    check_odd_prime(p)
    words = []
    for k in range(p):
        words.append([
            (f"b{k}", 1),
            (f"v{(k + 1) % p}", 1),
            (f"b{k}", -1),
            (f"v{k}", -1),
        ])
    action = {(k, t): ((k + 1) % p, t) for k in range(p) for t in range(4)}
    return scheme_from_words(p, words, action)


def mobius_scheme(p: int, j: int) -> Scheme:
    """Free order-p action on the band: the j-th power of the basic
    translate-and-flip of a strip of p squares (crossing the seam flips
    once more, so the basic move has order p)."""
    check_odd_prime(p)
    if j % p == 0:
        raise SchemeError("band index must be a unit")
    words = []
    for k in range(p):
        if k < p - 1:
            right = (f"v{k + 1}", 1)
        else:
            right = ("v0", -1)
        words.append([(f"b{k}", 1), right, (f"t{k}", -1), (f"v{k}", -1)])
    basic = {}
    for k in range(p):
        for t in range(4):
            if k + 1 < p:
                basic[(k, t)] = (k + 1, (2 - t) % 4)
            else:
                basic[(k, t)] = (0, t)
    action = dict(basic)
    for _ in range(j % p - 1):
        action = {src: basic[dst] for src, dst in action.items()}
    return scheme_from_words(p, words, action)


def tr_scheme(p: int, j: int) -> Scheme:
    """Twisted ribbon: the closed 2p-gon with the central disk removed."""
    s = polygon_scheme(p, j)
    s, center = barycentric_subdivide(s, 0)
    s, _ = truncate_vertex(s, center)
    return s


def ribbon_scheme(p: int, i: int) -> Scheme:
    """The rotation sphere with p conjugate disks removed."""
    s, _ = slit_site(sphere_scheme(p, i))
    return s


def _pole_cell(s: Scheme, value: int) -> tuple:
    for c in fixed_point_report(s):
        if c.value == value:
            return c.key
    raise SchemeError(f"no fixed cell with rotation {value}")


def klein_free_scheme(p: int, i: int) -> Scheme:
    """Free action on the Klein bottle: both sphere poles turned to bands."""
    s = sphere_scheme(p, i)
    s = scheme_plus_fmb(s, _pole_cell(s, i % p))
    cells = fixed_point_report(s)
    return scheme_plus_fmb(s, cells[0].key)


def proj_plane_one_scheme(p: int, i: int) -> Scheme:
    """Projective plane with one fixed point: the sphere with its south
    pole turned to a band."""
    s = sphere_scheme(p, i)
    return scheme_plus_fmb(s, _pole_cell(s, (p - i) % p))


_EXAMPLES = {
    "Sphere": sphere_scheme,
    "Poly1": lambda p, i: polygon_scheme(p, inv_mod(i, p)),
    "TR": tr_scheme,
    "Rp": ribbon_scheme,
    "M1Free": lambda p, i: torus_free_scheme(p),
    "MB": mobius_scheme,
    "KleinFree": klein_free_scheme,
    "ProjPlaneOne": proj_plane_one_scheme,
}


def build_example(name: str, p: int, i: int = 1) -> Scheme:
    """Built-in example schemes; `i` is the rotation/twist index."""
    if name not in _EXAMPLES:
        raise SchemeError(f"unknown example {name!r} (have {sorted(_EXAMPLES)})")
    if i % p == 0:
        raise SchemeError("twist index must be a unit mod p")
    return _EXAMPLES[name](p, i)


def base_scheme(base, p: int) -> Scheme:
    """Scheme for a surgery-word base space (label conventions match the
    symbolic roster)."""
    if base.kind == "S":
        return sphere_scheme(p, base.i % p)
    if base.kind == "M1free":
        return torus_free_scheme(p)
    if base.kind == "N2free":
        return klein_free_scheme(p, base.i % p)
    if base.kind == "N1_1":
        return proj_plane_one_scheme(p, base.i % p)
    if base.kind == "Poly":
        # grow the tower by its defining word: sphere, twisted ribbon at
        # the south pole, then ribbon + twisted ribbon at each new south
        from ..words import BaseSpace, Selector, SurgeryStep, SurgeryWord
        from .surgery import scheme_of_word

        steps = [SurgeryStep("+TR", selector=Selector("base-south"))]
        for j in range(1, base.n):
            steps.append(SurgeryStep("+R", i=base.i))
            steps.append(SurgeryStep("+TR", selector=Selector("ribbon-south", j)))
        word = SurgeryWord(p, BaseSpace("S", i=base.i), tuple(steps))
        return scheme_of_word(word)
    raise SchemeError(f"no scheme for base {base.kind}")


@lru_cache(maxsize=None)
def tr_rotation_table(p: int, consumed: int) -> tuple[int, int]:
    """Rotation exponents (r1, r2) replacing a consumed fixed point of
    exponent `consumed` under twisted-ribbon surgery; r1 + r2 = consumed
    mod p.  Computed from the gluing schemes, not assumed."""
    from .surgery import scheme_plus_twisted

    check_odd_prime(p)
    consumed %= p
    if consumed == 0:
        raise SchemeError("consumed rotation must be a unit")
    s = sphere_scheme(p, consumed)
    cell = _pole_cell(s, consumed)
    out = scheme_plus_twisted(s, cell)
    values = sorted(c.value for c in fixed_point_report(out))
    for flip in (1, -1):
        flipped = sorted((flip * v) % p for v in values)
        south = (p - consumed) % p
        if south not in flipped:
            continue
        rest = list(flipped)
        rest.remove(south)
        if len(rest) == 2 and rest[0] == rest[1] and (rest[0] + rest[1] - consumed) % p == 0:
            return (rest[0], rest[1])
    raise SchemeError(f"twisted-ribbon table computation failed for p={p}, i={consumed}")
