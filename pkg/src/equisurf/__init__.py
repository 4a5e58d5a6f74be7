"""equisurf: surgery calculus, combinatorial oracles and orbit enumeration
for closed surfaces with an odd-prime cyclic symmetry."""

from .invariants import (  # noqa: F401
    InvariantRecord,
    Verdict,
    canonicalize_rotations,
    euler_characteristic,
    validate,
)
from .words import SurgeryWord, parse_word, print_word, WordParseError  # noqa: F401
from .calculus import SurgeryError, evaluate  # noqa: F401
from .families import FamilyClass, atlas, classify, family_record  # noqa: F401
from .normalize import normalize  # noqa: F401

__version__ = "0.1.0"
