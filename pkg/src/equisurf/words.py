"""Surgery words: base space plus a sequence of surgery steps, with a
text syntax that round-trips through parse/print.

Syntax (whitespace separated tokens)::

    word  := base step*
    base  := S(i) | M1free | N2free(i) | N1_1(i) | Poly(n,i)
    step  := +R(i) | -R | +TR(sel) | -TR | +FMB(sel) | +MBF | #M(g) | #N(r)
    sel   := base-north | base-south | base-pole | base-point
           | poly-vertex[:m] | ribbon-north:j | ribbon-south:j
           | tr-vertex:m | mbf-point:m

e.g. ``S(1) +R(1) +R(1) #M(2)`` or ``Poly(2,1) +TR(ribbon-south:1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .modp import check_odd_prime


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class BaseSpace:
    kind: str  # "S" | "M1free" | "N2free" | "N1_1" | "Poly"
    i: Optional[int] = None
    n: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == "M1free":
            return "M1free"
        if self.kind == "Poly":
            return f"Poly({self.n},{self.i})"
        return f"{self.kind}({self.i})"


@dataclass(frozen=True)
class Selector:
    role: str
    index: Optional[int] = None

    def __str__(self) -> str:
        return self.role if self.index is None else f"{self.role}:{self.index}"


@dataclass(frozen=True)
class SurgeryStep:
    kind: str  # "+R" | "-R" | "+TR" | "-TR" | "+FMB" | "+MBF" | "#M" | "#N"
    i: Optional[int] = None        # ribbon twist
    genus: Optional[int] = None    # connected-sum genus/crosscap count
    selector: Optional[Selector] = None

    def __str__(self) -> str:
        if self.kind == "+R":
            return f"+R({self.i})"
        if self.kind in ("-R", "-TR", "+MBF"):
            return self.kind
        if self.kind in ("+TR", "+FMB"):
            return f"{self.kind}({self.selector})"
        if self.kind in ("#M", "#N"):
            return f"{self.kind}({self.genus})"
        raise ValueError(self.kind)


@dataclass(frozen=True)
class SurgeryWord:
    p: int
    base: BaseSpace
    steps: tuple[SurgeryStep, ...] = ()

    def __post_init__(self):
        check_odd_prime(self.p)

    def __str__(self) -> str:
        return print_word(self)


def print_word(word: SurgeryWord) -> str:
    return " ".join([str(word.base)] + [str(s) for s in word.steps])


_BASE_RE = {
    "S": re.compile(r"S\((\d+)\)$"),
    "N2free": re.compile(r"N2free\((\d+)\)$"),
    "N1_1": re.compile(r"N1_1\((\d+)\)$"),
    "Poly": re.compile(r"Poly\((\d+),(\d+)\)$"),
}
_SEL_RE = re.compile(r"([a-z-]+)(?::(\d+))?$")
_KNOWN_ROLES = {
    "base-north", "base-south", "base-pole", "base-point",
    "poly-vertex", "ribbon-north", "ribbon-south", "tr-vertex", "mbf-point",
}


def _parse_selector(text: str, pos: int) -> Selector:
    m = _SEL_RE.match(text)
    if not m or m.group(1) not in _KNOWN_ROLES:
        raise WordParseError(f"unknown selector {text!r}", pos)
    idx = m.group(2)
    return Selector(m.group(1), int(idx) if idx is not None else None)


def parse_word(text: str, p: int) -> SurgeryWord:
    """Parse the text syntax.  Errors carry the character position."""
    check_odd_prime(p)
    tokens = []
    for m in re.finditer(r"\S+", text):
        tokens.append((m.group(0), m.start()))
    if not tokens:
        raise WordParseError("empty word", 0)

    tok, pos = tokens[0]
    base = None
    if tok == "M1free":
        base = BaseSpace("M1free")
    else:
        for kind, rx in _BASE_RE.items():
            m = rx.match(tok)
            if m:
                if kind == "Poly":
                    n, i = int(m.group(1)), int(m.group(2))
                    if n < 1:
                        raise WordParseError("Poly tower height must be >= 1", pos)
                    base = BaseSpace("Poly", i=i, n=n)
                else:
                    base = BaseSpace(kind, i=int(m.group(1)))
                break
    if base is None:
        raise WordParseError(f"unknown base space {tok!r}", pos)
    if base.i is not None and base.i % p == 0:
        raise WordParseError(f"base twist must be a unit mod {p}", pos)

    steps = []
    for tok, pos in tokens[1:]:
        if tok == "-R":
            steps.append(SurgeryStep("-R"))
        elif tok == "-TR":
            steps.append(SurgeryStep("-TR"))
        elif tok == "+MBF":
            steps.append(SurgeryStep("+MBF"))
        elif tok.startswith("+R(") and tok.endswith(")"):
            inner = tok[3:-1]
            if not inner.isdigit() or int(inner) % p == 0:
                raise WordParseError(f"ribbon twist must be a unit mod {p}", pos)
            steps.append(SurgeryStep("+R", i=int(inner)))
        elif tok.startswith("+TR(") and tok.endswith(")"):
            steps.append(SurgeryStep("+TR", selector=_parse_selector(tok[4:-1], pos)))
        elif tok.startswith("+FMB(") and tok.endswith(")"):
            steps.append(SurgeryStep("+FMB", selector=_parse_selector(tok[5:-1], pos)))
        elif tok.startswith("#M(") and tok.endswith(")"):
            inner = tok[3:-1]
            if not inner.isdigit():
                raise WordParseError("orientable summand genus must be an integer >= 0", pos)
            steps.append(SurgeryStep("#M", genus=int(inner)))
        elif tok.startswith("#N(") and tok.endswith(")"):
            inner = tok[3:-1]
            if not inner.isdigit() or int(inner) < 1:
                raise WordParseError("non-orientable summand genus must be an integer >= 1", pos)
            steps.append(SurgeryStep("#N", genus=int(inner)))
        else:
            raise WordParseError(f"unknown step {tok!r}", pos)

    return SurgeryWord(p=p, base=base, steps=tuple(steps))
