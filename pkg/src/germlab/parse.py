"""Parsing of polynomials, points and scenario files.

Polynomial grammar (whitespace insignificant between tokens):

    poly     = [sign] term { sign term } ;
    sign     = "+" | "-" ;
    term     = factor { "*" factor } ;
    factor   = rational | var [ "^" nat ] | "(" poly ")" ;
    rational = nat [ "/" nat ] ;
    var      = identifier declared in the ring ;

Implicit multiplication is not allowed ("2x" is an error); "^" binds tighter
than "*", which binds tighter than the signs.  Rational literals are
non-negative; negativity always comes from sign tokens.

Scenario files are sequences of ";"-terminated statements; "#" starts a
comment running to end of line.  LF and CRLF inputs are both accepted.

    ring <var> <var> ... ;
    coring <var> <var> ... ;              # optional image-side coordinates
    map <name> = <poly> , <poly> , ... ;
    ideal <name> = <poly> , <poly> , ... ;
    cideal <name> = <poly> , <poly> , ... ;   # ideal in the coring
    point <name> = <rational> , ... ;
    task <kind> <args...> [key=value ...] ;

The ring must be declared exactly once, before any binding; every name a task
references must already be bound.  Task kinds mirror the CLI subcommands.
Serialization is `str()` on polynomials (canonical degrevlex-descending term
order, single spaces around the binary +/- signs, no redundant parentheses);
parsing the printed form returns an equal polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import ParseError, PreconditionError
from .poly import PolyMap, PolyRing, Polynomial

#: Task kinds accepted in scenario files (mirrors the CLI subcommands).
TASK_KINDS = (
    "gb", "mult", "degree", "cone", "image", "singular", "smooth", "fiber",
    "index", "spodzieja", "stoll", "critical", "jacobian", "mv", "pullback",
)

#: Option keys whose values are comma-separated lists of bound point names.
_NAME_LIST_OPTIONS = ("extra",)


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT | NAT | SYM | EOF
    text: str
    line: int
    column: int


_SYMBOLS = "+-*^()/,;="


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("NAT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(Token("SYM", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def accept_sym(self, sym: str) -> bool:
        t = self.peek()
        if t.kind == "SYM" and t.text == sym:
            self.next()
            return True
        return False

    def expect_sym(self, sym: str, what: str) -> Token:
        t = self.peek()
        if t.kind == "SYM" and t.text == sym:
            return self.next()
        raise ParseError(f"expected {what}, found {t.text!r}" if t.text else
                         f"expected {what}, found end of input", t.line, t.column)

    def error(self, message: str) -> ParseError:
        t = self.peek()
        return ParseError(message, t.line, t.column)


def _parse_nat(cur: _Cursor) -> int:
    t = cur.peek()
    if t.kind != "NAT":
        raise cur.error(f"expected a number, found {t.text!r}")
    cur.next()
    return int(t.text)


def _parse_rational_literal(cur: _Cursor) -> Fraction:
    num = _parse_nat(cur)
    if cur.accept_sym("/"):
        t = cur.peek()
        den = _parse_nat(cur)
        if den == 0:
            raise ParseError("zero denominator", t.line, t.column)
        return Fraction(num, den)
    return Fraction(num)


def _parse_factor(cur: _Cursor, ring: PolyRing) -> Polynomial:
    t = cur.peek()
    if t.kind == "NAT":
        return ring.constant(_parse_rational_literal(cur))
    if t.kind == "IDENT":
        if t.text not in ring.variables:
            raise ParseError(f"unknown identifier {t.text!r}", t.line, t.column)
        cur.next()
        if cur.accept_sym("^"):
            return ring.var(t.text) ** _parse_nat(cur)
        return ring.var(t.text)
    if t.kind == "SYM" and t.text == "(":
        cur.next()
        p = _parse_poly(cur, ring)
        cur.expect_sym(")", "')'")
        return p
    raise cur.error(
        f"expected a factor, found {t.text!r}" if t.text else
        "expected a factor, found end of input"
    )


def _parse_term(cur: _Cursor, ring: PolyRing) -> Polynomial:
    p = _parse_factor(cur, ring)
    while cur.accept_sym("*"):
        p = p * _parse_factor(cur, ring)
    return p


def _parse_poly(cur: _Cursor, ring: PolyRing) -> Polynomial:
    negative = False
    t = cur.peek()
    if t.kind == "SYM" and t.text in "+-":
        cur.next()
        negative = t.text == "-"
    p = _parse_term(cur, ring)
    if negative:
        p = -p
    while True:
        t = cur.peek()
        if t.kind == "SYM" and t.text in "+-":
            cur.next()
            q = _parse_term(cur, ring)
            p = p - q if t.text == "-" else p + q
        else:
            return p


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse a single polynomial; the whole input must be consumed."""
    cur = _Cursor(tokenize(text))
    if cur.peek().kind == "EOF":
        raise cur.error("empty polynomial")
    p = _parse_poly(cur, ring)
    t = cur.peek()
    if t.kind != "EOF":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.column)
    return p


def format_polynomial(p: Polynomial) -> str:
    """The normative text form (identical to str(p))."""
    return str(p)


def parse_signed_rational(cur: _Cursor) -> Fraction:
    sign = 1
    t = cur.peek()
    if t.kind == "SYM" and t.text in "+-":
        cur.next()
        sign = -1 if t.text == "-" else 1
    return sign * _parse_rational_literal(cur)


def parse_rational(text: str) -> Fraction:
    """Parse a possibly signed rational literal such as '-3/4'."""
    cur = _Cursor(tokenize(text))
    v = parse_signed_rational(cur)
    t = cur.peek()
    if t.kind != "EOF":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.column)
    return v


def parse_point(text: str) -> Tuple[Fraction, ...]:
    """Parse a comma-separated tuple of signed rationals."""
    cur = _Cursor(tokenize(text))
    coords = [parse_signed_rational(cur)]
    while cur.accept_sym(","):
        coords.append(parse_signed_rational(cur))
    t = cur.peek()
    if t.kind != "EOF":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.column)
    return tuple(coords)


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioTask:
    kind: str
    args: Tuple[str, ...]
    options: Dict[str, str]
    line: int


@dataclass
class Scenario:
    """Parsed scenario: one ring, optional coring, named bindings, tasks."""

    ring: Optional[PolyRing] = None
    coring: Optional[PolyRing] = None
    maps: Dict[str, PolyMap] = field(default_factory=dict)
    ideals: Dict[str, Tuple[Polynomial, ...]] = field(default_factory=dict)
    cideals: Dict[str, Tuple[Polynomial, ...]] = field(default_factory=dict)
    points: Dict[str, Tuple[Fraction, ...]] = field(default_factory=dict)
    tasks: List[ScenarioTask] = field(default_factory=list)

    def bound_names(self) -> set:
        names = set(self.maps) | set(self.ideals) | set(self.cideals)
        return names | set(self.points)


def _expect_ident(cur: _Cursor, what: str) -> Token:
    t = cur.peek()
    if t.kind != "IDENT":
        raise cur.error(f"expected {what}, found {t.text!r}")
    return cur.next()


def _parse_poly_list(cur: _Cursor, ring: PolyRing) -> Tuple[Polynomial, ...]:
    polys = [_parse_poly(cur, ring)]
    while cur.accept_sym(","):
        polys.append(_parse_poly(cur, ring))
    return tuple(polys)


def parse_scenario(text: str) -> Scenario:
    """Parse a scenario file; empty input yields an empty (valid) scenario."""
    cur = _Cursor(tokenize(text))
    sc = Scenario()

    def bind(name_tok: Token):
        if name_tok.text in sc.bound_names():
            raise ParseError(f"duplicate binding {name_tok.text!r}",
                             name_tok.line, name_tok.column)

    while cur.peek().kind != "EOF":
        head = _expect_ident(cur, "a statement keyword")
        kw = head.text
        if kw == "ring" or kw == "coring":
            names = []
            while cur.peek().kind == "IDENT":
                names.append(cur.next().text)
            cur.expect_sym(";", "';'")
            try:
                declared = PolyRing(tuple(names))
            except PreconditionError as exc:
                raise ParseError(str(exc), head.line, head.column) from None
            if kw == "ring":
                if sc.ring is not None:
                    raise ParseError("ring declared twice", head.line, head.column)
                if sc.bound_names() or sc.tasks:
                    raise ParseError("ring must be declared before any binding",
                                     head.line, head.column)
                sc.ring = declared
            else:
                if sc.coring is not None:
                    raise ParseError("coring declared twice", head.line, head.column)
                sc.coring = declared
            continue

        if kw in ("map", "ideal", "cideal", "point"):
            name_tok = _expect_ident(cur, f"a name for the {kw}")
            bind(name_tok)
            cur.expect_sym("=", "'='")
            if kw == "point":
                coords = [parse_signed_rational(cur)]
                while cur.accept_sym(","):
                    coords.append(parse_signed_rational(cur))
                cur.expect_sym(";", "';'")
                sc.points[name_tok.text] = tuple(coords)
                continue
            if kw == "cideal":
                if sc.coring is None:
                    raise ParseError("cideal used before a coring declaration",
                                     name_tok.line, name_tok.column)
                ring = sc.coring
            else:
                if sc.ring is None:
                    raise ParseError(f"{kw} used before the ring declaration",
                                     name_tok.line, name_tok.column)
                ring = sc.ring
            polys = _parse_poly_list(cur, ring)
            cur.expect_sym(";", "';'")
            if kw == "map":
                sc.maps[name_tok.text] = PolyMap(polys, sc.coring
                                                 if sc.coring is not None
                                                 and sc.coring.arity == len(polys)
                                                 else None)
            elif kw == "ideal":
                sc.ideals[name_tok.text] = polys
            else:
                sc.cideals[name_tok.text] = polys
            continue

        if kw == "task":
            kind_tok = _expect_ident(cur, "a task kind")
            if kind_tok.text not in TASK_KINDS:
                raise ParseError(f"unknown task kind {kind_tok.text!r}",
                                 kind_tok.line, kind_tok.column)
            args: List[str] = []
            options: Dict[str, str] = {}
            while cur.peek().kind in ("IDENT", "NAT"):
                word = cur.next()
                if cur.accept_sym("="):
                    value_parts = []
                    while True:
                        vt = cur.peek()
                        if vt.kind in ("IDENT", "NAT"):
                            value_parts.append(cur.next().text)
                            if cur.accept_sym(","):
                                value_parts.append(",")
                                continue
                        break
                    if not value_parts:
                        raise cur.error(f"missing value for option {word.text!r}")
                    value = "".join(value_parts)
                    options[word.text] = value
                    if word.text in _NAME_LIST_OPTIONS:
                        for ref in value.split(","):
                            if ref not in sc.points:
                                raise ParseError(f"unbound name {ref!r}",
                                                 word.line, word.column)
                else:
                    if word.kind != "IDENT" or word.text not in sc.bound_names():
                        raise ParseError(f"unbound name {word.text!r}",
                                         word.line, word.column)
                    args.append(word.text)
            cur.expect_sym(";", "';'")
            sc.tasks.append(ScenarioTask(kind_tok.text, tuple(args), options,
                                         head.line))
            continue

        raise ParseError(f"unknown statement {kw!r}", head.line, head.column)

    return sc
