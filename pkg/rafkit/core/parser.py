"""
Reader and writer for the line-oriented instance format.

    % comment
    #mode classical.            (or #mode asp.)
    arg(a).  att(a,b).
    rc(a): ~x | (y -> z).       classical
    rc(a): h1 | h2 :- b, not c. asp; ":- b." is a constraint
    constraint: a & ~b.         CAF documents only
    shrink(a).                  twofold documents only
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from ..errors import ParseError, ValidationError
from .formula import And, Atom, BOTTOM, Formula, Implies, Not, Or, TOP, render_formula
from .model import AF, CAF, RAF, RcMode, Rule, validate

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>%[^\n]*)
  | (?P<directive>\#[A-Za-z]+)
  | (?P<arrow>->)
  | (?P<neck>:-)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[().,:|&~])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, source: str = "<input>") -> List[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source)
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind not in ("ws", "comment"):
            value = match.group()
            tokens.append(Token(value if kind == "punct" else kind, value, line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class Document:
    """Raw statements of one instance file, before any framework is built."""

    mode: RcMode = RcMode.CLASSICAL
    mode_token: Optional[Token] = None
    arguments: List[str] = field(default_factory=list)
    attacks: List[Tuple[str, str]] = field(default_factory=list)
    rc: Dict[str, list] = field(default_factory=dict)
    constraint: Optional[Formula] = None
    shrinking: List[str] = field(default_factory=list)
    references: List[Tuple[str, Token]] = field(default_factory=list)
    first_rc: Optional[Token] = None


class _Parser:
    def __init__(self, text: str, source: str):
        self.source = source
        self.tokens = tokenize(text, source)
        self.pos = 0

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.line, token.column, self.source)

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        token = self.current
        if token.kind == kind and (text is None or token.text == text):
            return self.advance()
        return None

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        token = self.accept(kind, text)
        if token is None:
            wanted = text or kind
            found = self.current.text or self.current.kind
            raise self.error(f"expected '{wanted}', found '{found}'")
        return token

    def name(self) -> Token:
        token = self.current
        if token.kind != "ident":
            raise self.error(f"expected a name, found '{token.text or token.kind}'")
        return self.advance()

    # statements

    def document(self) -> Document:
        doc = Document()
        while self.current.kind != "eof":
            self.statement(doc)
        return doc

    def statement(self, doc: Document) -> None:
        token = self.current
        if token.kind == "directive":
            self.directive(doc)
        elif token.kind == "ident" and token.text == "arg":
            self.advance()
            self.expect("(")
            name = self.name()
            self.expect(")")
            self.expect(".")
            if name.text in doc.arguments:
                raise self.error(f"duplicate argument '{name.text}'", name)
            doc.arguments.append(name.text)
        elif token.kind == "ident" and token.text == "att":
            self.advance()
            self.expect("(")
            source = self.name()
            self.expect(",")
            target = self.name()
            self.expect(")")
            self.expect(".")
            doc.attacks.append((source.text, target.text))
            doc.references += [(source.text, source), (target.text, target)]
        elif token.kind == "ident" and token.text == "rc":
            self.advance()
            self.expect("(")
            owner = self.name()
            self.expect(")")
            self.expect(":")
            doc.references.append((owner.text, owner))
            if doc.first_rc is None:
                doc.first_rc = owner
            if doc.mode is RcMode.ASP:
                item = self.rule()
            else:
                if self.current.kind == "neck":
                    raise self.error("rule in a classical document (mixed classical/asp modes)")
                item = self.formula()
                if self.current.kind == "neck":
                    raise self.error("rule in a classical document (mixed classical/asp modes)")
            self.expect(".")
            doc.rc.setdefault(owner.text, []).append(item)
        elif token.kind == "ident" and token.text == "constraint":
            self.advance()
            self.expect(":")
            if doc.constraint is not None:
                raise self.error("more than one constraint line", token)
            doc.constraint = self.formula()
            self.expect(".")
        elif token.kind == "ident" and token.text == "shrink":
            self.advance()
            self.expect("(")
            name = self.name()
            self.expect(")")
            self.expect(".")
            doc.shrinking.append(name.text)
            doc.references.append((name.text, name))
        else:
            raise self.error(f"unknown statement '{token.text or token.kind}'")

    def directive(self, doc: Document) -> None:
        token = self.advance()
        if token.text != "#mode":
            raise self.error(f"unknown directive '{token.text}'", token)
        value = self.name()
        self.expect(".")
        try:
            mode = RcMode(value.text)
        except ValueError:
            raise self.error(f"unknown mode '{value.text}'", value)
        if doc.mode_token is not None and mode is not doc.mode:
            raise self.error("mixed classical/asp modes", value)
        if doc.first_rc is not None and mode is not doc.mode:
            raise self.error("#mode must precede rc lines (mixed classical/asp modes)", value)
        doc.mode = mode
        doc.mode_token = value

    # rules

    def rule(self) -> Rule:
        head: List[str] = []
        if self.current.kind == "ident":
            head.append(self.name().text)
            while self.accept("|"):
                head.append(self.name().text)
        pos: List[str] = []
        neg: List[str] = []
        if self.accept("neck"):
            if self.current.kind != ".":
                self.body_literal(pos, neg)
                while self.accept(","):
                    self.body_literal(pos, neg)
        elif not head:
            raise self.error("empty rule")
        return Rule.make(head, pos, neg)

    def body_literal(self, pos: List[str], neg: List[str]) -> None:
        token = self.name()
        if token.text == "not" and self.current.kind == "ident":
            neg.append(self.name().text)
        else:
            pos.append(token.text)

    # formulas: '->' (right assoc) < '|' < '&' < '~'

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.accept("arrow"):
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        operands = [self.conjunction()]
        while self.accept("|"):
            operands.append(self.conjunction())
        return operands[0] if len(operands) == 1 else Or(tuple(operands))

    def conjunction(self) -> Formula:
        operands = [self.unary()]
        while self.accept("&"):
            operands.append(self.unary())
        return operands[0] if len(operands) == 1 else And(tuple(operands))

    def unary(self) -> Formula:
        if self.accept("~"):
            return Not(self.unary())
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        token = self.name()
        if token.text == "true":
            return TOP
        if token.text == "false":
            return BOTTOM
        return Atom(token.text)


def parse_document(text: str, source: str = "<input>") -> Document:
    """Parse statements and check that every referenced argument is declared."""
    doc = _Parser(text, source).document()
    declared: Set[str] = set(doc.arguments)
    for name, token in doc.references:
        if name not in declared:
            raise ParseError(f"undeclared argument '{name}'", token.line, token.column, source)
    return doc


def parse_formula(text: str, source: str = "<formula>") -> Formula:
    parser = _Parser(text, source)
    phi = parser.formula()
    parser.expect("eof")
    return phi


def _af_of(doc: Document) -> AF:
    return AF.make(doc.arguments, doc.attacks)


def _reject_extras(doc: Document, kind: str, allow_rc: bool = False, allow_shrink: bool = False) -> None:
    if doc.rc and not allow_rc:
        raise ValidationError(f"rc lines are not allowed in a {kind} document", ("rc",))
    if doc.constraint is not None and kind != "CAF":
        raise ValidationError(f"constraint line is not allowed in a {kind} document", ("constraint",))
    if doc.shrinking and not allow_shrink:
        raise ValidationError(f"shrink lines are not allowed in a {kind} document", ("shrink",))


def parse_raf(text: str, source: str = "<input>") -> RAF:
    """Parse and validate a RAF document."""
    doc = parse_document(text, source)
    _reject_extras(doc, "RAF", allow_rc=True)
    raf = RAF.make(_af_of(doc), doc.rc, doc.mode)
    validate(raf)
    logger.debug("Parsed RAF with %d arguments, %d attacks", len(raf.arguments), len(raf.attacks))
    return raf


def parse_af(text: str, source: str = "<input>") -> AF:
    doc = parse_document(text, source)
    _reject_extras(doc, "AF")
    af = _af_of(doc)
    validate(af)
    return af


def parse_caf(text: str, source: str = "<input>") -> CAF:
    doc = parse_document(text, source)
    _reject_extras(doc, "CAF")
    caf = CAF(_af_of(doc), doc.constraint if doc.constraint is not None else TOP)
    validate(caf)
    return caf


def parse_twofold(text: str, source: str = "<input>") -> Tuple[AF, Tuple[str, ...]]:
    """An AF document with ``shrink(NAME).`` lines naming the shrinking."""
    doc = parse_document(text, source)
    _reject_extras(doc, "twofold", allow_shrink=True)
    af = _af_of(doc)
    validate(af)
    shrinking = tuple(a for a in af.arguments if a in set(doc.shrinking))
    return af, shrinking


def _render_framework(af: AF, lines: List[str]) -> None:
    lines.extend(f"arg({a})." for a in af.arguments)
    lines.extend(f"att({a},{b})." for a, b in af.sorted_attacks())


def render_af(af: AF, shrinking: Tuple[str, ...] = ()) -> str:
    lines: List[str] = []
    _render_framework(af, lines)
    lines.extend(f"shrink({a})." for a in shrinking)
    return "\n".join(lines) + "\n"


def render_raf(raf: RAF) -> str:
    """Canonical text: mode, arguments, attacks, then rejection conditions in argument order."""
    lines = [f"#mode {raf.mode.value}."]
    _render_framework(raf.af, lines)
    for a in raf.arguments:
        for item in raf.condition(a).body:
            text = str(item) if isinstance(item, Rule) else render_formula(item) + "."
            lines.append(f"rc({a}): {text}")
    return "\n".join(lines) + "\n"


def render_caf(caf: CAF) -> str:
    lines: List[str] = []
    _render_framework(caf.af, lines)
    lines.append(f"constraint: {render_formula(caf.constraint)}.")
    return "\n".join(lines) + "\n"
