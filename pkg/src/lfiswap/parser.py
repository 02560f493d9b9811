"""Recursive-descent parser for the ASCII formula grammar.

Precedence, loosest first: ``<->`` (shorthand for the two implications,
not chainable), ``->`` (right associative), ``|``, ``&``, then the
prefix operators ``~`` and ``*``.  ``forall x.`` and ``exists x.`` take
everything to their right.  A bare identifier in formula position is a
propositional (0-ary) atom; in term position it is a constant when the
signature declares it and a variable otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (And, App, Atom, Cons, Const, Dom, Eq, Exists, Forall, Imp,
                     Neg, Or, Signature, Var, iff)

_TOKEN = re.compile(r"\s*(?:(?P<arrow><->|->)|(?P<dom>@\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
                    r"|(?P<punct>[~*&|().,=]))")
_KEYWORDS = {"forall", "exists"}


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, sig, constants):
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig
        self.constants = set(constants) | (set(sig.constants) if sig else set())

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, text=None, kind=None):
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text else kind
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {want}, found {found}", t.pos)
        self.i += 1
        return t

    def error(self, what):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"expected {what}, found {found}", t.pos)

    # formula levels

    def formula(self):
        left = self.implication()
        if self.tok.text == "<->":
            self.take("<->")
            return iff(left, self.implication())
        return left

    def implication(self):
        left = self.disj()
        if self.tok.text == "->":
            self.take("->")
            return Imp(left, self.implication())
        return left

    def disj(self):
        left = self.conj()
        while self.tok.text == "|":
            self.take("|")
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.tok.text == "&":
            self.take("&")
            left = And(left, self.unary())
        return left

    def unary(self):
        t = self.tok
        if t.text == "~":
            self.take()
            return Neg(self.unary())
        if t.text == "*":
            self.take()
            return Cons(self.unary())
        if t.kind == "ident" and t.text in _KEYWORDS:
            self.take()
            v = self.take(kind="ident")
            if v.text in _KEYWORDS or not v.text[0].islower():
                raise ParseError(f"bad bound variable {v.text!r}", v.pos)
            if v.text in self.constants:
                raise ParseError(f"cannot quantify over constant {v.text!r}", v.pos)
            self.take(".")
            body = self.formula()
            return (Forall if t.text == "forall" else Exists)(v.text, body)
        return self.primary()

    def primary(self):
        t = self.tok
        if t.text == "(":
            self.take("(")
            inner = self.formula()
            self.take(")")
            return inner
        if t.kind == "dom":
            return self.equation(self.term())
        if t.kind != "ident" or t.text in _KEYWORDS:
            self.error("a formula")
        # a name (with optional arguments) is an atom unless '=' follows
        start = self.i
        name = self.take().text
        args = None
        if self.tok.text == "(":
            args = self.arglist()
        if self.tok.text == "=":
            self.i = start
            return self.equation(self.term())
        return self.make_atom(name, tuple(args or ()), t.pos)

    def equation(self, left):
        self.take("=")
        right = self.term()
        if self.sig is not None and not self.sig.has_equality:
            raise ParseError("equality is not part of the signature", self.tok.pos)
        return Eq(left, right)

    def make_atom(self, name, args, pos):
        if self.sig is not None:
            if name not in self.sig.predicates:
                raise ParseError(f"undeclared predicate {name!r}", pos)
            if self.sig.predicates[name] != len(args):
                raise ParseError(f"predicate {name!r} takes {self.sig.predicates[name]} "
                                 f"argument(s), got {len(args)}", pos)
        return Atom(name, args)

    def arglist(self):
        self.take("(")
        args = [self.term()]
        while self.tok.text == ",":
            self.take(",")
            args.append(self.term())
        self.take(")")
        return args

    def term(self):
        t = self.tok
        if t.kind == "dom":
            self.take()
            return Dom(int(t.text[1:]))
        if t.kind != "ident" or t.text in _KEYWORDS:
            self.error("a term")
        if not t.text[0].islower():
            raise ParseError(f"term names must start lowercase, got {t.text!r}", t.pos)
        self.take()
        if self.tok.text == "(":
            args = tuple(self.arglist())
            if self.sig is not None:
                if t.text not in self.sig.functions:
                    raise ParseError(f"undeclared function {t.text!r}", t.pos)
                if self.sig.functions[t.text] != len(args):
                    raise ParseError(f"function {t.text!r} takes {self.sig.functions[t.text]} "
                                     f"argument(s), got {len(args)}", t.pos)
            return App(t.text, args)
        if t.text in self.constants:
            return Const(t.text)
        if self.sig is not None and (t.text in self.sig.functions or t.text in self.sig.predicates):
            raise ParseError(f"{t.text!r} is not a term", t.pos)
        return Var(t.text)


def parse_formula(text: str, sig: Signature | None = None, constants=()):
    """Parse ``text`` into a formula.

    With ``sig`` given, predicates, functions and arities are checked against
    it.  Without one, any predicate or function name is accepted and only the
    names in ``constants`` are read as individual constants.
    """
    p = _Parser(text, sig, constants)
    phi = p.formula()
    if p.tok.kind != "eof":
        p.error("end of input")
    return phi


def parse_term(text: str, sig: Signature | None = None, constants=()):
    p = _Parser(text, sig, constants)
    t = p.term()
    if p.tok.kind != "eof":
        p.error("end of input")
    return t
