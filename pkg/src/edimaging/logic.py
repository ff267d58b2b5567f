"""Propositional possible worlds over a fixed, ordered vocabulary.

A world is a plain ``int`` whose bit pattern is its truth vector: the first
atom of the vocabulary is the most significant bit. With atoms ``(q, r)``
the world ``0b10`` makes ``q`` true and ``r`` false and renders as ``"10"``.
World sets are integer bitmasks (bit ``w`` set means world ``w`` is in the
set). Display order is always the descending truth-vector order, so the
all-true world prints first.

Formulas are small frozen AST nodes evaluated by structural recursion on
bitmasks; everything is exhaustive over the ``2**n`` worlds, which caps the
vocabulary at 16 atoms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator, Union

from .errors import FormulaSyntaxError, UnknownAtomError

_ATOM_NAME = re.compile(r"[a-z][a-z0-9_]*\Z")
_RESERVED = frozenset({"true", "false"})

MAX_ATOMS = 16


@dataclass(frozen=True)
class Vocabulary:
    """An ordered tuple of atom names fixing the world universe."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not 1 <= len(atoms) <= MAX_ATOMS:
            raise ValueError(f"vocabulary must have between 1 and {MAX_ATOMS} atoms")
        if len(set(atoms)) != len(atoms):
            raise ValueError("atom names must be unique")
        for name in atoms:
            if not _ATOM_NAME.match(name) or name in _RESERVED:
                raise ValueError(f"invalid atom name {name!r}")

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def world_count(self) -> int:
        return 1 << len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << self.world_count) - 1

    def worlds(self) -> Iterator[int]:
        """Worlds in display order (descending truth-vector value)."""
        return iter(range(self.world_count - 1, -1, -1))

    def world_name(self, w: int) -> str:
        return format(w, f"0{self.n}b")

    def world_from_name(self, name: str) -> int:
        if len(name) != self.n or any(c not in "01" for c in name):
            raise ValueError(f"{name!r} is not a truth vector over {self.n} atoms")
        return int(name, 2)

    def atom_truth(self, w: int, atom_index: int) -> bool:
        return bool((w >> (self.n - 1 - atom_index)) & 1)


def default_vocabulary(n: int) -> Vocabulary:
    return Vocabulary(tuple("abcdefghijklmnop"[:n]))


# --- formulas ---------------------------------------------------------------


class Formula:
    """Base class for formula AST nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


TOP = Top()
BOTTOM = Bottom()


@lru_cache(maxsize=None)
def _atom_masks(vocab: Vocabulary) -> dict[str, int]:
    masks: dict[str, int] = {}
    for i, name in enumerate(vocab.atoms):
        m = 0
        for w in range(vocab.world_count):
            if vocab.atom_truth(w, i):
                m |= 1 << w
        masks[name] = m
    return masks


def models(f: Formula, vocab: Vocabulary) -> int:
    """Bitmask of the worlds satisfying ``f``."""
    full = vocab.full_mask
    masks = _atom_masks(vocab)

    def go(node: Formula) -> int:
        match node:
            case Atom(name):
                try:
                    return masks[name]
                except KeyError:
                    raise UnknownAtomError(name) from None
            case Not(p):
                return full & ~go(p)
            case And(a, b):
                return go(a) & go(b)
            case Or(a, b):
                return go(a) | go(b)
            case Implies(a, b):
                return (full & ~go(a)) | go(b)
            case Iff(a, b):
                ma, mb = go(a), go(b)
                return (ma & mb) | (full & ~ma & ~mb)
            case Top():
                return full
            case Bottom():
                return 0
        raise TypeError(f"not a formula node: {node!r}")

    return go(f)


Evidence = Union[Formula, int]


def evidence_mask(evidence: Evidence, vocab: Vocabulary) -> int:
    """Accept evidence as either a formula or a ready-made world mask."""
    if isinstance(evidence, Formula):
        return models(evidence, vocab)
    return evidence & vocab.full_mask


def entails(a: Formula, b: Formula, vocab: Vocabulary) -> bool:
    return models(a, vocab) & ~models(b, vocab) == 0


def equivalent(a: Formula, b: Formula, vocab: Vocabulary) -> bool:
    return models(a, vocab) == models(b, vocab)


def world_formula(w: int, vocab: Vocabulary) -> Formula:
    """The complete conjunction of literals true exactly at ``w``."""
    literals = [
        Atom(name) if vocab.atom_truth(w, i) else Not(Atom(name))
        for i, name in enumerate(vocab.atoms)
    ]
    return reduce(And, literals)


def formula_of_world_set(mask: int, vocab: Vocabulary) -> Formula:
    """A formula whose models are exactly ``mask`` (empty set maps to falsum)."""
    mask &= vocab.full_mask
    if mask == 0:
        return BOTTOM
    if mask == vocab.full_mask:
        return TOP
    parts = [world_formula(w, vocab) for w in vocab.worlds() if mask >> w & 1]
    return reduce(Or, parts)


def worlds_of(mask: int, vocab: Vocabulary) -> list[int]:
    """Worlds in ``mask`` in display order."""
    return [w for w in vocab.worlds() if mask >> w & 1]


def set_size(mask: int) -> int:
    return mask.bit_count()


# --- surface syntax ----------------------------------------------------------
#
# atoms [a-z][a-z0-9_]*, constants `true`/`false`, `!` not, `&` and, `|` or,
# `->` implies (right-associative), `<->` iff; precedence ! > & > | > -> > <->.

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[a-z][a-z0-9_]*)|(?P<op><->|->|!|&|\||\(|\)))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {text[at]!r}", at)
        if m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vocab: Vocabulary):
        self.tokens = _tokenize(text)
        self.vocab = vocab
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise FormulaSyntaxError(f"expected {op!r}", pos)
        self.advance()

    def parse(self) -> Formula:
        f = self.iff()
        kind, value, pos = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected token {value!r}", pos)
        return f

    def iff(self) -> Formula:
        left = self.implication()
        kind, value, _ = self.peek()
        if kind == "op" and value == "<->":
            self.advance()
            return Iff(left, self.iff())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        kind, value, _ = self.peek()
        if kind == "op" and value == "->":
            self.advance()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "|":
                self.advance()
                f = Or(f, self.conjunction())
            else:
                return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "&":
                self.advance()
                f = And(f, self.unary())
            else:
                return f

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "op" and value == "!":
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind, value, pos = self.advance()
        if kind == "op" and value == "(":
            f = self.iff()
            self.expect_op(")")
            return f
        if kind == "name":
            if value == "true":
                return TOP
            if value == "false":
                return BOTTOM
            if value not in self.vocab.atoms:
                raise UnknownAtomError(value, pos)
            return Atom(value)
        if kind == "end":
            raise FormulaSyntaxError("unexpected end of input", pos)
        raise FormulaSyntaxError(f"unexpected token {value!r}", pos)


def parse_formula(text: str, vocab: Vocabulary) -> Formula:
    """Parse ``text`` over ``vocab``; raises on bad syntax or unknown atoms."""
    return _Parser(text, vocab).parse()


_PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}


def render(f: Formula) -> str:
    """ASCII text that re-parses to a formula with the same models."""

    def go(node: Formula, parent_prec: int) -> str:
        match node:
            case Atom(name):
                return name
            case Top():
                return "true"
            case Bottom():
                return "false"
            case Not(p):
                return "!" + go(p, _PRECEDENCE[Not])
            case And(a, b):
                text = f"{go(a, 4)} & {go(b, 4)}"
                prec = 4
            case Or(a, b):
                text = f"{go(a, 3)} | {go(b, 3)}"
                prec = 3
            case Implies(a, b):
                # right-associative: parenthesize a nested implication on the left
                text = f"{go(a, 3)} -> {go(b, 2)}"
                prec = 2
            case Iff(a, b):
                text = f"{go(a, 2)} <-> {go(b, 1)}"
                prec = 1
            case _:
                raise TypeError(f"not a formula node: {node!r}")
        return f"({text})" if prec < parent_prec else text

    return go(f, 0)
