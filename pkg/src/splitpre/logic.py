"""Conjunctive/disjunctive logic: derivations and their split-preorder diagrams.

A formula maps to the ordinal counting its variable occurrences (left to
right, 0-based; units count nothing).  A derivation maps to a split preorder
between the ordinals of its endpoints: identities map to identities,
projections and injections link each kept variable occurrence of the source
to its copy in the target, the unit arrows have no cross edges at all, a
composition maps to the composite of the images, and a pairing links a
source occurrence to a target occurrence exactly when the component arrow
owning that occurrence does.  Two derivations with the same endpoints are
equivalent iff their diagrams are equal, which decides equality of proofs
in the freely generated (co)cartesian structure.

Cross edges keep a single source-to-target orientation in every fragment,
so conjunctive and disjunctive constructors can coexist; the uniformly
reversed convention is available through `diagram_of(..., reverse_edges=True)`
and changes no equivalence verdicts.

Concrete syntax (whitespace free-form, `/\\` binds tighter than `\\/`,
both left-associative):

    form ::= atom | form "/\\" form | form "\\/" form
    atom ::= ident | "T" | "F" | "(" form ")"
    der  ::= "id{" form "}"
           | "pi1{" form "," form "}" | "pi2{" form "," form "}"
           | "bang{" form "}"
           | "inl{" form "," form "}" | "inr{" form "," form "}"
           | "abort{" form "}"
           | "comp(" der "," der ")"      -- comp(g, f) is g after f
           | "pair(" der "," der ")" | "copair(" der "," der ")"
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import cached_property

from .arrows import NodeTag, SplitPreorder, compose, identity
from .errors import (
    DerivationTypeError,
    EndpointMismatchError,
    FragmentError,
    ParseError,
)


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

class Formula:
    """Base class for formula trees."""

    __slots__ = ()

    def __str__(self) -> str:
        return _format_formula(self, 0)


@dataclass(frozen=True)
class Var(Formula):
    name: str

@dataclass(frozen=True)
class Conj(Formula):
    left: Formula
    right: Formula

@dataclass(frozen=True)
class Disj(Formula):
    left: Formula
    right: Formula

@dataclass(frozen=True)
class Top(Formula):
    pass

@dataclass(frozen=True)
class Bot(Formula):
    pass


TOP = Top()
BOT = Bot()

# Precedence levels: disjunction 0, conjunction 1, atoms 2.
def _format_formula(f: Formula, level: int) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Conj):
        text, own = f"{_format_formula(f.left, 1)} /\\ {_format_formula(f.right, 2)}", 1
    else:
        assert isinstance(f, Disj)
        text, own = f"{_format_formula(f.left, 0)} \\/ {_format_formula(f.right, 1)}", 0
    return f"({text})" if own < level else text


def var_count(a: Formula) -> int:
    """Number of variable occurrences; the ordinal a formula maps to."""
    if isinstance(a, Var):
        return 1
    if isinstance(a, (Top, Bot)):
        return 0
    if isinstance(a, (Conj, Disj)):
        return var_count(a.left) + var_count(a.right)
    raise TypeError(f"not a formula: {a!r}")


# ---------------------------------------------------------------------------
# Fragments
# ---------------------------------------------------------------------------

class Fragment(enum.Enum):
    """Which connectives (and hence which derivation constructors) are legal."""

    CONJUNCTIVE = "conj"
    DISJUNCTIVE = "disj"
    CONJ_DISJ = "conjdisj"
    CONJ_DISJ_UNITS = "conjdisj-units"

    @property
    def has_conj(self) -> bool:
        return self is not Fragment.DISJUNCTIVE

    @property
    def has_disj(self) -> bool:
        return self is not Fragment.CONJUNCTIVE

    @property
    def has_top(self) -> bool:
        return self in (Fragment.CONJUNCTIVE, Fragment.CONJ_DISJ_UNITS)

    @property
    def has_bot(self) -> bool:
        return self in (Fragment.DISJUNCTIVE, Fragment.CONJ_DISJ_UNITS)


def check_formula_fragment(a: Formula, fragment: Fragment) -> None:
    if isinstance(a, Var):
        return
    if isinstance(a, Top):
        if not fragment.has_top:
            raise FragmentError(f"constant 'T' is not part of fragment {fragment.value}")
        return
    if isinstance(a, Bot):
        if not fragment.has_bot:
            raise FragmentError(f"constant 'F' is not part of fragment {fragment.value}")
        return
    if isinstance(a, Conj) and not fragment.has_conj:
        raise FragmentError(f"connective '/\\' is not part of fragment {fragment.value}")
    if isinstance(a, Disj) and not fragment.has_disj:
        raise FragmentError(f"connective '\\/' is not part of fragment {fragment.value}")
    check_formula_fragment(a.left, fragment)
    check_formula_fragment(a.right, fragment)


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------

class Derivation:
    """Base class for derivation trees; every node knows its endpoints."""

    __slots__ = ()

    @property
    def source(self) -> Formula:
        raise NotImplementedError

    @property
    def target(self) -> Formula:
        raise NotImplementedError


@dataclass(frozen=True)
class Id(Derivation):
    formula: Formula

    @property
    def source(self) -> Formula:
        return self.formula

    @property
    def target(self) -> Formula:
        return self.formula

    def __str__(self) -> str:
        return f"id{{{self.formula}}}"


@dataclass(frozen=True)
class Proj1(Derivation):
    """First projection: A /\\ B -> A."""

    left: Formula
    right: Formula

    @property
    def source(self) -> Formula:
        return Conj(self.left, self.right)

    @property
    def target(self) -> Formula:
        return self.left

    def __str__(self) -> str:
        return f"pi1{{{self.left}, {self.right}}}"


@dataclass(frozen=True)
class Proj2(Derivation):
    """Second projection: A /\\ B -> B."""

    left: Formula
    right: Formula

    @property
    def source(self) -> Formula:
        return Conj(self.left, self.right)

    @property
    def target(self) -> Formula:
        return self.right

    def __str__(self) -> str:
        return f"pi2{{{self.left}, {self.right}}}"


@dataclass(frozen=True)
class Bang(Derivation):
    """The unique arrow into the empty conjunction: A -> T."""

    formula: Formula

    @property
    def source(self) -> Formula:
        return self.formula

    @property
    def target(self) -> Formula:
        return TOP

    def __str__(self) -> str:
        return f"bang{{{self.formula}}}"


@dataclass(frozen=True)
class Inj1(Derivation):
    """Left injection: A -> A \\/ B."""

    left: Formula
    right: Formula

    @property
    def source(self) -> Formula:
        return self.left

    @property
    def target(self) -> Formula:
        return Disj(self.left, self.right)

    def __str__(self) -> str:
        return f"inl{{{self.left}, {self.right}}}"


@dataclass(frozen=True)
class Inj2(Derivation):
    """Right injection: B -> A \\/ B."""

    left: Formula
    right: Formula

    @property
    def source(self) -> Formula:
        return self.right

    @property
    def target(self) -> Formula:
        return Disj(self.left, self.right)

    def __str__(self) -> str:
        return f"inr{{{self.left}, {self.right}}}"


@dataclass(frozen=True)
class Abort(Derivation):
    """The unique arrow out of the empty disjunction: F -> A."""

    formula: Formula

    @property
    def source(self) -> Formula:
        return BOT

    @property
    def target(self) -> Formula:
        return self.formula

    def __str__(self) -> str:
        return f"abort{{{self.formula}}}"


@dataclass(frozen=True)
class Comp(Derivation):
    """Composition comp(g, f) = g after f; f's target must equal g's source."""

    after: Derivation
    before: Derivation

    def __post_init__(self):
        if self.before.target != self.after.source:
            raise DerivationTypeError(
                f"comp: inner target {self.before.target} does not match outer "
                f"source {self.after.source} in comp({self.after}, {self.before})")

    @cached_property
    def source(self) -> Formula:
        return self.before.source

    @cached_property
    def target(self) -> Formula:
        return self.after.target

    def __str__(self) -> str:
        return f"comp({self.after}, {self.before})"


@dataclass(frozen=True)
class Pair(Derivation):
    """Pairing of f: C -> A and g: C -> B into C -> A /\\ B."""

    left: Derivation
    right: Derivation

    def __post_init__(self):
        if self.left.source != self.right.source:
            raise DerivationTypeError(
                f"pair: components have sources {self.left.source} and "
                f"{self.right.source} in pair({self.left}, {self.right})")

    @cached_property
    def source(self) -> Formula:
        return self.left.source

    @cached_property
    def target(self) -> Formula:
        return Conj(self.left.target, self.right.target)

    def __str__(self) -> str:
        return f"pair({self.left}, {self.right})"


@dataclass(frozen=True)
class Copair(Derivation):
    """Copairing of f: A -> C and g: B -> C into A \\/ B -> C."""

    left: Derivation
    right: Derivation

    def __post_init__(self):
        if self.left.target != self.right.target:
            raise DerivationTypeError(
                f"copair: components have targets {self.left.target} and "
                f"{self.right.target} in copair({self.left}, {self.right})")

    @cached_property
    def source(self) -> Formula:
        return Disj(self.left.source, self.right.source)

    @cached_property
    def target(self) -> Formula:
        return self.left.target

    def __str__(self) -> str:
        return f"copair({self.left}, {self.right})"


def check_derivation_fragment(d: Derivation, fragment: Fragment) -> None:
    """Raise FragmentError on any constructor or connective outside the fragment."""
    if isinstance(d, Id):
        check_formula_fragment(d.formula, fragment)
    elif isinstance(d, (Proj1, Proj2)):
        if not fragment.has_conj:
            raise FragmentError(
                f"constructor '{'pi1' if isinstance(d, Proj1) else 'pi2'}' "
                f"is not part of fragment {fragment.value}")
        check_formula_fragment(d.left, fragment)
        check_formula_fragment(d.right, fragment)
    elif isinstance(d, Bang):
        if not fragment.has_top:
            raise FragmentError(f"constructor 'bang' is not part of fragment {fragment.value}")
        check_formula_fragment(d.formula, fragment)
    elif isinstance(d, (Inj1, Inj2)):
        if not fragment.has_disj:
            raise FragmentError(
                f"constructor '{'inl' if isinstance(d, Inj1) else 'inr'}' "
                f"is not part of fragment {fragment.value}")
        check_formula_fragment(d.left, fragment)
        check_formula_fragment(d.right, fragment)
    elif isinstance(d, Abort):
        if not fragment.has_bot:
            raise FragmentError(f"constructor 'abort' is not part of fragment {fragment.value}")
        check_formula_fragment(d.formula, fragment)
    elif isinstance(d, Comp):
        check_derivation_fragment(d.after, fragment)
        check_derivation_fragment(d.before, fragment)
    elif isinstance(d, Pair):
        if not fragment.has_conj:
            raise FragmentError(f"constructor 'pair' is not part of fragment {fragment.value}")
        check_derivation_fragment(d.left, fragment)
        check_derivation_fragment(d.right, fragment)
    elif isinstance(d, Copair):
        if not fragment.has_disj:
            raise FragmentError(f"constructor 'copair' is not part of fragment {fragment.value}")
        check_derivation_fragment(d.left, fragment)
        check_derivation_fragment(d.right, fragment)
    else:
        raise TypeError(f"not a derivation: {d!r}")


# ---------------------------------------------------------------------------
# Translation to split preorders
# ---------------------------------------------------------------------------

def _cross_pairs(pairs: list[tuple[int, int]], reverse: bool):
    if reverse:
        return [((NodeTag.TARGET, j), (NodeTag.SOURCE, i)) for i, j in pairs]
    return [((NodeTag.SOURCE, i), (NodeTag.TARGET, j)) for i, j in pairs]


def _has_cross(diagram: SplitPreorder, i: int, j: int, reverse: bool) -> bool:
    if reverse:
        return diagram.has((NodeTag.TARGET, j), (NodeTag.SOURCE, i))
    return diagram.has((NodeTag.SOURCE, i), (NodeTag.TARGET, j))


def diagram_of(d: Derivation, *, reverse_edges: bool = False) -> SplitPreorder:
    """The split preorder of a derivation.

    With `reverse_edges` every cross edge runs target-to-source instead; the
    two conventions are converses of each other arrow by arrow.
    """
    rev = reverse_edges
    if isinstance(d, Id):
        return identity(var_count(d.formula))
    if isinstance(d, Proj1):
        a, b = var_count(d.left), var_count(d.right)
        return SplitPreorder.close(a + b, a, _cross_pairs([(i, i) for i in range(a)], rev))
    if isinstance(d, Proj2):
        a, b = var_count(d.left), var_count(d.right)
        return SplitPreorder.close(a + b, b, _cross_pairs([(a + j, j) for j in range(b)], rev))
    if isinstance(d, Bang):
        return SplitPreorder.close(var_count(d.formula), 0, ())
    if isinstance(d, Inj1):
        a, b = var_count(d.left), var_count(d.right)
        return SplitPreorder.close(a, a + b, _cross_pairs([(i, i) for i in range(a)], rev))
    if isinstance(d, Inj2):
        a, b = var_count(d.left), var_count(d.right)
        return SplitPreorder.close(b, a + b, _cross_pairs([(j, a + j) for j in range(b)], rev))
    if isinstance(d, Abort):
        return SplitPreorder.close(0, var_count(d.formula), ())
    if isinstance(d, Comp):
        return compose(diagram_of(d.after, reverse_edges=rev),
                       diagram_of(d.before, reverse_edges=rev))
    if isinstance(d, Pair):
        df = diagram_of(d.left, reverse_edges=rev)
        dg = diagram_of(d.right, reverse_edges=rev)
        m = var_count(d.source)
        a = var_count(d.left.target)
        n = a + var_count(d.right.target)
        cross = [(u, v) for u in range(m) for v in range(n)
                 if (_has_cross(df, u, v, rev) if v < a else _has_cross(dg, u, v - a, rev))]
        return SplitPreorder.close(m, n, _cross_pairs(cross, rev))
    if isinstance(d, Copair):
        df = diagram_of(d.left, reverse_edges=rev)
        dg = diagram_of(d.right, reverse_edges=rev)
        a = var_count(d.left.source)
        m = a + var_count(d.right.source)
        n = var_count(d.target)
        cross = [(u, v) for u in range(m) for v in range(n)
                 if (_has_cross(df, u, v, rev) if u < a else _has_cross(dg, u - a, v, rev))]
        return SplitPreorder.close(m, n, _cross_pairs(cross, rev))
    raise TypeError(f"not a derivation: {d!r}")


def proof_equiv(f: Derivation, g: Derivation) -> bool:
    """Decide whether two derivations with the same endpoints are the same proof."""
    if f.source != g.source or f.target != g.target:
        raise EndpointMismatchError(
            f"cannot compare derivations {f.source} -> {f.target} and "
            f"{g.source} -> {g.target}: endpoints differ")
    return diagram_of(f) == diagram_of(g)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_DERIVATION_KEYWORDS = frozenset(
    ["id", "pi1", "pi2", "bang", "inl", "inr", "abort", "comp", "pair", "copair"])


class _Parser:
    def __init__(self, text: str, fragment: Fragment):
        self.text = text
        self.pos = 0
        self.fragment = fragment

    def error(self, message: str) -> ParseError:
        return ParseError(message, position=self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def take(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.take(token):
            raise self.error(f"expected {token!r}")

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an identifier")
        return self.text[start:self.pos]

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    # formulas

    def formula(self) -> Formula:
        left = self.conjunct()
        while self.peek("\\/"):
            if not self.fragment.has_disj:
                raise FragmentError(
                    f"connective '\\/' is not part of fragment {self.fragment.value}")
            self.take("\\/")
            left = Disj(left, self.conjunct())
        return left

    def conjunct(self) -> Formula:
        left = self.atom()
        while self.peek("/\\"):
            if not self.fragment.has_conj:
                raise FragmentError(
                    f"connective '/\\' is not part of fragment {self.fragment.value}")
            self.take("/\\")
            left = Conj(left, self.atom())
        return left

    def atom(self) -> Formula:
        if self.take("("):
            inner = self.formula()
            self.expect(")")
            return inner
        name = self.ident()
        if name == "T":
            if not self.fragment.has_top:
                raise FragmentError(f"constant 'T' is not part of fragment {self.fragment.value}")
            return TOP
        if name == "F":
            if not self.fragment.has_bot:
                raise FragmentError(f"constant 'F' is not part of fragment {self.fragment.value}")
            return BOT
        return Var(name)

    # derivations

    def braced_formulas(self, count: int) -> list[Formula]:
        self.expect("{")
        parts = [self.formula()]
        for _ in range(count - 1):
            self.expect(",")
            parts.append(self.formula())
        self.expect("}")
        return parts

    def sub_derivations(self) -> tuple["Derivation", "Derivation"]:
        self.expect("(")
        first = self.derivation()
        self.expect(",")
        second = self.derivation()
        self.expect(")")
        return first, second

    def require(self, keyword: str, allowed: bool) -> None:
        if not allowed:
            raise FragmentError(
                f"constructor '{keyword}' is not part of fragment {self.fragment.value}")

    def derivation(self) -> Derivation:
        self.skip_ws()
        keyword = self.ident()
        frag = self.fragment
        if keyword == "id":
            return Id(self.braced_formulas(1)[0])
        if keyword == "pi1":
            self.require(keyword, frag.has_conj)
            return Proj1(*self.braced_formulas(2))
        if keyword == "pi2":
            self.require(keyword, frag.has_conj)
            return Proj2(*self.braced_formulas(2))
        if keyword == "bang":
            self.require(keyword, frag.has_top)
            return Bang(self.braced_formulas(1)[0])
        if keyword == "inl":
            self.require(keyword, frag.has_disj)
            return Inj1(*self.braced_formulas(2))
        if keyword == "inr":
            self.require(keyword, frag.has_disj)
            return Inj2(*self.braced_formulas(2))
        if keyword == "abort":
            self.require(keyword, frag.has_bot)
            return Abort(self.braced_formulas(1)[0])
        if keyword == "comp":
            return Comp(*self.sub_derivations())
        if keyword == "pair":
            self.require(keyword, frag.has_conj)
            return Pair(*self.sub_derivations())
        if keyword == "copair":
            self.require(keyword, frag.has_disj)
            return Copair(*self.sub_derivations())
        raise self.error(f"unknown derivation constructor {keyword!r}")


def parse_formula(text: str, fragment: Fragment = Fragment.CONJ_DISJ_UNITS) -> Formula:
    parser = _Parser(text, fragment)
    result = parser.formula()
    if not parser.at_end():
        raise parser.error("unexpected trailing input")
    return result


def parse_derivation(text: str, fragment: Fragment = Fragment.CONJ_DISJ_UNITS) -> Derivation:
    parser = _Parser(text, fragment)
    result = parser.derivation()
    if not parser.at_end():
        raise parser.error("unexpected trailing input")
    return result


# ---------------------------------------------------------------------------
# Random generation
# ---------------------------------------------------------------------------

_VAR_POOL = ("p", "q", "r")


class _Generator:
    """Seeded top-down generator of well-typed derivations in a fragment.

    Roughly 40% axiom nodes, 30% compositions and 30% (co)pairings where a
    depth budget remains.  Endpoint constraints propagate one side at a
    time: pairings share a source, copairings share a target, and the odd
    doubly-constrained component is found by a bounded search with a
    canonical fallback.
    """

    def __init__(self, fragment: Fragment, rng: random.Random):
        self.fragment = fragment
        self.rng = rng

    def formula(self, depth: int = 2) -> Formula:
        frag, rng = self.fragment, self.rng
        if depth > 0 and rng.random() < 0.5:
            connectives = [Conj] if frag.has_conj else []
            if frag.has_disj:
                connectives.append(Disj)
            ctor = rng.choice(connectives)
            return ctor(self.formula(depth - 1), self.formula(depth - 1))
        leaves: list[Formula] = [Var(rng.choice(_VAR_POOL))]
        if rng.random() < 0.2:
            if frag.has_top:
                leaves.append(TOP)
            if frag.has_bot:
                leaves.append(BOT)
        return rng.choice(leaves)

    def _axioms_from(self, source: Formula) -> list[Derivation]:
        frag = self.fragment
        out: list[Derivation] = [Id(source)]
        if frag.has_top:
            out.append(Bang(source))
        if isinstance(source, Conj):
            out.append(Proj1(source.left, source.right))
            out.append(Proj2(source.left, source.right))
        if frag.has_disj:
            out.append(Inj1(source, self.formula(1)))
            out.append(Inj2(self.formula(1), source))
        if isinstance(source, Bot) and frag.has_bot:
            out.append(Abort(self.formula(1)))
        return out

    def _axioms_into(self, target: Formula) -> list[Derivation]:
        frag = self.fragment
        out: list[Derivation] = [Id(target)]
        if frag.has_bot:
            out.append(Abort(target))
        if isinstance(target, Disj):
            out.append(Inj1(target.left, target.right))
            out.append(Inj2(target.left, target.right))
        if frag.has_conj:
            out.append(Proj1(target, self.formula(1)))
            out.append(Proj2(self.formula(1), target))
        if isinstance(target, Top) and frag.has_top:
            out.append(Bang(self.formula(1)))
        return out

    def arrow(self, depth: int, source: Formula | None = None) -> Derivation:
        """A derivation with the given source (or a random one)."""
        frag, rng = self.fragment, self.rng
        if source is None:
            source = self.formula()
        if depth <= 0:
            return Id(source)
        roll = rng.random()
        if roll < 0.4:
            return rng.choice(self._axioms_from(source))
        if roll < 0.7:
            inner = self.arrow(depth - 1, source=source)
            outer = self.arrow(depth - 1, source=inner.target)
            return Comp(outer, inner)
        if frag.has_conj and (not frag.has_disj or not isinstance(source, Disj)
                              or rng.random() < 0.5):
            return Pair(self.arrow(depth - 1, source=source),
                        self.arrow(depth - 1, source=source))
        if frag.has_disj and isinstance(source, Disj):
            left = self.arrow(depth - 1, source=source.left)
            right = self.between(source.right, left.target, depth - 1)
            if right is None:
                return Copair(Inj1(source.left, source.right),
                              Inj2(source.left, source.right))
            return Copair(left, right)
        return rng.choice(self._axioms_from(source))

    def arrow_into(self, depth: int, target: Formula | None = None) -> Derivation:
        """A derivation with the given target (or a random one)."""
        frag, rng = self.fragment, self.rng
        if target is None:
            target = self.formula()
        if depth <= 0:
            return Id(target)
        roll = rng.random()
        if roll < 0.4:
            return rng.choice(self._axioms_into(target))
        if roll < 0.7:
            outer = self.arrow_into(depth - 1, target=target)
            inner = self.arrow_into(depth - 1, target=outer.source)
            return Comp(outer, inner)
        if frag.has_disj and (not frag.has_conj or not isinstance(target, Conj)
                              or rng.random() < 0.5):
            return Copair(self.arrow_into(depth - 1, target=target),
                          self.arrow_into(depth - 1, target=target))
        if frag.has_conj and isinstance(target, Conj):
            left = self.arrow_into(depth - 1, target=target.left)
            right = self.between(left.source, target.right, depth - 1)
            if right is None:
                return Pair(Proj1(target.left, target.right),
                            Proj2(target.left, target.right))
            return Pair(left, right)
        return rng.choice(self._axioms_into(target))

    def between(self, source: Formula, target: Formula,
                depth: int) -> Derivation | None:
        """Bounded search for any derivation source -> target; None if not found."""
        frag, rng = self.fragment, self.rng
        direct: list[Derivation] = []
        if source == target:
            direct.append(Id(source))
        if isinstance(target, Top) and frag.has_top:
            direct.append(Bang(source))
        if isinstance(source, Bot) and frag.has_bot:
            direct.append(Abort(target))
        if direct and (depth <= 0 or rng.random() < 0.5):
            return rng.choice(direct)
        if depth <= 0:
            return direct[0] if direct else None
        candidates = []
        if isinstance(source, Conj):
            candidates.append("project")
        if isinstance(target, Disj):
            candidates.append("inject")
        if isinstance(target, Conj) and frag.has_conj:
            candidates.append("pair")
        if isinstance(source, Disj) and frag.has_disj:
            candidates.append("copair")
        rng.shuffle(candidates)
        for kind in candidates:
            if kind == "project":
                sides = [(source.left, Proj1), (source.right, Proj2)]
                rng.shuffle(sides)
                for middle, proj in sides:
                    rest = self.between(middle, target, depth - 1)
                    if rest is not None:
                        return Comp(rest, proj(source.left, source.right))
            elif kind == "inject":
                sides = [(target.left, Inj1), (target.right, Inj2)]
                rng.shuffle(sides)
                for middle, inj in sides:
                    rest = self.between(source, middle, depth - 1)
                    if rest is not None:
                        return Comp(inj(target.left, target.right), rest)
            elif kind == "pair":
                left = self.between(source, target.left, depth - 1)
                right = self.between(source, target.right, depth - 1)
                if left is not None and right is not None:
                    return Pair(left, right)
            elif kind == "copair":
                left = self.between(source.left, target, depth - 1)
                right = self.between(source.right, target, depth - 1)
                if left is not None and right is not None:
                    return Copair(left, right)
        return direct[0] if direct else None

    def equivalent_variant(self, d: Derivation, rounds: int = 2) -> Derivation:
        """Rewrite d through instances of the (co)cartesian equations."""
        frag, rng = self.fragment, self.rng
        for _ in range(rounds):
            options = ["left_id", "right_id"]
            if frag.has_conj and isinstance(d.target, Conj):
                options.append("expand_pair")
            if frag.has_disj and isinstance(d.source, Disj):
                options.append("expand_copair")
            if frag.has_top and isinstance(d.target, Top):
                options.append("to_bang")
            if frag.has_bot and isinstance(d.source, Bot):
                options.append("to_abort")
            choice = rng.choice(options)
            if choice == "left_id":
                d = Comp(Id(d.target), d)
            elif choice == "right_id":
                d = Comp(d, Id(d.source))
            elif choice == "expand_pair":
                a, b = d.target.left, d.target.right
                d = Pair(Comp(Proj1(a, b), d), Comp(Proj2(a, b), d))
            elif choice == "expand_copair":
                a, b = d.source.left, d.source.right
                d = Copair(Comp(d, Inj1(a, b)), Comp(d, Inj2(a, b)))
            elif choice == "to_bang":
                d = Bang(d.source)
            elif choice == "to_abort":
                d = Abort(d.target)
        return d


def random_derivation(fragment: Fragment, max_depth: int, seed: int) -> Derivation:
    """A seeded random well-typed derivation in the fragment."""
    gen = _Generator(fragment, random.Random(seed))
    return gen.arrow(max_depth)


def random_derivation_into(fragment: Fragment, max_depth: int, seed: int) -> Derivation:
    """Like `random_derivation` but grown from the target side."""
    gen = _Generator(fragment, random.Random(seed))
    return gen.arrow_into(max_depth)


def random_derivation_pair(fragment: Fragment, max_depth: int,
                           seed: int) -> tuple[Derivation, Derivation]:
    """Two seeded random derivations sharing both endpoints.

    Mixes equation-based rewrites of the first derivation (equivalent by
    construction) with independently searched derivations between the same
    endpoints, so downstream checks see equivalent and inequivalent pairs.
    """
    gen = _Generator(fragment, random.Random(seed))
    first = gen.arrow(max_depth)
    second: Derivation | None = None
    if gen.rng.random() < 0.5:
        second = gen.between(first.source, first.target, max_depth)
    if second is None:
        second = gen.equivalent_variant(first)
    return first, second
