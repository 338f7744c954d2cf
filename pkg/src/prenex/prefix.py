"""Quantifier-prefix data model: text grammar, runs, canonical form, equivalence.

A prefix over n variables is an ordered list ``sigma`` (a permutation of
``0..n-1`` giving the variable order) together with a quantifier string ``b``
(``b[i]`` quantifies the variable at position ``i``).  Variable indices are
tied to names through the ``names`` tuple: ``names[v]`` is the name of
variable index ``v``, and the parser assigns indices by ascending
lexicographic order of the names so that both sides of a pair share one
universe.
"""

from __future__ import annotations

import random
import re
from array import array
from dataclasses import dataclass
from enum import IntEnum

from .errors import (
    DuplicateVariableError,
    EmptyPrefixError,
    LengthMismatchError,
    PrefixSyntaxError,
    VariableSetMismatchError,
)

__all__ = [
    "Quantifier",
    "Prefix",
    "Run",
    "CanonicalClass",
    "parse_prefix",
    "parse_prefix_pair",
    "format_prefix",
    "runs",
    "canonicalize",
    "equivalent",
    "ensure_same_universe",
    "default_names",
    "random_prefix",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

_QUANT_TOKENS = {
    "A": 1,
    "∀": 1,
    "E": 0,
    "∃": 0,
}


class Quantifier(IntEnum):
    """Quantifier tag; the encoding EXISTS=0 < FORALL=1 is load-bearing."""

    EXISTS = 0
    FORALL = 1

    @property
    def letter(self) -> str:
        return "A" if self else "E"


@dataclass(frozen=True)
class Prefix:
    """Immutable raw prefix: variable order ``sigma``, quantifiers ``b``, ``names``.

    ``sigma`` must be a permutation of ``0..n-1`` with n >= 1; ``names`` must be
    distinct and nonempty.  Instances are hashable and safe to share.
    """

    sigma: tuple[int, ...]
    b: tuple[Quantifier, ...]
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        sigma = tuple(self.sigma)
        b = tuple(self.b)
        names = tuple(self.names)
        if not all(type(q) is Quantifier for q in b):
            b = tuple(Quantifier(q) for q in b)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "names", names)
        n = len(sigma)
        if n == 0:
            raise EmptyPrefixError("a prefix must quantify at least one variable")
        if len(b) != n or len(names) != n:
            raise ValueError("sigma, b and names must have equal length")
        seen = bytearray(n)
        for v in sigma:
            if not 0 <= v < n or seen[v]:
                raise ValueError("sigma must be a permutation of 0..n-1")
            seen[v] = 1
        if any(not name for name in names) or len(set(names)) != n:
            raise ValueError("variable names must be nonempty and distinct")

    @property
    def n(self) -> int:
        return len(self.sigma)

    def __str__(self) -> str:
        return format_prefix(self)


@dataclass(frozen=True)
class Run:
    """Maximal contiguous block of same-quantifier positions."""

    start: int
    length: int
    quant: Quantifier


@dataclass(frozen=True)
class CanonicalClass:
    """Equivalence-class representative: ascending variable order in each run."""

    rep: Prefix

    @property
    def text(self) -> str:
        return format_prefix(self.rep)

    def __str__(self) -> str:
        return self.text


def runs(p: Prefix) -> tuple[Run, ...]:
    """Decompose ``p`` into its maximal constant-quantifier runs, in order."""
    out = []
    b = p.b
    start = 0
    for i in range(1, len(b)):
        if b[i] is not b[start]:
            out.append(Run(start, i - start, b[start]))
            start = i
    out.append(Run(start, len(b) - start, b[start]))
    return tuple(out)


def canonicalize(p: Prefix) -> CanonicalClass:
    """Canonical representative of ``p``'s class: sort sigma within each run.

    Idempotent; preserves ``b`` and the per-run multiset of variables.
    """
    sigma = list(p.sigma)
    for r in runs(p):
        stop = r.start + r.length
        sigma[r.start:stop] = sorted(sigma[r.start:stop])
    return CanonicalClass(Prefix(tuple(sigma), p.b, p.names))


def ensure_same_universe(p1: Prefix, p2: Prefix) -> None:
    """Raise unless both prefixes quantify the same indexed variable universe."""
    if p1.n != p2.n:
        raise LengthMismatchError(f"prefix lengths differ: {p1.n} != {p2.n}")
    if p1.names != p2.names:
        raise VariableSetMismatchError(
            "prefixes must share the same variable-name universe"
        )


def equivalent(p1: Prefix, p2: Prefix) -> bool:
    """True iff the prefixes are equal up to permutation within each run."""
    if p1.names != p2.names:
        raise VariableSetMismatchError(
            "prefixes must share the same variable-name universe"
        )
    return canonicalize(p1) == canonicalize(p2)


def format_prefix(p: Prefix) -> str:
    """Canonical ASCII text: 'A'/'E' and name tokens, single-space separated."""
    names = p.names
    return " ".join(f"{q.letter} {names[v]}" for q, v in zip(p.b, p.sigma))


def _scan(text: str) -> list[tuple[str, int]]:
    """Tokenize one prefix text into ordered (name, quantifier-bit) pairs.

    Grammar (whitespace-separated tokens)::

        prefix := (quant ident)+
        quant  := "A" | "E" | "∀" | "∃"
        ident  := [A-Za-z_][A-Za-z0-9_]*
    """
    tokens = text.split()
    if not tokens:
        raise EmptyPrefixError("empty prefix")
    if len(tokens) % 2:
        raise PrefixSyntaxError(
            f"dangling token {tokens[-1]!r}: expected quantifier-name pairs"
        )
    pairs = []
    seen = set()
    for quant_tok, name in zip(tokens[::2], tokens[1::2]):
        bit = _QUANT_TOKENS.get(quant_tok)
        if bit is None:
            raise PrefixSyntaxError(f"expected quantifier token, got {quant_tok!r}")
        if not _IDENT.match(name):
            raise PrefixSyntaxError(f"invalid variable name {name!r}")
        if name in seen:
            raise DuplicateVariableError(f"variable {name!r} quantified twice")
        seen.add(name)
        pairs.append((name, bit))
    return pairs


def _build(pairs: list[tuple[str, int]], names: tuple[str, ...]) -> Prefix:
    index = {name: v for v, name in enumerate(names)}
    sigma = tuple(index[name] for name, _ in pairs)
    b = tuple(Quantifier(bit) for _, bit in pairs)
    return Prefix(sigma, b, names)


def parse_prefix(text: str) -> Prefix:
    """Parse a single prefix; indices follow ascending lexicographic name order."""
    pairs = _scan(text)
    names = tuple(sorted(name for name, _ in pairs))
    return _build(pairs, names)


def parse_prefix_pair(lhs_text: str, rhs_text: str) -> tuple[Prefix, Prefix]:
    """Parse two prefixes over one shared variable universe.

    Both texts must quantify exactly the same name set; indices 0..n-1 are
    assigned by ascending lexicographic byte order of the names and shared
    between the two results.
    """
    lhs_pairs = _scan(lhs_text)
    rhs_pairs = _scan(rhs_text)
    lhs_names = {name for name, _ in lhs_pairs}
    rhs_names = {name for name, _ in rhs_pairs}
    if lhs_names != rhs_names:
        only_l = sorted(lhs_names - rhs_names)
        only_r = sorted(rhs_names - lhs_names)
        raise VariableSetMismatchError(
            f"variable sets differ (lhs only: {only_l}, rhs only: {only_r})"
        )
    names = tuple(sorted(lhs_names))
    return _build(lhs_pairs, names), _build(rhs_pairs, names)


def default_names(n: int) -> tuple[str, ...]:
    """x1..xn, zero-padded so lexicographic order matches index order."""
    width = len(str(n))
    return tuple(f"x{i:0{width}d}" for i in range(1, n + 1))


def random_prefix(
    n: int, rng: random.Random, names: tuple[str, ...] | None = None
) -> Prefix:
    """Uniform raw prefix: sigma via seeded shuffle, quantifier bits uniform.

    The generator contract is fixed (``rng.shuffle`` then one ``getrandbits(1)``
    per position) so seeded runs are replayable bit-for-bit.
    """
    if names is None:
        names = default_names(n)
    sigma = list(range(n))
    rng.shuffle(sigma)
    if n > 256:
        # Rebox the shuffled values so the int objects lie in slot order;
        # sequential consumers then avoid shuffle-order cache misses.
        sigma = array("q", sigma).tolist()
    b = tuple(Quantifier(rng.getrandbits(1)) for _ in range(n))
    return Prefix(tuple(sigma), b, names)
