"""Brute-force reference decision by BFS over the raw prefix space.

The three sound moves generate successors of a raw prefix; implication holds
iff some member of the target's equivalence class is reachable.  The search
runs over raw prefixes (not class representatives) with a visited set, which
is trivially complete: class-level successor generation would have to union
moves over every run-permutation of a representative and is easy to get
wrong.  State counts stay manageable under the size cap (n!*2^n is about
10.3M at n=8).

Internally states are packed into single ints (one nibble per sigma slot,
quantifier bits above), which keeps the visited set compact; that encoding
tops out at 16 variables.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import InstanceTooLargeError
from .prefix import (
    CanonicalClass,
    Prefix,
    Quantifier,
    canonicalize,
    ensure_same_universe,
)

__all__ = [
    "ORACLE_CAP",
    "MoveKind",
    "Move",
    "applicable_moves",
    "apply_move",
    "successors",
    "oracle_implies",
    "closure",
]

ORACLE_CAP = 8
_PACKING_CEILING = 16  # one nibble per sigma slot


class MoveKind(Enum):
    SWAP_SAME = "swap-same"
    FLIP = "flip"
    SWAP_EA = "swap-ea"


@dataclass(frozen=True)
class Move:
    """One sound transformation, acting on ``position`` (and ``position + 1``
    for the swap kinds)."""

    kind: MoveKind
    position: int


def applicable_moves(p: Prefix) -> list[Move]:
    """All moves that apply to ``p``, in a fixed deterministic order."""
    b = p.b
    out = [
        Move(MoveKind.FLIP, i) for i, q in enumerate(b) if q is Quantifier.FORALL
    ]
    for i in range(p.n - 1):
        if b[i] is b[i + 1]:
            out.append(Move(MoveKind.SWAP_SAME, i))
        elif b[i] is Quantifier.EXISTS:
            out.append(Move(MoveKind.SWAP_EA, i))
    return out


def apply_move(p: Prefix, move: Move) -> Prefix:
    """Apply one move; variables travel with their quantifiers on swaps."""
    i = move.position
    sigma = list(p.sigma)
    b = list(p.b)
    if move.kind is MoveKind.FLIP:
        if b[i] is not Quantifier.FORALL:
            raise ValueError(f"flip needs a universal at position {i}")
        b[i] = Quantifier.EXISTS
    elif move.kind is MoveKind.SWAP_SAME:
        if b[i] is not b[i + 1]:
            raise ValueError(f"same-run swap needs equal quantifiers at {i},{i + 1}")
        sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
    else:
        if b[i] is not Quantifier.EXISTS or b[i + 1] is not Quantifier.FORALL:
            raise ValueError(f"exists-forall swap does not apply at {i},{i + 1}")
        sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
        b[i], b[i + 1] = b[i + 1], b[i]
    return Prefix(tuple(sigma), tuple(b), p.names)


def successors(p: Prefix) -> set[Prefix]:
    """All distinct raw prefixes one move away from ``p`` (never ``p`` itself)."""
    return {apply_move(p, move) for move in applicable_moves(p)}


def _bits_of(b: tuple[Quantifier, ...]) -> int:
    bits = 0
    for i, q in enumerate(b):
        if q:
            bits |= 1 << i
    return bits


def _pack(sigma: tuple[int, ...], bits: int, n: int) -> int:
    state = bits << (4 * n)
    for i, v in enumerate(sigma):
        state |= v << (4 * i)
    return state


def _unpack(state: int, n: int) -> tuple[tuple[int, ...], tuple[Quantifier, ...]]:
    sigma = tuple((state >> (4 * i)) & 15 for i in range(n))
    bits = state >> (4 * n)
    b = tuple(Quantifier((bits >> i) & 1) for i in range(n))
    return sigma, b


def _explore(
    sigma: tuple[int, ...], bits: int, n: int, target: int | None = None
) -> tuple[bool, set[int]]:
    """BFS over packed raw states; collect the canonical key of every class seen.

    With ``target`` (a packed canonical state) the search stops as soon as the
    target's class is reached and the returned key set is partial.
    """
    shift = 4 * n
    runs_by_bits: dict[int, tuple[tuple[int, int], ...]] = {}

    def run_slices(word: int) -> tuple[tuple[int, int], ...]:
        cached = runs_by_bits.get(word)
        if cached is not None:
            return cached
        slices = []
        start = 0
        prev = word & 1
        for i in range(1, n):
            cur = (word >> i) & 1
            if cur != prev:
                slices.append((start, i))
                start = i
                prev = cur
        slices.append((start, n))
        runs_by_bits[word] = out = tuple(slices)
        return out

    def canon(state: int) -> int:
        word = state >> shift
        vals = [(state >> (4 * i)) & 15 for i in range(n)]
        key = word << shift
        pos = 0
        for lo, hi in run_slices(word):
            for v in sorted(vals[lo:hi]):
                key |= v << (4 * pos)
                pos += 1
        return key

    root = _pack(sigma, bits, n)
    visited = {root}
    classes = {canon(root)}
    if target is not None and target in classes:
        return True, classes
    queue = deque((root,))
    while queue:
        state = queue.popleft()
        word = state >> shift
        succ = []
        rest = word
        i = 0
        while rest:  # flip each universal position to existential
            if rest & 1:
                succ.append(state ^ (1 << (shift + i)))
            rest >>= 1
            i += 1
        for i in range(n - 1):
            pair = (word >> i) & 3
            if pair == 1:  # universal then existential: no move applies
                continue
            z = ((state >> (4 * i)) ^ (state >> (4 * i + 4))) & 15
            swapped = state ^ ((z << (4 * i)) | (z << (4 * i + 4)))
            if pair == 2:  # existential-universal pair swaps quantifiers too
                swapped ^= 3 << (shift + i)
            succ.append(swapped)
        for nxt in succ:
            if nxt not in visited:
                visited.add(nxt)
                key = canon(nxt)
                if key not in classes:
                    classes.add(key)
                    if target is not None and key == target:
                        return True, classes
                queue.append(nxt)
    return False, classes


def _check_cap(n: int, max_n: int) -> None:
    if n > max_n:
        raise InstanceTooLargeError(f"n={n} exceeds the oracle cap {max_n}")
    if n > _PACKING_CEILING:
        raise InstanceTooLargeError(
            f"n={n} exceeds the packed-state ceiling {_PACKING_CEILING}"
        )


def oracle_implies(s1: Prefix, s2: Prefix, max_n: int = ORACLE_CAP) -> bool:
    """Reference answer to the implication question, by exhaustive reachability.

    True iff some prefix equivalent to ``s2`` is reachable from ``s1`` via the
    move closure.  Exponential; guarded by ``max_n``.
    """
    ensure_same_universe(s1, s2)
    n = s1.n
    _check_cap(n, max_n)
    target = _pack(canonicalize(s2).rep.sigma, _bits_of(s2.b), n)
    found, _ = _explore(s1.sigma, _bits_of(s1.b), n, target=target)
    return found


def closure(p: Prefix, max_n: int = ORACLE_CAP) -> list[CanonicalClass]:
    """Every class reachable from ``p`` (its own included), sorted by text.

    Forward closure, i.e. all statements ``p`` makes necessary; the reverse
    direction is available through the census graph's transpose.
    """
    n = p.n
    _check_cap(n, max_n)
    _, keys = _explore(p.sigma, _bits_of(p.b), n)
    out = []
    for key in keys:
        sigma, b = _unpack(key, n)
        out.append(CanonicalClass(Prefix(sigma, b, p.names)))
    out.sort(key=lambda c: c.text)
    return out
