"""Shared helpers for the test suite."""

from __future__ import annotations

from itertools import permutations, product
from math import comb

from prenex import Prefix, Quantifier, default_names


def make_prefix(sigma, bits, names=None) -> Prefix:
    """Build a prefix from a sigma sequence and 0/1 quantifier bits."""
    if names is None:
        names = default_names(len(sigma))
    return Prefix(tuple(sigma), tuple(Quantifier(b) for b in bits), names)


def all_raw_states(n):
    """Every raw (sigma, bits) pair at n, as int tuples."""
    for sigma in permutations(range(n)):
        for bits in product((0, 1), repeat=n):
            yield sigma, bits


def all_raw_prefixes(n):
    names = default_names(n)
    for sigma, bits in all_raw_states(n):
        yield Prefix(sigma, tuple(Quantifier(b) for b in bits), names)


def fubini(n: int) -> int:
    """Ordered-Bell number by the binomial recurrence (independent oracle)."""
    values = [1]
    for m in range(1, n + 1):
        values.append(sum(comb(m, k) * values[m - k] for k in range(1, m + 1)))
    return values[n]
