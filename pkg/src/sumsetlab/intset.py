"""Finite integer sets and exact h-fold sumset kernels.

A set is a strictly increasing tuple of 64-bit integers.  Sumsets are
computed on dense bitmasks: translating the minimum to zero maps a set to an
arbitrary-precision int whose bit i records membership of i, and one
addition step ORs together the mask shifted by every element of the addend.
Iterated sumsets of integer sets fill up into an interval with sparse
fringes, so the dense representation is the fast path.

All arithmetic is exact.  Computations whose translated range would exceed
the configured bit budget (default 2**26 bits, overridable per call or via
the SUMSETLAB_BUDGET_BITS environment variable) are rejected rather than
attempted, and results must stay within the signed 64-bit range.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Iterator

I64_MIN = -(1 << 63)
I64_MAX = (1 << 63) - 1

DEFAULT_BIT_BUDGET = 1 << 26
BUDGET_ENV_VAR = "SUMSETLAB_BUDGET_BITS"


class BudgetError(RuntimeError):
    """A computation would exceed the configured bit or enumeration budget."""


class MismatchError(RuntimeError):
    """Two supposedly-agreeing computation routes disagreed (internal bug)."""


def bit_budget(override: int | None = None) -> int:
    """Resolve the bitmask size cap: explicit override, else env var, else default."""
    if override is not None:
        if override < 1:
            raise ValueError("bit budget must be positive")
        return override
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BIT_BUDGET


def _check_i64(*values: int) -> None:
    for v in values:
        if v < I64_MIN or v > I64_MAX:
            raise OverflowError("range overflow")


@dataclass(frozen=True)
class IntSet:
    """A nonempty finite set of integers, stored strictly increasing."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        if not elems:
            raise ValueError("empty set")
        for x, y in zip(elems, elems[1:]):
            if x >= y:
                raise ValueError("elements must be strictly increasing")
        _check_i64(elems[0], elems[-1])

    @property
    def min(self) -> int:
        return self.elements[0]

    @property
    def max(self) -> int:
        return self.elements[-1]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, value: int) -> bool:
        lo, hi = 0, len(self.elements)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.elements[mid] < value:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(self.elements) and self.elements[lo] == value

    def __str__(self) -> str:
        return "{" + ",".join(str(x) for x in self.elements) + "}"


@dataclass(frozen=True)
class AffineMap:
    """x -> lam*x + mu with rational coefficients, lam != 0.

    Applying the map to a set requires every image to be an integer; a
    fractional image is rejected at application time.
    """

    lam: Fraction
    mu: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "mu", Fraction(self.mu))
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(Fraction(1), Fraction(0))


def make_set(values: Iterable[int]) -> IntSet:
    """Build an IntSet from arbitrary integers: sorted, deduplicated, nonempty."""
    elems = sorted(set(values))
    if not elems:
        raise ValueError("empty set")
    return IntSet(tuple(elems))


def affine_apply(a: IntSet, f: AffineMap) -> IntSet:
    """Apply x -> lam*x + mu to every element; every image must be integral."""
    out = []
    for x in a:
        y = f.lam * x + f.mu
        if y.denominator != 1:
            raise ValueError("non-integral affine image")
        out.append(int(y))
    return make_set(out)


def normalize(a: IntSet) -> tuple[IntSet, AffineMap]:
    """Translate the minimum to 0 and divide by the gcd of the differences.

    Returns the unique normalized representative together with the map that
    sends the input onto it.  A singleton only translates (the gcd step is
    undefined for {0}).
    """
    if len(a) == 1:
        f = AffineMap(Fraction(1), Fraction(-a.min))
        return IntSet((0,)), f
    g = 0
    for x in a.elements[1:]:
        g = gcd(g, x - a.min)
    f = AffineMap(Fraction(1, g), Fraction(-a.min, g))
    return affine_apply(a, f), f


def reflect(a: IntSet) -> IntSet:
    """The reflection max(A) - A; preserves normalization and all sumset sizes."""
    m = a.max
    return IntSet(tuple(m - x for x in reversed(a.elements)))


def is_normalized(a: IntSet) -> bool:
    """True iff min(A) = 0 and gcd(A) = 1 (singleton {0} counts)."""
    if a.min != 0:
        return False
    if len(a) == 1:
        return True
    g = 0
    for x in a.elements[1:]:
        g = gcd(g, x)
    return g == 1


def affinely_equivalent(a: IntSet, b: IntSet) -> bool:
    """True iff B = lam*A + mu for some rational lam != 0, mu.

    The normalized representative is unique up to reflection, so two sets are
    equivalent exactly when their normalizations agree directly or after
    reflecting one of them.
    """
    if len(a) != len(b):
        return False
    na, _ = normalize(a)
    nb, _ = normalize(b)
    return na == nb or na == reflect(nb)


# -- bitmask kernel ----------------------------------------------------------

_BYTE_BITS = tuple(
    tuple(i for i in range(8) if (byte >> i) & 1) for byte in range(256)
)


def _mask_of(shifts: Iterable[int]) -> int:
    mask = 0
    for s in shifts:
        mask |= 1 << s
    return mask


def _add_once(mask: int, shifts: tuple[int, ...]) -> int:
    acc = 0
    for s in shifts:
        acc |= mask << s
    return acc


def _mask_elements(mask: int, base: int) -> tuple[int, ...]:
    out = []
    raw = mask.to_bytes((mask.bit_length() + 7) // 8, "little")
    for idx, byte in enumerate(raw):
        if byte:
            off = base + 8 * idx
            for bit in _BYTE_BITS[byte]:
                out.append(off + bit)
    return tuple(out)


def _fold_setup(a: IntSet, h: int, max_bits: int | None) -> tuple[int, tuple[int, ...]]:
    if h < 1:
        raise ValueError("h must be a positive integer")
    span = a.max - a.min
    if h * span + 1 > bit_budget(max_bits):
        raise BudgetError("budget exceeded")
    _check_i64(h * a.min, h * a.max)
    shifts = tuple(x - a.min for x in a.elements)
    return _mask_of(shifts), shifts


def h_fold(a: IntSet, h: int, max_bits: int | None = None) -> IntSet:
    """The h-fold sumset hA: all sums of h not necessarily distinct elements."""
    mask, shifts = _fold_setup(a, h, max_bits)
    cur = mask
    for _ in range(h - 1):
        cur = _add_once(cur, shifts)
    return IntSet(_mask_elements(cur, h * a.min))


def iter_h_folds(a: IntSet, h_max: int, max_bits: int | None = None) -> Iterator[IntSet]:
    """Yield 1A, 2A, ..., h_max*A incrementally (hA = (h-1)A + A)."""
    mask, shifts = _fold_setup(a, h_max, max_bits)
    cur = mask
    yield IntSet(_mask_elements(cur, a.min))
    for h in range(2, h_max + 1):
        cur = _add_once(cur, shifts)
        yield IntSet(_mask_elements(cur, h * a.min))


def sumset(a: IntSet, b: IntSet) -> IntSet:
    """The binary sumset {x + y : x in A, y in B}."""
    _check_i64(a.min + b.min, a.max + b.max)
    span = (a.max - a.min) + (b.max - b.min)
    if span + 1 > bit_budget(None):
        raise BudgetError("budget exceeded")
    mask_a = _mask_of(x - a.min for x in a)
    acc = 0
    for y in b:
        acc |= mask_a << (y - b.min)
    return IntSet(_mask_elements(acc, a.min + b.min))


@dataclass(frozen=True)
class SizeSequence:
    """The sizes (|hA|) for h = 1..h_max, with observed AP-tail metadata.

    ``ap_tail_start`` is the least h such that consecutive differences are
    constant from h to the end of the computed prefix; ``ap_difference`` is
    that constant.  Both are None when fewer than two sizes are available.
    """

    sizes: tuple[int, ...]
    ap_tail_start: int | None
    ap_difference: int | None

    @classmethod
    def from_sizes(cls, sizes: tuple[int, ...]) -> "SizeSequence":
        if len(sizes) < 2:
            return cls(sizes, None, None)
        diff = sizes[-1] - sizes[-2]
        start = len(sizes) - 1
        while start > 1 and sizes[start - 1] - sizes[start - 2] == diff:
            start -= 1
        return cls(sizes, start, diff)

    def size_at(self, h: int) -> int:
        if not 1 <= h <= len(self.sizes):
            raise ValueError("h out of computed range")
        return self.sizes[h - 1]

    def __len__(self) -> int:
        return len(self.sizes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sizes)


def size_sequence(a: IntSet, h_max: int, max_bits: int | None = None) -> SizeSequence:
    """Sizes |1A|, ..., |h_max A|, computed by one incremental sweep."""
    mask, shifts = _fold_setup(a, h_max, max_bits)
    cur = mask
    sizes = [cur.bit_count()]
    for _ in range(2, h_max + 1):
        cur = _add_once(cur, shifts)
        sizes.append(cur.bit_count())
    return SizeSequence.from_sizes(tuple(sizes))


def size_lower_bound(k: int, h: int) -> int:
    """h(k-1) + 1, the least possible |hA| over sets of k integers."""
    return h * (k - 1) + 1


def size_upper_bound(k: int, h: int) -> int:
    """binomial(k+h-1, h), the number of h-multisets of a k-set."""
    return comb(k + h - 1, h)
