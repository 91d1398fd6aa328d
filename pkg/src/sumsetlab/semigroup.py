"""Numerical semigroups and the eventual decomposition of h-fold sumsets.

For a normalized set A (min 0, gcd 1) the additive closure
S(A) = {0} u 1A u 2A u ... contains every integer beyond the Frobenius
number g(A); the finitely many missing nonnegative integers are the gaps,
and their count is the genus N(A).

For h large enough, hA splits into a frozen low fringe, a growing middle
interval, and a reflected high fringe:

    hA = fringe_c  u  [C, h*a - D]  u  (h*a - fringe_d)

with C = g(A) + 1, D = g(a-A) + 1, fringe_c = S(A) n [0, C-2] and
fringe_d = S(a-A) n [0, D-2].  In that regime |hA| = h*a + 1 - N(A) - N(a-A),
so the size sequence is an arithmetic progression with difference a = max(A).
This module computes the invariants by sieve, extracts the decomposition,
reports the least threshold h0 at which it holds, and provides the classical
per-step growth check (increment at step h is at least min(a, h(k-2)+1)) and
the threshold bound h0 <= a - k + 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

from .intset import (
    BudgetError,
    IntSet,
    MismatchError,
    _add_once,
    _mask_elements,
    _mask_of,
    bit_budget,
    is_normalized,
    normalize,
    reflect,
    size_sequence,
)


@dataclass(frozen=True)
class SemigroupProfile:
    """Gaps of the numerical semigroup generated by a normalized set.

    ``frobenius`` is the largest non-member (-1 when there are no gaps) and
    ``genus`` the number of gaps; every integer above ``frobenius`` belongs
    to the semigroup.
    """

    generators: IntSet
    frobenius: int
    genus: int
    gaps: tuple[int, ...]

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n > self.frobenius:
            return True
        return n not in set(self.gaps)


def _closure_mask(gens: tuple[int, ...], nbits: int) -> int:
    """Membership bitmask of the additive closure of ``gens`` on [0, nbits)."""
    full = (1 << nbits) - 1
    mask = 1
    while True:
        new = mask
        for g in gens:
            new |= (new << g) & full
        if new == mask:
            return mask
        mask = new


def _run_starts(mask: int, length: int) -> int:
    """Bitmask of positions where ``length`` consecutive set bits begin."""
    r = mask
    for i in range(1, length):
        r &= mask >> i
        if not r:
            return 0
    return r


def semigroup_profile(a: IntSet, strict: bool = False) -> SemigroupProfile:
    """Sieve the gaps of S(A) for a normalized A.

    Non-strict callers get their input normalized first; with ``strict`` the
    set must already have min 0, and a gcd other than 1 is rejected because
    the complement would be infinite.  The sieve window doubles until a run
    of max(A) consecutive members certifies that no later gap exists.
    """
    if strict:
        if a.min != 0:
            raise ValueError("set must be normalized (min 0)")
    else:
        a, _ = normalize(a)
    gens = tuple(x for x in a if x > 0)
    g = 0
    for x in gens:
        g = gcd(g, x)
    if not gens or g != 1:
        raise ValueError("infinite gap set")
    top = gens[-1]
    nbits = max(64, 4 * top)
    budget = bit_budget(None)
    while True:
        if nbits > budget:
            raise BudgetError("budget exceeded")
        mask = _closure_mask(gens, nbits)
        runs = _run_starts(mask, top)
        if runs:
            break
        nbits *= 2
    p = (runs & -runs).bit_length() - 1
    missing = ~mask & ((1 << p) - 1)
    gaps = _mask_elements(missing, 0)
    return SemigroupProfile(generators=a, frobenius=p - 1, genus=len(gaps), gaps=gaps)


def frobenius(a: IntSet) -> int:
    """Largest integer not in S(A); -1 when S(A) is all of the nonnegatives."""
    return semigroup_profile(a).frobenius


def genus(a: IntSet) -> int:
    """Number of nonnegative integers missing from S(A)."""
    return semigroup_profile(a).genus


@dataclass(frozen=True)
class StabilizationProfile:
    """The eventual fringe/interval/fringe decomposition of hA.

    For all h >= h0:  hA = fringe_c u [c_bound, h*a - d_bound] u
    (h*a - fringe_d), a disjoint union, and |hA| = h*a + 1 - genus_left -
    genus_right.  ``genus_left``/``genus_right`` are N(A) and N(a-A).
    """

    base: IntSet
    a: int
    c_bound: int
    d_bound: int
    fringe_c: tuple[int, ...]
    fringe_d: tuple[int, ...]
    h0: int
    genus_left: int
    genus_right: int

    def eventual_size(self, h: int) -> int:
        return h * self.a + 1 - self.genus_left - self.genus_right

    def reconstruct(self, h: int) -> IntSet:
        """Assemble the claimed decomposition of hA for a given h."""
        ha = h * self.a
        parts = set(self.fringe_c)
        parts.update(range(self.c_bound, ha - self.d_bound + 1))
        parts.update(ha - d for d in self.fringe_d)
        return IntSet(tuple(sorted(parts)))


def _require_normalized(a: IntSet) -> None:
    if not is_normalized(a):
        raise ValueError("set must be normalized (min 0, gcd 1)")
    if len(a) < 2:
        raise ValueError("need at least two elements")


def stabilization(a: IntSet, window: int = 10, max_bits: int | None = None) -> StabilizationProfile:
    """Extract the decomposition and the least h0 from which it is exact.

    h0 is the least h such that, for this h and the next ``window`` values,
    the reconstructed set equals hA elementwise and |hA| already equals
    h*a + 1 - N(A) - N(a-A).  The scan is capped at max(1, a - k + 2), the
    proven threshold, so failure to find h0 signals an internal bug.
    """
    _require_normalized(a)
    left = semigroup_profile(a, strict=True)
    right = semigroup_profile(reflect(a), strict=True)
    c_bound = left.frobenius + 1
    d_bound = right.frobenius + 1
    gaps_l = set(left.gaps)
    gaps_r = set(right.gaps)
    fringe_c = tuple(n for n in range(max(0, c_bound - 1)) if n not in gaps_l)
    fringe_d = tuple(n for n in range(max(0, d_bound - 1)) if n not in gaps_r)

    top = a.max
    k = len(a)
    h_cap = max(1, top - k + 2)
    h_last = h_cap + window

    fc_mask = _mask_of(fringe_c)
    fd_top = fringe_d[-1] if fringe_d else 0
    fd_rev = _mask_of(fd_top - d for d in fringe_d) if fringe_d else 0
    nu = left.genus + right.genus

    shifts = a.elements
    span_bits = h_last * top + 1
    if span_bits > bit_budget(max_bits):
        raise BudgetError("budget exceeded")

    ok = []
    cur = _mask_of(shifts)
    for h in range(1, h_last + 1):
        if h > 1:
            cur = _add_once(cur, shifts)
        ha = h * top
        if cur.bit_count() != ha + 1 - nu:
            ok.append(False)
            continue
        if fd_rev and ha < fd_top:
            ok.append(False)
            continue
        rec = fc_mask
        lo, hi = c_bound, ha - d_bound
        if hi >= lo:
            rec |= (1 << (hi + 1)) - (1 << lo)
        if fd_rev:
            rec |= fd_rev << (ha - fd_top)
        ok.append(rec == cur)

    h0 = None
    for start in range(1, h_cap + 1):
        if all(ok[start - 1 : start + window]):
            h0 = start
            break
    if h0 is None:
        raise MismatchError("decomposition did not stabilize by the proven threshold")

    return StabilizationProfile(
        base=a,
        a=top,
        c_bound=c_bound,
        d_bound=d_bound,
        fringe_c=fringe_c,
        fringe_d=fringe_d,
        h0=h0,
        genus_left=left.genus,
        genus_right=right.genus,
    )


def eventual_size(a: IntSet, h: int) -> int:
    """h*max(A) + 1 - N(A) - N(a-A); equals |hA| once h >= h0(A)."""
    _require_normalized(a)
    left = semigroup_profile(a, strict=True)
    right = semigroup_profile(reflect(a), strict=True)
    return h * a.max + 1 - left.genus - right.genus


class GswCheck(NamedTuple):
    h0_observed: int
    bound: int
    ok: bool


def check_gsw(a: IntSet, window: int = 10) -> GswCheck:
    """Compare the observed least h0 against the proven bound a - k + 2."""
    prof = stabilization(a, window=window)
    bound = max(1, a.max - len(a) + 2)
    return GswCheck(prof.h0, bound, prof.h0 <= bound)


class LevCheck(NamedTuple):
    h: int
    increment: int
    bound: int
    ok: bool


def check_lev(a: IntSet, h_max: int) -> tuple[LevCheck, ...]:
    """Per-step growth |hA| - |(h-1)A| against the bound min(a, h(k-2)+1)."""
    _require_normalized(a)
    if h_max < 2:
        raise ValueError("h_max must be at least 2")
    seq = size_sequence(a, h_max)
    top = a.max
    k = len(a)
    out = []
    for h in range(2, h_max + 1):
        inc = seq.size_at(h) - seq.size_at(h - 1)
        bound = min(top, h * (k - 2) + 1)
        out.append(LevCheck(h, inc, bound, inc >= bound))
    return tuple(out)


def interval_characterization(a: IntSet, h_max: int) -> bool:
    """Finite proxy for the interval test: 2|hA| = |(h-1)A| + |(h+1)A|.

    Checked for h in [2, h_max - 1]; intervals satisfy it for every h and
    non-intervals fail it at some h.
    """
    if h_max < 3:
        raise ValueError("h_max must be at least 3")
    seq = size_sequence(a, h_max)
    return all(
        2 * seq.size_at(h) == seq.size_at(h - 1) + seq.size_at(h + 1)
        for h in range(2, h_max)
    )
