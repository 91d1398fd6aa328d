"""Closed-form sumset sizes for interval-plus-point sets and oscillating pairs.

The family A(ell, w) = [0, ell] u {w} with w >= ell + 1 has an exact size
formula: hA is the union of the translated blocks j*w + (h-j)*[0, ell], the
first overlap_index(h)+1 of which merge into one interval.  Writing
j0 = floor(h + 1 - w/ell),

    |hA| = (h+1)(ell*h+2)/2                                if h <= (w-1)/ell,
    |hA| = j0*w + 1 + (h-j0)(2 + ell*(h-j0+1))/2           if h >= w/ell.

Branch tests are integer comparisons (h*ell against w), never floats: the
content of the formula lives at the branch boundary.

Two pair constructions with prescribed comparative growth are provided:

* ``bigsplit_pair``: A = [0, ell] u {w}, B = [0, ell] u {w+1} with
  ell = k - 2 and w = ell*(h1 + 1); sizes agree through h1 and differ by
  exactly h - h1 afterwards.
* ``geometric_pair``: the interval-plus-point set against
  G = {1, g, ..., g**(ell-1)} u {b}; G is a B_h2 set so its low sumsets are
  as large as possible, giving |1A| > |1G| but |h2 A| < |h2 G|, while
  b < w makes A win again for all large h.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb, gcd
from typing import NamedTuple, Sequence

from .intset import (
    BudgetError,
    IntSet,
    MismatchError,
    _add_once,
    _fold_setup,
    make_set,
    size_sequence,
)


@dataclass(frozen=True)
class FamilyParams:
    """Parameters (ell, w) of the set [0, ell] u {w}, w >= ell + 1."""

    ell: int
    w: int

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise ValueError("ell must be positive")
        if self.w < self.ell + 1:
            raise ValueError("w must exceed ell")

    def build(self) -> IntSet:
        return make_set(list(range(self.ell + 1)) + [self.w])


def overlap_index(h: int, params: FamilyParams) -> int:
    """floor(h + 1 - w/ell): how far the translated blocks merge.

    Blocks j*w + (h-j)*[0, ell] for j = 0..h overlap exactly up to this
    index.  Exact integer arithmetic; may be negative when no block merges.
    """
    return ((h + 1) * params.ell - params.w) // params.ell


def interval_family_size(params: FamilyParams, h: int) -> int:
    """|h([0, ell] u {w})| in closed form."""
    if h < 1:
        raise ValueError("h must be a positive integer")
    ell, w = params.ell, params.w
    if h * ell <= w - 1:
        return (h + 1) * (ell * h + 2) // 2
    j0 = overlap_index(h, params)
    return j0 * w + 1 + (h - j0) * (2 + ell * (h - j0 + 1)) // 2


def triple_family_size(w: int, h: int) -> int:
    """|h{0, 1, w}| for w >= 2: triangular up to h = w-1, then linear.

    The linear branch is h*w + 1 - (w-1)(w-2)/2, the eventual size law with
    genus 0 on the left and the two-generator genus (w-1)(w-2)/2 on the
    right.
    """
    if w < 2:
        raise ValueError("w must be at least 2")
    if h < 1:
        raise ValueError("h must be a positive integer")
    if h <= w - 1:
        return (h + 1) * (h + 2) // 2
    return h * w + 1 - (w - 1) * (w - 2) // 2


def sylvester_genus(v: int, w: int) -> int:
    """(v-1)(w-1)/2: the genus of the semigroup generated by coprime v, w."""
    if v < 1 or w < 1:
        raise ValueError("generators must be positive")
    if gcd(v, w) != 1:
        raise ValueError("generators must be coprime")
    return (v - 1) * (w - 1) // 2


class SubsetBoundCheck(NamedTuple):
    observed: int
    bound: int
    ok: bool


def subset_upper_bound_check(
    a_prime: IntSet, params: FamilyParams, h: int
) -> SubsetBoundCheck:
    """Check |h(A' u {w})| against the full-interval closed form.

    A' must be a nonempty subset of [0, ell] and h >= w/ell (the merged
    branch); monotonicity of sumsets in the base set gives the bound.
    """
    ell, w = params.ell, params.w
    if a_prime.min < 0 or a_prime.max > ell:
        raise ValueError("subset must lie in [0, ell]")
    if h * ell < w:
        raise ValueError("h must be at least w/ell")
    observed = size_sequence(make_set(list(a_prime) + [w]), h).size_at(h)
    bound = interval_family_size(params, h)
    return SubsetBoundCheck(observed, bound, observed <= bound)


class BigSplitPair(NamedTuple):
    a: IntSet
    b: IntSet
    ell: int
    w: int


def bigsplit_pair(k: int, h1: int) -> BigSplitPair:
    """Sets of size k whose size sequences agree through h1, then split.

    With ell = k - 2 and w = ell*(h1 + 1):  A = [0, ell] u {w} and
    B = [0, ell] u {w+1} satisfy |hB| = |hA| for h <= h1 and
    |hB| = |hA| + h - h1 for h >= h1 + 1.
    """
    if k < 3:
        raise ValueError("k >= 3 required")
    if h1 < 1:
        raise ValueError("h1 >= 1 required")
    ell = k - 2
    w = ell * (h1 + 1)
    a = FamilyParams(ell, w).build()
    b = FamilyParams(ell, w + 1).build()
    return BigSplitPair(a, b, ell, w)


def equal_size_pair(k: int) -> tuple[IntSet, IntSet]:
    """Affinely inequivalent k-element sets with identical size sequences.

    k = 3 gives {0,2,7} / {0,3,7}; k = 4 gives {0,3,5,6} / {0,4,5,6}; larger
    k appends the interval [8, k+3] to the k = 4 pair.  Both members satisfy
    |hA| = |hB| for every h >= 1.
    """
    if k < 3:
        raise ValueError("k >= 3 required")
    if k == 3:
        return make_set([0, 2, 7]), make_set([0, 3, 7])
    tail = list(range(8, k + 4))
    return make_set([0, 3, 5, 6] + tail), make_set([0, 4, 5, 6] + tail)


@dataclass(frozen=True)
class GeometricParams:
    """Parameters (h2, g, ell, b, w) with 2 <= h2 < g < g**ell < b < w and h2*ell < w."""

    h2: int
    g: int
    ell: int
    b: int
    w: int

    def __post_init__(self) -> None:
        if not 2 <= self.h2:
            raise ValueError("2 <= h2 violated")
        if not self.h2 < self.g:
            raise ValueError("h2 < g violated")
        if not self.g < self.g**self.ell:
            raise ValueError("g < g**ell violated")
        if not self.g**self.ell < self.b:
            raise ValueError("g**ell < b violated")
        if not self.b < self.w:
            raise ValueError("b < w violated")
        if not self.h2 * self.ell < self.w:
            raise ValueError("h2*ell < w violated")


def geometric_pair(params: GeometricParams) -> tuple[IntSet, IntSet]:
    """Build A = [0, ell] u {w} and G = {1, g, ..., g**(ell-1)} u {b}.

    Construction only validates the parameter chain; whether the intended
    size inequalities hold is reported by ``oscillation_report``.
    """
    a = FamilyParams(params.ell, params.w).build()
    powers = [params.g**i for i in range(params.ell)]
    g_set = make_set(powers + [params.b])
    return a, g_set


def bh_layer_size(ell: int, j: int) -> int:
    """binomial(ell + j - 1, j): |j G0| for any B-set G0 of size ell."""
    if ell < 1 or j < 0:
        raise ValueError("ell must be positive and j nonnegative")
    return comb(ell + j - 1, j)


def is_bh_set(s: IntSet, h: int, max_sums: int = 2_000_000) -> bool:
    """True iff for every j <= h all j-element multiset sums are distinct."""
    if h < 1:
        raise ValueError("h must be a positive integer")
    k = len(s)
    total = sum(comb(k + j - 1, j) for j in range(2, h + 1))
    if total > max_sums:
        raise BudgetError("combinatorial budget exceeded")
    for j in range(2, h + 1):
        seen = set()
        for combo in combinations_with_replacement(s.elements, j):
            t = sum(combo)
            if t in seen:
                return False
            seen.add(t)
    return True


def size_table(
    ell: int, ws: Sequence[int], hs: Sequence[int], max_bits: int | None = None
) -> list[list[int]]:
    """Matrix [|hA(ell, w)|] with rows indexed by w and columns by h.

    Every cell is computed twice, by the closed form and by direct bitmask
    enumeration; a disagreement raises instead of returning wrong data.
    """
    hs = list(hs)
    if any(h < 1 for h in hs):
        raise ValueError("h must be a positive integer")
    h_top = max(hs)
    rows = []
    for w in ws:
        params = FamilyParams(ell, w)
        seq = size_sequence(params.build(), h_top, max_bits=max_bits)
        row = []
        for h in hs:
            formula = interval_family_size(params, h)
            enumerated = seq.size_at(h)
            if formula != enumerated:
                raise MismatchError("formula/enumeration mismatch")
            row.append(formula)
        rows.append(row)
    return rows


class LayerComparison(NamedTuple):
    j: int
    interval_layer: int
    bh_layer: int
    strict: bool


@dataclass(frozen=True)
class OscillationReport:
    """Verified comparative sizes for a geometric pair (A, G).

    ``h3`` is the least h > h2 with |hA| > |hG| holding through the whole
    verification window; ``certified`` records that both sequences were
    already in their linear regime (h >= max - size + 2 for each normalized
    set) with A's slope strictly larger, so the lead persists for every
    larger h.
    """

    params: GeometricParams
    a_set: IntSet
    g_set: IntSet
    layers: tuple[LayerComparison, ...]
    g_is_bh: bool
    layer_sum_ok: bool
    size_1: tuple[int, int]
    size_h2: tuple[int, int]
    first_ok: bool
    second_ok: bool
    h3: int
    window: int
    window_sizes: tuple[tuple[int, int, int], ...]
    certified: bool


def oscillation_report(
    params: GeometricParams,
    window: int = 20,
    h_limit: int = 10_000,
    max_bits: int | None = None,
) -> OscillationReport:
    """Measure |hA| against |hG| and locate the final crossover h3."""
    a_set, g_set = geometric_pair(params)
    h2 = params.h2
    layers = tuple(
        LayerComparison(
            j,
            j * params.ell + 1,
            bh_layer_size(params.ell, j),
            j * params.ell + 1 < bh_layer_size(params.ell, j),
        )
        for j in range(h2 + 1)
    )
    g_is_bh = is_bh_set(g_set, h2)

    # Single incremental sweep per set, extended until the window holds.
    def sweep(s: IntSet):
        mask, shifts = _fold_setup(s, h_limit, max_bits)
        cur = mask
        yield cur.bit_count()
        for _ in range(h_limit - 1):
            cur = _add_once(cur, shifts)
            yield cur.bit_count()

    sizes_a: list[int] = []
    sizes_g: list[int] = []
    gen_a = sweep(a_set)
    gen_g = sweep(g_set)

    def extend_to(h: int) -> None:
        while len(sizes_a) < h:
            sizes_a.append(next(gen_a))
            sizes_g.append(next(gen_g))

    extend_to(h2)
    size_1 = (sizes_a[0], sizes_g[0])
    size_h2 = (sizes_a[h2 - 1], sizes_g[h2 - 1])
    layer_sum_ok = sum(c.bh_layer for c in layers) == size_h2[1]

    slope_a = a_set.max - a_set.min
    slope_g = (g_set.max - g_set.min) // _set_gcd(g_set)
    linear_from = max(
        a_set.max - a_set.min - len(a_set) + 2,
        slope_g - len(g_set) + 2,
        1,
    )

    h3 = None
    h = h2
    run = 0
    while h < h_limit:
        h += 1
        extend_to(h)
        if sizes_a[h - 1] > sizes_g[h - 1]:
            run += 1
            if run == window + 1:
                h3 = h - window
                break
        else:
            run = 0
    if h3 is None:
        raise BudgetError("budget exceeded")

    window_sizes = tuple(
        (hh, sizes_a[hh - 1], sizes_g[hh - 1]) for hh in range(h3, h3 + window + 1)
    )
    certified = h3 >= linear_from and slope_a > slope_g
    return OscillationReport(
        params=params,
        a_set=a_set,
        g_set=g_set,
        layers=layers,
        g_is_bh=g_is_bh,
        layer_sum_ok=layer_sum_ok,
        size_1=size_1,
        size_h2=size_h2,
        first_ok=size_1[0] > size_1[1],
        second_ok=size_h2[0] < size_h2[1],
        h3=h3,
        window=window,
        window_sizes=window_sizes,
        certified=certified,
    )


def _set_gcd(s: IntSet) -> int:
    g = 0
    for x in s:
        g = gcd(g, x - s.min)
    return max(g, 1)
