"""Exact solution counting for k-fold shifted-product equations.

The mean value M counts ordered pairs of k-tuples x, y in [1, X]^k with
prod(x_i + theta) = prod(y_i + theta).  It is computed by enumerating each
multiset of [1, X] once (as a non-decreasing tuple), weighting it by its
number of distinct orderings k!/prod(mult_i!), and accumulating the weights
in a frequency table keyed by the canonical form of the product; then
M = sum of squared frequencies.  The diagonal count T (pairs where y is a
permutation of x) comes from an independent closed-form partition sum, so
M and T cross-check each other and M - T is the non-diagonal count.

Performance notes.  Canonical coordinates of the product are linear in the
coefficient vector of prod(t + x_i), and that vector is affine in the last
factor once the first k-1 factors are fixed.  Folding the coordinates into a
single integer by a (signed) mixed-radix encoding with per-coordinate bounds
keeps that affine structure, so the innermost loop is `key = a*x + b` with
one dict update per multiset.  Everything stays in arbitrary-precision
integer arithmetic; the encoding is injective within the bounds box and is
used only inside the engine (public canonical forms are exact vectors).

Parallelism.  The multiset space is split into contiguous ranges of the
first coordinate; each worker fills a partial table and the parent merges by
addition, which is associative and commutative, so reports are identical for
any worker count.  Workers <= 1 runs fully inline (the reference path).
"""

from __future__ import annotations

import dataclasses
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, lcm, prod
from typing import Iterator, Optional, Sequence

from .polynomials import MinimalPolynomial
from .shifts import Algebraic, CanonicalProduct, Rational, Shift, Transcendental, format_shift

DEFAULT_MAX_K = 6
DEFAULT_MEMORY_BUDGET_MB = 2048
_BYTES_PER_TABLE_ENTRY = 96

COUNT_CSV_HEADER = "k,X,shift,M,T,nondiag,distinct_nu,elapsed_ms"


class CapacityError(RuntimeError):
    """The frequency table for (k, X) would exceed the configured memory budget."""


# ---------------------------------------------------------------------------
# canonical-key encoders
# ---------------------------------------------------------------------------


def _reduction_rows(m: MinimalPolynomial, k: int) -> list[tuple[Fraction, ...]]:
    """Rows R[j] = coordinates of t^j reduced mod m, for j = 0..k."""
    d = m.degree
    c = m.coeffs
    rows: list[tuple[Fraction, ...]] = []
    for j in range(min(d, k + 1)):
        rows.append(tuple(Fraction(int(i == j)) for i in range(d)))
    lead = c[d]
    for j in range(d, k + 1):
        prev = rows[j - 1]
        top = prev[d - 1]
        row = tuple(
            (prev[i - 1] if i > 0 else Fraction(0)) - top * Fraction(c[i], lead)
            for i in range(d)
        )
        rows.append(row)
    return rows


class _PolyKeyer:
    """Single-integer keys for sigma-vector and reduced-vector canonical forms.

    Built from integer rows S[j] (the scaled contribution of the t^j
    coefficient of the product polynomial to each canonical coordinate) plus
    exact per-coordinate bounds; the key of a product with coefficient vector
    c is sum_j c_j * E_j where E_j folds S[j] through the radix strides.
    """

    __slots__ = ("k", "rows_weight", "scale", "bounds", "strides", "dims")

    def __init__(self, k: int, X: int, rows: Sequence[Sequence[Fraction]], dims: int):
        self.k = k
        self.dims = dims
        scale = lcm(*(f.denominator for row in rows for f in row)) if rows else 1
        srows = [tuple(int(f * scale) for f in row) for row in rows]
        self.scale = scale
        # |c_j| = sigma_{k-j} <= C(k, k-j) X^(k-j) for tuples from [1, X]
        sig_bound = [comb(k, k - j) * X ** (k - j) for j in range(k + 1)]
        bounds = [
            sum(abs(srows[j][i]) * sig_bound[j] for j in range(k + 1))
            for i in range(dims)
        ]
        strides = [1]
        for i in range(dims - 1):
            strides.append(strides[-1] * (2 * bounds[i] + 1))
        self.bounds = bounds
        self.strides = strides
        self.rows_weight = tuple(
            sum(srows[j][i] * strides[i] for i in range(dims)) for j in range(k + 1)
        )

    def initial_state(self) -> tuple[int, ...]:
        return (1,)

    def extend(self, state: tuple[int, ...], x: int) -> tuple[int, ...]:
        # coefficients of state poly times (t + x); state stays monic
        n = len(state)
        out = [state[0] * x]
        for j in range(1, n):
            out.append(state[j - 1] + state[j] * x)
        out.append(1)
        return tuple(out)

    def leaf_ab(self, state: tuple[int, ...]) -> tuple[int, int]:
        E = self.rows_weight
        a = 0
        b = 0
        for j, s in enumerate(state):
            a += s * E[j]
            b += s * E[j + 1]
        return a, b

    def encode(self, nu: CanonicalProduct) -> Optional[int]:
        """Table key of a public canonical form, or None if unrepresentable."""
        if not isinstance(nu.coords, tuple) or len(nu.coords) != self.dims:
            return None
        key = 0
        for coord, bound, stride in zip(nu.coords, self.bounds, self.strides):
            scaled = coord * self.scale
            v = int(scaled)
            if v != scaled or abs(v) > bound:
                return None
            key += v * stride
        return key


class _RationalKeyer:
    """Keys for rational shifts: the integer product of (q*x + p) itself."""

    __slots__ = ("p", "q")

    def __init__(self, p: int, q: int):
        self.p = p
        self.q = q

    def initial_state(self) -> int:
        return 1

    def extend(self, state: int, x: int) -> int:
        return state * (self.q * x + self.p)

    def leaf_ab(self, state: int) -> tuple[int, int]:
        return state * self.q, state * self.p

    def encode(self, nu: CanonicalProduct) -> Optional[int]:
        return nu.coords if isinstance(nu.coords, int) else None


def _keyer_for(k: int, X: int, shift: Shift):
    if isinstance(shift, Transcendental):
        # canonical coordinate i is sigma_{i+1}, the t^(k-1-i) coefficient of
        # the product polynomial; the monic t^k coefficient carries nothing
        rows = [
            tuple(Fraction(int(i == k - 1 - j)) for i in range(k)) for j in range(k)
        ] + [tuple(Fraction(0) for _ in range(k))]
        return _PolyKeyer(k, X, rows, k)
    if isinstance(shift, Algebraic):
        return _PolyKeyer(k, X, _reduction_rows(shift.minpoly, k), shift.degree)
    if isinstance(shift, Rational):
        return _RationalKeyer(shift.p, shift.q)
    raise TypeError(f"not a shift: {shift!r}")


# ---------------------------------------------------------------------------
# multiset enumeration
# ---------------------------------------------------------------------------


def _scan_weights(keyer, k: int, X: int, lo: int, hi: int, table: dict) -> None:
    """Add ordering-weighted counts for multisets with smallest element in [lo, hi]."""
    get = table.get
    extend = keyer.extend
    leaf_ab = keyer.leaf_ab
    state0 = keyer.initial_state()
    kfact = factorial(k)
    if k == 1:
        a, b = leaf_ab(state0)
        for x in range(lo, hi + 1):
            key = a * x + b
            table[key] = get(key, 0) + 1
        return

    def rec(depth: int, state, den: int, prev: int, run: int) -> None:
        if depth == k - 1:
            a, b = leaf_ab(state)
            key = a * prev + b
            table[key] = get(key, 0) + kfact // (den * (run + 1))
            w = kfact // den
            for x in range(prev + 1, X + 1):
                key = a * x + b
                table[key] = get(key, 0) + w
            return
        rec(depth + 1, extend(state, prev), den * (run + 1), prev, run + 1)
        for x in range(prev + 1, X + 1):
            rec(depth + 1, extend(state, x), den, x, 1)

    for x1 in range(lo, hi + 1):
        rec(1, extend(state0, x1), 1, x1, 1)


def _scan_multiset_counts(keyer, k: int, X: int, lo: int, hi: int, table: dict) -> None:
    """Add one per multiset (not per ordering) to the table."""
    get = table.get
    extend = keyer.extend
    leaf_ab = keyer.leaf_ab
    state0 = keyer.initial_state()
    if k == 1:
        a, b = leaf_ab(state0)
        for x in range(lo, hi + 1):
            key = a * x + b
            table[key] = get(key, 0) + 1
        return

    def rec(depth: int, state, prev: int) -> None:
        if depth == k - 1:
            a, b = leaf_ab(state)
            for x in range(prev, X + 1):
                key = a * x + b
                table[key] = get(key, 0) + 1
            return
        for x in range(prev, X + 1):
            rec(depth + 1, extend(state, x), x)

    for x1 in range(lo, hi + 1):
        rec(1, extend(state0, x1), x1)


def _scan_collect(keyer, k: int, X: int, lo: int, hi: int, wanted, out: dict) -> None:
    """Collect the multisets (as sorted tuples) whose key lies in `wanted`."""
    extend = keyer.extend
    leaf_ab = keyer.leaf_ab
    state0 = keyer.initial_state()
    if k == 1:
        a, b = leaf_ab(state0)
        for x in range(lo, hi + 1):
            key = a * x + b
            if key in wanted:
                out.setdefault(key, []).append((x,))
        return

    def rec(depth: int, state, prev: int, chosen: tuple) -> None:
        if depth == k - 1:
            a, b = leaf_ab(state)
            for x in range(prev, X + 1):
                key = a * x + b
                if key in wanted:
                    out.setdefault(key, []).append(chosen + (x,))
            return
        for x in range(prev, X + 1):
            rec(depth + 1, extend(state, x), x, chosen + (x,))

    for x1 in range(lo, hi + 1):
        rec(1, extend(state0, x1), x1, (x1,))


# ---------------------------------------------------------------------------
# chunked / parallel execution
# ---------------------------------------------------------------------------


def _chunk_ranges(k: int, X: int, n_chunks: int) -> list[tuple[int, int]]:
    """Split [1, X] into contiguous first-coordinate ranges of ~equal leaf mass."""
    n_chunks = max(1, min(n_chunks, X))
    total = comb(X + k - 1, k)
    target = total / n_chunks
    ranges = []
    lo = 1
    acc = 0
    for v in range(1, X + 1):
        acc += comb(X - v + k - 1, k - 1)
        if acc >= target * (len(ranges) + 1) and lo <= v and len(ranges) < n_chunks - 1:
            ranges.append((lo, v))
            lo = v + 1
    if lo <= X:
        ranges.append((lo, X))
    return ranges


def _weights_chunk(args) -> dict:
    k, X, shift, lo, hi = args
    table: dict = {}
    _scan_weights(_keyer_for(k, X, shift), k, X, lo, hi, table)
    return table


def _multiset_counts_chunk(args) -> dict:
    k, X, shift, lo, hi = args
    table: dict = {}
    _scan_multiset_counts(_keyer_for(k, X, shift), k, X, lo, hi, table)
    return table


def _collect_chunk(args) -> dict:
    k, X, shift, lo, hi, wanted = args
    out: dict = {}
    _scan_collect(_keyer_for(k, X, shift), k, X, lo, hi, wanted, out)
    return out


def _run_chunks(task, k: int, X: int, shift: Shift, workers: int, extra: tuple = ()):
    """Run a chunk task over first-coordinate ranges; yield results in range order."""
    if workers <= 1:
        yield task((k, X, shift, 1, X) + extra)
        return
    ranges = _chunk_ranges(k, X, workers * 4)
    if len(ranges) == 1:
        yield task((k, X, shift, 1, X) + extra)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(task, (k, X, shift, lo, hi) + extra) for lo, hi in ranges
        ]
        for fut in futures:
            yield fut.result()


def _merge_add(parts) -> dict:
    merged: dict = {}
    get = merged.get
    for part in parts:
        if not merged:
            merged = part
            get = merged.get
            continue
        for key, v in part.items():
            merged[key] = get(key, 0) + v
    return merged


# ---------------------------------------------------------------------------
# public engine surface
# ---------------------------------------------------------------------------


def _check_capacity(k: int, X: int, memory_budget_mb: int) -> None:
    entries = comb(X + k - 1, k)
    if entries * _BYTES_PER_TABLE_ENTRY > memory_budget_mb * (1 << 20):
        raise CapacityError(
            f"k={k}, X={X} needs ~{entries} table entries "
            f"(~{entries * _BYTES_PER_TABLE_ENTRY >> 20} MiB), over the "
            f"{memory_budget_mb} MiB budget"
        )


def _validate_args(k: int, X: int, shift: Shift, max_k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if k > max_k:
        raise ValueError(f"k={k} exceeds the configured maximum {max_k}")
    if not isinstance(X, int) or X < 1:
        raise ValueError(f"X must be a positive integer, got {X!r}")
    if not isinstance(shift, (Transcendental, Algebraic, Rational)):
        raise TypeError(f"not a shift: {shift!r}")


@dataclasses.dataclass
class ProductTable:
    """Frequency table of canonical products over [1, X]^k for one shift.

    Values are ordered-tuple multiplicities; their sum is X^k and the sum of
    their squares is the mean value M.
    """

    k: int
    X: int
    shift: Shift
    _keyer: object
    _freq: dict

    def ordered_count(self, nu: CanonicalProduct) -> int:
        """Number of ordered k-tuples in [1, X]^k whose product has canonical form nu."""
        if nu.shift != self.shift:
            raise ValueError("canonical product belongs to a different shift")
        key = self._keyer.encode(nu)
        return 0 if key is None else self._freq.get(key, 0)

    @property
    def distinct_products(self) -> int:
        return len(self._freq)

    def mean_value(self) -> int:
        return sum(v * v for v in self._freq.values())

    def total_ordered_tuples(self) -> int:
        return sum(self._freq.values())


def build_product_table(
    k: int,
    X: int,
    shift: Shift,
    *,
    workers: int = 1,
    memory_budget_mb: int = DEFAULT_MEMORY_BUDGET_MB,
    max_k: int = DEFAULT_MAX_K,
) -> ProductTable:
    """Enumerate all multisets once and build the ordered-multiplicity table."""
    _validate_args(k, X, shift, max_k)
    _check_capacity(k, X, memory_budget_mb)
    freq = _merge_add(_run_chunks(_weights_chunk, k, X, shift, workers))
    table = ProductTable(k, X, shift, _keyer_for(k, X, shift), freq)
    if table.total_ordered_tuples() != X**k:
        raise RuntimeError(
            "ordering-weight bookkeeping lost tuples; this is an engine bug"
        )
    return table


@dataclasses.dataclass(frozen=True)
class CountReport:
    """One experiment cell: exact mean value, diagonal count, and their gap."""

    k: int
    X: int
    shift: Shift
    mean_value: int
    diagonal: int
    distinct_products: int
    elapsed: float

    def __post_init__(self):
        if not self.mean_value >= self.diagonal >= 0:
            raise ValueError(
                f"mean value {self.mean_value} and diagonal {self.diagonal} "
                "violate M >= T >= 0"
            )
        if (self.mean_value - self.diagonal) % 2:
            raise ValueError("non-diagonal count must be even (x,y pairs swap)")
        if self.distinct_products > comb(self.X + self.k - 1, self.k):
            raise ValueError("more distinct products than multisets")

    @property
    def nondiagonal(self) -> int:
        return self.mean_value - self.diagonal

    @property
    def elapsed_ms(self) -> int:
        return round(self.elapsed * 1000)

    def csv_fields(self) -> list[str]:
        return [
            str(self.k),
            str(self.X),
            format_shift(self.shift),
            str(self.mean_value),
            str(self.diagonal),
            str(self.nondiagonal),
            str(self.distinct_products),
            str(self.elapsed_ms),
        ]

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "X": self.X,
            "shift": format_shift(self.shift),
            "M": self.mean_value,
            "T": self.diagonal,
            "nondiag": self.nondiagonal,
            "distinct_nu": self.distinct_products,
            "elapsed_ms": self.elapsed_ms,
        }


def count_mean_value(
    k: int,
    X: int,
    shift: Shift,
    *,
    workers: int = 1,
    memory_budget_mb: int = DEFAULT_MEMORY_BUDGET_MB,
    max_k: int = DEFAULT_MAX_K,
) -> CountReport:
    """Exact mean value M, diagonal count T, and distinct-product count at (k, X)."""
    t0 = time.perf_counter()
    table = build_product_table(
        k, X, shift, workers=workers, memory_budget_mb=memory_budget_mb, max_k=max_k
    )
    report = CountReport(
        k=k,
        X=X,
        shift=shift,
        mean_value=table.mean_value(),
        diagonal=diagonal_count_exact(k, X),
        distinct_products=table.distinct_products,
        elapsed=time.perf_counter() - t0,
    )
    return report


def representation_count(
    nu: CanonicalProduct,
    k: int,
    X: int,
    shift: Shift,
    *,
    table: Optional[ProductTable] = None,
    memory_budget_mb: int = DEFAULT_MEMORY_BUDGET_MB,
) -> int:
    """Number of ordered k-tuples d in [1, X]^k with prod(d_i + theta) = nu.

    Reads the same frequency table the mean value is computed from; pass a
    prebuilt table to amortise repeated queries.
    """
    if table is None:
        table = build_product_table(k, X, shift, memory_budget_mb=memory_budget_mb)
    elif (table.k, table.X, table.shift) != (k, X, shift):
        raise ValueError("prebuilt table does not match (k, X, shift)")
    return table.ordered_count(nu)


def _partitions(n: int, max_part: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n as non-increasing tuples."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for part in range(max_part, 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def diagonal_count_exact(k: int, X: int) -> int:
    """Exact number of ordered pairs (x, y) in [1,X]^{2k} with equal multisets.

    Summed in closed form over multiplicity profiles (partitions of k): a
    profile with r distinct values can be placed in [X]_r / prod(m_s!) ways
    (m_s = number of parts of size s) and each placement contributes the
    square of its ordering count k! / prod(part_i!).
    """
    if k < 1 or X < 1:
        raise ValueError("k and X must be positive")
    kfact = factorial(k)
    total = 0
    for lam in _partitions(k):
        r = len(lam)
        falling = 1
        for i in range(r):
            falling *= X - i
        if falling == 0:
            continue
        profile_denom = prod(factorial(m) for m in Counter(lam).values())
        orderings = kfact // prod(factorial(part) for part in lam)
        total += (falling // profile_denom) * orderings * orderings
    return total


@dataclasses.dataclass(frozen=True)
class SolutionPair:
    """An unordered witness pair: two multisets with equal shifted products.

    Both sides are stored sorted and the pair itself is ordered x <= y, so
    equal witnesses compare equal regardless of how they were found.
    """

    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("witness sides must have the same length")
        for v in self.x + self.y:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"witness entries must be integers >= 1, got {v!r}")
        x = tuple(sorted(self.x))
        y = tuple(sorted(self.y))
        if y < x:
            x, y = y, x
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def k(self) -> int:
        return len(self.x)

    @property
    def is_diagonal(self) -> bool:
        return self.x == self.y

    def to_json_dict(self) -> dict:
        return {"x": list(self.x), "y": list(self.y)}


def cancel_common_factors(pair: SolutionPair) -> SolutionPair:
    """Remove matched values from the two sides until none coincide.

    The result solves the same equation with smaller k; it is empty exactly
    when the pair was diagonal.
    """
    cx = Counter(pair.x)
    cy = Counter(pair.y)
    x = tuple(sorted((cx - cy).elements()))
    y = tuple(sorted((cy - cx).elements()))
    return SolutionPair(x, y)


def find_nondiagonal_witnesses(
    k: int,
    X: int,
    shift: Shift,
    *,
    limit: Optional[int] = None,
    workers: int = 1,
    memory_budget_mb: int = DEFAULT_MEMORY_BUDGET_MB,
    max_k: int = DEFAULT_MAX_K,
) -> list[SolutionPair]:
    """Deduplicated non-diagonal witness pairs, sorted lexicographically.

    Two passes over the multiset space: the first counts multisets per
    canonical product to find collisions (there are few), the second collects
    the colliding multisets; each colliding group of r multisets yields
    C(r, 2) unordered pairs.  Transcendental shifts are legal and return an
    empty list.
    """
    _validate_args(k, X, shift, max_k)
    _check_capacity(k, X, memory_budget_mb)
    counts = _merge_add(_run_chunks(_multiset_counts_chunk, k, X, shift, workers))
    wanted = frozenset(key for key, n in counts.items() if n >= 2)
    del counts
    if not wanted:
        return []
    groups: dict = {}
    for part in _run_chunks(_collect_chunk, k, X, shift, workers, extra=(wanted,)):
        for key, members in part.items():
            groups.setdefault(key, []).extend(members)
    pairs = []
    for members in groups.values():
        members.sort()
        for first, second in combinations(members, 2):
            pairs.append(SolutionPair(first, second))
    pairs.sort(key=lambda p: (p.x, p.y))
    if limit is not None:
        pairs = pairs[:limit]
    return pairs
