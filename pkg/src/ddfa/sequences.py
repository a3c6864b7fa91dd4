"""Number sequences read off automaton charge runs, plus their closed forms.

The two builtin automata give rise to a small family of sequences, exposed
here both through simulation (running the automaton on base-k expansions)
and through independent recursions or word-shape closed forms. The builtin
names used by the command line are:

    a        final charges of the 2-state equal-split automaton, base 2
    b        numerators of a (always odd)
    d        reduced final charges of the 4-state automaton, all states valued 1
    e        numerators of d
    t        binary digit-parity sequence (runs the 2-state plain automaton)
    tcal     0/1 recursion whose even branch switches on primality
    a131271  triangle of permutations of {1..2^n}, read row by row

Every producer is exact: Fraction or int, never float.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .automata import Dfao, base_k_word, build_tm_dfao, dfao_output
from .discharge import (
    DischargingAutomaton,
    delta_c,
    reduced_delta_c,
    underlying,
)


class Sequence:
    """Deterministic indexed producer ``n -> value`` with a memo table.

    Reads probe the memo without locking; writes take a lock. A racing
    duplicate computation is harmless since terms are deterministic.
    """

    def __init__(self, term_fn: Callable[[int], object], start: int = 0, name: str = ""):
        self._fn = term_fn
        self._memo: dict[int, object] = {}
        self._lock = threading.Lock()
        self.start = start
        self.name = name

    def term(self, n: int):
        if n < self.start:
            raise ValueError(f"sequence {self.name or '?'} starts at {self.start}, got {n}")
        try:
            return self._memo[n]
        except KeyError:
            pass
        value = self._fn(n)
        with self._lock:
            self._memo[n] = value
        return value

    __call__ = term

    def prefix(self, count: int, start: int | None = None) -> list:
        first = self.start if start is None else start
        return [self.term(n) for n in range(first, first + count)]


# ---------------------------------------------------------------------------
# charge sequences from automata


def _check_base(auto: DischargingAutomaton, base: int) -> None:
    alphabet = underlying(auto).alphabet
    expected = {str(i) for i in range(base)}
    if len(alphabet) != base or set(alphabet) != expected:
        raise ValueError(
            f"alphabet {alphabet} does not match base {base} digits {sorted(expected)}"
        )


def final_charge_sequence(auto: DischargingAutomaton, base: int) -> Sequence:
    """Final charge of the run on the base-``base`` expansion of each n."""
    _check_base(auto, base)
    start = underlying(auto).start

    def term(n: int) -> Fraction:
        return delta_c(auto, start, base_k_word(n, base)).final_charge

    return Sequence(term, name="final-charge")


def reduced_value_sequence(
    auto: DischargingAutomaton, valuation: Mapping[str, Fraction], base: int
) -> Sequence:
    """Numeric reduced value of each run; the valuation must cover final states."""
    _check_base(auto, base)
    start = underlying(auto).start

    def term(n: int) -> Fraction:
        result = reduced_delta_c(auto, valuation, start, base_k_word(n, base))
        if not result.is_numeric:
            raise ValueError(f"state {result.state} has no assigned value")
        return result.value

    return Sequence(term, name="reduced-value")


def numerator_sequence(seq: Sequence) -> Sequence:
    """Numerators of an exact-rational sequence (already in lowest terms)."""
    return Sequence(lambda n: seq.term(n).numerator, start=seq.start,
                    name=f"numerators({seq.name})" if seq.name else "numerators")


# ---------------------------------------------------------------------------
# closed forms


@lru_cache(maxsize=None)
def a_recursion(n: int) -> Fraction:
    """Halving recursion matching the 2-state equal-split charge sequence.

    a(0) = a(1) = 1/2; a(2m) = a(m)/2 and a(2m+1) = 1 - a(m)/2 past that.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n <= 1:
        return Fraction(1, 2)
    half, bit = divmod(n, 2)
    if bit:
        return 1 - a_recursion(half) / 2
    return a_recursion(half) / 2


def modified_b_sequence(n: int) -> int:
    """(b(n) + 1) / 2 for n >= 1, where b(n) is the numerator of a(n).

    b(n) is always odd, so the result is an integer; an even numerator
    would mean an upstream bug and raises.
    """
    if n < 1:
        raise ValueError(f"defined for n >= 1, got {n}")
    b = a_recursion(n).numerator
    if b % 2 == 0:
        raise ArithmeticError(f"numerator b({n}) = {b} is even")
    return (b + 1) // 2


@dataclass(frozen=True)
class TriangleA131271:
    """Triangle whose row n is a permutation of {1, ..., 2^n}."""

    rows: tuple[tuple[int, ...], ...]

    def flatten(self) -> list[int]:
        return [value for row in self.rows for value in row]


def a131271_triangle(depth: int) -> TriangleA131271:
    """Rows 0..depth of the doubling triangle.

    Row n interleaves row n-1 with its reflection: entry v contributes
    v followed by 2^n + 1 - v.
    """
    if depth < 0:
        raise ValueError(f"depth must be nonnegative, got {depth}")
    rows: list[tuple[int, ...]] = [(1,)]
    for n in range(1, depth + 1):
        prev = rows[-1]
        row: list[int] = []
        for v in prev:
            row.append(v)
            row.append(2**n + 1 - v)
        rows.append(tuple(row))
    return TriangleA131271(tuple(rows))


@lru_cache(maxsize=None)
def _triangle_entry(n: int, j: int) -> int:
    """T(n, j), 1-indexed, without materializing rows."""
    if n == 0:
        return 1
    if j % 2:
        return _triangle_entry(n - 1, (j + 1) // 2)
    return 2**n + 1 - _triangle_entry(n - 1, j // 2)


def _a131271_flat(i: int) -> int:
    """Entry i (0-based) of the row-by-row reading of the triangle."""
    if i < 0:
        raise ValueError(f"index must be nonnegative, got {i}")
    n = (i + 1).bit_length() - 1
    return _triangle_entry(n, i + 2 - 2**n)


def _binary_shape(n: int) -> tuple[str, int]:
    """Classify the binary word of n >= 1 into one of three exhaustive shapes.

    Returns (tag, zeros) where tag is "double-one" for words starting 11,
    "one-zeros" for 1 followed only by zeros (possibly none), and
    "one-zeros-one" for 1, at least one 0, then a 1 and anything.
    """
    bits = format(n, "b")
    rest = bits[1:]
    if rest.startswith("1"):
        return "double-one", 0
    first_one = rest.find("1")
    if first_one == -1:
        return "one-zeros", len(rest)
    if first_one >= 1:
        return "one-zeros-one", first_one
    raise AssertionError(f"unclassifiable binary word {bits!r}")


def d_shape_closed_form(n: int) -> Fraction:
    """Closed form for the 4-state reduced charge, by binary word shape.

    d(0) = 1/2; words starting 11 give 3/4; 1 followed by l zeros gives
    2^-(l+1); 1, l >= 1 zeros, then a 1 gives 1 - 2^-(l+2).
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return Fraction(1, 2)
    shape, zeros = _binary_shape(n)
    if shape == "double-one":
        return Fraction(3, 4)
    if shape == "one-zeros":
        return Fraction(1, 2 ** (zeros + 1))
    return 1 - Fraction(1, 2 ** (zeros + 2))


def e_sequence(n: int) -> int:
    """Integer scaling of d(n): its reduced numerator.

    The word shape dictates a power-of-two factor (4, 2^(l+1) or 2^(l+2))
    that clears the reduced denominator exactly; both routes are computed
    and compared, and a mismatch or a non-integer scaling raises.
    """
    d = d_shape_closed_form(n)
    if n == 0:
        factor = 2
    else:
        shape, zeros = _binary_shape(n)
        factor = {
            "double-one": 4,
            "one-zeros": 2 ** (zeros + 1),
            "one-zeros-one": 2 ** (zeros + 2),
        }[shape]
    scaled = factor * d
    if scaled.denominator != 1:
        raise ArithmeticError(f"shape scaling of d({n}) is not an integer: {scaled}")
    if scaled != d.numerator:
        raise ArithmeticError(
            f"shape scaling {scaled} disagrees with reduced numerator {d.numerator} at n={n}"
        )
    return d.numerator


@dataclass
class BranchStats:
    """Usage counts for one membership branch."""

    label: str
    matched: int = 0
    exclusive: int = 0


@dataclass
class RelationCheckReport:
    """Result of the e-sequence relation scan.

    ``doubling_failures`` lists n where e(2n) != e(n); ``quad1`` /
    ``quad3`` carry per-branch stats for the two two-branch memberships,
    with ``*_failures`` listing n matched by neither branch.
    """

    limit: int
    doubling_failures: list[int] = field(default_factory=list)
    quad1: list[BranchStats] = field(default_factory=list)
    quad1_failures: list[int] = field(default_factory=list)
    quad3: list[BranchStats] = field(default_factory=list)
    quad3_failures: list[int] = field(default_factory=list)
    min_branch_hits: int = 5

    @property
    def ok(self) -> bool:
        if self.doubling_failures or self.quad1_failures or self.quad3_failures:
            return False
        return all(
            stats.matched >= self.min_branch_hits for stats in self.quad1 + self.quad3
        )


def _scan_membership(values, options, stats, failures):
    for n, value in values:
        hits = [i for i, (_, opt) in enumerate(options(n)) if opt == value]
        for i in hits:
            stats[i].matched += 1
        if len(hits) == 1:
            stats[hits[0]].exclusive += 1
        if not hits:
            failures.append(n)


def e_relation_check(limit: int) -> RelationCheckReport:
    """Scan the e-sequence identities up to ``limit``.

    Checks e(2n) = e(n) for 0 <= n <= limit, e(4n+1) in
    {e(2n), 2 e(2n+1) + 1} for 0 <= n <= limit, and e(4n+3) in
    {e(2n), e(2n+1)} for 1 <= n <= limit, counting how often each branch
    matches (and how often it is the only match). ``ok`` additionally
    requires every branch to match at least ``min_branch_hits`` times.
    """
    if limit < 16:
        raise ValueError(f"limit must be at least 16, got {limit}")
    report = RelationCheckReport(limit)
    for n in range(limit + 1):
        if e_sequence(2 * n) != e_sequence(n):
            report.doubling_failures.append(n)
    report.quad1 = [BranchStats("e(2n)"), BranchStats("2*e(2n+1)+1")]
    _scan_membership(
        ((n, e_sequence(4 * n + 1)) for n in range(limit + 1)),
        lambda n: [("e(2n)", e_sequence(2 * n)), ("2*e(2n+1)+1", 2 * e_sequence(2 * n + 1) + 1)],
        report.quad1,
        report.quad1_failures,
    )
    report.quad3 = [BranchStats("e(2n)"), BranchStats("e(2n+1)")]
    _scan_membership(
        ((n, e_sequence(4 * n + 3)) for n in range(1, limit + 1)),
        lambda n: [("e(2n)", e_sequence(2 * n)), ("e(2n+1)", e_sequence(2 * n + 1))],
        report.quad3,
        report.quad3_failures,
    )
    return report


def _is_prime(n: int) -> bool:
    """Deterministic trial division; exact at desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def t_sequence(n: int) -> int:
    """0/1 recursion whose even step flips exactly when the half-index is prime.

    tcal(0) = 0; tcal(2n) = 1 - tcal(n) if n is prime else tcal(n);
    tcal(2n+1) = 1 - tcal(n).
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return 0
    half, bit = divmod(n, 2)
    if bit:
        return 1 - t_sequence(half)
    if _is_prime(half):
        return 1 - t_sequence(half)
    return t_sequence(half)


_TM_DFAO: Dfao = build_tm_dfao()


@lru_cache(maxsize=None)
def thue_morse(n: int) -> int:
    """Digit-parity of n base 2, computed by running the 2-state automaton."""
    return int(dfao_output(_TM_DFAO, base_k_word(n, 2)))


# ---------------------------------------------------------------------------
# builtin registry and b-file format


def builtin_sequence(name: str) -> Sequence:
    """Fresh memoizing producer for one of the builtin sequence names."""
    factories: dict[str, tuple[Callable[[int], object], int]] = {
        "a": (a_recursion, 0),
        "b": (lambda n: a_recursion(n).numerator, 0),
        "d": (d_shape_closed_form, 0),
        "e": (e_sequence, 0),
        "t": (thue_morse, 0),
        "tcal": (t_sequence, 0),
        "a131271": (_a131271_flat, 0),
    }
    try:
        fn, start = factories[name]
    except KeyError:
        raise ValueError(
            f"unknown builtin sequence {name!r}; expected one of {sorted(factories)}"
        ) from None
    return Sequence(fn, start=start, name=name)


BUILTIN_SEQUENCE_NAMES = ("a", "b", "d", "e", "t", "tcal", "a131271")


def b_file_text(seq: Sequence, count: int, offset: int = 0) -> str:
    """Plain-text listing "n value" per line, newline-terminated, no blank line."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    lines = [f"{n} {seq.term(n)}" for n in range(offset, offset + count)]
    return "\n".join(lines) + "\n"


def write_b_file(path, seq: Sequence, count: int, offset: int = 0) -> None:
    with open(path, "w", encoding="ascii") as handle:
        handle.write(b_file_text(seq, count, offset))


def read_b_file(text: str, name: str = "file") -> Sequence:
    """Parse "n value" lines (comments with # allowed) into a finite producer."""
    table: dict[int, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'n value', got {raw!r}")
        n = int(parts[0])
        value = Fraction(parts[1])
        table[n] = int(value) if value.denominator == 1 else value

    def term(n: int):
        try:
            return table[n]
        except KeyError:
            raise ValueError(f"index {n} not present in sequence file") from None

    seq = Sequence(term, start=min(table, default=0), name=name)
    return seq
