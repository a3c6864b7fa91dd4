"""Menu-based relation structure of integer sequences at desk scale.

A relation menu for a subsequence s(k^e n + r) is a finite list of affine
combinations of shallower subsequences s(k^f n + b), f <= E; the sequence
satisfies the menu when every index n >= m is matched by at least one
option. The verifier checks all levels E < e <= E + depth, deriving menus
for levels above E+1 by composing the supplied base menus. A verified spec
whose menus are all singletons (and m = 0) collapses to a flat relation
list; the brute-force searcher recovers menus from data.

Everything here is exact: integer evaluation, rational elimination for
kernel ranks, no floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

IntSequence = Callable[[int], int]


class SpecError(ValueError):
    """A relation spec violates its structural preconditions."""


class MissingMenuError(SpecError):
    """A menu required for verification was neither supplied nor derivable."""


@dataclass(frozen=True)
class RelationTerm:
    """One summand coeff * s(k^f n + b)."""

    coeff: int
    f: int
    b: int


@dataclass(frozen=True)
class AffineCombination:
    """constant + sum of terms, evaluated against a sequence."""

    constant: int
    terms: tuple[RelationTerm, ...]


def eval_combination(seq: IntSequence, comb: AffineCombination, n: int, k: int) -> int:
    """Evaluate constant + sum coeff * seq(k^f n + b) at index n."""
    return comb.constant + sum(t.coeff * seq(k**t.f * n + t.b) for t in comb.terms)


def _canonical(constant: int, terms) -> AffineCombination:
    """Merge like terms, drop zero coefficients, order by (f, b)."""
    merged: dict[tuple[int, int], int] = {}
    for t in terms:
        merged[(t.f, t.b)] = merged.get((t.f, t.b), 0) + t.coeff
    kept = tuple(
        RelationTerm(c, f, b) for (f, b), c in sorted(merged.items()) if c != 0
    )
    return AffineCombination(constant, kept)


def describe_combination(comb: AffineCombination, k: int) -> str:
    """Human-readable rendering, e.g. "2*s(2n+1) + 1"."""
    pieces: list[str] = []
    for t in comb.terms:
        stride = k**t.f
        if stride == 1:
            arg = "n" if t.b == 0 else f"n+{t.b}"
        else:
            arg = f"{stride}n" if t.b == 0 else f"{stride}n+{t.b}"
        factor = "" if t.coeff == 1 else ("-" if t.coeff == -1 else f"{t.coeff}*")
        pieces.append(f"{factor}s({arg})")
    if comb.constant or not pieces:
        pieces.append(str(comb.constant))
    text = " + ".join(pieces)
    return text.replace("+ -", "- ")


@dataclass(frozen=True)
class RelationMenu:
    """Options for one subsequence level (e, r)."""

    e: int
    r: int
    options: tuple[AffineCombination, ...]


@dataclass(frozen=True)
class QuasiRegularitySpec:
    """Base k, right-hand exponent bound E, start index m, and the menus."""

    k: int
    E: int
    m: int
    menus: Mapping[tuple[int, int], RelationMenu]


def validate_spec(spec: QuasiRegularitySpec) -> None:
    """Raise SpecError on any structural violation (vacuous menus included)."""
    if spec.k < 2:
        raise SpecError(f"base k must be >= 2, got {spec.k}")
    if spec.E < 0:
        raise SpecError(f"exponent bound E must be >= 0, got {spec.E}")
    if spec.m < 0:
        raise SpecError(f"start index m must be >= 0, got {spec.m}")
    for (e, r), menu in spec.menus.items():
        if (menu.e, menu.r) != (e, r):
            raise SpecError(f"menu keyed ({e}, {r}) describes level ({menu.e}, {menu.r})")
        if e <= spec.E:
            raise SpecError(f"menu level e = {e} must exceed E = {spec.E}")
        if not 0 <= r < spec.k**e:
            raise SpecError(f"offset r = {r} out of range for level e = {e}")
        if not menu.options:
            raise SpecError(f"menu ({e}, {r}) has no options")
        for opt in menu.options:
            for t in opt.terms:
                if t.f > spec.E:
                    raise SpecError(
                        f"term exponent f = {t.f} exceeds E = {spec.E} in menu ({e}, {r})"
                    )
                if t.f < 0 or not 0 <= t.b <= spec.k**t.f - 1:
                    raise SpecError(
                        f"term offset b = {t.b} out of range for f = {t.f} in menu ({e}, {r})"
                    )


class _MenuResolver:
    """Resolve menus for arbitrary levels, composing upwards from the base.

    A level (e, r) with e > E+1 rewrites s(k^e n + r) = s(k^(e-1) M + r0)
    with M = k n + u, expands each option of the level-(e-1) menu at M, and
    substitutes base menus for any term whose exponent would exceed E.
    Substitution choices multiply out, so composed menus stay finite.
    """

    def __init__(self, spec: QuasiRegularitySpec):
        self.spec = spec
        self.cache: dict[tuple[int, int], RelationMenu] = dict(spec.menus)

    def resolve(self, e: int, r: int) -> RelationMenu:
        key = (e, r)
        if key in self.cache:
            return self.cache[key]
        spec = self.spec
        if e <= spec.E + 1:
            raise MissingMenuError(f"missing menu for level ({e}, {r})")
        k = spec.k
        u, r0 = divmod(r, k ** (e - 1))
        parent = self.resolve(e - 1, r0)
        options: list[AffineCombination] = []
        for opt in parent.options:
            partial: list[tuple[int, list[RelationTerm]]] = [(opt.constant, [])]
            for t in opt.terms:
                g = t.f + 1
                b_new = k**t.f * u + t.b
                if g <= spec.E:
                    partial = [
                        (c0, ts + [RelationTerm(t.coeff, g, b_new)]) for c0, ts in partial
                    ]
                    continue
                sub = self.resolve(spec.E + 1, b_new)
                expanded: list[tuple[int, list[RelationTerm]]] = []
                for c0, ts in partial:
                    for sub_opt in sub.options:
                        expanded.append(
                            (
                                c0 + t.coeff * sub_opt.constant,
                                ts
                                + [
                                    RelationTerm(t.coeff * st.coeff, st.f, st.b)
                                    for st in sub_opt.terms
                                ],
                            )
                        )
                partial = expanded
            options.extend(_canonical(c0, ts) for c0, ts in partial)
        deduped: list[AffineCombination] = []
        seen: set[AffineCombination] = set()
        for opt in options:
            if opt not in seen:
                seen.add(opt)
                deduped.append(opt)
        menu = RelationMenu(e, r, tuple(deduped))
        self.cache[key] = menu
        return menu


@dataclass
class LevelReport:
    """Check outcome for one level: hit counts per option, first failure."""

    e: int
    r: int
    checked: int
    option_hits: list[int]
    first_failure: int | None
    menu: RelationMenu

    @property
    def ok(self) -> bool:
        return self.first_failure is None


@dataclass
class VerificationReport:
    """Per-level results for all levels E < e <= E + depth."""

    verified: bool
    depth: int
    checked_to: int
    levels: dict[tuple[int, int], LevelReport] = field(default_factory=dict)


def verify_quasi_k_regular(
    seq: IntSequence, spec: QuasiRegularitySpec, limit: int, depth: int = 3
) -> VerificationReport:
    """Check every menu level against the sequence for m <= n <= limit.

    Base menus (level E+1) must all be supplied; deeper levels up to
    E + depth are derived by composition unless supplied explicitly.
    """
    validate_spec(spec)
    if depth < 1:
        raise SpecError(f"depth must be >= 1, got {depth}")
    if limit < spec.m:
        raise SpecError(f"limit {limit} is below start index m = {spec.m}")
    resolver = _MenuResolver(spec)
    report = VerificationReport(verified=True, depth=depth, checked_to=limit)
    for e in range(spec.E + 1, spec.E + depth + 1):
        stride = spec.k**e
        for r in range(stride):
            menu = resolver.resolve(e, r)
            hits = [0] * len(menu.options)
            first_failure = None
            for n in range(spec.m, limit + 1):
                value = seq(stride * n + r)
                matched = False
                for i, opt in enumerate(menu.options):
                    if eval_combination(seq, opt, n, spec.k) == value:
                        hits[i] += 1
                        matched = True
                if not matched and first_failure is None:
                    first_failure = n
            level = LevelReport(e, r, limit - spec.m + 1, hits, first_failure, menu)
            report.levels[(e, r)] = level
            if first_failure is not None:
                report.verified = False
    return report


@dataclass(frozen=True)
class KRegularityCertificate:
    """Flat relation list: every level has exactly one combination."""

    k: int
    E: int
    relations: tuple[tuple[int, int, AffineCombination], ...]


@dataclass(frozen=True)
class SingletonRefusal:
    """Why a spec does not collapse to a flat relation list."""

    reason: str


def singleton_reduction(
    spec: QuasiRegularitySpec, report: VerificationReport
) -> KRegularityCertificate | SingletonRefusal:
    """Collapse a verified all-singleton spec with m = 0 to a certificate.

    Singleton menus leave no per-index choice, so the one combination per
    level must hold at every index; with m = 0 that is exactly a flat
    relation list. Any violated hypothesis yields a refusal naming it.
    """
    if not report.verified:
        raise ValueError("singleton reduction requires a verified report")
    if spec.m != 0:
        return SingletonRefusal(f"start index m = {spec.m}, hypothesis needs m = 0")
    for (e, r), menu in sorted(spec.menus.items()):
        if len(menu.options) != 1:
            return SingletonRefusal(
                f"menu ({e}, {r}) has {len(menu.options)} options, hypothesis needs 1"
            )
    relations = tuple(
        (e, r, spec.menus[(e, r)].options[0]) for (e, r) in sorted(spec.menus)
    )
    return KRegularityCertificate(spec.k, spec.E, relations)


def certificate_as_spec(cert: KRegularityCertificate) -> QuasiRegularitySpec:
    """Replay a certificate as a singleton-menu spec (for re-verification)."""
    menus = {
        (e, r): RelationMenu(e, r, (comb,)) for e, r, comb in cert.relations
    }
    return QuasiRegularitySpec(cert.k, cert.E, 0, menus)


@dataclass
class SearchResult:
    """Menus found per residue, plus any indices no candidate covered."""

    k: int
    E: int
    m: int
    level: int
    coeff_bound: int
    limit: int
    menus: dict[tuple[int, int], RelationMenu] = field(default_factory=dict)
    uncovered: dict[tuple[int, int], list[int]] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not any(self.uncovered.values())

    def to_spec(self) -> QuasiRegularitySpec:
        if not self.complete:
            missing = {key: v for key, v in self.uncovered.items() if v}
            raise SpecError(f"search left indices uncovered: {missing}")
        return QuasiRegularitySpec(self.k, self.E, self.m, dict(self.menus))


def search_relation_menus(
    seq: IntSequence,
    k: int,
    E: int,
    m: int,
    level: int,
    coeff_bound: int,
    limit: int,
) -> SearchResult:
    """Brute-force menu search over bounded-coefficient affine combinations.

    Candidates range over constant and coefficients in [-coeff_bound,
    coeff_bound] against the basis {s(k^f n + b) : f <= E}. Per residue,
    candidates matching nowhere are pruned and a greedy cover (descending
    count of newly covered indices) of [m, limit] is returned; ties prefer
    fewer terms, then a smaller constant. Residues left with uncovered
    indices are reported, not fatal.
    """
    if coeff_bound < 1:
        raise SpecError(f"coeff bound must be >= 1, got {coeff_bound}")
    if level <= E:
        raise SpecError(f"search level e = {level} must exceed E = {E}")
    if limit < m:
        raise SpecError(f"limit {limit} is below start index m = {m}")
    basis = [(f, b) for f in range(E + 1) for b in range(k**f)]
    span = 2 * coeff_bound + 1
    if span ** (len(basis) + 1) > 2_000_000:
        raise SpecError(
            f"search space {span}^{len(basis) + 1} too large; reduce coeff bound or E"
        )
    result = SearchResult(k, E, m, level, coeff_bound, limit)
    ns = range(m, limit + 1)
    rows = [tuple(seq(k**f * n + b) for f, b in basis) for n in ns]
    coeff_range = range(-coeff_bound, coeff_bound + 1)
    for r in range(k**level):
        targets = [seq(k**level * n + r) for n in ns]
        candidates: list[tuple[AffineCombination, frozenset[int]]] = []
        for coeffs in itertools.product(coeff_range, repeat=len(basis)):
            lin = [sum(c * x for c, x in zip(coeffs, row)) for row in rows]
            for constant in coeff_range:
                hit_set = frozenset(
                    i for i, (v, t) in enumerate(zip(lin, targets)) if v + constant == t
                )
                if hit_set:
                    comb = _canonical(
                        constant,
                        [RelationTerm(c, f, b) for c, (f, b) in zip(coeffs, basis)],
                    )
                    candidates.append((comb, hit_set))
        chosen: list[AffineCombination] = []
        uncovered = set(range(len(rows)))
        while uncovered:
            best = None
            best_key = None
            for comb, hit_set in candidates:
                gain = len(hit_set & uncovered)
                if gain == 0:
                    continue
                key = (
                    -gain,
                    len(comb.terms),
                    abs(comb.constant),
                    comb.constant,
                    tuple((t.f, t.b, t.coeff) for t in comb.terms),
                )
                if best_key is None or key < best_key:
                    best, best_key = (comb, hit_set), key
            if best is None:
                break
            chosen.append(best[0])
            uncovered -= best[1]
        result.menus[(level, r)] = RelationMenu(level, r, tuple(chosen))
        result.uncovered[(level, r)] = sorted(m + i for i in uncovered)
    return result


@dataclass
class KernelReport:
    """Distinct truncated kernel vectors and their exact rank, per depth.

    Index d of either list covers all subsequences s(k^e n + r) with
    e <= d, each truncated to the first ``window`` values, so both counts
    are nondecreasing in d by construction.
    """

    k: int
    depth: int
    window: int
    distinct_counts: list[int] = field(default_factory=list)
    ranks: list[int] = field(default_factory=list)


def _echelon_insert(basis: list[tuple[int, list[Fraction]]], vec) -> bool:
    """Reduce vec against the echelon basis; insert if independent."""
    row = [Fraction(x) for x in vec]
    for pivot, brow in basis:
        factor = row[pivot]
        if factor:
            row = [a - factor * b for a, b in zip(row, brow)]
    for pivot, value in enumerate(row):
        if value:
            normalized = [a / value for a in row]
            basis.append((pivot, normalized))
            basis.sort(key=lambda item: item[0])
            return True
    return False


def k_kernel(seq: IntSequence, k: int, depth: int, window: int = 64) -> KernelReport:
    """Enumerate truncated kernel vectors up to ``depth`` and rank them.

    A sequence with finitely many kernel vectors (or a kernel of bounded
    rational rank) will show both counts stabilizing as depth grows;
    unbounded growth over the window is evidence against that structure,
    never proof.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if window < 16:
        raise ValueError(f"window must be >= 16, got {window}")
    report = KernelReport(k, depth, window)
    seen: set[tuple[int, ...]] = set()
    basis: list[tuple[int, list[Fraction]]] = []
    for d in range(depth + 1):
        stride = k**d
        for r in range(stride):
            vec = tuple(seq(stride * n + r) for n in range(window))
            if vec not in seen:
                seen.add(vec)
                _echelon_insert(basis, vec)
        report.distinct_counts.append(len(seen))
        report.ranks.append(len(basis))
    return report
