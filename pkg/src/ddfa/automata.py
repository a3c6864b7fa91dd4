"""Classical finite automata: representation, validation, runs, DOT export.

States are referred to by name; the position of a name in ``states`` fixes
its index, and that ordering is authoritative everywhere (charge vectors,
DOT output, serialized documents). Alphabet symbols are short text tokens,
so bases above 10 stay representable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

Word = tuple[str, ...]


@dataclass
class ValidationReport:
    """Outcome of a structural check; ``problems`` lists every violation."""

    subject: str
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, message: str) -> None:
        self.problems.append(message)

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: INVALID ({len(self.problems)} problem(s))"]
        lines += [f"  - {p}" for p in self.problems]
        return "\n".join(lines)


@dataclass(frozen=True)
class Dfa:
    """Deterministic finite automaton (states, alphabet, transition, start, accepting)."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transition: Mapping[tuple[str, str], str]
    start: str
    accepting: frozenset[str]

    def state_index(self, name: str) -> int:
        return self.states.index(name)


@dataclass(frozen=True)
class Dfao:
    """Deterministic finite automaton with output map instead of accepting set."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transition: Mapping[tuple[str, str], str]
    start: str
    output_alphabet: tuple[Fraction, ...]
    output: Mapping[str, Fraction]

    def state_index(self, name: str) -> int:
        return self.states.index(name)


def validate_dfa(auto: Dfa | Dfao) -> ValidationReport:
    """Check structural invariants; every violation is reported, nothing raises."""
    kind = "dfao" if isinstance(auto, Dfao) else "dfa"
    report = ValidationReport(kind)
    if not auto.states:
        report.add("no states")
    if len(set(auto.states)) != len(auto.states):
        report.add("duplicate state names")
    if not auto.alphabet:
        report.add("empty alphabet")
    if len(set(auto.alphabet)) != len(auto.alphabet):
        report.add("duplicate alphabet symbols")
    for sym in auto.alphabet:
        if not sym:
            report.add("empty alphabet symbol")
    states = set(auto.states)
    if auto.start not in states:
        report.add(f"start state {auto.start!r} not in state list")
    for q in auto.states:
        for s in auto.alphabet:
            if (q, s) not in auto.transition:
                report.add(f"missing transition delta({q}, {s})")
    for (q, s), target in auto.transition.items():
        if q not in states:
            report.add(f"transition from unknown state {q!r}")
        elif s not in auto.alphabet:
            report.add(f"transition on unknown symbol {s!r} from {q}")
        if target not in states:
            report.add(f"transition delta({q}, {s}) targets unknown state {target!r}")
    if isinstance(auto, Dfao):
        for q in auto.states:
            if q not in auto.output:
                report.add(f"missing output value for state {q}")
        for q, value in auto.output.items():
            if q not in states:
                report.add(f"output value for unknown state {q!r}")
            elif value not in auto.output_alphabet:
                report.add(f"output {value} of state {q} not in output alphabet")
    else:
        for q in auto.accepting:
            if q not in states:
                report.add(f"accepting state {q!r} not in state list")
    return report


def delta_star(auto: Dfa | Dfao, q: str, word: Iterable[str]) -> str:
    """Fold the transition function over ``word`` starting from ``q``.

    The empty word returns ``q`` unchanged. Symbols are consumed left to
    right (most significant digit first for numeric encodings).
    """
    if q not in auto.states:
        raise ValueError(f"unknown state {q!r}")
    for s in word:
        if s not in auto.alphabet:
            raise ValueError(f"symbol {s!r} not in alphabet")
        q = auto.transition[(q, s)]
    return q


def dfao_output(auto: Dfao, word: Iterable[str]) -> Fraction:
    """Run ``word`` from the start state and apply the output map to the final state."""
    return auto.output[delta_star(auto, auto.start, word)]


def base_k_word(n: int, k: int) -> Word:
    """Canonical base-``k`` expansion of ``n`` as a word, most significant digit first.

    No leading zeros; ``n = 0`` encodes as the single-symbol word ("0",).
    Digit values are rendered as decimal tokens, so k > 10 works.
    """
    if k < 2:
        raise ValueError(f"base must be >= 2, got {k}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return ("0",)
    digits: list[str] = []
    while n:
        digits.append(str(n % k))
        n //= k
    return tuple(reversed(digits))


def parse_word(alphabet: tuple[str, ...], text: str) -> Word:
    """Split user-supplied text into alphabet symbols.

    If every alphabet symbol is a single character the text is read
    character by character; otherwise symbols must be separated by
    whitespace or commas. Empty text is the empty word.
    """
    if not text:
        return ()
    if all(len(s) == 1 for s in alphabet) and "," not in text and " " not in text:
        return tuple(text)
    return tuple(tok for tok in text.replace(",", " ").split() if tok)


def _unwrap(auto):
    """Return (plain automaton, discharge rules or None) for any automaton kind."""
    rules = getattr(auto, "rules", None)
    if rules is not None:
        return getattr(auto, "dfa", None) or getattr(auto, "dfao"), rules
    return auto, None


def to_dot(auto) -> str:
    """Render any automaton kind as a Graphviz digraph.

    Accepting states are double-circled, the start state gets an arrow from
    an invisible point node, and discharging variants annotate each edge
    with its current-symbol weight as "s: p/q". Node and edge order follow
    (state index, symbol index), so output is byte-stable.
    """
    base, rules = _unwrap(auto)
    lines = ["digraph automaton {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    accepting = base.accepting if isinstance(base, Dfa) else frozenset()
    for q in base.states:
        shape = "doublecircle" if q in accepting else "circle"
        if isinstance(base, Dfao):
            lines.append(f'  "{q}" [shape={shape}, label="{q}/{base.output[q]}"];')
        else:
            lines.append(f'  "{q}" [shape={shape}];')
    lines.append(f'  __start -> "{base.start}";')
    for q in base.states:
        for s in base.alphabet:
            label = s if rules is None else f"{s}: {rules.current[(q, s)]}"
            lines.append(f'  "{q}" -> "{base.transition[(q, s)]}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def build_tm_dfa() -> Dfa:
    """Two-state binary parity automaton: tracks the parity of 1-digits read."""
    return Dfa(
        states=("q0", "q1"),
        alphabet=("0", "1"),
        transition={
            ("q0", "0"): "q0",
            ("q0", "1"): "q1",
            ("q1", "0"): "q1",
            ("q1", "1"): "q0",
        },
        start="q0",
        accepting=frozenset({"q0"}),
    )


def build_tm_dfao() -> Dfao:
    """Parity automaton with outputs 0/1 equal to the state labels."""
    base = build_tm_dfa()
    return Dfao(
        states=base.states,
        alphabet=base.alphabet,
        transition=base.transition,
        start=base.start,
        output_alphabet=(Fraction(0), Fraction(1)),
        output={"q0": Fraction(0), "q1": Fraction(1)},
    )
