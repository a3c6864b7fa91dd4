"""Shared generators for randomized automaton tests."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ddfa.automata import Dfa
from ddfa.discharge import Ddfa, DischargeRuleSet


def random_dfa(rng: random.Random, max_states: int = 6, max_symbols: int = 4) -> Dfa:
    n_states = rng.randint(1, max_states)
    n_symbols = rng.randint(1, max_symbols)
    states = tuple(f"q{i}" for i in range(n_states))
    alphabet = tuple(str(i) for i in range(n_symbols))
    transition = {
        (q, s): states[rng.randrange(n_states)] for q in states for s in alphabet
    }
    accepting = frozenset(q for q in states if rng.random() < 0.3)
    return Dfa(states, alphabet, transition, states[rng.randrange(n_states)], accepting)


def random_rules(rng: random.Random, dfa: Dfa) -> DischargeRuleSet:
    """Random nonnegative rational weights, exact unit sum per (state, symbol)."""
    current: dict[tuple[str, str], Fraction] = {}
    not_current: dict[tuple[str, str, str], Fraction] = {}
    for q in dfa.states:
        for s in dfa.alphabet:
            raw = [rng.randint(0, 8) for _ in dfa.alphabet]
            if sum(raw) == 0:
                raw[rng.randrange(len(raw))] = 1
            total = sum(raw)
            current[(q, s)] = Fraction(raw[0], total)
            others = [t for t in dfa.alphabet if t != s]
            for weight, t in zip(raw[1:], others):
                not_current[(q, s, t)] = Fraction(weight, total)
    return DischargeRuleSet(current, not_current)


def random_ddfa(rng: random.Random, **limits) -> Ddfa:
    dfa = random_dfa(rng, **limits)
    return Ddfa(dfa, random_rules(rng, dfa))


def random_word(rng: random.Random, alphabet, max_len: int = 64) -> tuple[str, ...]:
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xDDFA)
