"""JSON document format for automata, discharge rules, and relation specs.

One document per automaton. Rationals travel as strings "p/q" (or integer
literals); native floats are rejected to keep everything exact. Parsing is
strict: unknown fields, duplicate entries, and rule-sum violations are
errors with a message naming the offending field. Serialization is
canonical (fixed key order, transitions sorted by state then symbol), so
parse and serialize are mutually inverse on valid documents.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .automata import Dfa, Dfao, validate_dfa
from .discharge import Ddfa, Ddfao, DischargeRuleSet, underlying, validate_rules
from .regularity import (
    AffineCombination,
    QuasiRegularitySpec,
    RelationMenu,
    RelationTerm,
    SpecError,
    validate_spec,
)


class DocumentError(ValueError):
    """Malformed document: syntax, structure, or a violated invariant."""


CORPUS_DIR = Path(__file__).resolve().parent / "corpus"


def corpus_path(name: str) -> Path:
    """Path of a shipped corpus file (automaton or spec document)."""
    path = CORPUS_DIR / name
    if not path.exists():
        raise DocumentError(f"no corpus file named {name!r}")
    return path


AUTOMATON_KINDS = ("dfa", "dfao", "ddfa", "ddfao")

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def parse_rational(value, where: str) -> Fraction:
    """Exact rational from an int or a "p/q" string; floats are rejected."""
    if isinstance(value, bool):
        raise DocumentError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise DocumentError(
            f"{where}: floating-point literals are not accepted, write \"p/q\""
        )
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value.strip())
        if not match:
            raise DocumentError(f"{where}: {value!r} is not a rational literal")
        numerator = int(match.group(1))
        if match.group(2) is None:
            return Fraction(numerator)
        denominator = int(match.group(2))
        if denominator == 0:
            raise DocumentError(f"{where}: zero denominator in {value!r}")
        if denominator < 0:
            raise DocumentError(f"{where}: negative denominator in {value!r}")
        return Fraction(numerator, denominator)
    raise DocumentError(f"{where}: expected a rational, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class AutomatonDocument:
    """A parsed, fully validated automaton file."""

    kind: str
    automaton: Dfa | Dfao | Ddfa | Ddfao
    valuation: dict[str, Fraction] | None = None


def kind_of(auto) -> str:
    return {Dfa: "dfa", Dfao: "dfao", Ddfa: "ddfa", Ddfao: "ddfao"}[type(auto)]


def _check_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise DocumentError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise DocumentError(f"{where}: missing field(s) {sorted(missing)}")


def _name_list(value, where: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise DocumentError(f"{where}: expected a list of strings")
    return tuple(value)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def parse_document(text: str, check: bool = True) -> AutomatonDocument:
    """Parse one automaton document.

    With ``check`` (the default), automaton and rule invariants are
    enforced and violations raise DocumentError; ``check=False`` still
    rejects malformed syntax and fields but returns structurally broken
    automata, so the validate command can report their problems.
    """
    obj = _load_json(text)
    if not isinstance(obj, dict):
        raise DocumentError("document root must be an object")
    kind = obj.get("kind")
    if kind not in AUTOMATON_KINDS:
        raise DocumentError(f"kind must be one of {AUTOMATON_KINDS}, got {kind!r}")
    with_output = kind in ("dfao", "ddfao")
    with_rules = kind in ("ddfa", "ddfao")
    allowed = {"kind", "states", "alphabet", "start", "transitions", "valuation"}
    required = {"kind", "states", "alphabet", "start", "transitions"}
    allowed |= {"output"} if with_output else {"accepting"}
    required |= {"output"} if with_output else {"accepting"}
    if with_rules:
        allowed.add("discharge")
        required.add("discharge")
    _check_keys(obj, allowed, required, "document")

    states = _name_list(obj["states"], "states")
    alphabet = _name_list(obj["alphabet"], "alphabet")
    start = obj["start"]
    if not isinstance(start, str):
        raise DocumentError("start: expected a state name")

    if not isinstance(obj["transitions"], list):
        raise DocumentError("transitions: expected a list")
    transition: dict[tuple[str, str], str] = {}
    for i, entry in enumerate(obj["transitions"]):
        where = f"transitions[{i}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        _check_keys(entry, {"from", "symbol", "to"}, {"from", "symbol", "to"}, where)
        key = (entry["from"], entry["symbol"])
        if key in transition:
            raise DocumentError(f"{where}: duplicate transition for {key}")
        transition[key] = entry["to"]

    rules = None
    if with_rules:
        if not isinstance(obj["discharge"], list):
            raise DocumentError("discharge: expected a list")
        current: dict[tuple[str, str], Fraction] = {}
        not_current: dict[tuple[str, str, str], Fraction] = {}
        seen_states: set[str] = set()
        for i, entry in enumerate(obj["discharge"]):
            where = f"discharge[{i}]"
            if not isinstance(entry, dict):
                raise DocumentError(f"{where}: expected an object")
            _check_keys(entry, {"state", "current", "notCurrent"},
                        {"state", "current", "notCurrent"}, where)
            q = entry["state"]
            if q in seen_states:
                raise DocumentError(f"{where}: duplicate discharge entry for state {q}")
            seen_states.add(q)
            if not isinstance(entry["current"], dict):
                raise DocumentError(f"{where}.current: expected an object")
            for s, w in entry["current"].items():
                current[(q, s)] = parse_rational(w, f"{where}.current[{s}]")
            if not isinstance(entry["notCurrent"], dict):
                raise DocumentError(f"{where}.notCurrent: expected an object")
            for s, inner in entry["notCurrent"].items():
                if not isinstance(inner, dict):
                    raise DocumentError(f"{where}.notCurrent[{s}]: expected an object")
                for t, w in inner.items():
                    not_current[(q, s, t)] = parse_rational(
                        w, f"{where}.notCurrent[{s}][{t}]"
                    )
        rules = DischargeRuleSet(current, not_current)

    if with_output:
        if not isinstance(obj["output"], dict):
            raise DocumentError("output: expected an object mapping state to rational")
        output = {
            q: parse_rational(v, f"output[{q}]") for q, v in obj["output"].items()
        }
        values: list[Fraction] = []
        for v in output.values():
            if v not in values:
                values.append(v)
        base = Dfao(states, alphabet, transition, start,
                    tuple(values), output)
    else:
        accepting = frozenset(_name_list(obj["accepting"], "accepting"))
        base = Dfa(states, alphabet, transition, start, accepting)

    if check:
        report = validate_dfa(base)
        if not report.ok:
            raise DocumentError("invalid automaton: " + "; ".join(report.problems))

    automaton = base
    if with_rules:
        automaton = Ddfao(base, rules) if with_output else Ddfa(base, rules)
        if check:
            rule_report = validate_rules(automaton)
            if not rule_report.ok:
                raise DocumentError(
                    "invalid discharge rules: " + "; ".join(rule_report.problems)
                )

    valuation = None
    if "valuation" in obj:
        if not isinstance(obj["valuation"], dict):
            raise DocumentError("valuation: expected an object mapping state to rational")
        valuation = {}
        for q, v in obj["valuation"].items():
            if q not in states:
                raise DocumentError(f"valuation: unknown state {q!r}")
            valuation[q] = parse_rational(v, f"valuation[{q}]")

    return AutomatonDocument(kind, automaton, valuation)


def serialize_document(doc: AutomatonDocument) -> str:
    """Canonical text for an automaton document (stable bytes)."""
    base = underlying(doc.automaton)
    rules = getattr(doc.automaton, "rules", None)
    obj: dict = {
        "kind": doc.kind,
        "states": list(base.states),
        "alphabet": list(base.alphabet),
        "start": base.start,
    }
    if isinstance(base, Dfao):
        obj["output"] = {q: format_rational(base.output[q]) for q in base.states}
    else:
        obj["accepting"] = [q for q in base.states if q in base.accepting]
    obj["transitions"] = [
        {"from": q, "symbol": s, "to": base.transition[(q, s)]}
        for q in base.states
        for s in base.alphabet
    ]
    if rules is not None:
        obj["discharge"] = [
            {
                "state": q,
                "current": {
                    s: format_rational(rules.current[(q, s)]) for s in base.alphabet
                },
                "notCurrent": {
                    s: {
                        t: format_rational(rules.not_current[(q, s, t)])
                        for t in base.alphabet
                        if t != s
                    }
                    for s in base.alphabet
                },
            }
            for q in base.states
        ]
    if doc.valuation is not None:
        obj["valuation"] = {
            q: format_rational(doc.valuation[q]) for q in base.states if q in doc.valuation
        }
    return json.dumps(obj, indent=2) + "\n"


def document_for(automaton, valuation: dict[str, Fraction] | None = None) -> AutomatonDocument:
    return AutomatonDocument(kind_of(automaton), automaton, valuation)


# ---------------------------------------------------------------------------
# relation-spec documents

SPEC_KIND = "quasi-spec"


def parse_spec_document(text: str) -> QuasiRegularitySpec:
    """Parse and validate one relation-spec document."""
    obj = _load_json(text)
    if not isinstance(obj, dict):
        raise DocumentError("document root must be an object")
    if obj.get("kind") != SPEC_KIND:
        raise DocumentError(f"kind must be {SPEC_KIND!r}, got {obj.get('kind')!r}")
    _check_keys(obj, {"kind", "k", "E", "m", "menus"}, {"kind", "k", "E", "m", "menus"},
                "document")
    for name in ("k", "E", "m"):
        if not isinstance(obj[name], int) or isinstance(obj[name], bool):
            raise DocumentError(f"{name}: expected an integer")
    if not isinstance(obj["menus"], list):
        raise DocumentError("menus: expected a list")
    menus: dict[tuple[int, int], RelationMenu] = {}
    for i, entry in enumerate(obj["menus"]):
        where = f"menus[{i}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        _check_keys(entry, {"e", "r", "options"}, {"e", "r", "options"}, where)
        e, r = entry["e"], entry["r"]
        if not isinstance(e, int) or not isinstance(r, int):
            raise DocumentError(f"{where}: e and r must be integers")
        if (e, r) in menus:
            raise DocumentError(f"{where}: duplicate menu for level ({e}, {r})")
        if not isinstance(entry["options"], list):
            raise DocumentError(f"{where}.options: expected a list")
        options = []
        for j, opt in enumerate(entry["options"]):
            owhere = f"{where}.options[{j}]"
            if not isinstance(opt, dict):
                raise DocumentError(f"{owhere}: expected an object")
            _check_keys(opt, {"constant", "terms"}, {"constant", "terms"}, owhere)
            if not isinstance(opt["constant"], int) or isinstance(opt["constant"], bool):
                raise DocumentError(f"{owhere}.constant: expected an integer")
            if not isinstance(opt["terms"], list):
                raise DocumentError(f"{owhere}.terms: expected a list")
            terms = []
            for t, term in enumerate(opt["terms"]):
                twhere = f"{owhere}.terms[{t}]"
                if not isinstance(term, dict):
                    raise DocumentError(f"{twhere}: expected an object")
                _check_keys(term, {"coeff", "f", "b"}, {"coeff", "f", "b"}, twhere)
                for name in ("coeff", "f", "b"):
                    if not isinstance(term[name], int) or isinstance(term[name], bool):
                        raise DocumentError(f"{twhere}.{name}: expected an integer")
                terms.append(RelationTerm(term["coeff"], term["f"], term["b"]))
            options.append(AffineCombination(opt["constant"], tuple(terms)))
        menus[(e, r)] = RelationMenu(e, r, tuple(options))
    spec = QuasiRegularitySpec(obj["k"], obj["E"], obj["m"], menus)
    try:
        validate_spec(spec)
    except SpecError as exc:
        raise DocumentError(f"invalid spec: {exc}") from None
    return spec


def serialize_spec_document(spec: QuasiRegularitySpec) -> str:
    """Canonical text for a relation-spec document."""
    obj = {
        "kind": SPEC_KIND,
        "k": spec.k,
        "E": spec.E,
        "m": spec.m,
        "menus": [
            {
                "e": e,
                "r": r,
                "options": [
                    {
                        "constant": opt.constant,
                        "terms": [
                            {"coeff": t.coeff, "f": t.f, "b": t.b} for t in opt.terms
                        ],
                    }
                    for opt in spec.menus[(e, r)].options
                ],
            }
            for (e, r) in sorted(spec.menus)
        ],
    }
    return json.dumps(obj, indent=2) + "\n"
