"""Game models: alphabet, sender types, prior, and per-type utility tables.

A model file is a UTF-8 JSON document with exactly these fields:

    alphabet   list of symbol labels (at least 2, unique)
    types      list of sender type labels (at least 1, unique)
    prior      map type label -> rational ("p/q" or integer string, or JSON int)
    utility    map type label -> row-major matrix of rationals where entry
               [i][j] is the one-letter payoff for reporting symbol i when
               the true symbol is j

All arithmetic is exact: priors and payoffs are `fractions.Fraction`, never
floats. Length-n payoffs average the per-letter payoffs; comparisons are done
on common-denominator integer sums so no precision is ever lost.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

DEFAULT_ENUMERATION_BUDGET = 10**6

HONEST = "honest"
OTHER = "other"

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")

_MODEL_FIELDS = ("alphabet", "types", "prior", "utility")


class ModelError(ValueError):
    """A model document or model datum violates the format contract."""


class ModelSyntaxError(ModelError):
    """Malformed document; carries the 1-based position of the defect."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class BudgetExceededError(RuntimeError):
    """A requested computation is larger than the configured budget."""

    def __init__(self, what: str, requested: int, budget: int):
        super().__init__(f"{what}: requested {requested} exceeds budget {budget}")
        self.what = what
        self.requested = requested
        self.budget = budget


def _parse_rational(value: object, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ModelError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ModelError(f"{where}: {value!r} is not an integer or p/q rational")
        num, _, den = text.partition("/")
        if den:
            if int(den) == 0:
                raise ModelError(f"{where}: zero denominator in {value!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    raise ModelError(f"{where}: expected an integer or p/q string, got {type(value).__name__}")


@dataclass(frozen=True)
class Model:
    """Immutable game description. Construct via `Model.from_tables` or `parse_model`."""

    alphabet: tuple[str, ...]  # symbol labels; symbol ids are indices into this
    types: tuple[str, ...]  # sender type labels; type ids are indices
    prior: tuple[Fraction, ...]  # probability of each type, sums to exactly 1
    utility: tuple[tuple[tuple[Fraction, ...], ...], ...]  # [type][report][truth]

    def __post_init__(self) -> None:
        if len(self.alphabet) < 2:
            raise ModelError("alphabet must contain at least 2 symbols")
        if not self.types:
            raise ModelError("at least one sender type is required")
        for name, labels in (("alphabet", self.alphabet), ("types", self.types)):
            seen: set[str] = set()
            for label in labels:
                if not isinstance(label, str) or not label:
                    raise ModelError(f"{name}: labels must be nonempty strings")
                if label in seen:
                    raise ModelError(f"{name}: duplicate label {label!r}")
                seen.add(label)
        if len(self.prior) != len(self.types):
            raise ModelError("prior must assign a probability to every type")
        for label, p in zip(self.types, self.prior):
            if p < 0:
                raise ModelError(f"prior[{label!r}] is negative")
        total = sum(self.prior, Fraction(0))
        if total != 1:
            raise ModelError(f"prior not normalized: sum is {total}")
        k = len(self.alphabet)
        if len(self.utility) != len(self.types):
            raise ModelError("utility must provide a table for every type")
        for label, table in zip(self.types, self.utility):
            if len(table) != k or any(len(row) != k for row in table):
                raise ModelError(f"utility[{label!r}]: expected a {k}x{k} matrix")

    @classmethod
    def from_tables(
        cls,
        alphabet: list[str] | tuple[str, ...],
        types: list[str] | tuple[str, ...],
        prior: dict[str, object] | list[object],
        utility: dict[str, object] | list[object],
    ) -> Model:
        """Build a model from plain tables, coercing entries to exact rationals.

        `prior` and `utility` may be keyed by type label or given as lists in
        type order.
        """
        types_t = tuple(types)
        if isinstance(prior, dict):
            missing = [t for t in types_t if t not in prior]
            if missing:
                raise ModelError(f"prior: missing entry for type {missing[0]!r}")
            extra = [t for t in prior if t not in types_t]
            if extra:
                raise ModelError(f"prior: unknown type {extra[0]!r}")
            prior_seq: list[object] = [prior[t] for t in types_t]
        else:
            prior_seq = list(prior)
        if isinstance(utility, dict):
            missing = [t for t in types_t if t not in utility]
            if missing:
                raise ModelError(f"utility: missing table for type {missing[0]!r}")
            extra = [t for t in utility if t not in types_t]
            if extra:
                raise ModelError(f"utility: unknown type {extra[0]!r}")
            utility_seq: list[object] = [utility[t] for t in types_t]
        else:
            utility_seq = list(utility)

        prior_t = tuple(
            _parse_rational(p, f"prior[{label!r}]") for label, p in zip(types_t, prior_seq)
        )
        k = len(alphabet)
        tables = []
        for label, table in zip(types_t, utility_seq):
            if not isinstance(table, (list, tuple)) or len(table) != k:
                raise ModelError(f"utility[{label!r}]: expected {k} rows")
            rows = []
            for i, row in enumerate(table):
                if not isinstance(row, (list, tuple)) or len(row) != k:
                    raise ModelError(f"utility[{label!r}] row {i}: expected {k} entries")
                rows.append(
                    tuple(
                        _parse_rational(entry, f"utility[{label!r}][{i}][{j}]")
                        for j, entry in enumerate(row)
                    )
                )
            tables.append(tuple(rows))
        return cls(tuple(alphabet), types_t, prior_t, tuple(tables))

    # ------------------------------------------------------------------
    # lookups

    @property
    def num_symbols(self) -> int:
        return len(self.alphabet)

    @property
    def num_types(self) -> int:
        return len(self.types)

    def symbol_index(self, label: str) -> int:
        try:
            return self.alphabet.index(label)
        except ValueError:
            raise ModelError(f"unknown symbol label {label!r}") from None

    def type_index(self, label: str) -> int:
        try:
            return self.types.index(label)
        except ValueError:
            raise ModelError(f"unknown type label {label!r}") from None

    @cached_property
    def scaled_utility(self) -> tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]:
        """Per type: (scale, integer table) with table[i][j] == utility[i][j] * scale.

        Lets every length-n payoff comparison run on plain integer sums.
        """
        out = []
        for table in self.utility:
            scale = math.lcm(*(entry.denominator for row in table for entry in row))
            int_table = tuple(
                tuple(int(entry * scale) for entry in row) for row in table
            )
            out.append((scale, int_table))
        return tuple(out)


# ----------------------------------------------------------------------
# parsing and serialization


def parse_model(text: str) -> Model:
    """Parse a model document. Raises ModelSyntaxError / ModelError on defects."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(f"not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    missing = [f for f in _MODEL_FIELDS if f not in doc]
    if missing:
        raise ModelError(f"missing field {missing[0]!r}")
    unknown = [f for f in doc if f not in _MODEL_FIELDS]
    if unknown:
        raise ModelError(f"unknown field {unknown[0]!r}")
    alphabet = doc["alphabet"]
    types = doc["types"]
    if not isinstance(alphabet, list) or not all(isinstance(s, str) for s in alphabet):
        raise ModelError("alphabet must be a list of strings")
    if not isinstance(types, list) or not all(isinstance(s, str) for s in types):
        raise ModelError("types must be a list of strings")
    if not isinstance(doc["prior"], dict):
        raise ModelError("prior must be a map from type label to rational")
    if not isinstance(doc["utility"], dict):
        raise ModelError("utility must be a map from type label to matrix")
    return Model.from_tables(alphabet, types, doc["prior"], doc["utility"])


def serialize_model(model: Model) -> str:
    """Canonical document for a model: parse(serialize(m)) == m, byte-stable."""
    doc = {
        "alphabet": list(model.alphabet),
        "types": list(model.types),
        "prior": {t: str(p) for t, p in zip(model.types, model.prior)},
        "utility": {
            t: [[str(entry) for entry in row] for row in table]
            for t, table in zip(model.types, model.utility)
        },
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


EXAMPLE1_TEXT = """\
{
  "alphabet": ["0", "1", "2"],
  "types": ["h", "d"],
  "prior": {"h": "1/3", "d": "2/3"},
  "utility": {
    "h": [
      ["1", "0", "0"],
      ["0", "1", "0"],
      ["0", "0", "1"]
    ],
    "d": [
      ["1", "2", "1"],
      ["2", "1", "1"],
      ["0", "0", "0"]
    ]
  }
}
"""


def example_model() -> Model:
    """Built-in three-symbol fixture with one honest and one deceptive type."""
    return parse_model(EXAMPLE1_TEXT)


# ----------------------------------------------------------------------
# sequences and payoffs

Seq = tuple[int, ...]


def enumerate_sequences(
    model: Model, n: int, *, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> list[Seq]:
    """All length-n symbol-id sequences in lexicographic order."""
    if n < 1:
        raise ValueError(f"sequence length must be >= 1, got {n}")
    count = model.num_symbols**n
    if count > budget:
        raise BudgetExceededError("sequence enumeration", count, budget)
    return list(itertools.product(range(model.num_symbols), repeat=n))


def sequence_index(model: Model, seq: Seq) -> int:
    """Rank of `seq` in lexicographic order (mixed-radix value)."""
    k = model.num_symbols
    idx = 0
    for s in seq:
        idx = idx * k + s
    return idx


def format_sequence(model: Model, seq: Seq) -> str:
    labels = [model.alphabet[s] for s in seq]
    if all(len(lab) == 1 for lab in model.alphabet):
        return "".join(labels)
    return ",".join(labels)


def _check_sequence(model: Model, seq: Seq, name: str) -> None:
    if len(seq) < 1:
        raise ValueError(f"{name}: sequences must have length >= 1")
    k = model.num_symbols
    for s in seq:
        if not 0 <= s < k:
            raise ValueError(f"{name}: symbol id {s} out of range")


def scaled_sequence_utility(model: Model, type_id: int, reported: Seq, truth: Seq) -> int:
    """Integer payoff sum over letters; exact value is this over n * scale."""
    _, table = model.scaled_utility[type_id]
    return sum(table[r][t] for r, t in zip(reported, truth))


def sequence_utility(model: Model, type_id: int, reported: Seq, truth: Seq) -> Fraction:
    """Average per-letter payoff for reporting `reported` when `truth` holds."""
    if len(reported) != len(truth):
        raise ValueError(
            f"reported and truth lengths differ: {len(reported)} vs {len(truth)}"
        )
    _check_sequence(model, reported, "reported")
    _check_sequence(model, truth, "truth")
    if not 0 <= type_id < model.num_types:
        raise ValueError(f"type id {type_id} out of range")
    scale, _ = model.scaled_utility[type_id]
    total = scaled_sequence_utility(model, type_id, reported, truth)
    return Fraction(total, len(truth) * scale)


def classify_type(model: Model, type_id: int) -> str:
    """HONEST when truth-telling strictly beats every lie for every true symbol.

    Honesty of the one-letter table lifts to all lengths: a sum of strict
    winners strictly wins.
    """
    table = model.utility[type_id]
    k = model.num_symbols
    for truth in range(k):
        diag = table[truth][truth]
        for report in range(k):
            if report != truth and table[report][truth] >= diag:
                return OTHER
    return HONEST
