"""Sparse multivariate polynomials with exact coefficients.

Variables are plain strings (``VariableKey``). The engine uses

* ``x[<weight encoding>]`` for the semigroup-indexed variables,
* ``g[<edge id>]`` for edge variables,
* bare names (``y``, ``theta``, ``x``, ``u``) for reserved scalar variables.

Coefficients are ``Fraction`` or, when complex edge data is exact,
:class:`~vpoly.weights.GaussianRational`.

Text format: terms in descending graded-lexicographic order, factors inside
a term in ascending key order, e.g. ``x[Z:1]*x[Z:2] + g[e1]*x[Z:3]``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import InexactValue, MissingVariable, PolynomialParseError
from .multigraph import natural_key
from .weights import GaussianRational, as_exact, is_exact, parse_gaussian

__all__ = [
    "Monomial",
    "SparsePolynomial",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_eval",
    "poly_to_text",
    "poly_from_text",
    "xvar",
    "gvar",
]

Monomial = tuple  # tuple[tuple[str, int], ...] sorted by key
Coefficient = Union[Fraction, GaussianRational]


def xvar(weight_key: str) -> str:
    return f"x[{weight_key}]"


def gvar(edge_id: str) -> str:
    return f"g[{edge_id}]"


def _coerce_coeff(c) -> Coefficient:
    if not is_exact(c):
        raise InexactValue(f"polynomial coefficients must be exact, got {c!r}")
    return as_exact(c)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def _var_rank(key: str):
    if key.startswith("x["):
        return (0, natural_key(key))
    if key.startswith("g["):
        return (1, natural_key(key))
    return (2, natural_key(key))


def _term_order(mono: Monomial):
    degree = sum(e for _, e in mono)
    ranked = sorted(((_var_rank(k), -e) for k, e in mono))
    return (-degree, tuple(ranked))


class SparsePolynomial:
    """Immutable polynomial ``{monomial: coefficient}`` with no zero terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Coefficient] = {}
        for mono, c in (terms or {}).items():
            c = _coerce_coeff(c)
            if c:
                clean[tuple(sorted(mono))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SparsePolynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "SparsePolynomial":
        return cls({(): c})

    @classmethod
    def var(cls, key: str, power: int = 1) -> "SparsePolynomial":
        if power < 0:
            raise ValueError("negative exponent")
        return cls({((key, power),) if power else (): 1})

    @classmethod
    def zero(cls) -> "SparsePolynomial":
        return cls._raw({})

    @classmethod
    def one(cls) -> "SparsePolynomial":
        return cls._raw({(): Fraction(1)})

    @property
    def terms(self) -> Mapping[Monomial, Coefficient]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[str]:
        return {k for mono in self._terms for k, _ in mono}

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def ordered_terms(self) -> list[tuple[Monomial, Coefficient]]:
        return sorted(self._terms.items(), key=lambda t: _term_order(t[0]))

    # arithmetic
    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = as_exact(s)
            else:
                out.pop(mono, None)
        return SparsePolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        out: dict[Monomial, Coefficient] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = as_exact(s)
                else:
                    out.pop(m, None)
        return SparsePolynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = SparsePolynomial.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "SparsePolynomial":
        c = _coerce_coeff(c)
        if not c:
            return SparsePolynomial.zero()
        return SparsePolynomial._raw({m: as_exact(v * c) for m, v in self._terms.items()})

    def __eq__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # structural operations
    def divide_by_monomial(self, mono: Mapping[str, int]) -> "SparsePolynomial":
        """Exact division by a monomial; raises ``ValueError`` if some term is not divisible."""
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            for k, e in mono.items():
                left = d.get(k, 0) - e
                if left < 0:
                    raise ValueError(f"term {m!r} not divisible by {dict(mono)!r}")
                if left:
                    d[k] = left
                else:
                    d.pop(k, None)
            out[tuple(sorted(d.items()))] = c
        return SparsePolynomial._raw(out)

    def substitute(self, mapping: Mapping[str, object]) -> "SparsePolynomial":
        """Replace variables by polynomials or exact constants; others stay symbolic."""
        images = {k: _lift_strict(v) for k, v in mapping.items()}
        powers: dict[tuple[str, int], SparsePolynomial] = {}

        def power(key, e):
            if (key, e) not in powers:
                powers[(key, e)] = images[key] ** e
            return powers[(key, e)]

        acc = SparsePolynomial.zero()
        for mono, c in self._terms.items():
            kept = tuple((k, e) for k, e in mono if k not in images)
            term = SparsePolynomial._raw({kept: c})
            for k, e in mono:
                if k in images:
                    term = term * power(k, e)
            acc = acc + term
        return acc

    def evaluate(self, assignment: Mapping[str, complex]) -> complex:
        """Evaluate in complex double; terms summed in canonical order."""
        missing = self.variables() - set(assignment)
        if missing:
            raise MissingVariable(missing)
        total = 0j
        for mono, c in self.ordered_terms():
            value = complex(c)
            for k, e in mono:
                value *= complex(assignment[k]) ** e
            total += value
        return total

    def evaluate_exact(self, assignment: Mapping[str, object]):
        """Exact evaluation at exact values; returns a Fraction or GaussianRational."""
        missing = self.variables() - set(assignment)
        if missing:
            raise MissingVariable(missing)
        result = self.substitute({k: assignment[k] for k in self.variables()})
        return result._terms.get((), Fraction(0))

    # serialization
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for i, (mono, c) in enumerate(self.ordered_terms()):
            factors = [k if e == 1 else f"{k}^{e}" for k, e in mono]
            if isinstance(c, GaussianRational):
                sign, body = "+", [f"({c.encode()})"]
            else:
                sign = "-" if c < 0 else "+"
                a = abs(c)
                body = [] if (a == 1 and factors) else [_frac_text(a)]
            text = "*".join(body + factors)
            if i == 0:
                pieces.append(text if sign == "+" else "-" + text)
            else:
                pieces.append(f" {sign} {text}")
        return "".join(pieces)

    def to_json(self) -> list[dict]:
        out = []
        for mono, c in self.ordered_terms():
            coeff = c.encode() if isinstance(c, GaussianRational) else f"{c.numerator}/{c.denominator}"
            out.append({"coeff": coeff, "vars": {k: e for k, e in mono}})
        return out

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "SparsePolynomial":
        acc = cls.zero()
        for item in data:
            coeff = _parse_coeff(str(item["coeff"]))
            mono = tuple(sorted((k, int(e)) for k, e in item.get("vars", {}).items() if int(e)))
            acc = acc + cls._raw({mono: coeff})
        return acc

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SparsePolynomial({self.to_text()!r})"


def _frac_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _lift(value) -> SparsePolynomial | None:
    if isinstance(value, SparsePolynomial):
        return value
    if is_exact(value):
        return SparsePolynomial.constant(value)
    return None


def _lift_strict(value) -> SparsePolynomial:
    p = _lift(value)
    if p is None:
        raise InexactValue(f"cannot substitute inexact value {value!r}; use evaluate()")
    return p


def _parse_coeff(text: str) -> Coefficient:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if text.endswith("i"):
        return as_exact(parse_gaussian(text))
    try:
        return Fraction(text)
    except ValueError:
        raise PolynomialParseError(f"bad coefficient {text!r}") from None


def _split_top(text: str, seps: tuple[str, ...]) -> list[tuple[str, str]]:
    """Split at separators outside brackets/parentheses; returns ``(sep, chunk)`` pairs."""
    depth = 0
    out, start, sep_before, i = [], 0, "", 0
    while i < len(text):
        ch = text[i]
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif depth == 0:
            for sep in seps:
                if text.startswith(sep, i):
                    out.append((sep_before, text[start:i]))
                    sep_before, start = sep, i + len(sep)
                    i += len(sep) - 1
                    break
        i += 1
    out.append((sep_before, text[start:]))
    return out


def poly_from_text(text: str) -> SparsePolynomial:
    """Parse the output of :meth:`SparsePolynomial.to_text`."""
    text = text.strip()
    if text == "0":
        return SparsePolynomial.zero()
    negate_first = text.startswith("-")
    if negate_first:
        text = text[1:]
    acc: dict[Monomial, Coefficient] = {}
    for idx, (sep, chunk) in enumerate(_split_top(text, (" + ", " - "))):
        sign = -1 if (sep == " - " or (idx == 0 and negate_first)) else 1
        coeff: Coefficient = Fraction(1)
        mono: dict[str, int] = {}
        for j, (_, factor) in enumerate(_split_top(chunk, ("*",))):
            factor = factor.strip()
            if not factor:
                raise PolynomialParseError(f"empty factor in {chunk!r}")
            if j == 0 and (factor[0].isdigit() or factor[0] == "("):
                coeff = _parse_coeff(factor)
                continue
            parts = _split_top(factor, ("^",))
            key = parts[0][1]
            exp = int(parts[1][1]) if len(parts) == 2 else 1
            if len(parts) > 2 or not key:
                raise PolynomialParseError(f"bad factor {factor!r}")
            mono[key] = mono.get(key, 0) + exp
        m = tuple(sorted(mono.items()))
        acc[m] = as_exact(acc.get(m, 0) + coeff * sign)
    return SparsePolynomial(acc)


def poly_add(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    return p + q


def poly_mul(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    return p * q


def poly_scale(p: SparsePolynomial, c) -> SparsePolynomial:
    return p.scale(c)


def poly_eval(p: SparsePolynomial, assignment: Mapping[str, complex]) -> complex:
    return p.evaluate(assignment)


def poly_to_text(p: SparsePolynomial) -> str:
    return p.to_text()


def poly_to_json(p: SparsePolynomial) -> str:
    return json.dumps(p.to_json())
