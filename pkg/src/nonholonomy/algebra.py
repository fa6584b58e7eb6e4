"""Exact scalars and sparse polynomials over a named coordinate chart.

Scalars are arbitrary-precision rationals (``fractions.Fraction``), so every
rank decision and independence verdict downstream is exact: equality to zero
is equality, not a tolerance. Polynomials are sparse maps from exponent
tuples to nonzero scalars; the zero polynomial has an empty term map.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import InputError

Scalar = Fraction


def random_rational(rng: random.Random) -> Fraction:
    """A small random rational: numerator in [-9, 9], denominator in {1, 2, 3}."""
    return Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))


class Chart:
    """An ordered tuple of distinct coordinate names.

    Coordinate indices are 1-based everywhere in this package; the chart
    translates between names and indices.
    """

    __slots__ = ("names", "_pos")

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise InputError("a chart needs at least one coordinate")
        if len(set(names)) != len(names):
            raise InputError("coordinate names must be distinct: %r" % (names,))
        self.names = names
        self._pos = {name: i + 1 for i, name in enumerate(names)}

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        """1-based index of a coordinate name."""
        try:
            return self._pos[name]
        except KeyError:
            raise InputError("unknown coordinate %r" % name) from None

    def __contains__(self, name):
        return name in self._pos

    def __eq__(self, other):
        return isinstance(other, Chart) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "Chart(%s)" % ", ".join(self.names)


def _as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise InputError("expected an integer or Fraction, got %r" % (value,))


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    ``terms`` maps an exponent tuple (one entry per chart coordinate) to a
    nonzero Scalar. Instances are treated as immutable; all arithmetic
    returns new objects and zero coefficients are dropped on construction.
    """

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms=None):
        self.chart = chart
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != chart.n:
                    raise InputError(
                        "exponent tuple %r does not match chart of dimension %d"
                        % (exps, chart.n)
                    )
                if any(e < 0 for e in exps):
                    raise InputError("negative exponent in %r" % (exps,))
                coeff = _as_scalar(coeff)
                if coeff:
                    clean[exps] = coeff
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "Polynomial":
        return cls(chart)

    @classmethod
    def constant(cls, chart: Chart, value) -> "Polynomial":
        value = _as_scalar(value)
        if not value:
            return cls(chart)
        return cls(chart, {(0,) * chart.n: value})

    @classmethod
    def coordinate(cls, chart: Chart, name_or_index) -> "Polynomial":
        """The coordinate function x_i as a polynomial."""
        if isinstance(name_or_index, str):
            i = chart.index(name_or_index)
        else:
            i = name_or_index
            if not 1 <= i <= chart.n:
                raise InputError("coordinate index %d out of range 1..%d" % (i, chart.n))
        exps = [0] * chart.n
        exps[i - 1] = 1
        return cls(chart, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, chart: Chart, exps, coeff=1) -> "Polynomial":
        return cls(chart, {tuple(exps): coeff})

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.chart.n}

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (error otherwise)."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise InputError("polynomial %s is not constant" % self)
        return self.terms[(0,) * self.chart.n]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.chart != self.chart:
                raise InputError("polynomials live on different charts")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.chart, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            total = terms.get(exps, 0) + coeff
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        out = Polynomial.__new__(Polynomial)
        out.chart = self.chart
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.chart = self.chart
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                total = terms.get(exps, 0) + c1 * c2
                if total:
                    terms[exps] = total
                else:
                    terms.pop(exps, None)
        out = Polynomial.__new__(Polynomial)
        out.chart = self.chart
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError("polynomial powers take a non-negative integer")
        result = Polynomial.constant(self.chart, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.chart, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- display ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            coeff = self.terms[exps]
            factors = []
            for name, e in zip(self.chart.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            if not factors:
                body = str(coeff)
            elif coeff == 1:
                body = "*".join(factors)
            elif coeff == -1:
                body = "-" + "*".join(factors)
            else:
                body = str(coeff) + "*" + "*".join(factors)
            parts.append(body)
        text = parts[0]
        for part in parts[1:]:
            text += " - " + part[1:] if part.startswith("-") else " + " + part
        return text

    def __repr__(self):
        return "Polynomial(%s)" % self


def poly_eval(p: Polynomial, point) -> Fraction:
    """Evaluate at a point given as a sequence of Scalars in chart order."""
    point = tuple(point)
    if len(point) != p.chart.n:
        raise InputError(
            "point of length %d does not match chart of dimension %d"
            % (len(point), p.chart.n)
        )
    total = Fraction(0)
    for exps, coeff in p.terms.items():
        value = coeff
        for x, e in zip(point, exps):
            if e:
                value *= x ** e
        total += value
    return total


def poly_diff(p: Polynomial, index: int) -> Polynomial:
    """Partial derivative with respect to the coordinate with 1-based index."""
    if not 1 <= index <= p.chart.n:
        raise InputError("coordinate index %d out of range 1..%d" % (index, p.chart.n))
    i = index - 1
    terms = {}
    for exps, coeff in p.terms.items():
        e = exps[i]
        if e:
            lowered = exps[:i] + (e - 1,) + exps[i + 1:]
            terms[lowered] = terms.get(lowered, 0) + coeff * e
    return Polynomial(p.chart, terms)
