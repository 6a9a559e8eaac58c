"""Sparse multivariate polynomials over QQ or GF(p).

A :class:`MultiPoly` is an immutable map from exponent tuples to nonzero
coefficients.  Terms are kept in graded reverse-lexicographic order
(``x0 > x1 > ... > xn``), which is also the printing order, so ``str`` is
canonical and round-trips through :func:`parse_poly`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from math import lcm

from .fields import QQ, DomainError, Field, GF, PrimeField
from .linalg import Matrix, ShapeError, mat_det


class NonHomogeneousError(ValueError):
    pass


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def grevlex_key(exp):
    """Sort key; ascending key order is descending grevlex order."""
    return (-sum(exp), tuple(exp[::-1]))


def _mono_str(exp) -> str:
    parts = []
    for i, e in enumerate(exp):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


class MultiPoly:
    __slots__ = ("nvars", "field", "terms", "_hash")

    def __init__(self, nvars: int, terms=None, field: Field = QQ):
        self.nvars = nvars
        self.field = field
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ShapeError(f"exponent {exp} has length != {nvars}")
            c = field.check(c)
            if not field.is_zero(c):
                clean[exp] = c
        self.terms = dict(sorted(clean.items(), key=lambda t: grevlex_key(t[0])))
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, nvars, terms, field):
        """Trusted constructor: *terms* already canonical and zero-free."""
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.field = field
        obj.terms = dict(sorted(terms.items(), key=lambda t: grevlex_key(t[0])))
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, nvars: int, c, field: Field = QQ) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: field.convert(c)}, field)

    @classmethod
    def var(cls, nvars: int, i: int, field: Field = QQ) -> MultiPoly:
        if not 0 <= i < nvars:
            raise IndexError(f"variable x{i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): field.one}, field)

    @classmethod
    def monomial(cls, exp, field: Field = QQ, coeff=1) -> MultiPoly:
        return cls(len(exp), {tuple(exp): field.convert(coeff)}, field)

    @classmethod
    def from_coefficients(cls, monomials, coeffs, field: Field = QQ) -> MultiPoly:
        """Combine a monomial list with a matching coefficient vector."""
        nvars = len(monomials[0]) if monomials else 0
        return cls(nvars, dict(zip(monomials, coeffs)), field)

    @classmethod
    def parse(cls, text: str, nvars: int, field: Field = QQ) -> MultiPoly:
        return parse_poly(text, nvars, field)

    # -- basic protocol ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.field, tuple(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.field
        out = []
        for k, (exp, c) in enumerate(self.terms.items()):
            mono = _mono_str(exp)
            neg = isinstance(F, type(QQ)) and c < 0
            mag = -c if neg else c
            if k == 0:
                sign = ""
                if neg:
                    coeff = F.to_str(c)
                    out.append(f"{coeff}*{mono}" if mono else coeff)
                    continue
            else:
                sign = " - " if neg else " + "
            if not mono:
                body = F.to_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{F.to_str(mag)}*{mono}"
            out.append(sign + body)
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, nvars={self.nvars}, field={self.field!r})"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise DomainError(f"mixed domains {self.field} and {other.field}")
            if other.nvars != self.nvars:
                raise ShapeError("variable counts differ")
            return other
        return MultiPoly.constant(self.nvars, other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = F.add(terms.get(exp, F.zero), c)
            if F.is_zero(s):
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return MultiPoly._raw(self.nvars, terms, F)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly._raw(self.nvars, {e: F.neg(c) for e, c in self.terms.items()}, F)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> MultiPoly:
        F = self.field
        c = F.convert(c)
        if F.is_zero(c):
            return MultiPoly(self.nvars, {}, F)
        return MultiPoly._raw(self.nvars, {e: F.mul(v, c) for e, v in self.terms.items()}, F)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        F = self.field
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = F.add(terms.get(e, F.zero), F.mul(c1, c2))
        return MultiPoly._raw(self.nvars, {e: c for e, c in terms.items() if not F.is_zero(c)}, F)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure --------------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self):
        """Common total degree of all terms, or ``None`` if not homogeneous.

        The zero polynomial is homogeneous of every degree; ``None`` is
        returned for it as well since no single degree is meaningful.
        """
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def _require_homogeneous(self) -> int:
        a = self.homogeneous_degree()
        if a is None:
            raise NonHomogeneousError(f"{self} is not a nonzero homogeneous form")
        return a

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.field.zero)

    def coefficient_vector(self, monomials):
        """Coefficients along *monomials*; raises if a term falls outside it."""
        idx = set(map(tuple, monomials))
        extra = [e for e in self.terms if e not in idx]
        if extra:
            raise ValueError(f"terms {extra} not in the given monomial list")
        return tuple(self.coefficient(m) for m in monomials)

    # -- calculus and evaluation -----------------------------------------

    def partial(self, i: int) -> MultiPoly:
        if not 0 <= i < self.nvars:
            raise IndexError(f"no variable x{i} among {self.nvars}")
        F = self.field
        terms = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k == 0:
                continue
            v = F.mul(c, F.convert(k))
            if F.is_zero(v):
                continue
            e = list(exp)
            e[i] = k - 1
            terms[tuple(e)] = v
        return MultiPoly._raw(self.nvars, terms, F)

    def gradient(self):
        return [self.partial(i) for i in range(self.nvars)]

    def eval(self, pt):
        if len(pt) != self.nvars:
            raise ShapeError(f"point of length {len(pt)} for {self.nvars} variables")
        F = self.field
        pt = [F.check(v) for v in pt]
        if isinstance(F, PrimeField):
            p = F.p
            total = 0
            for exp, c in self.terms.items():
                t = c
                for v, e in zip(pt, exp):
                    if e:
                        t = t * pow(v, e, p) % p
                total += t
            return total % p
        total = Fraction(0)
        for exp, c in self.terms.items():
            t = c
            for v, e in zip(pt, exp):
                if e:
                    t *= v**e
            total += t
        return total

    __call__ = eval

    def euler_check(self):
        """Euler's identity ``sum x_i dp/dx_i == deg * p``.

        Returns ``None`` ("inapplicable") over GF(p) when p divides the
        degree, where the identity holds trivially as ``0 == 0`` and carries
        no information.
        """
        a = self._require_homogeneous()
        F = self.field
        if isinstance(F, PrimeField) and a % F.p == 0:
            return None
        lhs = MultiPoly(self.nvars, {}, F)
        for i in range(self.nvars):
            lhs = lhs + MultiPoly.var(self.nvars, i, F) * self.partial(i)
        return lhs == self.scale(a)

    # -- substitutions ----------------------------------------------------

    def substitute(self, images) -> MultiPoly:
        """Replace x_i by the polynomial ``images[i]`` (all over one ring)."""
        if len(images) != self.nvars:
            raise ShapeError("need one image per variable")
        F = self.field
        target_nvars = images[0].nvars if images else 0
        result = MultiPoly(target_nvars, {}, F)
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        for exp, c in self.terms.items():
            t = MultiPoly.constant(target_nvars, c, F)
            for i, e in enumerate(exp):
                if e:
                    t = t * power(i, e)
            result = result + t
        return result

    def linear_change(self, t: Matrix) -> MultiPoly:
        """The form ``x -> p(t x)``; *t* must be square and invertible."""
        n = self.nvars
        if t.shape != (n, n):
            raise ShapeError(f"transform must be {n}x{n}, got {t.shape}")
        if t.field != self.field:
            raise DomainError("transform and polynomial live in different fields")
        if self.field.is_zero(mat_det(t)):
            raise InvalidTransformError("singular coordinate change")
        F = self.field
        images = [
            MultiPoly(n, {tuple(1 if k == j else 0 for k in range(n)): t[i, j] for j in range(n)}, F)
            for i in range(n)
        ]
        return self.substitute(images)

    def dehomogenize(self, i: int) -> MultiPoly:
        """``p / x_i^a`` in the affine coordinates ``y_j = x_j / x_i``, ``j != i``.

        The result has ``nvars - 1`` variables, numbered by the remaining
        homogeneous indices in increasing order.
        """
        self._require_homogeneous()
        if not 0 <= i < self.nvars:
            raise IndexError(f"chart {i} out of range")
        terms = {exp[:i] + exp[i + 1:]: c for exp, c in self.terms.items()}
        return MultiPoly._raw(self.nvars - 1, terms, self.field)

    def homogenize(self, i: int, degree: int) -> MultiPoly:
        """Inverse of :meth:`dehomogenize`: insert x_i to reach *degree*."""
        terms = {}
        for exp, c in self.terms.items():
            k = degree - sum(exp)
            if k < 0:
                raise ValueError(f"term of degree {sum(exp)} exceeds {degree}")
            terms[exp[:i] + (k,) + exp[i:]] = c
        return MultiPoly._raw(self.nvars + 1, terms, self.field)

    # -- change of field --------------------------------------------------

    def reduce_mod(self, p: int) -> MultiPoly:
        """Image over GF(p) of a rational form, after clearing denominators.

        Raises :class:`DomainError` if p divides the common denominator.
        """
        F = GF(p)
        if self.field == F:
            return self
        if self.field != QQ:
            raise DomainError(f"cannot reduce a form over {self.field} mod {p}")
        den = lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1
        if den % p == 0:
            raise DomainError(f"prime {p} divides the denominator {den}")
        return MultiPoly(self.nvars, {e: int(c * den) % p for e, c in self.terms.items()}, F)


class InvalidTransformError(ValueError):
    pass


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total *degree* in *nvars* variables, grevlex-descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, key=grevlex_key)


# -- parser -------------------------------------------------------------
#
#   expr   := term (('+'|'-') term)*
#   term   := coeff ('*' factor)* | factor ('*' factor)*
#   factor := var ('^' uint)?
#   var    := 'x' uint
#   coeff  := int | int '/' uint

class _Parser:
    def __init__(self, text: str, nvars: int, field: Field):
        self.text = text
        self.nvars = nvars
        self.field = field
        self.pos = 0

    def error(self, msg, pos=None):
        raise PolySyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected unsigned integer")
        return int(self.text[start:self.pos])

    def signed_int(self) -> int:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            if not self.peek().isdigit():
                self.error("expected digits after sign")
        return sign * self.uint()

    def expr(self) -> MultiPoly:
        result = self.term()
        while True:
            ch = self.peek()
            if ch in ("+", "-"):
                self.pos += 1
                t = self.term()
                result = result + t if ch == "+" else result - t
            elif ch == "":
                return result
            else:
                self.error(f"unexpected {ch!r}")

    def term(self) -> MultiPoly:
        ch = self.peek()
        F = self.field
        if ch.isdigit() or ch in "+-":
            start = self.pos
            num = self.signed_int()
            if self.peek() == "/":
                self.pos += 1
                den_pos = self.pos
                den = self.uint()
                if den == 0:
                    self.error("zero denominator", den_pos)
                if F != QQ:
                    self.error(f"rational coefficient not allowed over {F}", start)
                c = F.convert(Fraction(num, den))
            else:
                c = F.convert(num)
            result = MultiPoly.constant(self.nvars, c, F)
        elif ch == "x":
            result = self.factor()
        else:
            self.error("expected coefficient or variable")
        while self.peek() == "*":
            self.pos += 1
            result = result * self.factor()
        return result

    def factor(self) -> MultiPoly:
        start = self.pos
        self.eat("x")
        idx = self.uint()
        if idx >= self.nvars:
            self.error(f"unknown variable x{idx} (nvars={self.nvars})", start)
        e = 1
        if self.peek() == "^":
            self.pos += 1
            e = self.uint()
        exp = [0] * self.nvars
        exp[idx] = e
        return MultiPoly(self.nvars, {tuple(exp): self.field.one}, self.field)


def parse_poly(text: str, nvars: int, field: Field = QQ) -> MultiPoly:
    """Parse *text* per the grammar above; errors carry the offending position."""
    parser = _Parser(text, nvars, field)
    if parser.peek() == "":
        parser.error("empty expression")
    return parser.expr()


def infer_nvars(text: str) -> int:
    """One more than the largest variable index appearing in *text*."""
    idx = [int(m) for m in re.findall(r"x\s*(\d+)", text)]
    return max(idx) + 1 if idx else 1
