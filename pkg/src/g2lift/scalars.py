"""Exact coefficient arithmetic: the cyclotomic field Q(q), q a primitive
N-th root of unity, extended by formal commuting deformation parameters.

Field elements are flat int tuples ``(den, c0, ..., c_{phi-1})`` holding a
polynomial in q of degree < phi(N) reduced mod the N-th cyclotomic
polynomial, over a positive common denominator with gcd 1.  All arithmetic
is integer arithmetic; no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, ParseError

# Formal deformation parameters, in canonical token order.
PARAMS = ("l1", "l2", "m1", "m2", "m12", "m112", "m1112", "mb")
NPARAMS = len(PARAMS)
PARAM_INDEX = {p: i for i, p in enumerate(PARAMS)}
PAR_ZERO = (0,) * NPARAMS


def _poly_divmod(num, den):
    """Exact division of integer polynomials (lists, ascending powers)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        c //= den[-1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return q


def cyclotomic_poly(n):
    """Coefficients of Phi_n, ascending, via Phi_n = (q^n-1)/prod_{d|n,d<n} Phi_d."""
    if n == 1:
        return [-1, 1]
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divmod(num, cyclotomic_poly(d))
    return num


class QField:
    """Q(q) = Q[q]/Phi_N(q) for a fixed N, with precomputed reduction rows."""

    def __init__(self, N):
        if N <= 3:
            raise ValueError("N must exceed 3")
        self.N = N
        phi_poly = cyclotomic_poly(N)
        self.phi = len(phi_poly) - 1
        d = self.phi
        # reduction rows: q^(d+k) as an int vector of length d, k = 0..d-2
        rows = []
        top = [-c for c in phi_poly[:d]]  # q^d = top
        rows.append(list(top))
        for _ in range(d - 2):
            prev = rows[-1]
            nxt = [0] + prev[:-1]
            carry = prev[-1]
            if carry:
                for j in range(d):
                    nxt[j] += carry * top[j]
            rows.append(nxt)
        self._red = rows
        self.zero = (1,) + (0,) * d
        self.one = self._norm(1, [1] + [0] * (d - 1))

    # -- raw helpers --------------------------------------------------------

    def _reduce_long(self, vec):
        """Reduce an int vector of length <= 2*phi-1 (den=1) to an element."""
        d = self.phi
        out = list(vec[:d]) + [0] * (d - len(vec[:d]))
        for k, c in enumerate(vec[d:]):
            if c:
                row = self._red[k]
                for j in range(d):
                    out[j] += c * row[j]
        return self._norm(1, out)

    def _norm(self, den, nums):
        if den < 0:
            den = -den
            nums = [-c for c in nums]
        g = den
        for c in nums:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            den //= g
            nums = [c // g for c in nums]
        if not any(nums):
            return self.zero
        return (den,) + tuple(nums)

    # -- public element constructors ---------------------------------------

    def from_int(self, k):
        return self._norm(1, [k] + [0] * (self.phi - 1))

    def from_fraction(self, num, den=1):
        return self._norm(den, [num] + [0] * (self.phi - 1))

    def qpow(self, e):
        """q^e, any integer e (reduced mod N since q^N = 1)."""
        e %= self.N
        d = self.phi
        if e < d:
            vec = [0] * d
            vec[e] = 1
            return (1,) + tuple(vec)
        if e - d < len(self._red):
            return self._norm(1, list(self._red[e - d]))
        # N > 2*phi - 2 happens only for highly composite N; multiply out
        out = self._norm(1, list(self._red[-1]))
        q1 = self.qpow(1)
        for _ in range(e - d - len(self._red) + 1):
            out = self.mul(out, q1)
        return out

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        da, db = a[0], b[0]
        if da == db:
            return self._norm(da, [x + y for x, y in zip(a[1:], b[1:])])
        return self._norm(da * db, [x * db + y * da for x, y in zip(a[1:], b[1:])])

    def sub(self, a, b):
        da, db = a[0], b[0]
        if da == db:
            return self._norm(da, [x - y for x, y in zip(a[1:], b[1:])])
        return self._norm(da * db, [x * db - y * da for x, y in zip(a[1:], b[1:])])

    def neg(self, a):
        return (a[0],) + tuple(-c for c in a[1:])

    def mul(self, a, b):
        d = self.phi
        an, bn = a[1:], b[1:]
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        conv[i + j] += x * y
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = self._red[k - d]
                for j in range(d):
                    out[j] += c * row[j]
        return self._norm(a[0] * b[0], out)

    def mul_int(self, a, k):
        if k == 0:
            return self.zero
        return self._norm(a[0], [c * k for c in a[1:]])

    def is_zero(self, a):
        return a == self.zero

    def inv(self, a):
        """Field inverse via Gaussian elimination on the multiplication matrix."""
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero in Q(q)")
        d = self.phi
        cols = []
        for e in range(d):
            vec = [0] * d
            vec[e] = 1
            col = self.mul(a, (1,) + tuple(vec))
            cols.append([Fraction(c, col[0]) for c in col[1:]])
        # solve M x = e0 where M[:,j] = cols[j]
        m = [[cols[j][i] for j in range(d)] + [Fraction(1 if i == 0 else 0)] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            pv = m[col][col]
            m[col] = [x / pv for x in m[col]]
            for r in range(d):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        sol = [m[i][d] for i in range(d)]
        den = 1
        for f in sol:
            den = den * f.denominator // gcd(den, f.denominator)
        return self._norm(den, [int(f * den) for f in sol])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def emit(self, a):
        """Canonical string, q-powers ascending: e.g. '(1-2q^2+q^3)/3'."""
        if self.is_zero(a):
            return "0"
        parts = []
        for e, c in enumerate(a[1:]):
            if c == 0:
                continue
            if e == 0:
                parts.append(f"{c:+d}")
            else:
                mag = f"{c:+d}".replace("+1", "+").replace("-1", "-") if abs(c) == 1 else f"{c:+d}"
                parts.append(f"{mag}q" + (f"^{e}" if e > 1 else ""))
        s = "".join(parts)
        if s.startswith("+"):
            s = s[1:]
        if a[0] != 1:
            s = f"({s})/{a[0]}" if len(parts) > 1 else f"{s}/{a[0]}"
        return s


_FIELDS = {}


def field(N):
    """Shared QField instance for N (immutable, safe to share)."""
    if N not in _FIELDS:
        _FIELDS[N] = QField(N)
    return _FIELDS[N]


class Scalar:
    """Element of Q(q)[l1,l2,m1,m2,m12,m112,m1112,mb]: sparse map from
    parameter exponent tuples to field elements.  Immutable by convention."""

    __slots__ = ("field", "terms")

    def __init__(self, fld, terms=None):
        self.field = fld
        self.terms = {k: v for k, v in (terms or {}).items() if not fld.is_zero(v)}

    @classmethod
    def from_cyc(cls, fld, c):
        return cls(fld, {PAR_ZERO: c})

    @classmethod
    def from_int(cls, fld, k):
        return cls(fld, {PAR_ZERO: fld.from_int(k)})

    @classmethod
    def param(cls, fld, name):
        key = [0] * NPARAMS
        key[PARAM_INDEX[name]] = 1
        return cls(fld, {tuple(key): fld.one})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        f = self.field
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = f.add(out.get(k, f.zero), v)
            if f.is_zero(w):
                out.pop(k, None)
            else:
                out[k] = w
        return Scalar(f, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.field
        return Scalar(f, {k: f.neg(v) for k, v in self.terms.items()})

    def __mul__(self, other):
        f = self.field
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                w = f.mul(v1, v2)
                if k in out:
                    w = f.add(out[k], w)
                if f.is_zero(w):
                    out.pop(k, None)
                else:
                    out[k] = w
        return Scalar(f, out)

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def emit(self):
        """Canonical emission: parameter monomials lexicographic, q ascending."""
        if not self.terms:
            return "0"
        chunks = []
        for key in sorted(self.terms):
            c = self.field.emit(self.terms[key])
            mono = "*".join(
                p if e == 1 else f"{p}^{e}"
                for p, e in zip(PARAMS, key)
                if e
            )
            if mono:
                c = f"({c})*{mono}" if ("+" in c[1:] or "-" in c[1:]) else f"{c}*{mono}"
            chunks.append(c)
        return " + ".join(chunks)

    def __repr__(self):
        return f"Scalar({self.emit()})"


class _Parser:
    """Recursive-descent parser for the canonical scalar grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := atom ['^' int]
    atom   := integer | 'q' | 'q_12' | 'q_21' | param | '(' expr ')'

    Exponents may be negative and may be wrapped in braces ('q^{-3}').
    q_12 / q_21 require a braiding config with q12 = q^a, q21 = q^(-3-a).
    """

    def __init__(self, text, fld, q12_exp=None, q21_exp=None):
        self.text = text
        self.pos = 0
        self.fld = fld
        self.qexps = {"q": 1, "q_12": q12_exp, "q_21": q21_exp,
                      "q_11": 1, "q_22": 3}

    def error(self, msg):
        raise ParseError(f"{msg} at position {self.pos}: {self.text!r}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n":
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self):
        start = self.pos
        if self.peek() in ("+", "-"):
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def take_exponent(self):
        if self.peek() != "^":
            return 1
        self.pos += 1
        if self.peek() == "{":
            self.pos += 1
            e = self.take_int()
            if self.peek() != "}":
                self.error("expected '}'")
            self.pos += 1
            return e
        return self.take_int()

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            v = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return v
        if ch.isdigit():
            return Scalar.from_int(self.fld, self.take_int())
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start:self.pos]
            if name in self.qexps:
                e = self.qexps[name]
                if e is None:
                    self.pos = start
                    self.error(f"token {name} needs a braiding config")
                return ("q", e)  # deferred: exponent applied in factor()
            if name in PARAM_INDEX:
                return Scalar.param(self.fld, name)
            self.pos = start
            self.error(f"unknown token {name!r}")
        self.error("expected atom")

    def factor(self):
        a = self.atom()
        e = self.take_exponent()
        if isinstance(a, tuple):  # q-power token
            return Scalar.from_cyc(self.fld, self.fld.qpow(a[1] * e))
        if e == 1:
            return a
        if e < 0:
            self.error("negative exponent only allowed on q tokens")
        out = Scalar.from_int(self.fld, 1)
        for _ in range(e):
            out = out * a
        return out

    def term(self):
        out = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                out = out * self.factor()
            elif ch == "/":
                self.pos += 1
                den = self.take_int()
                if den == 0:
                    self.error("division by zero")
                out = out * Scalar.from_cyc(self.fld, self.fld.from_fraction(1, den))
            elif ch and (ch.isalnum() or ch == "("):
                out = out * self.factor()
            else:
                return out

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            t = self.term()
            out = out + (-t if sign < 0 else t)
        return out


def parse_scalar(text, fld, q12_exp=None, q21_exp=None):
    """Parse the canonical scalar grammar into a Scalar over fld."""
    p = _Parser(text, fld, q12_exp, q21_exp)
    v = p.expr()
    if p.peek():
        p.error("trailing input")
    return v
