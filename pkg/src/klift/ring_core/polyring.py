"""Graded polynomial rings over exact fields."""
from __future__ import annotations

import ast
from functools import lru_cache

from .field import Field

ORDERS = ("grevlex", "deglex", "lex")


class GradedPolyRing:
    """k[x_1..x_n] with positive integer variable degrees."""

    def __init__(self, field: Field, names, degrees=None, order: str = "grevlex"):
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        for nm in names:
            if not nm.isidentifier():
                raise ValueError(f"bad variable name {nm!r}")
        degrees = tuple(1 for _ in names) if degrees is None else tuple(int(d) for d in degrees)
        if len(degrees) != len(names):
            raise ValueError("one degree per variable")
        if any(d < 1 for d in degrees):
            raise ValueError("degrees must be ≥ 1")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.field = field
        self.names = names
        self.degrees = degrees
        self.order = order
        self.nvars = len(names)
        self.zero_exp = (0,) * self.nvars
        w = degrees
        if order == "grevlex":
            def key(e):
                return (sum(a * b for a, b in zip(e, w)), tuple(-a for a in reversed(e)))
        elif order == "deglex":
            def key(e):
                return (sum(a * b for a, b in zip(e, w)), e)
        else:
            def key(e):
                return e
        self.mono_key = lru_cache(maxsize=None)(key)

    # -- identity ---------------------------------------------------------
    def _ident(self):
        return (self.field.characteristic, self.names, self.degrees, self.order)

    def __eq__(self, other):
        return isinstance(other, GradedPolyRing) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        vs = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"{self.field!r}[{vs}]"

    # -- monomials --------------------------------------------------------
    def wdeg(self, exp) -> int:
        return sum(a * b for a, b in zip(exp, self.degrees))

    def monomials(self, d: int):
        """Exponent vectors of weighted degree d, in increasing order."""
        return _monomials(self.degrees, d)

    def var(self, name_or_index) -> "Poly":
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one()})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    def monomial(self, exp, coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring != self:
                raise ValueError("polynomial from a different ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def parse(self, text: str) -> "Poly":
        try:
            tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse polynomial {text!r}") from exc
        return self._eval(tree.body, text)

    def _eval(self, node, text):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return self.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in self.names:
                raise ValueError(f"unknown variable {node.id!r} in {text!r}")
            return self.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand, text)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError(f"exponents must be integer literals in {text!r}")
                return self._eval(node.left, text) ** node.right.value
            a, b = self._eval(node.left, text), self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant() or b.is_zero():
                    raise ValueError(f"can only divide by nonzero constants in {text!r}")
                return a * self.field.inv(b.constant_coeff())
        raise ValueError(f"unsupported syntax in polynomial {text!r}")


@lru_cache(maxsize=None)
def _monomials(weights: tuple, d: int) -> tuple:
    if d < 0:
        return ()
    n = len(weights)
    out = []

    def rec(i, left, cur):
        if i == n - 1:
            if left % weights[i] == 0:
                out.append(tuple(cur + [left // weights[i]]))
            return
        for a in range(left // weights[i] + 1):
            rec(i + 1, left - a * weights[i], cur + [a])

    rec(0, d, [])
    return tuple(sorted(out))


class Poly:
    """Element of a GradedPolyRing, stored as {exponent tuple: coefficient}."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedPolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = f.norm(t.get(e, 0) + c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, {e: f.norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        t = {e: f.norm(c) for e, c in t.items()}
        return Poly(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_exp, self.ring.field.zero())

    def degrees(self) -> set:
        return {self.ring.wdeg(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        """Weighted degree; None for the zero polynomial."""
        ds = self.degrees()
        if not ds:
            return None
        return max(ds)

    def homogeneous_components(self) -> dict:
        out: dict = {}
        for e, c in self.terms.items():
            out.setdefault(self.ring.wdeg(e), {})[e] = c
        return {d: Poly(self.ring, t) for d, t in out.items()}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: self.ring.mono_key(ec[0]), reverse=True)

    def lead(self):
        return self.sorted_terms()[0] if self.terms else None

    def __str__(self):
        return format_terms(self.ring, self.sorted_terms())

    def __repr__(self):
        return f"Poly({self})"


def format_monomial(ring: GradedPolyRing, exp) -> str:
    parts = []
    for n, a in zip(ring.names, exp):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return "*".join(parts)


def format_terms(ring: GradedPolyRing, terms) -> str:
    if not terms:
        return "0"
    out = []
    f = ring.field
    for e, c in terms:
        m = format_monomial(ring, e)
        cs = f.to_str(c)
        if not m:
            out.append(cs)
        elif cs == "1":
            out.append(m)
        elif cs == "-1":
            out.append("-" + m)
        else:
            out.append(f"{cs}*{m}")
    s = " + ".join(out)
    return s.replace("+ -", "- ")

