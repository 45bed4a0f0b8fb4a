"""Sparse multivariate polynomials over GF(q) with the right group action.

Terms are stored as a map from exponent tuples to nonzero coefficient indices
of the underlying field.  The monomial order is graded reverse lexicographic
with respect to the variable order of the space; it fixes serialization,
equality of text forms and the division algorithm.

Powers use the Frobenius shortcut f^(p*e) = frobenius(f)^e, which keeps
q-power exponents (ubiquitous in orbit products and Dickson invariants) cheap
and exact.
"""

from __future__ import annotations

import heapq
from functools import reduce

from modinvar.gfq import FieldMismatchError, FieldSpec, Scalar


class SpaceMismatchError(ValueError):
    """Operands live in different variable spaces."""


class InexactDivisionError(ArithmeticError):
    """exact_divide found a nonzero remainder."""


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class VariableSpace:
    """An ordered tuple of variable names over a fixed field.

    The order is part of equality; it drives the grevlex comparisons and the
    alignment between variables and matrix rows in the group action.
    """

    def __init__(self, field: FieldSpec, names, convention: str = "generic"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        self.field = field
        self.names = names
        self.convention = convention
        self.dim = len(names)
        self._pos = {v: i for i, v in enumerate(names)}

    def position(self, name: str) -> int:
        return self._pos[name]

    def __eq__(self, other):
        return (isinstance(other, VariableSpace)
                and self.field == other.field and self.names == other.names)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"VariableSpace({self.field!r}, {list(self.names)})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.scalar(c)
        if c.index == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.dim: c.index})

    def variable(self, name: str) -> "Polynomial":
        e = [0] * self.dim
        e[self.position(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def variables(self):
        return [self.variable(v) for v in self.names]

    def monomial(self, exponents, coeff=1) -> "Polynomial":
        c = self.field.scalar(coeff)
        if c.index == 0:
            return Polynomial(self, {})
        return Polynomial(self, {tuple(exponents): c.index})

    def linear_form(self, coefficients) -> "LinearForm":
        return LinearForm.from_coefficients(self, coefficients)


def symplectic_space(field: FieldSpec, m: int) -> VariableSpace:
    """Dual variables y1..ym, xm..x1 matching the pinned symplectic basis."""
    names = [f"y{i}" for i in range(1, m + 1)] + [f"x{i}" for i in range(m, 0, -1)]
    return VariableSpace(field, names, convention="symplectic")


def gluing_space(field: FieldSpec, m: int, n: int) -> VariableSpace:
    """Dual variables y1..ym (first factor) then x1..xn (second factor)."""
    names = [f"y{i}" for i in range(1, m + 1)] + [f"x{i}" for i in range(1, n + 1)]
    return VariableSpace(field, names)


def x_space(field: FieldSpec, n: int) -> VariableSpace:
    return VariableSpace(field, [f"x{i}" for i in range(1, n + 1)])


def grevlex_key(exponents):
    """Sort key: ascending order of keys is descending grevlex order."""
    return (-sum(exponents), tuple(exponents[::-1]))


class Polynomial:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("space", "_terms", "_hash")

    def __init__(self, space: VariableSpace, terms: dict):
        self.space = space
        self._terms = terms
        self._hash = None

    # -- inspection --

    @property
    def terms(self):
        """Exponent tuple -> Scalar, a copy in canonical (grevlex) order."""
        f = self.space.field
        return {e: Scalar(f, c) for e, c in self.sorted_terms()}

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda item: grevlex_key(item[0]))

    def coefficient(self, exponents) -> Scalar:
        return Scalar(self.space.field, self._terms.get(tuple(exponents), 0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 is the sentinel degree of the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def leading_term(self):
        """(exponents, Scalar) largest under grevlex; None for zero."""
        if not self._terms:
            return None
        e = min(self._terms, key=grevlex_key)
        return e, Scalar(self.space.field, self._terms[e])

    def variables_used(self):
        used = set()
        for e in self._terms:
            for i, ei in enumerate(e):
                if ei:
                    used.add(self.space.names[i])
        return used

    # -- ring operations --

    def _check(self, other):
        if isinstance(other, (int, Scalar)):
            return self.space.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.space != self.space:
            if other.space.field != self.space.field:
                raise FieldMismatchError("polynomials over different fields")
            raise SpaceMismatchError("polynomials in different variable spaces")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        field = self.space.field
        add = field.add
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = add(out.get(e, 0), c)
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Polynomial(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.space.field.neg
        return Polynomial(self.space, {e: neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        if not a:
            return Polynomial(self.space, {})
        field = self.space.field
        mul, add = field.mul, field.add
        out = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(map(int.__add__, e1, e2))
                s = add(get(e, 0), mul(c1, c2))
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Polynomial(self.space, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = self.space.field.scalar(c)
        if c.index == 0:
            return Polynomial(self.space, {})
        mul = self.space.field.mul
        return Polynomial(self.space, {e: mul(v, c.index) for e, v in self._terms.items()})

    def frobenius(self) -> "Polynomial":
        """f^p, exact in characteristic p: scale exponents, power coefficients."""
        field = self.space.field
        p = field.p
        frob = field.frobenius
        return Polynomial(self.space,
                          {tuple(ei * p for ei in e): frob(c)
                           for e, c in self._terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        if e == 0:
            return self.space.one()
        p = self.space.field.p
        base = self
        while e % p == 0 and e > 0:
            base = base.frobenius()
            e //= p
        out = None
        sq = base
        while e:
            if e & 1:
                out = sq if out is None else out * sq
            e >>= 1
            if e:
                sq = sq * sq
        return out

    # -- division, substitution, evaluation, action --

    def exact_divide(self, g: "Polynomial") -> "Polynomial":
        """h with self = g*h, else InexactDivisionError; ZeroDivisionError on g=0."""
        g = self._check(g)
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        field = self.space.field
        lt_g = min(g._terms, key=grevlex_key)
        c_g_inv = field.inv(g._terms[lt_g])
        rem = dict(self._terms)
        quo = {}
        mul, add, neg = field.mul, field.add, field.neg
        while rem:
            lt = min(rem, key=grevlex_key)
            diff = tuple(map(int.__sub__, lt, lt_g))
            if any(d < 0 for d in diff):
                raise InexactDivisionError(
                    f"leading term {lt} not divisible by {lt_g}")
            c = mul(rem[lt], c_g_inv)
            quo[diff] = c
            for e2, c2 in g._terms.items():
                e = tuple(map(int.__add__, diff, e2))
                s = add(rem.get(e, 0), neg(mul(c, c2)))
                if s:
                    rem[e] = s
                elif e in rem:
                    del rem[e]
        return Polynomial(self.space, quo)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.exact_divide(self)
            return True
        except InexactDivisionError:
            return False

    def substitute(self, assignment: dict) -> "Polynomial":
        """Compose with variable -> Polynomial; unassigned variables map to
        themselves.  Images must live in one common space."""
        space = self.space
        target = None
        images = {}
        for name, img in assignment.items():
            if name not in space._pos:
                raise ValueError(f"unknown variable {name!r}")
            if not isinstance(img, Polynomial):
                img = space.constant(img)
            if target is None:
                target = img.space
            elif img.space != target:
                raise SpaceMismatchError("substitution images in mixed spaces")
            images[space.position(name)] = img
        if target is None:
            target = space
        if target.field != space.field:
            raise FieldMismatchError("substitution into a different field")
        for i, name in enumerate(space.names):
            if i not in images:
                images[i] = target.variable(name)
        return self._compose(target, images)

    def _compose(self, target: VariableSpace, images: dict) -> "Polynomial":
        field = self.space.field
        cache = {}

        def power(i, e):
            key = (i, e)
            got = cache.get(key)
            if got is None:
                got = cache[key] = images[i] ** e
            return got

        acc = target.zero()
        for e, c in self._terms.items():
            factors = [power(i, ei) for i, ei in enumerate(e) if ei]
            term = target.constant(Scalar(field, c))
            for fct in sorted(factors, key=len):
                term = term * fct
            acc = acc + term
        return acc

    def evaluate(self, point) -> Scalar:
        """Value at a point given as scalars (or ints) per variable."""
        field = self.space.field
        vals = [field.scalar(v).index for v in point]
        if len(vals) != self.space.dim:
            raise ValueError("point has wrong length")
        total = 0
        for e, c in self._terms.items():
            v = c
            for i, ei in enumerate(e):
                if ei:
                    v = field.mul(v, field.pow(vals[i], ei))
                    if not v:
                        break
            total = field.add(total, v)
        return Scalar(field, total)

    def act(self, g) -> "Polynomial":
        """Right action by a group element: the variable with coefficient row
        c goes to the linear form with row c.[g]."""
        matrix = getattr(g, "matrix", g)
        n = self.space.dim
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError(
                f"matrix dimension {len(matrix)} does not match {n} variables")
        images = {}
        moved = {}
        for i in range(n):
            row = matrix[i]
            terms = {}
            for j, c in enumerate(row):
                idx = c.index if isinstance(c, Scalar) else int(c)
                if idx:
                    e = [0] * n
                    e[j] = 1
                    terms[tuple(e)] = idx
            img = Polynomial(self.space, terms)
            images[i] = img
            e = [0] * n
            e[i] = 1
            moved[i] = terms != {tuple(e): 1}
        if not any(moved.values()):
            return self
        return self._act_sparse(images, moved)

    def _act_sparse(self, images, moved):
        """Substitution that skips fixed variables (transvection-style
        generators move only a couple of rows)."""
        space = self.space
        field = space.field
        cache = {}

        def power(i, e):
            key = (i, e)
            got = cache.get(key)
            if got is None:
                got = cache[key] = images[i] ** e
            return got

        add, mul = field.add, field.mul
        out = {}
        for e, c in self._terms.items():
            fixed = tuple(ei if not moved[i] else 0 for i, ei in enumerate(e))
            factors = [power(i, ei) for i, ei in enumerate(e) if ei and moved[i]]
            if not factors:
                s = add(out.get(fixed, 0), c)
                if s:
                    out[fixed] = s
                elif fixed in out:
                    del out[fixed]
                continue
            prod = reduce(lambda u, v: u * v, sorted(factors, key=len))
            for e2, c2 in prod._terms.items():
                e3 = tuple(map(int.__add__, fixed, e2))
                s = add(out.get(e3, 0), mul(c, c2))
                if s:
                    out[e3] = s
                elif e3 in out:
                    del out[e3]
        return Polynomial(space, out)

    # -- text and JSON forms --

    def __repr__(self):
        return format_polynomial(self)

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = self.space.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self._terms.items())))
        return self._hash

    def to_json(self):
        field = self.space.field
        return [{"exponents": list(e), "coefficient": field.format_scalar(c)}
                for e, c in self.sorted_terms()]

    @staticmethod
    def from_json(space: VariableSpace, data) -> "Polynomial":
        field = space.field
        out = space.zero()
        for item in data:
            c = field.parse_scalar(item["coefficient"])
            out = out + space.monomial(item["exponents"], Scalar(field, c))
        return out


class LinearForm(Polynomial):
    """Degree <= 1 polynomial with zero constant term."""

    def __init__(self, space, terms):
        for e in terms:
            if sum(e) != 1:
                raise ValueError("linear form terms must have total degree 1")
        super().__init__(space, terms)

    @staticmethod
    def from_coefficients(space: VariableSpace, coefficients) -> "LinearForm":
        field = space.field
        if len(coefficients) != space.dim:
            raise ValueError("coefficient vector has wrong length")
        terms = {}
        for i, c in enumerate(coefficients):
            idx = field.scalar(c).index
            if idx:
                e = [0] * space.dim
                e[i] = 1
                terms[tuple(e)] = idx
        return LinearForm(space, terms)

    @staticmethod
    def from_polynomial(f: Polynomial) -> "LinearForm":
        return LinearForm(f.space, dict(f._terms))

    def coefficients(self):
        field = self.space.field
        out = [field.zero()] * self.space.dim
        for e, c in self._terms.items():
            out[e.index(1)] = Scalar(field, c)
        return out

    def coefficient_indices(self):
        out = [0] * self.space.dim
        for e, c in self._terms.items():
            out[e.index(1)] = c
        return out


def balanced_product(factors, space: VariableSpace) -> Polynomial:
    """Product accumulated smallest-pair-first to bound intermediate sizes."""
    polys = [f for f in factors]
    if not polys:
        return space.one()
    heap = [(len(f), i, f) for i, f in enumerate(polys)]
    heapq.heapify(heap)
    counter = len(polys)
    while len(heap) > 1:
        _, _, a = heapq.heappop(heap)
        _, _, b = heapq.heappop(heap)
        c = a * b
        heapq.heappush(heap, (len(c), counter, c))
        counter += 1
    return heap[0][2]


# -- parsing --

def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    field = f.space.field
    parts = []
    for e, c in f.sorted_terms():
        factors = []
        ctext = field.format_scalar(c)
        is_constant_term = not any(e)
        if c != 1 or is_constant_term:
            if "+" in ctext:
                ctext = f"({ctext})"
            factors.append(ctext)
        for i, ei in enumerate(e):
            if ei == 1:
                factors.append(f.space.names[i])
            elif ei > 1:
                factors.append(f"{f.space.names[i]}^{ei}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def parse_polynomial(space: VariableSpace, text: str) -> Polynomial:
    """Inverse of format_polynomial; also accepts '-' separators."""
    field = space.field
    out = space.zero()
    pos = 0
    n = len(text)

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    if pos == n:
        raise ParseError("empty polynomial text", pos)
    first = True
    while pos < n:
        sign = 1
        pos = skip_ws(pos)
        if not first or (pos < n and text[pos] in "+-"):
            if pos >= n or text[pos] not in "+-":
                raise ParseError("expected '+' or '-'", pos)
            if text[pos] == "-":
                sign = -1
            pos = skip_ws(pos + 1)
        first = False
        coeff = 1
        exps = [0] * space.dim
        saw_factor = False
        while True:
            pos = skip_ws(pos)
            if pos < n and text[pos] == "(":
                close = text.find(")", pos)
                if close < 0:
                    raise ParseError("unbalanced parenthesis", pos)
                coeff = field.mul(coeff, field.parse_scalar(text[pos:close + 1]))
                pos = close + 1
            elif pos < n and (text[pos].isalnum() or text[pos] == "_"):
                start = pos
                while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                    pos += 1
                token = text[start:pos]
                power = 1
                if pos < n and text[pos] == "^":
                    pos += 1
                    pstart = pos
                    while pos < n and text[pos].isdigit():
                        pos += 1
                    if pos == pstart:
                        raise ParseError("expected exponent digits", pos)
                    power = int(text[pstart:pos])
                if token in space._pos:
                    exps[space.position(token)] += power
                elif token == "t" or token.isdigit():
                    base = field.parse_scalar(token)
                    coeff = field.mul(coeff, field.pow(base, power))
                else:
                    raise ParseError(f"unknown symbol {token!r}", start)
            else:
                if not saw_factor:
                    raise ParseError("expected a term", pos)
                break
            saw_factor = True
            pos = skip_ws(pos)
            if pos < n and text[pos] == "*":
                pos += 1
                continue
            break
        if sign < 0:
            coeff = field.neg(coeff)
        out = out + space.monomial(exps, Scalar(field, coeff))
        pos = skip_ws(pos)
    return out


def monomials_of_degree(space: VariableSpace, d: int):
    """All exponent tuples of total degree d, grevlex-descending."""
    n = space.dim

    def rec(remaining, slots):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining, -1, -1):
            for rest in rec(remaining - first, slots - 1):
                yield (first,) + rest

    return sorted(rec(d, n), key=grevlex_key)
