"""Exact arithmetic in the finite field GF(p^r).

Elements are residue vectors with respect to the power basis 1, t, ..., t^(r-1)
of GF(p)[t] modulo a monic irreducible polynomial.  Internally an element is a
single integer index in [0, q): the base-p digits of the index are the
coordinates, so index 0 is the zero element and index 1 is the identity.  For
small fields (q <= 512) all arithmetic is table driven.
"""

from __future__ import annotations

from functools import lru_cache

TABLE_LIMIT = 512


class FieldMismatchError(ValueError):
    """Raised when operands belong to different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mul_mod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_rem(a, m, p):
    # a, m lists of residues, m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    del a[dm:]
    return a

def _poly_is_irreducible(m, p):
    """Trial division of the monic polynomial m by all lower-degree monics."""
    r = len(m) - 1
    if r == 1:
        return True
    for d in range(1, r // 2 + 1):
        for idx in range(p ** d):
            div = [0] * (d + 1)
            k, v = 0, idx
            while v:
                div[k] = v % p
                v //= p
                k += 1
            div[d] = 1
            rem = _poly_rem(m, div, p)
            if not any(rem):
                return False
    return True


def _smallest_irreducible(p, r):
    """Lexicographically smallest monic irreducible of degree r over GF(p).

    Candidate constant-through-top coefficient vectors are compared
    low-degree-first, which is exactly the base-p counter order below.
    """
    if r == 1:
        return (0, 1)
    for idx in range(p ** r):
        m = [0] * (r + 1)
        k, v = 0, idx
        while v:
            m[k] = v % p
            v //= p
            k += 1
        m[r] = 1
        if _poly_is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


class FieldSpec:
    """The field GF(p^r) with a pinned modulus.

    Immutable; two FieldSpec objects compare equal when (p, r, modulus)
    agree, and scalars of equal fields interoperate.
    """

    def __init__(self, p: int, r: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if r < 1:
            raise ValueError(f"r = {r} must be positive")
        self.p = p
        self.r = r
        self.q = p ** r
        if modulus is None:
            modulus = _smallest_irreducible(p, r)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != r + 1 or modulus[r] != 1:
                raise ValueError("modulus must be monic of degree r")
            if r > 1 and not _poly_is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible")
        self.modulus = modulus
        self._mul_table = None
        self._inv_table = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- index-level arithmetic (used by the polynomial layer) --

    def _digits(self, i):
        out = [0] * self.r
        for k in range(self.r):
            out[k] = i % self.p
            i //= self.p
        return out

    def _index(self, digits):
        i = 0
        for c in reversed(digits):
            i = i * self.p + (c % self.p)
        return i

    def _build_tables(self):
        p, q, r = self.p, self.q, self.r
        mod = list(self.modulus)
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = self._digits(a)
            for b in range(a, q):
                db = self._digits(b)
                prod = _poly_rem(_poly_mul_mod_p(da, db, p), mod, p) if r > 1 \
                    else [(a * b) % p]
                c = self._index(prod + [0] * (r - len(prod)))
                mul[a][b] = c
                mul[b][a] = c
        self._mul_table = mul
        inv = [0] * q
        for a in range(1, q):
            row = mul[a]
            for b in range(1, q):
                if row[b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.r == 1:
            return (a + b) % p
        s, shift = 0, 1
        while a or b:
            s += ((a % p + b % p) % p) * shift
            a //= p
            b //= p
            shift *= p
        return s

    def neg(self, a: int) -> int:
        p = self.p
        if self.r == 1:
            return (-a) % p
        s, shift = 0, 1
        while a:
            s += ((p - a % p) % p) * shift
            a //= p
            shift *= p
        return s

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        prod = _poly_mul_mod_p(self._digits(a), self._digits(b), self.p)
        return self._index(_poly_rem(prod, list(self.modulus), self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.q - 1
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- scalar objects --

    def zero(self) -> "Scalar":
        return Scalar(self, 0)

    def one(self) -> "Scalar":
        return Scalar(self, 1)

    def scalar(self, value) -> "Scalar":
        """Coerce an int (mod p for prime fields, index otherwise), a
        coefficient list or a text form to a Scalar."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError("scalar from a different field")
            return Scalar(self, value.index)
        if isinstance(value, str):
            return Scalar(self, self.parse_scalar(value))
        if isinstance(value, (list, tuple)):
            if len(value) > self.r:
                raise ValueError("too many coordinates")
            return Scalar(self, self._index(list(value) + [0] * (self.r - len(value))))
        if isinstance(value, int):
            if self.r == 1:
                return Scalar(self, value % self.p)
            if not 0 <= value < self.q:
                raise ValueError(f"index {value} out of range for GF({self.q})")
            return Scalar(self, value)
        raise TypeError(f"cannot coerce {value!r} to GF({self.q})")

    def elements(self):
        return [Scalar(self, i) for i in range(self.q)]

    def primitive_element(self) -> "Scalar":
        """Smallest-index generator of the multiplicative group."""
        target = self.q - 1
        for i in range(1, self.q):
            a, n = i, 1
            while a != 1:
                a = self.mul(a, i)
                n += 1
            if n == target:
                return Scalar(self, i)
        raise AssertionError("no primitive element found")

    def fp_basis(self):
        """The power basis 1, t, ..., t^(r-1) as scalars."""
        return [Scalar(self, self.p ** k) for k in range(self.r)]

    # -- text form --

    def format_scalar(self, a: int) -> str:
        if self.r == 1:
            return str(a)
        digits = self._digits(a)
        parts = []
        for k, c in enumerate(digits):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                v = "t" if k == 1 else f"t^{k}"
                parts.append(v if c == 1 else f"{c}*{v}")
        return "+".join(parts) if parts else "0"

    def parse_scalar(self, text: str) -> int:
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        total = 0
        for part in text.replace("-", "+-").split("+"):
            part = part.strip()
            if not part:
                continue
            sign = 1
            if part.startswith("-"):
                sign, part = -1, part[1:].strip()
            coeff, power = 1, 0
            for factor in part.split("*"):
                factor = factor.strip()
                if factor.startswith("t"):
                    power = 1 if factor == "t" else int(factor[2:])
                elif factor:
                    coeff = int(factor)
            if power >= self.r:
                raise ValueError(f"power t^{power} out of range in {text!r}")
            digit = (sign * coeff) % self.p
            total = self.add(total, digit * self.p ** power)
        return total

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        if self.r == 1:
            return f"GF({self.p})"
        return f"GF({self.q}; {self.format_modulus()})"

    def format_modulus(self) -> str:
        parts = []
        for k, c in enumerate(self.modulus):
            if not c:
                continue
            v = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            parts.append(v if (c == 1 and k > 0) else (str(c) if k == 0 else f"{c}*{v}"))
        return "+".join(parts)


class Scalar:
    """An element of a FieldSpec; immutable and hashable."""

    __slots__ = ("field", "index")

    def __init__(self, field: FieldSpec, index: int):
        self.field = field
        self.index = index

    @property
    def coeffs(self):
        return tuple(self.field._digits(self.index))

    def is_zero(self) -> bool:
        return self.index == 0

    def _match(self, other):
        if isinstance(other, int):
            return self.field.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatchError(
                f"mixed fields GF({self.field.q}) and GF({other.field.q})")
        return other

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.index, other.index))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.index))

    def __sub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.index, other.index))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.index, other.index))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.index, self.field.inv(other.index)))

    def __pow__(self, e):
        return Scalar(self.field, self.field.pow(self.index, e))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.index))

    def frobenius(self) -> "Scalar":
        """The p-power map a -> a^p."""
        return Scalar(self.field, self.field.frobenius(self.index))

    def __eq__(self, other):
        if isinstance(other, int):
            try:
                other = self.field.scalar(other)
            except ValueError:
                return NotImplemented
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.index == other.index

    def __hash__(self):
        return hash((self.index, self.field.q, self.field.modulus))

    def __repr__(self):
        return self.field.format_scalar(self.index)


@lru_cache(maxsize=None)
def _cached_field(p, r, modulus):
    return FieldSpec(p, r, modulus)


def build_field(p: int, r: int = 1, modulus=None) -> FieldSpec:
    """GF(p^r) with the lex-smallest irreducible modulus unless one is given."""
    if modulus is not None:
        modulus = tuple(modulus)
    return _cached_field(p, r, modulus)


def enumerate_field(field: FieldSpec):
    """All q elements, zero first, one second, in coordinate order."""
    return field.elements()


def frobenius(a: Scalar) -> Scalar:
    return a.frobenius()
