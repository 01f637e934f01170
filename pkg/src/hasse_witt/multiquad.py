"""
Multiquadratic fields Q(√r_1, ..., √r_k) and their (Z/2)^k Galois groups.

An element is a sparse map from subsets T of {0..k-1} (bitmasks) to
rationals, standing for sum c_T prod_{i in T} √r_i.  A Galois element is a
bitmask of the square roots it negates.
"""

from dataclasses import dataclass
from fractions import Fraction

from hasse_witt.arith import as_rational, is_square, rational_sqrt, squarefree_part

MAX_RADICANDS = 6


def _popcount(x):
    return bin(x).count("1")


@dataclass(frozen=True)
class MultiQuadField:
    radicands: tuple = ()

    def __post_init__(self):
        rs = tuple(self.radicands)
        for r in rs:
            if isinstance(r, bool) or not isinstance(r, int) or r == 0 or squarefree_part(r) != r:
                raise ValueError("radicand %r is not a nonzero squarefree integer" % (r,))
        if len(rs) > MAX_RADICANDS:
            raise ValueError("at most %d radicands supported" % MAX_RADICANDS)
        for mask in range(1, 1 << len(rs)):
            if is_square(self._subset_product(rs, mask)):
                raise ValueError("radicands %s are not multiplicatively independent" % (rs,))
        object.__setattr__(self, "radicands", rs)

    @staticmethod
    def _subset_product(rs, mask):
        p = 1
        for i, r in enumerate(rs):
            if mask >> i & 1:
                p *= r
        return p

    @property
    def k(self):
        return len(self.radicands)

    @property
    def degree(self):
        return 1 << self.k

    def subset_product(self, mask):
        return self._subset_product(self.radicands, mask)

    def galois_group(self):
        return range(1 << self.k)

    def element(self, coeffs):
        return FieldElement(self, coeffs)

    def __call__(self, x):
        """Embed a rational (or return an element of this field unchanged)."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError("element of another field")
            return x
        return FieldElement(self, {0: as_rational(x)})

    def zero(self):
        return FieldElement(self, {})

    def one(self):
        return FieldElement(self, {0: Fraction(1)})

    def root(self, i):
        """√r_i."""
        return FieldElement(self, {1 << i: Fraction(1)})

    def sqrt(self, c):
        """√c as an element of this field, or None if c is not a square here."""
        c = as_rational(c)
        if c == 0:
            return self.zero()
        for mask in range(1 << self.k):
            m2 = c / self.subset_product(mask)
            if is_square(m2):
                return FieldElement(self, {mask: rational_sqrt(m2)})
        return None

    def __str__(self):
        if not self.radicands:
            return "Q"
        return "Q(" + ",".join("√%d" % r for r in self.radicands) + ")"


RATIONALS = MultiQuadField(())


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = {m: Fraction(c) for m, c in coeffs.items() if c != 0}
        limit = 1 << field.k
        if any(m < 0 or m >= limit for m in self.coeffs):
            raise ValueError("subset index out of range")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mismatched fields %s and %s" % (self.field, other.field))
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return FieldElement(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return field_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return field_mul(self, field_inv(other))

    def __rtruediv__(self, other):
        return field_mul(self._coerce(other), field_inv(self))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def is_rational(self):
        return all(m == 0 for m in self.coeffs)

    def rational(self):
        if not self.is_rational():
            raise ValueError("%s is not rational" % self)
        return self.coeffs.get(0, Fraction(0))

    def sort_key(self):
        return tuple(sorted(self.coeffs.items()))

    def leading(self):
        """Coefficient of the smallest subset in the support."""
        return self.coeffs[min(self.coeffs)] if self.coeffs else Fraction(0)

    def __repr__(self):
        return "FieldElement(%s, %r)" % (self.field, self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs):
            c = self.coeffs[m]
            roots = "·".join("√%d" % r for i, r in enumerate(self.field.radicands) if m >> i & 1)
            if not roots:
                parts.append(str(c))
            elif c == 1:
                parts.append(roots)
            elif c == -1:
                parts.append("-" + roots)
            else:
                parts.append("%s·%s" % (c, roots))
        return " + ".join(parts).replace("+ -", "- ")


def _monomial_factor(field, s, t):
    f = 1
    both = s & t
    i = 0
    while both:
        if both & 1:
            f *= field.radicands[i]
        both >>= 1
        i += 1
    return f


def field_mul(x, y):
    if x.field != y.field:
        raise ValueError("mismatched fields")
    field = x.field
    out = {}
    for s, a in x.coeffs.items():
        for t, b in y.coeffs.items():
            m = s ^ t
            out[m] = out.get(m, 0) + a * b * _monomial_factor(field, s, t)
    return FieldElement(field, out)


def galois_act(g, x):
    """Apply the automorphism negating √r_i for i in the mask g."""
    return FieldElement(x.field, {m: (-c if _popcount(m & g) % 2 else c) for m, c in x.coeffs.items()})


def field_inv(x):
    """Inverse by successive conjugation: x * σ_i(x) no longer involves √r_i."""
    if not x:
        raise ZeroDivisionError("inverse of zero in %s" % x.field)
    y, num = x, x.field.one()
    for i in range(x.field.k):
        c = galois_act(1 << i, y)
        num = field_mul(num, c)
        y = field_mul(y, c)
    n = y.rational()
    return FieldElement(x.field, {m: c / n for m, c in num.coeffs.items()})


def norm(x):
    """Product of all Galois conjugates (a rational)."""
    out = x.field.one()
    for g in x.field.galois_group():
        out = field_mul(out, galois_act(g, x))
    return out.rational()


@dataclass(frozen=True)
class Adjunction:
    field: MultiQuadField
    sqrt: FieldElement  # √d in the (possibly enlarged) field
    extended: bool

    def restrict(self, g):
        """Restriction of a Galois element of the new field to the old one."""
        k_old = self.field.k - (1 if self.extended else 0)
        return g & ((1 << k_old) - 1)


def adjoin(field, d):
    """Adjoin √d, reusing the existing radicands when d is already a square in the field."""
    d = as_rational(d)
    if d == 0:
        raise ValueError("cannot adjoin √0")
    s = field.sqrt(d)
    if s is not None:
        return Adjunction(field, s, False)
    r = squarefree_part(d)
    if field.k >= MAX_RADICANDS:
        raise ValueError("cannot adjoin √%d: radicand cap of %d reached" % (r, MAX_RADICANDS))
    bigger = MultiQuadField(field.radicands + (r,))
    return Adjunction(bigger, bigger.sqrt(d), True)


def embed(x, bigger):
    """View x in a field whose radicand list extends x.field's as a prefix."""
    if bigger.radicands[: x.field.k] != x.field.radicands:
        raise ValueError("%s does not extend %s" % (bigger, x.field))
    return FieldElement(bigger, x.coeffs)


def random_element(field, rng, size=5):
    return FieldElement(
        field, {m: Fraction(rng.randint(-size, size), rng.randint(1, size)) for m in field.galois_group()}
    )


def fixed_by_all(x):
    return all(galois_act(g, x) == x for g in x.field.galois_group())
