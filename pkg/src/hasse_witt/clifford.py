"""
Clifford algebras of diagonal forms over multiquadratic fields.

Basis blades are bitmasks S of {0..n-1}; e_S = e_{i_1} ... e_{i_r} with
i_1 < ... < i_r.  Relations: e_i^2 = a_i, e_i e_j = -e_j e_i.  The norm is
N(x) = x x^t with t the reversal anti-involution, so N(v) = q(v) on vectors.
The Pin group acts on vectors by r_q(x)(v) = ε x v x^{-1}, ε the parity sign.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from hasse_witt.arith import as_rational, squarefree_part
from hasse_witt.multiquad import RATIONALS, FieldElement, adjoin, embed, galois_act

MAX_RANK = 8


class UnsupportedSplittingField(ValueError):
    """A reflection norm is not rational, so its square root is out of reach."""


def _popcount(x):
    return bin(x).count("1")


@lru_cache(maxsize=None)
def _reorder_sign(s, t):
    # sign of moving the generators of e_T past those of e_S
    swaps = 0
    tt = t
    j = 0
    while tt:
        if tt & 1:
            swaps += _popcount(s >> (j + 1))
        tt >>= 1
        j += 1
    return -1 if swaps % 2 else 1


def _reverse_sign(s):
    r = _popcount(s)
    return -1 if (r * (r - 1) // 2) % 2 else 1


class CliffordElement:
    __slots__ = ("form", "field", "coeffs")

    def __init__(self, form, field, coeffs):
        form = tuple(as_rational(a) for a in form)
        if not 0 < len(form) <= MAX_RANK:
            raise ValueError("Clifford algebras of rank 1..%d only" % MAX_RANK)
        if any(a == 0 for a in form):
            raise ValueError("degenerate diagonal form")
        self.form = form
        self.field = field
        out = {}
        for s, c in coeffs.items():
            c = field(c) if not isinstance(c, FieldElement) else c
            if c.field != field:
                raise ValueError("coefficient over %s, expected %s" % (c.field, field))
            if s < 0 or s >> len(form):
                raise ValueError("blade index out of range")
            if c:
                out[s] = c
        self.coeffs = out

    # construction -------------------------------------------------------

    @classmethod
    def scalar(cls, form, field, c=1):
        return cls(form, field, {0: c})

    @classmethod
    def vector(cls, form, field, v):
        return cls(form, field, {1 << i: x for i, x in enumerate(v)})

    @classmethod
    def basis(cls, form, field, i):
        return cls(form, field, {1 << i: 1})

    def _like(self, coeffs):
        return CliffordElement(self.form, self.field, coeffs)

    @property
    def n(self):
        return len(self.form)

    # ring structure -----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, CliffordElement):
            raise TypeError("expected a CliffordElement")
        if other.form != self.form or other.field != self.field:
            raise ValueError("mismatched Clifford algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out[s] + c if s in out else c
        return self._like(out)

    def __neg__(self):
        return self._like({s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return cl_mul(self, other)
        c = self.field(other)
        return self._like({s: x * c for s, x in self.coeffs.items()})

    def __rmul__(self, other):
        c = self.field(other)
        return self._like({s: c * x for s, x in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.form == other.form and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.form, self.field, frozenset(self.coeffs.items())))

    # structure maps ------------------------------------------------------

    def reverse(self):
        return self._like({s: c if _reverse_sign(s) > 0 else -c for s, c in self.coeffs.items()})

    def grade_involution(self):
        return self._like({s: -c if _popcount(s) % 2 else c for s, c in self.coeffs.items()})

    def even_part(self):
        return self._like({s: c for s, c in self.coeffs.items() if _popcount(s) % 2 == 0})

    def odd_part(self):
        return self._like({s: c for s, c in self.coeffs.items() if _popcount(s) % 2})

    def parity(self):
        """+1 for even, -1 for odd, None when not homogeneous (or zero)."""
        ps = {_popcount(s) % 2 for s in self.coeffs}
        if len(ps) != 1:
            return None
        return -1 if ps.pop() else 1

    def is_scalar(self):
        return all(s == 0 for s in self.coeffs)

    def scalar_part(self):
        return self.coeffs.get(0, self.field.zero())

    def is_vector(self):
        return all(_popcount(s) == 1 for s in self.coeffs)

    def vector_coords(self):
        if not self.is_vector():
            raise ValueError("not a vector")
        return tuple(self.coeffs.get(1 << i, self.field.zero()) for i in range(self.n))

    def galois(self, g):
        return self._like({s: galois_act(g, c) for s, c in self.coeffs.items()})

    def embed(self, bigger):
        return CliffordElement(self.form, bigger, {s: embed(c, bigger) for s, c in self.coeffs.items()})

    def inverse(self):
        """Inverse of an element of the Clifford group: x^t / N(x)."""
        n = norm_N(self)
        if not n:
            raise ZeroDivisionError("element has zero norm")
        return self.reverse() * (1 / n)

    def canonical_sign(self):
        """±self, normalized so the first nonzero coefficient is positive."""
        if not self.coeffs:
            return self
        first = self.coeffs[min(self.coeffs)]
        return -self if first.leading() < 0 else self

    def __repr__(self):
        return "CliffordElement(%s, %s, %s)" % (self.form, self.field, self)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for s in sorted(self.coeffs):
            blade = "".join("e%d" % (i + 1) for i in range(self.n) if s >> i & 1)
            c = str(self.coeffs[s])
            if not blade:
                parts.append(c)
            elif c == "1":
                parts.append(blade)
            else:
                parts.append("(%s)%s" % (c, blade))
        return " + ".join(parts)


def cl_mul(x, y):
    x._check(y)
    form = x.form
    out = {}
    for s, a in x.coeffs.items():
        for t, b in y.coeffs.items():
            f = _reorder_sign(s, t)
            both = s & t
            i = 0
            while both:
                if both & 1:
                    f *= form[i]
                both >>= 1
                i += 1
            m = s ^ t
            term = a * b * f
            out[m] = out[m] + term if m in out else term
    return x._like(out)


def norm_N(x):
    """N(x) = x x^t, defined when x lies in the Clifford group."""
    n = cl_mul(x, x.reverse())
    if not n.is_scalar():
        raise ValueError("x x^t is not a scalar: %s is not a product of vectors" % x)
    return n.scalar_part()


@dataclass(frozen=True, eq=False)
class PinElement:
    elt: CliffordElement
    parity: int

    def __post_init__(self):
        if self.parity not in (1, -1):
            raise ValueError("parity must be +1 or -1")
        if self.elt.parity() != self.parity:
            raise ValueError("element is not homogeneous of the stated parity")
        if norm_N(self.elt) != 1:
            raise ValueError("Pin elements have norm 1")

    def __mul__(self, other):
        return PinElement(cl_mul(self.elt, other.elt), self.parity * other.parity)

    def __neg__(self):
        return PinElement(-self.elt, self.parity)

    def __eq__(self, other):
        return isinstance(other, PinElement) and self.elt == other.elt

    def __hash__(self):
        return hash(self.elt)

    def inverse(self):
        # N(x) = 1 so x^{-1} = x^t
        return PinElement(self.elt.reverse(), self.parity)

    def galois(self, g):
        return PinElement(self.elt.galois(g), self.parity)

    def embed(self, bigger):
        return PinElement(self.elt.embed(bigger), self.parity)

    @property
    def field(self):
        return self.elt.field

    @property
    def form(self):
        return self.elt.form

    def __str__(self):
        return str(self.elt)


def pin_one(form, field=RATIONALS):
    return PinElement(CliffordElement.scalar(form, field, 1), 1)


def r_q_apply(x, v):
    """ε x v x^{-1} for a vector v (sequence of coordinates)."""
    w = CliffordElement.vector(x.form, x.field, v)
    out = cl_mul(cl_mul(x.elt, w), x.elt.reverse())
    if x.parity < 0:
        out = -out
    return out.vector_coords()


def r_q_matrix(x):
    """Matrix of r_q(x); column j is the image of e_j."""
    f = x.field
    cols = []
    for j in range(len(x.form)):
        e = [f.zero()] * len(x.form)
        e[j] = f.one()
        cols.append(r_q_apply(x, e))
    return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(len(cols)))


# ---------------------------------------------------------------------------
# reflections and Cartan-Dieudonné


def _q(form, v):
    s = 0
    for a, x in zip(form, v):
        if x:
            s = s + a * x * x
    return s


def _b(form, u, v):
    s = 0
    for a, x, y in zip(form, u, v):
        if x and y:
            s = s + a * x * y
    return s


def reflect(form, v, w):
    """τ_v(w) = w - 2 B(v, w)/q(v) v."""
    c = 2 * _b(form, v, w) / _q(form, v)
    return tuple(wi - c * vi for wi, vi in zip(w, v))


def reflection_matrix(form, v):
    n = len(form)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cols.append(reflect(form, v, e))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _rational_norm(form, v):
    qv = _q(form, v)
    if isinstance(qv, FieldElement):
        if not qv.is_rational():
            raise UnsupportedSplittingField("reflection norm %s is not rational" % qv)
        qv = qv.rational()
    qv = as_rational(qv)
    if qv == 0:
        raise ValueError("isotropic vector has no reflection")
    return qv


def lift_reflection(form, v, field=RATIONALS):
    """
    Lift the reflection in v to the odd Pin element v/√q(v).

    Returns (PinElement, field'); field' is ``field`` with √q(v) adjoined
    when needed.
    """
    form = tuple(as_rational(a) for a in form)
    qv = _rational_norm(form, v)
    adj = adjoin(field, qv)
    big = adj.field
    coords = [embed(_lift_entry(x, field), big) for x in v]
    w = CliffordElement.vector(form, big, coords) * (1 / adj.sqrt)
    return PinElement(w.canonical_sign(), -1), big


def cartan_dieudonne(form, m):
    """
    Write an isometry of the diagonal form as a product of reflections.

    Returns vectors v_1..v_r with M = τ_{v_1} ... τ_{v_r}; r <= 2n.
    Columns are processed left to right: u = N e_j is sent to e_j by τ_{u-e_j}
    when q(u - e_j) != 0, else by τ_{e_j} τ_{u+e_j}.
    """
    n = len(form)
    cols = [tuple(m[i][j] for i in range(n)) for j in range(n)]
    refl = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        u = cols[j]
        if all(a == b for a, b in zip(u, e)):
            continue
        d = tuple(a - b for a, b in zip(u, e))
        if _q(form, d) != 0:
            vs = [d]
        else:
            vs = [tuple(a + b for a, b in zip(u, e)), e]
        for v in vs:
            cols = [reflect(form, v, c) for c in cols]
            refl.append(v)
    return refl


def _is_isometry(form, m):
    n = len(form)
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                if m[k][i] and m[k][j]:
                    s = s + m[k][i] * form[k] * m[k][j]
            if s != (form[i] if i == j else 0):
                return False
    return True


def _lift_entry(x, field):
    if isinstance(x, FieldElement) and x.field != field:
        return embed(x, field)
    return field(x)


def _to_field(m, field):
    return tuple(tuple(_lift_entry(x, field) for x in row) for row in m)


def reflection_norms(form, m):
    """Rational norms q(v) of the Cartan-Dieudonné reflections of m."""
    form = tuple(as_rational(a) for a in form)
    return [_rational_norm(form, v) for v in cartan_dieudonne(form, m)]


def lift_isometry(form, m, field=RATIONALS):
    """
    Pin lift of an isometry m of the diagonal form (entries in ``field``).

    Returns (PinElement, field') with r_q(lift) = m; the lift is unique up
    to sign and returned with canonical sign.
    """
    form = tuple(as_rational(a) for a in form)
    m = _to_field(m, field)
    if not _is_isometry(form, m):
        raise ValueError("matrix is not an isometry of %s" % (form,))
    vs = cartan_dieudonne(form, m)
    big = field
    for v in vs:
        big = adjoin(big, _rational_norm(form, v)).field
    return _product_of_lifts(form, vs, big), big


def _product_of_lifts(form, vs, big):
    out = pin_one(form, big)
    for v in vs:
        s, f = lift_reflection(form, v, big)
        assert f == big
        out = out * s
    return PinElement(out.elt.canonical_sign(), out.parity)


def lift_in(form, m, field):
    """Pin lift of m over a field already containing every needed square root."""
    form = tuple(as_rational(a) for a in form)
    vs = cartan_dieudonne(form, _to_field(m, field))
    for v in vs:
        if adjoin(field, _rational_norm(form, v)).extended:
            raise ValueError("%s lacks √%d" % (field, squarefree_part(_rational_norm(form, v))))
    return _product_of_lifts(form, vs, field)


# ---------------------------------------------------------------------------
# graded automorphisms ψ̃_t


@dataclass(frozen=True, eq=False)
class CliffordAutomorphism:
    """x -> s x_even s^{-1} + ε s x_odd s^{-1}."""

    s: PinElement
    eps: int

    def __call__(self, x):
        s, si = self.s.elt, self.s.elt.reverse()
        even = cl_mul(cl_mul(s, x.even_part()), si)
        odd = cl_mul(cl_mul(s, x.odd_part()), si)
        return even + odd if self.eps > 0 else even - odd


def psi_conjugation(s, eps=None):
    """ψ̃_t for an isometry t with Pin lift s; eps = det(t) defaults to s's parity."""
    if eps is None:
        eps = s.parity
    if eps not in (1, -1):
        raise ValueError("eps must be ±1")
    return CliffordAutomorphism(s, eps)


def extend_isometry(form, m, field=RATIONALS):
    """
    The graded algebra map e_S -> t(e_{i_1}) ... t(e_{i_r}) extending t = m.

    Returned as a function on CliffordElements over ``field``.
    """
    form = tuple(as_rational(a) for a in form)
    m = _to_field(m, field)
    n = len(form)
    images = [CliffordElement.vector(form, field, [m[i][j] for i in range(n)]) for j in range(n)]

    def apply(x):
        out = CliffordElement(form, field, {})
        for s, c in x.coeffs.items():
            term = CliffordElement.scalar(form, field, c)
            for i in range(n):
                if s >> i & 1:
                    term = cl_mul(term, images[i])
            out = out + term
        return out

    return apply


def form_of(q):
    """Diagonal entries from a DiagonalForm or a plain sequence."""
    entries = getattr(q, "entries", q)
    return tuple(Fraction(a) if not isinstance(a, Fraction) else a for a in entries)
