"""
Degree <= 2 truncation of A[HW1(q), HW2(q), ...] with A = H*(Spec Q, Z/2).

An element is

    c0 + (c1_A + c1_HW1·HW1) + (c2_A + c2_mix·HW1 + c2_HW1sq·HW1² + c2_HW2·HW2)

with c1_A, c2_mix square classes, c2_A a Brauer class, the rest in F2.
Higher generators never enter a degree <= 2 identity and are not carried.
"""

from dataclasses import dataclass

from hasse_witt.galois_coh import BrauerClass, SquareClass, br_add, cup, sq_mul

ONE_SQ = SquareClass(1)
ZERO_BR = BrauerClass()


def _sq_if(bit, a):
    return a if bit else ONE_SQ


@dataclass(frozen=True)
class UniversalElement:
    c0: int = 0
    c1_A: SquareClass = ONE_SQ
    c1_HW1: int = 0
    c2_A: BrauerClass = ZERO_BR
    c2_mix: SquareClass = ONE_SQ
    c2_HW1sq: int = 0
    c2_HW2: int = 0

    def __post_init__(self):
        for name in ("c0", "c1_HW1", "c2_HW1sq", "c2_HW2"):
            if getattr(self, name) not in (0, 1):
                raise ValueError("%s must be 0 or 1" % name)

    def __add__(self, other):
        return UniversalElement(
            self.c0 ^ other.c0,
            sq_mul(self.c1_A, other.c1_A),
            self.c1_HW1 ^ other.c1_HW1,
            br_add(self.c2_A, other.c2_A),
            sq_mul(self.c2_mix, other.c2_mix),
            self.c2_HW1sq ^ other.c2_HW1sq,
            self.c2_HW2 ^ other.c2_HW2,
        )

    def degree(self, i):
        if i == 0:
            return UniversalElement(c0=self.c0)
        if i == 1:
            return UniversalElement(c1_A=self.c1_A, c1_HW1=self.c1_HW1)
        if i == 2:
            return UniversalElement(c2_A=self.c2_A, c2_mix=self.c2_mix, c2_HW1sq=self.c2_HW1sq, c2_HW2=self.c2_HW2)
        return UniversalElement()

    def __mul__(self, other):
        """Truncated product (characteristic 2, so no signs)."""
        x0, y0 = self.c0, other.c0
        # degree 1 x degree 1
        a, al = self.c1_A, self.c1_HW1
        b, be = other.c1_A, other.c1_HW1
        prod11 = UniversalElement(
            c2_A=cup(a, b),
            c2_mix=sq_mul(_sq_if(al, b), _sq_if(be, a)),
            c2_HW1sq=al & be,
        )
        out = UniversalElement(c0=x0 & y0)
        if x0:
            out = out + other.degree(1) + other.degree(2)
        if y0:
            out = out + self.degree(1) + self.degree(2)
        return out + prod11

    def is_zero(self):
        return self == UniversalElement()

    def __str__(self):
        terms = []
        if self.c0:
            terms.append("1")
        if not self.c1_A.is_trivial():
            terms.append(str(self.c1_A))
        if self.c1_HW1:
            terms.append("HW1")
        if not self.c2_A.is_trivial():
            terms.append(str(self.c2_A))
        if not self.c2_mix.is_trivial():
            terms.append("%s·HW1" % self.c2_mix)
        if self.c2_HW1sq:
            terms.append("HW1²")
        if self.c2_HW2:
            terms.append("HW2")
        return " + ".join(terms) if terms else "0"


HW1 = UniversalElement(c1_HW1=1)
HW2 = UniversalElement(c2_HW2=1)
ONE = UniversalElement(c0=1)


def from_base(a1=ONE_SQ, a2=ZERO_BR, c0=0):
    """Element of A in degrees 0..2."""
    return UniversalElement(c0=c0, c1_A=a1, c2_A=a2)


def scalar_times_hw1(a):
    """a·HW1 for a square class a."""
    return UniversalElement(c2_mix=a)


class TruncatedUnit:
    """1 + a1 + a2 under (1+a1+a2)(1+b1+b2) = 1 + (a1+b1) + (a2+b2+a1 ∪ b1)."""

    __slots__ = ("a1", "a2")

    def __init__(self, a1=UniversalElement(), a2=UniversalElement()):
        if a1 != a1.degree(1) or a2 != a2.degree(2):
            raise ValueError("a1 must be homogeneous of degree 1 and a2 of degree 2")
        self.a1, self.a2 = a1, a2

    @classmethod
    def of(cls, e):
        if e.c0 != 1:
            raise ValueError("units have constant term 1")
        return cls(e.degree(1), e.degree(2))

    def element(self):
        return ONE + self.a1 + self.a2

    def __eq__(self, other):
        return isinstance(other, TruncatedUnit) and self.a1 == other.a1 and self.a2 == other.a2

    def __hash__(self):
        return hash((self.a1, self.a2))

    def __str__(self):
        return str(self.element())


def unit_mul(u, v):
    return TruncatedUnit(u.a1 + v.a1, u.a2 + v.a2 + u.a1 * v.a1)


def unit_inv(u):
    return TruncatedUnit(u.a1, u.a2 + u.a1 * u.a1)


def det_class(w1q):
    """det[q] = w1(q) + HW1(q)."""
    return from_base(w1q) + HW1


def cq_class(w1q, w2q):
    """[C_q] = (w1(q)² + w2(q)) + w1(q)·HW1(q) + HW2(q)."""
    return from_base(a2=br_add(cup(w1q, w1q), w2q)) + scalar_times_hw1(w1q) + HW2


def s_class(w1q, w2q):
    """s_q = 1 + det[q] + [C_q]."""
    return TruncatedUnit(det_class(w1q), cq_class(w1q, w2q))


def check_sq_identity(w1q, w2q):
    """s_q == T_q*(s_n) · Θ_q*(s_n)^{-1} in the truncated unit group."""
    t_sn = TruncatedUnit(HW1, HW2)
    theta_sn = TruncatedUnit(from_base(w1q), from_base(a2=w2q))
    return unit_mul(t_sn, unit_inv(theta_sn)) == s_class(w1q, w2q)


def specialize(e, w1a, w2a):
    """
    Pull back along a torsor α: HW1 -> w1(q_α), HW2 -> w2(q_α).

    Returns (degree-0 bit, degree-1 square class, degree-2 Brauer class).
    """
    deg1 = sq_mul(e.c1_A, _sq_if(e.c1_HW1, w1a))
    deg2 = e.c2_A
    deg2 = br_add(deg2, cup(e.c2_mix, w1a))
    if e.c2_HW1sq:
        deg2 = br_add(deg2, cup(w1a, w1a))
    if e.c2_HW2:
        deg2 = br_add(deg2, w2a)
    return e.c0, deg1, deg2
