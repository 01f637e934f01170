"""
H^n(G, F2) for n <= 2 via normalized bar cochains, trivial action.

Groups are multiplication tables over indices 0..|G|-1.  A normalized
n-cochain vanishes whenever an argument is the identity; its coordinates
are the tuples of non-identity elements, which also fixes the bit layout
used for F2 linear algebra.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
import json

from hasse_witt.galois_coh import BrauerClass, SquareClass, br_add, cup
from hasse_witt.linalg import F2Echelon, f2_solve

MAX_ORDER = 64


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple
    identity: int = 0
    names: tuple = None

    def __post_init__(self):
        t = tuple(tuple(row) for row in self.table)
        n = len(t)
        if not 0 < n <= MAX_ORDER:
            raise ValueError("group order must be in 1..%d" % MAX_ORDER)
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in t):
            raise ValueError("malformed multiplication table")
        e = self.identity
        if any(t[e][g] != g or t[g][e] != g for g in range(n)):
            raise ValueError("%d is not an identity" % e)
        for g in range(n):
            if e not in t[g]:
                raise ValueError("element %d has no inverse" % g)
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError("table is not associative")
        object.__setattr__(self, "table", t)

    @property
    def order(self):
        return len(self.table)

    def mul(self, a, b):
        return self.table[a][b]

    def nonidentity(self):
        return [g for g in range(self.order) if g != self.identity]

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(self.order))

    # built-ins -----------------------------------------------------------

    @classmethod
    def cyclic(cls, n):
        return cls(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))

    @classmethod
    def elementary_abelian(cls, k):
        """(Z/2)^k with element index = bitmask, so generator i is 1 << i."""
        return _elementary_abelian(k)

    @classmethod
    def dihedral(cls, m):
        """Symmetries of the m-gon, order 2m: index r + m*s for rot^r ref^s."""
        if 2 * m > 16:
            raise ValueError("built-in dihedral groups have order <= 16")

        def mul(x, y):
            r1, s1 = x % m, x // m
            r2, s2 = y % m, y // m
            r = (r1 + (-r2 if s1 else r2)) % m
            return r + m * (s1 ^ s2)

        n = 2 * m
        return cls(tuple(tuple(mul(a, b) for b in range(n)) for a in range(n)))

    @classmethod
    def direct_product(cls, g, h):
        n, m = g.order, h.order
        t = tuple(
            tuple(g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(n * m)) for a in range(n * m)
        )
        return cls(t, g.identity * m + h.identity)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(tuple(tuple(row) for row in data["table"]), data.get("identity", 0))


@lru_cache(maxsize=None)
def _elementary_abelian(k):
    n = 1 << k
    return FiniteGroup(tuple(tuple(a ^ b for b in range(n)) for a in range(n)))


def odd_order_groups(limit=15):
    """Every group of odd order up to ``limit`` (<= 15), up to isomorphism."""
    if limit > 15:
        raise ValueError("classification table stops at 15")
    out = []
    for n in range(1, limit + 1, 2):
        out.append(("Z/%d" % n, FiniteGroup.cyclic(n)))
        if n == 9:
            out.append(("Z/3 x Z/3", FiniteGroup.direct_product(FiniteGroup.cyclic(3), FiniteGroup.cyclic(3))))
    return out


# ---------------------------------------------------------------------------
# cochains


@dataclass(frozen=True)
class F2Cochain:
    """A normalized cochain, stored as the set of argument tuples where it is 1."""

    group: FiniteGroup
    degree: int
    support: frozenset = frozenset()

    def __post_init__(self):
        if self.degree not in (0, 1, 2, 3):
            raise ValueError("degrees 0..3 only")
        e = self.group.identity
        supp = frozenset(tuple(a) for a in self.support)
        for args in supp:
            if len(args) != self.degree:
                raise ValueError("argument tuple of wrong length")
            if e in args:
                raise ValueError("cochain is not normalized")
        object.__setattr__(self, "support", supp)

    @classmethod
    def from_function(cls, group, degree, f, normalize=True):
        """
        Build from f: G^degree -> {0, 1}.  Degree-2 cocycles with f(1,1) = 1
        are normalized by adding the coboundary of the constant 1-cochain.
        """
        e = group.identity
        shift = 0
        if normalize and degree == 2:
            shift = f(e, e) % 2
        supp = []
        for args in product(range(group.order), repeat=degree):
            if e in args:
                continue
            if (f(*args) + shift) % 2:
                supp.append(args)
        return cls(group, degree, frozenset(supp))

    def __call__(self, *args):
        return 1 if tuple(args) in self.support else 0

    def __add__(self, other):
        if other.group != self.group or other.degree != self.degree:
            raise ValueError("mismatched cochains")
        return F2Cochain(self.group, self.degree, self.support ^ other.support)

    def is_zero(self):
        return not self.support

    # bit layout ------------------------------------------------------------

    def to_bits(self):
        return _to_bits(self.group, self.degree, self.support)

    @classmethod
    def from_bits(cls, group, degree, bits):
        coords = _coords(group, degree)
        return cls(group, degree, frozenset(c for i, c in enumerate(coords) if bits >> i & 1))


def _coords(group, degree):
    return list(product(group.nonidentity(), repeat=degree))


def _to_bits(group, degree, support):
    nz = group.nonidentity()
    pos = {g: i for i, g in enumerate(nz)}
    m = len(nz)
    bits = 0
    for args in support:
        idx = 0
        for a in args:
            idx = idx * m + pos[a]
        bits |= 1 << idx
    return bits


def _coboundary_support(group, degree, f):
    t = group.table
    nz = group.nonidentity()
    out = []
    if degree == 0:
        return out
    if degree == 1:
        for g, h in product(nz, repeat=2):
            if (f(h) + f(t[g][h]) + f(g)) % 2:
                out.append((g, h))
        return out
    for g, h, k in product(nz, repeat=3):
        if (f(h, k) + f(t[g][h], k) + f(g, t[h][k]) + f(g, h)) % 2:
            out.append((g, h, k))
    return out


def coboundary(f):
    """Bar differential over F2 with trivial action (degree 0 or 1 input)."""
    if f.degree >= 2:
        raise ValueError("coboundary is provided for degrees 0 and 1")
    return F2Cochain(f.group, f.degree + 1, frozenset(_coboundary_support(f.group, f.degree, f)))


def is_cocycle(f):
    if f.degree == 0:
        return True
    return not _coboundary_support(f.group, f.degree, f)


def _delta_columns(group, degree):
    """Images under d of the basis cochains of normalized C^degree, as bitsets."""
    t, e = group.table, group.identity
    nz = group.nonidentity()
    m = len(nz)
    pos = {g: i for i, g in enumerate(nz)}
    cols = [0] * (m**degree)

    def toggle(args, bit):
        if e in args:
            return
        idx = 0
        for a in args:
            idx = idx * m + pos[a]
        cols[idx] ^= 1 << bit

    bit = 0
    if degree == 1:
        for g, h in product(nz, repeat=2):
            for args in ((h,), (t[g][h],), (g,)):
                toggle(args, bit)
            bit += 1
    elif degree == 2:
        for g, h, k in product(nz, repeat=3):
            for args in ((h, k), (t[g][h], k), (g, t[h][k]), (g, h)):
                toggle(args, bit)
            bit += 1
    else:
        raise ValueError("degree 1 or 2")
    return cols


def _rank(vectors):
    e = F2Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def cohomology_dim(group, n):
    """dim_F2 H^n(G, F2) for n in {0, 1, 2}."""
    if n == 0:
        return 1
    if n not in (1, 2):
        raise ValueError("only degrees 0, 1, 2")
    m = group.order - 1
    rank_d1 = _rank(_delta_columns(group, 1))
    z1 = m - rank_d1
    if n == 1:
        return z1
    z2 = m * m - _rank(_delta_columns(group, 2))
    return z2 - rank_d1


# ---------------------------------------------------------------------------
# elementary abelian 2-groups


def character(i):
    """x_i: (Z/2)^k -> F2, the i-th coordinate."""
    return lambda g: g >> i & 1


@lru_cache(maxsize=None)
def cup_basis(k, i, j):
    """β_ij(g, h) = x_i(g) x_j(h) on (Z/2)^k."""
    g = FiniteGroup.elementary_abelian(k)
    return F2Cochain.from_function(g, 2, lambda a, b: (a >> i & 1) & (b >> j & 1))


def basis_pairs(k):
    return [(i, j) for i in range(k) for j in range(i, k)]


@dataclass(frozen=True)
class Decomposition:
    coefficients: dict  # (i, j) with i <= j -> 0/1
    potential: F2Cochain  # f with z = sum λ_ij β_ij + d f

    def resynthesize(self, k):
        out = coboundary(self.potential)
        for (i, j), lam in self.coefficients.items():
            if lam:
                out = out + cup_basis(k, i, j)
        return out


def _rank_of_group(group):
    n = group.order
    k = n.bit_length() - 1
    if 1 << k != n or group != FiniteGroup.elementary_abelian(k):
        raise ValueError("expected the built-in elementary abelian group (index = bitmask)")
    return k


def decompose_cocycle(z):
    """Coefficients λ_ij (i <= j) with z = sum λ_ij x_i ∪ x_j + coboundary."""
    if z.degree != 2:
        raise ValueError("decompose_cocycle takes a 2-cochain")
    if not is_cocycle(z):
        raise ValueError("not a cocycle")
    group = z.group
    k = _rank_of_group(group)
    pairs = basis_pairs(k)
    cols = [cup_basis(k, i, j).to_bits() for i, j in pairs]
    d1 = _delta_columns(group, 1)
    sol = f2_solve(cols + d1, z.to_bits())
    if sol is None:
        raise ArithmeticError("cocycle outside the span of the cup basis")
    chosen = set(sol)
    lam = {p: int(idx in chosen) for idx, p in enumerate(pairs)}
    nz = group.nonidentity()
    f = F2Cochain(group, 1, frozenset((nz[j - len(pairs)],) for j in chosen if j >= len(pairs)))
    return Decomposition(lam, f)


def inflate_to_brauer(coefficients, radicands):
    """sum over λ_ij = 1 of (r_i) ∪ (r_j)."""
    out = BrauerClass()
    for (i, j), lam in sorted(coefficients.items()):
        if lam:
            out = br_add(out, cup(SquareClass(radicands[i]), SquareClass(radicands[j])))
    return out
