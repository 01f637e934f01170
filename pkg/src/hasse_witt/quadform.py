"""
Nondegenerate symmetric bilinear forms over Q and their classical invariants.

w1 is the discriminant square class; w2 uses the total Stiefel-Whitney
expansion w(<a>) = 1 + (a), so w2(<a_1..a_n>) = sum_{i<j} (a_i) ∪ (a_j).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from hasse_witt.arith import as_rational, hilbert_symbol, squarefree_part
from hasse_witt.galois_coh import BrauerClass, SquareClass, br_add, cup, relevant_places
from hasse_witt.linalg import det, identity, mat_mul, transpose


class SingularFormError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    gram: tuple

    def __post_init__(self):
        g = tuple(tuple(as_rational(x) for x in row) for row in self.gram)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square and nonempty")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix is not symmetric")
        if det(g) == 0:
            raise SingularFormError("singular Gram matrix")
        object.__setattr__(self, "gram", g)

    @classmethod
    def diagonal(cls, entries):
        entries = [as_rational(a) for a in entries]
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    @property
    def dim(self):
        return len(self.gram)

    def det(self):
        return det(self.gram)

    def bilinear(self, u, v):
        g = self.gram
        s = 0
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if g[i][j]:
                        s = s + ui * g[i][j] * vj
        return s

    def __call__(self, v):
        return self.bilinear(v, v)

    def transform(self, p):
        """The form with Gram matrix P^T G P."""
        return QuadraticForm(mat_mul(mat_mul(transpose(p), self.gram), p))

    def is_diagonal(self):
        n = self.dim
        return all(self.gram[i][j] == 0 for i in range(n) for j in range(n) if i != j)

    def as_diagonal(self):
        if not self.is_diagonal():
            raise ValueError("form is not diagonal")
        return DiagonalForm(tuple(self.gram[i][i] for i in range(self.dim)))

    def __str__(self):
        if self.is_diagonal():
            return str(self.as_diagonal())
        return "[" + ", ".join("[" + ",".join(str(x) for x in row) + "]" for row in self.gram) + "]"


@dataclass(frozen=True)
class DiagonalForm:
    entries: tuple

    def __post_init__(self):
        e = tuple(as_rational(a) for a in self.entries)
        if not e:
            raise ValueError("empty form")
        if any(a == 0 for a in e):
            raise SingularFormError("diagonal entries must be nonzero")
        object.__setattr__(self, "entries", e)

    @property
    def dim(self):
        return len(self.entries)

    def to_form(self):
        return QuadraticForm.diagonal(self.entries)

    def __call__(self, v):
        return sum((a * x * x for a, x in zip(self.entries, v)), 0)

    def __str__(self):
        return "⟨" + ",".join(str(a) for a in self.entries) + "⟩"


def standard_form(n):
    return DiagonalForm((1,) * n)


def _as_form(q):
    if isinstance(q, DiagonalForm):
        return q.to_form()
    if isinstance(q, QuadraticForm):
        return q
    raise TypeError("expected a QuadraticForm or DiagonalForm")


def _entries(q):
    if isinstance(q, DiagonalForm):
        return q.entries
    return diagonalize(q)[0].entries


PIVOTS = ("largest", "first", "last")



def diagonalize(q, pivot="largest"):
    """
    Return (DiagonalForm, P) with P^T G P diagonal.

    ``pivot`` picks among nonzero diagonal entries of the remaining block:
    largest magnitude (default), first, or last.  An all-zero diagonal is
    repaired by e_i -> e_i + e_j on the first pair with G[i][j] != 0.
    """
    q = _as_form(q)
    if pivot not in PIVOTS:
        raise ValueError("unknown pivot strategy %r" % pivot)
    n = q.dim
    remaining = [list(row) for row in identity(n)]
    chosen, entries = [], []
    while remaining:
        diag = [q(u) for u in remaining]
        cands = [i for i, d in enumerate(diag) if d != 0]
        if not cands:
            i, j = next(
                (i, j)
                for i in range(len(remaining))
                for j in range(i + 1, len(remaining))
                if q.bilinear(remaining[i], remaining[j]) != 0
            )
            remaining[i] = [x + y for x, y in zip(remaining[i], remaining[j])]
            k = i
        elif pivot == "largest":
            k = max(cands, key=lambda i: (abs(diag[i]), -i))
        elif pivot == "first":
            k = cands[0]
        else:
            k = cands[-1]
        w = remaining.pop(k)
        qw = q(w)
        new = []
        for u in remaining:
            c = q.bilinear(u, w) / qw
            new.append([x - c * y for x, y in zip(u, w)] if c else u)
        remaining = new
        chosen.append(w)
        entries.append(qw)
    p = transpose(tuple(tuple(v) for v in chosen))
    return DiagonalForm(tuple(entries)), p


def w1(q):
    if isinstance(q, DiagonalForm):
        out = SquareClass(1)
        for a in q.entries:
            out = out * SquareClass.of(a)
        return out
    return SquareClass.of(_as_form(q).det())


def w2(q):
    entries = [SquareClass.of(a) for a in _entries(q)]
    out = BrauerClass()
    for a, b in combinations(entries, 2):
        out = br_add(out, cup(a, b))
    return out


def signature(q):
    e = _entries(q)
    pos = sum(1 for a in e if a > 0)
    return pos, len(e) - pos


@dataclass(frozen=True)
class LocalData:
    rank: int
    w1: SquareClass
    signature: tuple
    hasse: dict = field(compare=False, hash=False)

    @property
    def negative_places(self):
        return frozenset(v for v, s in self.hasse.items() if s == -1)

    def key(self):
        return self.rank, self.w1, self.signature, self.negative_places

    def __eq__(self, other):
        return isinstance(other, LocalData) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def local_data(q, pivot="largest"):
    """Rank, w1, real signature and Hasse signs prod_{i<j} (a_i, a_j)_v."""
    e = diagonalize(q, pivot)[0].entries if not isinstance(q, DiagonalForm) else q.entries
    # symbols only see square classes
    e = [squarefree_part(a) for a in e]
    support = relevant_places(*e)
    hasse = {}
    for v in support:
        s = 1
        for a, b in combinations(e, 2):
            s *= hilbert_symbol(a, b, v)
        hasse[v] = s
    pos = sum(1 for a in e if a > 0)
    return LocalData(len(e), w1(DiagonalForm(e)), (pos, len(e) - pos), hasse)


def is_equivalent(q, r):
    """Isometry over Q, decided by Hasse-Minkowski."""
    return local_data(q) == local_data(r)


def direct_sum(q, r):
    g, h = _as_form(q).gram, _as_form(r).gram
    n, m = len(g), len(h)
    z = Fraction(0)
    rows = [tuple(row) + (z,) * m for row in g] + [(z,) * n + tuple(row) for row in h]
    return QuadraticForm(tuple(rows))


def scale(q, c):
    c = as_rational(c)
    if c == 0:
        raise ValueError("scale factor must be nonzero")
    return QuadraticForm(tuple(tuple(c * x for x in row) for row in _as_form(q).gram))
