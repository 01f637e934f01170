"""Small exact linear algebra over Q (Fractions) and over F2 (int bitsets)."""

from fractions import Fraction


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def mat_mul(a, b):
    bt = transpose(b)
    out = []
    for row in a:
        out.append(tuple(_dot(row, col) for col in bt))
    return tuple(out)


def _dot(u, v):
    it = iter(zip(u, v))
    x, y = next(it)
    s = x * y
    for x, y in it:
        s = s + x * y
    return s


def mat_vec(m, v):
    return tuple(_dot(row, v) for row in m)


def freeze(m):
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def det(m):
    a = [list(row) for row in m]
    n = len(a)
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = -d
        d *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return d


def inverse(m):
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        f = a[k][k]
        a[k] = [x / f for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                g = a[i][k]
                a[i] = [x - g * y for x, y in zip(a[i], a[k])]
    return tuple(tuple(row[n:]) for row in a)


def nullspace(rows, ncols):
    """Basis of {x : A x = 0} over Q, A given as a list of rows."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        f = a[r][c]
        a[r] = [x / f for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                g = a[i][c]
                a[i] = [x - g * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -a[i][fc]
        basis.append(x)
    return basis


# ---------------------------------------------------------------------------
# F2: vectors are python ints, bit i = coordinate i


class F2Echelon:
    """Incrementally built echelon basis of a subspace of F2^n."""

    def __init__(self):
        self.rows = {}  # leading bit -> row

    def reduce(self, v):
        while v:
            top = v.bit_length() - 1
            row = self.rows.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v):
        v = self.reduce(v)
        if v:
            self.rows[v.bit_length() - 1] = v
            return True
        return False

    @property
    def rank(self):
        return len(self.rows)


def f2_rank(vectors):
    e = F2Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def f2_solve(columns, target):
    """
    Solve sum_{j in S} columns[j] = target over F2.

    Returns the set S as a sorted list, or None when target is outside the span.
    Each echelon row carries the mask of columns it was built from.
    """
    rows = {}
    for j, col in enumerate(columns):
        v, m = col, 1 << j
        while v:
            top = v.bit_length() - 1
            if top not in rows:
                rows[top] = (v, m)
                break
            rv, rm = rows[top]
            v ^= rv
            m ^= rm
    v, m = target, 0
    while v:
        top = v.bit_length() - 1
        if top not in rows:
            return None
        rv, rm = rows[top]
        v ^= rv
        m ^= rm
    return [j for j in range(len(columns)) if m >> j & 1]
