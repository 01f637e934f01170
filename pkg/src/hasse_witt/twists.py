"""
Galois twists of diagonal forms and the boundary classes δ¹, δ².

Torsors are given by descent data over a multiquadratic field L: a map
c: Gal(L/Q) -> O(q)(L) with c(1) = 1 and c(gh) = c(g) g(c(h)).  The twisted
form lives on {v in L^n : c(g) g(v) = v for all g}.

δ² is computed through the Clifford algebra: each c(g) is lifted to the
Pin group (enlarging L so the needed square roots exist), the ±1-valued
2-cocycle s(g) g(s(h)) s(gh)^{-1} is written in the cup-product basis of
H²((Z/2)^k, F2), and that is read off as a sum of quaternion symbols.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json

from hasse_witt.arith import as_rational, squarefree_part
from hasse_witt.clifford import (
    UnsupportedSplittingField,
    _rational_norm,
    cartan_dieudonne,
    cl_mul,
    lift_in,
)
from hasse_witt.galois_coh import BrauerClass, SquareClass, br_add, cup
from hasse_witt.groupcoh import F2Cochain, FiniteGroup, decompose_cocycle, inflate_to_brauer
from hasse_witt.linalg import identity, nullspace
from hasse_witt.multiquad import FieldElement, MultiQuadField, adjoin, embed, galois_act
from hasse_witt.quadform import DiagonalForm, QuadraticForm, standard_form, w1, w2

__all__ = [
    "Delta2Details",
    "Descent",
    "OrthCocycle",
    "OrthogonalRep",
    "TwistReport",
    "UnsupportedSplittingField",
    "delta1",
    "delta2",
    "delta2_details",
    "descend",
    "quadratic_cocycle",
    "regular_rep_cocycle",
    "rep_to_cocycle",
    "sign_matrix",
    "splitting_field",
    "swap_matrix",
    "trace_form",
    "trivial_cocycle",
    "twist_form",
    "verify_cor62",
]


def _mat_in(m, L):
    out = []
    for row in m:
        r = []
        for x in row:
            if isinstance(x, FieldElement):
                r.append(x if x.field == L else embed(x, L))
            else:
                r.append(L(x))
        out.append(tuple(r))
    return tuple(out)


def _mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), a[0][0].field.zero()) for j in range(n)) for i in range(n)
    )


def _gal_mat(g, m):
    return tuple(tuple(galois_act(g, x) for x in row) for row in m)


def _is_isometry(form, m):
    n = len(form)
    for i in range(n):
        for j in range(n):
            s = sum((m[k][i] * form[k] * m[k][j] for k in range(n)), 0)
            if s != (form[i] if i == j else 0):
                return False
    return True


def _det(m):
    a = [list(row) for row in m]
    n = len(a)
    d = a[0][0].field.one()
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return a[0][0].field.zero()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = -d
        d = d * a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
    return d


class OrthCocycle:
    """Normalized 1-cocycle Gal(L/Q) -> O(q)(L), checked exactly on construction."""

    def __init__(self, field, form, values):
        if not isinstance(form, DiagonalForm):
            form = DiagonalForm(tuple(form))
        self.field = field
        self.form = form
        n = form.dim
        ident = _mat_in(identity(n), field)
        vals = {}
        for g in field.galois_group():
            m = values.get(g)
            vals[g] = ident if m is None else _mat_in(m, field)
        for g, m in vals.items():
            if len(m) != n or any(len(r) != n for r in m):
                raise ValueError("value at %d has the wrong shape" % g)
            if not _is_isometry(form.entries, m):
                raise ValueError("value at %d is not an isometry of %s" % (g, form))
        if vals[0] != ident:
            raise ValueError("cocycle is not normalized: c(1) != 1")
        for g in vals:
            for h in vals:
                if vals[g ^ h] != _mul(vals[g], _gal_mat(g, vals[h])):
                    raise ValueError("cocycle law fails at (%d, %d)" % (g, h))
        self.values = vals

    def __call__(self, g):
        return self.values[g]

    @property
    def n(self):
        return self.form.dim

    def is_trivial(self):
        ident = _mat_in(identity(self.n), self.field)
        return all(m == ident for m in self.values.values())

    def inflate(self, bigger):
        """The same torsor presented over a field whose radicands extend ours."""
        if bigger.radicands[: self.field.k] != self.field.radicands:
            raise ValueError("%s does not extend %s" % (bigger, self.field))
        mask = (1 << self.field.k) - 1
        return OrthCocycle(bigger, self.form, {g: _mat_in(self.values[g & mask], bigger) for g in bigger.galois_group()})

    def conjugate(self, p):
        """The cohomologous cocycle P^{-1} c(g) P for a rational isometry P of q."""
        from hasse_witt.linalg import inverse

        pl = _mat_in(p, self.field)
        pinv = _mat_in(inverse(p), self.field)
        return OrthCocycle(self.field, self.form, {g: _mul(_mul(pinv, m), pl) for g, m in self.values.items()})

    def to_json(self):
        def entry(x):
            if x.is_rational():
                return str(x.rational())
            return {str(k): str(v) for k, v in sorted(x.coeffs.items())}

        return {
            "radicands": list(self.field.radicands),
            "form": [str(a) for a in self.form.entries],
            "values": {
                str(g): [[entry(x) for x in row] for row in m] for g, m in sorted(self.values.items()) if g
            },
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        L = MultiQuadField(tuple(int(r) for r in data.get("radicands", [])))
        form = DiagonalForm(tuple(as_rational(a) for a in data["form"]))

        def entry(x):
            if isinstance(x, dict):
                return FieldElement(L, {int(k): as_rational(v) for k, v in x.items()})
            return L(as_rational(x) if isinstance(x, str) else x)

        values = {int(g): tuple(tuple(entry(x) for x in row) for row in m) for g, m in data.get("values", {}).items()}
        return cls(L, form, values)


def trivial_cocycle(form, field=None):
    return OrthCocycle(field or MultiQuadField(()), form, {})


def quadratic_cocycle(form, d, matrix):
    """Cocycle over Q(√d) with c(σ) = matrix (a rational involutive isometry)."""
    d = _check_radicand(d)
    return OrthCocycle(MultiQuadField((d,)), form, {1: matrix})


def swap_matrix(n, i, j, signs=None):
    signs = signs or (1,) * n
    m = [[0] * n for _ in range(n)]
    for k in range(n):
        src = {i: j, j: i}.get(k, k)
        m[k][src] = signs[k]
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def sign_matrix(signs):
    n = len(signs)
    return tuple(tuple(Fraction(signs[i] if i == j else 0) for j in range(n)) for i in range(n))


def _check_radicand(d):
    if isinstance(d, bool) or not isinstance(d, int):
        raise TypeError("radicand must be an int")
    if d == 0 or d == 1 or squarefree_part(d) != d:
        raise ValueError("radicand must be a squarefree integer other than 0 and 1, got %r" % (d,))
    return d


# ---------------------------------------------------------------------------
# descent


@dataclass(frozen=True)
class Descent:
    form: QuadraticForm  # Gram matrix over Q of the twisted form
    basis: tuple  # basis of the fixed space, vectors in L^n


def descend(q, c):
    """Solve c(g) g(v) = v over the generators of Gal(L/Q)."""
    if not isinstance(q, DiagonalForm):
        q = DiagonalForm(tuple(q))
    if q != c.form:
        raise ValueError("cocycle is for %s, not %s" % (c.form, q))
    L, n = c.field, q.dim
    deg = L.degree
    nvars = n * deg
    rows = []
    for j in range(L.k):
        g = 1 << j
        m = c(g)
        cols = []
        for var in range(nvars):
            i, t = divmod(var, deg)
            # image of the basis vector √r_t · e_i under v -> c(g) g(v) - v
            x = galois_act(g, FieldElement(L, {t: 1}))
            img = [m[r][i] * x for r in range(n)]
            img[i] = img[i] - FieldElement(L, {t: 1})
            cols.append([img[r].coeffs.get(s, Fraction(0)) for r in range(n) for s in range(deg)])
        rows.extend([cols[v][e] for v in range(nvars)] for e in range(nvars))
    basis = nullspace(rows, nvars) if rows else [
        [Fraction(int(v == u)) for v in range(nvars)] for u in range(nvars)
    ]
    if len(basis) != n:
        raise ArithmeticError("fixed space has dimension %d, expected %d" % (len(basis), n))
    vecs = tuple(
        tuple(FieldElement(L, {s: x[i * deg + s] for s in range(deg)}) for i in range(n)) for x in basis
    )
    gram = []
    for u in vecs:
        row = []
        for v in vecs:
            b = sum((a * x * y for a, x, y in zip(q.entries, u, v)), L.zero())
            if not b.is_rational():
                raise ArithmeticError("descended form is not rational")
            row.append(b.rational())
        gram.append(tuple(row))
    return Descent(QuadraticForm(tuple(gram)), vecs)


def twist_form(q, c):
    return descend(q, c).form


# ---------------------------------------------------------------------------
# boundary classes


def delta1(c):
    """Square class cut out by the character g -> det c(g)."""
    L = c.field
    mask = 0
    for j in range(L.k):
        d = _det(c(1 << j))
        if not d.is_rational() or d.rational() not in (1, -1):
            raise ArithmeticError("determinant %s is not ±1" % d)
        if d.rational() == -1:
            mask |= 1 << j
    return SquareClass(squarefree_part(L.subset_product(mask)))


def splitting_field(c):
    """L enlarged by the square roots of every Cartan-Dieudonné reflection norm."""
    form = c.form.entries
    big = c.field
    for g in c.field.galois_group():
        for v in cartan_dieudonne(form, c(g)):
            big = adjoin(big, _rational_norm(form, v)).field
    return big


@dataclass
class Delta2Details:
    field: MultiQuadField
    lifts: dict  # Galois element of `field` -> PinElement
    cocycle: F2Cochain
    coefficients: dict
    value: BrauerClass = field(default_factory=BrauerClass)


def delta2_details(c, signs=None):
    """
    Run the Clifford route for δ².

    ``signs`` optionally maps Galois elements of the enlarged field to ±1,
    replacing the canonical lift s(g) by -s(g); the class must not change.
    """
    form = c.form.entries
    big = splitting_field(c)
    mask = (1 << c.field.k) - 1
    base = {}
    for g in c.field.galois_group():
        base[g] = lift_in(form, _mat_in(c(g), big), big)
    signs = signs or {}
    lifts = {}
    for g in big.galois_group():
        s = base[g & mask]
        lifts[g] = -s if signs.get(g, 1) == -1 else s
    inv = {g: s.elt.reverse() for g, s in lifts.items()}
    one = lifts[0].elt.field.one()

    table = {}
    for g in big.galois_group():
        for h in big.galois_group():
            z = cl_mul(cl_mul(lifts[g].elt, lifts[h].elt.galois(g)), inv[g ^ h])
            if not z.is_scalar() or z.scalar_part() not in (one, -one):
                raise ArithmeticError("lift defect at (%d, %d) is not ±1: %s" % (g, h, z))
            table[g, h] = 1 if z.scalar_part() == -one else 0
    group = FiniteGroup.elementary_abelian(big.k)
    z = F2Cochain.from_function(group, 2, lambda g, h: table[g, h])
    dec = decompose_cocycle(z)
    value = inflate_to_brauer(dec.coefficients, big.radicands)
    return Delta2Details(big, lifts, z, dec.coefficients, value)


def delta2(c, signs=None):
    return delta2_details(c, signs).value


# ---------------------------------------------------------------------------
# trace forms


def _poly_trim(p):
    p = list(p)
    while p and p[0] == 0:
        p.pop(0)
    return p


def _poly_rem(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    while len(a) >= len(b) and a:
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a.pop(0)
        a = _poly_trim(a)
    return a


def _poly_gcd_degree(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_rem(a, b)
    return len(a) - 1


def power_sums(coeffs, count):
    """p_0..p_{count-1} of the roots of a polynomial (highest degree first), by Newton's identities."""
    c = _poly_trim([as_rational(x) for x in coeffs])
    n = len(c) - 1
    c = [x / c[0] for x in c]
    p = [Fraction(n)]
    for k in range(1, count):
        s = sum((c[i] * p[k - i] for i in range(1, min(k - 1, n) + 1)), Fraction(0))
        if k <= n:
            s += k * c[k]
        p.append(-s)
    return p


def trace_form(coeffs):
    """Gram matrix Tr(x^i x^j) of Q[x]/(f), f given highest degree first."""
    c = _poly_trim([as_rational(x) for x in coeffs])
    n = len(c) - 1
    if n < 1:
        raise ValueError("polynomial must have positive degree")
    if n > 8:
        raise ValueError("degree is capped at 8")
    deriv = [c[i] * (n - i) for i in range(n)]
    if _poly_gcd_degree(c, deriv) > 0:
        raise ValueError("polynomial is not separable")
    p = power_sums(c, 2 * n - 1)
    return QuadraticForm(tuple(tuple(p[i + j] for j in range(n)) for i in range(n)))


def regular_rep_cocycle(d):
    """Q(√d) as a Z/2-torsor, pushed into O(t_2) by the regular representation."""
    return quadratic_cocycle(standard_form(2), d, swap_matrix(2, 0, 1))


# ---------------------------------------------------------------------------
# orthogonal representations


class OrthogonalRep:
    def __init__(self, group, images, form):
        if not isinstance(form, DiagonalForm):
            form = DiagonalForm(tuple(form))
        images = [tuple(tuple(as_rational(x) for x in row) for row in m) for m in images]
        if len(images) != group.order:
            raise ValueError("need one image per group element")
        from hasse_witt.linalg import mat_mul

        for m in images:
            if not _is_isometry(form.entries, m):
                raise ValueError("image is not an isometry of %s" % form)
        for a in range(group.order):
            for b in range(group.order):
                if mat_mul(images[a], images[b]) != images[group.mul(a, b)]:
                    raise ValueError("not a homomorphism at (%d, %d)" % (a, b))
        self.group = group
        self.images = images
        self.form = form

    def __call__(self, g):
        return self.images[g]


def rep_to_cocycle(rho, chi, field):
    """c(g) = ρ(χ(g)) for a homomorphism χ: Gal(field/Q) -> ρ.group."""
    chi = {g: chi[g] for g in field.galois_group()}
    for g in chi:
        for h in chi:
            if chi[g ^ h] != rho.group.mul(chi[g], chi[h]):
                raise ValueError("χ is not a homomorphism at (%d, %d)" % (g, h))
    return OrthCocycle(field, rho.form, {g: rho(chi[g]) for g in chi})


# ---------------------------------------------------------------------------
# comparison formulas


@dataclass
class TwistReport:
    form: DiagonalForm
    twisted: QuadraticForm
    w1q: SquareClass
    w2q: BrauerClass
    w1qa: SquareClass
    w2qa: BrauerClass
    delta1: SquareClass
    delta2: BrauerClass
    predicted_w1qa: SquareClass
    predicted_w2qa: BrauerClass
    obstruction: BrauerClass  # δ² rebuilt from Hasse-Witt invariants alone

    @property
    def identity_i(self):
        return self.w1qa == self.predicted_w1qa

    @property
    def identity_ii(self):
        return self.w2qa == self.predicted_w2qa

    @property
    def obstruction_matches(self):
        return self.obstruction == self.delta2

    @property
    def ok(self):
        return self.identity_i and self.identity_ii and self.obstruction_matches

    def to_dict(self):
        return {
            "form": str(self.form),
            "twisted_gram": [[str(x) for x in row] for row in self.twisted.gram],
            "w1(q)": str(self.w1q),
            "w2(q)": str(self.w2q),
            "w1(q_alpha)": str(self.w1qa),
            "w2(q_alpha)": str(self.w2qa),
            "delta1": str(self.delta1),
            "delta2": str(self.delta2),
            "identity_i": self.identity_i,
            "identity_ii": self.identity_ii,
            "obstruction_from_invariants": str(self.obstruction),
            "obstruction_matches": self.obstruction_matches,
        }


def verify_cor62(q, c):
    if not isinstance(q, DiagonalForm):
        q = DiagonalForm(tuple(q))
    qa = twist_form(q, c)
    a1, a2 = w1(q), w2(q)
    b1, b2 = w1(qa), w2(qa)
    d1, d2 = delta1(c), delta2(c)
    predicted1 = a1 * d1
    predicted2 = br_add(br_add(a2, cup(a1, d1)), d2)
    obstruction = br_add(br_add(b2, a2), br_add(cup(a1, a1), cup(a1, b1)))
    return TwistReport(q, qa, a1, a2, b1, b2, d1, d2, predicted1, predicted2, obstruction)
