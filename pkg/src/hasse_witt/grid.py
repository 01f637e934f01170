"""
Verification grid: quadratic twists of small diagonal forms, each checked
by two independent routes.

Route A (Clifford): δ¹ from determinants, δ² from Pin lifts.
Route B (invariants): Hasse-Witt invariants of q and of the descended q_α,
fed through the universal classes det[q], [C_q] and specialized at α.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
import random

from hasse_witt.clifford import UnsupportedSplittingField
from hasse_witt.galois_coh import br_add, cup
from hasse_witt.quadform import DiagonalForm, w1, w2
from hasse_witt.twists import delta1, delta2, quadratic_cocycle, sign_matrix, swap_matrix, twist_form
from hasse_witt.universal import cq_class, det_class, specialize

ENTRIES = (1, -1, 2, -2, 3, -3, 5, -5)
TWISTS = (-1, -2, -3, 2, 3, 5, 6)


def sample_forms(seed=0, per_rank=None):
    """Every rank-1 form, plus a seeded sample of ranks 2..4."""
    per_rank = per_rank or {2: 12, 3: 10, 4: 8}
    rng = random.Random(seed)
    forms = [(a,) for a in ENTRIES]
    for rank, count in sorted(per_rank.items()):
        seen = set()
        while len(seen) < count:
            entries = [rng.choice(ENTRIES) for _ in range(rank)]
            if rng.random() < 0.5:
                # repeated entries make swap cocycles available
                entries[1] = entries[0]
            seen.add(tuple(entries))
        forms.extend(sorted(seen))
    return [DiagonalForm(f) for f in forms]


def supported_cocycles(q):
    """
    Involutive rational isometries usable as c(σ) for a quadratic twist:
    every sign change, and each swap of equal entries (also composed with -1).
    """
    n = q.dim
    out = []
    for signs in product((1, -1), repeat=n):
        label = "signs(%s)" % ",".join("+" if s > 0 else "-" for s in signs)
        out.append((label, sign_matrix(signs)))
    for i, j in combinations(range(n), 2):
        if q.entries[i] == q.entries[j]:
            out.append(("swap(%d,%d)" % (i + 1, j + 1), swap_matrix(n, i, j)))
            out.append(("-swap(%d,%d)" % (i + 1, j + 1), swap_matrix(n, i, j, (-1,) * n)))
    return out


@dataclass(frozen=True)
class Cell:
    entries: tuple
    d: int
    label: str
    matrix: tuple

    @property
    def form(self):
        return DiagonalForm(self.entries)

    def cocycle(self):
        return quadratic_cocycle(self.form, self.d, self.matrix)

    def name(self):
        return "%s d=%d %s" % (self.form, self.d, self.label)


def default_grid(seed=0, per_rank=None):
    cells = []
    for q in sample_forms(seed, per_rank):
        for d in TWISTS:
            for label, m in supported_cocycles(q):
                cells.append(Cell(q.entries, d, label, m))
    return cells


def small_grid():
    return default_grid(per_rank={2: 3, 3: 2, 4: 1})


@dataclass
class CellResult:
    name: str
    w1_identity: bool  # w1(q_α) = w1(q) + δ¹
    delta2_two_route: bool  # δ² (Clifford) = δ² rebuilt from invariants
    bridge: bool  # specialized det[q], [C_q] reproduce δ¹, δ²
    details: dict
    error: str = None

    @property
    def ok(self):
        return self.error is None and self.w1_identity and self.delta2_two_route and self.bridge


def run_cell(cell):
    q = cell.form
    try:
        c = cell.cocycle()
        qa = twist_form(q, c)
        a1, a2 = w1(q), w2(q)
        b1, b2 = w1(qa), w2(qa)
        d1 = delta1(c)
        d2 = delta2(c)
    except UnsupportedSplittingField as exc:
        return CellResult(cell.name(), False, False, False, {}, "unsupported: %s" % exc)
    invariant_d2 = br_add(br_add(b2, a2), br_add(cup(a1, a1), cup(a1, b1)))
    _, s1, _ = specialize(det_class(a1), b1, b2)
    _, _, s2 = specialize(cq_class(a1, a2), b1, b2)
    details = {
        "q_alpha": str(qa),
        "w1(q)": str(a1),
        "w2(q)": str(a2),
        "w1(q_alpha)": str(b1),
        "w2(q_alpha)": str(b2),
        "delta1": str(d1),
        "delta2": str(d2),
        "delta2_from_invariants": str(invariant_d2),
    }
    return CellResult(
        cell.name(),
        b1 == a1 * d1,
        d2 == invariant_d2,
        s1 == d1 and s2 == d2,
        details,
    )


def run_grid(cells, jobs=1):
    """Evaluate cells (optionally in worker processes); results keep grid order."""
    if jobs <= 1:
        return [run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(run_cell, cells, chunksize=8))
