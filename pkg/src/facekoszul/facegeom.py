"""Faces of the weight polytope, exactly.

Whether a subset of wt(V) lies on a proper face is decided by a rational
linear program: a functional equal to 1 on the subset and at most 1 on all of
wt(V). Feasibility runs through Fourier-Motzkin elimination over Fractions,
and back-substitution produces a concrete certificate which is re-verified by
direct evaluation. The combinatorial counterpart (length-rigidity of weight
decompositions) is checked by bounded exhaustive enumeration, so the two
characterizations can be played against each other in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from .characters import ModuleSpec, module_character
from .errors import GuardLimitError
from .rootsystem import RootSystem, Weight

__all__ = [
    "WeightSystem",
    "FaceSubset",
    "RigidityVerdict",
    "weight_system",
    "lies_on_proper_face",
    "is_rigid_bruteforce",
    "enumerate_face_subsets",
]


@dataclass(frozen=True)
class WeightSystem:
    """wt(V) with eigenspace dimensions, for a fixed semisimple module V."""

    rs: RootSystem
    spec: ModuleSpec
    weight_items: tuple[tuple[Weight, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "_weights", dict(self.weight_items))
        object.__setattr__(self, "key", f"{self.rs.key}#{self.spec.key}")

    @property
    def weights(self) -> dict:
        return self._weights

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.weight_items)

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return isinstance(other, WeightSystem) and self.key == other.key


@dataclass(frozen=True)
class FaceSubset:
    """A nonempty subset of wt(V) lying on a proper face, with its certificate.

    `functional` is a rational vector in omega coordinates; the pairing runs
    through the invariant form, takes the value 1 on every member and at most
    1 on all of wt(V). `weight_sum` and `total_mult` are the multiplicity-
    weighted sum and the summed eigenspace dimensions over the subset.
    """

    ws: WeightSystem
    weights: frozenset
    functional: tuple[Fraction, ...] | None
    weight_sum: Weight
    total_mult: int

    def __post_init__(self):
        gens = tuple(sorted(self.weights))
        object.__setattr__(self, "gens", gens)
        members = ";".join(",".join(map(str, w)) for w in gens)
        object.__setattr__(self, "key", f"{self.ws.key}|{members}")

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return isinstance(other, FaceSubset) and self.key == other.key

    def pair(self, w) -> Fraction:
        """<functional, w> through the invariant form."""
        if self.functional is None:
            raise ValueError("face subset has no certificate")
        rs = self.ws.rs
        return rs.pairing(self.functional, w)


def weight_system(rs: RootSystem, spec: ModuleSpec) -> WeightSystem:
    ch = module_character(rs, spec)
    zero = Weight.zero(rs.rank)
    if set(ch.mults) == {zero}:
        raise ValueError("modules with wt(V) = {0} are excluded")
    return WeightSystem(rs, spec, tuple(sorted(ch.mults.items())))


def _pairing_row(rs: RootSystem, beta) -> tuple[Fraction, ...]:
    """Row r with <xi, beta> = r . xi for xi in omega coordinates."""
    n = rs.rank
    return tuple(sum(rs.form[i][j] * beta[j] for j in range(n)) for i in range(n))


def _solve_equalities(eqs: list[tuple[tuple[Fraction, ...], Fraction]], n: int):
    """Exact affine solve: returns (particular, nullspace basis) or None if inconsistent."""
    rows = [list(c) + [Fraction(r)] for c, r in eqs]
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [x / pv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][n] != 0:
            return None
    free = [c for c in range(n) if c not in pivots]
    particular = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        particular[col] = rows[r][n]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for r, col in enumerate(pivots):
            vec[col] = -rows[r][fc]
        basis.append(vec)
    return particular, basis


def _fm_feasible_point(ineqs: list[tuple[list[Fraction], Fraction]], n: int):
    """Fourier-Motzkin feasibility for coeffs . y <= rhs; returns a point or None."""
    cur = [([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, rhs in ineqs]
    stages: list[list[tuple[list[Fraction], Fraction]]] = []
    for v in range(n - 1, -1, -1):
        stages.append(cur)
        pos = [row for row in cur if row[0][v] > 0]
        neg = [row for row in cur if row[0][v] < 0]
        nxt = [row for row in cur if row[0][v] == 0]
        for pc, pr in pos:
            for nc, nr in neg:
                a, b = -nc[v], pc[v]
                coeffs = [a * x + b * y for x, y in zip(pc, nc)]
                nxt.append((coeffs, a * pr + b * nr))
        cur = nxt
    for coeffs, rhs in cur:
        if rhs < 0:
            return None
    point = [Fraction(0)] * n
    for v in range(n):
        lower = None
        upper = None
        for coeffs, rhs in stages[n - 1 - v]:
            cv = coeffs[v]
            if cv == 0:
                continue
            rest = sum(coeffs[j] * point[j] for j in range(v))
            bound = (rhs - rest) / cv
            if cv > 0:
                upper = bound if upper is None or bound < upper else upper
            else:
                lower = bound if lower is None or bound > lower else lower
        if lower is not None and upper is not None:
            point[v] = (lower + upper) / 2
        elif lower is not None:
            point[v] = lower
        elif upper is not None:
            point[v] = upper
    return point


def lies_on_proper_face(ws: WeightSystem, subset) -> FaceSubset | None:
    """Exact LP face test; returns the certified subset, or None when not a face.

    Normalizing the face value to 1 is valid because the weighted barycenter
    of wt(V) is 0, which forces a positive maximum for any supporting
    functional and rules out the improper face wt(V) itself.
    """
    rs = ws.rs
    members = frozenset(Weight(w) for w in subset)
    if not members:
        raise ValueError("face subset must be nonempty")
    wts = ws.weights
    if any(w not in wts for w in members):
        raise ValueError("face subset must be contained in wt(V)")
    n = rs.rank
    rows = {beta: _pairing_row(rs, beta) for beta in wts}
    solved = _solve_equalities([(rows[p], Fraction(1)) for p in sorted(members)], n)
    if solved is None:
        return None
    particular, basis = solved
    others = [b for b in sorted(wts) if b not in members]
    if basis:
        ineqs = []
        for b in others:
            row = rows[b]
            shift = sum(r * p for r, p in zip(row, particular))
            coeffs = [sum(r * v for r, v in zip(row, vec)) for vec in basis]
            ineqs.append((coeffs, Fraction(1) - shift))
        y = _fm_feasible_point(ineqs, len(basis))
        if y is None:
            return None
        xi = [p + sum(vec[i] * yi for vec, yi in zip(basis, y)) for i, p in enumerate(particular)]
    else:
        xi = particular
        if any(sum(r * x for r, x in zip(rows[b], xi)) > 1 for b in others):
            return None
    functional = tuple(xi)
    face = FaceSubset(
        ws=ws,
        weights=members,
        functional=functional,
        weight_sum=_weight_sum(ws, members),
        total_mult=sum(wts[w] for w in members),
    )
    for p in members:
        if face.pair(p) != 1:
            raise ArithmeticError("certificate failed re-verification on the subset")
    for b in wts:
        if face.pair(b) > 1:
            raise ArithmeticError("certificate failed re-verification on wt(V)")
    return face


def _weight_sum(ws: WeightSystem, members) -> Weight:
    total = Weight.zero(ws.rs.rank)
    for w in members:
        total = total + ws.weights[w] * w
    return total


@dataclass(frozen=True)
class RigidityVerdict:
    """Outcome of the bounded rigidity search; a False carries its witness."""

    ok: bool
    witness: tuple[dict, dict] | None = None

    def __bool__(self) -> bool:
        return self.ok


@lru_cache(maxsize=None)
def _decompositions_by_sum(ws: WeightSystem, bound: int):
    """All multisets of wt(V) of size <= bound, grouped by their weight sum.

    Each entry is (size, combo, support bitmask) over the sorted weight list.
    """
    weights = sorted(ws.weights)
    bit = {w: 1 << i for i, w in enumerate(weights)}
    groups: dict[Weight, list[tuple[int, tuple[Weight, ...], int]]] = {}
    for k in range(bound + 1):
        for combo in combinations_with_replacement(weights, k):
            sigma = Weight.zero(ws.rs.rank)
            mask = 0
            for w in combo:
                sigma = sigma + w
                mask |= bit[w]
            groups.setdefault(sigma, []).append((k, combo, mask))
    return groups


def _counts(combo) -> dict:
    out: dict[Weight, int] = {}
    for w in combo:
        out[w] = out.get(w, 0) + 1
    return out


def is_rigid_bruteforce(ws: WeightSystem, subset, bound: int) -> RigidityVerdict:
    """Exhaustively search for a length-rigidity violation up to the bound.

    A violation is a pair of decompositions of the same weight, one supported
    in the subset, where the subset-supported one is strictly longer, or ties
    in length against one that leaves the subset. Returning False is a
    certificate; returning True is only exhaustive within the bound.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    members = frozenset(Weight(w) for w in subset)
    if not members or any(w not in ws.weights for w in members):
        raise ValueError("subset must be nonempty and contained in wt(V)")
    bit = {w: 1 << i for i, w in enumerate(sorted(ws.weights))}
    inside = 0
    for w in members:
        inside |= bit[w]
    for group in _decompositions_by_sum(ws, bound).values():
        best = None
        for k, combo, mask in group:
            if mask | inside == inside and (best is None or k > best[0]):
                best = (k, combo)
        if best is None:
            continue
        mk, mcombo = best
        for k, combo, mask in group:
            if k < mk or (k == mk and mask | inside != inside):
                return RigidityVerdict(False, (_counts(mcombo), _counts(combo)))
    return RigidityVerdict(True)


# Exact convex-hull face enumeration at small rank.


def _nullspace(rows: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    for fc in (c for c in range(n) if c not in pivots):
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for r, col in enumerate(pivots):
            vec[col] = -mat[r][fc]
        basis.append(vec)
    return basis


def _affine_coords(pts: list[tuple[Fraction, ...]]) -> list[tuple[Fraction, ...]]:
    """Coordinates of pts inside their own affine hull (first point at 0)."""
    base = pts[0]
    vecs = [[p[i] - base[i] for i in range(len(base))] for p in pts]
    basis: list[list[Fraction]] = []
    pivot_rows: list[int] = []
    work: list[list[Fraction]] = []
    for v in vecs:
        cand = v[:]
        for b, pr in zip(work, pivot_rows):
            if cand[pr] != 0:
                f = cand[pr] / b[pr]
                cand = [x - f * y for x, y in zip(cand, b)]
        pr = next((i for i, x in enumerate(cand) if x != 0), None)
        if pr is not None:
            work.append(cand)
            pivot_rows.append(pr)
            basis.append(v)
    m = len(basis)
    if m == 0:
        return [()] * len(pts)
    square = [[basis[j][pivot_rows[i]] for j in range(m)] for i in range(m)]
    inv = _invert_square(square)
    out = []
    for v in vecs:
        rhs = [v[pr] for pr in pivot_rows]
        out.append(tuple(sum(inv[i][j] * rhs[j] for j in range(m)) for i in range(m)))
    return out


def _invert_square(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    m = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(mat)]
    for col in range(m):
        pivot = next(r for r in range(col, m) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


def _proper_faces(coords: dict, members: tuple) -> set[frozenset]:
    """All proper nonempty faces of conv(members), as sets of member labels."""
    pts = [coords[i] for i in members]
    local = _affine_coords(pts)
    m = len(local[0])
    if m == 0:
        return set()
    facets: set[frozenset] = set()
    for combo in combinations(range(len(members)), m):
        rows = [list(local[i]) + [Fraction(-1)] for i in combo]
        basis = _nullspace(rows, m + 1)
        if len(basis) != 1:
            continue
        normal, offset = basis[0][:m], basis[0][m]
        vals = [sum(a * x for a, x in zip(normal, p)) - offset for p in local]
        if all(v <= 0 for v in vals) or all(v >= 0 for v in vals):
            facets.add(frozenset(members[i] for i, v in enumerate(vals) if v == 0))
    faces: set[frozenset] = set()
    for facet in facets:
        if facet not in faces:
            faces.add(facet)
            faces |= _proper_faces(coords, tuple(sorted(facet)))
    return faces


def enumerate_face_subsets(ws: WeightSystem) -> list[FaceSubset]:
    """One certified subset per proper face of the weight polytope.

    Each returned subset is the full intersection of a face with wt(V);
    faces of all dimensions appear (vertices, edges, ..., facets).
    """
    rs = ws.rs
    if rs.rank > 4:
        raise GuardLimitError(f"face enumeration guarded to rank <= 4, got {rs.rank}")
    if len(ws.weights) > 64:
        raise GuardLimitError(f"face enumeration guarded to |wt(V)| <= 64, got {len(ws.weights)}")
    pts = sorted(ws.weights)
    coords = {w: tuple(Fraction(c) for c in w) for w in pts}
    face_sets = _proper_faces(coords, tuple(pts))
    out = []
    for s in sorted(face_sets, key=lambda f: (len(f), sorted(f))):
        face = lies_on_proper_face(ws, s)
        if face is None:
            raise ArithmeticError(f"hull enumeration produced a non-face {sorted(s)}")
        out.append(face)
    return out
