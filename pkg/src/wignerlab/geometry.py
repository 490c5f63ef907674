"""State-space geometry: functionals, affine maps, polytopes and balls.

Polytopes are stored by their vertex list (which must be irredundant:
every listed point is extreme), balls by center and radius.  Extremal
values of affine functionals over balls are irrational in general, so
they are carried symbolically as ``rational + rational * sqrt(radicand)``
and compared by exact sign analysis, never through floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import UnsupportedGeometryError
from .exact import (
    QQ,
    Matrix,
    Vec,
    Feasible,
    LinearProgram,
    lp_feasible,
    qq,
    rank,
    solve_affine,
    unit,
    vec,
    vec_dot,
    vec_scale,
    vec_sub,
    zeros,
)


@dataclass(frozen=True)
class AffineFunctional:
    """x -> linear . x + constant on the ambient coordinate space."""

    linear: Vec
    constant: QQ

    def __post_init__(self):
        object.__setattr__(self, "linear", vec(self.linear))
        object.__setattr__(self, "constant", qq(self.constant))

    @classmethod
    def zero(cls, dim: int) -> "AffineFunctional":
        return cls(zeros(dim), QQ(0))

    @classmethod
    def const(cls, dim: int, value) -> "AffineFunctional":
        return cls(zeros(dim), qq(value))

    @classmethod
    def one(cls, dim: int) -> "AffineFunctional":
        return cls.const(dim, 1)

    @classmethod
    def coordinate(cls, dim: int, i: int) -> "AffineFunctional":
        return cls(unit(dim, i), QQ(0))

    @property
    def dim(self) -> int:
        return len(self.linear)

    def __call__(self, point: Sequence) -> QQ:
        return vec_dot(self.linear, vec(point)) + self.constant

    def __add__(self, other: "AffineFunctional") -> "AffineFunctional":
        return AffineFunctional(
            tuple(a + b for a, b in zip(self.linear, other.linear, strict=True)),
            self.constant + other.constant,
        )

    def __sub__(self, other: "AffineFunctional") -> "AffineFunctional":
        return self + (-other)

    def __neg__(self) -> "AffineFunctional":
        return AffineFunctional(tuple(-a for a in self.linear), -self.constant)

    def scale(self, c) -> "AffineFunctional":
        c = qq(c)
        return AffineFunctional(vec_scale(c, self.linear), c * self.constant)

    def shift(self, c) -> "AffineFunctional":
        return AffineFunctional(self.linear, self.constant + qq(c))

    def compose(self, m: "AffineMap") -> "AffineFunctional":
        """Pull back along ``m``: returns x -> self(m(x))."""
        row = tuple(
            vec_dot(self.linear, m.matrix.column(j)) for j in range(m.matrix.cols)
        )
        return AffineFunctional(row, vec_dot(self.linear, m.offset) + self.constant)

    def coefficients(self) -> Vec:
        """Linear coefficients with the constant appended."""
        return self.linear + (self.constant,)

    def is_constant(self) -> bool:
        return all(a == 0 for a in self.linear)


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix . x + offset."""

    matrix: Matrix
    offset: Vec

    def __post_init__(self):
        object.__setattr__(self, "offset", vec(self.offset))
        if len(self.offset) != self.matrix.rows:
            raise ValueError("offset length must equal matrix row count")

    @classmethod
    def identity(cls, dim: int) -> "AffineMap":
        return cls(Matrix.identity(dim), zeros(dim))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], offset: Sequence) -> "AffineMap":
        return cls(Matrix.from_rows(rows), vec(offset))

    @property
    def source_dim(self) -> int:
        return self.matrix.cols

    @property
    def target_dim(self) -> int:
        return self.matrix.rows

    def __call__(self, point: Sequence) -> Vec:
        x = vec(point)
        return tuple(a + b for a, b in zip(self.matrix.matvec(x), self.offset))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """Returns x -> self(inner(x))."""
        return AffineMap(
            self.matrix.matmul(inner.matrix),
            tuple(
                a + b
                for a, b in zip(self.matrix.matvec(inner.offset), self.offset)
            ),
        )


def affine_map_from_points(
    domain: Sequence[Sequence], images: Sequence[Sequence]
) -> Optional[AffineMap]:
    """Some affine map sending each domain point to its image, or ``None``.

    When the domain points do not affinely span the ambient space the
    interpolation problem is underdetermined and an arbitrary exact
    solution is returned.
    """
    domain = [vec(p) for p in domain]
    images = [vec(p) for p in images]
    if len(domain) != len(images) or not domain:
        raise ValueError("need equally many domain and image points")
    src = len(domain[0])
    tgt = len(images[0])
    system = Matrix.from_rows([list(p) + [QQ(1)] for p in domain])
    rows = []
    offset = []
    for i in range(tgt):
        sol = solve_affine(system, [img[i] for img in images])
        if sol is None:
            return None
        rows.append(sol.particular[:src])
        offset.append(sol.particular[src])
    return AffineMap(Matrix.from_rows(rows, cols=src), tuple(offset))


def independent_affine_subset(points: Sequence[Vec]) -> list[int]:
    """Indices of a greedy maximal affinely independent subset."""
    points = [vec(p) for p in points]
    if not points:
        return []
    chosen = [0]
    diffs: list[Vec] = []
    current = 0
    for i, p in enumerate(points[1:], start=1):
        candidate = diffs + [vec_sub(p, points[chosen[0]])]
        r = rank(candidate)
        if r > current:
            chosen.append(i)
            diffs = candidate
            current = r
    return chosen


def projection_matrix(directions: Sequence[Vec], n: int) -> Matrix:
    """Orthogonal projection of Q^n onto span(directions)."""
    dirs = [vec(d) for d in directions if any(d)]
    if not dirs:
        return Matrix.zero(n, n)
    b = Matrix.from_rows([[d[i] for d in dirs] for i in range(n)], cols=len(dirs))
    gram = b.transpose().matmul(b)
    bt = b.transpose()
    cols = []
    for j in range(n):
        sol = solve_affine(gram, bt.column(j))
        if sol is None:  # pragma: no cover - gram of independent dirs is invertible
            raise ArithmeticError("singular Gram matrix")
        cols.append(sol.particular)
    x = Matrix.from_rows(
        [[cols[j][i] for j in range(n)] for i in range(len(dirs))], cols=n
    )
    return b.matmul(x)


def affine_map_with_orthogonal_extension(
    domain: Sequence[Sequence], images: Sequence[Sequence]
) -> Optional[AffineMap]:
    """The canonical affine map interpolating ``domain -> images``.

    On the affine hull of the domain points the map is the (unique)
    interpolant; on the orthogonal complement it acts as the identity
    when source and target dimensions agree, as zero otherwise.  Returns
    ``None`` when the required images violate an affine dependency of
    the domain points, i.e. no affine interpolant exists.
    """
    domain = [vec(p) for p in domain]
    images = [vec(p) for p in images]
    if len(domain) != len(images) or not domain:
        raise ValueError("need equally many domain and image points")
    n1, n2 = len(domain[0]), len(images[0])
    idx = independent_affine_subset(domain)
    base_dom = [domain[i] for i in idx]
    base_img = [images[i] for i in idx]
    system = Matrix.from_rows([[b[k] for b in base_dom] for k in range(n1)] + [[QQ(1)] * len(idx)])
    chosen = set(idx)
    for j, p in enumerate(domain):
        if j in chosen:
            continue
        coeffs = solve_affine(system, list(p) + [QQ(1)])
        if coeffs is None:  # pragma: no cover - p is in the hull by construction
            raise ArithmeticError("interpolation basis does not span")
        predicted = tuple(
            sum((c * b[k] for c, b in zip(coeffs.particular, base_img)), QQ(0))
            for k in range(n2)
        )
        if predicted != images[j]:
            return None
    interp = Matrix.from_rows([list(p) + [QQ(1)] for p in base_dom])
    rows = []
    offs = []
    for i in range(n2):
        sol = solve_affine(interp, [img[i] for img in base_img])
        if sol is None:  # pragma: no cover - basis is affinely independent
            raise ArithmeticError("interpolation failed on an affine basis")
        rows.append(sol.particular[:n1])
        offs.append(sol.particular[n1])
    m0 = Matrix.from_rows(rows, cols=n1)
    t0 = vec(offs)
    proj = projection_matrix([vec_sub(p, base_dom[0]) for p in base_dom[1:]], n1)
    if n1 == n2:
        ext = Matrix.from_rows(
            [
                [(QQ(1) if i == j else QQ(0)) - proj.entries[i][j] for j in range(n1)]
                for i in range(n1)
            ],
            cols=n1,
        )
    else:
        ext = Matrix.zero(n2, n1)
    mat = Matrix.from_rows(
        [
            [vec_dot(m0.row(i), proj.column(j)) + ext.entries[i][j] for j in range(n1)]
            for i in range(n2)
        ],
        cols=n1,
    )
    anchor = base_dom[0]
    base = tuple(a + b for a, b in zip(m0.matvec(anchor), t0))
    offset = vec_sub(base, mat.matvec(anchor))
    result = AffineMap(mat, offset)
    for p, img in zip(domain, images):
        if result(p) != img:  # pragma: no cover - internal guard
            raise ArithmeticError("extension broke the interpolation")
    return result


def _squarefree(n: int) -> tuple[int, int]:
    """Decompose n = k^2 * m with m squarefree (n > 0)."""
    k, m = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        k *= d ** (e // 2)
        if e % 2:
            m *= d
        d += 1 if d == 2 else 2
    return k, m * n


@dataclass(frozen=True, eq=False)
class ExtremalValue:
    """The exact number ``rational_part + radical_part * sqrt(radicand)``.

    Normal form: radicand is a squarefree integer > 1 (else the value is
    stored as a plain rational with radical_part = radicand = 0), so
    equality of normal forms is equality of values; rationals and ints
    compare directly.
    """

    rational_part: QQ
    radical_part: QQ = QQ(0)
    radicand: QQ = QQ(0)

    def __eq__(self, other):
        if isinstance(other, ExtremalValue):
            return (
                self.rational_part == other.rational_part
                and self.radical_part == other.radical_part
                and self.radicand == other.radicand
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.rational_part == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.rational_part)
        return hash((self.rational_part, self.radical_part, self.radicand))

    def __post_init__(self):
        a, b, s = qq(self.rational_part), qq(self.radical_part), qq(self.radicand)
        if s < 0:
            raise ValueError("radicand must be nonnegative")
        if b == 0 or s == 0:
            b, s = QQ(0), QQ(0)
        else:
            # sqrt(p/q) = sqrt(p q)/q, then pull the square part out
            n = s.numerator * s.denominator
            k, m = _squarefree(n)
            b = b * k / s.denominator
            if m == 1:
                a, b, s = a + b, QQ(0), QQ(0)
            else:
                s = QQ(m)
        object.__setattr__(self, "rational_part", a)
        object.__setattr__(self, "radical_part", b)
        object.__setattr__(self, "radicand", s)

    @property
    def is_rational(self) -> bool:
        return self.radical_part == 0

    def as_rational(self) -> QQ:
        if not self.is_rational:
            raise ValueError("value is irrational")
        return self.rational_part

    def compare(self, other) -> int:
        """Exact three-way comparison against a rational or ExtremalValue."""
        if isinstance(other, ExtremalValue):
            if other.is_rational:
                return self._compare_rational(other.rational_part)
            if self.is_rational:
                return -other._compare_rational(self.rational_part)
            if self.radicand != other.radicand:
                raise NotImplementedError(
                    "comparison of values with different radicands is not needed"
                    " by any engine operation"
                )
            diff = ExtremalValue(
                self.rational_part - other.rational_part,
                self.radical_part - other.radical_part,
                self.radicand,
            )
            return diff._compare_rational(QQ(0))
        return self._compare_rational(qq(other))

    def _compare_rational(self, t: QQ) -> int:
        u = self.rational_part - t
        b = self.radical_part
        if b == 0:
            return (u > 0) - (u < 0)
        s = self.radicand
        if u >= 0 and b > 0:
            return 1
        if u <= 0 and b < 0:
            return -1
        # opposite signs: compare u^2 with b^2 s on the dominant side
        lhs = u * u
        rhs = b * b * s
        if u > 0:  # b < 0
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def to_float(self) -> float:
        return float(self.rational_part) + float(self.radical_part) * math.sqrt(
            float(self.radicand)
        )

    def __str__(self):
        if self.is_rational:
            return str(self.rational_part)
        return f"{self.rational_part} + {self.radical_part}*sqrt({self.radicand})"


@dataclass(frozen=True)
class Polytope:
    """Convex hull of an irredundant vertex list."""

    vertices: tuple[Vec, ...]

    def __post_init__(self):
        vertices = tuple(vec(v) for v in self.vertices)
        if not vertices:
            raise ValueError("a polytope needs at least one vertex")
        dim = len(vertices[0])
        if any(len(v) != dim for v in vertices):
            raise ValueError("vertices have mixed dimensions")
        object.__setattr__(self, "vertices", vertices)
        for i, v in enumerate(vertices):
            others = vertices[:i] + vertices[i + 1 :]
            if others and _in_hull(v, others) is not None:
                raise ValueError(
                    f"vertex {tuple(map(str, v))} is redundant (inside the hull"
                    " of the remaining points)"
                )

    @classmethod
    def hull_of(cls, points: Sequence[Sequence]) -> "Polytope":
        """Polytope spanned by arbitrary points; redundant ones dropped."""
        pts = []
        for p in (vec(q) for q in points):
            if p not in pts:
                pts.append(p)
        keep = list(pts)
        changed = True
        while changed:
            changed = False
            for p in list(keep):
                rest = [q for q in keep if q != p]
                if rest and _in_hull(p, rest) is not None:
                    keep.remove(p)
                    changed = True
        return cls(tuple(keep))

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])


@dataclass(frozen=True)
class Ball:
    """Closed euclidean ball with rational center and radius."""

    center: Vec
    radius: QQ

    def __post_init__(self):
        object.__setattr__(self, "center", vec(self.center))
        object.__setattr__(self, "radius", qq(self.radius))
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    @property
    def ambient_dim(self) -> int:
        return len(self.center)


StateSpace = Union[Polytope, Ball]


def _in_hull(x: Vec, points: Sequence[Vec]) -> Optional[Vec]:
    """Convex weights expressing x over ``points``, or ``None``."""
    n = len(points)
    dim = len(x)
    eqs = []
    for k in range(dim):
        eqs.append((tuple(p[k] for p in points), x[k]))
    eqs.append(((QQ(1),) * n, QQ(1)))
    ineqs = [(unit(n, i), QQ(0)) for i in range(n)]
    res = lp_feasible(LinearProgram(n, tuple(eqs), tuple(ineqs)))
    return res.witness if isinstance(res, Feasible) else None


def dimension(space: StateSpace) -> int:
    """Dimension of the affine hull."""
    if isinstance(space, Ball):
        return space.ambient_dim
    v0 = space.vertices[0]
    diffs = [vec_sub(v, v0) for v in space.vertices[1:]]
    return rank(diffs) if diffs else 0


def affine_basis(space: StateSpace) -> tuple[Vec, ...]:
    """dim(space) + 1 affinely independent points of the space.

    For polytopes the points are vertices; for balls the center plus the
    axis points center + radius * e_i.
    """
    if isinstance(space, Ball):
        return (space.center,) + tuple(
            tuple(c + (space.radius if k == i else 0) for k, c in enumerate(space.center))
            for i in range(space.ambient_dim)
        )
    basis = [space.vertices[0]]
    diffs: list[Vec] = []
    current = 0
    for v in space.vertices[1:]:
        candidate = diffs + [vec_sub(v, basis[0])]
        r = rank(candidate)
        if r > current:
            basis.append(v)
            diffs = candidate
            current = r
    return tuple(basis)


def contains(space: StateSpace, x: Sequence) -> bool:
    x = vec(x)
    if len(x) != space.ambient_dim:
        raise ValueError("point has wrong dimension")
    if isinstance(space, Ball):
        d = vec_sub(x, space.center)
        return vec_dot(d, d) <= space.radius * space.radius
    return _in_hull(x, space.vertices) is not None


def membership_weights(space: Polytope, x: Sequence) -> Optional[Vec]:
    """Convex vertex weights certifying membership (polytopes only)."""
    if not isinstance(space, Polytope):
        raise UnsupportedGeometryError("membership weights need a polytope")
    return _in_hull(vec(x), space.vertices)


def _polytope_extrema(space: Polytope, f: AffineFunctional):
    lo_v = hi_v = space.vertices[0]
    lo = hi = f(lo_v)
    for v in space.vertices[1:]:
        val = f(v)
        if val < lo:
            lo, lo_v = val, v
        if val > hi:
            hi, hi_v = val, v
    return lo, lo_v, hi, hi_v


def extremal_range(
    space: StateSpace, f: AffineFunctional
) -> tuple[ExtremalValue, ExtremalValue]:
    """Exact (min, max) of ``f`` over the space."""
    if f.dim != space.ambient_dim:
        raise ValueError("functional dimension mismatch")
    if isinstance(space, Polytope):
        lo, _, hi, _ = _polytope_extrema(space, f)
        return ExtremalValue(lo), ExtremalValue(hi)
    mid = f(space.center)
    norm_sq = vec_dot(f.linear, f.linear)
    if norm_sq == 0:
        return ExtremalValue(mid), ExtremalValue(mid)
    return (
        ExtremalValue(mid, -space.radius, norm_sq),
        ExtremalValue(mid, space.radius, norm_sq),
    )


@dataclass(frozen=True)
class Containment:
    """Outcome of an image-containment test.

    ``exact`` is False only on the documented numeric fallback path for
    off-center ball maps (tolerance 1e-12); every other verdict is an
    exact-arithmetic fact.  On failure ``witness_point`` maps to
    ``witness_image`` outside the target (when one could be produced).
    """

    ok: bool
    witness_point: Optional[Vec] = None
    witness_image: Optional[Vec] = None
    exact: bool = True

    def __bool__(self):
        return self.ok


def map_into(source: StateSpace, m: AffineMap, target: StateSpace) -> Containment:
    """Does ``m`` send ``source`` into ``target``?

    Supported pairs: polytope -> polytope (vertex images; exact) and
    ball -> ball (centered maps decided exactly through a rational PSD
    test, off-center maps through an exact sufficient bound with a
    numeric fallback).
    """
    if m.source_dim != source.ambient_dim or m.target_dim != target.ambient_dim:
        raise ValueError("map dimensions disagree with the spaces")
    if isinstance(source, Polytope) and isinstance(target, Polytope):
        for v in source.vertices:
            img = m(v)
            if _in_hull(img, target.vertices) is None:
                return Containment(False, v, img)
        return Containment(True)
    if isinstance(source, Ball) and isinstance(target, Ball):
        return _ball_map_into(source, m, target)
    raise UnsupportedGeometryError(
        f"unsupported geometry: {type(source).__name__} -> {type(target).__name__}"
    )


def _ball_map_into(source: Ball, m: AffineMap, target: Ball) -> Containment:
    # centered coordinates: r -> A r + d with |r| <= R1, need image in |.| <= R2
    a = m.matrix
    d = vec_sub(m(source.center), target.center)
    r1, r2 = source.radius, target.radius
    d_sq = vec_dot(d, d)
    if all(x == 0 for x in d):
        # sup |A r| = sigma_max(A) R1; PSD test of (R2/R1)^2 I - A^T A
        c = (r2 * r2) / (r1 * r1)
        gram = a.transpose().matmul(a)
        s = [
            [
                (c if i == j else QQ(0)) - gram.entries[i][j]
                for j in range(gram.cols)
            ]
            for i in range(gram.rows)
        ]
        if _is_psd(s):
            return Containment(True)
        direction = _negative_direction(s)
        if direction is not None:
            point, image = _ball_witness(source, m, target, direction)
            if point is not None:
                return Containment(False, point, image)
        return Containment(False)
    # sufficient bound: R1 * frobenius(A) + |d| <= R2 implies containment
    frob_sq = sum(
        (x * x for row in a.entries for x in row), QQ(0)
    )
    margin = r2 * r2 - r1 * r1 * frob_sq - d_sq
    if margin >= 0 and 4 * r1 * r1 * frob_sq * d_sq <= margin * margin:
        return Containment(True)
    # documented numeric fallback at tolerance 1e-12
    sigma = _operator_norm_float(a)
    lhs = float(r1) * sigma + math.sqrt(float(d_sq))
    if lhs <= float(r2) * (1 + 1e-12) + 1e-12:
        return Containment(True, exact=False)
    direction = _top_direction_float(a)
    point, image = _ball_witness(source, m, target, direction)
    if point is not None:
        return Containment(False, point, image)
    return Containment(False, exact=False)


def _is_psd(s: list[list[QQ]]) -> bool:
    """Exact PSD test for a symmetric rational matrix.

    Checks every principal minor (not only the leading ones, which do
    not characterize semidefiniteness on the boundary).
    """
    n = len(s)
    import itertools

    for size in range(1, n + 1):
        for idx in itertools.combinations(range(n), size):
            sub = [[s[i][j] for j in idx] for i in idx]
            if _det(sub) < 0:
                return False
    return True


def _det(rows: list[list[QQ]]) -> QQ:
    n = len(rows)
    rows = [list(r) for r in rows]
    det = QQ(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return QQ(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] * inv
            if f:
                for k in range(c, n):
                    rows[i][k] -= f * rows[c][k]
    return det


def _negative_direction(s: list[list[QQ]]) -> Optional[Vec]:
    """Rational direction r with r^T S r < 0, for non-PSD symmetric S."""
    n = len(s)

    def quad(r):
        return sum(r[i] * s[i][j] * r[j] for i in range(n) for j in range(n))

    for i in range(n):
        e = [QQ(0)] * n
        e[i] = QQ(1)
        if quad(e) < 0:
            return tuple(e)
    import itertools

    for i, j in itertools.combinations(range(n), 2):
        for si, sj in ((1, 1), (1, -1)):
            e = [QQ(0)] * n
            e[i], e[j] = QQ(si), QQ(sj)
            if quad(e) < 0:
                return tuple(e)
    # small rational grid; a strictly negative direction is an open set
    coords = [QQ(k, 3) for k in range(-6, 7)]
    for r in itertools.product(coords, repeat=n):
        if any(r) and quad(list(r)) < 0:
            return tuple(r)
    return None


def _ball_witness(source: Ball, m: AffineMap, target: Ball, direction) -> tuple:
    """Scale ``direction`` into the source ball and check the image exactly.

    The direction may come from float heuristics; it is rationalized
    first, then shrunk until the point lies exactly inside the source
    ball, and the image is tested exactly against the target.
    """
    if direction is None:
        return None, None
    d = vec(
        qq(Fraction(x).limit_denominator(10**6)) if isinstance(x, float) else qq(x)
        for x in direction
    )
    norm_sq = vec_dot(d, d)
    if norm_sq == 0:
        return None, None
    t = Fraction(float(source.radius) / math.sqrt(float(norm_sq))).limit_denominator(10**9)
    for _ in range(200):
        if t <= 0:
            return None, None
        if t * t * norm_sq <= source.radius * source.radius:
            break
        t = t * Fraction(999999, 1000000)
    else:
        return None, None
    point = tuple(c + t * x for c, x in zip(source.center, d))
    image = m(point)
    diff = vec_sub(image, target.center)
    if vec_dot(diff, diff) > target.radius * target.radius:
        return point, image
    return None, None


def _operator_norm_float(a: Matrix) -> float:
    """Largest singular value, float power iteration (fallback only)."""
    n = a.cols
    if n == 0 or a.rows == 0:
        return 0.0
    gram = a.transpose().matmul(a)
    g = [[float(x) for x in row] for row in gram.entries]
    v = [1.0 / math.sqrt(n)] * n
    lam = 0.0
    for _ in range(200):
        w = [sum(g[i][j] * v[j] for j in range(n)) for i in range(n)]
        norm = math.sqrt(sum(x * x for x in w))
        if norm == 0.0:
            return 0.0
        v = [x / norm for x in w]
        lam = norm
    return math.sqrt(lam)


def _top_direction_float(a: Matrix) -> Optional[tuple]:
    n = a.cols
    if n == 0:
        return None
    gram = a.transpose().matmul(a)
    g = [[float(x) for x in row] for row in gram.entries]
    v = [1.0 / math.sqrt(n)] * n
    for _ in range(200):
        w = [sum(g[i][j] * v[j] for j in range(n)) for i in range(n)]
        norm = math.sqrt(sum(x * x for x in w))
        if norm == 0.0:
            return None
        v = [x / norm for x in w]
    return tuple(v)
