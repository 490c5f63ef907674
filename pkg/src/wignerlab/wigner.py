"""Wigner representations: construction, positivity, faithfulness.

A representation is a grid of affine functionals, one per phase point
(a, b), whose row sums reproduce the first observable's effects and
whose column sums reproduce the second's.  The whole family for a fixed
pair of observables is parametrized by the free block of
(|A|-1)(|B|-1) functionals: the anchored row, column and corner are
then forced by the marginal identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import DomainError, PreconditionError
from .exact import (
    QQ,
    Infeasible,
    LinearProgram,
    Vec,
    lp_feasible,
    qq,
    rank,
    vec,
)
from .geometry import (
    AffineFunctional,
    AffineMap,
    ExtremalValue,
    Polytope,
    StateSpace,
    affine_basis,
    affine_map_with_orthogonal_extension,
    contains,
    dimension,
    extremal_range,
)
from .theory import Observable


@dataclass(frozen=True)
class SignedGrid:
    """A signed probability measure on the product phase space."""

    entries: tuple[Vec, ...]

    def __post_init__(self):
        entries = tuple(vec(row) for row in self.entries)
        if not entries or not entries[0]:
            raise ValueError("empty grid")
        width = len(entries[0])
        if any(len(r) != width for r in entries):
            raise ValueError("ragged grid")
        if sum(x for row in entries for x in row) != 1:
            raise ValueError("grid entries must sum to one")
        object.__setattr__(self, "entries", entries)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def flatten(self) -> Vec:
        return tuple(x for row in self.entries for x in row)

    @classmethod
    def from_flat(cls, flat: Sequence, shape: tuple[int, int]) -> "SignedGrid":
        n_a, n_b = shape
        flat = vec(flat)
        return cls(tuple(flat[a * n_b : (a + 1) * n_b] for a in range(n_a)))

    def row_sums(self) -> Vec:
        return tuple(sum(row, QQ(0)) for row in self.entries)

    def col_sums(self) -> Vec:
        n_a, n_b = self.shape
        return tuple(sum((self.entries[a][b] for a in range(n_a)), QQ(0)) for b in range(n_b))

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.entries for x in row)


@dataclass(frozen=True)
class WignerRep:
    """Grid of affine functionals tied to a state space and two observables."""

    state_space: StateSpace
    obs_a: Observable
    obs_b: Observable
    grid: tuple[tuple[AffineFunctional, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(row) for row in self.grid)
        if len(grid) != self.obs_a.n_outcomes or any(
            len(row) != self.obs_b.n_outcomes for row in grid
        ):
            raise ValueError("grid shape must be |A| x |B|")
        dim = self.state_space.ambient_dim
        if any(f.dim != dim for row in grid for f in row):
            raise ValueError("grid functionals have the wrong dimension")
        object.__setattr__(self, "grid", grid)

    @property
    def shape(self) -> tuple[int, int]:
        return self.obs_a.n_outcomes, self.obs_b.n_outcomes

    def functionals(self) -> list[AffineFunctional]:
        return [f for row in self.grid for f in row]


def evaluate(rep: WignerRep, x: Sequence) -> SignedGrid:
    """The signed distribution assigned to the state ``x``."""
    x = vec(x)
    if not contains(rep.state_space, x):
        raise DomainError(f"point {tuple(map(str, x))} is not a state")
    return SignedGrid(tuple(tuple(f(x) for f in row) for row in rep.grid))


@dataclass(frozen=True)
class MarginalViolation:
    axis: str  # "row" or "column"
    index: int
    expected: AffineFunctional
    got: AffineFunctional


@dataclass(frozen=True)
class MarginalReport:
    violations: tuple[MarginalViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def check_marginals(rep: WignerRep) -> MarginalReport:
    """Verify the row/column identities coefficient-wise, not pointwise."""
    n_a, n_b = rep.shape
    dim = rep.state_space.ambient_dim
    violations = []
    for a in range(n_a):
        total = AffineFunctional.zero(dim)
        for b in range(n_b):
            total = total + rep.grid[a][b]
        if total != rep.obs_a.effects[a]:
            violations.append(MarginalViolation("row", a, rep.obs_a.effects[a], total))
    for b in range(n_b):
        total = AffineFunctional.zero(dim)
        for a in range(n_a):
            total = total + rep.grid[a][b]
        if total != rep.obs_b.effects[b]:
            violations.append(MarginalViolation("column", b, rep.obs_b.effects[b], total))
    return MarginalReport(tuple(violations))


def _default_anchor(obs_a: Observable, obs_b: Observable) -> tuple[int, int]:
    # last outcome of each observable; arbitrary but reproducible
    return obs_a.n_outcomes - 1, obs_b.n_outcomes - 1


def construct_family(
    obs_a: Observable,
    obs_b: Observable,
    space: StateSpace,
    free: Optional[dict[tuple[int, int], AffineFunctional]] = None,
    anchor: Optional[tuple[int, int]] = None,
) -> WignerRep:
    """Member of the representation family for the given free block.

    ``free`` maps index pairs (a, b) with a != anchor_a, b != anchor_b
    to arbitrary affine functionals (missing slots default to zero);
    the anchored row, column and corner are filled by the closed-form
    completion, so the result always passes ``check_marginals``.
    """
    n_a, n_b = obs_a.n_outcomes, obs_b.n_outcomes
    alpha, beta = anchor if anchor is not None else _default_anchor(obs_a, obs_b)
    if not (0 <= alpha < n_a and 0 <= beta < n_b):
        raise ValueError("anchor out of range")
    dim = space.ambient_dim
    zero = AffineFunctional.zero(dim)
    free = dict(free or {})
    for (a, b) in free:
        if a == alpha or b == beta or not (0 <= a < n_a and 0 <= b < n_b):
            raise ValueError(f"slot {(a, b)} is not in the free block")
    grid = [[zero for _ in range(n_b)] for _ in range(n_a)]
    for a in range(n_a):
        for b in range(n_b):
            if a != alpha and b != beta:
                grid[a][b] = free.get((a, b), zero)
    for a in range(n_a):
        if a == alpha:
            continue
        total = zero
        for b in range(n_b):
            if b != beta:
                total = total + grid[a][b]
        grid[a][beta] = obs_a.effects[a] - total
    for b in range(n_b):
        if b == beta:
            continue
        total = zero
        for a in range(n_a):
            if a != alpha:
                total = total + grid[a][b]
        grid[alpha][b] = obs_b.effects[b] - total
    corner = AffineFunctional.one(dim)
    for a in range(n_a):
        if a != alpha:
            corner = corner - obs_a.effects[a]
    for b in range(n_b):
        if b != beta:
            corner = corner - obs_b.effects[b]
    for a in range(n_a):
        for b in range(n_b):
            if a != alpha and b != beta:
                corner = corner + grid[a][b]
    grid[alpha][beta] = corner
    return WignerRep(space, obs_a, obs_b, tuple(tuple(row) for row in grid))


def degenerate_rep(
    obs_a: Observable,
    obs_b: Observable,
    space: StateSpace,
    anchor: Optional[tuple[int, int]] = None,
) -> WignerRep:
    """The representation supported on the anchored cross (all free
    slots zero); it collapses exactly the state pairs the two
    observables cannot distinguish."""
    return construct_family(obs_a, obs_b, space, free={}, anchor=anchor)


def perturb(
    rep: WignerRep, a1: int, a2: int, b1: int, b2: int, t
) -> WignerRep:
    """Add the checkerboard t * (e_[a1,b1] + e_[a2,b2] - e_[a1,b2] - e_[a2,b1]).

    All marginals are unchanged, so the result is another representation
    of the same observables; for t != 0 it differs from the input.
    """
    if a1 == a2 or b1 == b2:
        raise ValueError("perturbation indices must be distinct per axis")
    t = qq(t)
    rows = [list(row) for row in rep.grid]
    rows[a1][b1] = rows[a1][b1].shift(t)
    rows[a2][b2] = rows[a2][b2].shift(t)
    rows[a1][b2] = rows[a1][b2].shift(-t)
    rows[a2][b1] = rows[a2][b1].shift(-t)
    return WignerRep(rep.state_space, rep.obs_a, rep.obs_b, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class NegativityWitness:
    """Where a representation goes negative: the phase point, an exact
    value, and either the witnessing vertex (polytopes) or the ambient
    direction of the minimizing boundary state (balls)."""

    phase_point: tuple
    value: Union[QQ, ExtremalValue]
    state: Optional[Vec] = None
    direction: Optional[Vec] = None


@dataclass(frozen=True)
class PositivityResult:
    ok: bool
    witness: Optional[NegativityWitness] = None

    def __bool__(self):
        return self.ok


def is_positive(rep: WignerRep) -> PositivityResult:
    """Is the image inside the genuine probability simplex?"""
    space = rep.state_space
    for a, row in enumerate(rep.grid):
        for b, f in enumerate(row):
            if isinstance(space, Polytope):
                for v in space.vertices:
                    val = f(v)
                    if val < 0:
                        return PositivityResult(
                            False,
                            NegativityWitness(
                                (rep.obs_a.outcomes[a], rep.obs_b.outcomes[b]),
                                val,
                                state=v,
                            ),
                        )
            else:
                lo, _ = extremal_range(space, f)
                if lo < 0:
                    return PositivityResult(
                        False,
                        NegativityWitness(
                            (rep.obs_a.outcomes[a], rep.obs_b.outcomes[b]),
                            lo,
                            direction=tuple(-c for c in f.linear),
                        ),
                    )
    return PositivityResult(True)


def grid_rank(rep: WignerRep) -> int:
    """Rank of the grid functionals restricted to the affine hull of K."""
    basis = affine_basis(rep.state_space)
    return rank([[f(p) for p in basis] for f in rep.functionals()])


def is_faithful(rep: WignerRep) -> bool:
    """Faithful iff the grid functionals span all affine functions on K."""
    return grid_rank(rep) == dimension(rep.state_space) + 1


@dataclass(frozen=True)
class FaithfulChoice:
    """Both sides of the faithful-choice inequality."""

    possible: bool
    free_slots: int  # (|A|-1)(|B|-1)
    required: int  # dim(K) + 1 - rank(effect span)
    space_dim: int
    effect_rank: int

    def __bool__(self):
        return self.possible


def faithful_choice_possible(
    obs_a: Observable, obs_b: Observable, space: StateSpace
) -> FaithfulChoice:
    from .theory import effect_span_rank

    free_slots = (obs_a.n_outcomes - 1) * (obs_b.n_outcomes - 1)
    dim = dimension(space)
    span = effect_span_rank(obs_a, obs_b, space)
    required = dim + 1 - span
    return FaithfulChoice(free_slots >= required, free_slots, required, dim, span)


def faithful_member(
    obs_a: Observable,
    obs_b: Observable,
    space: StateSpace,
    anchor: Optional[tuple[int, int]] = None,
) -> Optional[WignerRep]:
    """A faithful family member, or ``None`` when none exists.

    Free slots are filled greedily with ambient coordinate functionals,
    keeping a choice exactly when it increases the rank of the grid
    restricted to aff(K).
    """
    n_a, n_b = obs_a.n_outcomes, obs_b.n_outcomes
    alpha, beta = anchor if anchor is not None else _default_anchor(obs_a, obs_b)
    dim_ambient = space.ambient_dim
    target = dimension(space) + 1
    pool = [AffineFunctional.coordinate(dim_ambient, i) for i in range(dim_ambient)]
    free: dict[tuple[int, int], AffineFunctional] = {}
    rep = construct_family(obs_a, obs_b, space, free, (alpha, beta))
    best = grid_rank(rep)
    for a in range(n_a):
        for b in range(n_b):
            if a == alpha or b == beta or best >= target:
                continue
            for g in pool:
                trial = dict(free)
                trial[(a, b)] = g
                candidate = construct_family(obs_a, obs_b, space, trial, (alpha, beta))
                r = grid_rank(candidate)
                if r > best:
                    free, rep, best = trial, candidate, r
                    break
    return rep if best == target else None


@dataclass(frozen=True)
class PositiveFound:
    rep: WignerRep
    program: LinearProgram
    witness: Vec


@dataclass(frozen=True)
class NoPositiveMember:
    program: LinearProgram
    certificate: Infeasible


def positive_member(
    obs_a: Observable,
    obs_b: Observable,
    space: StateSpace,
    anchor: Optional[tuple[int, int]] = None,
) -> Union[PositiveFound, NoPositiveMember]:
    """Search the whole family for a positive member by one LP over the
    free block.  Since the family parametrization is exhaustive, an
    infeasibility certificate proves no positive representation exists.
    """
    if not isinstance(space, Polytope):
        raise PreconditionError("positive-member search needs a polytope")
    n_a, n_b = obs_a.n_outcomes, obs_b.n_outcomes
    alpha, beta = anchor if anchor is not None else _default_anchor(obs_a, obs_b)
    dim = space.ambient_dim
    width = dim + 1
    slots = [(a, b) for a in range(n_a) for b in range(n_b) if a != alpha and b != beta]
    slot_pos = {s: i for i, s in enumerate(slots)}
    n_vars = len(slots) * width

    def entry_expression(a: int, b: int):
        """Return (coeff_map, fixed) with coeff_map: var index -> sign,
        fixed: AffineFunctional, so that entry = fixed + sum sign * q_slot."""
        fixed = AffineFunctional.zero(dim)
        coeffs: dict[tuple[int, int], QQ] = {}
        if a != alpha and b != beta:
            coeffs[(a, b)] = QQ(1)
        elif a != alpha and b == beta:
            fixed = obs_a.effects[a]
            for bb in range(n_b):
                if bb != beta:
                    coeffs[(a, bb)] = QQ(-1)
        elif a == alpha and b != beta:
            fixed = obs_b.effects[b]
            for aa in range(n_a):
                if aa != alpha:
                    coeffs[(aa, b)] = QQ(-1)
        else:
            fixed = AffineFunctional.one(dim)
            for aa in range(n_a):
                if aa != alpha:
                    fixed = fixed - obs_a.effects[aa]
            for bb in range(n_b):
                if bb != beta:
                    fixed = fixed - obs_b.effects[bb]
            for s in slots:
                coeffs[s] = QQ(1)
        return coeffs, fixed

    ineqs = []
    for v in space.vertices:
        point = v + (QQ(1),)
        for a in range(n_a):
            for b in range(n_b):
                coeffs, fixed = entry_expression(a, b)
                row = [QQ(0)] * n_vars
                for slot, sign in coeffs.items():
                    base = slot_pos[slot] * width
                    for k in range(width):
                        row[base + k] += sign * point[k]
                ineqs.append((tuple(row), -fixed(v)))
    lp = LinearProgram(n_vars, (), tuple(ineqs))
    result = lp_feasible(lp)
    if isinstance(result, Infeasible):
        return NoPositiveMember(lp, result)
    free = {}
    for slot, i in slot_pos.items():
        base = i * width
        free[slot] = AffineFunctional(
            result.witness[base : base + dim], result.witness[base + dim]
        )
    rep = construct_family(obs_a, obs_b, space, free, (alpha, beta))
    if not is_positive(rep).ok:  # pragma: no cover - internal guard
        raise ArithmeticError("LP returned a non-positive member")
    return PositiveFound(rep, lp, result.witness)


def isomorphism(rep1: WignerRep, rep2: WignerRep) -> AffineMap:
    """Affine bijection between the image hulls with L(W1(x)) = W2(x).

    Off the hull of W1(K) the map acts as the identity on the orthogonal
    complement when both grids have the same size, and as zero
    otherwise; either extension keeps total mass 1.
    """
    if rep1.state_space != rep2.state_space:
        raise PreconditionError("representations live on different state spaces")
    if not is_faithful(rep1) or not is_faithful(rep2):
        raise PreconditionError("isomorphism needs faithful representations")
    basis = affine_basis(rep1.state_space)
    u = [evaluate(rep1, p).flatten() for p in basis]
    w = [evaluate(rep2, p).flatten() for p in basis]
    lam = affine_map_with_orthogonal_extension(u, w)
    if lam is None:  # pragma: no cover - faithful images are independent
        raise ArithmeticError("interpolation failed on a faithful image")
    return lam
