"""Deterministic SVG figures of a representation's image in phase space.

Draws the projected outcome-simplex vertices as labeled reference
points, the simplex outline, and the image W(K) (a polygon for polytope
state spaces, an ellipse for balls).  The projection plane is the
affine hull of the image; the basis comes from exact Gram-Schmidt over
the first two independent edge vectors in lexicographic vertex order,
so the output is byte-identical across runs on the same input.
"""

from __future__ import annotations

import math

from .errors import WignerlabError
from .exact import QQ, rank, vec_dot, vec_sub
from .geometry import Polytope
from .wigner import WignerRep, evaluate

VIEWPORT = 800
PAD_FRACTION = 0.08


class PlotError(WignerlabError):
    """The image cannot be drawn in the plane."""


def _projection_basis(origin, candidates):
    """Exact Gram-Schmidt over the first two independent directions."""
    u1 = None
    u2 = None
    for d in candidates:
        if not any(d):
            continue
        if u1 is None:
            u1 = d
        elif rank([u1, d]) == 2:
            u2 = d
            break
    if u1 is None:
        return None, None
    if u2 is None:
        return u1, None
    coeff = vec_dot(u2, u1) / vec_dot(u1, u1)
    w2 = tuple(b - coeff * a for a, b in zip(u1, u2))
    return u1, w2


def _project_factory(origin, u1, w2):
    n1 = math.sqrt(float(vec_dot(u1, u1))) if u1 is not None else 1.0
    n2 = math.sqrt(float(vec_dot(w2, w2))) if w2 is not None else 1.0

    def project(point):
        d = vec_sub(point, origin)
        x = float(vec_dot(d, u1)) / n1 if u1 is not None else 0.0
        y = float(vec_dot(d, w2)) / n2 if w2 is not None else 0.0
        return (x, y)

    return project


def _convex_hull_2d(points):
    """Andrew monotone chain on floats; returns hull in CCW order."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def render_svg(rep: WignerRep) -> str:
    space = rep.state_space
    n_a, n_b = rep.shape
    n = n_a * n_b
    if isinstance(space, Polytope):
        image_pts = [evaluate(rep, v).flatten() for v in space.vertices]
        pts_sorted = sorted(set(image_pts))
        origin = pts_sorted[0]
        dirs = [vec_sub(p, origin) for p in pts_sorted[1:]]
        if dirs and rank(dirs) > 2:
            raise PlotError("the image spans more than two dimensions")
        ellipse_axes = None
    else:
        center_grid = evaluate(rep, space.center).flatten()
        cols = [
            tuple(f.linear[j] for f in rep.functionals())
            for j in range(space.ambient_dim)
        ]
        if rank(cols) > 2:
            raise PlotError("the image spans more than two dimensions")
        origin = center_grid
        dirs = cols
        image_pts = [center_grid]
        ellipse_axes = cols
    u1, w2 = _projection_basis(origin, dirs)
    project = _project_factory(origin, u1, w2)

    deltas = []
    for a in range(n_a):
        for b in range(n_b):
            flat = tuple(QQ(1) if k == a * n_b + b else QQ(0) for k in range(n))
            label = f"{rep.obs_a.outcomes[a]},{rep.obs_b.outcomes[b]}"
            deltas.append((label, project(flat)))

    simplex_outline = _convex_hull_2d([p for _, p in deltas])
    world_points = [p for _, p in deltas]

    if isinstance(space, Polytope):
        projected_image = [project(p) for p in image_pts]
        image_outline = _convex_hull_2d(projected_image)
        world_points += projected_image
        ellipse = None
    else:
        cx, cy = project(origin)
        b_rows = []
        for e, nrm in ((u1, None), (w2, None)):
            if e is None:
                b_rows.append([0.0] * space.ambient_dim)
                continue
            norm = math.sqrt(float(vec_dot(e, e)))
            b_rows.append(
                [float(vec_dot(e, col)) / norm for col in ellipse_axes]
            )
        r = float(space.radius)
        m00 = sum(x * x for x in b_rows[0])
        m01 = sum(x * y for x, y in zip(b_rows[0], b_rows[1]))
        m11 = sum(y * y for y in b_rows[1])
        trace, det = m00 + m11, m00 * m11 - m01 * m01
        disc = math.sqrt(max(trace * trace / 4 - det, 0.0))
        lam1, lam2 = trace / 2 + disc, max(trace / 2 - disc, 0.0)
        angle = 0.5 * math.atan2(2 * m01, m00 - m11) if (m00 != m11 or m01) else 0.0
        ellipse = (cx, cy, r * math.sqrt(lam1), r * math.sqrt(lam2), math.degrees(angle))
        world_points += [
            (cx + r * math.sqrt(lam1), cy + r * math.sqrt(lam1)),
            (cx - r * math.sqrt(lam1), cy - r * math.sqrt(lam1)),
        ]
        image_outline = None
        projected_image = []

    xs = [p[0] for p in world_points]
    ys = [p[1] for p in world_points]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = span * PAD_FRACTION
    span += 2 * pad
    scale = VIEWPORT / span

    def to_view(p):
        x = (p[0] - lo_x + pad + (span - 2 * pad - (hi_x - lo_x)) / 2) * scale
        y = (p[1] - lo_y + pad + (span - 2 * pad - (hi_y - lo_y)) / 2) * scale
        return (x, VIEWPORT - y)

    def fmt(v: float) -> str:
        out = f"{v:.4f}"
        return "0.0000" if out == "-0.0000" else out

    def path(points, close=True) -> str:
        cmds = [f"{'M' if i == 0 else 'L'} {fmt(x)} {fmt(y)}"
                for i, (x, y) in enumerate(to_view(p) for p in points)]
        return " ".join(cmds) + (" Z" if close else "")

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEWPORT}"'
        f' height="{VIEWPORT}" viewBox="0 0 {VIEWPORT} {VIEWPORT}">',
        f'<rect x="0" y="0" width="{VIEWPORT}" height="{VIEWPORT}" fill="#ffffff"/>',
    ]
    if len(simplex_outline) >= 2:
        lines.append(
            f'<path d="{path(simplex_outline)}" fill="none" stroke="#888888"'
            ' stroke-width="1.5" stroke-dasharray="8 5"/>'
        )
    if image_outline is not None:
        if len(image_outline) >= 3:
            lines.append(
                f'<path d="{path(image_outline)}" fill="#4477aa" fill-opacity="0.25"'
                ' stroke="#4477aa" stroke-width="2"/>'
            )
        elif len(image_outline) == 2:
            lines.append(
                f'<path d="{path(image_outline, close=False)}" fill="none"'
                ' stroke="#4477aa" stroke-width="2"/>'
            )
        for p in sorted(set(projected_image)):
            x, y = to_view(p)
            lines.append(
                f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="4" fill="#4477aa"/>'
            )
    if ellipse is not None:
        cx, cy, rx, ry, deg = ellipse
        vx, vy = to_view((cx, cy))
        lines.append(
            f'<ellipse cx="0" cy="0" rx="{fmt(rx * scale)}" ry="{fmt(ry * scale)}"'
            f' transform="translate({fmt(vx)} {fmt(vy)}) rotate({fmt(-deg)})"'
            ' fill="#4477aa" fill-opacity="0.25" stroke="#4477aa" stroke-width="2"/>'
        )
    for label, p in deltas:
        x, y = to_view(p)
        lines.append(
            f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="5" fill="#cc3311"/>'
        )
        lines.append(
            f'<text x="{fmt(x + 10)}" y="{fmt(y - 8)}" font-family="monospace"'
            f' font-size="20" fill="#cc3311">{label}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
