"""Points, planes and lines of PG(3,q).

Points and planes are normalized 4-tuples of element encodings (first nonzero
coordinate scaled to 1); a plane (c0,c1,c2,c3) is the locus of
c0*x0 + c1*x1 + c2*x2 + c3*x3 = 0.  A line is canonically represented by its
normalized Pluecker 6-vector (l01,l02,l03,l12,l13,l23), l_ij = u_i*v_j - u_j*v_i
for any two spanning points, together with the two lexicographically smallest
points on it.
"""

from __future__ import annotations

from itertools import product


def normalize(field, vec):
    """Scale so the first nonzero coordinate is 1; reject the zero vector."""
    for c in vec:
        if c:
            s = field.inv(c)
            return tuple(field.mul(s, x) for x in vec)
    raise ValueError("zero vector has no projective normalization")


def vec_add(field, u, v):
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_scale(field, c, u):
    return tuple(field.mul(c, x) for x in u)


def dot(field, u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(a, b))
    return acc


def incident(field, point, plane) -> bool:
    return dot(field, point, plane) == 0


def point_count(q: int) -> int:
    return q**3 + q**2 + q + 1


def line_count(q: int) -> int:
    return (q**2 + 1) * (q**2 + q + 1)


def _proj_reps(q, n):
    """Normalized representatives of PG(n-1, q) as n-tuples, ascending."""
    reps = []
    for lead in range(n - 1, -1, -1):
        for tail in product(range(q), repeat=n - 1 - lead):
            reps.append((0,) * lead + (1,) + tail)
    return reps


def all_points(field):
    return _proj_reps(field.q, 4)


def all_planes(field):
    return _proj_reps(field.q, 4)


class ProjLine:
    """Canonical line value: normalized Pluecker vector plus spanning pair."""

    __slots__ = ("plucker", "pair")

    def __init__(self, plucker, pair):
        self.plucker = plucker
        self.pair = pair

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.plucker == other.plucker

    def __hash__(self):
        return hash(self.plucker)

    def __lt__(self, other):
        return self.plucker < other.plucker

    def __repr__(self):
        return f"ProjLine{self.plucker}"


def _plucker_of(field, u, v):
    m = field.mul
    s = field.sub
    return (
        s(m(u[0], v[1]), m(u[1], v[0])),
        s(m(u[0], v[2]), m(u[2], v[0])),
        s(m(u[0], v[3]), m(u[3], v[0])),
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[1], v[3]), m(u[3], v[1])),
        s(m(u[2], v[3]), m(u[3], v[2])),
    )


def _span_points(field, u, v):
    """All q+1 points of the line through distinct points u, v."""
    pts = [normalize(field, v)]
    for t in field.elements():
        pts.append(normalize(field, vec_add(field, u, vec_scale(field, t, v))))
    return pts


def line_through(field, p, q) -> ProjLine:
    """The canonical line through two distinct points; symmetric in arguments."""
    u = normalize(field, p)
    v = normalize(field, q)
    raw = _plucker_of(field, u, v)
    if not any(raw):
        raise ValueError(f"line_through requires distinct points, got {p} and {q}")
    pts = sorted(_span_points(field, u, v))
    return ProjLine(normalize(field, raw), (pts[0], pts[1]))


def line_points(field, line):
    return sorted(_span_points(field, line.pair[0], line.pair[1]))


def point_on_line(field, point, line) -> bool:
    """Incidence straight from the Pluecker vector (no point enumeration)."""
    x0, x1, x2, x3 = point
    l01, l02, l03, l12, l13, l23 = line.plucker
    m = field.mul
    s = field.sub
    a = field.add
    return (
        a(s(m(x0, l12), m(x1, l02)), m(x2, l01)) == 0
        and a(s(m(x0, l13), m(x1, l03)), m(x3, l01)) == 0
        and a(s(m(x0, l23), m(x2, l03)), m(x3, l02)) == 0
        and a(s(m(x1, l23), m(x2, l13)), m(x3, l12)) == 0
    )


def line_in_plane(field, line, plane) -> bool:
    u, v = line.pair
    return incident(field, u, plane) and incident(field, v, plane)


def klein_value(field, plucker):
    """The quadratic Pluecker relation l01*l23 - l02*l13 + l03*l12."""
    l01, l02, l03, l12, l13, l23 = plucker
    m = field.mul
    return field.add(field.sub(m(l01, l23), m(l02, l13)), m(l03, l12))


def lines_meet(field, la, lb) -> bool:
    """Two lines meet iff the polarized Klein form of their vectors vanishes."""
    p = la.plucker
    r = lb.plucker
    m = field.mul
    acc = 0
    for x, y, sign in (
        (p[0], r[5], 1), (p[1], r[4], -1), (p[2], r[3], 1),
        (p[3], r[2], 1), (p[4], r[1], -1), (p[5], r[0], 1),
    ):
        t = m(x, y)
        acc = field.add(acc, t if sign > 0 else field.neg(t))
    return acc == 0


def line_from_plucker(field, plucker) -> ProjLine:
    """Rebuild the canonical line from a (valid) Pluecker vector."""
    p = normalize(field, plucker)
    l01, l02, l03, l12, l13, l23 = p
    n = field.neg
    mat = (
        (0, l01, l02, l03),
        (n(l01), 0, l12, l13),
        (n(l02), n(l12), 0, l23),
        (n(l03), n(l13), n(l23), 0),
    )
    rows = [normalize(field, r) for r in mat if any(r)]
    u = rows[0]
    v = next((r for r in rows[1:] if r != u), None)
    if v is None:
        raise ValueError(f"{plucker} does not satisfy the Klein relation")
    line = line_through(field, u, v)
    if line.plucker != p:
        raise ValueError(f"{plucker} does not satisfy the Klein relation")
    return line


def _rref_pairs(q, ncols):
    """Spanning row pairs of every rank-2 RREF matrix with ncols columns."""
    for c0 in range(ncols - 1):
        for c1 in range(c0 + 1, ncols):
            free0 = [j for j in range(c0 + 1, ncols) if j != c1]
            free1 = [j for j in range(c1 + 1, ncols)]
            for vals in product(range(q), repeat=len(free0) + len(free1)):
                r0 = [0] * ncols
                r1 = [0] * ncols
                r0[c0] = 1
                r1[c1] = 1
                for j, val in zip(free0, vals):
                    r0[j] = val
                for j, val in zip(free1, vals[len(free0):]):
                    r1[j] = val
                yield tuple(r0), tuple(r1)


def all_lines(field):
    """Every line exactly once, ascending by Pluecker key.  O(q^4) memory."""
    lines = [line_through(field, u, v) for u, v in _rref_pairs(field.q, 4)]
    lines.sort()
    return lines


def _nullspace(field, rows, ncols):
    """Basis of the right null space of the given row vectors."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        s = field.inv(mat[r][c])
        mat[r] = [field.mul(s, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(mat[i][fc])
        basis.append(tuple(vec))
    return basis


def meet_planes(field, pi1, pi2) -> ProjLine:
    """The line common to two distinct planes."""
    basis = _nullspace(field, [pi1, pi2], 4)
    if len(basis) != 2:
        raise ValueError(f"meet_planes requires distinct planes, got {pi1} and {pi2}")
    return line_through(field, basis[0], basis[1])


def plane_basis(field, plane):
    """Three independent points spanning the plane."""
    return _nullspace(field, [plane], 4)


def plane_points(field, plane):
    b = plane_basis(field, plane)
    pts = []
    for coeffs in _proj_reps(field.q, 3):
        v = (0, 0, 0, 0)
        for c, bv in zip(coeffs, b):
            v = vec_add(field, v, vec_scale(field, c, bv))
        pts.append(normalize(field, v))
    return sorted(pts)


def lines_in_plane(field, plane):
    """The q^2+q+1 lines lying in the plane."""
    b = plane_basis(field, plane)
    out = []
    for r0, r1 in _rref_pairs(field.q, 3):
        u = (0, 0, 0, 0)
        v = (0, 0, 0, 0)
        for c, bv in zip(r0, b):
            u = vec_add(field, u, vec_scale(field, c, bv))
        for c, bv in zip(r1, b):
            v = vec_add(field, v, vec_scale(field, c, bv))
        out.append(line_through(field, u, v))
    return sorted(out)


def lines_through_point(field, point):
    """The q^2+q+1 lines through the point."""
    point = normalize(field, point)
    j = next(i for i in range(4) if point[i])
    avoid = tuple(1 if i == j else 0 for i in range(4))  # plane x_j = 0 misses point
    return sorted(line_through(field, point, v) for v in plane_points(field, avoid))


def planes_through_line(field, line):
    """The q+1 planes of the pencil through the line."""
    u, v = line.pair
    basis = _nullspace(field, [u, v], 4)
    planes = [normalize(field, basis[1])]
    for t in field.elements():
        planes.append(normalize(field, vec_add(field, basis[0], vec_scale(field, t, basis[1]))))
    return sorted(planes)
