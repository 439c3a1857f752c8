"""Small exact linear algebra over Q and Z used by the polytope machinery.

Everything here works on tuples of ints/Fractions at desk scale (dimension
at most ~6), favoring clarity and exactness over asymptotic speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vector = tuple


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def scale(a, s):
    return tuple(s * x for x in a)


def primitive(v):
    """Divide an integer vector by the gcd of its entries (0 stays 0)."""
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref rows, pivot column indices)."""
    m = [list(map(Fraction, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(rref(rows)[0])


def kernel_basis(rows) -> list[tuple[Fraction, ...]]:
    """Basis of the rational kernel {x : rows @ x = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def clear_denominators(v) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector."""
    fracs = [Fraction(x) for x in v]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    return primitive(ints)


def solve(rows, rhs):
    """Solve a linear system exactly; returns None if inconsistent.

    For underdetermined systems an arbitrary solution (free vars = 0) is
    returned.
    """
    if not rows:
        return tuple()
    augmented = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(augmented)
    ncols = len(rows[0])
    for row in red:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        if p == ncols:
            return None
        x[p] = red[i][-1]
    return tuple(x)


def integer_kernel_basis(rows: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^n : rows @ x = 0} (a saturated sublattice).

    Uses column reduction by a unimodular matrix: find U with A U = [H | 0];
    the trailing columns of U span the kernel.
    """
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    a = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # column ops mirror

    def col_op(j, k, f):
        # column_j += f * column_k
        for row in a:
            row[j] += f * row[k]
        for row in u:
            row[j] += f * row[k]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in u:
            row[j], row[k] = row[k], row[j]

    lead = 0
    for i in range(len(a)):
        if lead >= n:
            break
        # Euclidean reduction across columns lead..n-1 on row i.
        while True:
            nz = [j for j in range(lead, n) if a[i][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(a[i][j]))
            col_swap(lead, jmin)
            done = True
            for j in range(lead + 1, n):
                if a[i][j] != 0:
                    q = a[i][j] // a[i][lead]
                    col_op(j, lead, -q)
                    if a[i][j] != 0:
                        done = False
            if done:
                break
        if a[i][lead] != 0:
            lead += 1
    # Columns lead..n-1 of the implicit transform are the kernel basis.
    basis = []
    for j in range(lead, n):
        col = tuple(u[i][j] for i in range(n))
        basis.append(col)
    return basis


def hyperplane_normal(points) -> tuple[int, ...] | None:
    """Primitive integer normal of the hyperplane through the given points.

    Returns None when the points do not affinely span a hyperplane of the
    ambient space (too low-dimensional or not unique).
    """
    base = points[0]
    rows = [vec_sub(p, base) for p in points[1:]]
    n = len(base)
    if rank(rows) != n - 1:
        return None
    if n == 1:
        return (1,)
    kernel = kernel_basis(rows)
    if len(kernel) != 1:
        return None
    return clear_denominators(kernel[0])
