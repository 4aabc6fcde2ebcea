"""Independent reference computations used by the tests.

Nothing here calls into the code paths under test: projections are found by
grid search plus refinement, finite instances are checked by raw matrix
enumeration, and Picard iteration is a bare loop.
"""
import itertools

import numpy as np


def simplex_lattice(dim, n, scale=1.0):
    """All points of the simplex with coordinates in multiples of scale / n."""
    pts = []
    for c in itertools.combinations(range(n + dim - 1), dim - 1):
        bars = (-1,) + c + (n + dim - 1,)
        pts.append([bars[i + 1] - bars[i] - 1 for i in range(dim)])
    return np.array(pts, dtype=float) * (scale / n)


def simplex_projection_oracle(v, scale=1.0, grid=None):
    """Nearest point of the simplex: best lattice point, then pairwise exact line search.

    Each refinement move shifts mass between two coordinates, which keeps the
    iterate on the simplex; a sweep without improvement means every pairwise
    optimality condition holds, which on the simplex is global optimality.
    """
    v = np.asarray(v, dtype=float)
    dim = v.shape[0]
    if grid is None:
        grid = {1: 1, 2: 400, 3: 150, 4: 40}.get(dim, 16)
    L = simplex_lattice(dim, grid, scale)
    x = L[np.argmin(np.sum((L - v) ** 2, axis=1))].copy()
    for _ in range(10_000):
        moved = 0.0
        for i, j in itertools.permutations(range(dim), 2):
            # minimise |x + t(e_i - e_j) - v|^2 over t in [-x_i, x_j]
            t = ((v[i] - x[i]) - (v[j] - x[j])) / 2
            t = min(max(t, -x[i]), x[j])
            if t != 0:
                x[i] += t
                x[j] -= t
                moved = max(moved, abs(t))
        if moved < 1e-15:
            break
    return x


def polygon_nearest(x, G, h, span=50.0, levels=12, n=401, tol=1e-9):
    """Nearest point to x of the polygon {z : G z <= h} in the plane, by grid search.

    A feasible x is its own answer. Otherwise the answer lies on an edge, so
    each constraint line is scanned with a 1-D grid of feasible points that
    zooms around the best one.
    """
    x = np.asarray(x, dtype=float)
    G, h = np.atleast_2d(np.asarray(G, float)), np.asarray(h, float)
    if np.all(G @ x <= h + tol):
        return x.copy()
    best, best_d = None, np.inf
    for g, c in zip(G, h):
        foot = g * (c / (g @ g))
        tangent = np.array([-g[1], g[0]]) / np.linalg.norm(g)
        lo, hi = -span, span
        cand = None
        for _ in range(levels):
            ts = np.linspace(lo, hi, n)
            P = foot + ts[:, None] * tangent
            ok = np.all(P @ G.T <= h + tol, axis=1)
            if not ok.any():
                break
            d = np.linalg.norm(P - x, axis=1)
            d[~ok] = np.inf
            i = int(np.argmin(d))
            cand = P[i]
            step = (hi - lo) / (n - 1)
            lo, hi = ts[i] - 4 * step, ts[i] + 4 * step
        if cand is not None and np.linalg.norm(cand - x) < best_d:
            best, best_d = cand, np.linalg.norm(cand - x)
    return best


def box_halfspace_constraints(lo, hi, a, c):
    """Stack box bounds and a halfspace as G z <= h (2-D)."""
    G = np.array([[1, 0], [0, 1], [-1, 0], [0, -1], a], dtype=float)
    h = np.array([hi[0], hi[1], -lo[0], -lo[1], c], dtype=float)
    return G, h


def fine_grid_nearest(x, inside, lo, hi, n=1501):
    """Plain uniform grid search over a bounding box (coarse, for sanity checks)."""
    gx = np.linspace(lo[0], hi[0], n)
    gy = np.linspace(lo[1], hi[1], n)
    P = np.stack(np.meshgrid(gx, gy), axis=-1).reshape(-1, 2)
    P = P[inside(P)]
    return P[np.argmin(np.sum((P - x) ** 2, axis=1))]


def picard(T, x0, steps):
    """x_{n+1} = T(x_n), ``steps`` times; returns the list of iterates."""
    xs = [x0]
    for _ in range(steps):
        xs.append(T(xs[-1]))
    return xs


# -- finite spaces ---------------------------------------------------------

def finite_separation(M, A, B):
    return min(M[a, b] for a in A for b in B)


def finite_partners(M, A, y, sep, eps=1e-8):
    """Every u in A with d(u, y) = sep."""
    return [u for u in A if abs(M[u, y] - sep) <= eps]


def finite_A0(M, A, B, eps=1e-8):
    sep = finite_separation(M, A, B)
    return [a for a in A if any(abs(M[a, b] - sep) <= eps for b in B)]


def finite_bpps(M, A, B, table, eps=1e-8):
    sep = finite_separation(M, A, B)
    return [x for x in A if table[x] is not None and abs(M[x, table[x]] - sep) <= eps]


def finite_contraction_constant(M, A, B, table, eps=1e-8):
    """sup d(u,v)/d(x,y) over all x, y in A and all partners u of Tx, v of Ty."""
    sep = finite_separation(M, A, B)
    k = 0.0
    for x, y in itertools.product(A, repeat=2):
        if table[x] is None or table[y] is None:
            continue
        for u in finite_partners(M, A, table[x], sep, eps):
            for v in finite_partners(M, A, table[y], sep, eps):
                if M[u, v] <= 1e-10:
                    continue
                if M[x, y] <= 1e-10:
                    return np.inf
                k = max(k, M[u, v] / M[x, y])
    return k


def random_finite_instance(rng, max_size=12):
    """Random finite metric space with a pair (A, B) and a table map T: A -> B.

    Points are placed on two horizontal rows (A at height 0 and below, B at
    height h) so that d(A,B) is attained many times; the metric is the
    Euclidean or Manhattan distance between the placed points.
    """
    n = int(rng.integers(4, max_size + 1))
    nA = int(rng.integers(2, n - 1))
    nB = n - nA
    h = float(rng.choice([1.0, 2.0, 0.5]))
    # distinct columns within a row keep the points distinct
    xs_a = rng.choice(10, size=nA, replace=False).astype(float)
    if nB <= nA and rng.uniform() < 0.6:
        xs_b = rng.choice(xs_a, size=nB, replace=False)
    else:
        xs_b = rng.choice(10, size=nB, replace=False).astype(float)
    ya = np.where(rng.uniform(size=nA) < 0.2, -1.0, 0.0)
    pts = np.vstack([np.column_stack([xs_a, ya]), np.column_stack([xs_b, np.full(nB, h)])])
    if rng.uniform() < 0.1:
        pts += rng.uniform(-1e-3, 1e-3, size=pts.shape)
    order = 1 if rng.uniform() < 0.3 else 2
    M0 = np.linalg.norm(pts[:, None, :] - pts[None, :, :], ord=order, axis=2)
    A0, B0 = list(range(nA)), list(range(nA, n))
    sep = finite_separation(M0, A0, B0)
    B0 = [b for b in B0 if any(abs(M0[a, b] - sep) <= 1e-8 for a in A0)]
    targets = B0 if rng.uniform() < 0.9 else list(range(nA, n))
    table0 = [None] * n
    mode = rng.uniform()
    if mode < 0.15:
        c = int(rng.choice(targets))
        for a in range(nA):
            table0[a] = c
    elif mode < 0.6:
        # pull x-coordinates towards a centre, then snap to the closest target column
        c, r = rng.uniform(0, 9), rng.uniform(0, 0.6)
        tx = pts[targets, 0]
        for a in range(nA):
            table0[a] = int(targets[int(np.argmin(np.abs(tx - (c + r * (pts[a, 0] - c)))))])
    else:
        for a in range(nA):
            table0[a] = int(rng.choice(targets))
    perm = rng.permutation(n)          # perm[new] = old
    inv = np.argsort(perm)             # inv[old] = new
    M = M0[np.ix_(perm, perm)]
    A = sorted(int(inv[i]) for i in range(nA))
    B = sorted(int(inv[i]) for i in range(nA, n))
    table = [None] * n
    for a in range(nA):
        table[int(inv[a])] = int(inv[table0[a]])
    return M, A, B, table
