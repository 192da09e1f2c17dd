"""Brute-force reference implementations used as test oracles.

Everything here is written with nested Python loops over Fractions and never
calls into the library's tensor code, so agreement is a genuine cross-check.
"""

from fractions import Fraction
from itertools import product

import sympy


def F(x):
    return Fraction(x)


def bracket(sc, x, y):
    n = len(x)
    out = [Fraction(0)] * n
    for i, j, k in product(range(n), repeat=3):
        if x[i] and y[j]:
            out[k] += x[i] * y[j] * sc[i][j][k]
    return out


def basis(n, i):
    return [Fraction(int(j == i)) for j in range(n)]


def jacobi_defects(sc):
    """All ``(i, j, k)`` whose cyclic Jacobi sum is nonzero."""
    n = len(sc)
    bad = []
    for i, j, k in product(range(n), repeat=3):
        e = [basis(n, t) for t in (i, j, k)]
        tot = [a + b + c for a, b, c in zip(
            bracket(sc, bracket(sc, e[0], e[1]), e[2]),
            bracket(sc, bracket(sc, e[1], e[2]), e[0]),
            bracket(sc, bracket(sc, e[2], e[0]), e[1]),
        )]
        if any(tot):
            bad.append((i, j, k))
    return bad


def matrix_algebra_sc(mats):
    """Structure constants of the span of sympy matrices under the commutator (via sympy solve)."""
    n = len(mats)
    size = mats[0].shape[0]
    cols = sympy.Matrix.hstack(*[m.reshape(size * size, 1) for m in mats])
    sc = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            comm = (mats[i] * mats[j] - mats[j] * mats[i]).reshape(size * size, 1)
            sol, params = cols.gauss_jordan_solve(comm)
            assert not params
            for k in range(n):
                q = sympy.Rational(sol[k])
                sc[i][j][k] = Fraction(int(q.p), int(q.q))
    return sc


def sl2_matrices():
    H = sympy.Matrix([[1, 0], [0, -1]])
    E = sympy.Matrix([[0, 1], [0, 0]])
    Fm = sympy.Matrix([[0, 0], [1, 0]])
    return [H, E, Fm]


def killing(sc):
    n = len(sc)
    K = [[Fraction(0)] * n for _ in range(n)]
    for a, b in product(range(n), repeat=2):
        # tr(ad a ad b) = sum_{j,k} sc[a][k][j] sc[b][j][k]
        K[a][b] = sum(sc[a][k][j] * sc[b][j][k] for j in range(n) for k in range(n))
    return K


def cybe(sc, r):
    """``[r12, r13] + [r12, r23] + [r13, r23]`` as a dict-free nested list ``[p][q][s]``."""
    n = len(sc)
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a, b, c, d in product(range(n), repeat=4):
        w = r[a][b] * r[c][d]
        if not w:
            continue
        for k in range(n):
            # [r12, r13] = r_ab r_cd [e_a, e_c] (x) e_b (x) e_d
            out[k][b][d] += w * sc[a][c][k]
            # [r12, r23] = r_ab r_cd e_a (x) [e_b, e_c] (x) e_d
            out[a][k][d] += w * sc[b][c][k]
            # [r13, r23] = r_ab r_cd e_a (x) e_c (x) [e_b, e_d]
            out[a][c][k] += w * sc[b][d][k]
    return out


def symmetric_correction(sc, r):
    """``[(r13 + r31), (r23 + r32)] = X_ab X_cd e_a (x) e_c (x) [e_b, e_d]`` with ``X = r + r^T``."""
    n = len(sc)
    X = [[r[a][b] + r[b][a] for b in range(n)] for a in range(n)]
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a, b, c, d, k in product(range(n), repeat=5):
        out[a][c][k] += X[a][b] * X[c][d] * sc[b][d][k]
    return out


def ecybe(sc, r, eps):
    C, S = cybe(sc, r), symmetric_correction(sc, r)
    n = len(sc)
    return [[[C[p][q][s] - eps * S[p][q][s] for s in range(n)] for q in range(n)] for p in range(n)]


def rota_baxter(sc, R, lam):
    """``[Rx, Ry] - R([Rx, y] + [x, Ry] + lam [x, y])`` on basis pairs; ``R[i][j]`` maps ``e_j``."""
    n = len(sc)
    apply = lambda v: [sum(R[i][j] * v[j] for j in range(n)) for i in range(n)]  # noqa: E731
    out = {}
    for x, y in product(range(n), repeat=2):
        ex, ey = basis(n, x), basis(n, y)
        Rx, Ry = apply(ex), apply(ey)
        inner = [p + q + lam * t for p, q, t in zip(bracket(sc, Rx, ey), bracket(sc, ex, Ry), bracket(sc, ex, ey))]
        lhs = bracket(sc, Rx, Ry)
        rhs = apply(inner)
        out[(x, y)] = [a - b for a, b in zip(lhs, rhs)]
    return out


def coadjoint_act(sc, x, a):
    """``ad*(x) a`` with ``<ad*(x) a, y> = -<a, [x, y]>``."""
    n = len(sc)
    return [-sum(a[k] * bracket(sc, x, basis(n, j))[k] for k in range(n)) for j in range(n)]


def extended_coadjoint(sc, A, B, kappa):
    """``[A a, A b] - A(ad*(A a) b - ad*(A b) a) - kappa [B a, B b]`` on basis covectors."""
    n = len(sc)
    app = lambda M, v: [sum(M[i][j] * v[j] for j in range(n)) for i in range(n)]  # noqa: E731
    out = {}
    for a, b in product(range(n), repeat=2):
        ea, eb = basis(n, a), basis(n, b)
        Aa, Ab = app(A, ea), app(A, eb)
        inner = [p - q for p, q in zip(coadjoint_act(sc, Aa, eb), coadjoint_act(sc, Ab, ea))]
        t1 = bracket(sc, Aa, Ab)
        t2 = app(A, inner)
        t3 = bracket(sc, app(B, ea), app(B, eb))
        out[(a, b)] = [p - q - kappa * s for p, q, s in zip(t1, t2, t3)]
    return out


def dual_bracket_sc(sc, r):
    """``<[a, b], x> = <delta(x), a (x) b>`` with ``delta(x) = (ad_x (x) 1 + 1 (x) ad_x) r``."""
    n = len(sc)
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a, b, i in product(range(n), repeat=3):
        out[a][b][i] = sum(r[c][b] * sc[i][c][a] for c in range(n)) + sum(r[a][d] * sc[i][d][b] for d in range(n))
    return out


def drinfeld_double_sc(sc, dual_sc):
    """Bracket on ``g + g*`` forced by invariance of the hyperbolic pairing (``g`` first)."""
    n = len(sc)
    N = 2 * n
    out = [[[Fraction(0)] * N for _ in range(N)] for _ in range(N)]
    for i, j, k in product(range(n), repeat=3):
        out[i][j][k] = sc[i][j][k]
        out[n + i][n + j][n + k] = dual_sc[i][j][k]
    for i, b, c in product(range(n), repeat=3):
        # B([e_i, e^b], e^c) = B(e_i, [e^b, e^c]) gives the e_c coefficient
        g_part = dual_sc[b][c][i]
        # B([e_i, e^b], e_c) = -B(e^b, [e_i, e_c]) gives the e^c coefficient
        d_part = -sc[i][c][b]
        out[i][n + b][c], out[n + b][i][c] = g_part, -g_part
        out[i][n + b][n + c], out[n + b][i][n + c] = d_part, -d_part
    return out


def lie_poisson_flow(sc_r, grad, a):
    """``da_k/dt = sum_ij grad_i [e_i, e_k]_r coefficient e_j times a_j``, in floats."""
    n = len(a)
    return [sum(grad[i] * float(sc_r[i][k][j]) * a[j] for i in range(n) for j in range(n)) for k in range(n)]


def to_lists(arr):
    """Nested Python lists from a numpy object array."""
    return arr.tolist()


def _mul(T, x, y):
    n = len(x)
    out = [Fraction(0)] * n
    for i, j, k in product(range(n), repeat=3):
        if x[i] and y[j]:
            out[k] += x[i] * y[j] * T[i][j][k]
    return out


def postlie_defects(B, C):
    """Names of the PostLie identities that fail somewhere on basis triples."""
    n = len(B)
    e = [basis(n, i) for i in range(n)]
    add = lambda *vs: [sum(t) for t in zip(*vs)]  # noqa: E731
    neg = lambda v: [-t for t in v]  # noqa: E731
    bad = set()
    for x, y in product(range(n), repeat=2):
        if any(add(_mul(B, e[x], e[y]), _mul(B, e[y], e[x]))):
            bad.add("antisymmetry")
    for x, y, z in product(range(n), repeat=3):
        X, Y, Z = e[x], e[y], e[z]
        jac = add(_mul(B, _mul(B, X, Y), Z), _mul(B, _mul(B, Y, Z), X), _mul(B, _mul(B, Z, X), Y))
        if any(jac):
            bad.add("jacobi")
        # z o (y o x) - y o (z o x) + (y o z) o x - (z o y) o x + [y, z] o x
        p3 = add(
            _mul(C, Z, _mul(C, Y, X)),
            neg(_mul(C, Y, _mul(C, Z, X))),
            _mul(C, _mul(C, Y, Z), X),
            neg(_mul(C, _mul(C, Z, Y), X)),
            _mul(C, _mul(B, Y, Z), X),
        )
        if any(p3):
            bad.add("polie3")
        # z o [x, y] - [z o x, y] - [x, z o y]
        p4 = add(_mul(C, Z, _mul(B, X, Y)), neg(_mul(B, _mul(C, Z, X), Y)), neg(_mul(B, X, _mul(C, Z, Y))))
        if any(p4):
            bad.add("polie4")
    return sorted(bad)


def trialgebra_defects(lt, gt, dt):
    """Indices (1-7) of failing dendriform trialgebra axioms."""
    n = len(lt)
    e = [basis(n, i) for i in range(n)]
    st = [[[lt[i][j][k] + gt[i][j][k] + dt[i][j][k] for k in range(n)] for j in range(n)] for i in range(n)]
    rules = [
        (lt, lt, lt, st),  # (x < y) < z = x < (y * z)
        (gt, lt, gt, lt),  # (x > y) < z = x > (y < z)
        (st, gt, gt, gt),  # (x * y) > z = x > (y > z)
        (gt, dt, gt, dt),  # (x > y) . z = x > (y . z)
        (lt, dt, dt, gt),  # (x < y) . z = x . (y > z)
        (dt, lt, dt, lt),  # (x . y) < z = x . (y < z)
        (dt, dt, dt, dt),  # (x . y) . z = x . (y . z)
    ]
    bad = []
    for idx, (p1, p2, q1, q2) in enumerate(rules, 1):
        for x, y, z in product(range(n), repeat=3):
            if _mul(p2, _mul(p1, e[x], e[y]), e[z]) != _mul(q1, e[x], _mul(q2, e[y], e[z])):
                bad.append(idx)
                break
    return bad
