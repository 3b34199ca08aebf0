"""Small exact linear algebra: kernels over F_p and inverses over k."""
import numpy as np

from .ratfunc import RatFunc


def nullspace_mod_p(M, p):
    """Basis of {w : M w = 0} over F_p for an integer matrix M (rows x cols)."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        others = np.nonzero(A[:, c])[0]
        for i in others:
            if i != r:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        w = np.zeros(cols, dtype=np.int64)
        w[f] = 1
        for i, c in enumerate(pivots):
            w[c] = (-A[i, f]) % p
        basis.append([int(x) for x in w])
    return basis


def rank_mod_p(M, p):
    cols = len(M[0]) if M else 0
    return cols - len(nullspace_mod_p(M, p))


def inverse_over_k(M):
    """Inverse of a square matrix with RatFunc entries (Gauss-Jordan)."""
    n = len(M)
    one = RatFunc.from_poly(M[0][0].num ** 0)
    zero = one * 0
    A = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = A[c][c].inverse()
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]
