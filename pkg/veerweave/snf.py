"""Integer normal forms of matrices with arbitrary-precision entries

All matrices are numpy arrays of ``dtype=object`` holding Python
integers, so entries never overflow.
"""
import numpy as np


def as_integer_matrix(A):
    """Copy `A` into a two-dimensional object array of Python ints"""
    M = np.array(A, dtype=object)
    if M.ndim != 2:
        raise ValueError("Expected a two-dimensional matrix, got shape "
                         "{}!".format(M.shape))
    if M.size:
        M = np.vectorize(int, otypes=[object])(M)
    return M


def identity(n):
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


def xgcd(a, b):
    """Extended Euclid: return (g, s, t) with g = s*a + t*b >= 0"""
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


class SNF(object):
    """Smith normal form of an integer matrix

    The input matrix A is transformed into a diagonal matrix D by
    unimodular matrices P and Q,

        D = PAQ

    with nonnegative diagonal entries d_0 | d_1 | ... | d_{r-1}
    followed by zeros.

    Usage
    -----
    snf = SNF(int_mat)
    snf.run()

    Attributes
    ----------
    D, P, Q: ndarray of dtype object
        The matrices explained above
    rank: int
        Number of nonzero diagonal entries
    """

    def __init__(self, A):
        self._A_orig = as_integer_matrix(A)
        self._A = self._A_orig.copy()
        m, n = self._A.shape
        self._P = identity(m)
        self._Q = identity(n)
        self._rank = None

    @property
    def D(self):
        return self._A

    @property
    def P(self):
        return self._P

    @property
    def Q(self):
        return self._Q

    @property
    def rank(self):
        return self._rank

    @property
    def diagonal(self):
        """Nonzero diagonal entries (the invariant factors)"""
        return [self._A[i, i] for i in range(self._rank)]

    def run(self):
        A = self._A
        m, n = A.shape
        k = 0
        while k < min(m, n):
            pos = self._smallest(k, range(k, m), range(k, n))
            if pos is None:
                break
            self._swap_rows(k, pos[0])
            self._swap_cols(k, pos[1])
            while True:
                self._clear_cross(k)
                pos = self._smallest(k, range(k + 1, m), [k])
                if pos is not None:
                    self._swap_rows(k, pos[0])
                    continue
                pos = self._smallest(k, [k], range(k + 1, n))
                if pos is not None:
                    self._swap_cols(k, pos[1])
                    continue
                bad = self._non_divisible(k)
                if bad is None:
                    break
                # pull the offending row into the pivot row
                self._add_row(k, bad, 1)
            if A[k, k] < 0:
                A[k] = -A[k]
                self._P[k] = -self._P[k]
            k += 1
        self._rank = k
        if self._A.size:
            assert (np.dot(np.dot(self._P, self._A_orig), self._Q)
                    == self._A).all()
        return self

    def _smallest(self, k, rows, cols):
        best = None
        for i in rows:
            for j in cols:
                a = self._A[i, j]
                if a != 0 and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        return None if best is None else best[1:]

    def _non_divisible(self, k):
        A = self._A
        m, n = A.shape
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                if A[i, j] % A[k, k] != 0:
                    return i
        return None

    def _clear_cross(self, k):
        A = self._A
        m, n = A.shape
        for i in range(k + 1, m):
            q = A[i, k] // A[k, k]
            if q:
                self._add_row(i, k, -q)
        for j in range(k + 1, n):
            q = A[k, j] // A[k, k]
            if q:
                self._add_col(j, k, -q)

    def _add_row(self, i, j, c):
        """row_i += c * row_j"""
        self._A[i] = self._A[i] + c * self._A[j]
        self._P[i] = self._P[i] + c * self._P[j]

    def _add_col(self, i, j, c):
        """col_i += c * col_j"""
        self._A[:, i] = self._A[:, i] + c * self._A[:, j]
        self._Q[:, i] = self._Q[:, i] + c * self._Q[:, j]

    def _swap_rows(self, i, j):
        if i != j:
            self._A[[i, j]] = self._A[[j, i]]
            self._P[[i, j]] = self._P[[j, i]]

    def _swap_cols(self, i, j):
        if i != j:
            self._A[:, [i, j]] = self._A[:, [j, i]]
            self._Q[:, [i, j]] = self._Q[:, [j, i]]


def smith_normal_form(A):
    """Run `SNF` on `A` and return the finished object"""
    return SNF(A).run()


def rank(A):
    return smith_normal_form(A).rank


def invariant_factors(A):
    """Nonzero invariant factors of `A` in divisibility order"""
    return smith_normal_form(A).diagonal


def torsion(A):
    """Invariant factors > 1, i.e. the torsion of coker(A)"""
    return [d for d in invariant_factors(A) if d > 1]


def hermite_normal_form(M):
    """Row-style Hermite normal form of the lattice spanned by the rows

    Zero rows are dropped; pivots are positive and the entries
    above each pivot are reduced into [0, pivot).
    """
    H = as_integer_matrix(M).copy()
    m, n = H.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i, c] != 0]
            if not nz:
                break
            i = min(nz, key=lambda x: (abs(H[x, c]), x))
            if i != r:
                H[[r, i]] = H[[i, r]]
            clean = True
            for i in range(r + 1, m):
                q = H[i, c] // H[r, c]
                if q:
                    H[i] = H[i] - q * H[r]
                if H[i, c] != 0:
                    clean = False
            if clean:
                break
        if H[r, c] == 0:
            continue
        if H[r, c] < 0:
            H[r] = -H[r]
        for i in range(r):
            q = H[i, c] // H[r, c]
            if q:
                H[i] = H[i] - q * H[r]
        r += 1
    return H[:r]


def integer_kernel(A):
    """Lattice basis of {x in Z^n : A x = 0}, rows in Hermite form"""
    A = as_integer_matrix(A)
    snf = smith_normal_form(A)
    basis = snf.Q[:, snf.rank:].T
    if basis.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=object)
    return hermite_normal_form(basis)


def solve_integer(A, b):
    """Integer solution x of A x = b, or None if there is none"""
    A = as_integer_matrix(A)
    b = np.array([int(v) for v in b], dtype=object)
    snf = smith_normal_form(A)
    c = np.dot(snf.P, b) if b.size else b
    m, n = A.shape
    y = np.zeros(n, dtype=object)
    for i in range(m):
        if i < snf.rank:
            d = snf.D[i, i]
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
        elif c[i] != 0:
            return None
    return np.dot(snf.Q, y) if n else y
