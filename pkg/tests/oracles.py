"""Independent naive reimplementations used as oracles by the test suite.

Everything here deliberately avoids the package's own arithmetic paths:
plain-int triple loops, cofactor expansions, long division on coefficient
lists, exhaustive enumeration.  Slow but obviously correct at desk scale.
"""

from itertools import product


# -- matrices as plain lists of lists of ints --------------------------------

def naive_matmul(a, b, p):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)]
        for i in range(n)
    ]


def naive_matpow(a, e, p):
    n = len(a)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(e):
        out = naive_matmul(out, a, p)
    return out


def naive_det(a, p):
    """Cofactor expansion along the first row; fine for d <= 4."""
    n = len(a)
    if n == 1:
        return a[0][0] % p
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        sign = -1 if j % 2 else 1
        total += sign * a[0][j] * naive_det(minor, p)
    return total % p


def all_square_matrices(d, p):
    """Every d-by-d matrix over Z_p as a list of rows."""
    for entries in product(range(p), repeat=d * d):
        yield [list(entries[i * d : (i + 1) * d]) for i in range(d)]


# -- polynomials as plain coefficient lists (low degree first) ---------------

def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul_lists(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_mod_lists(num, den, p):
    """Remainder of num / den by schoolbook long division."""
    num = poly_trim(num)
    den = poly_trim(den)
    assert den, "division by zero polynomial"
    lead_inv = pow(den[-1], p - 2, p) if den[-1] != 1 else 1
    while len(num) >= len(den):
        shift = len(num) - len(den)
        q = num[-1] * lead_inv % p
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - q * c) % p
        num = poly_trim(num)
        if not num:
            break
    return num


def all_monic_polys(d, p):
    """Every monic degree-d polynomial as a coefficient list."""
    for lower in product(range(p), repeat=d):
        yield list(lower) + [1]


def irreducible_by_trial_division(f, p):
    """True iff monic f has no monic divisor of degree 1..deg//2."""
    f = poly_trim(f)
    deg = len(f) - 1
    if deg <= 0:
        return False
    for k in range(1, deg // 2 + 1):
        for g in all_monic_polys(k, p):
            if not poly_mod_lists(list(f), g, p):
                return False
    return True


def det_by_elimination(a, p):
    """Determinant by plain-int Gaussian elimination mod p (no numpy)."""
    a = [row[:] for row in a]
    n = len(a)
    det = 1
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] % p), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            det = -det
        pivot = a[col][col] % p
        det = det * pivot % p
        inv = pow(pivot, p - 2, p)
        for r in range(col + 1, n):
            f = a[r][col] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def charpoly_by_interpolation(rows, p):
    """Characteristic polynomial det(xI - M) via Lagrange interpolation.

    Needs p > d: evaluates the degree-d characteristic polynomial at d+1
    distinct field points and interpolates.  Returns low-first coefficients.
    """
    d = len(rows)
    assert p > d
    xs = list(range(d + 1))
    ys = []
    for x in xs:
        shifted = [
            [((x if i == j else 0) - rows[i][j]) % p for j in range(d)]
            for i in range(d)
        ]
        ys.append(det_by_elimination(shifted, p))
    # Lagrange basis accumulation over Z_p
    coeffs = [0] * (d + 1)
    for i, xi in enumerate(xs):
        basis = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if i == j:
                continue
            basis = poly_mul_lists(basis, [(-xj) % p, 1], p)
            denom = denom * (xi - xj) % p
        scale = ys[i] * pow(denom, p - 2, p) % p
        for k, c in enumerate(basis):
            coeffs[k] = (coeffs[k] + scale * c) % p
    return poly_trim(coeffs)


def charpoly_by_cofactor(rows, p):
    """det(xI - M) computed directly over the polynomial ring; fine for d <= 4."""
    d = len(rows)

    def det_poly(mat):
        n = len(mat)
        if n == 1:
            return mat[0][0]
        total = []
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            term = poly_mul_lists(mat[0][j], det_poly(minor), p)
            if j % 2:
                term = [(-c) % p for c in term]
            total = poly_trim(
                [
                    ((total[k] if k < len(total) else 0) + (term[k] if k < len(term) else 0)) % p
                    for k in range(max(len(total), len(term)))
                ]
            )
        return total

    entries = [
        [
            poly_trim([(-rows[i][j]) % p, 1]) if i == j else poly_trim([(-rows[i][j]) % p])
            for j in range(d)
        ]
        for i in range(d)
    ]
    return det_poly(entries)
