"""Matrix groups over GF(q): constructors, closure enumeration, order formulas
and bilinear/quadratic form preservation.

The symplectic convention is pinned once: ordered basis e1..em, fm..f1 with
the form matrix J = [[0, Q], [-Q, 0]] where Q is the k-by-k anti-diagonal
identity.  All symplectic constructors use it.
"""

from __future__ import annotations

import itertools

from modinvar.gfq import FieldSpec, Scalar, build_field
from modinvar.mvpoly import Polynomial

DEFAULT_CAP = 10 ** 6


class EnumerationCapError(RuntimeError):
    """Closure exceeded the enumeration cap."""


class NotEnumeratedError(RuntimeError):
    """Operation requires a fully enumerated group."""


def field_from_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    p = 2
    while p * p <= q and q % p:
        p += 1 if p == 2 else 2
    if q % p:
        p = q
    r = 0
    qq = q
    while qq > 1:
        if qq % p:
            raise ValueError(f"q = {q} is not a prime power")
        qq //= p
        r += 1
    return build_field(p, r)


# -- raw matrix helpers (entries are field element indices) --

def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

def mat_mul(field, A, B):
    n = len(A)
    mul, add = field.mul, field.add
    Bcols = tuple(zip(*B))
    out = []
    for row in A:
        orow = []
        for col in Bcols:
            s = 0
            for a, b in zip(row, col):
                if a and b:
                    s = add(s, mul(a, b))
            orow.append(s)
        out.append(tuple(orow))
    return tuple(out)

def mat_transpose(A):
    return tuple(zip(*A))

def mat_neg(field, A):
    return tuple(tuple(field.neg(a) for a in row) for row in A)

def mat_add(field, A, B):
    return tuple(tuple(field.add(a, b) for a, b in zip(ra, rb))
                 for ra, rb in zip(A, B))

def mat_scale(field, A, c):
    return tuple(tuple(field.mul(a, c) for a in row) for row in A)

def mat_apply(field, A, v):
    """Matrix times column vector."""
    mul, add = field.mul, field.add
    out = []
    for row in A:
        s = 0
        for a, x in zip(row, v):
            if a and x:
                s = add(s, mul(a, x))
        out.append(s)
    return tuple(out)

def mat_det(field, A):
    n = len(A)
    M = [list(row) for row in A]
    det = 1
    for col in range(n):
        pivot = None
        for row in range(col, n):
            if M[row][col]:
                pivot = row
                break
        if pivot is None:
            return 0
        if pivot != col:
            M[col], M[pivot] = M[pivot], M[col]
            det = field.neg(det)
        det = field.mul(det, M[col][col])
        inv = field.inv(M[col][col])
        for row in range(col + 1, n):
            c = M[row][col]
            if c:
                f = field.mul(c, inv)
                M[row] = [field.sub(a, field.mul(f, b))
                          for a, b in zip(M[row], M[col])]
    return det

def mat_inv(field, A):
    n = len(A)
    M = [list(row) + [1 if i == j else 0 for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        pivot = None
        for row in range(col, n):
            if M[row][col]:
                pivot = row
                break
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[pivot] = M[pivot], M[col]
        inv = field.inv(M[col][col])
        M[col] = [field.mul(inv, a) for a in M[col]]
        for row in range(n):
            if row != col and M[row][col]:
                c = M[row][col]
                M[row] = [field.sub(a, field.mul(c, b))
                          for a, b in zip(M[row], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def format_matrix(field, A) -> str:
    return ";".join(",".join(field.format_scalar(a) for a in row) for row in A)

def parse_matrix(field: FieldSpec, text: str):
    rows = []
    for rtext in text.strip().split(";"):
        rows.append(tuple(field.parse_scalar(e) for e in rtext.split(",")))
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix text is not square")
    return tuple(rows)


class GroupElement:
    """An invertible matrix over a FieldSpec, hashable by its entries."""

    __slots__ = ("field", "matrix", "_inv")

    def __init__(self, field: FieldSpec, matrix, check: bool = True):
        matrix = tuple(tuple(field.scalar(e).index if isinstance(e, (Scalar, str))
                             else e for e in row) for row in matrix)
        if check and mat_det(field, matrix) == 0:
            raise ValueError("matrix is singular")
        self.field = field
        self.matrix = matrix
        self._inv = None

    @property
    def n(self):
        return len(self.matrix)

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("elements over different fields")
        return GroupElement(self.field, mat_mul(self.field, self.matrix, other.matrix),
                            check=False)

    def inverse(self) -> "GroupElement":
        if self._inv is None:
            self._inv = GroupElement(self.field, mat_inv(self.field, self.matrix),
                                     check=False)
        return self._inv

    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(self.n)

    def order(self) -> int:
        e = identity_matrix(self.n)
        g, k = self.matrix, 1
        while g != e:
            g = mat_mul(self.field, g, self.matrix)
            k += 1
        return k

    def apply(self, vector):
        """g.v for a column vector of field indices or scalars."""
        v = tuple(x.index if isinstance(x, Scalar) else x for x in vector)
        return mat_apply(self.field, self.matrix, v)

    def transpose(self) -> "GroupElement":
        return GroupElement(self.field, mat_transpose(self.matrix), check=False)

    def det(self) -> Scalar:
        return Scalar(self.field, mat_det(self.field, self.matrix))

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and self.field == other.field and self.matrix == other.matrix)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return format_matrix(self.field, self.matrix)


class MatrixGroup:
    """A matrix group given by generators, optionally fully enumerated.

    Enumeration is breadth-first closure under right multiplication;
    the resulting element list is sorted canonically so it does not depend
    on generator order.
    """

    def __init__(self, field: FieldSpec, n: int, generators, name: str = "",
                 elements=None, claimed_order=None):
        self.field = field
        self.n = n
        self.generators = list(generators)
        for g in self.generators:
            if g.n != n:
                raise ValueError("generator dimension mismatch")
        self.name = name
        self.claimed_order = claimed_order
        self.elements = None
        self._elem_set = None
        if elements is not None:
            self._set_elements(elements)

    def _set_elements(self, elements):
        self.elements = sorted(set(elements), key=lambda g: g.matrix)
        self._elem_set = {g.matrix for g in self.elements}
        if self.claimed_order is not None and len(self.elements) != self.claimed_order:
            raise AssertionError(
                f"{self.name or 'group'}: enumerated order {len(self.elements)} "
                f"!= claimed order {self.claimed_order}")

    @property
    def is_enumerated(self) -> bool:
        return self.elements is not None

    def identity(self) -> GroupElement:
        return GroupElement(self.field, identity_matrix(self.n), check=False)

    def enumerate(self, cap: int = DEFAULT_CAP) -> "MatrixGroup":
        if cap < 1:
            raise ValueError("cap must be positive")
        if self.elements is not None:
            return self
        seen = {identity_matrix(self.n)}
        frontier = [self.identity()]
        found = [self.identity()]
        gens = self.generators
        field = self.field
        while frontier:
            new = []
            for e in frontier:
                for g in gens:
                    m = mat_mul(field, e.matrix, g.matrix)
                    if m not in seen:
                        seen.add(m)
                        if len(seen) > cap:
                            raise EnumerationCapError(
                                f"{self.name or 'group'} exceeds cap {cap}")
                        el = GroupElement(field, m, check=False)
                        new.append(el)
                        found.append(el)
            frontier = new
        self._set_elements(found)
        return self

    def order(self) -> int:
        if self.elements is not None:
            return len(self.elements)
        if self.claimed_order is not None:
            return self.claimed_order
        raise NotEnumeratedError(f"{self.name or 'group'} has unknown order")

    def __contains__(self, g):
        if self.elements is None:
            raise NotEnumeratedError("membership requires enumeration")
        m = g.matrix if isinstance(g, GroupElement) else tuple(map(tuple, g))
        return m in self._elem_set

    def __len__(self):
        return self.order()

    def __repr__(self):
        state = f"order {len(self.elements)}" if self.elements else \
            f"{len(self.generators)} generators"
        return f"MatrixGroup({self.name or 'unnamed'}, dim {self.n}, {state})"


def minimal_generators(field, elements):
    """Greedy small generating set for an enumerated element list."""
    gens = []
    closed = {identity_matrix(len(elements[0].matrix))} if elements else set()
    target = {e.matrix for e in elements}
    for e in sorted(elements, key=lambda g: g.matrix):
        if e.matrix in closed:
            continue
        gens.append(e)
        frontier = list(closed)
        closed.add(e.matrix)
        # re-close under the enlarged generating set
        frontier = [m for m in target if m in closed]
        changed = True
        while changed:
            changed = False
            for m in list(closed):
                for g in gens:
                    prod = mat_mul(field, m, g.matrix)
                    if prod not in closed:
                        closed.add(prod)
                        changed = True
        if closed == target:
            break
    return gens


# -- order formulas --

def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out

def sp_order(m: int, q: int) -> int:
    out = q ** (m * m)
    for i in range(1, m + 1):
        out *= q ** (2 * i) - 1
    return out

def usp_order(m: int, q: int) -> int:
    return q ** (m * m)

def pk_order(m: int, k: int, q: int) -> int:
    return q ** (2 * k * (m - k) + k * (k + 1) // 2)

def gk_order(m: int, k: int, q: int) -> int:
    return gl_order(k, q) * sp_order(m - k, q) * pk_order(m, k, q)

def stabilizer_sp_order(m: int, k: int, q: int) -> int:
    return sp_order(m - k, q) * pk_order(m, k, q)

def unipotent_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2)

def parabolic_gl_order(partition, q: int) -> int:
    out = 1
    off = 0
    sizes = list(partition)
    for ni in sizes:
        out *= gl_order(ni, q)
    total = sum(sizes)
    cross = (total * total - sum(ni * ni for ni in sizes)) // 2
    return out * q ** cross


# -- constructors --

def trivial_group(field: FieldSpec, n: int) -> MatrixGroup:
    e = GroupElement(field, identity_matrix(n), check=False)
    return MatrixGroup(field, n, [], name="trivial", elements=[e], claimed_order=1)


def _elementary(field, n, i, j, c_idx):
    m = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    m[i][j] = c_idx
    return GroupElement(field, tuple(map(tuple, m)), check=False)


def gl_group(n: int, field: FieldSpec) -> MatrixGroup:
    """GL_n via a transvection, an n-cycle and a primitive scalar block."""
    q = field.q
    gens = []
    if n == 1:
        if q > 2:
            gens.append(GroupElement(field, ((field.primitive_element().index,),),
                                     check=False))
        return MatrixGroup(field, 1, gens, name=f"GL1(F{q})",
                           claimed_order=q - 1)
    gens.append(_elementary(field, n, 0, 1, 1))
    perm = [[0] * n for _ in range(n)]
    for j in range(n):
        perm[(j + 1) % n][j] = 1
    gens.append(GroupElement(field, tuple(map(tuple, perm)), check=False))
    if q > 2:
        d = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        d[0][0] = field.primitive_element().index
        gens.append(GroupElement(field, tuple(map(tuple, d)), check=False))
    return MatrixGroup(field, n, gens, name=f"GL{n}(F{q})",
                       claimed_order=gl_order(n, q))


def unipotent_upper(n: int, field: FieldSpec) -> MatrixGroup:
    """Upper-triangular unipotent group, superdiagonal transvections over an
    F_p-basis of the field."""
    gens = []
    for i in range(n - 1):
        for b in field.fp_basis():
            gens.append(_elementary(field, n, i, i + 1, b.index))
    return MatrixGroup(field, n, gens, name=f"U({n},F{field.q})",
                       claimed_order=unipotent_order(n, field.q))


def anti_identity(k):
    return tuple(tuple(1 if i + j == k - 1 else 0 for j in range(k)) for i in range(k))


def symplectic_j(m: int, field: FieldSpec):
    """The pinned form matrix [[0, Q], [-Q, 0]] on basis e1..em, fm..f1."""
    n = 2 * m
    J = [[0] * n for _ in range(n)]
    for i in range(m):
        J[i][n - 1 - i] = 1
        J[n - 1 - i][i] = field.neg(1)
    return tuple(map(tuple, J))


def is_symplectic(field, matrix, J) -> bool:
    return mat_mul(field, mat_mul(field, mat_transpose(matrix), J), matrix) == J


def _check_symplectic(field, gens, m, name):
    J = symplectic_j(m, field)
    for g in gens:
        if not is_symplectic(field, g.matrix, J):
            raise AssertionError(f"{name}: generator fails A^T J A = J:\n{g!r}")
    return gens


def _embed_gl_block(field, A, m, k):
    """diag(A, I_(2m-2k), Q_k (A^-1)^T Q_k) as a 2m x 2m matrix."""
    n = 2 * m
    Q = anti_identity(k)
    Ainv_t = mat_transpose(mat_inv(field, A))
    corner = mat_mul(field, mat_mul(field, Q, Ainv_t), Q)
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(k):
        for j in range(k):
            M[i][j] = A[i][j]
            M[n - k + i][n - k + j] = corner[i][j]
    for i in range(k, n - k):
        for j in range(k, n - k):
            M[i][j] = 1 if i == j else 0
    return GroupElement(field, tuple(map(tuple, M)), check=False)


def _embed_sp_block(field, B, m, k):
    n = 2 * m
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(2 * (m - k)):
        for j in range(2 * (m - k)):
            M[k + i][k + j] = B[i][j]
    return GroupElement(field, tuple(map(tuple, M)), check=False)


def _pk_assemble(field, m, k, B1, B2, A):
    """P_k block matrix with C1, C2 forced by the symplectic relations."""
    Qk = anti_identity(k)
    Qmk = anti_identity(m - k)
    C1 = mat_neg(field, mat_mul(field, mat_mul(field, Qk, mat_transpose(B2)), Qmk)) \
        if m > k else None
    C2 = mat_mul(field, mat_mul(field, Qk, mat_transpose(B1)), Qmk) if m > k else None
    n = 2 * m
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(k):
        for j in range(k):
            M[i][n - k + j] = A[i][j]
    if m > k:
        for i in range(k):
            for j in range(m - k):
                M[i][k + j] = C1[i][j]
                M[i][m + j] = C2[i][j]
        for i in range(m - k):
            for j in range(k):
                M[k + i][n - k + j] = B1[i][j]
                M[m + i][n - k + j] = B2[i][j]
    return GroupElement(field, tuple(map(tuple, M)), check=False)


def _pk_particular_a(field, m, k, B1, B2):
    """Particular solution of A^T Q_k - Q_k A = B2^T Q B1 - B1^T Q B2."""
    Qk = anti_identity(k)
    if m == k:
        return tuple(tuple(0 for _ in range(k)) for _ in range(k))
    Qmk = anti_identity(m - k)
    S = mat_add(field,
                mat_mul(field, mat_mul(field, mat_transpose(B2), Qmk), B1),
                mat_neg(field, mat_mul(field, mat_mul(field, mat_transpose(B1), Qmk), B2)))
    if field.p != 2:
        half = field.inv(field.add(1, 1))
        return mat_scale(field, mat_mul(field, Qk, S), field.neg(half))
    # char 2: S is symmetric with zero diagonal; T = strict upper of S solves
    # T^T + T = S, then A = Q_k T.
    T = [[S[i][j] if j > i else 0 for j in range(k)] for i in range(k)]
    return mat_mul(field, Qk, tuple(map(tuple, T)))


def _symmetric_matrices(field, k):
    """All k x k matrices S with S = S^T, in deterministic order."""
    coords = [(i, j) for i in range(k) for j in range(i, k)]
    for combo in itertools.product(range(field.q), repeat=len(coords)):
        S = [[0] * k for _ in range(k)]
        for (i, j), c in zip(coords, combo):
            S[i][j] = c
            S[j][i] = c
        yield tuple(map(tuple, S))


def _rect_matrices(field, rows, cols):
    if rows == 0 or cols == 0:
        yield tuple(tuple(() if cols == 0 else (0,) * cols) for _ in range(rows))
        return
    for combo in itertools.product(range(field.q), repeat=rows * cols):
        yield tuple(tuple(combo[i * cols + j] for j in range(cols))
                    for i in range(rows))


def p_k_subgroup(m: int, k: int, field: FieldSpec) -> MatrixGroup:
    """The unipotent radical P_k of the type-k maximal parabolic, enumerated
    directly from its free parameters."""
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    q = field.q
    Qk = anti_identity(k)
    elements = []
    gens = []
    zeroB = tuple(tuple(0 for _ in range(k)) for _ in range(m - k))
    for B1 in _rect_matrices(field, m - k, k):
        for B2 in _rect_matrices(field, m - k, k):
            Apart = _pk_particular_a(field, m, k, B1, B2)
            for S in _symmetric_matrices(field, k):
                A = mat_add(field, Apart, mat_mul(field, Qk, S))
                elements.append(_pk_assemble(field, m, k, B1, B2, A))
    # generators: one free parameter at a time, over an F_p basis
    basis = [b.index for b in field.fp_basis()]
    zk = tuple(tuple(0 for _ in range(k)) for _ in range(k))
    for i in range(m - k):
        for j in range(k):
            for b in basis:
                B = [[0] * k for _ in range(m - k)]
                B[i][j] = b
                B = tuple(map(tuple, B))
                gens.append(_pk_assemble(field, m, k, B, zeroB,
                                         _pk_particular_a(field, m, k, B, zeroB)))
                gens.append(_pk_assemble(field, m, k, zeroB, B,
                                         _pk_particular_a(field, m, k, zeroB, B)))
    for i in range(k):
        for j in range(i, k):
            for b in basis:
                S = [[0] * k for _ in range(k)]
                S[i][j] = b
                S[j][i] = b
                A = mat_mul(field, Qk, tuple(map(tuple, S)))
                gens.append(_pk_assemble(field, m, k, zeroB, zeroB, A))
    _check_symplectic(field, [GroupElement(field, e.matrix, check=False)
                              for e in elements], m, f"P_{k}")
    group = MatrixGroup(field, 2 * m, gens, name=f"P{k}(m={m},F{q})",
                        elements=elements, claimed_order=pk_order(m, k, q))
    return group


def sp_group(m: int, field: FieldSpec) -> MatrixGroup:
    """Sp_2m(F_q): embedded GL_m generators, P_m generators and the Weyl lift
    swapping e_m and f_m (with a sign)."""
    q = field.q
    gens = []
    for g in gl_group(m, field).generators:
        gens.append(_embed_gl_block(field, g.matrix, m, m))
    gens.extend(p_k_subgroup(m, m, field).generators)
    n = 2 * m
    W = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    W[m - 1][m - 1] = 0
    W[m][m] = 0
    W[m][m - 1] = field.neg(1)   # e_m -> -f_m
    W[m - 1][m] = 1              # f_m -> e_m
    gens.append(GroupElement(field, tuple(map(tuple, W)), check=False))
    _check_symplectic(field, gens, m, f"Sp{2*m}")
    return MatrixGroup(field, n, gens, name=f"Sp{2*m}(F{q})",
                       claimed_order=sp_order(m, q))


def usp_group(m: int, field: FieldSpec) -> MatrixGroup:
    """Upper-triangular unipotent symplectic matrices, a Sylow p-subgroup."""
    gens = []
    for g in unipotent_upper(m, field).generators:
        gens.append(_embed_gl_block(field, g.matrix, m, m))
    gens.extend(p_k_subgroup(m, m, field).generators)
    _check_symplectic(field, gens, m, f"USp{2*m}")
    return MatrixGroup(field, 2 * m, gens, name=f"USp{2*m}(F{field.q})",
                       claimed_order=usp_order(m, field.q))


def stabilizer_sp(m: int, k: int, field: FieldSpec) -> MatrixGroup:
    """Pointwise stabilizer of span(e_1..e_k) in Sp_2m: Sp_(2m-2k) |x P_k."""
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    gens = []
    if m - k > 0:
        for g in sp_group(m - k, field).generators:
            gens.append(_embed_sp_block(field, g.matrix, m, k))
    gens.extend(p_k_subgroup(m, k, field).generators)
    _check_symplectic(field, gens, m, f"Sp{2*m}_U{k}")
    return MatrixGroup(field, 2 * m, gens, name=f"Sp{2*m}(F{field.q})_U{k}",
                       claimed_order=stabilizer_sp_order(m, k, field.q))


def parabolic_g_k(m: int, k: int, field: FieldSpec) -> MatrixGroup:
    """The maximal parabolic (GL_k x Sp_(2m-2k)) |x P_k of Sp_2m."""
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    gens = []
    for g in gl_group(k, field).generators:
        gens.append(_embed_gl_block(field, g.matrix, m, k))
    if m - k > 0:
        for g in sp_group(m - k, field).generators:
            gens.append(_embed_sp_block(field, g.matrix, m, k))
    gens.extend(p_k_subgroup(m, k, field).generators)
    _check_symplectic(field, gens, m, f"G{k}")
    return MatrixGroup(field, 2 * m, gens, name=f"G{k}(m={m},F{field.q})",
                       claimed_order=gk_order(m, k, field.q))


def stabilizer_of_polynomial(group: MatrixGroup, f: Polynomial) -> MatrixGroup:
    """{g in G | f.g = f} for an enumerated G."""
    if not group.is_enumerated:
        raise NotEnumeratedError("stabilizer needs an enumerated group")
    fixed = [g for g in group.elements if f.act(g) == f]
    gens = minimal_generators(group.field, fixed) if len(fixed) > 1 else []
    return MatrixGroup(group.field, group.n, gens,
                       name=f"Stab({group.name})", elements=fixed)


# -- forms --

class FormSpec:
    """A bilinear, hermitian or quadratic form."""

    KINDS = ("alternating", "symmetric", "hermitian", "quadratic")

    def __init__(self, kind: str, field: FieldSpec, gram=None, quadratic=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown form kind {kind!r}")
        self.kind = kind
        self.field = field
        self.gram = None
        self.quadratic = None
        if kind == "quadratic":
            if quadratic is None or quadratic.degree() != 2 or not quadratic.is_homogeneous():
                raise ValueError("quadratic form needs a homogeneous degree-2 polynomial")
            self.quadratic = quadratic
            self.dim = quadratic.space.dim
            return
        gram = tuple(tuple(field.scalar(e).index if isinstance(e, (Scalar, str)) else e
                           for e in row) for row in gram)
        self.gram = gram
        self.dim = len(gram)
        T = mat_transpose(gram)
        if kind == "alternating":
            if T != mat_neg(field, gram) or any(gram[i][i] for i in range(self.dim)):
                raise ValueError("alternating Gram must be skew with zero diagonal")
        elif kind == "symmetric":
            if T != gram:
                raise ValueError("symmetric Gram must equal its transpose")
        elif kind == "hermitian":
            if field.r % 2:
                raise ValueError("hermitian forms need a square field order")
            twist = self._twist(gram)
            if mat_transpose(twist) != gram:
                raise ValueError("hermitian Gram must be conjugate-symmetric")

    def _twist(self, A):
        e = self.field.p ** (self.field.r // 2)
        return tuple(tuple(self.field.pow(a, e) for a in row) for row in A)

    def radical_dimension(self) -> int:
        from modinvar.linalg import nullspace_field
        return len(nullspace_field(self.polar_gram(), self.field))

    def polar_gram(self):
        """Gram matrix of the (polarized) bilinear form."""
        if self.kind != "quadratic":
            return self.gram
        f = self.quadratic
        field = self.field
        n = self.dim
        gram = [[0] * n for _ in range(n)]
        for e, c in f._terms.items():
            idxs = [i for i, ei in enumerate(e) if ei]
            if len(idxs) == 1:
                i = idxs[0]
                gram[i][i] = field.add(gram[i][i], field.add(c, c))
            else:
                i, j = idxs
                gram[i][j] = field.add(gram[i][j], c)
                gram[j][i] = field.add(gram[j][i], c)
        return tuple(map(tuple, gram))


def form_preserved(g: GroupElement, form: FormSpec) -> bool:
    field = form.field
    if g.n != form.dim:
        raise ValueError("dimension mismatch between element and form")
    if form.kind == "quadratic":
        return form.quadratic.act(g) == form.quadratic
    A = g.matrix
    left = mat_transpose(form._twist(A)) if form.kind == "hermitian" \
        else mat_transpose(A)
    return mat_mul(field, mat_mul(field, left, form.gram), A) == form.gram


def o3_sylow_generators(field: FieldSpec):
    """Unipotent generators [[1,2c,c^2],[0,1,c],[0,0,1]] preserving x2^2-x1*x3."""
    gens = []
    for b in field.fp_basis():
        c = b.index
        m = ((1, field.mul(field.add(1, 1), c), field.mul(c, c)),
             (0, 1, c),
             (0, 0, 1))
        gens.append(GroupElement(field, m, check=False))
    return gens


def o4_plus_sylow_generators(field: FieldSpec):
    """Unipotent generators of the Sylow subgroup preserving x2*x3-x1*x4."""
    gens = []
    for b in field.fp_basis():
        c = b.index
        for c1, c2 in ((c, 0), (0, c)):
            m = ((1, c1, c2, field.mul(c1, c2)),
                 (0, 1, 0, c2),
                 (0, 0, 1, c1),
                 (0, 0, 0, 1))
            gens.append(GroupElement(field, m, check=False))
    return gens


def product_group(G1: MatrixGroup, G2: MatrixGroup, name="") -> MatrixGroup:
    """Block-diagonal realization of G1 x G2."""
    if G1.field != G2.field:
        raise ValueError("factors over different fields")
    field = G1.field
    n = G1.n + G2.n
    gens = []
    for g in G1.generators:
        M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(G1.n):
            for j in range(G1.n):
                M[i][j] = g.matrix[i][j]
        gens.append(GroupElement(field, tuple(map(tuple, M)), check=False))
    for g in G2.generators:
        M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(G2.n):
            for j in range(G2.n):
                M[G1.n + i][G1.n + j] = g.matrix[i][j]
        gens.append(GroupElement(field, tuple(map(tuple, M)), check=False))
    order = None
    try:
        order = G1.order() * G2.order()
    except NotEnumeratedError:
        pass
    return MatrixGroup(field, n, gens, name=name or f"{G1.name}x{G2.name}",
                       claimed_order=order)
