"""Analysis of quadratic forms over GF(q).

A quadric in P^N falls into one of six projective classes: double
hyperplane, pair of distinct rational hyperplanes, pair of conjugate
hyperplanes over GF(q^2), and the three absolutely irreducible classes
(parabolic, hyperbolic, elliptic).  Class membership is decided here from
two independent measurements: the rank, obtained by exact linear algebra on
the radical, and the number of rational zeros, obtained by exhaustive
evaluation.  Each class/rank pair admits a closed-form point count, and
``classify`` insists the measured count matches it, so every call doubles
as a self-check of the counting identities.

Canonicalization performs an explicit Witt decomposition: split off the
radical, peel hyperbolic planes, and normalize the anisotropic remainder,
returning an invertible substitution that maps the input to a scalar
multiple of the canonical form of its class.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .gf import Field, irreducible_binary_constants
from .linalg import (
    identity,
    kernel_basis,
    mat_mul,
    mat_vec,
    matrix_rank,
    rref,
    transpose,
    vec_add,
    vec_scale,
)
from .projspace import (
    LinearSubspace,
    hyperplane,
    normalize,
    projective_size,
    projective_space,
    subspace_from_vectors,
)


class QuadricError(Exception):
    pass


class ZeroForm(QuadricError):
    """Analysis operations reject the zero form."""


class DimensionMismatch(QuadricError):
    pass


class ZeroLinearForm(QuadricError):
    pass


class PointNotOnQuadric(QuadricError):
    pass


class AmbientTooLarge(QuadricError):
    pass


class InconsistentClassRank(QuadricError):
    pass


class InternalInconsistency(QuadricError):
    """A measured quantity matched no class formula; must never fire."""


class QuadricClass(str, Enum):
    DOUBLE_HYPERPLANE = "double_hyperplane"
    HYPERPLANE_PAIR = "hyperplane_pair"
    CONJUGATE_PAIR = "conjugate_pair"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"


ABSOLUTELY_IRREDUCIBLE = (
    QuadricClass.PARABOLIC,
    QuadricClass.HYPERBOLIC,
    QuadricClass.ELLIPTIC,
)


@lru_cache(maxsize=None)
def monomials(n: int) -> tuple[tuple[int, int], ...]:
    """Degree-2 monomials X_i X_j on n+1 variables, (i, j) with i <= j."""
    return tuple((i, j) for i in range(n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def _monomial_index(n: int) -> dict[tuple[int, int], int]:
    return {m: k for k, m in enumerate(monomials(n))}


@dataclass(frozen=True)
class QuadraticForm:
    """Homogeneous degree-2 form sum(a_ij X_i X_j) on P^ambient.

    Coefficients are stored flat in the canonical monomial order.
    """

    field: Field
    ambient: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(monomials(self.ambient)):
            raise DimensionMismatch(
                f"expected {len(monomials(self.ambient))} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coeff(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self.coeffs[_monomial_index(self.ambient)[(i, j)]]

    def evaluate(self, vec) -> int:
        """Value at a coordinate vector (any representative)."""
        vec = tuple(vec)
        if len(vec) != self.ambient + 1:
            raise DimensionMismatch(
                f"point has {len(vec)} coordinates, form expects {self.ambient + 1}"
            )
        field = self.field
        add, mul = field._add, field._mul
        acc = 0
        for (i, j), c in zip(monomials(self.ambient), self.coeffs):
            if c:
                acc = add[acc][mul[c][mul[vec[i]][vec[j]]]]
        return acc

    def scale(self, lam: int) -> "QuadraticForm":
        mul = self.field._mul
        return QuadraticForm(self.field, self.ambient, tuple(mul[lam][c] for c in self.coeffs))


def form_from_terms(field: Field, ambient: int, terms: dict) -> QuadraticForm:
    """Build a form from a {(i, j): field element} mapping (accumulating)."""
    idx = _monomial_index(ambient)
    coeffs = [0] * len(idx)
    for (i, j), c in terms.items():
        if i > j:
            i, j = j, i
        if not 0 <= c < field.q:
            raise ValueError(f"coefficient {c} is not an element of GF({field.q})")
        coeffs[idx[(i, j)]] = field.add(coeffs[idx[(i, j)]], c)
    return QuadraticForm(field, ambient, tuple(coeffs))


def evaluate(form: QuadraticForm, point) -> int:
    return form.evaluate(point)


def polarize(form: QuadraticForm):
    """Gram table of the polar bilinear form B(u,v) = F(u+v) - F(u) - F(v).

    Off-diagonal entries are the mixed coefficients; the diagonal is 2*a_ii,
    which vanishes in characteristic 2.
    """
    n = form.ambient
    field = form.field
    add = field._add
    gram = [[0] * (n + 1) for _ in range(n + 1)]
    for (i, j), c in zip(monomials(n), form.coeffs):
        if i == j:
            gram[i][i] = add[c][c]
        else:
            gram[i][j] = c
            gram[j][i] = c
    return tuple(tuple(row) for row in gram)


def radical_bilinear(form: QuadraticForm) -> list[list[int]]:
    """Basis of the kernel of the polar form, as coordinate vectors."""
    return kernel_basis(form.field, polarize(form), form.ambient + 1)


def radical_quadratic(form: QuadraticForm) -> list[list[int]]:
    """Basis of {v in Rad B : F(v) = 0}.

    In odd characteristic this is all of Rad B.  In characteristic 2, with
    basis w_i of Rad B and s_i = F(w_i), the form restricted to Rad B is
    sum(s_i c_i^2); substituting d_i = c_i^2 (Frobenius is bijective) turns
    the vanishing condition into the linear equation sum(s_i d_i) = 0, and
    square roots map a basis of its solution space back.
    """
    field = form.field
    radb = radical_bilinear(form)
    if field.p != 2 or not radb:
        return radb
    svals = [form.evaluate(w) for w in radb]
    if not any(svals):
        return radb
    dbasis = kernel_basis(field, [svals])
    half = field.q // 2
    out = []
    for d in dbasis:
        vec = [0] * (form.ambient + 1)
        for di, w in zip(d, radb):
            if di:
                vec = vec_add(field, vec, vec_scale(field, field.pow(di, half), w))
        out.append(vec)
    return out


def rank(form: QuadraticForm) -> int:
    """Least number of variables after an invertible substitution."""
    if form.is_zero:
        raise ZeroForm("rank of the zero form is undefined")
    return (form.ambient + 1) - len(radical_quadratic(form))


def singular_locus(form: QuadraticForm) -> LinearSubspace:
    """Projectivization of the quadratic radical; empty iff rank = N+1."""
    if form.is_zero:
        raise ZeroForm("singular locus of the zero form is undefined")
    return subspace_from_vectors(
        form.field, form.ambient, radical_quadratic(form)
    )


def point_set(form: QuadraticForm) -> int:
    """Bit-indexed set of rational zeros over the canonical point order."""
    field = form.field
    space = projective_space(field, form.ambient)
    monos = monomials(form.ambient)
    mask = 0
    if field.q == 2:
        packed = space.monomial_bitmasks(monos)
        fm = sum(1 << k for k, c in enumerate(form.coeffs) if c)
        for idx, pm in enumerate(packed):
            if not (fm & pm).bit_count() & 1:
                mask |= 1 << idx
        return mask
    rows = space.monomial_rows(monos)
    add, mul = field._add, field._mul
    nz = [(k, c) for k, c in enumerate(form.coeffs) if c]
    for idx, mv in enumerate(rows):
        acc = 0
        for k, c in nz:
            acc = add[acc][mul[c][mv[k]]]
        if acc == 0:
            mask |= 1 << idx
    return mask


def expected_point_count(cls: QuadricClass, rk: int, n: int, q: int) -> int:
    """Closed-form number of rational points for a class/rank pair."""
    _check_class_rank(cls, rk, n)
    pn1 = projective_size(q, n - 1)
    if cls is QuadricClass.DOUBLE_HYPERPLANE:
        return pn1
    if cls is QuadricClass.HYPERPLANE_PAIR:
        return 2 * q ** (n - 1) + projective_size(q, n - 2)
    if cls is QuadricClass.CONJUGATE_PAIR:
        return projective_size(q, n - 2)
    if cls is QuadricClass.PARABOLIC:
        return pn1
    s = rk // 2
    if cls is QuadricClass.HYPERBOLIC:
        return pn1 + q ** (n - s)
    return pn1 - q ** (n - s)


def _check_class_rank(cls: QuadricClass, rk: int, n: int) -> None:
    if not 1 <= rk <= n + 1:
        raise InconsistentClassRank(f"rank {rk} impossible in P^{n}")
    ok = {
        QuadricClass.DOUBLE_HYPERPLANE: rk == 1,
        QuadricClass.HYPERPLANE_PAIR: rk == 2,
        QuadricClass.CONJUGATE_PAIR: rk == 2,
        QuadricClass.PARABOLIC: rk >= 3 and rk % 2 == 1,
        QuadricClass.HYPERBOLIC: rk >= 4 and rk % 2 == 0,
        QuadricClass.ELLIPTIC: rk >= 4 and rk % 2 == 0,
    }[cls]
    if not ok:
        raise InconsistentClassRank(f"class {cls.value} cannot have rank {rk}")


def closed_form_projective_index(cls: QuadricClass, rk: int, n: int) -> int:
    """Largest dimension of a rational linear subspace inside the quadric."""
    if cls is QuadricClass.DOUBLE_HYPERPLANE:
        return n - 1
    if cls is QuadricClass.HYPERPLANE_PAIR:
        return n - 1
    if cls is QuadricClass.CONJUGATE_PAIR:
        return n - 2
    if cls is QuadricClass.PARABOLIC:
        return n - (rk - 1) // 2 - 1
    if cls is QuadricClass.HYPERBOLIC:
        return n - rk // 2
    return n - rk // 2 - 1


def discriminate(rk: int, count: int, n: int, q: int) -> QuadricClass:
    """Resolve the class from measured rank and point count.

    Raises InternalInconsistency when the count matches no class formula for
    the rank; by the counting theory this can never happen for a genuine
    quadratic form, so a raise indicates a bug upstream.
    """
    pn1 = projective_size(q, n - 1)
    if rk == 1:
        cls = QuadricClass.DOUBLE_HYPERPLANE
        if count != pn1:
            raise InternalInconsistency(f"rank-1 form with {count} points")
        return cls
    if rk == 2:
        if count == 2 * q ** (n - 1) + projective_size(q, n - 2):
            return QuadricClass.HYPERPLANE_PAIR
        if count == projective_size(q, n - 2):
            return QuadricClass.CONJUGATE_PAIR
        raise InternalInconsistency(f"rank-2 form with {count} points")
    if rk % 2 == 1:
        if count != pn1:
            raise InternalInconsistency(f"odd-rank form with {count} points")
        return QuadricClass.PARABOLIC
    s = rk // 2
    if count == pn1 + q ** (n - s):
        return QuadricClass.HYPERBOLIC
    if count == pn1 - q ** (n - s):
        return QuadricClass.ELLIPTIC
    raise InternalInconsistency(f"rank-{rk} form with {count} points")


@dataclass(frozen=True)
class ClassificationReport:
    quadric_class: QuadricClass
    rank: int
    radical_bilinear: tuple[tuple[int, ...], ...]
    radical_quadratic: tuple[tuple[int, ...], ...]
    singular_locus: LinearSubspace
    point_count: int
    projective_index: int

    def to_json(self) -> dict:
        return {
            "class": self.quadric_class.value,
            "rank": self.rank,
            "singular_locus": self.singular_locus.to_json(),
            "point_count": self.point_count,
            "projective_index": self.projective_index,
        }


def classify(form: QuadraticForm) -> ClassificationReport:
    """Full classification of a nonzero form.

    Rank comes from the radical, the point count from enumeration, and the
    two must agree with a class formula (self-check).
    """
    if form.is_zero:
        raise ZeroForm("cannot classify the zero form")
    field, n = form.field, form.ambient
    radb = radical_bilinear(form)
    radq = radical_quadratic(form)
    rk = (n + 1) - len(radq)
    count = point_set(form).bit_count()
    cls = discriminate(rk, count, n, field.q)
    return ClassificationReport(
        quadric_class=cls,
        rank=rk,
        radical_bilinear=tuple(tuple(v) for v in radb),
        radical_quadratic=tuple(tuple(v) for v in radq),
        singular_locus=subspace_from_vectors(field, n, radq),
        point_count=count,
        projective_index=closed_form_projective_index(cls, rk, n),
    )


def _upper_matrix(form: QuadraticForm) -> list[list[int]]:
    n = form.ambient
    u = [[0] * (n + 1) for _ in range(n + 1)]
    for (i, j), c in zip(monomials(n), form.coeffs):
        u[i][j] = c
    return u


def substitute(form: QuadraticForm, t) -> QuadraticForm:
    """The form F(T y): change of variables with columns of T as images."""
    field = form.field
    n = form.ambient
    if len(t) != n + 1:
        raise DimensionMismatch("substitution matrix size mismatch")
    g = mat_mul(field, mat_mul(field, transpose(t), _upper_matrix(form)), t)
    add = field._add
    coeffs = []
    for i, j in monomials(n):
        coeffs.append(g[i][i] if i == j else add[g[i][j]][g[j][i]])
    return QuadraticForm(field, n, tuple(coeffs))


def restrict_to_hyperplane(form: QuadraticForm, linear_form) -> QuadraticForm:
    """Section of the quadric by the hyperplane {L = 0}, as a form on P^(N-1).

    Variables are changed so L becomes the last coordinate, which is then
    dropped.  Rational zeros of the result correspond bijectively to the
    rational points of the quadric on the hyperplane.
    """
    field, n = form.field, form.ambient
    lvec = list(linear_form)
    if len(lvec) != n + 1:
        raise DimensionMismatch("linear form length mismatch")
    if not any(lvec):
        raise ZeroLinearForm("hyperplane section needs a nonzero linear form")
    ker = kernel_basis(field, [lvec])
    pivot = rref(field, [lvec])[1][0]
    cols = ker + [[1 if i == pivot else 0 for i in range(n + 1)]]
    t = [[cols[c][r] for c in range(n + 1)] for r in range(n + 1)]
    g = substitute(form, t)
    idx = _monomial_index(n)
    coeffs = tuple(g.coeffs[idx[(i, j)]] for i, j in monomials(n - 1))
    return QuadraticForm(field, n - 1, coeffs)


def section_embedding(form: QuadraticForm, linear_form) -> list[list[int]]:
    """Matrix sending section coordinates back into the ambient space."""
    field, n = form.field, form.ambient
    ker = kernel_basis(field, [list(linear_form)])
    return [[ker[c][r] for c in range(n)] for r in range(n + 1)]


def tangent_space(form: QuadraticForm, point) -> LinearSubspace:
    """Projective tangent space at a rational point of the quadric.

    A hyperplane at smooth points; the whole space at singular ones.
    """
    field, n = form.field, form.ambient
    pt = normalize(field, point)
    if form.evaluate(pt) != 0:
        raise PointNotOnQuadric(f"form does not vanish at {pt}")
    grad = mat_vec(field, polarize(form), pt)
    if not any(grad):
        return subspace_from_vectors(field, n, identity(n + 1))
    return hyperplane(field, grad)


def projective_index_bruteforce(form: QuadraticForm) -> int:
    """Largest dimension of a contained rational subspace, by enumeration.

    A subspace lies in the quadric iff the restricted form vanishes
    identically: for a span of zero-set points that reduces to the pairwise
    polar products being zero.  Points, then lines, then planes are tested;
    nothing larger fits a nonzero form in P^3.
    """
    if form.is_zero:
        raise ZeroForm("projective index of the zero form is undefined")
    field, n = form.field, form.ambient
    if n > 3:
        raise AmbientTooLarge("exhaustive index search is limited to N <= 3")
    space = projective_space(field, n)
    mask = point_set(form)
    if mask == 0:
        return -1
    zpts = [space.points[i] for i in range(len(space.points)) if mask >> i & 1]
    if n < 2 or len(zpts) < 2:
        return 0
    gram = polarize(form)
    add, mul = field._add, field._mul
    rows = [mat_vec(field, gram, z) for z in zpts]
    nz = len(zpts)
    adj = [0] * nz
    found_line = False
    for i in range(nz):
        gi = rows[i]
        zi = zpts[i]
        for j in range(i + 1, nz):
            zj = zpts[j]
            acc = 0
            for a, b in zip(gi, zj):
                acc = add[acc][mul[a][b]]
            if acc == 0:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                found_line = True
    if not found_line:
        return 0
    if n < 3:
        return 1
    for i in range(nz):
        ai = adj[i]
        if not ai:
            continue
        for j in range(i + 1, nz):
            if not ai >> j & 1:
                continue
            common = ai & adj[j] & ~((1 << (j + 1)) - 1)
            k = j + 1
            rest = common >> k
            while rest:
                if rest & 1 and matrix_rank(field, [zpts[i], zpts[j], zpts[k]]) == 3:
                    return 2
                rest >>= 1
                k += 1
    return 1


def canonical_form(field: Field, n: int, cls: QuadricClass, rk: int) -> QuadraticForm:
    """Reference form of the given class and rank on P^n."""
    _check_class_rank(cls, rk, n)
    alpha, d = irreducible_binary_constants(field)
    terms: dict[tuple[int, int], int] = {}
    if cls is QuadricClass.DOUBLE_HYPERPLANE:
        terms[(0, 0)] = 1
    elif cls is QuadricClass.HYPERPLANE_PAIR:
        terms[(0, 1)] = 1
    elif cls in (QuadricClass.CONJUGATE_PAIR, QuadricClass.ELLIPTIC):
        terms[(0, 0)] = 1
        if alpha:
            terms[(0, 1)] = alpha
        terms[(1, 1)] = d
        for i in range(1, rk // 2):
            terms[(2 * i, 2 * i + 1)] = 1
    elif cls is QuadricClass.PARABOLIC:
        terms[(0, 0)] = 1
        for i in range((rk - 1) // 2):
            terms[(2 * i + 1, 2 * i + 2)] = 1
    else:
        for i in range(rk // 2):
            terms[(2 * i, 2 * i + 1)] = 1
    return form_from_terms(field, n, terms)


@dataclass(frozen=True)
class CanonicalizationResult:
    quadric_class: QuadricClass
    rank: int
    transform: tuple[tuple[int, ...], ...]
    scalar: int


def _block_diag(a, k: int) -> list[list[int]]:
    n = len(a) + k
    out = [[0] * n for _ in range(n)]
    for i, row in enumerate(a):
        for j, v in enumerate(row):
            out[i][j] = v
    for i in range(len(a), n):
        out[i][i] = 1
    return out


def _shifted_block(size: int, offset: int, s) -> list[list[int]]:
    out = identity(size)
    for i, row in enumerate(s):
        for j, v in enumerate(row):
            out[offset + i][offset + j] = v
    return out


def _subform(form: QuadraticForm, start: int) -> QuadraticForm:
    """Restriction to the trailing variables X_start..X_N."""
    n = form.ambient
    m = n - start
    idx = _monomial_index(n)
    coeffs = tuple(
        form.coeffs[idx[(i + start, j + start)]] for i, j in monomials(m)
    )
    return QuadraticForm(form.field, m, coeffs)


def _dot(field: Field, u, v) -> int:
    add, mul = field._add, field._mul
    acc = 0
    for a, b in zip(u, v):
        acc = add[acc][mul[a][b]]
    return acc


def _peel_hyperbolic(work: QuadraticForm):
    """One Witt step: returns (S, residual) with work(S y) = Y0 Y1 + residual.

    The isotropic vector is the first zero of the form in canonical point
    order; its hyperbolic partner is built from the first point not polar
    to it.  Returns None when the form is anisotropic.
    """
    field = work.field
    m = work.ambient + 1
    space = projective_space(field, m - 1)
    u = next((pt for pt in space.points if work.evaluate(pt) == 0), None)
    if u is None:
        return None
    gram = polarize(work)
    bu = mat_vec(field, gram, u)
    w = next(pt for pt in space.points if _dot(field, bu, pt) != 0)
    w = vec_scale(field, field.inv(_dot(field, bu, w)), w)
    c = work.evaluate(w)
    if c:
        w = vec_add(field, w, vec_scale(field, field.neg(c), u))
    comp = kernel_basis(field, [bu, mat_vec(field, gram, w)], m)
    cols = [list(u), list(w)] + comp
    s = [[cols[c2][r] for c2 in range(m)] for r in range(m)]
    moved = substitute(work, s)
    assert moved.coeff(0, 1) == 1 and moved.coeff(0, 0) == 0 and moved.coeff(1, 1) == 0
    residual = _subform(moved, 2) if m > 2 else None
    return s, residual


def _match_anisotropic(work: QuadraticForm) -> list[list[int]]:
    """2x2 substitution carrying an anisotropic binary form onto the
    canonical irreducible one, found by deterministic vector scan.

    All anisotropic binary forms lie in a single GL_2 orbit (each is the
    norm form of GF(q^2) composed with a multiplication), so an exact match
    with scalar 1 always exists.
    """
    field = work.field
    alpha, d = irreducible_binary_constants(field)
    vecs = [
        (a, b)
        for a in field.elements
        for b in field.elements
        if a or b
    ]
    u0 = next(v for v in vecs if work.evaluate(v) == 1)
    gram = polarize(work)
    bu = mat_vec(field, gram, u0)
    u1 = next(
        v
        for v in vecs
        if _dot(field, bu, v) == alpha and work.evaluate(v) == d
    )
    return [[u0[0], u1[0]], [u0[1], u1[1]]]


def canonicalize(form: QuadraticForm) -> CanonicalizationResult:
    """Witt decomposition: invertible T and scalar lam with F(T y) = lam * C.

    C is the canonical form of the detected class and rank; the identity is
    checked coefficient-wise before returning.
    """
    if form.is_zero:
        raise ZeroForm("cannot canonicalize the zero form")
    field, n = form.field, form.ambient
    radq = radical_quadratic(form)
    k = len(radq)
    r = (n + 1) - k
    if k:
        pivots = rref(field, radq)[1]
        free = [c for c in range(n + 1) if c not in pivots]
        cols = [[1 if i == f else 0 for i in range(n + 1)] for f in free]
        cols += [list(v) for v in radq]
        t1 = [[cols[c][row] for c in range(n + 1)] for row in range(n + 1)]
    else:
        t1 = identity(n + 1)
    g = substitute(form, t1)
    for (i, j), c in zip(monomials(n), g.coeffs):
        if c and (i >= r or j >= r):
            raise InternalInconsistency("radical split left trailing terms")
    if r <= n:
        idx = _monomial_index(n)
        work = QuadraticForm(
            field, r - 1, tuple(g.coeffs[idx[(i, j)]] for i, j in monomials(r - 1))
        )
    else:
        work = g

    t_r = identity(r)
    pairs = 0
    while work is not None:
        peeled = _peel_hyperbolic(work)
        if peeled is None:
            break
        s, work = peeled
        t_r = mat_mul(field, t_r, _shifted_block(r, 2 * pairs, s))
        pairs += 1

    m = r - 2 * pairs
    lam = 1
    if m == 0:
        cls = QuadricClass.HYPERBOLIC if r >= 4 else QuadricClass.HYPERPLANE_PAIR
    elif m == 1:
        lam = work.coeffs[0]
        cls = QuadricClass.PARABOLIC if r >= 3 else QuadricClass.DOUBLE_HYPERPLANE
        perm = [[0] * r for _ in range(r)]
        perm[r - 1][0] = 1
        for j in range(1, r):
            perm[j - 1][j] = 1
        t_r = mat_mul(field, t_r, perm)
        if lam != 1 and pairs:
            d = identity(r)
            for p in range(1, 2 * pairs, 2):
                d[p][p] = lam
            t_r = mat_mul(field, t_r, d)
    else:
        if m != 2:
            raise InternalInconsistency("anisotropic residual of dimension > 2")
        s2 = _match_anisotropic(work)
        cls = QuadricClass.ELLIPTIC if r >= 4 else QuadricClass.CONJUGATE_PAIR
        t_r = mat_mul(field, t_r, _shifted_block(r, 2 * pairs, s2))
        perm = [[0] * r for _ in range(r)]
        perm[r - 2][0] = 1
        perm[r - 1][1] = 1
        for j in range(2, r):
            perm[j - 2][j] = 1
        t_r = mat_mul(field, t_r, perm)

    t_full = mat_mul(field, t1, _block_diag(t_r, k))
    target = canonical_form(field, n, cls, r).scale(lam)
    if substitute(form, t_full).coeffs != target.coeffs:
        raise InternalInconsistency("canonicalization identity failed")
    return CanonicalizationResult(
        quadric_class=cls,
        rank=r,
        transform=tuple(tuple(row) for row in t_full),
        scalar=lam,
    )
