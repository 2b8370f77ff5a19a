"""Rational points of P^N(F_q), linear subspaces, and q-binomial counts.

Point representatives follow the usual normalization: the last nonzero
coordinate equals 1.  The canonical point list is sorted lexicographically
on coordinate vectors under the field's element order, and every bit-indexed
point set in the package is keyed by position in that list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .gf import Field
from .linalg import identity, kernel_basis, matrix_rank, rref, vec_add, vec_scale


class ProjSpaceError(Exception):
    pass


class OutOfRange(ProjSpaceError):
    """Binomial arguments outside 0 <= k <= n."""


class EqualPoints(ProjSpaceError):
    """A line needs two distinct points."""


def projective_size(q: int, n: int) -> int:
    """Number of rational points of P^n: q**n + ... + q + 1, with p_(-1) = 0."""
    if n < -1:
        raise OutOfRange(f"no projective space of dimension {n}")
    return sum(q**i for i in range(n + 1))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q**n, as an exact integer."""
    if not 0 <= k <= n:
        raise OutOfRange(f"gaussian binomial needs 0 <= k <= n, got ({n}, {k})")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def normalize(field: Field, vec) -> tuple[int, ...]:
    """Scale so the last nonzero coordinate is 1."""
    vec = list(vec)
    last = next((i for i in range(len(vec) - 1, -1, -1) if vec[i] != 0), None)
    if last is None:
        raise ValueError("cannot normalize the zero vector")
    c = vec[last]
    if c != 1:
        vec = vec_scale(field, field.inv(c), vec)
    return tuple(vec)


class ProjectiveSpace:
    """P^N(F_q) with its canonical ordered point list and index lookup."""

    def __init__(self, field: Field, n: int):
        if n < 0:
            raise OutOfRange(f"ambient dimension must be >= 0, got {n}")
        self.field = field
        self.n = n
        pts = []
        for last in range(n + 1):
            for head in itertools.product(field.elements, repeat=last):
                pts.append(head + (1,) + (0,) * (n - last))
        key = field.order_index
        pts.sort(key=lambda pt: tuple(key(c) for c in pt))
        self.points: tuple[tuple[int, ...], ...] = tuple(pts)
        self._index = {pt: i for i, pt in enumerate(pts)}
        self.full_mask = (1 << len(pts)) - 1
        self._mono_cache: dict = {}

    def __len__(self) -> int:
        return len(self.points)

    def point_index(self, point) -> int:
        return self._index[normalize(self.field, point)]

    def render_point(self, point) -> str:
        return "(" + ":".join(self.field.render(c) for c in point) + ")"

    def monomial_rows(self, monomials: tuple[tuple[int, int], ...]):
        """Per-point value tuples of the given monomials (cached)."""
        cached = self._mono_cache.get(monomials)
        if cached is None:
            mul = self.field._mul
            cached = tuple(
                tuple(mul[pt[i]][pt[j]] for i, j in monomials) for pt in self.points
            )
            self._mono_cache[monomials] = cached
        return cached

    def monomial_bitmasks(self, monomials: tuple[tuple[int, int], ...]):
        """GF(2) only: per-point monomial values packed into bitmasks."""
        assert self.field.q == 2
        key = (monomials, "gf2")
        cached = self._mono_cache.get(key)
        if cached is None:
            rows = self.monomial_rows(monomials)
            cached = tuple(sum(v << k for k, v in enumerate(row)) for row in rows)
            self._mono_cache[key] = cached
        return cached


@lru_cache(maxsize=None)
def projective_space(field: Field, n: int) -> ProjectiveSpace:
    return ProjectiveSpace(field, n)


def enumerate_points(field: Field, n: int) -> tuple[tuple[int, ...], ...]:
    """The canonical ordered list of rational points of P^n."""
    return projective_space(field, n).points


def line_through(field: Field, p, q) -> list[tuple[int, ...]]:
    """All q+1 rational points of the line spanned by two distinct points."""
    p = normalize(field, p)
    q = normalize(field, q)
    if p == q:
        raise EqualPoints("line_through requires two distinct points")
    pts = {p}
    for lam in field.elements:
        pts.add(normalize(field, vec_add(field, vec_scale(field, lam, p), q)))
    key = field.order_index
    return sorted(pts, key=lambda pt: tuple(key(c) for c in pt))


@dataclass(frozen=True)
class LinearSubspace:
    """Projective linear subspace stored by independent spanning points.

    The spanning list is canonical: normalized rref rows of any generating
    set, so equal subspaces compare equal.  An empty spanning list encodes
    the empty subspace of dimension -1.
    """

    field: Field
    ambient: int
    spanning: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.spanning) - 1

    def points(self) -> list[tuple[int, ...]]:
        """All rational points, normalized and canonically ordered."""
        field = self.field
        out = set()
        for combo in itertools.product(field.elements, repeat=len(self.spanning)):
            if not any(combo):
                continue
            vec = [0] * (self.ambient + 1)
            for c, s in zip(combo, self.spanning):
                if c:
                    vec = vec_add(field, vec, vec_scale(field, c, s))
            out.add(normalize(field, vec))
        key = field.order_index
        return sorted(out, key=lambda pt: tuple(key(c) for c in pt))

    def contains(self, point) -> bool:
        if not self.spanning:
            return False
        rows = [list(s) for s in self.spanning]
        base = matrix_rank(self.field, rows)
        return matrix_rank(self.field, rows + [list(point)]) == base

    def equations(self) -> list[list[int]]:
        """Dual view: a basis of linear forms vanishing on the subspace."""
        if not self.spanning:
            return identity(self.ambient + 1)
        return kernel_basis(
            self.field, [list(s) for s in self.spanning], self.ambient + 1
        )

    def to_json(self) -> dict:
        space = projective_space(self.field, self.ambient)
        return {
            "dimension": self.dimension,
            "spanning_points": [space.render_point(p) for p in self.spanning],
        }


def subspace_from_vectors(field: Field, ambient: int, vectors) -> LinearSubspace:
    """Subspace spanned by arbitrary vectors (dependencies are dropped)."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return LinearSubspace(field, ambient, ())
    red, pivots = rref(field, rows)
    spanning = tuple(normalize(field, red[i]) for i in range(len(pivots)))
    return LinearSubspace(field, ambient, spanning)


def subspace_points(subspace: LinearSubspace) -> list[tuple[int, ...]]:
    """Point list of a nonempty subspace; length is p_dim."""
    if subspace.dimension < 0:
        raise ValueError("subspace_points needs a nonempty subspace")
    return subspace.points()


def hyperplane(field: Field, linear_form) -> LinearSubspace:
    """The hyperplane {x : sum(L_i x_i) = 0} given the coefficient vector."""
    if not any(linear_form):
        raise ValueError("zero linear form does not define a hyperplane")
    basis = kernel_basis(field, [list(linear_form)])
    return subspace_from_vectors(field, len(list(linear_form)) - 1, basis)


def bits_to_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out
