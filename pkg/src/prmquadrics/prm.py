"""Order-2 projective Reed-Muller codes and minimal-codeword testers.

The code of length p_N is the image of the evaluation map sending a
quadratic form to its value vector over the canonical point list.  For
degree 2 the map is injective for every q (values at e_i and e_i + e_j
recover all coefficients), so codewords correspond to forms and codewords
up to scalar to quadrics.

A nonzero codeword is minimal when no other nonzero codeword has support
strictly inside its own; equivalently, the zero set of its form is maximal
under inclusion among quadric point sets.  Three independent testers are
provided: a classification-based characterization, an interpolation search
through the linear system of forms vanishing on the zero set, and a raw
exhaustive support scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gf import Field
from .linalg import kernel_basis, kernel_basis_gf2, matrix_rank
from .projspace import bits_to_indices, projective_space
from .quadric import (
    ABSOLUTELY_IRREDUCIBLE,
    DimensionMismatch,
    QuadraticForm,
    QuadricClass,
    ZeroForm,
    classify,
    monomials,
    point_set,
)


class PrmError(Exception):
    pass


class CodeTooLarge(PrmError):
    """Exhaustive scan bounds: dimension <= 15 and q**dim <= 2e7."""


class ZeroCodeword(PrmError):
    pass


EXHAUSTIVE_MAX_DIMENSION = 15
EXHAUSTIVE_MAX_CODE_SIZE = 2 * 10**7


@dataclass(frozen=True)
class Codeword:
    values: tuple[int, ...]
    support: int
    weight: int

    def to_json(self, field: Field) -> dict:
        return {
            "values": ",".join(field.render(v) for v in self.values),
            "support": bits_to_indices(self.support),
            "weight": self.weight,
        }


class PrmCode:
    """Generator-matrix view of the order-2 code on P^N(F_q)."""

    def __init__(self, field: Field, n: int):
        if n < 1:
            raise PrmError("code needs ambient dimension N >= 1")
        self.field = field
        self.n = n
        self.space = projective_space(field, n)
        self.monomials = monomials(n)
        self.length = len(self.space)
        self.dimension = len(self.monomials)
        rows = self.space.monomial_rows(self.monomials)
        self.generator = tuple(
            tuple(rows[p][k] for p in range(self.length))
            for k in range(self.dimension)
        )
        if matrix_rank(field, [list(r) for r in self.generator]) != self.dimension:
            raise PrmError("evaluation map is not injective; generator is rank-deficient")
        self._monic_supports = None

    def encode(self, form: QuadraticForm) -> Codeword:
        if form.field != self.field or form.ambient != self.n:
            raise DimensionMismatch("form does not match the code parameters")
        zeros = point_set(form)
        support = self.space.full_mask ^ zeros
        values = tuple(form.evaluate(pt) for pt in self.space.points)
        return Codeword(values=values, support=support, weight=support.bit_count())

    def minimum_distance(self) -> int:
        """q**N - q**(N-1): the complement of the two-hyperplane maximum."""
        q, n = self.field.q, self.n
        return q**n - q ** (n - 1)

    def monic_supports(self) -> list[tuple[tuple[int, ...], int]]:
        """(coefficients, support) for every monic form, scan-order cached."""
        if self._monic_supports is None:
            self._check_exhaustive_budget()
            out = []
            for coeffs in iter_monic_coeffs(self.field, self.dimension):
                form = QuadraticForm(self.field, self.n, coeffs)
                out.append((coeffs, self.space.full_mask ^ point_set(form)))
            self._monic_supports = out
        return self._monic_supports

    def _check_exhaustive_budget(self) -> None:
        if self.dimension > EXHAUSTIVE_MAX_DIMENSION:
            raise CodeTooLarge(
                f"dimension {self.dimension} exceeds {EXHAUSTIVE_MAX_DIMENSION}"
            )
        if self.field.q**self.dimension > EXHAUSTIVE_MAX_CODE_SIZE:
            raise CodeTooLarge(
                f"code size {self.field.q}**{self.dimension} exceeds scan bound"
            )

    def to_json(self) -> dict:
        return {
            "q": self.field.q,
            "N": self.n,
            "length": self.length,
            "dimension": self.dimension,
            "min_distance": self.minimum_distance(),
        }


def build_code(field: Field, n: int) -> PrmCode:
    return PrmCode(field, n)


def iter_monic_coeffs(field: Field, length: int):
    """All nonzero coefficient tuples up to scalar, leading coefficient 1.

    Enumeration is canonical: leading index ascending, then the tail in
    lexicographic order under the field element order.
    """
    elems = field.elements
    for lead in range(length):
        head = (0,) * lead + (1,)
        for tail in itertools.product(elems, repeat=length - lead - 1):
            yield head + tail


def interpolation_space(code: PrmCode, point_indices) -> list[QuadraticForm]:
    """Basis of the space of forms vanishing at the given points.

    Accepts a bitmask or an iterable of point indices.  The basis is the
    deterministic free-column kernel basis of the evaluation constraints.
    """
    if isinstance(point_indices, int):
        indices = bits_to_indices(point_indices)
    else:
        indices = sorted(set(point_indices))
    field = code.field
    m = code.dimension
    if not indices:
        basis_vecs = [[1 if k == i else 0 for k in range(m)] for i in range(m)]
        return [QuadraticForm(field, code.n, tuple(v)) for v in basis_vecs]
    if field.q == 2:
        packed = code.space.monomial_bitmasks(code.monomials)
        basis_masks = kernel_basis_gf2([packed[i] for i in indices], m)
        return [
            QuadraticForm(field, code.n, tuple(b >> k & 1 for k in range(m)))
            for b in basis_masks
        ]
    rows = code.space.monomial_rows(code.monomials)
    basis_vecs = kernel_basis(field, [list(rows[i]) for i in indices], m)
    return [QuadraticForm(field, code.n, tuple(v)) for v in basis_vecs]


def iter_span_monic(field: Field, basis: list[QuadraticForm]):
    """Nonzero forms in the span of a basis, one per scalar class."""
    if not basis:
        return
    n = basis[0].ambient
    add, mul = field._add, field._mul
    m = len(basis[0].coeffs)
    for combo in iter_monic_coeffs(field, len(basis)):
        acc = [0] * m
        for c, b in zip(combo, basis):
            if c:
                bc = b.coeffs
                acc = [add[x][mul[c][y]] for x, y in zip(acc, bc)]
        yield QuadraticForm(field, n, tuple(acc))


@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool
    method: str
    witness: QuadraticForm | None = None

    def to_json(self, renderer=None) -> dict:
        witness = None
        if self.witness is not None and renderer is not None:
            witness = renderer(self.witness)
        return {"minimal": self.minimal, "method": self.method, "witness": witness}


def is_minimal_characterization(form: QuadraticForm) -> MinimalityVerdict:
    """Class-based verdict: hyperplane pairs and absolutely irreducible
    quadrics are minimal, except rank 3 when q <= 3 and elliptic rank 4
    when q = 2.  Produces no witness."""
    if form.is_zero:
        raise ZeroForm("minimality of the zero form is undefined")
    report = classify(form)
    q = form.field.q
    cls, rk = report.quadric_class, report.rank
    minimal = cls is QuadricClass.HYPERPLANE_PAIR or (
        cls in ABSOLUTELY_IRREDUCIBLE
        and not (rk == 3 and q <= 3)
        and not (cls is QuadricClass.ELLIPTIC and rk == 4 and q == 2)
    )
    return MinimalityVerdict(minimal=minimal, method="characterization")


def is_minimal_interpolation(code: PrmCode, form: QuadraticForm) -> MinimalityVerdict:
    """Verdict by searching the linear system of forms through the zero set.

    Minimal iff every form vanishing on the zero set has exactly that zero
    set; the first strictly larger one in enumeration order is the witness.
    """
    if form.is_zero:
        raise ZeroForm("minimality of the zero form is undefined")
    zeros = point_set(form)
    count = zeros.bit_count()
    for candidate in iter_span_monic(code.field, interpolation_space(code, zeros)):
        if point_set(candidate).bit_count() > count:
            return MinimalityVerdict(
                minimal=False, method="interpolation", witness=candidate
            )
    return MinimalityVerdict(minimal=True, method="interpolation")


def is_minimal_exhaustive(code: PrmCode, codeword: Codeword) -> MinimalityVerdict:
    """Verdict by scanning every codeword for a strictly smaller support."""
    if codeword.weight == 0:
        raise ZeroCodeword("minimality of the zero codeword is undefined")
    supp = codeword.support
    for coeffs, other in code.monic_supports():
        if other != supp and other | supp == supp:
            return MinimalityVerdict(
                minimal=False,
                method="exhaustive",
                witness=QuadraticForm(code.field, code.n, coeffs),
            )
    return MinimalityVerdict(minimal=True, method="exhaustive")
