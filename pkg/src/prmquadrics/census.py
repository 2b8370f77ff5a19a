"""Closed-form counting of quadrics and exhaustive cross-verification.

Two independent routes to the same numbers: product formulas for the count
of smooth quadrics per class and for minimal codewords per weight, and a
brute-force scan that enumerates every form up to scalar, classifies it,
and applies a selected minimality tester.  The scan also searches, through
interpolation spaces, for pairs of quadrics whose rational point sets are
strictly nested, asserting that every such pair has one of the admissible
shapes (the q = 2 elliptic/hyperbolic rank-4 pair, or low-rank cones inside
hyperplane pairs).
"""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass
from functools import lru_cache

from .gf import field_from_order
from .prm import (
    PrmCode,
    build_code,
    interpolation_space,
    is_minimal_characterization,
    is_minimal_exhaustive,
    is_minimal_interpolation,
    iter_monic_coeffs,
    iter_span_monic,
)
from .projspace import gaussian_binomial, projective_size
from .quadric import (
    ClassificationReport,
    QuadraticForm,
    QuadricClass,
    classify,
    discriminate,
    monomials,
    point_set,
    radical_quadratic,
)


class CensusError(Exception):
    pass


class ParityMismatch(CensusError):
    pass


class BudgetExceeded(CensusError):
    pass


class InadmissibleViolation(CensusError):
    """A containment pair outside the admissible shapes: theorem failure."""


DEFAULT_FORM_BUDGET = 60_000

TESTERS = ("characterization", "interpolation", "exhaustive")


def orbit_count(cls: QuadricClass, r: int, q: int) -> int:
    """Number of smooth quadrics of the given class in P^(r-1).

    Parabolic: q**((r-1)(r+1)/4) * prod(q**(2i+1) - 1, i = 1..(r-1)/2).
    Hyperbolic/elliptic: q**(r^2/4) * (q**(r/2) +- 1)/2 * the same product
    taken to (r-2)/2.
    """
    if cls is QuadricClass.PARABOLIC:
        if r < 3 or r % 2 == 0:
            raise ParityMismatch(f"parabolic rank must be odd >= 3, got {r}")
        value = q ** ((r - 1) * (r + 1) // 4)
        for i in range(1, (r - 1) // 2 + 1):
            value *= q ** (2 * i + 1) - 1
        return value
    if cls in (QuadricClass.HYPERBOLIC, QuadricClass.ELLIPTIC):
        if r < 4 or r % 2 == 1:
            raise ParityMismatch(f"{cls.value} rank must be even >= 4, got {r}")
        sign = 1 if cls is QuadricClass.HYPERBOLIC else -1
        value = q ** (r * r // 4) * (q ** (r // 2) + sign)
        assert value % 2 == 0
        value //= 2
        for i in range(1, (r - 2) // 2 + 1):
            value *= q ** (2 * i + 1) - 1
        return value
    raise ParityMismatch(f"orbit counts apply to absolutely irreducible classes, not {cls.value}")


@dataclass(frozen=True)
class OrbitCounts:
    """Smooth-quadric counts in P^(r-1) per class; parity fixes which apply."""

    q: int
    r: int
    n_parabolic: int
    n_hyperbolic: int
    n_elliptic: int


def orbit_counts(q: int, r: int) -> OrbitCounts:
    if r < 3:
        raise ParityMismatch(f"absolutely irreducible quadrics have rank >= 3, got {r}")
    if r % 2:
        return OrbitCounts(q, r, orbit_count(QuadricClass.PARABOLIC, r, q), 0, 0)
    return OrbitCounts(
        q,
        r,
        0,
        orbit_count(QuadricClass.HYPERBOLIC, r, q),
        orbit_count(QuadricClass.ELLIPTIC, r, q),
    )


def smooth_quadric_count(r: int, q: int) -> int:
    """Smooth quadrics of rank r in P^(r-1), all classes combined."""
    if r == 1:
        return 1
    if r == 2:
        return (q * (q + 1)) // 2 + (q * (q - 1)) // 2
    if r % 2:
        return orbit_count(QuadricClass.PARABOLIC, r, q)
    return orbit_count(QuadricClass.HYPERBOLIC, r, q) + orbit_count(
        QuadricClass.ELLIPTIC, r, q
    )


def total_quadric_count(q: int, n: int) -> int:
    """Sum over ranks of (singular-locus choices) * (smooth counts)."""
    return sum(
        gaussian_binomial(n + 1, r, q) * smooth_quadric_count(r, q)
        for r in range(1, n + 2)
    )


@dataclass(frozen=True)
class MinimalCountTable:
    q: int
    n: int
    delta: int
    epsilon: int
    rows: tuple[tuple[int, int, int | None], ...]  # (weight, closed, brute)

    def closed_dict(self) -> dict[int, int]:
        return {w: c for w, c, _ in self.rows if c}

    def brute_dict(self) -> dict[int, int]:
        return {w: b for w, _, b in self.rows if b}

    def matches(self) -> bool:
        if any(b is None for _, _, b in self.rows):
            return False
        return all(c == b for _, c, b in self.rows)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "N": self.n,
            "delta": self.delta,
            "epsilon": self.epsilon,
            "rows": [
                {"weight": w, "closed": c, "brute": b} for w, c, b in self.rows
            ],
        }

    def to_csv(self) -> str:
        lines = ["weight,closed,brute"]
        for w, c, b in self.rows:
            lines.append(f"{w},{c},{'' if b is None else b}")
        return "\n".join(lines) + "\n"


def _delta_epsilon(q: int) -> tuple[int, int]:
    return (2 if q <= 3 else 0), (2 if q == 2 else 0)


def minimal_count_closed_form(q: int, n: int) -> MinimalCountTable:
    """Per-weight counts of minimal codewords from the product formulas.

    Hyperplane pairs sit at weight q**N - q**(N-1); parabolic quadrics of
    every admissible odd rank share weight q**N; hyperbolic rank r lands at
    q**N - q**(N-r/2) and elliptic rank r at q**N + q**(N-r/2).  Ranks are
    clipped by delta (no rank 3 when q <= 3) and epsilon (no elliptic rank
    4 when q = 2); empty ranges contribute no rows.
    """
    if n < 1:
        raise CensusError("census needs N >= 1")
    delta, epsilon = _delta_epsilon(q)
    counts: dict[int, int] = {}
    scalars = q - 1

    w_pairs = q**n - q ** (n - 1)
    counts[w_pairs] = (
        scalars * gaussian_binomial(n + 1, 2, q) * (q + 1) * q // 2
    )

    parabolic_total = sum(
        gaussian_binomial(n + 1, r, q) * orbit_count(QuadricClass.PARABOLIC, r, q)
        for r in range(3 + delta, n + 2, 2)
        if r % 2 == 1
    )
    if parabolic_total:
        counts[q**n] = scalars * parabolic_total

    for r in range(4, n + 2, 2):
        w = q**n - q ** (n - r // 2)
        counts[w] = counts.get(w, 0) + scalars * gaussian_binomial(
            n + 1, r, q
        ) * orbit_count(QuadricClass.HYPERBOLIC, r, q)
    for r in range(4 + epsilon, n + 2, 2):
        w = q**n + q ** (n - r // 2)
        counts[w] = counts.get(w, 0) + scalars * gaussian_binomial(
            n + 1, r, q
        ) * orbit_count(QuadricClass.ELLIPTIC, r, q)

    rows = tuple((w, counts[w], None) for w in sorted(counts))
    return MinimalCountTable(q=q, n=n, delta=delta, epsilon=epsilon, rows=rows)


def _check_budget(q: int, n: int, budget: int | None) -> None:
    budget = DEFAULT_FORM_BUDGET if budget is None else budget
    size = q ** len(monomials(n))
    if size > budget:
        raise BudgetExceeded(
            f"form space of size {size} exceeds the enumeration budget {budget}"
        )


@lru_cache(maxsize=8)
def survey(q: int, n: int):
    """Classify every monic form: (coeffs, class, rank, zero-set mask)."""
    field = field_from_order(q)
    rows = []
    for coeffs in iter_monic_coeffs(field, len(monomials(n))):
        form = QuadraticForm(field, n, coeffs)
        mask = point_set(form)
        rk = (n + 1) - len(radical_quadratic(form))
        cls = discriminate(rk, mask.bit_count(), n, q)
        rows.append((coeffs, cls, rk, mask))
    return tuple(rows)


def class_rank_census(q: int, n: int) -> dict[tuple[QuadricClass, int], int]:
    """Monic form counts per (class, rank), from the exhaustive survey."""
    out: dict[tuple[QuadricClass, int], int] = {}
    for _, cls, rk, _ in survey(q, n):
        key = (cls, rk)
        out[key] = out.get(key, 0) + 1
    return out


def serre_scan(q: int, n: int) -> tuple[int, int, bool]:
    """(closed-form bound, max observed zeros, attained only by pairs)."""
    bound = 2 * q ** (n - 1) + projective_size(q, n - 2)
    max_seen = 0
    only_pairs = True
    for _, cls, _, mask in survey(q, n):
        c = mask.bit_count()
        if c > max_seen:
            max_seen = c
        if c == bound and cls is not QuadricClass.HYPERPLANE_PAIR:
            only_pairs = False
    return bound, max_seen, only_pairs and max_seen == bound


def _minimal_by_tester(
    tester: str, code: PrmCode, form: QuadraticForm
) -> bool:
    if tester == "characterization":
        return is_minimal_characterization(form).minimal
    if tester == "interpolation":
        return is_minimal_interpolation(code, form).minimal
    if tester == "exhaustive":
        return is_minimal_exhaustive(code, code.encode(form)).minimal
    raise CensusError(f"unknown tester {tester!r}; expected one of {TESTERS}")


def _census_block(args) -> dict[int, int]:
    q, n, tester, lead = args
    field = field_from_order(q)
    code = build_code(field, n)
    m = code.dimension
    tally: dict[int, int] = {}
    head = (0,) * lead + (1,)
    for tail in itertools.product(field.elements, repeat=m - lead - 1):
        coeffs = head + tail
        form = QuadraticForm(field, n, coeffs)
        if _minimal_by_tester(tester, code, form):
            weight = code.length - point_set(form).bit_count()
            tally[weight] = tally.get(weight, 0) + (q - 1)
    return tally


def brute_force_census(
    q: int,
    n: int,
    tester: str = "characterization",
    workers: int = 1,
    budget: int | None = None,
) -> MinimalCountTable:
    """Scan all forms up to scalar and tally minimal codewords per weight.

    Each minimal monic form accounts for q-1 codewords (its scalar orbit).
    The result carries both the brute-force and the closed-form columns.
    """
    if tester not in TESTERS:
        raise CensusError(f"unknown tester {tester!r}; expected one of {TESTERS}")
    _check_budget(q, n, budget)
    field = field_from_order(q)
    tally: dict[int, int] = {}
    if workers > 1:
        blocks = [(q, n, tester, lead) for lead in range(len(monomials(n)))]
        with multiprocessing.Pool(workers) as pool:
            for part in pool.imap(_census_block, blocks):
                for w, c in part.items():
                    tally[w] = tally.get(w, 0) + c
    else:
        code = build_code(field, n)
        for coeffs, _, _, mask in survey(q, n):
            form = QuadraticForm(field, n, coeffs)
            if _minimal_by_tester(tester, code, form):
                weight = code.length - mask.bit_count()
                tally[weight] = tally.get(weight, 0) + (q - 1)
    closed = minimal_count_closed_form(q, n)
    closed_map = closed.closed_dict()
    weights = sorted(set(closed_map) | set(tally))
    rows = tuple(
        (w, closed_map.get(w, 0), tally.get(w, 0)) for w in weights
    )
    return MinimalCountTable(
        q=q, n=n, delta=closed.delta, epsilon=closed.epsilon, rows=rows
    )


@dataclass(frozen=True)
class ContainmentViolation:
    form: QuadraticForm
    witness: QuadraticForm
    form_report: ClassificationReport
    witness_report: ClassificationReport
    shape: str

    def to_json(self, renderer) -> dict:
        return {
            "form": renderer(self.form),
            "form_report": self.form_report.to_json(),
            "witness": renderer(self.witness),
            "witness_report": self.witness_report.to_json(),
            "shape": self.shape,
        }


def _admissible_shape(
    q: int, cls: QuadricClass, rk: int, wcls: QuadricClass, wrk: int
) -> str | None:
    if (
        q == 2
        and cls is QuadricClass.ELLIPTIC
        and rk == 4
        and wcls is QuadricClass.HYPERBOLIC
        and wrk == 4
    ):
        return "elliptic4_in_hyperbolic4"
    if rk == 3 and q <= 3 and wcls is QuadricClass.HYPERPLANE_PAIR:
        return "rank3_in_hyperplane_pair"
    if (
        q == 2
        and cls is QuadricClass.ELLIPTIC
        and rk == 4
        and wcls is QuadricClass.HYPERPLANE_PAIR
    ):
        return "elliptic4_in_hyperplane_pair"
    return None


def _containment_block(args):
    q, n, lead = args
    field = field_from_order(q)
    code = build_code(field, n)
    m = code.dimension
    out = []
    cache: dict = {}
    head = (0,) * lead + (1,)
    for tail in itertools.product(field.elements, repeat=m - lead - 1):
        coeffs = head + tail
        form = QuadraticForm(field, n, coeffs)
        out.extend(_violations_for_form(q, code, form, point_set(form), cache))
    return [
        (v.form.coeffs, v.witness.coeffs, v.shape) for v in out
    ]


def _cached_report(cache: dict, q: int, n: int, form: QuadraticForm):
    """Witnesses repeat heavily across the scan; share form and report."""
    hit = cache.get(form.coeffs)
    if hit is None:
        hit = (form, classify(form))
        cache[form.coeffs] = hit
    return hit


def _violations_for_form(
    q: int,
    code: PrmCode,
    form: QuadraticForm,
    mask: int,
    cache: dict,
) -> list[ContainmentViolation]:
    form, report = _cached_report(cache, q, code.n, form)
    if report.quadric_class in (
        QuadricClass.DOUBLE_HYPERPLANE,
        QuadricClass.CONJUGATE_PAIR,
    ):
        return []
    count = mask.bit_count()
    out = []
    for candidate in iter_span_monic(code.field, interpolation_space(code, mask)):
        if point_set(candidate).bit_count() <= count:
            continue
        candidate, wreport = _cached_report(cache, q, code.n, candidate)
        shape = _admissible_shape(
            q,
            report.quadric_class,
            report.rank,
            wreport.quadric_class,
            wreport.rank,
        )
        if shape is None:
            raise InadmissibleViolation(
                f"inadmissible containment: {report.quadric_class.value} rank "
                f"{report.rank} inside {wreport.quadric_class.value} rank {wreport.rank}"
            )
        out.append(
            ContainmentViolation(
                form=form,
                witness=candidate,
                form_report=report,
                witness_report=wreport,
                shape=shape,
            )
        )
    return out


def verify_containment(
    q: int, n: int, workers: int = 1, budget: int | None = None
) -> list[ContainmentViolation]:
    """Collect all strict point-set containments with a non-degenerate form
    on the small side, asserting each matches an admissible shape.

    Double hyperplanes and conjugate pairs are excluded on the small side:
    their point sets sit inside hyperplanes, so containments are expected
    and carry no information.  Raises InadmissibleViolation when a pair
    outside the admissible shapes appears (a theorem failure).
    """
    _check_budget(q, n, budget)
    field = field_from_order(q)
    cache: dict = {}
    if workers > 1:
        blocks = [(q, n, lead) for lead in range(len(monomials(n)))]
        triples = []
        with multiprocessing.Pool(workers) as pool:
            for part in pool.imap(_containment_block, blocks):
                triples.extend(part)
        out = []
        for fc, wc, shape in triples:
            form, form_report = _cached_report(cache, q, n, QuadraticForm(field, n, fc))
            witness, witness_report = _cached_report(
                cache, q, n, QuadraticForm(field, n, wc)
            )
            out.append(
                ContainmentViolation(
                    form=form,
                    witness=witness,
                    form_report=form_report,
                    witness_report=witness_report,
                    shape=shape,
                )
            )
        return out
    code = build_code(field, n)
    out = []
    for coeffs, _, _, mask in survey(q, n):
        form = QuadraticForm(field, n, coeffs)
        out.extend(_violations_for_form(q, code, form, mask, cache))
    return out


def containment_pairs_bruteforce(q: int, n: int) -> set[tuple]:
    """All-pairs subset scan (quadratic cost): cross-check for the
    interpolation-driven search, intended for small grids only."""
    _check_budget(q, n, None)
    rows = survey(q, n)
    out = set()
    skip = (QuadricClass.DOUBLE_HYPERPLANE, QuadricClass.CONJUGATE_PAIR)
    for coeffs_a, cls_a, _, mask_a in rows:
        if cls_a in skip:
            continue
        for coeffs_b, _, _, mask_b in rows:
            if mask_a != mask_b and mask_a | mask_b == mask_b:
                out.add((coeffs_a, coeffs_b))
    return out


def verify_exception_example() -> bool:
    """The explicit q = 2 nesting: an elliptic rank-4 quadric with 5 points
    strictly inside a hyperbolic rank-4 quadric with 9 points in P^3."""
    field = field_from_order(2)
    inner = QuadraticForm(
        field, 3, _coeffs_from_terms(field, 3, {(0, 0): 1, (0, 1): 1, (1, 1): 1, (2, 3): 1})
    )
    outer = QuadraticForm(
        field, 3, _coeffs_from_terms(field, 3, {(0, 0): 1, (0, 3): 1, (1, 1): 1, (1, 2): 1})
    )
    ri, ro = classify(inner), classify(outer)
    mi, mo = point_set(inner), point_set(outer)
    return (
        ri.quadric_class is QuadricClass.ELLIPTIC
        and ri.rank == 4
        and ro.quadric_class is QuadricClass.HYPERBOLIC
        and ro.rank == 4
        and ri.point_count == 5
        and ro.point_count == 9
        and mi != mo
        and mi | mo == mo
    )


def _coeffs_from_terms(field, n, terms):
    from .quadric import form_from_terms

    return form_from_terms(field, n, terms).coeffs


@dataclass(frozen=True)
class PencilProfile:
    members: int
    reducible: int
    irreducible: int


def conic_interpolation_profile(q: int) -> PencilProfile:
    """Common profile of the linear system through a smooth conic's points.

    For every smooth conic in P^2 the forms vanishing on its rational
    points are enumerated and classified; the profile (members, reducible
    pairs of lines, irreducible conics) must be identical across conics.
    """
    field = field_from_order(q)
    code = build_code(field, 2)
    profile = None
    for _, _, rk, mask in survey(q, 2):
        if rk != 3:
            continue
        members = reducible = irreducible = 0
        for candidate in iter_span_monic(field, interpolation_space(code, mask)):
            members += 1
            ccls = classify(candidate).quadric_class
            if ccls is QuadricClass.HYPERPLANE_PAIR:
                reducible += 1
            elif ccls in (QuadricClass.PARABOLIC,):
                irreducible += 1
        found = PencilProfile(members, reducible, irreducible)
        if profile is None:
            profile = found
        elif profile != found:
            raise CensusError(
                f"conic interpolation profile is not uniform: {profile} vs {found}"
            )
    if profile is None:
        raise CensusError("no smooth conics found")
    return profile
