"""Code construction, encoding, interpolation, and the three testers."""

import random

import pytest

from conftest import random_form

from prmquadrics.gf import field_create
from prmquadrics.prm import (
    CodeTooLarge,
    ZeroCodeword,
    build_code,
    interpolation_space,
    is_minimal_characterization,
    is_minimal_exhaustive,
    is_minimal_interpolation,
    iter_monic_coeffs,
    iter_span_monic,
)
from prmquadrics.projspace import bits_to_indices
from prmquadrics.quadric import (
    QuadraticForm,
    QuadricClass,
    ZeroForm,
    classify,
    form_from_terms,
    point_set,
)

F2 = field_create(2, 1)
F3 = field_create(3, 1)
F4 = field_create(2, 2)


def test_build_code_parameters():
    code = build_code(F2, 3)
    assert (code.length, code.dimension) == (15, 10)
    code3 = build_code(F3, 2)
    assert (code3.length, code3.dimension) == (13, 6)
    code4 = build_code(F4, 2)
    assert (code4.length, code4.dimension) == (21, 6)
    assert code4.minimum_distance() == 12


def test_encode_examples():
    code = build_code(F2, 3)
    f = form_from_terms(F2, 3, {(0, 1): 1, (2, 3): 1})
    c = code.encode(f)
    assert c.weight == 15 - 9 == 6
    pair = form_from_terms(F2, 3, {(0, 1): 1})
    assert code.encode(pair).weight == 2**3 - 2**2
    zero = QuadraticForm(F2, 3, (0,) * 10)
    assert code.encode(zero).weight == 0
    # support is the complement of the zero set
    assert set(bits_to_indices(c.support)) == (
        set(range(15)) - set(bits_to_indices(point_set(f)))
    )


def test_encode_linearity():
    rng = random.Random(5)
    for field, n in [(F2, 3), (F3, 2), (F4, 2)]:
        code = build_code(field, n)
        for _ in range(25):
            f = random_form(field, n, rng, nonzero=False)
            g = random_form(field, n, rng, nonzero=False)
            s = QuadraticForm(
                field, n, tuple(field.add(a, b) for a, b in zip(f.coeffs, g.coeffs))
            )
            assert code.encode(s).values == tuple(
                field.add(a, b)
                for a, b in zip(code.encode(f).values, code.encode(g).values)
            )
            lam = rng.randrange(1, field.q)
            assert code.encode(f.scale(lam)).values == tuple(
                field.mul(lam, v) for v in code.encode(f).values
            )


def test_injectivity_no_nonzero_form_has_empty_support():
    for field, n in [(F2, 2), (F2, 3), (F3, 2)]:
        code = build_code(field, n)
        for coeffs in iter_monic_coeffs(field, code.dimension):
            form = QuadraticForm(field, n, coeffs)
            assert point_set(form) != code.space.full_mask


def test_minimum_distance_bruteforce():
    for field, n in [(F2, 2), (F3, 2)]:
        code = build_code(field, n)
        min_weight = min(
            code.space.full_mask.bit_count() - point_set(QuadraticForm(field, n, c)).bit_count()
            for c in iter_monic_coeffs(field, code.dimension)
        )
        assert min_weight == code.minimum_distance()


def test_interpolation_space_dimensions():
    code3 = build_code(F3, 2)
    assert len(interpolation_space(code3, 0)) == 6  # empty constraint set
    conic = form_from_terms(F3, 2, {(0, 0): 1, (1, 2): 1})
    assert classify(conic).quadric_class is QuadricClass.PARABOLIC
    basis = interpolation_space(code3, point_set(conic))
    assert len(basis) == 2  # a projective pencil
    members = list(iter_span_monic(F3, basis))
    assert len(members) == (3**2 - 1) // 2  # 4 conics through the 4 points

    code2 = build_code(F2, 2)
    conic2 = form_from_terms(F2, 2, {(0, 0): 1, (1, 2): 1})
    z = point_set(conic2)
    assert z.bit_count() == 3
    basis2 = interpolation_space(code2, z)
    assert len(basis2) == 3
    assert len(list(iter_span_monic(F2, basis2))) == 7


def test_interpolation_space_members_vanish():
    rng = random.Random(9)
    for field, n in [(F2, 3), (F3, 2), (F4, 2)]:
        code = build_code(field, n)
        for _ in range(15):
            f = random_form(field, n, rng)
            z = point_set(f)
            for cand in iter_span_monic(field, interpolation_space(code, z)):
                assert point_set(cand) & z == z


def test_characterization_examples():
    pair = form_from_terms(F2, 3, {(0, 1): 1})
    assert is_minimal_characterization(pair).minimal
    conic3 = form_from_terms(F3, 2, {(0, 0): 1, (1, 2): 1})
    assert not is_minimal_characterization(conic3).minimal  # rank 3, q <= 3
    elliptic = form_from_terms(F2, 3, {(0, 0): 1, (0, 1): 1, (1, 1): 1, (2, 3): 1})
    assert not is_minimal_characterization(elliptic).minimal  # elliptic rank 4, q = 2
    f5 = field_create(5, 1)
    conic5 = form_from_terms(f5, 2, {(0, 0): 1, (1, 2): 1})
    assert is_minimal_characterization(conic5).minimal
    with pytest.raises(ZeroForm):
        is_minimal_characterization(QuadraticForm(F2, 2, (0,) * 6))


def test_interpolation_tester_exception_pair():
    code = build_code(F2, 3)
    elliptic = form_from_terms(F2, 3, {(0, 0): 1, (0, 1): 1, (1, 1): 1, (2, 3): 1})
    verdict = is_minimal_interpolation(code, elliptic)
    assert not verdict.minimal
    assert verdict.witness is not None
    wz = point_set(verdict.witness)
    ez = point_set(elliptic)
    assert ez.bit_count() == 5
    assert wz.bit_count() > 5
    assert ez & wz == ez and ez != wz
    # The rank-4 hyperbolic witness with 9 points lives in the candidate
    # space too: the interpolating system contains X0*(X0+X3) + X1*(X1+X2).
    hyperbolic = form_from_terms(F2, 3, {(0, 0): 1, (0, 3): 1, (1, 1): 1, (1, 2): 1})
    candidates = {
        cand.coeffs
        for cand in iter_span_monic(F2, interpolation_space(code, ez))
    }
    assert hyperbolic.coeffs in candidates
    assert point_set(hyperbolic).bit_count() == 9


def test_interpolation_tester_conics():
    code3 = build_code(F3, 2)
    conic = form_from_terms(F3, 2, {(0, 0): 1, (1, 2): 1})
    verdict = is_minimal_interpolation(code3, conic)
    assert not verdict.minimal
    assert classify(verdict.witness).quadric_class is QuadricClass.HYPERPLANE_PAIR
    code4 = build_code(F4, 2)
    conic4 = form_from_terms(F4, 2, {(0, 0): 1, (1, 2): 1})
    assert is_minimal_interpolation(code4, conic4).minimal


def test_exhaustive_tester():
    code = build_code(F2, 3)
    pair = form_from_terms(F2, 3, {(0, 1): 1})
    assert is_minimal_exhaustive(code, code.encode(pair)).minimal
    elliptic = form_from_terms(F2, 3, {(0, 0): 1, (0, 1): 1, (1, 1): 1, (2, 3): 1})
    verdict = is_minimal_exhaustive(code, code.encode(elliptic))
    assert not verdict.minimal
    assert verdict.witness is not None
    ws = code.encode(verdict.witness).support
    cs = code.encode(elliptic).support
    assert ws | cs == cs and ws != cs
    with pytest.raises(ZeroCodeword):
        is_minimal_exhaustive(code, code.encode(QuadraticForm(F2, 3, (0,) * 10)))


def test_exhaustive_budget_guard():
    f5 = field_create(5, 1)
    big = build_code(f5, 4)  # dimension 15, 5**15 codewords
    c = big.encode(form_from_terms(f5, 4, {(0, 1): 1}))
    with pytest.raises(CodeTooLarge):
        is_minimal_exhaustive(big, c)
    wide = build_code(F2, 5)  # dimension 21 > 15
    cw = wide.encode(form_from_terms(F2, 5, {(0, 1): 1}))
    with pytest.raises(CodeTooLarge):
        is_minimal_exhaustive(wide, cw)


def test_verdict_scalar_invariance():
    rng = random.Random(13)
    code = build_code(F3, 2)
    for _ in range(20):
        f = random_form(F3, 2, rng)
        base_char = is_minimal_characterization(f).minimal
        base_interp = is_minimal_interpolation(code, f).minimal
        base_exh = is_minimal_exhaustive(code, code.encode(f)).minimal
        for lam in (2,):
            g = f.scale(lam)
            assert is_minimal_characterization(g).minimal == base_char
            assert is_minimal_interpolation(code, g).minimal == base_interp
            assert is_minimal_exhaustive(code, code.encode(g)).minimal == base_exh


def test_codeword_json():
    code = build_code(F4, 2)
    z = F4.from_coeffs((0, 1))
    f = form_from_terms(F4, 2, {(0, 1): z})
    payload = code.encode(f).to_json(F4)
    assert set(payload) == {"values", "support", "weight"}
    assert payload["weight"] == len(payload["support"])
    assert "z" in payload["values"]
