"""Matrices, weights, pairings, reflections, and the matrix file format."""

import random
from fractions import Fraction as F

import pytest

from glspaths import (AsymmetricZero, AxisViolation, MatrixError,
                      MatrixFormatError, alpha, context_with_base,
                      format_weight, parse_context_text, validate_matrix,
                      weight)
from glspaths.checks import check_coroot_signs, check_reflections
from glspaths.rootdata import UnknownBase, WeightContext


def test_validate_real_rank_one():
    m = validate_matrix([[2]])
    assert m.real_indices == frozenset({1})
    assert m.imaginary_indices == frozenset()


def test_validate_imaginary_rank_one():
    m = validate_matrix([[-1]])
    assert m.imaginary_indices == frozenset({1})


def test_validate_asymmetric_zero():
    with pytest.raises(AsymmetricZero) as err:
        validate_matrix([[2, -1], [0, -2]])
    assert (err.value.i, err.value.j) == (1, 2)


def test_validate_diag_zero_flag():
    assert validate_matrix([[0]]).imaginary_indices == frozenset({1})
    with pytest.raises(AxisViolation):
        validate_matrix([[0]], imaginary_diag_zero_allowed=False)


def test_validate_rejects_positive_offdiag_and_bad_diag():
    with pytest.raises(AxisViolation):
        validate_matrix([[2, 1], [1, 2]])
    with pytest.raises(AxisViolation):
        validate_matrix([[3]])
    with pytest.raises(MatrixError):
        validate_matrix([[2, -1]])


def test_pairing_examples():
    ctx, lam = context_with_base([[-1]], [2])
    assert ctx.pairing(1, lam) == 2
    assert ctx.pairing(1, lam - alpha(1)) == 3
    assert ctx.pairing(1, ctx.rho()) == F(-1, 2)
    with pytest.raises(UnknownBase):
        ctx.pairing(1, weight(bases={"nu": 1}))


def test_reflect_and_inverse():
    ctx, lam = context_with_base([[-1]], [2])
    assert ctx.reflect(1, lam) == lam - 2 * alpha(1)
    assert ctx.reflect_inverse(1, lam - 2 * alpha(1)) == lam
    ctx2, lam2 = context_with_base([[2]], [2])
    assert ctx2.reflect(1, lam2 - alpha(1)) == lam2 - alpha(1)  # pairing 0
    with pytest.raises(ValueError):
        ctx2.reflect_inverse(1, lam2)


def test_dominance_and_lattice():
    ctx, lam = context_with_base([[-1]], [2])
    assert ctx.is_dominant(-alpha(1))
    assert ctx.is_P_plus(-alpha(1))
    assert ctx.is_dominant(lam - 2 * alpha(1))  # no real indices
    ctx2, lam2 = context_with_base([[2]], [2])
    assert not ctx2.is_dominant(lam2 - 2 * alpha(1))
    assert not ctx2.is_P_plus(lam2 - 2 * alpha(1))
    # rho is non-integral when a_11 is odd
    assert not ctx.is_in_P(ctx.rho())
    assert ctx2.is_in_P(ctx2.rho())


def test_weight_canonical_form():
    w = weight(bases={"lambda": 1}, roots={1: 0, 2: F(1, 2)})
    assert w.root_items == ((2, F(1, 2)),)
    assert w - w == weight()
    assert 2 * w == w + w
    assert format_weight(weight()) == "0"
    assert format_weight(w - alpha(2)) == "lambda-1/2*a2"


def test_reflection_properties():
    rng = random.Random(7)
    for entries, pairings in ([[-1]], [2]), ([[2]], [3]), ([[2, -1], [-1, -2]], [1, 1]):
        ctx, lam = context_with_base(entries, pairings)
        assert check_reflections(ctx, lam, rng) == []
        assert check_coroot_signs(ctx, rng) == []


def test_parse_context_text():
    matrix, bases = parse_context_text("2\n2 -1\n-1 -2\nbases:\nlambda 1 1\nmu 1/2 0\n")
    assert matrix.n == 2
    assert bases["mu"] == (F(1, 2), F(0))
    ctx = WeightContext(matrix, bases)
    assert ctx.pairing(2, ctx.base("mu")) == 0


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("x\n", 1),
    ("2\n2 -1\n", 3),
    ("1\n2 2\n", 2),
    ("1\n2\nwrong:\n", 3),
    ("1\n2\nbases:\nlambda x\n", 4),
])
def test_parser_diagnostics(text, line):
    with pytest.raises(MatrixFormatError) as err:
        parse_context_text(text)
    assert err.value.line == line


def test_parser_rejects_bad_matrix():
    with pytest.raises(MatrixError):
        parse_context_text("1\n3\n")


def test_declared_integral_flag_must_hold():
    m = validate_matrix([[2]])
    with pytest.raises(ValueError):
        WeightContext(m, {"lambda": [F(1, 2)]}, {"lambda": True})
    with pytest.raises(ValueError):
        WeightContext(m, {"rho": [1]})
