"""Unit tests for the expression parser and canonical printer."""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import ExprParseError
from src.exprparse import GluingPoly, parse_expr, parse_param_poly, print_canonical, tokenize
from tests.corpus import random_gluing_poly, random_param_poly


class TestParser:
    """Tests for parse_expr."""

    def test_example_gluing(self):
        """Test the gluing term y2^2 + x^2*y2^3."""
        p = parse_expr("y2^2 + x^2*y2^3")
        assert dict(p.terms) == {(0, 0, 2): 1, (2, 0, 3): 1}
        print("  [PASS] Example gluing")

    def test_zero(self):
        """Test that '0' has an empty term map."""
        assert dict(parse_expr("0").terms) == {}
        print("  [PASS] Zero")

    def test_negative_x_and_rational(self):
        """Test x^-1*y1*y2 - 1/2*y2^2."""
        p = parse_expr("x^-1*y1*y2 - 1/2*y2^2")
        assert dict(p.terms) == {(-1, 1, 1): 1, (0, 0, 2): Fraction(-1, 2)}
        print("  [PASS] Negative x and rational")

    def test_whitespace_insignificant(self):
        """Test that spacing does not change the result."""
        assert parse_expr(" y2 ^ 2+x*y1 *y2 ") == parse_expr("y2^2 + x*y1*y2")
        print("  [PASS] Whitespace")

    def test_trailing_whitespace(self):
        """Test that blanks, tabs and newlines after the last token are skipped."""
        expected = parse_expr("y2^2 + x^2*y2^3")
        for text in ("y2^2 + x^2*y2^3 ", "y2^2 + x^2*y2^3\t", "y2^2 + x^2*y2^3 \n  "):
            assert parse_expr(text) == expected
        assert [t.kind for t in tokenize("y2 ")] == ["name", "end"]
        with pytest.raises(ExprParseError) as info:
            parse_expr("y2 $ ")
        assert info.value.position == 4
        print("  [PASS] Trailing whitespace")

    def test_parentheses_and_unary_minus(self):
        """Test nested parentheses and a leading minus."""
        assert parse_expr("-(y2 + x*y2)^2") == parse_expr("-y2^2 - 2*x*y2^2 - x^2*y2^2")
        print("  [PASS] Parentheses and unary minus")

    def test_param_poly(self):
        """Test parsing in the parameters a0..am."""
        p = parse_param_poly("-2*a0*a1", 2)
        assert dict(p.terms) == {(1, 1): -2}
        print("  [PASS] Param poly")


class TestParseErrors:
    """Tests for rejected input."""

    def test_implicit_multiplication(self):
        """Test that 'x y1' is rejected with a position."""
        with pytest.raises(ExprParseError) as info:
            parse_expr("x y1")
        assert info.value.position == 3
        assert "offset 3" in str(info.value)
        print("  [PASS] Implicit multiplication")

    def test_non_integer_exponent(self):
        """Test that y2^1/2 is rejected."""
        with pytest.raises(ExprParseError) as info:
            parse_expr("y2^1/2")
        assert "exponent must be an integer" in str(info.value)
        print("  [PASS] Non-integer exponent")

    def test_unknown_variable(self):
        """Test unknown names and the reserved chart variable w."""
        with pytest.raises(ExprParseError):
            parse_expr("z1 + y2^2")
        with pytest.raises(ExprParseError) as info:
            parse_expr("w*y2^2")
        assert "'w'" in str(info.value)
        print("  [PASS] Unknown variable")

    def test_negative_exponent_on_y(self):
        """Test that only x may carry negative exponents."""
        with pytest.raises(ExprParseError):
            parse_expr("y2^-1")
        with pytest.raises(ExprParseError):
            parse_param_poly("a0^-2", 2)
        print("  [PASS] Negative exponent on y")

    def test_malformed(self):
        """Test unbalanced parentheses, bad characters and empty input."""
        for source in ["(y2 + x", "y2 $ x", "", "y2 +", "1/0*y2^2"]:
            with pytest.raises(ExprParseError):
                parse_expr(source)
        print("  [PASS] Malformed")

    def test_exit_code(self):
        """Test that parse errors carry exit code 5."""
        with pytest.raises(ExprParseError) as info:
            parse_expr("y2 y2")
        assert info.value.exit_code == 5
        assert info.value.reason.startswith("parse: ")
        print("  [PASS] Exit code")

    def test_token_positions(self):
        """Test 1-based token offsets."""
        tokens = tokenize("x + y2")
        assert [(t.kind, t.position) for t in tokens] == [
            ("name", 1), ("op", 3), ("name", 5), ("end", 7)]
        print("  [PASS] Token positions")


class TestPrinter:
    """Tests for print_canonical."""

    def test_single_monomial(self):
        """Test y2^2."""
        assert print_canonical(GluingPoly({(0, 0, 2): 1})) == "y2^2"
        print("  [PASS] Single monomial")

    def test_equation_forms(self):
        """Test the canonical forms of the Example 1 equations and potential."""
        assert print_canonical(parse_param_poly("-2*a0*a1", 2)) == "-2*a0*a1"
        assert print_canonical(parse_param_poly("-a0^3 - a1^2", 2)) == "-1*a1^2 - 1*a0^3"
        W = parse_param_poly("-a0*a1^2 - 1/4*a0^4", 2)
        assert print_canonical(W) == "-1*a0*a1^2 - 1/4*a0^4"
        print("  [PASS] Equation forms")

    def test_zero_and_constants(self):
        """Test zero and constant polynomials."""
        assert print_canonical(GluingPoly.zero()) == "0"
        assert print_canonical(parse_param_poly("3/2", 2)) == "3/2"
        print("  [PASS] Zero and constants")

    def test_round_trip_gluing(self):
        """Test parse(print(p)) = p on random gluing polynomials."""
        rng = random.Random(3)
        for _ in range(200):
            p = random_gluing_poly(rng)
            assert parse_expr(print_canonical(p)) == p
        print("  [PASS] Round trip gluing")

    def test_round_trip_params(self):
        """Test parse(print(p)) = p on random parameter polynomials."""
        rng = random.Random(4)
        for _ in range(100):
            p = random_param_poly(rng, 3, max_degree=4)
            assert parse_param_poly(print_canonical(p), 3) == p
        print("  [PASS] Round trip params")
