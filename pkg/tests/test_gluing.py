"""Unit tests for gluing data, the transition matrix and the H^0 section."""

import json
import shutil
import sys
import tempfile
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.algebra import ChartSeries, ParamPoly
from src.cech import coboundary
from src.errors import ExprParseError, ValidationError
from src.exprparse import parse_expr
from src.gluing import apply_transition, load_gluing_file, section_of_H0, transition_matrix, validate
from src.models.gluing_data import GluingData, TransitionMatrix


def example_one(p: int = 1) -> GluingData:
    return GluingData(m=1, n=3, f=parse_expr(f"y2^2 + x^2*y2^{2 * p + 1}"))


class TestGluingData:
    """Tests for the GluingData model."""

    def test_dimensions(self):
        """Test the cohomology dimensions and the CY flag."""
        d = example_one()
        assert d.arity == 2
        assert d.h0_dimension == 2
        assert d.h1_dimension == 2
        assert d.is_calabi_yau
        assert GluingData(m=1, n=4).is_calabi_yau is False
        assert GluingData(m=0, n=2).is_calabi_yau
        print("  [PASS] Dimensions")

    def test_dict_round_trip(self):
        """Test to_dict/from_dict."""
        d = GluingData(m=2, n=4, f=parse_expr("x*y2^2 - 1/3*y1*y2"), h=parse_expr("x^-1*y2^2"))
        assert GluingData.from_dict(d.to_dict()) == d
        assert GluingData.from_dict({"m": 1, "n": 3, "f": "y2^2"}).g.is_zero()
        print("  [PASS] Dict round trip")

    def test_transition_matrix(self):
        """Test the exponents of diag(x^n, x^-m)."""
        F = TransitionMatrix(m=1, n=3)
        assert F.exponents == (3, -1)
        assert F.determinant_exponent == 2
        assert F.inverse().exponents == (-3, 1)
        print("  [PASS] Transition matrix")


class TestValidate:
    """Tests for validate."""

    def test_example_one_is_laufer(self):
        """Test that Example 1 is valid and Laufer."""
        d = validate(example_one())
        assert d.laufer
        print("  [PASS] Example 1 is Laufer")

    def test_linear_term_rejected(self):
        """Test that f = y2 violates the I^2 condition."""
        with pytest.raises(ValidationError) as info:
            validate(GluingData(m=1, n=3, f=parse_expr("y2")))
        assert "y2" in str(info.value)
        assert info.value.exit_code == 2
        print("  [PASS] Linear term rejected")

    def test_constant_in_h_rejected(self):
        """Test that constants in h are rejected."""
        with pytest.raises(ValidationError):
            validate(GluingData(m=1, n=3, h=parse_expr("x")))
        print("  [PASS] Constant in h rejected")

    def test_y1_dependence_not_laufer(self):
        """Test that f = y1*y2 is valid but not Laufer."""
        d = validate(GluingData(m=1, n=3, f=parse_expr("y1*y2")))
        assert not d.laufer
        print("  [PASS] y1 dependence not Laufer")

    def test_negative_x_power_not_laufer(self):
        """Test that f with x^-1 is valid but not Laufer."""
        assert not validate(GluingData(m=1, n=3, f=parse_expr("x^-1*y2^2"))).laufer
        assert not validate(GluingData(m=1, n=3, f=parse_expr("y2^2"), g=parse_expr("y2^2"))).laufer
        print("  [PASS] Negative x power not Laufer")

    def test_bundle_twists(self):
        """Test m >= 0 and n >= 2."""
        with pytest.raises(ValidationError):
            validate(GluingData(m=-1, n=3))
        with pytest.raises(ValidationError):
            validate(GluingData(m=0, n=1))
        print("  [PASS] Bundle twists")


class TestSection:
    """Tests for section_of_H0 and apply_transition."""

    def test_section_m1(self):
        """Test s(a) for m = 1."""
        a0, a1 = ParamPoly.generators(2)
        s = section_of_H0(validate(example_one()))
        assert s.phi0[0].is_zero() and s.phi1[0].is_zero()
        assert s.phi0[1] == ChartSeries("x", 2, {0: a0, 1: a1})
        assert s.phi1[1] == ChartSeries("w", 2, {1: a0, 0: a1})
        print("  [PASS] Section m=1")

    def test_section_m0(self):
        """Test s(a) for m = 0."""
        s = section_of_H0(validate(GluingData(m=0, n=2)))
        a0 = ParamPoly.generator(1, 0)
        assert s.phi0[1] == ChartSeries("x", 1, {0: a0})
        assert s.phi1[1] == ChartSeries("w", 1, {0: a0})
        print("  [PASS] Section m=0")

    def test_section_is_cocycle(self):
        """Test that the halves of s(a) agree on the overlap."""
        for m, n in [(0, 2), (1, 3), (3, 5), (2, 6)]:
            d = validate(GluingData(m=m, n=n))
            s = section_of_H0(d)
            assert apply_transition(s.phi0, transition_matrix(d)) == s.phi1
            assert coboundary(s, d).is_zero()
        print("  [PASS] Section is cocycle")

    def test_apply_transition_unit(self):
        """Test (1, 0) with n = 3 gives (w^-3, 0)."""
        one = ChartSeries("x", 1, {0: 1})
        zero = ChartSeries.zero("x", 1)
        result = apply_transition((one, zero), TransitionMatrix(m=1, n=3))
        assert result == (ChartSeries("w", 1, {-3: 1}), ChartSeries.zero("w", 1))
        print("  [PASS] Apply transition unit")

    def test_apply_inverse(self):
        """Test that applying F then F^-1 is the identity."""
        a0, a1 = ParamPoly.generators(2)
        pair = (ChartSeries("x", 2, {0: a0, 2: a1}), ChartSeries("x", 2, {1: a1}))
        F = TransitionMatrix(m=1, n=3)
        assert apply_transition(apply_transition(pair, F), F.inverse()) == pair
        print("  [PASS] Apply inverse")


class TestLoadGluingFile:
    """Tests for reading JSON input files."""

    def setup_method(self):
        """Create temp directory for input files."""
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """Clean up temp directory."""
        shutil.rmtree(self.temp_dir)

    def write(self, content) -> Path:
        path = Path(self.temp_dir) / "input.json"
        path.write_text(content if isinstance(content, str) else json.dumps(content))
        return path

    def test_load_example(self):
        """Test loading Example 1."""
        d = load_gluing_file(self.write({"m": 1, "n": 3, "f": "y2^2 + x^2*y2^3"}))
        assert d.laufer
        assert d.f == parse_expr("y2^2 + x^2*y2^3")
        print("  [PASS] Load example")

    def test_missing_file(self):
        """Test that a missing file is a validation error."""
        with pytest.raises(ValidationError):
            load_gluing_file(Path(self.temp_dir) / "absent.json")
        print("  [PASS] Missing file")

    def test_malformed_json(self):
        """Test malformed JSON and missing keys."""
        with pytest.raises(ValidationError):
            load_gluing_file(self.write("{not json"))
        with pytest.raises(ValidationError):
            load_gluing_file(self.write({"m": 1, "f": "y2^2"}))
        with pytest.raises(ValidationError):
            load_gluing_file(self.write({"m": "1", "n": 3, "f": "y2^2"}))
        with pytest.raises(ValidationError):
            load_gluing_file(self.write([1, 3]))
        print("  [PASS] Malformed JSON")

    def test_bad_expression(self):
        """Test that expression errors surface as parse errors."""
        with pytest.raises(ExprParseError):
            load_gluing_file(self.write({"m": 1, "n": 3, "f": "y2 y2"}))
        print("  [PASS] Bad expression")
