"""Unit tests for the CY check, integrability and the superpotential."""

import random
import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.algebra import ParamPoly
from src.errors import IntegrabilityError, NotCalabiYauError, StructuralError
from src.exprparse import parse_expr, parse_param_poly
from src.gluing import validate
from src.laufer import deformation_equations_laufer
from src.models.gluing_data import GluingData
from src.models.results import DeformationResult
from src.superpotential import (
    check_integrability,
    coeff_symmetry_lemma_check,
    cy_check,
    gradient_field,
    integrate_potential,
    lemma_triples,
)
from tests.corpus import random_laufer, random_y2_poly


def P(text, arity=2):
    return parse_param_poly(text, arity)


def laufer(m, n, f) -> GluingData:
    return validate(GluingData(m=m, n=n, f=parse_expr(f)))


def laufer_random(rng: random.Random, m: int) -> GluingData:
    return validate(GluingData(m=m, n=m + 2, f=random_y2_poly(rng)))


def system(*equations, m=1) -> DeformationResult:
    polys = tuple(P(e, m + 1) for e in equations)
    return DeformationResult(m=m, n=len(polys) + 1, equations=polys, k0=ParamPoly.zero(m + 1))


class TestCalabiYau:
    """Tests for cy_check and the gradient field."""

    def test_cy_check(self):
        """Test m - n = -2."""
        assert cy_check(laufer(1, 3, "y2^2"))
        assert not cy_check(laufer(1, 4, "y2^2"))
        assert cy_check(laufer(0, 2, "0"))
        print("  [PASS] CY check")

    def test_field_order(self):
        """Test v_i = k_{n-1-i}."""
        eqs = system("-2*a0*a1", "-a1^2 - a0^3")
        assert gradient_field(eqs) == [P("-a1^2 - a0^3"), P("-2*a0*a1")]
        print("  [PASS] Field order")

    def test_non_square(self):
        """Test that non-CY systems have no gradient field."""
        eqs = deformation_equations_laufer(laufer(1, 4, "y2^2"))
        with pytest.raises(NotCalabiYauError) as info:
            integrate_potential(eqs)
        assert info.value.exit_code == 4
        print("  [PASS] Non-square")


class TestIntegrability:
    """Tests for check_integrability."""

    def test_example_one(self):
        """Test that Example 1 is integrable."""
        assert check_integrability(system("-2*a0*a1", "-a1^2 - a0^3"))
        print("  [PASS] Example 1")

    def test_witness(self):
        """Test the failing pair and the difference for k = (a0 a1, a1^2)."""
        report = check_integrability(system("a0*a1", "a1^2"))
        assert not report
        assert report.pair == (0, 1)
        # v0 = a1^2, v1 = a0*a1: dv1/da0 - dv0/da1 = a1 - 2*a1
        assert report.difference == P("-a1")
        print("  [PASS] Witness")

    def test_integrate_rejects(self):
        """Test that a non-gradient field raises with exit code 3."""
        with pytest.raises(IntegrabilityError) as info:
            integrate_potential(system("a0*a1", "a1^2"))
        assert info.value.exit_code == 3
        assert (info.value.i, info.value.j) == (0, 1)
        print("  [PASS] Integrate rejects")

    def test_random_laufer_cy(self):
        """Test integrability on random Laufer CY inputs."""
        rng = random.Random(71)
        for _ in range(100):
            d = random_laufer(rng, max_m=4, calabi_yau=True)
            assert check_integrability(deformation_equations_laufer(d))
        print("  [PASS] Random Laufer CY")


class TestPotential:
    """Tests for integrate_potential."""

    def test_example_one_family(self):
        """Test W = -(a0 a1^2 + a0^(2p+2)/(2p+2)) for p = 1, 2, 3."""
        for p in (1, 2, 3):
            d = laufer(1, 3, f"y2^2 + x^2*y2^{2 * p + 1}")
            W = integrate_potential(deformation_equations_laufer(d))
            assert W.W == P(f"-a0*a1^2 - 1/{2 * p + 2}*a0^{2 * p + 2}")
        print("  [PASS] Example 1 family")

    def test_example_one_text(self):
        """Test the canonical form of W at p = 1."""
        W = integrate_potential(deformation_equations_laufer(laufer(1, 3, "y2^2 + x^2*y2^3")))
        assert str(W.W) == "-1*a0*a1^2 - 1/4*a0^4"
        assert W.to_dict() == {"W": "-1*a0*a1^2 - 1/4*a0^4"}
        print("  [PASS] Example 1 text")

    def test_zero_field(self):
        """Test that the zero field integrates to W = 0."""
        W = integrate_potential(system("0", "0"))
        assert W.W.is_zero()
        print("  [PASS] Zero field")

    def test_m0(self):
        """Test m = 0, n = 2 with f = y2^3."""
        W = integrate_potential(deformation_equations_laufer(laufer(0, 2, "x*y2^3")))
        assert W.W == P("-1/4*a0^4", 1)
        print("  [PASS] m = 0")

    def test_gradient_identity_random(self):
        """Test dW/da_i = k_{n-1-i} exactly on random Laufer CY inputs."""
        rng = random.Random(72)
        for _ in range(100):
            d = random_laufer(rng, max_m=4, calabi_yau=True)
            eqs = deformation_equations_laufer(d)
            W = integrate_potential(eqs)
            assert W.W.constant_term() == 0
            for i in range(d.arity):
                assert W.W.diff(i) == eqs.k(d.n - 1 - i)
            assert W.gradient() == tuple(gradient_field(eqs))
        print("  [PASS] Gradient identity random")

    def test_linear_in_field(self):
        """Test W(k + k') = W(k) + W(k') for fields of the same m."""
        rng = random.Random(73)
        for _ in range(40):
            m = rng.randint(0, 3)
            first = deformation_equations_laufer(laufer_random(rng, m))
            second = deformation_equations_laufer(laufer_random(rng, m))
            total = DeformationResult(
                m=m, n=m + 2,
                equations=tuple(k + l for k, l in zip(first.equations, second.equations)),
                k0=first.k0 + second.k0,
            )
            expected = integrate_potential(first).W + integrate_potential(second).W
            assert integrate_potential(total).W == expected
        print("  [PASS] Linear in field")

    def test_no_low_degree_terms(self):
        """Test that W starts in degree 3 when f has y-degree >= 2."""
        rng = random.Random(74)
        for _ in range(100):
            W = integrate_potential(deformation_equations_laufer(random_laufer(rng, calabi_yau=True))).W
            assert W.is_zero() or W.min_degree() >= 3
        print("  [PASS] No low-degree terms")


class TestLemma:
    """Tests for the coefficient symmetry identities."""

    def test_square(self):
        """Test r = y2^2 with m = 1."""
        r = parse_expr("y2^2")
        assert coeff_symmetry_lemma_check(r, 1)
        assert (1, 0, 1) in lemma_triples(r, 1)
        print("  [PASS] Square")

    def test_random(self):
        """Test random r with y-degree <= 4 and m <= 3 over all triples."""
        rng = random.Random(81)
        for _ in range(100):
            r = random_y2_poly(rng, max_y=4, min_y=0)
            m = rng.randint(0, 3)
            assert coeff_symmetry_lemma_check(r, m)
        print("  [PASS] Random")

    def test_rejects_y1(self):
        """Test that r must not depend on y1."""
        with pytest.raises(StructuralError):
            coeff_symmetry_lemma_check(parse_expr("y1*y2"), 1)
        print("  [PASS] Rejects y1")

    def test_rejects_bad_triple(self):
        """Test that out-of-range triples are reported."""
        with pytest.raises(StructuralError):
            coeff_symmetry_lemma_check(parse_expr("y2^2"), 1, [(0, 2, 0)])
        print("  [PASS] Rejects bad triple")
