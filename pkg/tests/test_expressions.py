import numpy as np
import pytest

from hessgeo.errors import (
    ArityError,
    DomainError,
    ExprSyntaxError,
    UnknownIdentifier,
)
from hessgeo.expressions import eval_complex, parse_expression
from hessgeo.tensors import fd_gradient, fd_tensor_derivative


def test_arithmetic_values():
    e = parse_expression("2*x1+x2/4-1", ["x1", "x2"])
    assert e([3.0, 8.0]) == pytest.approx(7.0)


def test_power_right_associative():
    e = parse_expression("2^3^2", [])
    assert e([]) == pytest.approx(512.0)


def test_precedence_and_parentheses():
    e = parse_expression("1+2*3^2", [])
    assert e([]) == pytest.approx(19.0)
    e = parse_expression("(1+2)*3", [])
    assert e([]) == pytest.approx(9.0)


def test_functions():
    e = parse_expression("ln(exp(x1))+sqrt(x1^2)", ["x1"])
    assert e([2.5]) == pytest.approx(5.0)
    e = parse_expression("pow(x1, 3)", ["x1"])
    assert e([2.0]) == pytest.approx(8.0)


def test_no_implicit_multiplication():
    with pytest.raises(ExprSyntaxError):
        parse_expression("2 x1", ["x1"])


def test_unknown_identifier_offset():
    with pytest.raises(UnknownIdentifier) as err:
        parse_expression("x1+zz", ["x1"])
    assert err.value.offset == 3


def test_arity_error():
    with pytest.raises(ArityError):
        parse_expression("ln(x1, x1)", ["x1"])
    with pytest.raises(ArityError):
        parse_expression("pow(x1)", ["x1"])


def test_syntax_errors():
    for bad in ("", "1+", "(1", "1)", "x1 +* 2", "ln()"):
        with pytest.raises(ExprSyntaxError):
            parse_expression(bad, ["x1"])


def test_domain_errors():
    e = parse_expression("ln(x1)", ["x1"])
    with pytest.raises(DomainError):
        e([-1.0])
    e = parse_expression("1/x1", ["x1"])
    with pytest.raises(DomainError):
        e([0.0])
    e = parse_expression("x1^0.5", ["x1"])
    with pytest.raises(DomainError):
        e([-4.0])


def test_complex_mode_imaginary_unit():
    e = parse_expression("i*z1^2/2", ["z1"], mode="complex")
    jet = eval_complex(e, np.array([2.0 + 0.0j]))
    assert jet.value == pytest.approx(2j)
    assert jet.hessian[0, 0] == pytest.approx(1j)


def test_i_not_available_in_real_mode():
    with pytest.raises(UnknownIdentifier):
        parse_expression("i*x1", ["x1"])


def test_i_reserved_as_variable_name():
    with pytest.raises(ValueError):
        parse_expression("i", ["i"], mode="complex")


def test_serialize_round_trip():
    texts = [
        "1/(x1*x2)",
        "(x1^2+x2^2)^(-1.5)",
        "ln(x1)+exp(-(x2))",
        "pow(x1, 2.5)-sqrt(x2)",
    ]
    rng = np.random.default_rng([7, 1])
    for text in texts:
        e = parse_expression(text, ["x1", "x2"])
        again = parse_expression(e.serialize(), ["x1", "x2"])
        assert again.serialize() == parse_expression(again.serialize(), ["x1", "x2"]).serialize()
        for _ in range(5):
            p = rng.uniform(0.5, 2.0, 2)
            assert again(p) == pytest.approx(e(p), rel=1e-14)


def test_random_polynomials_against_fd():
    # degree <= 4 polynomials in 3 variables: jets must agree with central
    # finite differences of the plain evaluator
    rng = np.random.default_rng([7, 2])
    variables = ["x1", "x2", "x3"]
    for _ in range(50):
        terms = []
        for _ in range(rng.integers(1, 5)):
            coeff = rng.uniform(-2.0, 2.0)
            powers = rng.integers(0, 3, size=3)
            while powers.sum() > 4:
                powers = rng.integers(0, 3, size=3)
            monomial = "*".join(
                [f"{coeff:.6f}"] + [f"{v}^{k}" for v, k in zip(variables, powers) if k]
            )
            terms.append(f"({monomial})")
        e = parse_expression("+".join(terms), variables)
        p = rng.uniform(0.5, 1.5, 3)
        jet = e.jet3(p)
        assert jet.value == pytest.approx(e(p), rel=1e-12, abs=1e-12)
        assert jet.gradient == pytest.approx(fd_gradient(e, p), abs=1e-4)
        fd_hess = fd_tensor_derivative(lambda q: fd_gradient(e, q), p)
        assert jet.hessian == pytest.approx(fd_hess, abs=1e-4)


def test_jet_matches_fd_for_transcendental():
    e = parse_expression("exp(x1*x2)/sqrt(x2)+ln(x1+x2)", ["x1", "x2"])
    p = np.array([0.8, 1.3])
    jet = e.jet3(p)
    assert jet.gradient == pytest.approx(fd_gradient(e, p), abs=1e-6)
