import numpy as np
import pytest

from hessgeo.errors import DomainError, Overflow
from hessgeo.jets import Jet


def variables(point, real=True):
    n = len(point)
    return [Jet.variable(point[k], k, n, real=real) for k in range(n)]


def test_polynomial_oracle():
    # f = x1^2 * x2 at (1, 2), derivatives computed by hand
    x1, x2 = variables([1.0, 2.0])
    jet = (x1 * x1 * x2).as_jet3()
    assert jet.value == pytest.approx(2.0)
    assert jet.gradient == pytest.approx([4.0, 1.0])
    assert jet.hessian == pytest.approx(np.array([[4.0, 2.0], [2.0, 0.0]]))
    assert jet.third[0, 0, 1] == pytest.approx(2.0)
    assert jet.third[0, 0, 0] == pytest.approx(0.0)


def test_log_oracle():
    # f = -ln(x) at 2: value -ln 2, f' = -1/2, f'' = 1/4, f''' = -1/4
    (x,) = variables([2.0])
    jet = (-(x.ln())).as_jet3()
    assert jet.value == pytest.approx(-np.log(2.0))
    assert jet.gradient[0] == pytest.approx(-0.5)
    assert jet.hessian[0, 0] == pytest.approx(0.25)
    assert jet.third[0, 0, 0] == pytest.approx(-0.25)


def test_quotient_and_power():
    x1, x2 = variables([2.0, 3.0])
    jet = (x1 / x2).as_jet3()
    assert jet.value == pytest.approx(2.0 / 3.0)
    assert jet.gradient == pytest.approx([1.0 / 3.0, -2.0 / 9.0])
    jet = (x1 ** 3).as_jet3()
    assert jet.gradient[0] == pytest.approx(12.0)
    assert jet.hessian[0, 0] == pytest.approx(12.0)
    assert jet.third[0, 0, 0] == pytest.approx(6.0)


def test_fractional_power_and_sqrt():
    (x,) = variables([4.0])
    jet = (x ** 0.5).as_jet3()
    other = x.sqrt().as_jet3()
    assert jet.value == pytest.approx(2.0)
    assert jet.gradient[0] == pytest.approx(other.gradient[0])
    assert jet.third[0, 0, 0] == pytest.approx(3.0 / 8.0 * 4.0 ** -2.5)


def test_exp_chain():
    (x,) = variables([0.3])
    jet = (x * x).exp().as_jet3()
    e = np.exp(0.09)
    assert jet.gradient[0] == pytest.approx(0.6 * e)
    assert jet.hessian[0, 0] == pytest.approx((2.0 + 0.36) * e)


def test_complex_holomorphic():
    # F = z^3 / 6 at z = i: F'' = z = i
    (z,) = variables([1j], real=False)
    jet = (z * z * z / 6.0).as_jet3()
    assert jet.value == pytest.approx(-1j / 6.0)
    assert jet.hessian[0, 0] == pytest.approx(1j)
    assert jet.third[0, 0, 0] == pytest.approx(1.0)


def test_domain_guards():
    (x,) = variables([-1.0])
    with pytest.raises(DomainError):
        x.ln()
    with pytest.raises(DomainError):
        x.sqrt()
    with pytest.raises(DomainError):
        x ** 0.5


def test_division_by_zero_is_domain_error():
    (x,) = variables([0.0])
    with pytest.raises(DomainError):
        Jet.constant(1.0, 1) / x


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_overflow_guard():
    (x,) = variables([800.0])
    with pytest.raises(Overflow):
        x.exp().exp().as_jet3()
