"""Exact polynomial calculus for the generator of the limit process.

Two forms of the generator are kept side by side:

    h-transform  G f = V^{-1} D(V f) + K f
    drift form   G f = D f + 2 sum_i x_i (1 - x_i) sum_{j != i} (x_i - x_j)^{-1} d_i f

with D = sum_i x_i (1 - x_i) d_i^2 + (w' + 1 - (w' + z' - p + 2) x_i) d_i.
Coefficients are sympy Rationals, so identities hold with zero error.
"""

from fractions import Fraction
import itertools
from typing import Iterator, Sequence

from absl import logging
import sympy

from gt_flow import arithmetic
from gt_flow.config import ModelParams
from gt_flow.errors import DomainError
from gt_flow.limitproc.schedule import Partition, c_tilde, eigen_K, total_K
from gt_flow.types import CoefficientMap, Scalar


def variables(p: int) -> tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"x1:{p + 1}", real=True)


rational = arithmetic.to_rational


def to_scalar(value: sympy.Expr, exact: bool) -> Scalar:
    value = sympy.Rational(value)
    if exact:
        return Fraction(int(value.p), int(value.q))
    return float(value)


def _alpha_beta(params: ModelParams) -> tuple[sympy.Rational, sympy.Rational]:
    return rational(params.z_prime) - params.p, rational(params.w_prime)


def vandermonde_poly(xs: Sequence[sympy.Symbol]) -> sympy.Expr:
    """prod_{i<j} (x_j - x_i)."""
    return sympy.Mul(*[xs[j] - xs[i] for i, j in itertools.combinations(range(len(xs)), 2)])


def poly_from_coefficients(coefficients: CoefficientMap, xs: Sequence[sympy.Symbol]) -> sympy.Expr:
    """sum of c * prod x_i^{e_i} over {(e_1, ..., e_p): c}."""
    terms = []
    for exponents, coefficient in coefficients.items():
        if len(exponents) != len(xs):
            raise DomainError(f"Exponent {exponents} does not match {len(xs)} variables")
        terms.append(rational(coefficient) * sympy.prod([x**e for x, e in zip(xs, exponents)]))
    return sympy.Add(*terms)


def operator_D(params: ModelParams, f: sympy.Expr, xs: Sequence[sympy.Symbol]) -> sympy.Expr:
    alpha, beta = _alpha_beta(params)
    return sympy.Add(
        *[
            x * (1 - x) * sympy.diff(f, x, 2)
            + (beta + 1 - (alpha + beta + 2) * x) * sympy.diff(f, x)
            for x in xs
        ]
    )


def generator_h_transform(
    params: ModelParams, f: sympy.Expr, xs: Sequence[sympy.Symbol]
) -> sympy.Expr:
    V = vandermonde_poly(xs)
    K = rational(total_K(params))
    return sympy.cancel(operator_D(params, V * f, xs) / V + K * f)


def generator_drift(params: ModelParams, f: sympy.Expr, xs: Sequence[sympy.Symbol]) -> sympy.Expr:
    drift = sympy.Add(
        *[
            2
            * x
            * (1 - x)
            * sympy.Add(*[1 / (x - y) for y in xs if y != x])
            * sympy.diff(f, x)
            for x in xs
        ]
    )
    return sympy.cancel(operator_D(params, f, xs) + drift)


def generator_forms(
    params: ModelParams, f: CoefficientMap | sympy.Expr
) -> tuple[sympy.Expr, sympy.Expr]:
    """Returns (h-transform form, drift form) of G f as cancelled rational functions."""
    xs = variables(params.p)
    if isinstance(f, dict):
        f = poly_from_coefficients(f, xs)
    return generator_h_transform(params, f, xs), generator_drift(params, f, xs)


def monomials(p: int, max_degree: int) -> Iterator[CoefficientMap]:
    for degree in range(max_degree + 1):
        for exponents in itertools.product(range(degree + 1), repeat=p):
            if sum(exponents) == degree:
                yield {exponents: 1}


def generator_forms_agree(params: ModelParams, max_degree: int = 4) -> list[tuple[int, ...]]:
    """Exponents of the monomials on which the two forms differ."""
    failures = []
    for monomial in monomials(params.p, max_degree):
        h_form, drift_form = generator_forms(params, monomial)
        if sympy.cancel(h_form - drift_form) != 0:
            (exponents,) = monomial
            failures.append(exponents)
    return failures


def _substitute(expr: sympy.Expr, xs, X) -> sympy.Expr:
    return sympy.Rational(expr.subs({x: rational(v) for x, v in zip(xs, X)}))


def generator_apply(params: ModelParams, f: CoefficientMap | sympy.Expr, X: Sequence) -> Scalar:
    """(G f)(X).

    At coincident coordinates only the cancelled drift form is evaluated.

    Raises:
        DomainError: If the point count differs from p, or if the cancelled
            drift form is still singular at X.
        ArithmeticError: If the two forms disagree at X.
    """
    p = params.p
    if len(X) != p:
        raise DomainError(f"Expected {p} coordinates, got {len(X)}")
    xs = variables(p)
    h_form, drift_form = generator_forms(params, f)

    if len(set(arithmetic.to_fraction(v) for v in X)) < p:
        logging.warning(f"Coincident coordinates {tuple(X)}; evaluating the drift form only")
        _, denominator = sympy.fraction(drift_form)
        if _substitute(denominator, xs, X) == 0:
            raise DomainError(f"Generator is singular at {tuple(X)}")
        return to_scalar(_substitute(drift_form, xs, X), params.exact)

    value = _substitute(h_form, xs, X)
    check = _substitute(drift_form, xs, X)
    if value != check:
        raise ArithmeticError(f"Generator forms disagree at {tuple(X)}: {value} != {check}")
    return to_scalar(value, params.exact)


def max_abs_coefficient(expr: sympy.Expr, xs: Sequence[sympy.Symbol]) -> Fraction:
    """Largest |coefficient| of the numerator of expr; zero iff expr == 0."""
    numerator, _ = sympy.fraction(sympy.cancel(expr))
    coefficients = sympy.Poly(numerator, *xs).coeffs()
    return max((abs(to_scalar(c, True)) for c in coefficients), default=Fraction(0))


def jacobi_poly(params: ModelParams, n: int, x: sympy.Symbol) -> sympy.Expr:
    """Jac^n_{z'-p, w'}(x) on (0, 1)."""
    alpha, beta = _alpha_beta(params)
    return sympy.expand(sympy.jacobi(n, alpha, beta, 2 * x - 1))


def jacobi_operator_residual(params: ModelParams, i: int) -> Fraction:
    """D^Jac Jac^i + K(i) Jac^i in one variable."""
    (x,) = variables(1)
    jac = jacobi_poly(params, i, x)
    applied = operator_D(params, jac, [x])
    return max_abs_coefficient(applied + rational(eigen_K(params, i)) * jac, [x])


def multidim_jacobi_poly(params: ModelParams, partition: Partition) -> sympy.Expr:
    """det[Jac^{lambda_i + p - i}(x_j)] / V(X) as a polynomial."""
    p = params.p
    if partition.p != p:
        raise DomainError(f"Partition {partition.parts} does not have length {p}")
    xs = variables(p)
    rows = [
        [jacobi_poly(params, part + p - 1 - i, x) for x in xs]
        for i, part in enumerate(partition.parts)
    ]
    return sympy.cancel(sympy.Matrix(rows).det() / vandermonde_poly(xs))


def generator_eigen_residual(params: ModelParams, partition: Partition) -> Fraction:
    """G Jac^lambda - c_tilde(lambda) Jac^lambda."""
    xs = variables(params.p)
    jac = multidim_jacobi_poly(params, partition)
    applied = generator_h_transform(params, jac, xs)
    return max_abs_coefficient(applied - rational(c_tilde(params, partition)) * jac, xs)


def lemma_operator(
    p: int, abc: Sequence, f: sympy.Expr, xs: Sequence[sympy.Symbol]
) -> sympy.Expr:
    """sum_i (x_i^2 + a x_i + b) d_i^2 + (c - 2 (p - 2) x_i / 3) d_i."""
    a, b, c = (rational(v) for v in abc)
    return sympy.Add(
        *[
            (x**2 + a * x + b) * sympy.diff(f, x, 2)
            + (c - sympy.Rational(2 * (p - 2), 3) * x) * sympy.diff(f, x)
            for x in xs
        ]
    )


def doob_identities_check(
    params: ModelParams, X: Sequence, triples: Sequence[Sequence] = ((0, 0, 0),)
) -> tuple[Scalar, Scalar]:
    """Relative residuals of D V = -K V and G_abc V = 0 at the point X.

    Returns (|D V(X) + K V(X)| / max(1, |K V(X)|), max over (a, b, c) of
    |G_abc V(X)| / max(1, |V(X)|)).
    """
    p = params.p
    if len(X) != p:
        raise DomainError(f"Expected {p} coordinates, got {len(X)}")
    xs = variables(p)
    V = vandermonde_poly(xs)
    K = rational(total_K(params))
    V_at = _substitute(V, xs, X)
    eigen = relative_residual(
        _substitute(sympy.expand(operator_D(params, V, xs) + K * V), xs, X), K * V_at
    )
    lemma = max(
        relative_residual(_substitute(sympy.expand(lemma_operator(p, abc, V, xs)), xs, X), V_at)
        for abc in triples
    )
    return to_scalar(eigen, params.exact), to_scalar(lemma, params.exact)


def relative_residual(residual: sympy.Rational, reference: sympy.Rational) -> sympy.Rational:
    """|residual| / max(1, |reference|)."""
    return abs(residual) / max(sympy.Integer(1), abs(reference))


def doob_residual_polynomials(
    params: ModelParams, triples: Sequence[Sequence] = ((0, 0, 0),)
) -> tuple[Fraction, Fraction]:
    """Max |coefficient| of D V + K V and of G_abc V; both vanish identically."""
    p = params.p
    xs = variables(p)
    V = vandermonde_poly(xs)
    K = rational(total_K(params))
    eigen = max_abs_coefficient(operator_D(params, V, xs) + K * V, xs)
    lemma = max(max_abs_coefficient(lemma_operator(p, abc, V, xs), xs) for abc in triples)
    return eigen, lemma
