"""Catalog of smooth scalar functions and the cylinder-function algebra.

A cylinder function depends on a measure only through finitely many moments:
F(m) = g(<f1, m>, ..., <fk, m>). For such functions the first and second
functional derivatives have closed forms (chain rule through the moment
vector), which makes them the exact oracle for every finite-difference
estimator in this package. Gradients and Hessians of the outer maps are
hand-coded so the oracle does not depend on any differentiation machinery
under test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import DiscreteMeasure, integrate

__all__ = [
    "ScalarFunction",
    "sin_fn",
    "cos_fn",
    "tanh_fn",
    "polynomial",
    "gaussian",
    "affine",
    "smooth_abs",
    "identity_fn",
    "scalar_from_dict",
    "scalar_to_dict",
    "OuterMap",
    "outer_linear",
    "outer_product",
    "outer_polynomial",
    "outer_sin",
    "outer_exp",
    "CylinderFunction",
    "cylinder_from_dict",
    "cylinder_to_dict",
    "lift_to_field",
    "standard_battery",
    "lipschitz_probes",
]

_SCALAR_KINDS = ("sin", "cos", "tanh", "polynomial", "gaussian", "affine", "smooth_abs")


@dataclass(frozen=True)
class ScalarFunction:
    """A catalog function R -> R with exact derivative and Lipschitz bound.

    ``kind`` selects the formula, ``params`` its parameters. Values and
    derivatives are defined on all of R and accept scalars or arrays.
    """

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in _SCALAR_KINDS:
            raise ValueError(f"unknown scalar function kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if not all(math.isfinite(p) for p in self.params):
            raise ValueError("function parameters must be finite")
        if self.kind == "polynomial" and len(self.params) == 0:
            raise ValueError("polynomial needs at least one coefficient")
        if self.kind == "gaussian":
            if len(self.params) != 2 or self.params[1] <= 0.0:
                raise ValueError("gaussian needs (center, width) with width > 0")
        if self.kind == "affine" and len(self.params) != 2:
            raise ValueError("affine needs (slope, intercept)")
        if self.kind == "smooth_abs":
            if len(self.params) != 1 or self.params[0] <= 0.0:
                raise ValueError("smooth_abs needs a positive smoothing width")

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        out = self._value(xs)
        return float(out) if np.ndim(x) == 0 else out

    def derivative(self, x):
        xs = np.asarray(x, dtype=float)
        out = self._derivative(xs)
        return float(out) if np.ndim(x) == 0 else out

    def _value(self, xs):
        kind = self.kind
        if kind == "sin":
            return np.sin(xs)
        if kind == "cos":
            return np.cos(xs)
        if kind == "tanh":
            return np.tanh(xs)
        if kind == "polynomial":
            return np.polynomial.polynomial.polyval(xs, np.asarray(self.params))
        if kind == "gaussian":
            center, width = self.params
            z = (xs - center) / width
            return np.exp(-0.5 * z * z)
        if kind == "affine":
            a, b = self.params
            return a * xs + b
        eps = self.params[0]  # smooth_abs
        return np.hypot(xs, eps) - eps

    def _derivative(self, xs):
        kind = self.kind
        if kind == "sin":
            return np.cos(xs)
        if kind == "cos":
            return -np.sin(xs)
        if kind == "tanh":
            t = np.tanh(xs)
            return 1.0 - t * t
        if kind == "polynomial":
            coeffs = np.asarray(self.params)
            dcoeffs = coeffs[1:] * np.arange(1, coeffs.size)
            if dcoeffs.size == 0:
                return np.zeros_like(xs)
            return np.polynomial.polynomial.polyval(xs, dcoeffs)
        if kind == "gaussian":
            center, width = self.params
            z = (xs - center) / width
            return -(z / width) * np.exp(-0.5 * z * z)
        if kind == "affine":
            return np.full_like(xs, self.params[0])
        eps = self.params[0]
        return xs / np.hypot(xs, eps)

    @property
    def lipschitz_bound(self) -> float:
        """Upper bound of |f'| on [-10, 10] (global where the sup is global)."""
        kind = self.kind
        if kind in ("sin", "cos", "tanh", "smooth_abs"):
            return 1.0
        if kind == "affine":
            return abs(self.params[0])
        if kind == "gaussian":
            return math.exp(-0.5) / self.params[1]
        # polynomial: coefficient bound of the derivative on [-10, 10]
        return math.fsum(
            i * abs(c) * 10.0 ** (i - 1) for i, c in enumerate(self.params) if i >= 1
        )

    @property
    def name(self) -> str:
        if self.params:
            inner = ",".join(f"{p:g}" for p in self.params)
            return f"{self.kind}({inner})"
        return self.kind


def sin_fn() -> ScalarFunction:
    return ScalarFunction("sin")


def cos_fn() -> ScalarFunction:
    return ScalarFunction("cos")


def tanh_fn() -> ScalarFunction:
    return ScalarFunction("tanh")


def polynomial(coeffs) -> ScalarFunction:
    """Polynomial with ascending coefficients: c0 + c1*x + c2*x^2 + ..."""
    return ScalarFunction("polynomial", tuple(coeffs))


def gaussian(center: float, width: float) -> ScalarFunction:
    return ScalarFunction("gaussian", (center, width))


def affine(a: float, b: float) -> ScalarFunction:
    return ScalarFunction("affine", (a, b))


def smooth_abs(eps: float) -> ScalarFunction:
    """sqrt(x^2 + eps^2) - eps: a 1-Lipschitz smooth stand-in for |x|."""
    return ScalarFunction("smooth_abs", (eps,))


def identity_fn() -> ScalarFunction:
    return affine(1.0, 0.0)


def scalar_to_dict(f: ScalarFunction) -> dict:
    out = {"kind": f.kind}
    if f.kind == "polynomial":
        out["coeffs"] = list(f.params)
    elif f.kind == "gaussian":
        out["center"], out["width"] = f.params
    elif f.kind == "affine":
        out["a"], out["b"] = f.params
    elif f.kind == "smooth_abs":
        out["eps"] = f.params[0]
    return out


def scalar_from_dict(data: dict) -> ScalarFunction:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError('scalar function JSON must be an object with a "kind"')
    kind = data["kind"]
    if kind in ("sin", "cos", "tanh"):
        return ScalarFunction(kind)
    if kind == "polynomial":
        return polynomial(data.get("coeffs", ()))
    if kind == "gaussian":
        return gaussian(data.get("center", 0.0), data.get("width", 1.0))
    if kind == "affine":
        return affine(data.get("a", 1.0), data.get("b", 0.0))
    if kind == "smooth_abs":
        return smooth_abs(data.get("eps", 0.1))
    raise ValueError(f"unknown scalar function kind {kind!r}")


_OUTER_KINDS = ("linear", "product", "polynomial", "sin_of_sum", "exp_of_sum")


@dataclass(frozen=True)
class OuterMap:
    """Smooth map R^k -> R with hand-coded gradient and Hessian."""

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in _OUTER_KINDS:
            raise ValueError(f"unknown outer map kind {self.kind!r}")

    @property
    def arity(self) -> int:
        if self.kind == "linear":
            return len(self.params[0])
        if self.kind == "product":
            return int(self.params[0])
        if self.kind == "polynomial":
            return len(self.params[0][0][1])
        return len(self.params[0])  # sin_of_sum / exp_of_sum

    def value(self, v) -> float:
        v = np.asarray(v, dtype=float)
        kind = self.kind
        if kind == "linear":
            weights, offset = self.params
            return float(offset + np.dot(weights, v))
        if kind == "product":
            return float(np.prod(v))
        if kind == "polynomial":
            (terms,) = self.params
            return math.fsum(
                c * math.prod(v[i] ** e for i, e in enumerate(exps)) for c, exps in terms
            )
        (weights,) = self.params
        s = float(np.dot(weights, v))
        return math.sin(s) if kind == "sin_of_sum" else math.exp(s)

    def gradient(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        kind = self.kind
        k = self.arity
        if kind == "linear":
            return np.asarray(self.params[0], dtype=float).copy()
        if kind == "product":
            return np.array([_product_skipping(v, (i,)) for i in range(k)])
        if kind == "polynomial":
            (terms,) = self.params
            grad = np.zeros(k)
            for c, exps in terms:
                for i, e in enumerate(exps):
                    if e >= 1:
                        grad[i] += (
                            c * e * v[i] ** (e - 1)
                            * math.prod(v[j] ** ej for j, ej in enumerate(exps) if j != i)
                        )
            return grad
        weights = np.asarray(self.params[0], dtype=float)
        s = float(np.dot(weights, v))
        scale = math.cos(s) if kind == "sin_of_sum" else math.exp(s)
        return scale * weights

    def hessian(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        kind = self.kind
        k = self.arity
        if kind == "linear":
            return np.zeros((k, k))
        if kind == "product":
            hess = np.zeros((k, k))
            for i in range(k):
                for j in range(i + 1, k):
                    hess[i, j] = hess[j, i] = _product_skipping(v, (i, j))
            return hess
        if kind == "polynomial":
            (terms,) = self.params
            hess = np.zeros((k, k))
            for c, exps in terms:
                for i, ei in enumerate(exps):
                    if ei >= 2:
                        hess[i, i] += (
                            c * ei * (ei - 1) * v[i] ** (ei - 2)
                            * math.prod(v[j] ** ej for j, ej in enumerate(exps) if j != i)
                        )
                    if ei >= 1:
                        for j in range(i + 1, k):
                            ej = exps[j]
                            if ej >= 1:
                                cross = (
                                    c * ei * ej * v[i] ** (ei - 1) * v[j] ** (ej - 1)
                                    * math.prod(
                                        v[l] ** el
                                        for l, el in enumerate(exps)
                                        if l != i and l != j
                                    )
                                )
                                hess[i, j] += cross
                                hess[j, i] += cross
            return hess
        weights = np.asarray(self.params[0], dtype=float)
        s = float(np.dot(weights, v))
        scale = -math.sin(s) if kind == "sin_of_sum" else math.exp(s)
        return scale * np.outer(weights, weights)


def _product_skipping(v: np.ndarray, skip) -> float:
    out = 1.0
    for j, vj in enumerate(v):
        if j not in skip:
            out *= float(vj)
    return out


def outer_linear(weights, offset: float = 0.0) -> OuterMap:
    weights = tuple(float(w) for w in weights)
    if not weights:
        raise ValueError("linear outer map needs at least one weight")
    return OuterMap("linear", (weights, float(offset)))


def outer_product(arity: int) -> OuterMap:
    if arity < 1:
        raise ValueError("product outer map needs arity >= 1")
    return OuterMap("product", (int(arity),))


def outer_polynomial(terms) -> OuterMap:
    """Multivariate polynomial sum of coeff * v1^e1 * ... * vk^ek terms."""
    norm = []
    arity = None
    for coeff, exps in terms:
        exps = tuple(int(e) for e in exps)
        if any(e < 0 for e in exps):
            raise ValueError("polynomial exponents must be non-negative")
        if arity is None:
            arity = len(exps)
        elif len(exps) != arity:
            raise ValueError("all terms must share the same arity")
        norm.append((float(coeff), exps))
    if not norm:
        raise ValueError("polynomial outer map needs at least one term")
    return OuterMap("polynomial", (tuple(norm),))


def outer_sin(weights) -> OuterMap:
    weights = tuple(float(w) for w in weights)
    if not weights:
        raise ValueError("sin_of_sum needs at least one weight")
    return OuterMap("sin_of_sum", (weights,))


def outer_exp(weights) -> OuterMap:
    weights = tuple(float(w) for w in weights)
    if not weights:
        raise ValueError("exp_of_sum needs at least one weight")
    return OuterMap("exp_of_sum", (weights,))


def _outer_to_dict(g: OuterMap) -> dict:
    if g.kind == "linear":
        return {"kind": "linear", "weights": list(g.params[0]), "offset": g.params[1]}
    if g.kind == "product":
        return {"kind": "product", "arity": g.params[0]}
    if g.kind == "polynomial":
        return {"kind": "polynomial", "terms": [[c, list(e)] for c, e in g.params[0]]}
    return {"kind": g.kind, "weights": list(g.params[0])}


def _outer_from_dict(data: dict) -> OuterMap:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError('outer map JSON must be an object with a "kind"')
    kind = data["kind"]
    if kind == "linear":
        return outer_linear(data["weights"], data.get("offset", 0.0))
    if kind == "product":
        return outer_product(data["arity"])
    if kind == "polynomial":
        return outer_polynomial([(c, e) for c, e in data["terms"]])
    if kind == "sin_of_sum":
        return outer_sin(data["weights"])
    if kind == "exp_of_sum":
        return outer_exp(data["weights"])
    raise ValueError(f"unknown outer map kind {kind!r}")


@dataclass(frozen=True)
class CylinderFunction:
    """F(m) = g(<f1, m>, ..., <fk, m>) with closed-form functional derivatives.

    ``exact_delta`` is the canonical first derivative: the unique version with
    zero integral against the base measure. ``exact_delta2`` is the canonical
    derivative of m -> exact_delta(m, x).
    """

    inner: tuple
    outer: OuterMap
    label: str = ""

    def __post_init__(self):
        inner = tuple(self.inner)
        if len(inner) != self.outer.arity:
            raise ValueError(
                f"outer map expects {self.outer.arity} moments, got {len(inner)} inner functions"
            )
        object.__setattr__(self, "inner", inner)
        if not self.label:
            names = ",".join(f.name for f in inner)
            object.__setattr__(self, "label", f"{self.outer.kind}[{names}]")

    def moments(self, m: DiscreteMeasure) -> np.ndarray:
        return np.array([integrate(m, f) for f in self.inner])

    def evaluate(self, m: DiscreteMeasure) -> float:
        return self.outer.value(self.moments(m))

    def exact_delta(self, m: DiscreteMeasure, x):
        """Canonical first derivative: sum_i dg_i(v) * (f_i(x) - v_i)."""
        v = self.moments(m)
        grad = self.outer.gradient(v)
        xs = np.asarray(x, dtype=float)
        acc = np.zeros(xs.shape)
        for i, f in enumerate(self.inner):
            acc = acc + grad[i] * (f(xs) - v[i])
        return float(acc) if np.ndim(x) == 0 else acc

    def exact_delta2(self, m: DiscreteMeasure, x, y):
        """Canonical second derivative, broadcasting elementwise over x, y.

        Equals (f(x)-v)^T Hessian (f(y)-v) - grad . (f(y)-v).
        """
        v = self.moments(m)
        grad = self.outer.gradient(v)
        hess = self.outer.hessian(v)
        bx, by = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        dx = np.stack([np.broadcast_to(f(bx) - v[i], bx.shape) for i, f in enumerate(self.inner)])
        dy = np.stack([np.broadcast_to(f(by) - v[i], by.shape) for i, f in enumerate(self.inner)])
        quad = np.einsum("i...,ij,j...->...", dx, hess, dy)
        lin = np.einsum("i,i...->...", grad, dy)
        out = quad - lin
        if np.ndim(x) == 0 and np.ndim(y) == 0:
            return float(out)
        return out

    def delta_dx(self, m: DiscreteMeasure, x):
        """x-derivative of exact_delta: sum_i dg_i(v) * f_i'(x)."""
        v = self.moments(m)
        grad = self.outer.gradient(v)
        xs = np.asarray(x, dtype=float)
        acc = np.zeros(xs.shape)
        for i, f in enumerate(self.inner):
            acc = acc + grad[i] * f.derivative(xs)
        return float(acc) if np.ndim(x) == 0 else acc

    def has_nontrivial_hessian(self, probe: np.ndarray | None = None) -> bool:
        if probe is None:
            probe = np.full(self.outer.arity, 0.37)
        return bool(np.any(self.outer.hessian(probe) != 0.0))


def cylinder_to_dict(F: CylinderFunction) -> dict:
    return {
        "inner": [scalar_to_dict(f) for f in F.inner],
        "outer": _outer_to_dict(F.outer),
        "label": F.label,
    }


def cylinder_from_dict(data: dict) -> CylinderFunction:
    if not isinstance(data, dict) or "inner" not in data or "outer" not in data:
        raise ValueError('cylinder JSON must be an object with "inner" and "outer"')
    inner = tuple(scalar_from_dict(d) for d in data["inner"])
    outer = _outer_from_dict(data["outer"])
    return CylinderFunction(inner, outer, label=data.get("label", ""))


def lift_to_field(F: CylinderFunction):
    """Package the exact derivatives of a cylinder function as a field.

    The result carries the value delta-F, its x-derivative and the exact
    second derivative, ready for the antiderivative and symmetry checks.
    """
    from .derivative import DerivativeField

    return DerivativeField(
        value=F.exact_delta,
        dx=F.delta_dx,
        linear_delta=F.exact_delta2,
        label=f"lift[{F.label}]",
    )


def standard_battery() -> tuple:
    """Test battery of cylinder functions covering every outer-map kind."""
    return (
        CylinderFunction((identity_fn(),), outer_linear((1.0,)), label="mean"),
        CylinderFunction((sin_fn(),), outer_linear((1.0,)), label="sin_moment"),
        CylinderFunction((sin_fn(), cos_fn()), outer_product(2), label="sin_cos_product"),
        CylinderFunction(
            (sin_fn(),), outer_polynomial([(1.0, (2,))]), label="sin_moment_squared"
        ),
        CylinderFunction((identity_fn(),), outer_sin((1.0,)), label="sin_of_mean"),
        CylinderFunction((tanh_fn(), cos_fn()), outer_exp((0.5, 0.25)), label="exp_mix"),
        CylinderFunction(
            (gaussian(0.0, 1.0), polynomial((0.0, 0.0, 1.0))),
            outer_polynomial([(1.0, (1, 1)), (0.5, (0, 2))]),
            label="gauss_poly",
        ),
    )


def lipschitz_probes() -> tuple:
    """Catalog functions with Lipschitz bound one, for duality lower bounds."""
    return (identity_fn(), sin_fn(), cos_fn(), tanh_fn(), smooth_abs(0.1))
