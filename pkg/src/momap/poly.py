"""Dense-exponent multivariate polynomials with exact coefficient arithmetic.

Polynomials are dictionaries mapping exponent tuples to float coefficients.
That is all the Hilbert-map and Poisson machinery needs: evaluation,
gradients, products, and coefficient-level comparison.  No symbolic
simplification is attempted beyond dropping zero coefficients.
"""

from __future__ import annotations

import numpy as np

from .linalg import InputError

_DROP = 0.0  # exact-zero coefficients are removed eagerly


class Polynomial:
    """Real polynomial in ``nvars`` variables, stored term by term."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], float] | None = None):
        self.nvars = int(nvars)
        self.terms: dict[tuple[int, ...], float] = {}
        if terms:
            for expo, coeff in terms.items():
                if len(expo) != self.nvars:
                    raise InputError("exponent tuple length does not match variable count")
                if coeff != _DROP:
                    self.terms[tuple(int(e) for e in expo)] = float(coeff)

    # ----- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: float) -> "Polynomial":
        return cls(nvars, {tuple([0] * nvars): value})

    @classmethod
    def coordinate(cls, nvars: int, index: int, coeff: float = 1.0) -> "Polynomial":
        expo = [0] * nvars
        expo[index] = 1
        return cls(nvars, {tuple(expo): coeff})

    @classmethod
    def linear(cls, coeffs) -> "Polynomial":
        coeffs = np.asarray(coeffs, dtype=float)
        p = cls(coeffs.size)
        for i, c in enumerate(coeffs):
            if c != 0.0:
                expo = [0] * coeffs.size
                expo[i] = 1
                p.terms[tuple(expo)] = float(c)
        return p

    @classmethod
    def quadratic_form(cls, matrix) -> "Polynomial":
        """x ↦ xᵀ M x as a polynomial (M need not be symmetric)."""
        matrix = np.asarray(matrix, dtype=float)
        n = matrix.shape[0]
        p = cls(n)
        for i in range(n):
            for j in range(n):
                c = matrix[i, j]
                if c == 0.0:
                    continue
                expo = [0] * n
                expo[i] += 1
                expo[j] += 1
                key = tuple(expo)
                p.terms[key] = p.terms.get(key, 0.0) + float(c)
        p._strip()
        return p

    # ----- arithmetic ---------------------------------------------------
    def _strip(self):
        for key in [k for k, v in self.terms.items() if v == _DROP]:
            del self.terms[key]

    def copy(self) -> "Polynomial":
        return Polynomial(self.nvars, dict(self.terms))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = self.copy()
        for expo, coeff in other.terms.items():
            out.terms[expo] = out.terms.get(expo, 0.0) + coeff
        out._strip()
        return out

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1.0)

    def scale(self, factor: float) -> "Polynomial":
        if factor == 0.0:
            return Polynomial.zero(self.nvars)
        return Polynomial(self.nvars, {e: factor * c for e, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = Polynomial.zero(self.nvars)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out.terms[key] = out.terms.get(key, 0.0) + c1 * c2
        out._strip()
        return out

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise InputError("polynomials live on different spaces")

    # ----- calculus and evaluation ---------------------------------------
    def partial(self, index: int) -> "Polynomial":
        out = Polynomial.zero(self.nvars)
        for expo, coeff in self.terms.items():
            k = expo[index]
            if k == 0:
                continue
            new = list(expo)
            new[index] = k - 1
            key = tuple(new)
            out.terms[key] = out.terms.get(key, 0.0) + coeff * k
        out._strip()
        return out

    def gradient(self) -> list["Polynomial"]:
        return [self.partial(i) for i in range(self.nvars)]

    def __call__(self, points):
        """Evaluate at one point (1-d array) or many (n × nvars array)."""
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        if pts.shape[1] != self.nvars:
            raise InputError(
                f"point dimension {pts.shape[1]} does not match polynomial in {self.nvars} variables"
            )
        values = np.zeros(pts.shape[0])
        for expo, coeff in self.terms.items():
            term = np.full(pts.shape[0], coeff)
            for i, k in enumerate(expo):
                if k:
                    term = term * pts[:, i] ** k
            values += term
        return values[0] if single else values

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def max_abs_coeff(self) -> float:
        if not self.terms:
            return 0.0
        return max(abs(c) for c in self.terms.values())

    def coefficient_distance(self, other: "Polynomial") -> float:
        """Max absolute coefficient difference; the metric behind identity checks."""
        self._check(other)
        keys = set(self.terms) | set(other.terms)
        if not keys:
            return 0.0
        return max(abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) for k in keys)

    def __repr__(self):
        if not self.terms:
            return "Polynomial(0)"
        bits = []
        for expo in sorted(self.terms, key=lambda e: (sum(e), e)):
            coeff = self.terms[expo]
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(expo) if k)
            bits.append(f"{coeff:+g}" + (f"*{mono}" if mono else ""))
        return "Polynomial(" + " ".join(bits) + ")"
