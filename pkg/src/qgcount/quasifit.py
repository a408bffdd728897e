"""
Exact fitting of quasi-polynomials (polynomials with coefficients periodic in
``k``) to lattice point counts.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import ratmath as rm
from .errors import InconsistentSamples, InsufficientSamples


@dataclass(frozen=True)
class QuasiPolynomial:
    degree: int
    period: int
    coeffs: tuple  # coeffs[r][i] multiplies k**i on the residue class r

    def coefficient(self, power: int, residue: int) -> Fraction:
        if not 0 <= power <= self.degree:
            raise IndexError(f"power {power} outside 0..{self.degree}")
        if not 0 <= residue < self.period:
            raise IndexError(f"residue {residue} outside 0..{self.period - 1}")
        return self.coeffs[residue][power]

    def eval(self, k: int) -> Fraction:
        c = self.coeffs[k % self.period]
        acc = Fraction(0)
        for a in reversed(c):
            acc = acc * k + a
        return acc

    __call__ = eval

    def is_polynomial(self) -> bool:
        return all(row == self.coeffs[0] for row in self.coeffs)


def fit(samples, degree: int, period: int) -> QuasiPolynomial:
    """Interpolate each residue class on its first ``degree + 1`` samples and
    check the rest.

    ``samples`` is an iterable of ``(k, count)`` pairs.
    """
    if period < 1:
        raise ValueError("period must be positive")
    by_res = {r: [] for r in range(period)}
    for k, c in sorted(samples):
        by_res[k % period].append((k, c))
    coeffs = []
    for r in range(period):
        pts = by_res[r]
        if len(pts) < degree + 1:
            raise InsufficientSamples(
                f"residue {r} mod {period} has {len(pts)} samples, needs {degree + 1}"
            )
        head = pts[: degree + 1]
        A = [[k**i for i in range(degree + 1)] for k, _ in head]
        sol = rm.solve_rational(A, [c for _, c in head])
        row = sol.x
        for k, c in pts[degree + 1:]:
            if sum(a * k**i for i, a in enumerate(row)) != c:
                raise InconsistentSamples(
                    f"sample k={k} disagrees with degree {degree}, period {period}"
                )
        coeffs.append(tuple(row))
    return QuasiPolynomial(degree, period, tuple(coeffs))


def fit_counts(counts, degree: int, period: int, start: int = 0) -> QuasiPolynomial:
    """Fit a table ``counts[k]`` for ``k = start, start + 1, ...``."""
    return fit(((start + i, c) for i, c in enumerate(counts)), degree, period)


def samples_needed(degree: int, period: int, holdout: int = 1) -> int:
    """Smallest ``kmax`` giving every residue ``degree + 1 + holdout`` samples."""
    return period * (degree + 1 + holdout) - 1


def fit_with_period_search(count_fn, degree: int, candidates, kmin: int = 0, holdout: int = 2):
    """Try each candidate period in order; return ``(qp, counts)`` for the
    first consistent fit.

    ``count_fn(kmax)`` returns the table ``n(0..kmax)``; it is called with
    enough samples for ``holdout`` extra checks per residue class.
    """
    last = None
    for P in candidates:
        kmax = max(kmin, samples_needed(degree, P, holdout))
        counts = count_fn(kmax)
        try:
            return fit_counts(counts, degree, P), counts
        except InconsistentSamples as exc:
            last = exc
    raise last or InsufficientSamples("no candidate periods given")
