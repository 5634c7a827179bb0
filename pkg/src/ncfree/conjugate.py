"""Conjugate variables: relation checking, the adjoint formula and bounds.

A candidate is a tuple of polynomials (xi_1, ..., xi_n) together with a
distribution specification.  check_conjugate tests the defining relations

    (tau (x) tau)(d_j P) = tau(xi_j P)

by full word enumeration up to a degree, since the relations quantify over
all P and word enumeration is the faithful finite truncation.  dstar
evaluates the adjoint of d_j on the tensor square via

    dstar_j(Y) = m_{xi_j}(Y) - m_1 (id (x) tau (x) id)(d_j (x) id + id (x) d_j)(Y)

whose closed forms on P (x) 1 and 1 (x) P serve as independent cross-checks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .derivations import d, d_leg_sum
from .errors import ConjugateCheckFailed, DegreeBoundExceeded
from .ncpoly import NcPoly, Word
from .scalars import Scalar
from .tensor import TensorPoly2
from .trace import DEFAULT_DEGREE_BOUND, DistributionSpec, TraceFunctional


def words_up_to(n: int, degree: int) -> Iterator[Word]:
    """All words over 1..n of length 0..degree, shortest first."""
    for length in range(degree + 1):
        yield from itertools.product(range(1, n + 1), repeat=length)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a conjugate-relation sweep."""

    max_degree_checked: int
    failures: tuple[tuple[int, Word, Scalar, Scalar], ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "max_degree_checked": self.max_degree_checked,
            "passed": self.passed,
            "failures": [
                {"j": j, "word": list(w), "lhs": str(lhs), "rhs": str(rhs)}
                for j, w, lhs, rhs in self.failures
            ],
        }


class ConjugateCandidate:
    """Polynomial candidate (xi_1, ..., xi_n) for the conjugate system."""

    def __init__(
        self,
        xi: Sequence[NcPoly],
        spec: DistributionSpec,
        degree_bound: int = DEFAULT_DEGREE_BOUND,
    ):
        xi = tuple(xi)
        if len(xi) != spec.n:
            raise ValueError(f"need {spec.n} candidate vectors, got {len(xi)}")
        for p in xi:
            if p.n != spec.n:
                raise ValueError("candidate polynomial over the wrong algebra")
        self.xi = xi
        self.spec = spec
        self.trace = TraceFunctional(spec, degree_bound)

    def self_adjointness(self) -> list[bool]:
        return [p.is_self_adjoint() for p in self.xi]


def check_conjugate(cand: ConjugateCandidate, degree: int) -> VerificationReport:
    """Compare both sides of the conjugate relations on all words up to `degree`."""
    trace = cand.trace
    max_xi_deg = max(
        (int(p.total_degree()) for p in cand.xi if not p.is_zero()), default=0
    )
    if degree + max_xi_deg > trace.degree_bound:
        raise DegreeBoundExceeded(
            f"degree {degree} plus candidate degree {max_xi_deg} exceeds the "
            f"trace bound {trace.degree_bound}"
        )
    failures = []
    for word in words_up_to(cand.spec.n, degree):
        mono = NcPoly.monomial(cand.spec.n, word)
        for j in range(1, cand.spec.n + 1):
            lhs = trace.trace_tensor(d(j, mono))
            rhs = trace.trace_poly(cand.xi[j - 1] * mono)
            if lhs != rhs:
                failures.append((j, word, lhs, rhs))
    failures.sort(key=lambda item: (item[0], len(item[1]), item[1]))
    return VerificationReport(degree, tuple(failures))


def dstar(cand: ConjugateCandidate, j: int, y: TensorPoly2) -> NcPoly:
    """The adjoint of d_j applied to a tensor-square element."""
    first = y.collapse(cand.xi[j - 1])
    second = cand.trace.collapse_middle(d_leg_sum(j, y))
    return first - second


def dstar_left(cand: ConjugateCandidate, j: int, p: NcPoly) -> NcPoly:
    """Closed form on P (x) 1: P xi_j - (id (x) tau)(d_j P)."""
    return p * cand.xi[j - 1] - cand.trace.partial_trace(d(j, p), "right")


def dstar_right(cand: ConjugateCandidate, j: int, p: NcPoly) -> NcPoly:
    """Closed form on 1 (x) P: xi_j P - (tau (x) id)(d_j P)."""
    return cand.xi[j - 1] * p - cand.trace.partial_trace(d(j, p), "left")


def check_adjoint(
    cand: ConjugateCandidate, j: int, y: TensorPoly2, q: NcPoly
) -> bool:
    """<dstar_j(y), q> = <y, d_j q>, exactly."""
    lhs = cand.trace.inner(dstar(cand, j, y), q)
    rhs = cand.trace.inner2(y, d(j, q))
    return lhs == rhs


def check_duality(
    trace: TraceFunctional, p1: NcPoly, p2: NcPoly, i: int
) -> bool:
    """((tau (x) id)(P1 d_i P2))* = (id (x) tau)((d_i P2*) P1*), exactly."""
    dp2 = d(i, p2)
    lhs = trace.partial_trace(dp2.bimodule_mul(p1, NcPoly.one(p1.n)), "left").star()
    rhs = trace.partial_trace(
        d(i, p2.star()).bimodule_mul(NcPoly.one(p1.n), p1.star()), "right"
    )
    return lhs == rhs


@dataclass(frozen=True)
class NormEstimateMargins:
    """Norm data for the two estimates on dstar closed forms.

    lhs1 = ||P xi_j - (id (x) tau)(d_j P)||_2 (bounded by rhs),
    lhs2 = ||(id (x) tau)(d_j P)||_2 (bounded by 2 rhs).
    The bound value uses a power-trace lower estimate for ||P||, so a
    violation here is a flag for closer inspection, not a refutation.
    """

    lhs1: float
    lhs2: float
    rhs: float

    @property
    def margin1(self) -> float:
        return self.rhs - self.lhs1

    @property
    def margin2(self) -> float:
        return 2 * self.rhs - self.lhs2


def norm_estimate_margins(
    cand: ConjugateCandidate, j: int, p: NcPoly, k: int
) -> NormEstimateMargins:
    trace = cand.trace
    xi_norm = trace.norm2(cand.xi[j - 1])
    lhs1 = trace.norm2(dstar_left(cand, j, p))
    lhs2 = trace.norm2(trace.partial_trace(d(j, p), "right"))
    rhs = xi_norm * trace.opnorm_lower(p, k)
    return NormEstimateMargins(lhs1, lhs2, rhs)


@dataclass(frozen=True)
class FisherInformation:
    """Sum of the squared L2 norms of a verified conjugate system."""

    exact: Scalar
    degree_checked: int

    @property
    def value(self) -> float:
        return float(self.exact.re)


def fisher(cand: ConjugateCandidate, degree: int = 8) -> FisherInformation:
    """Free Fisher information of a verified candidate.

    Refuses when the conjugate relations fail up to `degree`: the sum of
    squared norms of an unverified candidate is not the Fisher information.
    """
    report = check_conjugate(cand, degree)
    if not report.passed:
        raise ConjugateCheckFailed(report)
    total = Scalar(0)
    for p in cand.xi:
        total = total + cand.trace.inner(p, p)
    return FisherInformation(total, degree)
