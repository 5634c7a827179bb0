"""Trace functionals induced by declarative distribution specifications.

A DistributionSpec describes the joint distribution of the n generators:

* SemicircularFamily -- a free family of centred semicircular variables with
  given variances.  Mixed moments are sums over non-crossing pair partitions
  whose pairs connect equal letters, each pair contributing that letter's
  variance.
* FreeFamily -- a free family with one arbitrary moment sequence per
  generator.  Moments are sums over non-crossing partitions with
  monochromatic blocks of products of free cumulants.
* ExplicitMoments -- a user-supplied word -> value table up to a degree bound.

Both free variants are evaluated by the same block-of-the-first-element
recursion over non-crossing partitions, exactly in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DegreeBoundExceeded, NonPositiveMoments, UnknownMoment
from .ncpoly import NcPoly, Word
from .scalars import Scalar
from .tensor import TensorPoly2, TensorPoly3

DEFAULT_DEGREE_BOUND = 12


# ---------------------------------------------------------------------------
# distribution specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SemicircularFamily:
    """Free centred semicircular generators with the given variances."""

    variances: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "variances", tuple(Fraction(v) for v in self.variances)
        )
        if any(v <= 0 for v in self.variances):
            raise ValueError("semicircular variances must be positive")


@dataclass(frozen=True)
class FreeFamily:
    """Free generators, each given by its moment sequence m_1..m_D."""

    moments: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "moments",
            tuple(tuple(Fraction(m) for m in seq) for seq in self.moments),
        )


@dataclass(frozen=True)
class ExplicitMoments:
    """A raw word -> moment table, trusted up to the stated degree."""

    table: Mapping[Word, Scalar]
    degree: int

    def __post_init__(self):
        frozen = {
            tuple(w): (v if isinstance(v, Scalar) else Scalar.coerce(v))
            for w, v in dict(self.table).items()
        }
        object.__setattr__(self, "table", frozen)


Variant = SemicircularFamily | FreeFamily | ExplicitMoments


@dataclass(frozen=True)
class DistributionSpec:
    n: int
    variant: Variant

    def __post_init__(self):
        if isinstance(self.variant, SemicircularFamily):
            if len(self.variant.variances) != self.n:
                raise ValueError("need one variance per generator")
        elif isinstance(self.variant, FreeFamily):
            if len(self.variant.moments) != self.n:
                raise ValueError("need one moment sequence per generator")

    # -- JSON-compatible serialization -------------------------------------

    def to_dict(self) -> dict:
        if isinstance(self.variant, SemicircularFamily):
            return {
                "n": self.n,
                "variant": "semicircular",
                "variances": [str(v) for v in self.variant.variances],
            }
        if isinstance(self.variant, FreeFamily):
            return {
                "n": self.n,
                "variant": "free",
                "moments": [[str(m) for m in seq] for seq in self.variant.moments],
            }
        return {
            "n": self.n,
            "variant": "explicit",
            "degree": self.variant.degree,
            "moments": [
                {"word": list(w), "value": str(v)}
                for w, v in sorted(self.variant.table.items())
            ],
        }

    @staticmethod
    def from_dict(data: Mapping) -> "DistributionSpec":
        n = int(data["n"])
        kind = data["variant"]
        if kind == "semicircular":
            variant: Variant = SemicircularFamily(
                tuple(Fraction(v) for v in data["variances"])
            )
        elif kind == "free":
            variant = FreeFamily(
                tuple(tuple(Fraction(m) for m in seq) for seq in data["moments"])
            )
        elif kind == "explicit":
            table = {
                tuple(entry["word"]): Scalar.parse(entry["value"])
                for entry in data["moments"]
            }
            variant = ExplicitMoments(table, int(data["degree"]))
        else:
            raise ValueError(f"unknown distribution variant: {kind!r}")
        return DistributionSpec(n, variant)

    @staticmethod
    def standard_semicircular(n: int) -> "DistributionSpec":
        return DistributionSpec(n, SemicircularFamily((Fraction(1),) * n))


# ---------------------------------------------------------------------------
# free cumulants
# ---------------------------------------------------------------------------


def _nc_moment_single(k: int, kappa: Sequence[Fraction]) -> Fraction:
    """m_k from cumulants kappa_1..kappa_k via non-crossing partitions.

    Recursion on the block of the first element: if it is {p_0=0 < ... <
    p_{m-1}}, the gaps between consecutive block elements and the tail after
    the last one are partitioned independently.
    """
    memo: dict[int, Fraction] = {0: Fraction(1)}

    def f(length: int) -> Fraction:
        if length in memo:
            return memo[length]
        total = Fraction(0)
        # choose the block of the first point: sizes of the m-1 gaps plus tail
        def extend(remaining: int, block_size: int, acc: Fraction) -> None:
            nonlocal total
            # close the block here: tail of `remaining` points follows
            total += acc * kappa[block_size - 1] * f(remaining)
            # or put the next block element after a gap of g >= 0 points
            for gap in range(remaining - 1, -1, -1):
                if block_size + 1 > len(kappa):
                    break
                extend_next = remaining - gap - 1
                extend(extend_next, block_size + 1, acc * f(gap))

        extend(length - 1, 1, Fraction(1))
        memo[length] = total
        return total

    return f(k)


def free_cumulants(moments: Sequence[Fraction]) -> list[Fraction]:
    """Invert the non-crossing moment formula: kappa_1..kappa_D from m_1..m_D."""
    moments = [Fraction(m) for m in moments]
    kappa: list[Fraction] = []
    for k, m_k in enumerate(moments, start=1):
        # with kappa_k temporarily 0 the full-block partition contributes 0
        kappa.append(Fraction(0))
        kappa[-1] = m_k - _nc_moment_single(k, kappa)
    return kappa


# ---------------------------------------------------------------------------
# the trace functional
# ---------------------------------------------------------------------------


class TraceFunctional:
    """tau induced by a DistributionSpec, memoized over raw words."""

    def __init__(self, spec: DistributionSpec, degree_bound: int = DEFAULT_DEGREE_BOUND):
        self.spec = spec
        self.degree_bound = degree_bound
        self._memo: dict[Word, Scalar] = {(): Scalar(1)}
        variant = spec.variant
        if isinstance(variant, SemicircularFamily):
            self._cumulants = [
                [Fraction(0), v] + [Fraction(0)] * max(0, degree_bound - 2)
                for v in variant.variances
            ]
        elif isinstance(variant, FreeFamily):            # pad so blocks up to the degree bound are addressable
            self._cumulants = []
            for seq in variant.moments:
                kappa = free_cumulants(seq)
                kappa += [Fraction(0)] * max(0, degree_bound - len(kappa))
                self._cumulants.append(kappa)
        else:
            self._cumulants = None

    # -- moments ---------------------------------------------------------

    def _check_degree(self, length: int) -> None:
        if length > self.degree_bound:
            raise DegreeBoundExceeded(
                f"word length {length} exceeds degree bound {self.degree_bound}"
            )
        if isinstance(self.spec.variant, ExplicitMoments):
            if length > self.spec.variant.degree:
                raise DegreeBoundExceeded(
                    f"word length {length} exceeds explicit table degree "
                    f"{self.spec.variant.degree}"
                )
        if isinstance(self.spec.variant, FreeFamily) and length > 0:
            available = min(len(seq) for seq in self.spec.variant.moments)
            if length > available:
                raise DegreeBoundExceeded(
                    f"word length {length} exceeds supplied moment depth {available}"
                )

    def moment(self, word: Word) -> Scalar:
        """tau of a single word."""
        word = tuple(word)
        self._check_degree(len(word))
        cached = self._memo.get(word)
        if cached is not None:
            return cached
        if isinstance(self.spec.variant, ExplicitMoments):
            try:
                value = self.spec.variant.table[word]
            except KeyError:
                raise UnknownMoment(f"no table entry for word {word}") from None
        else:
            value = Scalar(self._nc_moment(word))
        self._memo[word] = value
        return value

    def _nc_moment(self, word: Word) -> Fraction:
        """Sum over non-crossing partitions with monochromatic blocks."""
        if not word:
            return Fraction(1)
        cached = self._memo.get(word)
        if cached is not None:
            return cached.re
        letter = word[0]
        kappa = self._cumulants[letter - 1]
        total = Fraction(0)
        # the block of position 0: positions 0 = p_0 < p_1 < ... < p_{m-1}
        # with word[p_i] == letter; the gaps and the tail factorize.
        def extend(start: int, block_size: int, acc: Fraction) -> None:
            nonlocal total
            if acc == 0:
                return
            # close the block: the tail word[start:] is a free factor
            if kappa[block_size - 1] != 0:
                total += acc * kappa[block_size - 1] * self._nc_moment(word[start:])
            if block_size >= len(kappa):
                return
            for nxt in range(start, len(word)):
                if word[nxt] == letter:
                    gap = self._nc_moment(word[start:nxt])
                    extend(nxt + 1, block_size + 1, acc * gap)

        extend(1, 1, Fraction(1))
        self._memo[word] = Scalar(total)
        return total

    # -- linear extensions --------------------------------------------------

    def trace_poly(self, p: NcPoly) -> Scalar:
        total = Scalar(0)
        for word, coeff in p.terms.items():
            total = total + coeff * self.moment(word)
        return total

    def trace_tensor(self, s: TensorPoly2) -> Scalar:
        """(tau (x) tau): multiply the two legs' moments."""
        total = Scalar(0)
        for (w1, w2), coeff in s.terms.items():
            total = total + coeff * self.moment(w1) * self.moment(w2)
        return total

    def partial_trace(self, s: TensorPoly2, side: str) -> NcPoly:
        """Contract one leg with tau, leaving a polynomial.

        side='left' is (tau (x) id), side='right' is (id (x) tau).
        """
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        terms: dict[Word, Scalar] = {}
        for (w1, w2), coeff in s.terms.items():
            traced, kept = (w1, w2) if side == "left" else (w2, w1)
            value = coeff * self.moment(traced)
            if value.is_zero():
                continue
            acc = terms.get(kept)
            terms[kept] = value if acc is None else acc + value
        return NcPoly(s.n, terms)

    def contract_middle(self, y: TensorPoly3) -> TensorPoly2:
        """(id (x) tau (x) id): trace the middle leg."""
        terms: dict[tuple[Word, Word], Scalar] = {}
        for (w1, w2, w3), coeff in y.terms.items():
            value = coeff * self.moment(w2)
            if value.is_zero():
                continue
            key = (w1, w3)
            acc = terms.get(key)
            terms[key] = value if acc is None else acc + value
        return TensorPoly2(y.n, terms)

    def collapse_middle(self, y: TensorPoly3) -> NcPoly:
        """m_1 (id (x) tau (x) id): trace the middle leg, multiply the outer ones."""
        terms: dict[Word, Scalar] = {}
        for (w1, w2, w3), coeff in y.terms.items():
            value = coeff * self.moment(w2)
            if value.is_zero():
                continue
            word = w1 + w3
            acc = terms.get(word)
            terms[word] = value if acc is None else acc + value
        return NcPoly(y.n, terms)

    # -- inner products and norms ---------------------------------------------

    def inner(self, p: NcPoly, q: NcPoly) -> Scalar:
        """<p, q> = tau(p q*)."""
        value = self.trace_poly(p * q.star())
        if p == q and (value.im != 0 or value.re < 0):
            raise NonPositiveMoments(
                f"<p,p> = {value} is not a nonnegative real; the moment data "
                "is not positive definite"
            )
        return value

    def norm2(self, p: NcPoly) -> float:
        """The L2 norm tau(p p*)^(1/2) as a float."""
        return math.sqrt(float(self.inner(p, p).re))

    def norm2_squared(self, p: NcPoly) -> Fraction:
        """Exact rational tau(p p*)."""
        return self.inner(p, p).re

    def inner2(self, s: TensorPoly2, u: TensorPoly2) -> Scalar:
        """<s, u> = (tau (x) tau)(s u*) under the componentwise product."""
        value = self.trace_tensor(s * u.star())
        if s == u and (value.im != 0 or value.re < 0):
            raise NonPositiveMoments(
                f"<s,s> = {value} is not a nonnegative real; the moment data "
                "is not positive definite"
            )
        return value

    def opnorm_lower(self, p: NcPoly, k: int) -> float:
        """tau((p* p)^k)^(1/2k): a nondecreasing-in-k operator norm lower bound."""
        if k < 1:
            raise ValueError("power k must be >= 1")
        power = (p.star() * p) ** k
        value = self.trace_poly(power)
        if value.im != 0 or value.re < 0:
            raise NonPositiveMoments(
                f"tau((p*p)^{k}) = {value} is not a nonnegative real"
            )
        return float(value.re) ** (1.0 / (2 * k))
