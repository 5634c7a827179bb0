"""Sparse non-commutative polynomials over the exact complex rationals.

A word is a tuple of generator indices in 1..n; the empty tuple is the unit
monomial.  A polynomial is a sparse map word -> Scalar kept in canonical form
(no zero coefficients), so equality is structural.  Values are immutable
after construction and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EvaluationError, GeneratorCountMismatch, IndexOutOfRange
from .scalars import Scalar

Word = tuple[int, ...]

#: total degree of the zero polynomial
NEG_INF = float("-inf")


def check_word(word: Word, n: int) -> None:
    for letter in word:
        if not 1 <= letter <= n:
            raise IndexOutOfRange(f"letter {letter} outside 1..{n}")


def _coerce_coeff(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    return Scalar.coerce(value)


class NcPoly:
    """An element of the free *-algebra on n self-adjoint generators."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Word, Scalar] | None = None):
        if n < 0:
            raise ValueError("generator count must be nonnegative")
        canonical: dict[Word, Scalar] = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            check_word(word, n)
            coeff = _coerce_coeff(coeff)
            if not coeff.is_zero():
                canonical[word] = coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("NcPoly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(n: int) -> "NcPoly":
        return NcPoly(n)

    @staticmethod
    def one(n: int) -> "NcPoly":
        return NcPoly(n, {(): Scalar(1)})

    @staticmethod
    def gen(n: int, i: int) -> "NcPoly":
        """The generator Z_i."""
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"generator index {i} outside 1..{n}")
        return NcPoly(n, {(i,): Scalar(1)})

    @staticmethod
    def monomial(n: int, word: Iterable[int], coeff=1) -> "NcPoly":
        return NcPoly(n, {tuple(word): _coerce_coeff(coeff)})

    @staticmethod
    def constant(n: int, coeff) -> "NcPoly":
        return NcPoly(n, {(): _coerce_coeff(coeff)})

    # -- basic queries -------------------------------------------------

    def coeff(self, word: Iterable[int]) -> Scalar:
        return self.terms.get(tuple(word), Scalar(0))

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self):
        """Maximal word length carrying a nonzero coefficient; -inf for 0."""
        if not self.terms:
            return NEG_INF
        return max(len(w) for w in self.terms)

    def leading_part(self) -> "NcPoly":
        if not self.terms:
            raise ValueError("leading part of the zero polynomial")
        d = self.total_degree()
        return NcPoly(self.n, {w: c for w, c in self.terms.items() if len(w) == d})

    def is_self_adjoint(self) -> bool:
        return self == self.star()

    # -- algebra ---------------------------------------------------------

    def _check_compatible(self, other: "NcPoly") -> None:
        if self.n != other.n:
            raise GeneratorCountMismatch(f"{self.n} generators vs {other.n}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = NcPoly.constant(self.n, other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms.get(word, Scalar(0)) + coeff
        return NcPoly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = NcPoly.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            s = _coerce_coeff(other)
            return NcPoly(self.n, {w: c * s for w, c in self.terms.items()})
        if not isinstance(other, NcPoly):
            return NotImplemented
        self._check_compatible(other)
        terms: dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                acc = terms.get(word)
                terms[word] = c1 * c2 if acc is None else acc + c1 * c2
        return NcPoly(self.n, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = NcPoly.one(self.n)
        for _ in range(k):
            result = result * self
        return result

    def star(self) -> "NcPoly":
        """Involution: reverse words, conjugate coefficients."""
        return NcPoly(
            self.n, {w[::-1]: c.conjugate() for w, c in self.terms.items()}
        )

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = NcPoly.constant(self.n, other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # -- evaluation --------------------------------------------------------

    def evaluate(
        self, assignment: Sequence[np.ndarray], hermitian_tol: float = 1e-8
    ) -> np.ndarray:
        """Evaluate at a tuple of self-adjoint matrices (ring homomorphism)."""
        if len(assignment) != self.n:
            raise EvaluationError(
                f"expected {self.n} matrices, got {len(assignment)}"
            )
        mats = [np.asarray(a, dtype=complex) for a in assignment]
        dims = set()
        for a in mats:
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise EvaluationError("assignment matrices must be square")
            dims.add(a.shape[0])
            if np.max(np.abs(a - a.conj().T), initial=0.0) > hermitian_tol:
                raise EvaluationError("assignment matrix is not Hermitian")
        if len(dims) > 1:
            raise EvaluationError(f"mixed matrix dimensions: {sorted(dims)}")
        dim = dims.pop() if dims else 1
        result = np.zeros((dim, dim), dtype=complex)
        for word, coeff in self.terms.items():
            value = np.eye(dim, dtype=complex)
            for letter in word:
                value = value @ mats[letter - 1]
            result += complex(coeff) * value
        return result

    # -- text form ----------------------------------------------------------
    # One term is `coeff * Z i1 i2 ... ik`; the unit word is a bare `Z`.
    # Terms are joined by ` + ` and sorted (length, letters) for determinism.

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            coeff = self.terms[word]
            letters = "".join(f" {i}" for i in word)
            pieces.append(f"{coeff} * Z{letters}")
        return " + ".join(pieces)

    @staticmethod
    def from_text(text: str, n: int) -> "NcPoly":
        text = text.strip()
        if text == "0":
            return NcPoly.zero(n)
        terms: dict[Word, Scalar] = {}
        for piece in text.split(" + "):
            head, sep, tail = piece.partition("*")
            if not sep:
                raise ValueError(f"malformed term: {piece!r}")
            coeff = Scalar.parse(head)
            tokens = tail.split()
            if not tokens or tokens[0] != "Z":
                raise ValueError(f"malformed monomial: {piece!r}")
            word = tuple(int(t) for t in tokens[1:])
            check_word(word, n)
            terms[word] = terms.get(word, Scalar(0)) + coeff
        return NcPoly(n, terms)

    def __repr__(self):
        return f"NcPoly({self.n}, {self.to_text()!r})"
