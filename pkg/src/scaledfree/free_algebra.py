"""Free Banach algebras on normed sets as weighted word series.

Elements are finite combinations of nonempty words over the nonzero-norm
labels.  The product concatenates words, and the norm weights each word by
the product of the norms of its letters:

    ||sum c_w w|| = sum |c_w| * f(w_1) * ... * f(w_n)

which is the projective tensor norm of the l1 direct sum of tensor powers of
the free space, evaluated on finitely supported elements.  There is no empty
word: the algebra is non-unital.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .errors import BaseMismatchError, DomainMismatchError, NotContractiveError
from .free_space import ScalarField, _validated_images
from .normed_sets import NormedMap, NormedSet, bound_constant, label_key, label_text
from .scalars import UNBOUNDED, ZERO, NormValue, Scalar, as_fraction

Word = tuple

DEFAULT_DEGREE_CAP = 20


def _word_key(word: Word) -> tuple:
    return (len(word), tuple(label_key(s) for s in word))


def word_weight(base: NormedSet, word: Word) -> Fraction:
    w = Fraction(1)
    for s in word:
        w *= base.norm(s)
    return w


class TensorElement:
    """A finitely supported element of the free algebra on ``base``.

    Words containing a zero-norm letter are dropped on construction, as are
    zero coefficients.

    >>> B = NormedSet({"a": 1, "b": 1})
    >>> x = kappa(B, "a") + kappa(B, "b")
    >>> x * kappa(B, "a")
    TensorElement((1)*aa + (1)*ba)
    """

    __slots__ = ("base", "_coeffs")

    def __init__(self, base: NormedSet, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict = {}
        for word, c in items:
            word = tuple(word)
            if not word:
                raise DomainMismatchError("the empty word is not an element (the algebra is non-unital)")
            if any(base.norm(s) == 0 for s in word):
                continue
            acc[word] = acc.get(word, ZERO) + Scalar.coerce(c)
        self.base = base
        self._coeffs = {w: acc[w] for w in sorted(acc, key=_word_key) if acc[w]}

    @classmethod
    def zero(cls, base: NormedSet) -> TensorElement:
        return cls(base)

    def coefficient(self, word: Word) -> Scalar:
        return self._coeffs.get(tuple(word), ZERO)

    def items(self) -> Iterator[tuple[Word, Scalar]]:
        return iter(self._coeffs.items())

    @property
    def words(self) -> tuple:
        return tuple(self._coeffs)

    @property
    def degree(self) -> int:
        """Length of the longest word (0 for the zero element)."""
        return max((len(w) for w in self._coeffs), default=0)

    def norm(self) -> NormValue:
        return sum(
            (c.modulus() * word_weight(self.base, w) for w, c in self._coeffs.items()),
            NormValue(0),
        )

    def _check(self, other) -> None:
        if not isinstance(other, TensorElement) or other.base != self.base:
            raise BaseMismatchError("elements live over different normed sets")

    def __add__(self, other: TensorElement) -> TensorElement:
        self._check(other)
        return TensorElement(self.base, [*self.items(), *other.items()])

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def __neg__(self) -> TensorElement:
        return TensorElement(self.base, {w: -c for w, c in self.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return alg_mul(self, other)
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return TensorElement(self.base, {w: c * x for w, x in self.items()})

    def __rmul__(self, scalar):
        try:
            c = Scalar.coerce(scalar)
        except TypeError:
            return NotImplemented
        return TensorElement(self.base, {w: c * x for w, x in self.items()})

    def __pow__(self, n: int) -> TensorElement:
        if n < 1:
            raise ValueError("only positive powers exist in a non-unital algebra")
        out = self
        for _ in range(n - 1):
            out = alg_mul(out, self)
        return out

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.base == other.base and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.base, tuple(self._coeffs.items())))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "TensorElement(0)"
        terms = " + ".join(f"({c})*{''.join(label_text(s) for s in w)}" for w, c in self.items())
        return f"TensorElement({terms})"


def kappa(base: NormedSet, label) -> TensorElement:
    """Embedding of a generator as a one-letter word (0 for zero-norm labels)."""
    base.norm(label)
    return TensorElement(base, {(label,): 1})


def alg_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    x._check(y)
    return TensorElement(x.base, [(u + v, a * b) for u, a in x.items() for v, b in y.items()])


def alg_norm(x: TensorElement) -> NormValue:
    return x.norm()


def monomial(base: NormedSet, word: Word, coeff=1) -> TensorElement:
    return TensorElement(base, {tuple(word): coeff})


# -- algebra targets -----------------------------------------------------------


@dataclass(frozen=True)
class TensorAlgebra:
    base: NormedSet

    def zero(self) -> TensorElement:
        return TensorElement(self.base)

    def add(self, u, v) -> TensorElement:
        return u + v

    def scale(self, c, v) -> TensorElement:
        return Scalar.coerce(c) * v

    def multiply(self, u, v) -> TensorElement:
        return alg_mul(u, v)

    def norm(self, v) -> NormValue:
        return v.norm()

    def validate(self, v) -> TensorElement:
        if not isinstance(v, TensorElement) or v.base != self.base:
            raise BaseMismatchError("element does not belong to this algebra")
        return v


Matrix = tuple


@dataclass(frozen=True)
class MatrixAlgebra:
    """``n x n`` matrices with the maximum absolute column sum norm."""

    n: int

    def zero(self) -> Matrix:
        return tuple((ZERO,) * self.n for _ in range(self.n))

    def identity(self) -> Matrix:
        return tuple(tuple(Scalar(int(i == j)) for j in range(self.n)) for i in range(self.n))

    def add(self, u, v) -> Matrix:
        return tuple(tuple(a + b for a, b in zip(ru, rv)) for ru, rv in zip(u, v))

    def scale(self, c, v) -> Matrix:
        c = Scalar.coerce(c)
        return tuple(tuple(c * a for a in row) for row in v)

    def multiply(self, u, v) -> Matrix:
        n = self.n
        return tuple(
            tuple(sum((u[i][k] * v[k][j] for k in range(n)), ZERO) for j in range(n))
            for i in range(n)
        )

    def norm(self, v) -> NormValue:
        return max(
            (sum((v[i][j].modulus() for i in range(self.n)), NormValue(0)) for j in range(self.n)),
            default=NormValue(0),
        )

    def validate(self, v) -> Matrix:
        rows = tuple(tuple(Scalar.coerce(a) for a in row) for row in v)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise DomainMismatchError(f"expected a {self.n}x{self.n} matrix")
        return rows


def evaluate_word_map(images: Mapping, x: TensorElement, target) -> Any:
    """Apply the multiplicative linear map ``w_1...w_n -> images[w_1]...images[w_n]``.

    No contractivity is checked; :func:`extend_to_algebra` is the checked entry
    point.
    """
    out = target.zero()
    cache: dict = {}

    def value(word):
        if word not in cache:
            cache[word] = (
                images[word[0]]
                if len(word) == 1
                else target.multiply(value(word[:-1]), images[word[-1]])
            )
        return cache[word]

    for w, c in x.items():
        out = target.add(out, target.scale(c, value(w)))
    return out


@dataclass(frozen=True, eq=False)
class AlgebraExtension:
    """The contractive homomorphism determined by the images of the generators."""

    source: TensorAlgebra
    target: Any
    images: Mapping = field(repr=False)

    def __call__(self, x: TensorElement) -> Any:
        self.source.validate(x)
        return evaluate_word_map(self.images, x, self.target)

    def on_generators(self) -> dict:
        return {s: self(kappa(self.source.base, s)) for s in self.source.base}


def extend_to_algebra(images: Mapping, base: NormedSet, target) -> AlgebraExtension:
    """Unique contractive homomorphism extending ``s -> images[s]``.

    Requires ``||images[s]|| <= f(s)`` for every generator; otherwise
    NotContractiveError, since a bounded but non-contractive generator map has
    no bounded multiplicative extension in general.
    """
    images = _validated_images(images, base, target)
    c = bound_constant((base.norm(s), target.norm(images[s])) for s in base)
    if c is UNBOUNDED or c > 1:
        bad = next(s for s in base if target.norm(images[s]) > base.norm(s))
        raise NotContractiveError(
            f"image of {label_text(bad)} has norm {target.norm(images[bad])} "
            f"exceeding the generator norm {base.norm(bad)}; algebra extensions must be contractive"
        )
    return AlgebraExtension(TensorAlgebra(base), target, {s: images[s] for s in base.support})


@dataclass(frozen=True, eq=False)
class InducedHomomorphism:
    """Free-algebra functor on a contractive map: letterwise relabelling.

    Words with a letter sent to a zero-norm label are annihilated.
    """

    alpha: NormedMap

    @property
    def source(self) -> TensorAlgebra:
        return TensorAlgebra(self.alpha.domain)

    @property
    def target(self) -> TensorAlgebra:
        return TensorAlgebra(self.alpha.codomain)

    def __call__(self, x: TensorElement) -> TensorElement:
        self.source.validate(x)
        return TensorElement(
            self.alpha.codomain,
            [(tuple(self.alpha(s) for s in w), c) for w, c in x.items()],
        )


def functor_on_map_alg(alpha: NormedMap) -> InducedHomomorphism:
    if not alpha.is_contractive:
        raise NotContractiveError(f"map has bound constant {alpha.crh}; the algebra functor needs contractions")
    return InducedHomomorphism(alpha)


# -- one generator -------------------------------------------------------------


def convolve(x: Sequence, y: Sequence) -> tuple:
    """Convolution of sequences indexed from 1: ``(x*y)_n = sum_k x_k y_(n-k)``.

    Position ``i`` of a tuple holds the coefficient of index ``i + 1``.
    """
    if not x or not y:
        return ()
    out = [ZERO] * (len(x) + len(y))
    for i, a in enumerate(x, start=1):
        for j, b in enumerate(y, start=1):
            out[i + j - 1] += a * b
    return _trim(out)


def _trim(seq) -> tuple:
    seq = list(seq)
    while seq and not seq[-1]:
        seq.pop()
    return tuple(seq)


def weighted_sequence_norm(x: Sequence, weight: Fraction) -> NormValue:
    return sum(
        (Scalar.coerce(a).modulus() * weight**n for n, a in enumerate(x, start=1)),
        NormValue(0),
    )


def element_to_sequence(x: TensorElement) -> tuple:
    if len(x.base) != 1:
        raise DomainMismatchError("not a one-generator element")
    out = [ZERO] * x.degree
    for w, c in x.items():
        out[len(w) - 1] = c
    return _trim(out)


def sequence_to_element(base: NormedSet, seq: Sequence) -> TensorElement:
    (letter,) = base.labels
    return TensorElement(base, {(letter,) * n: c for n, c in enumerate(seq, start=1)})


@dataclass
class ConvolutionReport:
    weight: Fraction
    degree: int
    pairs_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def one_generator_convolution_check(
    weight, degree: int, *, samples: int = 25, seed: int = 0, generator: str = "s"
) -> ConvolutionReport:
    """Compare the free algebra on one generator with weighted sequence convolution.

    Every pair of monomials ``s^i, s^j`` with ``1 <= i, j <= degree`` and
    ``samples`` random pairs of polynomials of degree at most ``degree`` are
    multiplied both as words and as sequences; products and norms must agree
    exactly.  Degree 0 checks the zero element against the empty sequence.
    """
    weight = as_fraction(weight)
    if weight <= 0:
        raise ValueError("generator weight must be positive")
    base = NormedSet({generator: weight})
    report = ConvolutionReport(weight, degree)

    def check(x: tuple, y: tuple) -> None:
        ex, ey = sequence_to_element(base, x), sequence_to_element(base, y)
        prod_alg = alg_mul(ex, ey)
        prod_seq = convolve(x, y)
        report.pairs_checked += 1
        if element_to_sequence(prod_alg) != prod_seq:
            report.failures.append(("product", x, y))
        for e, s in ((ex, x), (ey, y), (prod_alg, prod_seq)):
            if alg_norm(e) != weighted_sequence_norm(s, weight):
                report.failures.append(("norm", s))

    if degree <= 0:
        check((), ())
        return report
    for i in range(1, degree + 1):
        for j in range(1, degree + 1):
            check(_trim([ZERO] * (i - 1) + [Scalar(1)]), _trim([ZERO] * (j - 1) + [Scalar(1)]))
    rng = random.Random(seed)
    for _ in range(samples):
        x = _trim(Scalar(rng.randint(-3, 3)) for _ in range(rng.randint(1, degree)))
        y = _trim(Scalar(rng.randint(-3, 3)) for _ in range(rng.randint(1, degree)))
        check(x, y)
    return report


__all__ = [
    "AlgebraExtension",
    "ConvolutionReport",
    "InducedHomomorphism",
    "MatrixAlgebra",
    "ScalarField",
    "TensorAlgebra",
    "TensorElement",
    "alg_mul",
    "alg_norm",
    "convolve",
    "evaluate_word_map",
    "extend_to_algebra",
    "functor_on_map_alg",
    "kappa",
    "monomial",
    "one_generator_convolution_check",
    "word_weight",
]
