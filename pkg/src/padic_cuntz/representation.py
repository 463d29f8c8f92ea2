"""The Cuntz algebra acting on step functions over Z_p.

Creation sends ξ(x) to √p·θ₁(x−i)·ξ([x/p]) (depth goes up by one);
annihilation sends ξ(x) to p^{−1/2}·ξ(i+px) (depth goes down by one,
constants stay constants).  Under the coset index encoding n = Σ d_j p^j
both are pure index arithmetic: creation places value m at index i + p·m,
annihilation reads index i + p·m.

These operators satisfy the Cuntz relations on the nose:
A_i A†_j = δ_ij and Σ_i A†_i A_i = 1, and are mutually adjoint for the
L² pairing with normalized Haar measure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (InvalidLetterError, OperatorParseError,
                     SelfCheckError)
from .scalars import Scalar, validate_prime
from .stepfunctions import (VALUE_CAP, StepFunction, _check_cap,
                            make_indicator, word_to_center)
from .words import Word, validate_word, word_str, words_of_length

CREATE = "create"
ANNIHILATE = "annihilate"


def apply_creation(i: int, f: StepFunction,
                   cap: int = VALUE_CAP) -> StepFunction:
    """A†_i f: value √p·f(m) at coset index i + p·m, zero elsewhere."""
    p = f.p
    if not isinstance(i, int) or not 0 <= i < p:
        raise InvalidLetterError(f"letter {i!r} out of range [0, {p})")
    _check_cap(p, f.depth + 1, cap)
    zero = Scalar.zero(p)
    out = [zero] * (p ** (f.depth + 1))
    pos = i
    for v in f.values:
        if not v.is_zero():
            out[pos] = v.mul_root_p_power(1)
        pos += p
    return StepFunction._raw(p, f.depth + 1, tuple(out))


def apply_annihilation(i: int, f: StepFunction) -> StepFunction:
    """A_i f: value p^{−1/2}·f(i + p·m) at index m; constants scale."""
    p = f.p
    if not isinstance(i, int) or not 0 <= i < p:
        raise InvalidLetterError(f"letter {i!r} out of range [0, {p})")
    if f.depth == 0:
        return StepFunction._raw(p, 0, (f.values[0].mul_root_p_power(-1),))
    vals = f.values
    out = tuple(vals[i + p * m].mul_root_p_power(-1)
                for m in range(p ** (f.depth - 1)))
    return StepFunction._raw(p, f.depth - 1, out)


@dataclass(frozen=True)
class OperatorWord:
    """A product of ladder factors; factors[0] is outermost (applied last)."""

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for kind, letter in self.factors:
            if kind not in (CREATE, ANNIHILATE):
                raise ValueError(f"unknown factor kind {kind!r}")
            if not isinstance(letter, int) or letter < 0:
                raise InvalidLetterError(f"bad letter {letter!r}")

    def __str__(self):
        return " ".join(f"a{letter}*" if kind == CREATE else f"a{letter}"
                        for kind, letter in self.factors)

    @classmethod
    def state_monomial(cls, I: Word, J: Word) -> "OperatorWord":
        """A†_I A_J: creators for I (last letter outermost), then A_J = (A†_J)†."""
        creators = tuple((CREATE, i) for i in reversed(I))
        annihilators = tuple((ANNIHILATE, j) for j in J)
        return cls(creators + annihilators)


def parse_operator_word(text: str) -> OperatorWord:
    """Parse 'a1* a0* a1' (leftmost factor outermost, * marks creators)."""
    factors = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "a":
            raise OperatorParseError(
                f"expected 'a', found {text[pos]!r}", pos)
        start = pos
        pos += 1
        digits = ""
        while pos < n and text[pos].isdigit():
            digits += text[pos]
            pos += 1
        if not digits:
            raise OperatorParseError("expected a letter index after 'a'", pos)
        kind = ANNIHILATE
        if pos < n and text[pos] == "*":
            kind = CREATE
            pos += 1
        if pos < n and not text[pos].isspace():
            raise OperatorParseError(
                f"unexpected character {text[pos]!r}", pos)
        factors.append((kind, int(digits)))
    return OperatorWord(tuple(factors))


def apply_operator_word(w: OperatorWord, f: StepFunction,
                        cap: int = VALUE_CAP) -> StepFunction:
    """Compose the factors right-to-left (last factor acts first)."""
    for kind, letter in reversed(w.factors):
        if letter >= f.p:
            raise InvalidLetterError(
                f"letter {letter} out of range [0, {f.p})")
        if kind == CREATE:
            f = apply_creation(letter, f, cap)
        else:
            f = apply_annihilation(letter, f)
    return f


def creation_chain(p: int, I: Word, f: StepFunction | None = None,
                   cap: int = VALUE_CAP) -> StepFunction:
    """A†_I f = A†_{i_{k−1}}···A†_{i₀} f (defaults to the constant 1)."""
    if f is None:
        f = StepFunction.constant(p, 1)
    for i in I:  # rightmost factor A†_{i₀} acts first
        f = apply_creation(i, f, cap)
    return f


def gns_state(p: int, I: Word, J: Word) -> Scalar:
    """⟨A†_I A_J⟩ computed as ∫ (A†_I A_J·1) dμ, self-checked.

    The integral must equal p^{−(|I|+|J|)/2} exactly; a disagreement
    raises SelfCheckError, since the two paths are each other's oracle.
    """
    validate_prime(p)
    I = validate_word(I, p)
    J = validate_word(J, p)
    word = OperatorWord.state_monomial(I, J)
    result = apply_operator_word(word, StepFunction.constant(p, 1))
    value = result.integrate()
    expected = Scalar.root_p_power(p, -(len(I) + len(J)))
    if value != expected:
        raise SelfCheckError(
            f"state of A†_{word_str(I) or 'Ω'} A_{word_str(J) or 'Ω'}: "
            f"integral gave {value.pretty()}, closed form "
            f"{expected.pretty()}")
    return value


def cyclicity_basis(p: int, k: int, cap: int = VALUE_CAP) -> list[StepFunction]:
    """{A†_I·1 : |I| = k}, verified to be p^{k/2} × the depth-k indicators.

    The creation chain on the constant function reaches every depth-k
    coset (with msd-first centers), which is exactly why the constant
    function is cyclic at finite depth.
    """
    validate_prime(p)
    _check_cap(p, k, cap)
    basis = []
    scale = Scalar.root_p_power(p, k)
    for I in words_of_length(p, k):
        g = creation_chain(p, I)
        expected = make_indicator(word_to_center(p, I, "msd")).scale(scale)
        if g != expected:
            raise SelfCheckError(
                f"A†_{word_str(I)}·1 is not p^{k}/2-scaled indicator")
        basis.append(g)
    return basis
