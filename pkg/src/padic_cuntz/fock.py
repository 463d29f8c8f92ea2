"""Truncated free (Boltzmann) Fock space over p letters.

Basis words are tuples of letters (orthonormal); coefficients are
polynomials in the formal eigenvalue parameter λ over the exact scalar
field.  λ stays formal everywhere — the pairing limits evaluate monomials
at λ = √p only at the very end, inside Q(√p).

Two ladder pairs act on words:

* ``fock_create``/``fock_annihilate`` append / strip the LAST letter
  (latest-applied creator) — the left regular action;
* ``af_create``/``af_annihilate`` prepend / strip the FIRST letter
  (earliest-applied creator) — right multiplication, the "antifock"
  action used by the coherent-state T-operators.

Creation beyond a vector's truncation length drops the word and counts it
in the result's ``spilled`` tally (truncation artifacts are themselves
assertion targets, so they are data, not errors).
"""

from __future__ import annotations

from .errors import InvalidLetterError
from .scalars import Scalar, validate_prime
from .words import Word, word_str

_EXP_KEY_ERR = "λ exponents must be nonnegative integers"


class LambdaPoly:
    """Polynomial in λ with Scalar coefficients; no stored zeros."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: dict[int, Scalar] | None = None):
        self.p = p
        cleaned: dict[int, Scalar] = {}
        for n, c in (coeffs or {}).items():
            if not isinstance(n, int) or n < 0:
                raise ValueError(_EXP_KEY_ERR)
            if not c.is_zero():
                cleaned[n] = c
        self.coeffs = cleaned

    @classmethod
    def _raw(cls, p: int, coeffs: dict[int, Scalar]) -> "LambdaPoly":
        poly = object.__new__(cls)
        poly.p = p
        poly.coeffs = coeffs
        return poly

    @classmethod
    def zero(cls, p: int) -> "LambdaPoly":
        return cls._raw(p, {})

    @classmethod
    def constant(cls, p: int, c: Scalar) -> "LambdaPoly":
        return cls._raw(p, {} if c.is_zero() else {0: c})

    @classmethod
    def monomial(cls, p: int, exp: int, c: Scalar) -> "LambdaPoly":
        if exp < 0:
            raise ValueError(_EXP_KEY_ERR)
        return cls._raw(p, {} if c.is_zero() else {exp: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LambdaPoly") -> "LambdaPoly":
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            cur = out.get(n)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(n, None)
            else:
                out[n] = s
        return LambdaPoly._raw(self.p, out)

    def __sub__(self, other: "LambdaPoly") -> "LambdaPoly":
        return self + (-other)

    def __neg__(self) -> "LambdaPoly":
        return LambdaPoly._raw(self.p, {n: -c for n, c in self.coeffs.items()})

    def __mul__(self, other: "LambdaPoly") -> "LambdaPoly":
        out: dict[int, Scalar] = {}
        for n1, c1 in self.coeffs.items():
            for n2, c2 in other.coeffs.items():
                n = n1 + n2
                prod = c1 * c2
                cur = out.get(n)
                s = prod if cur is None else cur + prod
                if s.is_zero():
                    out.pop(n, None)
                else:
                    out[n] = s
        return LambdaPoly._raw(self.p, out)

    def scale(self, c: Scalar) -> "LambdaPoly":
        if c.is_zero():
            return LambdaPoly.zero(self.p)
        return LambdaPoly._raw(self.p,
                               {n: v * c for n, v in self.coeffs.items()})

    def shift(self, k: int) -> "LambdaPoly":
        """Multiply by λ^k (k may be negative if no exponent drops below 0)."""
        if not self.coeffs:
            return self
        if k == 0:
            return self
        if k < 0 and min(self.coeffs) + k < 0:
            raise ValueError("λ shift would create a negative exponent")
        return LambdaPoly._raw(self.p,
                               {n + k: c for n, c in self.coeffs.items()})

    def conjugate(self) -> "LambdaPoly":
        """λ is a real formal parameter: conjugate coefficients only."""
        return LambdaPoly._raw(
            self.p, {n: c.conjugate() for n, c in self.coeffs.items()})

    def eval_root_p(self) -> Scalar:
        """Exact value at λ = √p (each λ^n becomes p^{n/2} in Q(√p))."""
        total = Scalar.zero(self.p)
        for n, c in self.coeffs.items():
            total = total + c.mul_root_p_power(n)
        return total

    def coefficient(self, exp: int) -> Scalar:
        return self.coeffs.get(exp, Scalar.zero(self.p))

    def __eq__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "<λ-poly 0>"
        terms = [f"λ^{n}·({c.pretty()})" for n, c in sorted(self.coeffs.items())]
        return f"<λ-poly {' + '.join(terms)}>"

    def to_json(self) -> dict:
        return {str(n): c.to_json() for n, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, p: int, data: dict) -> "LambdaPoly":
        return cls(p, {int(n): Scalar.from_json(p, c) for n, c in data.items()})


class FockVector:
    """Finite-support map word → λ-polynomial, with optional truncation.

    ``truncation`` is the maximum word length kept by creation operators;
    ``spilled`` counts words dropped at that boundary so far.  Equality
    compares p and terms only (spill and truncation are bookkeeping).
    """

    __slots__ = ("p", "terms", "truncation", "spilled")

    def __init__(self, p: int, terms: dict[Word, LambdaPoly] | None = None,
                 truncation: int | None = None, spilled: int = 0):
        validate_prime(p)
        cleaned: dict[Word, LambdaPoly] = {}
        for w, poly in (terms or {}).items():
            w = tuple(w)
            for d in w:
                if not 0 <= d < p:
                    raise InvalidLetterError(
                        f"letter {d!r} out of range [0, {p})")
            if not poly.is_zero():
                cleaned[w] = poly
        self.p = p
        self.terms = cleaned
        self.truncation = truncation
        self.spilled = spilled

    @classmethod
    def _raw(cls, p, terms, truncation, spilled) -> "FockVector":
        v = object.__new__(cls)
        v.p = p
        v.terms = terms
        v.truncation = truncation
        v.spilled = spilled
        return v

    @classmethod
    def zero(cls, p: int, truncation: int | None = None) -> "FockVector":
        return cls(p, {}, truncation)

    @classmethod
    def vacuum(cls, p: int, truncation: int | None = None) -> "FockVector":
        """Ω: the empty word with coefficient 1."""
        one = LambdaPoly.constant(p, Scalar.one(p))
        return cls(p, {(): one}, truncation)

    @classmethod
    def basis(cls, p: int, word: Word,
              truncation: int | None = None) -> "FockVector":
        one = LambdaPoly.constant(p, Scalar.one(p))
        return cls(p, {tuple(word): one}, truncation)

    def coefficient(self, word: Word) -> LambdaPoly:
        return self.terms.get(tuple(word), LambdaPoly.zero(self.p))

    def is_zero(self) -> bool:
        return not self.terms

    def support_lengths(self) -> set[int]:
        return {len(w) for w in self.terms}

    def restrict_lengths(self, lo: int = 0,
                         hi: int | None = None) -> "FockVector":
        """Sub-vector with word lengths in [lo, hi]."""
        out = {w: c for w, c in self.terms.items()
               if len(w) >= lo and (hi is None or len(w) <= hi)}
        return FockVector._raw(self.p, out, self.truncation, self.spilled)

    def with_truncation(self, truncation: int | None) -> "FockVector":
        """Same terms under a different creation-truncation length."""
        return FockVector._raw(self.p, self.terms, truncation, self.spilled)

    # -- linear structure --------------------------------------------------

    def _merge_trunc(self, other: "FockVector") -> int | None:
        if self.truncation is None:
            return other.truncation
        if other.truncation is None:
            return self.truncation
        return min(self.truncation, other.truncation)

    def __add__(self, other: "FockVector") -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("mixed primes in Fock sum")
        out = dict(self.terms)
        for w, poly in other.terms.items():
            cur = out.get(w)
            s = poly if cur is None else cur + poly
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return FockVector._raw(self.p, out, self._merge_trunc(other),
                               self.spilled + other.spilled)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __neg__(self) -> "FockVector":
        return FockVector._raw(self.p, {w: -c for w, c in self.terms.items()},
                               self.truncation, self.spilled)

    def scale(self, factor) -> "FockVector":
        """Scale by a Scalar or by a LambdaPoly (e.g. multiply by λ)."""
        if isinstance(factor, Scalar):
            factor = LambdaPoly.constant(self.p, factor)
        if factor.is_zero():
            return FockVector.zero(self.p, self.truncation)
        out = {}
        for w, poly in self.terms.items():
            prod = poly * factor
            if not prod.is_zero():
                out[w] = prod
        return FockVector._raw(self.p, out, self.truncation, self.spilled)

    def shift_lambda(self, k: int) -> "FockVector":
        return FockVector._raw(
            self.p, {w: c.shift(k) for w, c in self.terms.items()},
            self.truncation, self.spilled)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
        shown = ", ".join(f"'{word_str(w)}': {c!r}" for w, c in items[:6])
        if len(items) > 6:
            shown += ", …"
        return f"<FockVector p={self.p} {{{shown}}} spilled={self.spilled}>"

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
        return {"p": self.p,
                "terms": {word_str(w): poly.to_json() for w, poly in items}}

    @classmethod
    def from_json(cls, data: dict) -> "FockVector":
        from .words import parse_word
        p = validate_prime(data["p"])
        terms = {parse_word(w, p): LambdaPoly.from_json(p, poly)
                 for w, poly in data["terms"].items()}
        return cls(p, terms)


def _check_letter(i: int, p: int) -> None:
    if not isinstance(i, int) or not 0 <= i < p:
        raise InvalidLetterError(f"letter {i!r} out of range [0, {p})")


def fock_create(i: int, v: FockVector) -> FockVector:
    """A†_i: append i as the last (latest-applied) letter of every word."""
    _check_letter(i, v.p)
    cap = v.truncation
    if cap is None:
        out = {w + (i,): poly for w, poly in v.terms.items()}
        spilled = v.spilled
    else:
        out = {w + (i,): poly for w, poly in v.terms.items() if len(w) < cap}
        spilled = v.spilled + len(v.terms) - len(out)
    return FockVector._raw(v.p, out, cap, spilled)


def fock_annihilate(i: int, v: FockVector) -> FockVector:
    """A_i: keep words whose last letter is i, stripped; Ω goes to 0."""
    _check_letter(i, v.p)
    out = {w[:-1]: poly for w, poly in v.terms.items() if w and w[-1] == i}
    return FockVector._raw(v.p, out, v.truncation, v.spilled)


def af_create(i: int, v: FockVector) -> FockVector:
    """Right multiplication by A†_i: prepend i as the first letter."""
    _check_letter(i, v.p)
    cap = v.truncation
    if cap is None:
        out = {(i,) + w: poly for w, poly in v.terms.items()}
        spilled = v.spilled
    else:
        out = {(i,) + w: poly for w, poly in v.terms.items() if len(w) < cap}
        spilled = v.spilled + len(v.terms) - len(out)
    return FockVector._raw(v.p, out, cap, spilled)


def af_annihilate(i: int, v: FockVector) -> FockVector:
    """Right action of A_i: keep words whose first letter is i, stripped."""
    _check_letter(i, v.p)
    out = {w[1:]: poly for w, poly in v.terms.items() if w and w[0] == i}
    return FockVector._raw(v.p, out, v.truncation, v.spilled)


def annihilate_sum(v: FockVector) -> FockVector:
    """(Σ_i A_i)·v — every nonempty word stripped of its last letter."""
    out: dict[Word, LambdaPoly] = {}
    for w, poly in v.terms.items():
        if not w:
            continue
        key = w[:-1]
        cur = out.get(key)
        s = poly if cur is None else cur + poly
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return FockVector._raw(v.p, out, v.truncation, v.spilled)


def fock_inner(v: FockVector, w: FockVector) -> LambdaPoly:
    """⟨v, w⟩ = Σ_I conj(v_I)·w_I over the orthonormal word basis."""
    if v.p != w.p:
        raise ValueError("mixed primes in Fock inner product")
    small, large, conj_small = ((v, w, True) if len(v.terms) <= len(w.terms)
                                else (w, v, False))
    total = LambdaPoly.zero(v.p)
    for key, poly in small.terms.items():
        other = large.terms.get(key)
        if other is None:
            continue
        if conj_small:
            total = total + poly.conjugate() * other
        else:
            total = total + other.conjugate() * poly
    return total


def fock_inner_by_length(v: FockVector, w: FockVector) -> dict[int, LambdaPoly]:
    """Per-word-length contributions to ⟨v, w⟩ (for stabilization limits)."""
    if v.p != w.p:
        raise ValueError("mixed primes in Fock inner product")
    small, large, conj_small = ((v, w, True) if len(v.terms) <= len(w.terms)
                                else (w, v, False))
    out: dict[int, LambdaPoly] = {}
    for key, poly in small.terms.items():
        other = large.terms.get(key)
        if other is None:
            continue
        term = (poly.conjugate() * other if conj_small
                else other.conjugate() * poly)
        k = len(key)
        cur = out.get(k)
        out[k] = term if cur is None else cur + term
    return out
