"""Free coherent states of finite type and their exact pairing limits.

A free coherent state is a formal eigenvector Ψ = Σ_I λ^{|I|} Ψ_I A†_I Ω
of the summed annihilator, determined by coefficients satisfying the
cascade condition Ψ_I = Σ_i Ψ_{Ii}.  Finite-type states are stored through
their generator: a step function whose disk integrals ARE the cascade
coefficients (first word letter = least significant disk digit).  The
generator is also the image of the state under the isomorphism onto test
functions, so the L² pairing of generators is the exact value of the
renormalized pairing limit — which this module computes independently as
the stabilized tail of per-word-length contributions evaluated at λ = √p,
turning the λ → √p−0 limit into an assertable identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (CapExceededError, NotStabilizedError, SelfCheckError)
from .fock import (FockVector, LambdaPoly, af_annihilate, af_create,
                   annihilate_sum, fock_create, fock_inner_by_length)
from .representation import apply_annihilation, apply_creation
from .scalars import Q, Scalar, validate_prime
from .stepfunctions import (VALUE_CAP, StepFunction, make_indicator,
                            word_to_center)
from .words import (Word, count_words_up_to, validate_word, words_of_length,
                    words_up_to)


class CoherentState:
    """Finite-type free coherent state, stored as its generating step function."""

    __slots__ = ("generator",)

    def __init__(self, generator: StepFunction):
        if not isinstance(generator, StepFunction):
            raise TypeError("generator must be a StepFunction")
        self.generator = generator

    @property
    def p(self) -> int:
        return self.generator.p

    @property
    def depth(self) -> int:
        return self.generator.depth

    def coefficient(self, I: Word) -> Scalar:
        """Ψ_I: the integral of the generator over the disk addressed by I."""
        I = validate_word(I, self.p)
        p = self.p
        k = len(I)
        K = max(self.depth, k)
        g = self.generator.refine(K)
        center = sum(d * p ** j for j, d in enumerate(I))
        step = p ** k
        total = g.values[center]
        for t in range(1, p ** (K - k)):
            total = total + g.values[center + t * step]
        return total.scale(Q(1, p ** K))

    def coefficients_of_length(self, k: int,
                               cap: int = VALUE_CAP) -> dict[Word, Scalar]:
        """All nonzero Ψ_I with |I| = k, keyed by word."""
        p = self.p
        K = max(self.depth, k)
        g = self.generator.refine(K, cap)
        vals = g.values
        scale = Q(1, p ** K)
        step = p ** k
        reps = p ** (K - k)
        powers = [p ** j for j in range(k)]
        out: dict[Word, Scalar] = {}
        for w in words_of_length(p, k):
            c = 0
            for j, d in enumerate(w):
                if d:
                    c += d * powers[j]
            v = vals[c]
            for t in range(1, reps):
                v = v + vals[c + t * step]
            if not v.is_zero():
                out[w] = v.scale(scale)
        return out

    def vacuum_coefficient(self) -> Scalar:
        return self.generator.integrate()

    def is_zero(self) -> bool:
        return self.generator.is_zero()

    def __add__(self, other):
        if not isinstance(other, CoherentState):
            return NotImplemented
        return CoherentState(self.generator + other.generator)

    def __sub__(self, other):
        if not isinstance(other, CoherentState):
            return NotImplemented
        return CoherentState(self.generator - other.generator)

    def scale(self, c) -> "CoherentState":
        return CoherentState(self.generator.scale(c))

    def __mul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CoherentState):
            return NotImplemented
        return self.generator == other.generator

    def __repr__(self):
        return f"<CoherentState {self.generator!r}>"

    def to_json(self) -> dict:
        data = self.generator.to_json()
        data["kind"] = "coherent"
        return data

    @classmethod
    def from_json(cls, data: dict) -> "CoherentState":
        return cls(StepFunction.from_json(data))


def coherent_from_step(f: StepFunction) -> CoherentState:
    """Every test function generates a finite-type free coherent state."""
    return CoherentState(f)


def phi_map(s: CoherentState) -> StepFunction:
    """The isomorphism onto test functions: a finite-type state ↦ its generator."""
    return s.generator


def phi_inverse(f: StepFunction) -> CoherentState:
    return coherent_from_step(f)


def indicator_state(p: int, I: Word) -> CoherentState:
    """The distinguished state generated by p^{|I|} × the indicator of disk I."""
    validate_prime(p)
    I = validate_word(I, p)
    gen = make_indicator(word_to_center(p, I, "lsd"))
    return CoherentState(gen.scale(Scalar.rational(p, p ** len(I))))


def to_fock_truncated(s: CoherentState, N: int,
                      cap: int = VALUE_CAP) -> FockVector:
    """Σ_{|I| ≤ N} λ^{|I|} Ψ_I · (word I), truncated at word length N."""
    p = s.p
    if count_words_up_to(p, N) > cap:
        raise CapExceededError(
            f"{count_words_up_to(p, N)} words at truncation {N} exceeds cap")
    terms: dict[Word, LambdaPoly] = {}
    for k in range(N + 1):
        for w, psi in s.coefficients_of_length(k).items():
            terms[w] = LambdaPoly.monomial(p, k, psi)
    return FockVector._raw(p, terms, N, 0)


_ONE_HAT_CACHE: dict[tuple[int, int], FockVector] = {}


def _one_hat(p: int, N: int) -> FockVector:
    """Truncated expansion of the state generated by the constant 1 (cached)."""
    key = (p, N)
    v = _ONE_HAT_CACHE.get(key)
    if v is None:
        v = to_fock_truncated(indicator_state(p, ()), N)
        _ONE_HAT_CACHE[key] = v
    return v


def build_X_truncated(p: int, I: Word, N: int,
                      cap: int = VALUE_CAP) -> FockVector:
    """Literal expansion of the distinguished state X_I through length N.

    Sums λ^k(p^{−1}ΣA†_i)^k on top of λ^{|I|}A†_IΩ for k ≤ N−|I|, plus the
    annihilator tail λ^{−l}(ΣA_i)^l λ^{|I|}A†_IΩ for l = 1..|I| (total λ
    exponent |I|−l ≥ 0).  The result is cross-checked word by word against
    the generator-derived coefficients of ``indicator_state``; any
    disagreement raises SelfCheckError.
    """
    validate_prime(p)
    I = validate_word(I, p)
    if N < len(I):
        raise ValueError(f"truncation {N} below word length {len(I)}")
    if count_words_up_to(p, N) > cap:
        raise CapExceededError(f"truncation {N} exceeds cap at p={p}")
    one = Scalar.one(p)
    seed = FockVector(p, {I: LambdaPoly.monomial(p, len(I), one)},
                      truncation=N)
    total = seed
    inv_p = Scalar.rational(p, Q(1, p))
    cur = seed
    for _ in range(N - len(I)):
        spread = FockVector.zero(p, N)
        for i in range(p):
            spread = spread + fock_create(i, cur)
        cur = spread.scale(inv_p).shift_lambda(1)
        total = total + cur
    cur = seed
    for _ in range(len(I)):
        cur = annihilate_sum(cur).shift_lambda(-1)
        total = total + cur

    expected: dict[Word, LambdaPoly] = {}
    oracle = indicator_state(p, I)
    for k in range(N + 1):
        for w, psi in oracle.coefficients_of_length(k).items():
            expected[w] = LambdaPoly.monomial(p, k, psi)
    if total.terms != expected:
        raise SelfCheckError(
            f"expansion of X_{I} disagrees with generator coefficients")
    return total


def eigen_residual(s: CoherentState, N: int) -> FockVector:
    """(Σ_i A_i − λ) applied to the truncated expansion of s.

    The cascade condition makes every word of length < N cancel exactly;
    what remains sits at the truncation boundary with coefficient
    −λ^{N+1}·Ψ_J on each length-N word J.
    """
    if N < 1:
        raise ValueError("truncation must be at least 1")
    v = to_fock_truncated(s, N)
    return annihilate_sum(v) - v.shift_lambda(1)


# -- the renormalized pairing as an exact stabilization limit -----------------


@dataclass(frozen=True)
class PairingSeries:
    """Per-word-length contributions c_k with λ² evaluated at p.

    For finite-type states c_k is exactly constant once k reaches the
    larger generator depth; the stabilized value is the renormalized
    pairing (the Abel limit of an eventually-constant geometric series).
    """

    terms: tuple[Scalar, ...]
    stabilized_at: int
    value: Scalar

    def to_json(self) -> dict:
        return {"terms": [t.to_json() for t in self.terms],
                "stabilized_at": self.stabilized_at,
                "value": self.value.to_json()}


def _stabilize(terms: list[Scalar], context: str) -> tuple[int, Scalar]:
    """Smallest k₀ with terms[k₀:] constant; needs ≥ 2 corroborating terms."""
    if len(terms) < 2:
        raise NotStabilizedError(f"{context}: series too short to stabilize")
    tail = terms[-1]
    k0 = len(terms) - 1
    while k0 > 0 and terms[k0 - 1] == tail:
        k0 -= 1
    if k0 >= len(terms) - 1:
        raise NotStabilizedError(
            f"{context}: no constant tail in {len(terms)} terms")
    return k0, tail


def pairing_series(a: CoherentState, b: CoherentState,
                   margin: int = 2) -> PairingSeries:
    """c_k = p^k Σ_{|I|=k} conj(Ψᵃ_I)·Ψᵇ_I, through max depth + margin."""
    if a.p != b.p:
        raise ValueError("mixed primes in pairing")
    p = a.p
    kmax = max(a.depth, b.depth) + max(margin, 2)
    terms = []
    for k in range(kmax + 1):
        ta = a.coefficients_of_length(k)
        tb = b.coefficients_of_length(k)
        total = Scalar.zero(p)
        small, other, conj_small = ((ta, tb, True) if len(ta) <= len(tb)
                                    else (tb, ta, False))
        for w, ca in small.items():
            cb = other.get(w)
            if cb is None:
                continue
            total = total + (ca.conjugate() * cb if conj_small
                             else cb.conjugate() * ca)
        terms.append(total.scale(Q(p) ** k))
    k0, value = _stabilize(terms, "renormalized pairing")
    return PairingSeries(tuple(terms), k0, value)


def renormalized_pairing(a: CoherentState, b: CoherentState) -> Scalar:
    """The λ → √p−0 limit of (1 − λ²/p)⟨a, b⟩, exactly.

    Equals the L² pairing of the two generators for every finite-type
    pair; the stabilization route computes it without touching them.
    """
    return pairing_series(a, b).value


# -- the T-representation on coherent states ---------------------------------


def t_dagger(i: int, s: CoherentState) -> CoherentState:
    """T†_i: generator-level creation (coefficients gain p^{−1/2}, prepend i)."""
    return CoherentState(apply_creation(i, s.generator))


def t_op(i: int, s: CoherentState) -> CoherentState:
    """T_i: generator-level annihilation (Ψ'_I = √p·Ψ_{iI})."""
    return CoherentState(apply_annihilation(i, s.generator))


def t_dagger_fock(i: int, s: CoherentState, N: int) -> FockVector:
    """Word-level T†_i: p^{−1/2}(λ·[right A†_i on the expansion] + Ψ_∅·Ω).

    Independent of the generator route; ``to_fock_truncated(t_dagger(i, s), N)``
    must coincide with this exactly.
    """
    if N < 1:
        raise ValueError("truncation must be at least 1")
    p = s.p
    base = to_fock_truncated(s, N - 1).with_truncation(N)
    created = af_create(i, base).shift_lambda(1)
    omega = FockVector(
        p, {(): LambdaPoly.constant(p, s.vacuum_coefficient())}, N)
    return (created + omega).scale(Scalar.root_p_power(p, -1))


def t_op_fock(i: int, s: CoherentState, N: int) -> FockVector:
    """Word-level T_i: √p·λ^{−1}·[right A_i on the expansion]."""
    base = to_fock_truncated(s, N + 1)
    stripped = af_annihilate(i, base)
    return stripped.shift_lambda(-1).scale(
        Scalar.root_p_power(s.p, 1)).with_truncation(N)


def leibnitz_residuals(s: CoherentState, N: int) -> list[FockVector]:
    """Both sides of Σ_i A_i A†_Φ = λ A†_Φ + Φ_∅ Σ_i A_i, at truncation N.

    Evaluates the identity on the vacuum and on each length-1 basis word
    (p+1 residual vectors, in that order).  Each residual is supported
    only at the truncation boundary length N; everything shorter cancels
    exactly through the cascade condition.
    """
    if N < 1:
        raise ValueError("truncation must be at least 1")
    p = s.p
    v = to_fock_truncated(s, N)
    psi0 = s.vacuum_coefficient()
    residuals = [annihilate_sum(v) - v.shift_lambda(1)]
    omega_term = FockVector(p, {(): LambdaPoly.constant(p, psi0)}, N)
    for j in range(p):
        applied = af_create(j, v)  # A†_Φ on the basis word (j)
        lhs = annihilate_sum(applied)
        rhs = applied.shift_lambda(1) + omega_term
        residuals.append(lhs - rhs)
    return residuals


def af_state_value(p: int, I: Word, J: Word, N: int | None = None,
                   margin: int = 3) -> Scalar:
    """⟨1̂, AF(A†_I A_J) 1̂⟩ via the stabilized per-length series.

    1̂ is the truncated expansion of the constant-generator state; the
    right ladder operators realize AF.  The stabilized value equals
    p^{−(|I|+|J|)/2}, the same number the state integral produces.
    """
    validate_prime(p)
    I = validate_word(I, p)
    J = validate_word(J, p)
    if N is None:
        N = len(I) + len(J) + margin
    needed = len(I) + len(J) + max(margin, 2)
    one_hat = _one_hat(p, N)
    v = one_hat
    for j in reversed(J):   # rightmost factor of AF(A_J) acts first
        v = af_annihilate(j, v)
    for i in I:             # rightmost factor of AF(A†_I) is AF(A†_{i₀})
        v = af_create(i, v)
    by_len = fock_inner_by_length(one_hat, v)
    if not by_len:
        raise NotStabilizedError(
            f"empty pairing series at N={N}; need N ≥ {needed}")
    top = max(by_len)
    zero = LambdaPoly.zero(p)
    terms = [by_len.get(m, zero).eval_root_p() for m in range(top + 1)]
    try:
        _, value = _stabilize(terms, "antifock state series")
    except NotStabilizedError:
        raise NotStabilizedError(
            f"antifock series did not stabilize at N={N}; "
            f"need N ≥ {needed}") from None
    return value


def af_relation_residual(i: int, s: CoherentState,
                         N: int) -> tuple[FockVector, FockVector]:
    """Residuals of the two bridges between T-operators and the AF action.

    first:  to_fock(T†_i s) − p^{−1/2}λ·af_create(i, ·) − p^{−1/2}Ψ_∅·Ω;
    second: λ·to_fock(T_i s) − √p·af_annihilate(i, ·) (denominator cleared).
    Both vanish on every word strictly below the truncation boundary N.
    """
    if N < 1:
        raise ValueError("truncation must be at least 1")
    p = s.p
    v = to_fock_truncated(s, N)
    inv_root = Scalar.root_p_power(p, -1)
    first = (to_fock_truncated(t_dagger(i, s), N)
             - af_create(i, v).shift_lambda(1).scale(inv_root)
             - FockVector(p, {(): LambdaPoly.constant(
                 p, s.vacuum_coefficient() * inv_root)}, N))
    second = (to_fock_truncated(t_op(i, s), N).shift_lambda(1)
              - af_annihilate(i, v).scale(Scalar.root_p_power(p, 1)))
    return first, second


def gram_matrices(p: int, maxlen: int, margin: int = 2):
    """Gram data for {X_I : |I| ≤ maxlen} along both routes.

    Returns (basis words, stabilization Gram, L² Gram, equal flag,
    largest stabilization index seen).  The two matrices agreeing entry
    by entry is the finite-type isomorphism statement.
    """
    validate_prime(p)
    basis = list(words_up_to(p, maxlen))
    states = [indicator_state(p, w) for w in basis]
    gens = [phi_map(s) for s in states]
    n = len(basis)
    ren = [[None] * n for _ in range(n)]
    l2 = [[None] * n for _ in range(n)]
    max_stab = 0
    for a in range(n):
        for b in range(n):
            series = pairing_series(states[a], states[b], margin)
            ren[a][b] = series.value
            if series.stabilized_at > max_stab:
                max_stab = series.stabilized_at
            l2[a][b] = gens[a].inner(gens[b])
    equal = all(ren[a][b] == l2[a][b] for a in range(n) for b in range(n))
    return basis, ren, l2, equal, max_stab
