"""Locally constant functions on the p-adic integers Z_p at uniform depth.

A depth-k step function stores p^k exact values, one per coset
d₀ + d₁p + … + d_{k−1}p^{k−1} + p^k·Z_p, indexed by n = Σ d_j p^j with d₀
the least significant digit.  Binary operations auto-refine both operands
to a common depth; refinement copies each value to its p children
(children of coset n at depth k are n + m·p^k, m ∈ [0, p)), which leaves
the Haar integral and the L² pairing unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceededError, InvalidDigitError
from .scalars import Q, Scalar, validate_prime
from .words import Word, validate_word

#: refuse to materialize more than this many values (refinement is exponential)
VALUE_CAP = 10_000_000


def _check_cap(p: int, depth: int, cap: int = VALUE_CAP) -> int:
    size = p ** depth
    if size > cap:
        raise CapExceededError(
            f"p^depth = {p}^{depth} = {size} values exceeds cap {cap}")
    return size


@dataclass(frozen=True)
class DiskAddress:
    """The disk D(c, p^{−k}) with c = Σ digits[j]·p^j; k = 0 is all of Z_p."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        for d in self.digits:
            if not isinstance(d, int) or not 0 <= d < self.p:
                raise InvalidDigitError(
                    f"disk digit {d!r} out of range [0, {self.p})")

    @property
    def depth(self) -> int:
        return len(self.digits)

    @property
    def center(self) -> int:
        return sum(d * self.p ** j for j, d in enumerate(self.digits))


def word_to_center(p: int, word: Word, convention: str) -> DiskAddress:
    """Read a word as a disk center under one of the two digit orders.

    'lsd' takes the first letter as the least significant digit (center
    Σ i_j p^j); 'msd' reverses the digits (center Σ i_j p^{k−1−j}).  The
    coherent-state side of the package uses lsd; creation chains acting
    on the constant function produce msd centers.
    """
    w = validate_word(word, p)
    if convention == "lsd":
        return DiskAddress(p, w)
    if convention == "msd":
        return DiskAddress(p, w[::-1])
    raise ValueError(f"convention must be 'lsd' or 'msd', got {convention!r}")


class StepFunction:
    """Immutable depth-k step function on Z_p with exact scalar values."""

    __slots__ = ("p", "depth", "values")

    def __init__(self, p: int, depth: int, values):
        validate_prime(p)
        vals = tuple(v if isinstance(v, Scalar) else Scalar.rational(p, v)
                     for v in values)
        if len(vals) != p ** depth:
            raise ValueError(
                f"need {p ** depth} values at depth {depth}, got {len(vals)}")
        for v in vals:
            if v.p != p:
                raise ValueError("value prime does not match function prime")
        self.p = p
        self.depth = depth
        self.values = vals

    @classmethod
    def _raw(cls, p: int, depth: int, values: tuple) -> "StepFunction":
        f = object.__new__(cls)
        f.p = p
        f.depth = depth
        f.values = values
        return f

    @classmethod
    def constant(cls, p: int, value=1) -> "StepFunction":
        validate_prime(p)
        v = value if isinstance(value, Scalar) else Scalar.rational(p, value)
        return cls._raw(p, 0, (v,))

    @classmethod
    def zero(cls, p: int, depth: int = 0) -> "StepFunction":
        validate_prime(p)
        z = Scalar.zero(p)
        return cls._raw(p, depth, (z,) * (p ** depth))

    # -- refinement -----------------------------------------------------

    def refine(self, k_new: int, cap: int = VALUE_CAP) -> "StepFunction":
        """Same function on Z_p represented at a deeper uniform depth."""
        if k_new < self.depth:
            raise ValueError(
                f"cannot refine depth {self.depth} down to {k_new}")
        if k_new == self.depth:
            return self
        _check_cap(self.p, k_new, cap)
        # index n at depth k_new belongs to coset n mod p^depth, so the
        # refined array is the old one tiled p^(k_new-depth) times
        return StepFunction._raw(
            self.p, k_new, self.values * (self.p ** (k_new - self.depth)))

    def _common(self, other: "StepFunction", cap: int = VALUE_CAP):
        if not isinstance(other, StepFunction) or other.p != self.p:
            raise ValueError("operands must be StepFunctions over the same p")
        k = max(self.depth, other.depth)
        return self.refine(k, cap), other.refine(k, cap)

    # -- integration / pairing -------------------------------------------

    def integrate(self) -> Scalar:
        """Normalized Haar integral: p^{−depth} · Σ values."""
        total = Scalar.zero(self.p)
        for v in self.values:
            if v.is_zero():
                continue
            total = total + v
        return total.scale(Q(1, self.p ** self.depth))

    def inner(self, other: "StepFunction", cap: int = VALUE_CAP) -> Scalar:
        """L² pairing p^{−k} Σ conj(f_n)·g_n; conjugate-linear in self."""
        f, g = self._common(other, cap)
        total = Scalar.zero(self.p)
        for a, b in zip(f.values, g.values):
            if a.is_zero() or b.is_zero():
                continue
            total = total + a.conjugate() * b
        return total.scale(Q(1, self.p ** f.depth))

    # -- linear structure -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        f, g = self._common(other)
        return StepFunction._raw(
            self.p, f.depth, tuple(a + b for a, b in zip(f.values, g.values)))

    def __sub__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        f, g = self._common(other)
        return StepFunction._raw(
            self.p, f.depth, tuple(a - b for a, b in zip(f.values, g.values)))

    def __neg__(self):
        return StepFunction._raw(self.p, self.depth,
                                 tuple(-v for v in self.values))

    def scale(self, c) -> "StepFunction":
        s = c if isinstance(c, Scalar) else Scalar.rational(self.p, c)
        if s.is_rational():
            q = s.ra
            return StepFunction._raw(self.p, self.depth,
                                     tuple(v.scale(q) for v in self.values))
        return StepFunction._raw(self.p, self.depth,
                                 tuple(v * s for v in self.values))

    def __mul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    # -- equality (semantic: as functions on Z_p) ---------------------------

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        if other.p != self.p:
            return False
        f, g = self._common(other)
        return f.values == g.values

    def __repr__(self):
        shown = ", ".join(v.pretty() for v in self.values[:8])
        if len(self.values) > 8:
            shown += ", …"
        return f"<StepFunction p={self.p} depth={self.depth} [{shown}]>"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "depth": self.depth,
                "values": [v.to_json() for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "StepFunction":
        p = validate_prime(data["p"])
        depth = data["depth"]
        values = [Scalar.from_json(p, v) for v in data["values"]]
        return cls(p, depth, values)


def make_indicator(address: DiskAddress, cap: int = VALUE_CAP) -> StepFunction:
    """Depth-k indicator of the addressed coset: 1 on it, 0 elsewhere."""
    p = validate_prime(address.p)
    k = address.depth
    _check_cap(p, k, cap)
    zero = Scalar.zero(p)
    vals = [zero] * (p ** k)
    vals[address.center] = Scalar.one(p)
    return StepFunction._raw(p, k, tuple(vals))


def indicator(p: int, digits, cap: int = VALUE_CAP) -> StepFunction:
    """Shorthand: indicator of the disk addressed by the given digits."""
    return make_indicator(DiskAddress(p, tuple(digits)), cap)


def constant(p: int, value=1) -> StepFunction:
    return StepFunction.constant(p, value)


def refine(f: StepFunction, k_new: int, cap: int = VALUE_CAP) -> StepFunction:
    return f.refine(k_new, cap)


def integrate(f: StepFunction) -> Scalar:
    return f.integrate()


def l2_inner(f: StepFunction, g: StepFunction,
             cap: int = VALUE_CAP) -> Scalar:
    return f.inner(g, cap)
