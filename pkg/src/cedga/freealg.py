"""Free graded unital associative algebras over a field.

A word is a tuple of generator names; the empty tuple is the unit word.
:class:`NCPoly` is a finite linear combination of words with nonzero
coefficients.  Words are ordered length-first, then lexicographically,
which fixes a canonical term order for printing and comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .fields import Field

Word = tuple


def word_key(w: Word):
    return (len(w), w)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


class NCPoly:
    """Element of the free algebra K<generators>."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: Field, terms: Mapping[Word, object] | None = None):
        self.field = field
        clean = {}
        if terms:
            for w, c in terms.items():
                c = field.reduce(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, terms: dict) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls, field: Field) -> "NCPoly":
        return cls._raw(field, {})

    @classmethod
    def const(cls, field: Field, c=1) -> "NCPoly":
        return cls(field, {(): field(c)})

    @classmethod
    def gen(cls, field: Field, name: str, c=1) -> "NCPoly":
        return cls(field, {(name,): field(c)})

    @classmethod
    def word(cls, field: Field, *names: str, c=1) -> "NCPoly":
        return cls(field, {tuple(names): field(c)})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, w: Word):
        return self.terms.get(tuple(w), self.field.zero)

    def items(self):
        """Terms in canonical order."""
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def constant_term(self):
        return self.terms.get((), self.field.zero)

    def generators(self) -> set:
        return {g for w in self.terms for g in w}

    def degrees(self, degree: Mapping[str, int]) -> set:
        """Set of degrees of the words present (empty for 0)."""
        return {sum(degree[g] for g in w) for w in self.terms}

    def homogeneous_degree(self, degree: Mapping[str, int]):
        """The common degree, or None if zero or inhomogeneous."""
        ds = self.degrees(degree)
        return ds.pop() if len(ds) == 1 else None

    def part(self, length: int) -> "NCPoly":
        return NCPoly._raw(self.field, {w: c for w, c in self.terms.items() if len(w) == length})

    # arithmetic
    def _check(self, other: "NCPoly"):
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return NCPoly.const(self.field, other)

    def __add__(self, other) -> "NCPoly":
        other = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = F.reduce(out.get(w, 0) + c)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly._raw(F, out)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        F = self.field
        return NCPoly._raw(F, {w: F.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other) -> "NCPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "NCPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "NCPoly":
        F = self.field
        c = F(c)
        if not c:
            return NCPoly.zero(F)
        return NCPoly._raw(F, {w: F.reduce(v * c) for w, v in self.terms.items()})

    def __mul__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        F = self.field
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return NCPoly(F, out)

    def __rmul__(self, other) -> "NCPoly":
        return self.scale(other)

    def __pow__(self, n: int) -> "NCPoly":
        out = NCPoly.const(self.field)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, int):
            return self == NCPoly.const(self.field, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"NCPoly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(x: NCPoly, sep: str = "*") -> str:
    """Render in the ``.dga`` expression syntax, e.g. ``1 - w3*z3``."""
    if not x.terms:
        return "0"
    F = x.field
    parts = []
    for w, c in x.items():
        neg = F.char == 0 and c < 0
        mag = -c if neg else c
        body = sep.join(w)
        if not w:
            s = F.render(mag)
        elif mag == 1:
            s = body
        else:
            s = f"{F.render(mag)}{sep}{body}"
        parts.append(("-" if neg else "+", s))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, s in parts[1:]:
        out += f" {sgn} {s}"
    return out


def linear_combination(field: Field, pairs: Iterable) -> NCPoly:
    out: dict = {}
    for c, w in pairs:
        w = (w,) if isinstance(w, str) else tuple(w)
        out[w] = out.get(w, 0) + field(c)
    return NCPoly(field, out)


class UnknownGenerator(KeyError):
    pass


class Derivation:
    """Graded derivation of degree ``shift`` given on generators.

    Extends by D(uv) = D(u) v + (-1)^{|u| shift} u D(v); for the odd
    differentials used here that is the usual (-1)^{|u|} Koszul sign.
    """

    def __init__(self, field: Field, degree: Mapping[str, int], images: Mapping[str, NCPoly], shift: int = -1):
        self.field = field
        self.degree = dict(degree)
        self.images = {g: images.get(g, NCPoly.zero(field)) for g in self.degree}
        self.shift = shift
        extra = set(images) - set(self.degree)
        if extra:
            raise UnknownGenerator(f"derivation images for undeclared generators {sorted(extra)}")

    def on_word(self, w: Word) -> NCPoly:
        F = self.field
        out: dict = {}
        left_deg = 0
        odd = self.shift % 2 == 1
        for i, g in enumerate(w):
            try:
                img = self.images[g]
            except KeyError:
                raise UnknownGenerator(g) from None
            if img.terms:
                s = -1 if (odd and left_deg % 2) else 1
                pre, post = w[:i], w[i + 1:]
                for v, c in img.terms.items():
                    key = pre + v + post
                    out[key] = out.get(key, 0) + s * c
            left_deg += self.degree[g]
        return NCPoly(F, out)

    def __call__(self, x: NCPoly) -> NCPoly:
        F = self.field
        out: dict = {}
        for w, c in x.terms.items():
            for v, d in self.on_word(w).terms.items():
                out[v] = out.get(v, 0) + c * d
        return NCPoly(F, out)


class AlgebraMap:
    """Unital algebra endomorphism of a free algebra, given on generators.

    Generators not listed are fixed.
    """

    def __init__(self, field: Field, images: Mapping[str, NCPoly], domain: Iterable[str] | None = None):
        self.field = field
        self.images = dict(images)
        self.domain = set(domain) if domain is not None else None

    def image(self, g: str) -> NCPoly:
        if self.domain is not None and g not in self.domain:
            raise UnknownGenerator(g)
        img = self.images.get(g)
        return img if img is not None else NCPoly.gen(self.field, g)

    def on_word(self, w: Word) -> NCPoly:
        out = NCPoly.const(self.field)
        for g in w:
            out = out * self.image(g)
        return out

    def __call__(self, x: NCPoly) -> NCPoly:
        out = NCPoly.zero(self.field)
        for w, c in x.terms.items():
            out = out + self.on_word(w).scale(c)
        return out

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self after other."""
        names = set(self.images) | set(other.images)
        return AlgebraMap(self.field, {g: self(other.image(g)) for g in names}, self.domain)

    def is_identity_on(self, names: Iterable[str]) -> bool:
        return all(self.image(g) == NCPoly.gen(self.field, g) for g in names)

    @classmethod
    def identity(cls, field: Field) -> "AlgebraMap":
        return cls(field, {})
