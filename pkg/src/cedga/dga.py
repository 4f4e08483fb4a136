"""Free (semi-free) DGAs, augmentations, twisting and linearized homology."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping

from . import linalg
from .fields import Field
from .freealg import AlgebraMap, Derivation, Generator, NCPoly


class DGAError(ValueError):
    pass


class FreeDGA:
    """Free unital graded algebra on ``generators`` with a degree -1 differential."""

    def __init__(self, field: Field, generators, differential: Mapping[str, NCPoly] | None = None):
        self.field = field
        self.generators: list[Generator] = list(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise DGAError("duplicate generator names")
        self.degree = {g.name: g.degree for g in self.generators}
        differential = dict(differential or {})
        for g, img in differential.items():
            if g not in self.degree:
                raise DGAError(f"differential given for unknown generator {g!r}")
            if img.field != field:
                raise DGAError(f"differential of {g!r} has coefficients in {img.field!r}")
            unknown = img.generators() - set(self.degree)
            if unknown:
                raise DGAError(f"differential of {g!r} uses unknown generators {sorted(unknown)}")
        self.differential = {n: differential.get(n, NCPoly.zero(field)) for n in names}
        self.d = Derivation(field, self.degree, self.differential)

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def __getitem__(self, name: str) -> NCPoly:
        return self.differential[name]

    def gen(self, name: str, c=1) -> NCPoly:
        if name not in self.degree:
            raise DGAError(f"unknown generator {name!r}")
        return NCPoly.gen(self.field, name, c)

    def with_differential(self, differential: Mapping[str, NCPoly]) -> "FreeDGA":
        return FreeDGA(self.field, self.generators, differential)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FreeDGA)
            and self.field == other.field
            and self.generators == other.generators
            and self.differential == other.differential
        )

    def __repr__(self) -> str:
        return f"FreeDGA({len(self.generators)} generators over {self.field!r})"


@dataclass
class GeneratorCheck:
    name: str
    homogeneous: bool
    bad_degrees: list
    d_squared: NCPoly

    @property
    def ok(self) -> bool:
        return self.homogeneous and self.d_squared.is_zero()


@dataclass
class DGAReport:
    checks: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]


def verify_dga(d: FreeDGA) -> DGAReport:
    """Check that every ∂g is homogeneous of degree |g|-1 and that ∂²g = 0."""
    report = DGAReport()
    for g in d.generators:
        img = d.differential[g.name]
        bad = sorted(k for k in img.degrees(d.degree) if k != g.degree - 1)
        report.checks.append(GeneratorCheck(g.name, not bad, bad, d.d(img)))
    return report


class Augmentation:
    """Values of a graded unital algebra map from the DGA to the field."""

    def __init__(self, field: Field, values: Mapping[str, object]):
        self.field = field
        self.values = {g: field(v) for g, v in values.items() if field(v)}

    def __call__(self, g: str):
        return self.values.get(g, self.field.zero)

    def evaluate(self, x: NCPoly):
        F = self.field
        total = F.zero
        for w, c in x.terms.items():
            v = c
            for g in w:
                v = F.reduce(v * self(g))
                if not v:
                    break
            total = F.reduce(total + v)
        return total

    def conjugation(self, sign: int = 1) -> AlgebraMap:
        """g ↦ g + sign·ε(g)."""
        F = self.field
        return AlgebraMap(
            F, {g: NCPoly.gen(F, g) + NCPoly.const(F, F.reduce(sign * v)) for g, v in self.values.items()}
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Augmentation) and self.field == other.field and self.values == other.values


@dataclass
class AugmentationReport:
    nonzero_off_degree_zero: list
    nonvanishing: dict

    @property
    def passed(self) -> bool:
        return not self.nonzero_off_degree_zero and not self.nonvanishing


def verify_augmentation(d: FreeDGA, eps: Augmentation) -> AugmentationReport:
    unknown = set(eps.values) - set(d.degree)
    if unknown:
        raise DGAError(f"augmentation on unknown generators {sorted(unknown)}")
    off = sorted(g for g in eps.values if d.degree[g] != 0)
    bad = {}
    for g in d.names:
        v = eps.evaluate(d.differential[g])
        if v:
            bad[g] = v
    return AugmentationReport(off, bad)


def twist(d: FreeDGA, eps: Augmentation) -> FreeDGA:
    """The conjugated differential φ_ε ∘ ∂ ∘ φ_ε⁻¹ with φ_ε(g) = g + ε(g)."""
    if not verify_augmentation(d, eps).passed:
        raise DGAError("not an augmentation of this DGA")
    phi = eps.conjugation(+1)
    phi_inv = eps.conjugation(-1)
    new = {g: phi(d.d(phi_inv(d.gen(g)))) for g in d.names}
    out = d.with_differential(new)
    assert all(not v.constant_term() for v in new.values())
    return out


def change_generators(d: FreeDGA, phi: AlgebraMap, phi_inv: AlgebraMap) -> FreeDGA:
    """Differential φ ∘ ∂ ∘ φ⁻¹ after checking φ, φ⁻¹ are mutually inverse and graded."""
    for g in d.names:
        one = d.gen(g)
        if phi(phi_inv(one)) != one or phi_inv(phi(one)) != one:
            raise DGAError(f"maps are not mutually inverse on {g!r}")
        for m in (phi, phi_inv):
            img = m.image(g)
            if img.degrees(d.degree) - {d.degree[g]}:
                raise DGAError(f"map does not preserve the degree of {g!r}")
    return d.with_differential({g: phi(d.d(phi_inv(d.gen(g)))) for g in d.names})


@dataclass
class LinearizedComplex:
    """Word-length-one part of an augmented differential, graded by degree.

    ``matrices[k]`` is the matrix of ∂₁ from degree k to degree k-1, with
    rows indexed by ``basis[k-1]`` and columns by ``basis[k]``.
    """

    field: Field
    basis: dict
    matrices: dict

    def differential_matrix(self, k: int):
        return self.matrices.get(k, [])

    def composes_to_zero(self) -> bool:
        F = self.field
        for k, A in self.matrices.items():
            B = self.matrices.get(k - 1)
            if not A or not B or not A[0]:
                continue
            for i in range(len(B)):
                for j in range(len(A[0])):
                    s = F.zero
                    for t in range(len(A)):
                        s += B[i][t] * A[t][j]
                    if F.reduce(s):
                        return False
        return True


def linear_part(d: FreeDGA) -> LinearizedComplex:
    F = d.field
    basis: dict = {}
    for g in d.generators:
        if d.differential[g.name].constant_term():
            raise DGAError(f"∂{g.name} has a constant term; twist by an augmentation first")
        basis.setdefault(g.degree, []).append(g.name)
    mats = {}
    for k, cols in basis.items():
        rows = basis.get(k - 1, [])
        if not rows:
            continue
        index = {n: i for i, n in enumerate(rows)}
        A = [[F.zero] * len(cols) for _ in rows]
        for j, g in enumerate(cols):
            for w, c in d.differential[g].part(1).terms.items():
                A[index[w[0]]][j] = c
        mats[k] = A
    return LinearizedComplex(F, dict(sorted(basis.items())), mats)


def homology_dims(c: LinearizedComplex) -> dict:
    """degree -> dim ker ∂₁ - rank ∂₁ (zero degrees omitted)."""
    ranks = {k: linalg.rank(A, c.field) if A else 0 for k, A in c.matrices.items()}
    out = {}
    for k, names in c.basis.items():
        h = len(names) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out
