"""Finite dg-algebras for the triangulated genus-g surface and the formality zig-zag

    H --Φ̂--> Ĉ <--incl-- C′ --Φ--> C.

Everything here is a finite presentation: a graded basis, a differential
of degree +1 given on basis elements, and a product table on pairs of
basis elements.  Unlisted products and differentials are zero.  The
checks are exhaustive over the basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import linalg
from .ainfty import vadd, vclean
from .fields import Field, field as as_field


class SurfaceError(ValueError):
    pass


class DGAlgebraPresentation:
    """Finite-dimensional dg-algebra with cohomological grading."""

    def __init__(self, fld, basis: dict, unit: dict, differential: dict | None = None,
                 products: dict | None = None, name: str = ""):
        self.field: Field = as_field(fld)
        self.basis = dict(basis)
        self.name = name
        K = self.field
        self.unit = vclean(K, unit)
        self.differential = {}
        for a, v in (differential or {}).items():
            self._known(a, *v)
            if vclean(K, v):
                self.differential[a] = vclean(K, v)
        self.products = {}
        for (a, b), v in (products or {}).items():
            self._known(a, b, *v)
            if vclean(K, v):
                self.products[(a, b)] = vclean(K, v)

    def _known(self, *names):
        for n in names:
            if n not in self.basis:
                raise SurfaceError(f"{self.name}: unknown basis element {n!r}")

    def degree_basis(self, k: int) -> list:
        return [b for b, d in self.basis.items() if d == k]

    @property
    def degrees(self) -> list:
        return sorted(set(self.basis.values()))

    def d(self, v: dict) -> dict:
        out: dict = {}
        for a, c in v.items():
            img = self.differential.get(a)
            if img:
                vadd(self.field, out, img, c)
        return out

    def mul(self, u: dict, v: dict) -> dict:
        K = self.field
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                img = self.products.get((a, b))
                if img:
                    vadd(K, out, img, x * y)
        return out

    def e(self, name: str) -> dict:
        self._known(name)
        return {name: self.field.one}

    def vec_degree(self, v: dict):
        ds = {self.basis[a] for a in v}
        return ds.pop() if len(ds) == 1 else (None if not ds else ds)

    def __repr__(self) -> str:
        return f"DGAlgebraPresentation({self.name!r}, dim {len(self.basis)} over {self.field!r})"


@dataclass
class DGAlgebraReport:
    name: str
    degree_errors: list = dc_field(default_factory=list)
    d_squared: list = dc_field(default_factory=list)
    leibniz: list = dc_field(default_factory=list)
    associativity: list = dc_field(default_factory=list)
    unit: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.degree_errors or self.d_squared or self.leibniz or self.associativity or self.unit)

    def summary(self) -> dict:
        return {k: len(getattr(self, k)) for k in ("degree_errors", "d_squared", "leibniz", "associativity", "unit")}


def verify_dg_algebra(P: DGAlgebraPresentation) -> DGAlgebraReport:
    """Degrees, ∂² = 0, graded Leibniz, associativity on all basis triples, unit law."""
    K = P.field
    rep = DGAlgebraReport(P.name)
    for a, v in P.differential.items():
        if any(P.basis[b] != P.basis[a] + 1 for b in v):
            rep.degree_errors.append(("d", a))
    for (a, b), v in P.products.items():
        if any(P.basis[c] != P.basis[a] + P.basis[b] for c in v):
            rep.degree_errors.append(("mul", a, b))
    for a in P.basis:
        if P.d(P.d(P.e(a))):
            rep.d_squared.append(a)
    names = list(P.basis)
    for a, b in itertools.product(names, repeat=2):
        ea, eb = P.e(a), P.e(b)
        lhs = P.d(P.mul(ea, eb))
        vadd(K, lhs, P.mul(P.d(ea), eb), -1)
        vadd(K, lhs, P.mul(ea, P.d(eb)), -K.sign(P.basis[a]))
        if lhs:
            rep.leibniz.append((a, b))
    # a triple can only fail if ab or bc is nonzero
    left: dict = {}
    right: dict = {}
    for (a, b) in P.products:
        left.setdefault(a, []).append(b)
        right.setdefault(b, []).append(a)
    seen = set()
    for (a, b) in P.products:
        for c in names:
            seen.add((a, b, c))
        for z in names:
            seen.add((z, a, b))
    for a, b, c in seen:
        ea, eb, ec = P.e(a), P.e(b), P.e(c)
        res = P.mul(P.mul(ea, eb), ec)
        vadd(K, res, P.mul(ea, P.mul(eb, ec)), -1)
        if res:
            rep.associativity.append((a, b, c))
    rep.associativity.sort()
    if P.d(P.unit):
        rep.unit.append(("d(unit)",))
    for a in names:
        ea = P.e(a)
        if P.mul(P.unit, ea) != ea:
            rep.unit.append(("left", a))
        if P.mul(ea, P.unit) != ea:
            rep.unit.append(("right", a))
    return rep


def _d_matrix(P: DGAlgebraPresentation, k: int):
    src, tgt = P.degree_basis(k), P.degree_basis(k + 1)
    idx = {n: i for i, n in enumerate(tgt)}
    M = [[P.field.zero] * len(src) for _ in tgt]
    for j, a in enumerate(src):
        for b, c in P.differential.get(a, {}).items():
            M[idx[b]][j] = c
    return M


def cohomology(P: DGAlgebraPresentation) -> dict:
    """degree -> dim H^k (every degree of the basis listed, zeros included)."""
    K = P.field
    out = {}
    for k in P.degrees:
        n = len(P.degree_basis(k))
        r_out = linalg.rank(_d_matrix(P, k), K) if P.degree_basis(k + 1) else 0
        r_in = linalg.rank(_d_matrix(P, k - 1), K) if P.degree_basis(k - 1) else 0
        out[k] = n - r_out - r_in
    return out


def cohomology_tuple(P: DGAlgebraPresentation, top: int = 2) -> tuple:
    h = cohomology(P)
    return tuple(h.get(k, 0) for k in range(top + 1))


class DGMorphism:
    """Linear map given on the source basis."""

    def __init__(self, source: DGAlgebraPresentation, target: DGAlgebraPresentation, images: dict, name: str = ""):
        if source.field != target.field:
            raise SurfaceError("source and target over different fields")
        self.source = source
        self.target = target
        self.name = name
        for a, v in images.items():
            source._known(a)
            target._known(*v)
        self.images = {a: vclean(source.field, v) for a, v in images.items()}

    def __call__(self, v: dict) -> dict:
        out: dict = {}
        for a, c in v.items():
            img = self.images.get(a)
            if img:
                vadd(self.source.field, out, img, c)
        return out


@dataclass
class DGMorphismReport:
    name: str
    degree_errors: list = dc_field(default_factory=list)
    chain_map: list = dc_field(default_factory=list)
    multiplicative: list = dc_field(default_factory=list)
    unital: bool = True

    @property
    def passed(self) -> bool:
        return not (self.degree_errors or self.chain_map or self.multiplicative) and self.unital

    def summary(self) -> dict:
        return {
            "degree_errors": len(self.degree_errors),
            "chain_map": len(self.chain_map),
            "multiplicative": len(self.multiplicative),
            "unital": self.unital,
        }


def verify_dg_morphism(f: DGMorphism) -> DGMorphismReport:
    S, T = f.source, f.target
    K = S.field
    rep = DGMorphismReport(f.name)
    for a, v in f.images.items():
        if any(T.basis[b] != S.basis[a] for b in v):
            rep.degree_errors.append(a)
    for a in S.basis:
        ea = S.e(a)
        res = f(S.d(ea))
        vadd(K, res, T.d(f(ea)), -1)
        if res:
            rep.chain_map.append(a)
    for a, b in itertools.product(S.basis, repeat=2):
        ea, eb = S.e(a), S.e(b)
        res = f(S.mul(ea, eb))
        vadd(K, res, T.mul(f(ea), f(eb)), -1)
        if res:
            rep.multiplicative.append((a, b))
    rep.unital = f(S.unit) == T.unit
    return rep


def _cycles(P: DGAlgebraPresentation, k: int) -> list:
    names = P.degree_basis(k)
    if not P.degree_basis(k + 1):
        return [{n: P.field.one} for n in names]
    Z = linalg.nullspace(_d_matrix(P, k), P.field, len(names))
    return [{n: x for n, x in zip(names, z) if x} for z in Z]


def _boundaries(P: DGAlgebraPresentation, k: int) -> list:
    return [v for v in (P.d(P.e(a)) for a in P.degree_basis(k - 1)) if v]


def _span_rank(P: DGAlgebraPresentation, k: int, vecs: list) -> int:
    names = P.degree_basis(k)
    if not vecs or not names:
        return 0
    return linalg.rank([[v.get(n, P.field.zero) for n in names] for v in vecs], P.field)


def induced_ranks(f: DGMorphism) -> dict:
    """degree -> (dim H_source, dim H_target, rank of the induced map)."""
    S, T = f.source, f.target
    hs, ht = cohomology(S), cohomology(T)
    out = {}
    for k in sorted(set(hs) | set(ht)):
        Bt = _boundaries(T, k)
        imgs = [f(z) for z in _cycles(S, k)]
        r = _span_rank(T, k, Bt + imgs) - _span_rank(T, k, Bt)
        out[k] = (hs.get(k, 0), ht.get(k, 0), r)
    return out


def is_quasi_iso(f: DGMorphism) -> bool:
    return all(a == b == r for a, b, r in induced_ranks(f).values())


# -- the presentations --------------------------------------------------------

def _check_genus(g: int):
    if not isinstance(g, int) or g < 1:
        raise SurfaceError(f"genus must be a positive integer, got {g!r}")


def _mod(k: int, g: int) -> int:
    n = 4 * g
    return (k - 1) % n + 1


def _sum(names) -> dict:
    out: dict = {}
    for n in names:
        out[n] = (out.get(n, 0) + 1) % 2
    return {n: c for n, c in out.items() if c}


def build_C(g: int) -> DGAlgebraPresentation:
    """Simplicial cochains of the triangulated surface, cup product as printed."""
    _check_genus(g)
    n = 4 * g
    th = lambda k: f"theta{_mod(k, g)}"  # noqa: E731
    ga = lambda k: f"gamma{_mod(k, g)}"  # noqa: E731
    basis = {"e1": 0, "e2": 0}
    basis.update({f"alpha{j}": 1 for j in range(1, g + 1)})
    basis.update({f"beta{j}": 1 for j in range(1, g + 1)})
    basis.update({th(k): 1 for k in range(1, n + 1)})
    basis.update({ga(k): 2 for k in range(1, n + 1)})
    all_theta = _sum(th(k) for k in range(1, n + 1))
    d = {"e1": all_theta, "e2": dict(all_theta)}
    for j in range(1, g + 1):
        d[f"alpha{j}"] = _sum([ga(4 * j - 3), ga(4 * j - 1)])
        d[f"beta{j}"] = _sum([ga(4 * j - 2), ga(4 * j)])
    for k in range(1, n + 1):
        d[th(k)] = _sum([ga(k - 1), ga(k)])
    m: dict = {("e1", "e1"): {"e1": 1}, ("e2", "e2"): {"e2": 1}}
    for k in range(1, n + 1):
        m[("e1", th(k))] = {th(k): 1}
        m[("e1", ga(k))] = {ga(k): 1}
        m[(th(k), "e2")] = {th(k): 1}
        m[(ga(k), "e2")] = {ga(k): 1}
    for j in range(1, g + 1):
        a, b = f"alpha{j}", f"beta{j}"
        for x in (a, b):
            m[("e2", x)] = {x: 1}
            m[(x, "e2")] = {x: 1}
        m[(th(4 * j - 3), a)] = {ga(4 * j - 3): 1}
        m[(th(4 * j - 2), b)] = {ga(4 * j - 2): 1}
        m[(th(4 * j), a)] = {ga(4 * j - 1): 1}
        m[(th(4 * j + 1), b)] = {ga(4 * j): 1}
    return DGAlgebraPresentation(2, basis, {"e1": 1, "e2": 1}, d, m, name=f"C(g={g})")


def _nus(m: int, top: bool = True) -> dict:
    names = [f"nu{l}" for l in range(1, m + 1)]
    return _sum((["nu"] if top else []) + names)


def _xis(m: int) -> dict:
    return _sum(f"xi{l}" for l in range(1, m + 1))


def _cprime_data(g: int):
    n = 4 * g
    basis = {"e": 0, "eps1": 0}
    basis.update({f"phi{j}": 1 for j in range(1, g + 1)})
    basis.update({f"psi{j}": 1 for j in range(1, g + 1)})
    basis["zeta1"] = 1
    basis.update({f"xi{l}": 1 for l in range(1, n)})
    basis["nu"] = 2
    basis.update({f"nu{l}": 2 for l in range(1, n)})
    d = {"eps1": {"zeta1": 1}}
    d.update({f"xi{l}": {f"nu{l}": 1} for l in range(1, n)})
    xi = lambda k: f"xi{_mod(k, g)}"  # noqa: E731
    nu_ = lambda k: f"nu{_mod(k, g)}"  # noqa: E731
    m: dict = {}
    for j in range(1, g + 1):
        ph, ps = f"phi{j}", f"psi{j}"
        m[(ph, ps)] = _nus(4 * j - 2)
        m[(ps, ph)] = _nus(4 * j - 1)
        m[(xi(4 * j - 3), ph)] = _nus(4 * j - 3)
        m[(xi(4 * j - 2), ps)] = _nus(4 * j - 2)
        if j < g:
            m[(xi(4 * j), ph)] = _nus(4 * j - 1)
            m[(xi(4 * j + 1), ps)] = _nus(4 * j)
            m[("eps1", ps)] = _sum([xi(4 * j - 1), xi(4 * j)])
            m[("zeta1", ps)] = _sum([nu_(4 * j - 1), nu_(4 * j)])
        m[("eps1", ph)] = _sum([xi(4 * j - 2), xi(4 * j - 1)])
        m[("zeta1", ph)] = _sum([nu_(4 * j - 2), nu_(4 * j - 1)])
    m[("xi1", f"psi{g}")] = {"nu": 1}
    m[("eps1", f"psi{g}")] = {"zeta1": 1, **_xis(n - 2)}
    m[("zeta1", f"psi{g}")] = _nus(n - 2, top=False)
    m[("eps1", "eps1")] = {"eps1": 1}
    m[("eps1", "nu")] = {"nu": 1}
    m[("eps1", "zeta1")] = {"zeta1": 1}
    for l in range(1, n):
        m[("eps1", f"xi{l}")] = {f"xi{l}": 1}
        m[("eps1", f"nu{l}")] = {f"nu{l}": 1}
    return basis, d, m


def _with_unit(basis: dict, m: dict, unit: str = "e") -> dict:
    for a in basis:
        m[(unit, a)] = {a: 1}
        m[(a, unit)] = {a: 1}
    return m


def build_Cprime(g: int) -> DGAlgebraPresentation:
    _check_genus(g)
    basis, d, m = _cprime_data(g)
    return DGAlgebraPresentation(2, basis, {"e": 1}, d, _with_unit(basis, m), name=f"C'(g={g})")


def chat_extra_products(g: int) -> dict:
    """The products added to C′ when stabilizing, as printed."""
    m = {}
    for j in range(1, g + 1):
        m[(f"eps{2 * j}", f"psi{j}")] = _xis(4 * j - 2)
        m[(f"eps{2 * j + 1}", f"phi{j}")] = _xis(4 * j - 1)
        m[(f"zeta{2 * j}", f"psi{j}")] = _nus(4 * j - 2, top=False)
        m[(f"zeta{2 * j + 1}", f"phi{j}")] = _nus(4 * j - 1, top=False)
    return m


def build_Chat(g: int, extra: dict | None = None) -> DGAlgebraPresentation:
    """C′ stabilized by ε_k, ζ_k (2 ≤ k ≤ 2g+1) with ∂ε_k = ζ_k.

    ``extra`` overrides or adds product-table entries on top of the printed ones.
    """
    _check_genus(g)
    basis, d, m = _cprime_data(g)
    for k in range(2, 2 * g + 2):
        basis[f"eps{k}"] = 0
        basis[f"zeta{k}"] = 1
        d[f"eps{k}"] = {f"zeta{k}": 1}
    m.update(chat_extra_products(g))
    if extra:
        m.update(extra)
    return DGAlgebraPresentation(2, basis, {"e": 1}, d, _with_unit(basis, m), name=f"Chat(g={g})")


def build_H(g: int) -> DGAlgebraPresentation:
    """Cohomology ring of the genus-g surface over F₂."""
    _check_genus(g)
    basis = {"e": 0}
    basis.update({f"phibar{j}": 1 for j in range(1, g + 1)})
    basis.update({f"psibar{j}": 1 for j in range(1, g + 1)})
    basis["nu"] = 2
    m = {}
    for j in range(1, g + 1):
        m[(f"phibar{j}", f"psibar{j}")] = {"nu": 1}
        m[(f"psibar{j}", f"phibar{j}")] = {"nu": 1}
    return DGAlgebraPresentation(2, basis, {"e": 1}, {}, _with_unit(basis, m), name=f"H(g={g})")


def build_Phi(g: int) -> DGMorphism:
    _check_genus(g)
    n = 4 * g
    S, T = build_Cprime(g), build_C(g)
    ga = lambda k: f"gamma{_mod(k, g)}"  # noqa: E731
    im = {
        "e": {"e1": 1, "e2": 1},
        "eps1": {"e1": 1},
        "zeta1": _sum(f"theta{k}" for k in range(1, n + 1)),
        "nu": {ga(n): 1},
    }
    for j in range(1, g + 1):
        im[f"phi{j}"] = _sum([f"alpha{j}", f"theta{4 * j - 2}", f"theta{4 * j - 1}"])
        im[f"psi{j}"] = _sum([f"beta{j}", f"theta{4 * j - 1}", f"theta{_mod(4 * j, g)}"])
    for l in range(1, n):
        im[f"xi{l}"] = {f"theta{l}": 1}
        im[f"nu{l}"] = _sum([ga(l - 1), ga(l)])
    return DGMorphism(S, T, im, name="Phi")


def build_inclusion(g: int, chat: DGAlgebraPresentation | None = None) -> DGMorphism:
    _check_genus(g)
    S = build_Cprime(g)
    T = chat if chat is not None else build_Chat(g)
    return DGMorphism(S, T, {a: {a: 1} for a in S.basis}, name="inclusion")


def build_PhiHat(g: int, chat: DGAlgebraPresentation | None = None) -> DGMorphism:
    _check_genus(g)
    S = build_H(g)
    T = chat if chat is not None else build_Chat(g)
    im = {"e": {"e": 1}, "nu": {"nu": 1}}
    for j in range(1, g + 1):
        im[f"phibar{j}"] = {f"phi{j}": 1, f"zeta{2 * j}": 1}
        im[f"psibar{j}"] = {f"psi{j}": 1, f"zeta{2 * j + 1}": 1}
    return DGMorphism(S, T, im, name="PhiHat")


def identity_morphism(P: DGAlgebraPresentation) -> DGMorphism:
    return DGMorphism(P, P, {a: {a: P.field.one} for a in P.basis}, name="id")


def squares_vanish(P: DGAlgebraPresentation, k: int = 1) -> tuple[bool, int]:
    """x·x = 0 for every x in degree k, by enumeration over the finite field.

    Returns (holds, number of elements checked).
    """
    K = P.field
    if K.char == 0:
        raise SurfaceError("enumeration needs a finite field")
    names = P.degree_basis(k)
    n = 0
    for coeffs in itertools.product(K.elements(), repeat=len(names)):
        x = {a: c for a, c in zip(names, coeffs) if c}
        n += 1
        if P.mul(x, x):
            return False, n
    return True, n
