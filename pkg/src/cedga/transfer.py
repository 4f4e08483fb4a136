"""Homotopy transfer of A∞-structures along a contraction.

Contraction data for an A∞-algebra B: a graded space A, maps
``F1: A → B`` (inclusion), ``G1: B → A`` (projection) and a degree -1 map
``T1: B → B`` with

    μ¹ T1 + T1 μ¹ = F1 G1 - id,    G1 F1 = id.

With the side conditions T1 T1 = 0, G1 T1 = 0, T1 F1 = 0, the transferred
structure is given by the planar-tree recursion

    p^d   = Σ_{r ≥ 2} Σ_{s_1+...+s_r = d} μ^r_B(F^{s_1}, ..., F^{s_r}),
    F^d   = T1 p^d,   μ^d_A = G1 p^d   (d ≥ 2),   μ^1_A = 0,

with blocks listed left to right.  No extra signs appear in this
convention; they are carried by the A∞ relations themselves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import linalg
from .ainfty import AInfinityAlgebra, MorphismCandidate, compositions, vadd, vclean, vscale


class ContractionError(ValueError):
    pass


def _apply(K, m: dict, v: dict) -> dict:
    out: dict = {}
    for k, c in v.items():
        img = m.get(k)
        if img:
            vadd(K, out, img, c)
    return out


class Contraction:
    """Deformation retraction of (B, μ¹) onto a graded space A.

    ``F1`` maps A-names to B-vectors, ``G1`` and ``T1`` map B-names to
    A- and B-vectors.  Missing keys mean zero.
    """

    def __init__(self, B: AInfinityAlgebra, a_degrees: dict, F1: dict, G1: dict, T1: dict, unit: str | None = None):
        self.B = B
        self.field = B.field
        self.a_degrees = dict(a_degrees)
        self.F1 = {k: vclean(self.field, v) for k, v in F1.items()}
        self.G1 = {k: vclean(self.field, v) for k, v in G1.items()}
        self.T1 = {k: vclean(self.field, v) for k, v in T1.items() if vclean(self.field, v)}
        self.unit = unit

    @classmethod
    def basis_split(cls, B: AInfinityAlgebra, a_part, T1: dict) -> "Contraction":
        """Contraction where A is spanned by a subset of B's basis."""
        K = B.field
        a_part = list(a_part)
        missing = [a for a in a_part if a not in B.basis]
        if missing:
            raise ContractionError(f"A-part names not in B: {missing}")
        F1 = {a: {a: K.one} for a in a_part}
        G1 = {a: {a: K.one} for a in a_part}
        unit = B.unit if B.unit in a_part else None
        return cls(B, {a: B.basis[a] for a in a_part}, F1, G1, T1, unit)

    def mu1(self, v: dict) -> dict:
        K = self.field
        out: dict = {}
        for k, c in v.items():
            img = self.B.mu(k)
            if img:
                vadd(K, out, img, c)
        return out

    def T(self, v: dict) -> dict:
        return _apply(self.field, self.T1, v)

    def G(self, v: dict) -> dict:
        return _apply(self.field, self.G1, v)

    def F(self, v: dict) -> dict:
        return _apply(self.field, self.F1, v)


@dataclass
class ContractionReport:
    homotopy_residuals: dict = dc_field(default_factory=dict)
    gf_residuals: dict = dc_field(default_factory=dict)
    degree_errors: list = dc_field(default_factory=list)
    side_conditions: dict = dc_field(default_factory=dict)

    @property
    def homotopy_ok(self) -> bool:
        return not self.homotopy_residuals and not self.gf_residuals and not self.degree_errors

    @property
    def side_conditions_ok(self) -> bool:
        return all(not v for v in self.side_conditions.values())

    @property
    def passed(self) -> bool:
        return self.homotopy_ok and self.side_conditions_ok


def verify_contraction(c: Contraction) -> ContractionReport:
    K = c.field
    B = c.B
    rep = ContractionReport()
    for b, deg in B.basis.items():
        e = {b: K.one}
        lhs = vadd(K, c.mu1(c.T(e)), c.T(c.mu1(e)))
        rhs = vadd(K, c.F(c.G(e)), e, -1)
        res = vadd(K, lhs, rhs, -1)
        if res:
            rep.homotopy_residuals[b] = res
        for k in c.T(e):
            if B.basis[k] != deg - 1:
                rep.degree_errors.append(("T1", b, k))
        for k in c.G(e):
            if c.a_degrees[k] != deg:
                rep.degree_errors.append(("G1", b, k))
    for a, deg in c.a_degrees.items():
        e = {a: K.one}
        res = vadd(K, c.G(c.F(e)), e, -1)
        if res:
            rep.gf_residuals[a] = res
        for k in c.F(e):
            if B.basis[k] != deg:
                rep.degree_errors.append(("F1", a, k))
    tt, gt, tf = {}, {}, {}
    for b in B.basis:
        e = {b: K.one}
        if c.T(c.T(e)):
            tt[b] = c.T(c.T(e))
        if c.G(c.T(e)):
            gt[b] = c.G(c.T(e))
    for a in c.a_degrees:
        v = c.T(c.F({a: K.one}))
        if v:
            tf[a] = v
    rep.side_conditions = {"TT": tt, "GT": gt, "TF": tf}
    return rep


def with_side_conditions(c: Contraction) -> Contraction:
    """Standard correction T ↦ (1-FG) T (1-FG), then T ↦ -T μ¹ T."""
    K = c.field
    B = c.B

    def proj(v):
        return vadd(K, dict(v), c.F(c.G(v)), -1)

    T1 = {b: proj(c.T(proj({b: K.one}))) for b in B.basis}
    c1 = Contraction(B, c.a_degrees, c.F1, c.G1, T1, c.unit)
    T2 = {b: vscale(K, c1.T(c1.mu1(c1.T({b: K.one}))), -1) for b in B.basis}
    return Contraction(B, c.a_degrees, c.F1, c.G1, T2, c.unit)


def transfer_products(c: Contraction, max_arity: int = 4, check: bool = True):
    """Minimal model A and the A∞ quasi-isomorphism components F: A → B.

    Evaluates F^d and μ^d_A on every A-tuple of arity ≤ ``max_arity``.
    """
    if max_arity < 2:
        raise ContractionError("max_arity must be at least 2")
    if check:
        rep = verify_contraction(c)
        if not rep.homotopy_ok:
            raise ContractionError("homotopy identity fails")
        if not rep.side_conditions_ok:
            raise ContractionError(
                "side conditions fail; use with_side_conditions() first: "
                + ", ".join(k for k, v in rep.side_conditions.items() if v)
            )
    K = c.field
    B = c.B
    names = list(c.a_degrees)
    A = AInfinityAlgebra(K, c.a_degrees, unit=c.unit)
    Fm = MorphismCandidate(K, c.a_degrees, B.basis)
    Fvals: dict = {}
    for a in names:
        v = c.F({a: K.one})
        Fvals[(a,)] = v
        Fm.set((a,), v)
    support: dict = {}
    for t in Fvals:
        support.setdefault(len(t), []).append(t)
    for d in range(2, max_arity + 1):
        # only sequences of nonzero F-blocks, at most B.max_arity of them, contribute
        ps: dict = {}
        for parts in compositions(d):
            if not 2 <= len(parts) <= B.max_arity:
                continue
            if any(s not in support for s in parts):
                continue
            for blocks in itertools.product(*(support[s] for s in parts)):
                v = B.mu_vec([Fvals[b] for b in blocks])
                if v:
                    t = tuple(itertools.chain.from_iterable(blocks))
                    vadd(K, ps.setdefault(t, {}), v)
        for t in sorted(ps, key=lambda t: [names.index(a) for a in t]):
            p = vclean(K, ps[t])
            if not p:
                continue
            f = c.T(p)
            if f:
                Fvals[t] = f
                Fm.set(t, f)
                support.setdefault(d, []).append(t)
            g = c.G(p)
            if g:
                A.add_product(t, g)
    return A, Fm


def hodge_contraction(B: AInfinityAlgebra) -> Contraction:
    """A contraction of (B, μ¹) onto a cohomology complement, built by linear algebra.

    Cohomology representatives prefer the unit and plain basis vectors; A
    reuses the B-name when a representative is a single basis vector.
    """
    K = B.field
    by_deg: dict = {}
    for b, k in B.basis.items():
        by_deg.setdefault(k, []).append(b)

    def d_matrix(k):
        src, tgt = by_deg.get(k, []), by_deg.get(k + 1, [])
        idx = {n: i for i, n in enumerate(tgt)}
        M = [[K.zero] * len(src) for _ in tgt]
        for j, b in enumerate(src):
            for n, x in B.mu(b).items():
                M[idx[n]][j] = x
        return M

    def vec(k, v):
        return [v.get(n, K.zero) for n in by_deg[k]]

    def unvec(k, xs):
        return {n: x for n, x in zip(by_deg[k], xs) if x}

    W: dict = {}
    Hreps: dict = {}
    for k in sorted(by_deg):
        names = by_deg[k]
        M = d_matrix(k)
        Z = linalg.nullspace(M, K, len(names)) if by_deg.get(k + 1) else [
            [K.one if i == j else K.zero for j in range(len(names))] for i in range(len(names))
        ]
        W[k] = []
        rows: list = [list(z) for z in Z]
        for j in range(len(names)):
            e = [K.one if i == j else K.zero for i in range(len(names))]
            if linalg.rank(rows + [e], K) > len(rows):
                rows.append(e)
                W[k].append(unvec(k, e))
    A_deg: dict = {}
    F1: dict = {}
    imgs: dict = {}
    for k in sorted(by_deg):
        names = by_deg[k]
        I = [vec(k, _mu1(B, w)) for w in W.get(k - 1, [])]
        imgs[k] = I
        M = d_matrix(k)
        Z = linalg.nullspace(M, K, len(names)) if by_deg.get(k + 1) else [
            [K.one if i == j else K.zero for j in range(len(names))] for i in range(len(names))
        ]
        cands = []
        if B.unit in names:
            cands.append(vec(k, {B.unit: K.one}))
        cands += [[K.one if i == j else K.zero for i in range(len(names))] for j in range(len(names))]
        cands += Z
        rows = list(I)
        Hreps[k] = []
        for v in cands:
            if any(x for x in vec_mul(M, v, K)):
                continue
            if linalg.rank(rows + [v], K) > len(rows):
                rows.append(v)
                Hreps[k].append(v)
        for j, v in enumerate(Hreps[k]):
            nz = [i for i, x in enumerate(v) if x]
            name = names[nz[0]] if len(nz) == 1 and v[nz[0]] == K.one else f"h{k}_{j}"
            A_deg[name] = k
            F1[name] = unvec(k, v)
    G1: dict = {}
    T1: dict = {}
    for k in sorted(by_deg):
        names = by_deg[k]
        hnames = [a for a in A_deg if A_deg[a] == k]
        cols = imgs[k] + Hreps[k] + [vec(k, w) for w in W.get(k, [])]
        M = [[cols[j][i] for j in range(len(cols))] for i in range(len(names))]
        nI, nH = len(imgs[k]), len(Hreps[k])
        for i, b in enumerate(names):
            e = [K.one if j == i else K.zero for j in range(len(names))]
            x = linalg.solve(M, e, K)
            if x is None:
                raise ContractionError("failed to split the complex")
            G1[b] = {hnames[j]: x[nI + j] for j in range(nH) if x[nI + j]}
            t: dict = {}
            for j in range(nI):
                if x[j]:
                    vadd(K, t, W[k - 1][j], K.neg(x[j]))
            T1[b] = t
    unit = B.unit if B.unit in A_deg else None
    return Contraction(B, A_deg, F1, G1, T1, unit)


def _mu1(B: AInfinityAlgebra, v: dict) -> dict:
    out: dict = {}
    for k, c in v.items():
        vadd(B.field, out, B.mu(k), c)
    return out


def vec_mul(M, v, K):
    return [K.reduce(sum(a * b for a, b in zip(row, v))) for row in M]
