"""The Legendrian knot family Λ(p,q,r,s): generators, differential, augmentation.

Generator names: ``x0..xp``, ``y0..yq``, ``z0..zr``, ``w0..ws`` for the
degree-0 letters, ``ax0..axp`` etc. for the matching degree-1 chords,
``a0`` and ``b1..b6``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ainfty import vadd
from .dga import Augmentation, FreeDGA, change_generators, twist
from .fields import Field, field as as_field
from .freealg import AlgebraMap, Generator, NCPoly

LETTERS = ("x", "y", "z", "w")


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class KnotParams:
    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if min(self.p, self.q, self.r, self.s) < 2:
            raise ParityError("p, q, r, s must all be at least 2")
        if not (self.p % 2 == self.q % 2 == (self.r + 1) % 2 == (self.s + 1) % 2):
            raise ParityError(f"need p ≡ q ≡ r+1 ≡ s+1 mod 2, got {self.as_tuple()}")

    def as_tuple(self) -> tuple:
        return (self.p, self.q, self.r, self.s)

    def length(self, letter: str) -> int:
        return {"x": self.p, "y": self.q, "z": self.r, "w": self.s}[letter]

    def b_degrees(self) -> dict:
        p, q, r, s = self.as_tuple()
        d1, d2, d3 = p - r + 1, q - r + 1, r - s
        return {"b1": d1, "b4": -d1, "b2": d2, "b5": -d2, "b3": d3, "b6": -d3}

    def __str__(self) -> str:
        return "Λ({},{},{},{})".format(*self.as_tuple())


@dataclass(frozen=True)
class ClassicalInvariants:
    rotation: int
    thurston_bennequin: int
    slice_genus: int


def classical_invariants(params: KnotParams) -> ClassicalInvariants:
    # Geometric inputs read off the front diagram; not recomputed here.
    return ClassicalInvariants(rotation=0, thurston_bennequin=5, slice_genus=3)


def letter(c: str, i: int) -> str:
    return f"{c}{i}"


def chord(c: str, i: int) -> str:
    return f"a{c}{i}"


def generators(params: KnotParams) -> list[Generator]:
    gens = []
    for c in LETTERS:
        gens += [Generator(chord(c, i), 1) for i in range(params.length(c) + 1)]
    for c in LETTERS:
        gens += [Generator(letter(c, i), 0) for i in range(params.length(c) + 1)]
    gens.append(Generator("a0", 1))
    bdeg = params.b_degrees()
    gens += [Generator(f"b{j}", bdeg[f"b{j}"]) for j in range(1, 7)]
    return gens


def build_ce_dga(params: KnotParams, fld="Q") -> FreeDGA:
    """The Chekanov-Eliashberg DGA with the differential counted from the diagram."""
    F = as_field(fld)
    p, q, r, s = params.as_tuple()

    def W(*names, c=1):
        return NCPoly.word(F, *names, c=c)

    one = NCPoly.const(F)
    d = {
        "a0": one - W(f"w{s}", f"z{r}", f"y{q}", f"x{p}"),
        "ax0": one + W("x0") + W("b1", "b4"),
        "ay0": one + W("y0") + W("b2", "b5"),
        "az0": one + W("z0") + W("b4", "b1") + W("b5", "b2") + W("z0", "b6", "b3") + W("b4", "b1", "b5", "b2"),
        "aw0": one + W("w0") + W("b3", "b6"),
    }
    for c in LETTERS:
        for i in range(1, params.length(c) + 1):
            d[chord(c, i)] = one - W(letter(c, i - 1), letter(c, i))
    return FreeDGA(F, generators(params), d)


def canonical_augmentation(params: KnotParams, fld="Q") -> Augmentation:
    """Every letter generator ↦ -1, everything else ↦ 0."""
    F = as_field(fld)
    vals = {letter(c, i): -1 for c in LETTERS for i in range(params.length(c) + 1)}
    return Augmentation(F, vals)


def a0_correction(params: KnotParams, F: Field) -> NCPoly:
    """Σ(-1)^i ax_i + Σ(-1)^i ay_i - Σ(-1)^i az_i - Σ(-1)^i aw_i."""
    out = NCPoly.zero(F)
    for c, sgn in zip(LETTERS, (1, 1, -1, -1)):
        for i in range(params.length(c) + 1):
            out = out + NCPoly.gen(F, chord(c, i), sgn * (-1) ** i)
    return out


def a0_transformation(params: KnotParams, fld="Q") -> tuple[AlgebraMap, AlgebraMap]:
    """The elementary automorphism a0 ↦ a0 - (-1)^p·S and its inverse a0 ↦ a0 + (-1)^p·S."""
    F = as_field(fld)
    S = a0_correction(params, F).scale((-1) ** params.p)
    a0 = NCPoly.gen(F, "a0")
    return AlgebraMap(F, {"a0": a0 - S}), AlgebraMap(F, {"a0": a0 + S})


def twisted_dga(params: KnotParams, fld="Q") -> FreeDGA:
    return twist(build_ce_dga(params, fld), canonical_augmentation(params, fld))


def normalized_dga(params: KnotParams, fld="Q") -> FreeDGA:
    """Twisted DGA after the a0 change of generators; its linear part kills a0."""
    tw = twisted_dga(params, fld)
    forward, inverse = a0_transformation(params, fld)
    # new a0 is the old a0 minus the correction: ∂'(a0) = ∂(forward(a0))
    return change_generators(tw, inverse, forward)


def generator_count(params: KnotParams) -> int:
    p, q, r, s = params.as_tuple()
    return 2 * ((p + 1) + (q + 1) + (r + 1) + (s + 1)) + 7


A_PART = ("a0", "b1", "b2", "b3", "b4", "b5", "b6")


def dual_algebra(params: KnotParams, fld="Q"):
    from .ainfty import dualize

    return dualize(normalized_dga(params, fld))


def standard_contraction(params: KnotParams, B):
    """Split B = A ⊕ C with A = {1, a0, b1..b6} and the alternating-sum homotopy.

    T1(a*_i) = Σ_{k ≥ i} (-1)^{k-i+1} *_k; T1 vanishes on letters and on A.
    """
    from .transfer import Contraction, ContractionError

    F = B.field
    want = set(generators_names(params)) | {B.unit}
    if set(B.basis) != want:
        raise ContractionError("basis does not match Λ{}".format(params.as_tuple()))
    T1 = {}
    for c in LETTERS:
        n = params.length(c)
        for i in range(n + 1):
            T1[chord(c, i)] = {letter(c, k): F.sign(k - i + 1) for k in range(i, n + 1)}
    return Contraction.basis_split(B, (B.unit,) + A_PART, T1)


def generators_names(params: KnotParams) -> list[str]:
    return [g.name for g in generators(params)]


def minimal_model(params: KnotParams, fld="Q", max_arity: int = 4):
    """(B, contraction, A, F) for the family member."""
    from .transfer import transfer_products

    B = dual_algebra(params, fld)
    c = standard_contraction(params, B)
    A, Fm = transfer_products(c, max_arity)
    return B, c, A, Fm


# -- the obstruction to a quasi-isomorphism onto surface cohomology -----------

CYCLIC_BASES = ((1, 2, 5, 4), (1, 5, 2, 4), (2, 5, 2, 5))


def obstruction_tuples() -> list[tuple]:
    """The ten distinct cyclic rotations of (1,2,5,4), (1,5,2,4), (2,5,2,5)."""
    out: list = []
    for t in CYCLIC_BASES:
        for k in range(4):
            r = t[k:] + t[:k]
            if r not in out:
                out.append(r)
    return out


def cup_ring(genus: int, fld):
    """H*(S_g) over ``fld``: basis 1; x_i, y_i; nu with x_i y_i = nu = -y_i x_i."""
    from .surface import DGAlgebraPresentation

    K = as_field(fld)
    basis = {"1": 0}
    for i in range(1, genus + 1):
        basis[f"x{i}"] = 1
        basis[f"y{i}"] = 1
    basis["nu"] = 2
    m = {}
    for a in basis:
        m[("1", a)] = {a: K.one}
        m[(a, "1")] = {a: K.one}
    for i in range(1, genus + 1):
        m[(f"x{i}", f"y{i}")] = {"nu": K.one}
        m[(f"y{i}", f"x{i}")] = {"nu": K(-1)}
    return DGAlgebraPresentation(K, basis, {"1": K.one}, {}, m, name=f"H*(S_{genus})")


# Formal terms.  An F-symbol is the tuple of A-basis names it is applied
# to; a term is ("F", sym) or ("cup", sym, sym).  Expressions are dicts
# term -> coefficient.

def _sym_degree(A, sym: tuple) -> int:
    return sum(A.basis[a] for a in sym) + 1 - len(sym)


def _add_term(K, expr: dict, term, c):
    v = K.reduce(expr.get(term, K.zero) + c)
    if v:
        expr[term] = v
    else:
        expr.pop(term, None)


def _bname(i: int) -> str:
    return f"b{i}"


def equation_terms(A, tup: tuple) -> tuple[dict, dict]:
    """Formal (lhs, rhs) of the simplified functor equation on (b_i, b_j, b_k, b_l).

    lhs = F¹(μ⁴(b_i,b_j,b_k,b_l)); rhs is the six-term expression with
    F³∪F¹, F¹∪F³, F²∪F² and the three μ²-insertions into F³.
    """
    K = A.field
    bi, bj, bk, bl = (_bname(t) for t in tup)
    lhs: dict = {}
    for u, c in A.mu(bi, bj, bk, bl).items():
        _add_term(K, lhs, ("F", (u,)), c)
    rhs: dict = {}
    _add_term(K, rhs, ("cup", (bi, bj, bk), (bl,)), K.one)
    _add_term(K, rhs, ("cup", (bi,), (bj, bk, bl)), K.one)
    _add_term(K, rhs, ("cup", (bi, bj), (bk, bl)), K.one)
    for u, c in A.mu(bi, bj).items():
        _add_term(K, rhs, ("F", (u, bk, bl)), c)
    for u, c in A.mu(bj, bk).items():
        _add_term(K, rhs, ("F", (bi, u, bl)), c)
    for u, c in A.mu(bk, bl).items():
        _add_term(K, rhs, ("F", (bi, bj, u)), c)
    return lhs, rhs


def _sym_key(sym: tuple):
    return (len(sym), sym)


def canonicalize(A, expr: dict, squares_vanish: bool) -> dict:
    """Rewrite cups toward canonical order, cancel, and drop vanishing squares.

    x∪y with x after y is replaced by (-1)^{|x||y|} y∪x.  A square x∪x of
    odd degree is dropped: by antisymmetry when 2 is invertible, by the
    verified vanishing of squares in characteristic 2 (``squares_vanish``).
    """
    K = A.field
    out: dict = {}
    for term, c in expr.items():
        if term[0] == "cup":
            _, x, y = term
            dx, dy = _sym_degree(A, x), _sym_degree(A, y)
            if _sym_key(x) > _sym_key(y):
                x, y = y, x
                c = K.reduce(c * K.sign(dx * dy))
            if x == y and dx % 2:
                if K.char != 2 or squares_vanish:
                    continue
            term = ("cup", x, y)
        _add_term(K, out, term, c)
    return out


def term_label(term) -> str:
    def sym(s):
        return "F{}({})".format(len(s), ",".join(s))

    return sym(term[1]) if term[0] == "F" else "{} u {}".format(sym(term[1]), sym(term[2]))


def format_term(term, c, K) -> str:
    return f"{K.render(c)}*{term_label(term)}"


def remark_residual(params: KnotParams, A) -> dict:
    """2(-1)^p (F³(a0,b2,b5) + F³(b2,a0,b5) + F³(b2,b5,a0)) as a formal expression."""
    K = A.field
    c = K(2 * (-1) ** params.p)
    out: dict = {}
    for sym in (("a0", "b2", "b5"), ("b2", "a0", "b5"), ("b2", "b5", "a0")):
        _add_term(K, out, ("F", sym), c)
    return out


class RandomMorphism:
    """Lazily sampled F^1, F^2, F^3 components with values in a graded ring.

    The sampling space: F¹ on a0 and the b's, F² on pairs of b's, F³ on
    triples of b's and on triples with one a0 among two b's.  Each value
    is uniform over the degree-matching piece of the target.  Drawing on
    demand gives the same distribution on the components that are read.
    """

    def __init__(self, A, H, rng):
        self.A = A
        self.H = H
        self.rng = rng
        self.values: dict = {}
        self.K = H.field
        bs = [f"b{i}" for i in range(1, 7)]
        self.allowed = {("a0",)} | {(b,) for b in bs}
        self.allowed |= set(itertools.product(bs, repeat=2)) | set(itertools.product(bs, repeat=3))
        for b1, b2 in itertools.product(bs, repeat=2):
            self.allowed |= {("a0", b1, b2), (b1, "a0", b2), (b1, b2, "a0")}

    def __call__(self, sym: tuple) -> dict:
        if sym not in self.allowed:
            raise KeyError(f"F{len(sym)}{sym} is outside the sampling space")
        v = self.values.get(sym)
        if v is None:
            deg = _sym_degree(self.A, sym)
            v = {}
            for n in self.H.degree_basis(deg):
                x = self.K.random(self.rng)
                if x:
                    v[n] = x
            self.values[sym] = v
        return v


def evaluate_expression(expr: dict, Fm, H) -> dict:
    K = H.field
    out: dict = {}
    for term, c in expr.items():
        if term[0] == "F":
            vadd(K, out, Fm(term[1]), c)
        else:
            vadd(K, out, H.mul(Fm(term[1]), Fm(term[2])), c)
    return out


def functor_equation_eval(A, H, Fm, tup: tuple) -> tuple[dict, dict]:
    """(lhs, rhs) of the simplified functor equation on (b_i,b_j,b_k,b_l), evaluated in H.

    ``Fm`` is a callable taking an argument tuple and returning an H-vector.
    """
    lhs, rhs = equation_terms(A, tup)
    for expr in (lhs, rhs):
        for term in expr:
            for sym in term[1:]:
                want = _sym_degree(A, sym)
                if any(H.basis[n] != want for n in Fm(sym)):
                    raise ValueError(f"F{len(sym)}{sym} has the wrong degree")
    return evaluate_expression(lhs, Fm, H), evaluate_expression(rhs, Fm, H)


@dataclass
class ObstructionReport:
    params: tuple
    field: str
    lhs_total: dict
    lhs_coefficient: object
    printed_lhs_coefficient: object
    samples: int
    rhs_random_failures: int
    symbolic_residual: list
    squares_vanish: bool
    residual_matches_remark: bool | None
    residual_consistent_with_sampling: bool
    verdict: bool | None

    @property
    def lhs_matches_printed(self) -> bool:
        return self.lhs_coefficient == self.printed_lhs_coefficient


def obstruction_check(params: KnotParams, fld=2, samples: int = 10_000, seed: int = 0, genus: int = 3) -> ObstructionReport:
    """Sum the ten functor equations and decide whether they force F¹(a0) = 0."""
    import random

    if samples <= 0:
        raise ValueError("samples must be positive")
    K = as_field(fld)
    _, _, A, _ = minimal_model(params, K, 4)
    H = cup_ring(genus, K)
    from .surface import squares_vanish as _sq

    sq_ok = _sq(H, 1)[0] if K.char else False
    lhs_sum: dict = {}
    rhs_sum: dict = {}
    for t in obstruction_tuples():
        lhs, rhs = equation_terms(A, t)
        for term, c in lhs.items():
            _add_term(K, lhs_sum, term, c)
        for term, c in rhs.items():
            _add_term(K, rhs_sum, term, c)
    lhs_total = {k: v for k, v in lhs_sum.items()}
    coeff = lhs_sum.get(("F", ("a0",)), K.zero)
    residual = canonicalize(A, rhs_sum, sq_ok)
    rng = random.Random(seed)
    failures = 0
    consistent = True
    for _ in range(samples):
        Fm = RandomMorphism(A, H, rng)
        total = evaluate_expression(rhs_sum, Fm, H)
        if evaluate_expression(residual, Fm, H) != total:
            consistent = False
        if total:
            failures += 1
    remark = canonicalize(A, remark_residual(params, A), sq_ok)
    matches = None if K.char == 2 else residual == remark
    verdict = None
    if K.char == 2:
        verdict = bool(coeff) and not residual and failures == 0
    return ObstructionReport(
        params=params.as_tuple(),
        field=K.name,
        lhs_total={term_label(t): K.render(c) for t, c in sorted(lhs_total.items(), key=_term_key)},
        lhs_coefficient=coeff,
        printed_lhs_coefficient=K((-1) ** (params.p + 1)),
        samples=samples,
        rhs_random_failures=failures,
        symbolic_residual=[format_term(t, c, K) for t, c in sorted(residual.items(), key=_term_key)],
        squares_vanish=sq_ok,
        residual_matches_remark=matches,
        residual_consistent_with_sampling=consistent,
        verdict=verdict,
    )


def _term_key(item):
    term, _ = item
    return (term[0],) + tuple(_sym_key(s) for s in term[1:])


# -- printed tables ------------------------------------------------------------

def printed_B_products(params: KnotParams, fld="Q") -> dict:
    """The dual A∞ products on B exactly as printed (unit entries excluded).

    Returns {arity: {args: vector}}.
    """
    K = as_field(fld)
    p = params.p
    sg = lambda k: K.sign(k)  # noqa: E731
    tab: dict = {1: {}, 2: {}, 3: {}, 4: {}}
    for c in LETTERS:
        n = params.length(c)
        for i in range(n):
            tab[1][(letter(c, i),)] = {chord(c, i): K.one, chord(c, i + 1): K.one}
        tab[1][(letter(c, n),)] = {chord(c, n): K.one}
    m2 = tab[2]
    m2[("b1", "b4")] = {"a0": sg(p + 1), "ax0": K.one}
    m2[("b2", "b5")] = {"a0": sg(p + 1), "ay0": K.one}
    m2[("b3", "b6")] = {"a0": sg(p), "aw0": K.one}
    m2[("b4", "b1")] = {"a0": sg(p), "az0": K.one}
    m2[("b5", "b2")] = {"a0": sg(p), "az0": K.one}
    m2[("b6", "b3")] = {"a0": sg(p + 1), "az0": K(-1)}
    for c in LETTERS:
        shift = 0 if c in "xy" else 1
        for i in range(1, params.length(c) + 1):
            m2[(letter(c, i - 1), letter(c, i))] = {"a0": sg(p + i + shift), chord(c, i): K(-1)}
    ends = [f"w{params.s}", f"z{params.r}", f"y{params.q}", f"x{p}"]
    for u, v in itertools.combinations(ends, 2):
        m2[(u, v)] = {"a0": K(-1)}
    tab[3][("z0", "b6", "b3")] = {"a0": K.one, "az0": K.one}
    for t in itertools.combinations(ends, 3):
        tab[3][t] = {"a0": K.one}
    tab[4][("b4", "b1", "b5", "b2")] = {"a0": K.one, "az0": K.one}
    tab[4][tuple(ends)] = {"a0": K(-1)}
    for d in tab:
        for k in list(tab[d]):
            tab[d][k] = {n: x for n, x in tab[d][k].items() if x}
    return tab


def printed_mu2_A(params: KnotParams, fld="Q") -> dict:
    K = as_field(fld)
    p = params.p
    out = {}
    for t in (("b1", "b4"), ("b2", "b5"), ("b6", "b3")):
        out[t] = {"a0": K.sign(p + 1)}
    for t in (("b4", "b1"), ("b5", "b2"), ("b3", "b6")):
        out[t] = {"a0": K.sign(p)}
    return out


def printed_mu4_A(params: KnotParams, fld="Q") -> dict:
    """The printed values on the ten obstruction tuples (zero where not listed)."""
    K = as_field(fld)
    if params.p % 2 == 0:
        nz = {(4, 1, 2, 5): 1, (5, 2, 4, 1): -1, (5, 2, 5, 2): -1}
    else:
        nz = {(4, 1, 2, 5): 1, (4, 1, 5, 2): 1, (2, 5, 2, 5): -1}
    out = {}
    for t in obstruction_tuples():
        c = K(nz.get(t, 0))
        out[tuple(_bname(i) for i in t)] = {"a0": c} if c else {}
    return out


def compare_products(computed: dict, printed: dict) -> list:
    """Entries where two {arity: {args: vec}} tables differ: (arity, args, computed, printed)."""
    out = []
    for d in sorted(set(computed) | set(printed)):
        a, b = computed.get(d, {}), printed.get(d, {})
        for args in sorted(set(a) | set(b)):
            if a.get(args, {}) != b.get(args, {}):
                out.append((d, args, a.get(args, {}), b.get(args, {})))
    return out


def non_unit_products(B) -> dict:
    return {d: {k: v for k, v in tab.items() if B.unit not in k} for d, tab in B.products.items()}


def is_paired_quadruple(args: tuple) -> bool:
    """(b_i, b_{i±3}, b_j, b_{j±3})."""
    if len(args) != 4 or not all(a.startswith("b") for a in args):
        return False
    i, j, k, l = (int(a[1:]) for a in args)
    return abs(i - j) == 3 and abs(k - l) == 3


def printed_twisted_differential(params: KnotParams, fld="Q") -> dict:
    """∂^ε on every generator as printed, with z_r x_p in ∂^ε a0.

    Generators not listed have zero differential.
    """
    K = as_field(fld)
    p, q, r, s = params.as_tuple()

    def W(*names, c=1):
        return NCPoly.word(K, *names, c=c)

    x, y, z, w = f"x{p}", f"y{q}", f"z{r}", f"w{s}"
    a0 = W(w) + W(z) + W(y) + W(x)
    for u, v in itertools.combinations((w, z, y, x), 2):
        a0 = a0 - W(u, v)
    for t in itertools.combinations((w, z, y, x), 3):
        a0 = a0 + W(*t)
    a0 = a0 - W(w, z, y, x)
    d = {
        "a0": a0,
        "ax0": W("x0") + W("b1", "b4"),
        "ay0": W("y0") + W("b2", "b5"),
        "aw0": W("w0") + W("b3", "b6"),
        "az0": W("z0") + W("b4", "b1") + W("b5", "b2") - W("b6", "b3") + W("z0", "b6", "b3") + W("b4", "b1", "b5", "b2"),
    }
    for c in LETTERS:
        for i in range(1, params.length(c) + 1):
            u, v = letter(c, i - 1), letter(c, i)
            d[chord(c, i)] = W(u) + W(v) - W(u, v)
    zero = NCPoly.zero(K)
    return {g: d.get(g, zero) for g in generators_names(params)}


def compare_differentials(computed: dict, printed: dict) -> list:
    """Generators whose differentials differ: (name, computed, printed)."""
    return [(g, computed.get(g), printed.get(g)) for g in sorted(set(computed) | set(printed))
            if computed.get(g) != printed.get(g)]


def documented_B_deviations(params: KnotParams, fld="Q") -> list:
    """Entries where the dual of the normalized DGA differs from the printed B table.

    For odd p, μ³(z0,b6,b3) and μ⁴(b4,b1,b5,b2) carry the a0-coefficient
    (-1)^p, the same as μ²(b4,b1), where the printed table has +1.  The
    difference is invisible in characteristic 2.  Recorded in SIGNS.md.
    """
    K = as_field(fld)
    if params.p % 2 == 0 or K.char == 2:
        return []
    out = []
    for args in (("z0", "b6", "b3"), ("b4", "b1", "b5", "b2")):
        out.append((len(args), args, {"az0": K.one, "a0": K(-1)}, {"a0": K.one, "az0": K.one}))
    return out
