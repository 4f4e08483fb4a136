"""Finite-dimensional A∞-algebras with sparse product tables.

Conventions follow the usual Fukaya-category ones: arguments are written
``μ^d(a_d, ..., a_1)`` left to right, μ^d has degree 2 - d, and the
A∞ relations read

    Σ (-1)^{✠_n} μ^{d-m+1}(a_d, ..., μ^m(a_{n+m}, ..., a_{n+1}), a_n, ..., a_1) = 0,
    ✠_n = Σ_{k ≤ n} (|a_k| - 1).

A strict unit ``e`` satisfies μ²(a, e) = a, μ²(e, a) = (-1)^{|a|} a and
kills every other product.  Tuples are stored left to right, so the
entries to the right of an inserted block are a_n, ..., a_1.

Vectors are plain dicts ``basis name -> nonzero coefficient``.
"""

from __future__ import annotations

import itertools
import random as _random
from collections import defaultdict
from dataclasses import dataclass, field as dc_field

from .fields import Field
from .dga import DGAError, FreeDGA

UNIT = "1"


# -- sparse vectors ---------------------------------------------------------

def vadd(F: Field, acc: dict, v: dict, c=1) -> dict:
    """acc += c·v in place."""
    for k, x in v.items():
        y = F.reduce(acc.get(k, 0) + c * x)
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vscale(F: Field, v: dict, c) -> dict:
    c = F.reduce(c)
    if not c:
        return {}
    return {k: F.reduce(x * c) for k, x in v.items()}


def vclean(F: Field, v: dict) -> dict:
    return {k: F.reduce(x) for k, x in v.items() if F.reduce(x)}


class AInfinityAlgebra:
    def __init__(self, field: Field, basis: dict, products: dict | None = None, unit: str | None = None):
        self.field = field
        self.basis = dict(basis)
        self.unit = unit
        self.products: dict = {}
        for d, table in (products or {}).items():
            for args, vec in table.items():
                self.add_product(tuple(args), vec)

    @property
    def max_arity(self) -> int:
        return max((d for d, t in self.products.items() if t), default=0)

    def add_product(self, args: tuple, vec: dict):
        F = self.field
        d = len(args)
        for a in args:
            if a not in self.basis:
                raise KeyError(a)
        target = sum(self.basis[a] for a in args) + 2 - d
        for k in vec:
            if self.basis[k] != target:
                raise DGAError(f"μ^{d}{args} ∋ {k} has degree {self.basis[k]}, expected {target}")
        table = self.products.setdefault(d, {})
        cur = table.get(args, {})
        cur = vadd(F, dict(cur), vec)
        if cur:
            table[args] = cur
        else:
            table.pop(args, None)

    def mu(self, *args) -> dict:
        return self.products.get(len(args), {}).get(tuple(args), {})

    def mu_vec(self, vectors) -> dict:
        """Multilinear extension of μ^d to vectors (no signs: they sit in the relations)."""
        F = self.field
        d = len(vectors)
        table = self.products.get(d)
        out: dict = {}
        if not table or any(not v for v in vectors):
            return out
        size = 1
        for v in vectors:
            size *= len(v)
        if size <= len(table):
            for combo in itertools.product(*(v.items() for v in vectors)):
                res = table.get(tuple(k for k, _ in combo))
                if res:
                    c = 1
                    for _, x in combo:
                        c *= x
                    vadd(F, out, res, c)
        else:
            for args, res in table.items():
                c = 1
                for a, v in zip(args, vectors):
                    x = v.get(a)
                    if not x:
                        break
                    c *= x
                else:
                    vadd(F, out, res, c)
        return out

    def entries(self, d: int):
        return sorted(self.products.get(d, {}).items())

    def nonunit_basis(self) -> list:
        return [b for b in self.basis if b != self.unit]

    def add_strict_unit(self, name: str = UNIT):
        """Adjoin a degree-0 strict unit (if not present) with its μ² entries."""
        if name not in self.basis:
            self.basis = {name: 0, **self.basis}
        self.unit = name
        F = self.field
        for a, deg in self.basis.items():
            if a == name:
                continue
            self.products.setdefault(2, {})[(a, name)] = {a: F.one}
            self.products[2][(name, a)] = {a: F.sign(deg)}
        self.products.setdefault(2, {})[(name, name)] = {name: F.one}
        return self

    def __repr__(self) -> str:
        counts = {d: len(t) for d, t in sorted(self.products.items()) if t}
        return f"AInfinityAlgebra({len(self.basis)} basis elements over {self.field!r}, entries {counts})"


def dual_sign(word, degree) -> int:
    """Koszul sign (-1)^{Σ_{i<j} |g_i||g_j|} attached to a word when dualizing."""
    tot = 0
    acc = 0
    for g in word:
        r = degree[g]
        tot += acc * r
        acc += r
    return -1 if tot % 2 else 1


def dualize(d: FreeDGA, unit: str = UNIT) -> AInfinityAlgebra:
    """A∞-algebra dual to an augmented free DGA.

    Basis: the unit plus the generators, with |g| shifted up by one.  A
    word g_1...g_k with coefficient c in ∂a contributes
    dual_sign·c·a to μ^k(g_1, ..., g_k).
    """
    F = d.field
    if unit in d.degree:
        raise DGAError(f"generator name {unit!r} is reserved for the unit")
    A = AInfinityAlgebra(F, {g.name: g.degree + 1 for g in d.generators})
    for a in d.names:
        for w, c in d.differential[a].terms.items():
            if not w:
                raise DGAError(f"∂{a} has a constant term; dualize the twisted DGA")
            A.add_product(w, {a: F.reduce(dual_sign(w, d.degree) * c)})
    A.add_strict_unit(unit)
    return A


# -- relation checking ------------------------------------------------------

def relation_value(A: AInfinityAlgebra, args: tuple) -> dict:
    """Left side of the A∞ relation on ``args`` (must vanish)."""
    F = A.field
    n = len(args)
    deg = A.basis
    out: dict = {}
    # right_shift[i] = Σ_{k >= i} (|args[k]| - 1)
    right = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        right[i] = right[i + 1] + deg[args[i]] - 1
    for m in range(1, n + 1):
        inner_tab = A.products.get(m)
        if not inner_tab:
            continue
        outer_tab = A.products.get(n - m + 1)
        if not outer_tab:
            continue
        for i in range(0, n - m + 1):
            inner = inner_tab.get(args[i:i + m])
            if not inner:
                continue
            sgn = -1 if right[i + m] % 2 else 1
            pre, post = args[:i], args[i + m:]
            for u, c in inner.items():
                res = outer_tab.get(pre + (u,) + post)
                if res:
                    vadd(F, out, res, sgn * c)
    return out


def _support_tuples(A: AInfinityAlgebra, arity: int) -> set:
    """All tuples of the given arity on which some relation term can be nonzero."""
    producers = defaultdict(list)
    for m, tab in A.products.items():
        for args, vec in tab.items():
            for u in vec:
                producers[u].append(args)
    out = set()
    for k, tab in A.products.items():
        m = arity - k + 1
        if m < 1:
            continue
        for oargs in tab:
            for i, u in enumerate(oargs):
                for iargs in producers.get(u, ()):
                    if len(iargs) == m:
                        out.add(oargs[:i] + iargs + oargs[i + 1:])
    return out


@dataclass
class RelationReport:
    field: Field
    tested: dict = dc_field(default_factory=dict)
    violations: list = dc_field(default_factory=list)
    method: str = ""

    @property
    def passed(self) -> bool:
        return not self.violations


def check_ainfty_relations(
    A: AInfinityAlgebra,
    arities,
    mode: str = "exhaustive",
    seed: int | None = None,
    samples: int = 0,
    max_violations: int = 20,
) -> RelationReport:
    """Verify the A∞ relations.

    ``mode="exhaustive"`` checks every tuple on which some term can be
    nonzero (every other tuple satisfies the relation trivially);
    ``mode="brute"`` loops over the full tuple space; ``mode="random"``
    draws ``samples`` tuples per arity from a seeded RNG, half uniformly
    and half seeded from the support of the product tables.
    """
    rep = RelationReport(A.field, method=mode)
    basis = list(A.basis)
    if mode == "random":
        if seed is None or samples <= 0:
            raise ValueError("random mode needs a seed and a positive sample count")
        rng = _random.Random(seed)
    for n in arities:
        if mode == "brute":
            tuples = itertools.product(basis, repeat=n)
        elif mode == "exhaustive":
            tuples = sorted(_support_tuples(A, n))
        elif mode == "random":
            support = sorted(_support_tuples(A, n))
            tuples = []
            for k in range(samples):
                if support and k % 2:
                    tuples.append(support[rng.randrange(len(support))])
                else:
                    tuples.append(tuple(rng.choice(basis) for _ in range(n)))
        else:
            raise ValueError(f"unknown mode {mode!r}")
        count = 0
        for t in tuples:
            count += 1
            v = relation_value(A, t)
            if v and len(rep.violations) < max_violations:
                rep.violations.append((t, v))
            elif v:
                rep.violations.append((t, None))
        rep.tested[n] = count
    return rep


@dataclass
class UnitalityReport:
    unit: str | None
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.unit is not None and not self.failures


def check_strict_unitality(A: AInfinityAlgebra) -> UnitalityReport:
    F = A.field
    e = A.unit
    rep = UnitalityReport(e)
    if e is None:
        rep.failures.append(("no unit", None))
        return rep
    if A.basis[e] != 0:
        rep.failures.append(("unit degree", A.basis[e]))
    if A.mu(e):
        rep.failures.append((("μ1", e), A.mu(e)))
    for a, deg in A.basis.items():
        if vclean(F, A.mu(a, e)) != {a: F.one}:
            rep.failures.append((("μ2", a, e), A.mu(a, e)))
        if vclean(F, A.mu(e, a)) != {a: F.sign(deg)}:
            rep.failures.append((("μ2", e, a), A.mu(e, a)))
    for d, tab in A.products.items():
        if d == 2:
            continue
        for args, vec in tab.items():
            if e in args and vec:
                rep.failures.append((("μ%d" % d,) + args, vec))
    return rep


# -- morphisms --------------------------------------------------------------

class MorphismCandidate:
    """Multilinear maps F^d of degree 1 - d between graded spaces."""

    def __init__(self, field: Field, source: dict, target: dict, components: dict | None = None):
        self.field = field
        self.source = dict(source)
        self.target = dict(target)
        self.components: dict = {}
        for d, tab in (components or {}).items():
            for args, vec in tab.items():
                self.set(tuple(args), vec)

    def set(self, args: tuple, vec: dict):
        F = self.field
        vec = vclean(F, vec)
        want = sum(self.source[a] for a in args) + 1 - len(args)
        for k in vec:
            if self.target[k] != want:
                raise DGAError(f"F^{len(args)}{args} ∋ {k} has degree {self.target[k]}, expected {want}")
        tab = self.components.setdefault(len(args), {})
        if vec:
            tab[args] = vec
        else:
            tab.pop(args, None)

    def __call__(self, *args) -> dict:
        return self.components.get(len(args), {}).get(tuple(args), {})

    def degree_errors(self) -> list:
        bad = []
        for d, tab in self.components.items():
            for args, vec in tab.items():
                want = sum(self.source[a] for a in args) + 1 - d
                bad += [(args, k) for k in vec if self.target[k] != want]
        return bad


def morphism_defect(Fm: MorphismCandidate, A: AInfinityAlgebra, B: AInfinityAlgebra, args: tuple) -> dict:
    """LHS - RHS of the A∞-functor equation on ``args``."""
    K = A.field
    n = len(args)
    out: dict = {}
    right = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        right[i] = right[i + 1] + A.basis[args[i]] - 1
    for m in range(1, n + 1):
        tab = A.products.get(m)
        if not tab:
            continue
        for i in range(0, n - m + 1):
            inner = tab.get(args[i:i + m])
            if not inner:
                continue
            sgn = -1 if right[i + m] % 2 else 1
            for u, c in inner.items():
                vadd(K, out, Fm(*(args[:i] + (u,) + args[i + m:])), sgn * c)
    for parts in compositions(n):
        vecs = []
        pos = 0
        for s in parts:
            vecs.append(Fm(*args[pos:pos + s]))
            pos += s
        vadd(K, out, B.mu_vec(vecs), -1)
    return out


def compositions(n: int):
    """Ordered compositions of n into positive parts."""
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts, last = [], 0
        for i, c in enumerate(cuts, 1):
            if c:
                parts.append(i - last)
                last = i
        parts.append(n - last)
        yield tuple(parts)
