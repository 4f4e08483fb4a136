"""Random DGAs with known homology, for property tests.

A random DGA here is a direct sum of acyclic pairs (u ↦ v) and closed
generators, conjugated by a random triangular automorphism.  Conjugation
keeps ∂² = 0 and gives plenty of nonlinear terms.
"""

from cedga.dga import FreeDGA, change_generators
from cedga.freealg import AlgebraMap, Generator, NCPoly


def random_dga(F, rng, npairs=3, ncyc=2, nwords=4, maxlen=3):
    gens = []
    d = {}
    for i in range(npairs):
        k = rng.choice([-1, 0, 0, 1])
        gens += [Generator(f"u{i}", k + 1), Generator(f"v{i}", k)]
        d[f"u{i}"] = NCPoly.gen(F, f"v{i}")
    for i in range(ncyc):
        gens.append(Generator(f"c{i}", rng.choice([-1, 0, 1, 2])))
    rng.shuffle(gens)
    deg = {g.name: g.degree for g in gens}
    names = [g.name for g in gens]
    fwd = {}
    for idx, g in enumerate(names):
        earlier = names[:idx]
        P = NCPoly.zero(F)
        for _ in range(nwords):
            if not earlier:
                break
            w = tuple(rng.choice(earlier) for _ in range(rng.randint(2, maxlen)))
            if sum(deg[x] for x in w) == deg[g]:
                P = P + NCPoly.word(F, *w, c=rng.choice([1, -1, 2]))
        fwd[g] = NCPoly.gen(F, g) + P
    inv: dict = {}
    for g in names:
        inv[g] = NCPoly.gen(F, g) - AlgebraMap(F, inv)(fwd[g] - NCPoly.gen(F, g))
    return change_generators(FreeDGA(F, gens, d), AlgebraMap(F, fwd), AlgebraMap(F, inv))
