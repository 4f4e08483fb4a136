"""Fuzz inputs for the .dga parser: mutated valid documents and random bytes."""

import random

from cedga.dgaparse import DGAParseError, parse, serialize
from cedga.lambda_family import KnotParams, build_ce_dga, canonical_augmentation

ALPHABET = "field gen diff aug Q 0123456789 +-*/:= #\n\t xyzab_" + "é∂\x00"


def seed_documents():
    docs = []
    for pqrs in [(2, 2, 3, 3), (3, 3, 4, 4)]:
        kp = KnotParams(*pqrs)
        for f in ("Q", 2, 3):
            docs.append(serialize(build_ce_dga(kp, f), canonical_augmentation(kp, f)))
    docs.append("field 5\ngen a : 1\ngen x : 0\ndiff a = 1 - x*x + 3/2*x\naug x = -1\n")
    return docs


def mutate(text: str, rng: random.Random) -> str:
    s = list(text)
    for _ in range(rng.randint(1, 8)):
        op = rng.randrange(5)
        pos = rng.randrange(len(s) + 1)
        if op == 0 and s:
            del s[min(pos, len(s) - 1)]
        elif op == 1:
            s.insert(pos, rng.choice(ALPHABET))
        elif op == 2 and s:
            i, j = sorted(rng.randrange(len(s)) for _ in range(2))
            s[pos:pos] = s[i:j]
        elif op == 3:
            s.insert(pos, rng.choice(["0", "1" + "0" * rng.randint(1, 6000), str(2 ** 31 - 1), str(2 ** 61 - 1)]))
        else:
            lines = "".join(s).split("\n")
            rng.shuffle(lines)
            s = list("\n".join(lines))
    return "".join(s)


def case(rng: random.Random, docs):
    k = rng.random()
    if k < 0.7:
        return mutate(rng.choice(docs), rng)
    if k < 0.85:
        return "".join(rng.choice(ALPHABET) for _ in range(rng.randint(0, 80)))
    return bytes(rng.randrange(256) for _ in range(rng.randint(0, 60)))


def run_fuzz(n: int, seed: int = 0):
    """Return (cases, parsed_ok, parse_errors, crashes)."""
    rng = random.Random(seed)
    docs = seed_documents()
    ok = errors = 0
    crashes = []
    for _ in range(n):
        data = case(rng, docs)
        try:
            parse(data)
            ok += 1
        except DGAParseError:
            errors += 1
        except Exception as e:  # noqa: BLE001 - anything else is a crash
            crashes.append((data, repr(e)))
    return n, ok, errors, crashes
