"""Pure-Python fallback for :mod:`cedga._ext._rank`."""


def rank_mod_p(M, p):
    """Rank of an integer matrix over F_p."""
    rows = [[int(x) % p for x in r] for r in M]
    m = len(rows)
    n = len(rows[0]) if m else 0
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = next((i for i in range(row, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = pow(rows[row][col], -1, p)
        pr = [x * inv % p for x in rows[row]]
        rows[row] = pr
        for i in range(row + 1, m):
            f = rows[i][col]
            if f:
                ri = rows[i]
                rows[i] = [(a - f * b) % p for a, b in zip(ri, pr)]
        row += 1
    return row
