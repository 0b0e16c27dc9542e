"""Pure-Python kernels for the pre-normal search (fallback for ``_ckernels``).

Indices are integer codes.  Codes below ``unfixed_from`` are fixed (free
indices and issued integers); codes at or above it are not yet renamed.
"""

SYM8 = (
    (0, 1, 2, 3, 1),
    (1, 0, 2, 3, -1),
    (0, 1, 3, 2, -1),
    (1, 0, 3, 2, 1),
    (2, 3, 0, 1, 1),
    (3, 2, 0, 1, -1),
    (2, 3, 1, 0, -1),
    (3, 2, 1, 0, 1),
)


def prenormal_codes(c):
    """Pre-normal form of a coded factor: ``(sign, codes)`` or ``(0, None)``."""
    a, b, x, y = c
    if a == b or x == y:
        return 0, None
    sign = 1
    if b < a:
        a, b = b, a
        sign = -sign
    if y < x:
        x, y = y, x
        sign = -sign
    if (x, y) < (a, b):
        return sign, (x, y, a, b)
    return sign, (a, b, x, y)


def orient_min(c, unfixed_from, next_code):
    """Smallest block over the eight Sym8 readings of ``c``.

    Unfixed codes are replaced by ``next_code, next_code + 1, ...`` in order of
    first appearance.  Returns the block and the orientation numbers reaching it.
    """
    best = None
    hits = []
    for k in range(8):
        p0, p1, p2, p3, _ = SYM8[k]
        seen = {}
        block = []
        for code in (c[p0], c[p1], c[p2], c[p3]):
            if code >= unfixed_from:
                new = seen.get(code)
                if new is None:
                    new = seen[code] = next_code + len(seen)
                code = new
            block.append(code)
        block = tuple(block)
        if best is None or block < best:
            best = block
            hits = [k]
        elif block == best:
            hits.append(k)
    return best, hits
