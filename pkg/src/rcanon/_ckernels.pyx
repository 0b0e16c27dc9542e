# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for the pre-normal search; see ``_pykernels`` for the contract."""

cdef int PERM[8][4]
cdef int SIGN[8]
PERM[0][:] = [0, 1, 2, 3]
PERM[1][:] = [1, 0, 2, 3]
PERM[2][:] = [0, 1, 3, 2]
PERM[3][:] = [1, 0, 3, 2]
PERM[4][:] = [2, 3, 0, 1]
PERM[5][:] = [3, 2, 0, 1]
PERM[6][:] = [2, 3, 1, 0]
PERM[7][:] = [3, 2, 1, 0]
SIGN[:] = [1, -1, -1, 1, 1, -1, -1, 1]


def prenormal_codes(c):
    cdef long long a = c[0], b = c[1], x = c[2], y = c[3], t
    cdef int sign = 1
    if a == b or x == y:
        return 0, None
    if b < a:
        t = a; a = b; b = t
        sign = -sign
    if y < x:
        t = x; x = y; y = t
        sign = -sign
    if x < a or (x == a and y < b):
        return sign, (x, y, a, b)
    return sign, (a, b, x, y)


def orient_min(c, long long unfixed_from, long long next_code):
    cdef long long src[4]
    cdef long long blk[4]
    cdef long long best[4]
    cdef long long seen_old[4]
    cdef long long seen_new[4]
    cdef int k, i, j, nseen, cmp, have = 0
    cdef long long code
    hits = []
    for i in range(4):
        src[i] = c[i]
    for k in range(8):
        nseen = 0
        for i in range(4):
            code = src[PERM[k][i]]
            if code >= unfixed_from:
                for j in range(nseen):
                    if seen_old[j] == code:
                        code = seen_new[j]
                        break
                else:
                    seen_old[nseen] = code
                    seen_new[nseen] = next_code + nseen
                    code = seen_new[nseen]
                    nseen += 1
            blk[i] = code
        if not have:
            cmp = -1
        else:
            cmp = 0
            for i in range(4):
                if blk[i] != best[i]:
                    cmp = -1 if blk[i] < best[i] else 1
                    break
        if cmp < 0:
            for i in range(4):
                best[i] = blk[i]
            have = 1
            hits = [k]
        elif cmp == 0:
            hits.append(k)
    return (best[0], best[1], best[2], best[3]), hits
