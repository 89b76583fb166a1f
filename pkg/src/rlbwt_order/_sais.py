"""Suffix array construction by induced sorting (SA-IS), JIT-compiled.

Input contract: an int32 array whose last element is 0, with 0 occurring
nowhere else and every other value in [1, sigma].  This is exactly the
shape produced by text.apply_ordering, so suffix sorting under any
alphabet ordering reduces to plain integer SA-IS.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def sais(s, sigma):
    n = s.shape[0]
    sa = np.full(n, -1, dtype=np.int32)
    if n == 1:
        sa[0] = 0
        return sa

    # suffix types: True = S-type (smaller than the next suffix)
    is_s = np.zeros(n, dtype=np.bool_)
    is_s[n - 1] = True
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1] or (s[i] == s[i + 1] and is_s[i + 1]):
            is_s[i] = True

    bucket = np.zeros(sigma + 1, dtype=np.int32)
    for i in range(n):
        bucket[s[i]] += 1
    heads = np.zeros(sigma + 1, dtype=np.int32)
    tails = np.zeros(sigma + 1, dtype=np.int32)
    acc = 0
    for c in range(sigma + 1):
        heads[c] = acc
        acc += bucket[c]
        tails[c] = acc - 1

    # leftmost S-type positions, in text order
    lms = np.empty(n, dtype=np.int32)
    n_lms = 0
    for i in range(1, n):
        if is_s[i] and not is_s[i - 1]:
            lms[n_lms] = i
            n_lms += 1

    # first pass: drop LMS suffixes at bucket tails, then induce L and S
    tcur = tails.copy()
    for k in range(n_lms - 1, -1, -1):
        i = lms[k]
        sa[tcur[s[i]]] = i
        tcur[s[i]] -= 1
    hcur = heads.copy()
    for k in range(n):
        j = sa[k] - 1
        if sa[k] > 0 and not is_s[j]:
            sa[hcur[s[j]]] = j
            hcur[s[j]] += 1
    tcur = tails.copy()
    for k in range(n - 1, -1, -1):
        j = sa[k] - 1
        if sa[k] > 0 and is_s[j]:
            sa[tcur[s[j]]] = j
            tcur[s[j]] -= 1

    # name LMS substrings by their rank in the induced order
    name = np.full(n, -1, dtype=np.int32)
    cur_name = 0
    prev = -1
    for k in range(n):
        i = sa[k]
        if i > 0 and is_s[i] and not is_s[i - 1]:
            if prev >= 0:
                diff = False
                d = 0
                while True:
                    pi = prev + d
                    qi = i + d
                    if pi >= n or qi >= n:
                        diff = pi < n or qi < n
                        break
                    if s[pi] != s[qi]:
                        diff = True
                        break
                    p_lms = d > 0 and is_s[pi] and not is_s[pi - 1]
                    q_lms = d > 0 and is_s[qi] and not is_s[qi - 1]
                    if p_lms or q_lms:
                        diff = not (p_lms and q_lms)
                        break
                    d += 1
                if diff:
                    cur_name += 1
            name[i] = cur_name
            prev = i

    s1 = np.empty(n_lms, dtype=np.int32)
    for k in range(n_lms):
        s1[k] = name[lms[k]]
    if cur_name + 1 == n_lms:
        # all names distinct: order is immediate
        sa1 = np.empty(n_lms, dtype=np.int32)
        for k in range(n_lms):
            sa1[s1[k]] = k
    else:
        sa1 = sais(s1, cur_name)

    # second pass: drop LMS suffixes in their true order, induce again
    sa[:] = -1
    tcur = tails.copy()
    for k in range(n_lms - 1, -1, -1):
        i = lms[sa1[k]]
        sa[tcur[s[i]]] = i
        tcur[s[i]] -= 1
    hcur = heads.copy()
    for k in range(n):
        j = sa[k] - 1
        if sa[k] > 0 and not is_s[j]:
            sa[hcur[s[j]]] = j
            hcur[s[j]] += 1
    tcur = tails.copy()
    for k in range(n - 1, -1, -1):
        j = sa[k] - 1
        if sa[k] > 0 and is_s[j]:
            sa[tcur[s[j]]] = j
            tcur[s[j]] -= 1
    return sa


@njit(cache=True)
def rle_pair_count(lcol):
    """Number of (symbol, count<=255) pairs needed to run-length encode lcol."""
    n = lcol.shape[0]
    if n == 0:
        return 0
    pairs = 0
    run = 1
    for i in range(1, n):
        if lcol[i] == lcol[i - 1]:
            run += 1
        else:
            pairs += (run + 254) // 255
            run = 1
    pairs += (run + 254) // 255
    return pairs


@njit(cache=True)
def bwt_pair_count(ranks, sigma):
    """RLE pair count of the transform of a remapped text, without
    materializing the transformed string."""
    sa = sais(ranks, sigma)
    n = sa.shape[0]
    pairs = 0
    run = 1
    prev = ranks[sa[0] - 1] if sa[0] > 0 else ranks[n - 1]
    for k in range(1, n):
        i = sa[k]
        c = ranks[i - 1] if i > 0 else ranks[n - 1]
        if c == prev:
            run += 1
        else:
            pairs += (run + 254) // 255
            run = 1
            prev = c
    pairs += (run + 254) // 255
    return pairs
