"""Pure-Python implementations of the rule-induction kernels.

The Cython module ``_kernels_c`` exposes the same two functions; the
fastest available one is chosen in :mod:`lemmapat._kernels`.
"""


def edit_script(source, target, allow_copy):
    """Return the canonical minimal edit script, rendered as a string.

    Costs count every operation, copies included. Among minimal scripts
    the operations are chosen left to right preferring copy, then delete,
    then insert.
    """
    n, m = len(source), len(target)
    if not allow_copy:
        return "-" * n + "".join("+" + c for c in target)
    # cost[i][j]: ops needed to turn source[i:] into target[j:]
    cost = [[0] * (m + 1) for _ in range(n + 1)]
    for j in range(m):
        cost[n][j] = m - j
    for i in range(n - 1, -1, -1):
        row, below = cost[i], cost[i + 1]
        row[m] = n - i
        si = source[i]
        for j in range(m - 1, -1, -1):
            best = below[j] + 1
            if row[j + 1] + 1 < best:
                best = row[j + 1] + 1
            if si == target[j] and below[j + 1] + 1 < best:
                best = below[j + 1] + 1
            row[j] = best
    out = []
    i = j = 0
    while i < n or j < m:
        here = cost[i][j]
        if i < n and j < m and source[i] == target[j] and cost[i + 1][j + 1] + 1 == here:
            out.append("→")
            i += 1
            j += 1
        elif i < n and cost[i + 1][j] + 1 == here:
            out.append("-")
            i += 1
        else:
            out.append("+" + target[j])
            j += 1
    return "".join(out)


def best_anchor(form, lemma, allow_copy):
    """Locate the common block that minimises the total edit-script cost.

    Returns ``(f, l, k)`` meaning ``form[f:f+k] == lemma[l:l+k]``, or None
    when the strings share no character. Ties prefer the longer block,
    then the smaller form offset, then the smaller lemma offset.
    """
    n, m = len(form), len(lemma)
    # ext[f][l]: length of the common run starting at form[f], lemma[l]
    ext = [[0] * (m + 1) for _ in range(n + 1)]
    for f in range(n - 1, -1, -1):
        row, below = ext[f], ext[f + 1]
        c = form[f]
        for l in range(m - 1, -1, -1):
            if c == lemma[l]:
                row[l] = below[l + 1] + 1
    if allow_copy:
        pre = _prefix_lcs(form, lemma)
        suf = _suffix_lcs(form, lemma)
    best = None
    best_key = None
    for f in range(n):
        row = ext[f]
        for l in range(m):
            k = row[l]
            if not k:
                continue
            score = n + m - 2 * k
            if allow_copy:
                score -= pre[f][l] + suf[f + k][l + k]
            key = (score, -k)
            if best_key is None or key < best_key:
                best_key = key
                best = (f, l, k)
    return best


def _prefix_lcs(a, b):
    n, m = len(a), len(b)
    t = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        row, up = t[i], t[i - 1]
        c = a[i - 1]
        for j in range(1, m + 1):
            if c == b[j - 1]:
                row[j] = up[j - 1] + 1
            else:
                row[j] = up[j] if up[j] > row[j - 1] else row[j - 1]
    return t


def _suffix_lcs(a, b):
    n, m = len(a), len(b)
    t = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, down = t[i], t[i + 1]
        c = a[i]
        for j in range(m - 1, -1, -1):
            if c == b[j]:
                row[j] = down[j + 1] + 1
            else:
                row[j] = down[j] if down[j] > row[j + 1] else row[j + 1]
    return t
