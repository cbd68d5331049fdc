"""Pure-Python implementations of the hot kernels.

Signatures match the compiled ``_ckernels`` module exactly; ``sepreg.kernels``
picks one of the two at import time.

Automata reach the kernels in CSR form: the out-edges of state ``p`` are
``syms[i], dsts[i]`` for ``offsets[p] <= i < offsets[p + 1]``. Symbol ids index
into a 64-bit mask, so ``allowed`` is an int whose bit ``a`` enables symbol ``a``.
"""


def reach_masks(n, offsets, syms, dsts, allowed):
    """Row ``p`` of the result is the bitmask of states reachable from ``p``."""
    out = []
    for src in range(n):
        seen = 1 << src
        stack = [src]
        while stack:
            p = stack.pop()
            for i in range(offsets[p], offsets[p + 1]):
                if (allowed >> syms[i]) & 1:
                    q = dsts[i]
                    if not (seen >> q) & 1:
                        seen |= 1 << q
                        stack.append(q)
        out.append(seen)
    return out


def scc(n, offsets, syms, dsts, allowed):
    """Iterative Tarjan over the edges whose label is in ``allowed``.

    Returns ``(comp_of, comp_alpha)``. Component ids follow completion order,
    which is a reverse topological order of the condensation. ``comp_alpha[c]``
    is the mask of labels on allowed edges with both endpoints in ``c``.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp_of = [-1] * n
    stack = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, offsets[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            end = offsets[v + 1]
            while i < end and not (allowed >> syms[i]) & 1:
                i += 1
            if i < end:
                work[-1] = (v, i + 1)
                w = dsts[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, offsets[w]))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    comp_alpha = [0] * ncomp
    for p in range(n):
        c = comp_of[p]
        for i in range(offsets[p], offsets[p + 1]):
            a = syms[i]
            if (allowed >> a) & 1 and comp_of[dsts[i]] == c:
                comp_alpha[c] |= 1 << a
    return comp_of, comp_alpha


def profile_extend(prof, a, ext, stride):
    """Append symbol ``a`` to every word of a subsequence profile.

    ``prof`` is a little-endian bitset over word indices. ``ext[i * stride + a]``
    is the index of word ``i`` extended by ``a``, or -1 when the word is already
    at the length limit. Returns the bitset of ``prof`` united with the extensions.
    """
    bits = int.from_bytes(prof, "little")
    out = bits
    while bits:
        low = bits & -bits
        i = low.bit_length() - 1
        bits ^= low
        j = ext[i * stride + a]
        if j >= 0:
            out |= 1 << j
    return out.to_bytes(len(prof), "little")
