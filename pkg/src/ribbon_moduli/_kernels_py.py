"""Pure-Python canonical-traversal kernels.

Reference implementation of the hot loops; ``_kernels.pyx`` mirrors it line
for line and must return identical values.
"""

from __future__ import annotations


def traverse(sigma0, sigma1, labels, start):
    """Breadth-first relabeling of a half-edge system from ``start``.

    Half-edges are numbered in discovery order, expanding each popped
    half-edge through ``sigma0`` first and ``sigma1`` second. Returns the
    relabeled ``(sigma0, sigma1, labels)`` flattened into one tuple, together
    with the discovery order (new index -> old half-edge).
    """
    size = len(sigma0)
    new = [-1] * size
    order = [start]
    new[start] = 0
    head = 0
    while head < len(order):
        h = order[head]
        head += 1
        for nxt in (sigma0[h], sigma1[h]):
            if new[nxt] < 0:
                new[nxt] = len(order)
                order.append(nxt)
    if len(order) != size:
        raise ValueError("half-edge system is not connected")
    enc = [0] * (3 * size)
    for i, h in enumerate(order):
        enc[i] = new[sigma0[h]]
        enc[size + i] = new[sigma1[h]]
        enc[2 * size + i] = labels[h]
    return tuple(enc), order


def canonical(sigma0, sigma1, labels):
    """Lexicographically least traversal encoding over all starts.

    Returns ``(encoding, orders)`` where ``orders`` lists the discovery order
    of every start attaining the minimum. Any two such orders define an
    automorphism, so ``len(orders)`` is the automorphism group order.
    """
    best = None
    orders = []
    for start in range(len(sigma0)):
        enc, order = traverse(sigma0, sigma1, labels, start)
        if best is None or enc < best:
            best = enc
            orders = [order]
        elif enc == best:
            orders.append(order)
    return best, orders
