"""Permutations in one-line notation: tuples p with p[i] the image of i (0-based).

Composition is function composition, ``compose(a, b)`` applies b first.  The
CLI accepts 1-based one-line notation and converts at the boundary.
"""

from __future__ import annotations

from itertools import combinations, permutations as _itertools_permutations

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    """a after b: (a o b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def transposition(n: int, i: int, j: int) -> Perm:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def cycle(n: int, points: tuple[int, ...]) -> Perm:
    """The cycle sending points[0] -> points[1] -> ... -> points[0]."""
    p = list(range(n))
    for a, b in zip(points, points[1:] + points[:1]):
        p[a] = b
    return tuple(p)


def perm_sign(p: Perm) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Cycle lengths, sorted descending (a partition of n)."""
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def num_cycles(p: Perm) -> int:
    return len(cycle_type(p))


def support(p: Perm) -> frozenset[int]:
    return frozenset(i for i, j in enumerate(p) if i != j)


def all_permutations(n: int) -> list[Perm]:
    return list(_itertools_permutations(range(n)))


def permutations_with_support_at_most(n: int, k: int) -> list[Perm]:
    """All p in S_n moving at most k points, in a fixed deterministic order."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    out = {identity(n)}
    for subset in combinations(range(n), k):
        for q in _itertools_permutations(subset):
            p = list(range(n))
            for a, b in zip(subset, q):
                p[a] = b
            out.add(tuple(p))
    return sorted(out)


def adjacent_word(p: Perm) -> list[int]:
    """Indices i such that p = s_{w[0]} o s_{w[1]} o ... with s_i = (i, i+1).

    Found by bubble-sorting the one-line form; the representation built from
    this word is independent of the decomposition, but a fixed one keeps
    everything reproducible.
    """
    a = list(p)
    swaps = []
    changed = True
    while changed:
        changed = False
        for j in range(len(a) - 1):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                swaps.append(j)
                changed = True
    # sorting applied s_{j} on the right: p o s_{j1} o ... o s_{jm} = id
    return swaps[::-1]


def embed(p: Perm, points: tuple[int, ...], n: int) -> Perm:
    """Embed p in S_len(points) into S_n, acting on the given points."""
    out = list(range(n))
    for a, b in enumerate(p):
        out[points[a]] = points[b]
    return tuple(out)


def parse_one_line(text: str, n: int | None = None) -> Perm:
    """Parse 1-based one-line notation like "2,1,3" into a 0-based tuple."""
    images = tuple(int(tok) - 1 for tok in text.replace(" ", "").split(","))
    if n is not None and len(images) != n:
        raise ValueError(f"expected a permutation of {n} points, got {images}")
    if sorted(images) != list(range(len(images))):
        raise ValueError(f"{text!r} is not a permutation in one-line notation")
    return images


def format_one_line(p: Perm) -> str:
    return ",".join(str(i + 1) for i in p)
