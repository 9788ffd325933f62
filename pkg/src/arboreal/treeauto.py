"""Automorphisms of the complete ell-ary rooted tree and their level signs.

An automorphism is given by labels: for each internal vertex (a word over
``range(ell)`` of length < n) a permutation of ``range(ell)`` telling where
its children go.  Missing labels are the identity.
"""

from __future__ import annotations

from random import Random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Sequence, Tuple

__all__ = ["TreeAut", "leaf_action", "perm_sign", "sgn_vector", "sign_preimage"]

Word = Tuple[int, ...]
Perm = Tuple[int, ...]


@dataclass(frozen=True)
class TreeAut:
    ell: int
    n: int
    labels: Dict[Word, Perm] = field(default_factory=dict)

    def __post_init__(self):
        if self.ell < 2 or self.n < 0:
            raise ValueError("need ell >= 2 and n >= 0")
        clean = {}
        ident = tuple(range(self.ell))
        for w, perm in self.labels.items():
            w, perm = tuple(w), tuple(perm)
            if len(w) >= self.n or any(not 0 <= x < self.ell for x in w):
                raise ValueError(f"bad vertex {w!r}")
            if sorted(perm) != list(ident):
                raise ValueError(f"bad permutation {perm!r}")
            if perm != ident:
                clean[w] = perm
        object.__setattr__(self, "labels", clean)

    @classmethod
    def identity(cls, ell: int, n: int) -> "TreeAut":
        return cls(ell, n, {})

    @classmethod
    def random(cls, ell: int, n: int, rng: Random) -> "TreeAut":
        labels = {}
        for k in range(n):
            for w in product(range(ell), repeat=k):
                perm = list(range(ell))
                rng.shuffle(perm)
                labels[w] = tuple(perm)
        return cls(ell, n, labels)

    def label(self, w: Word) -> Perm:
        return self.labels.get(tuple(w), tuple(range(self.ell)))

    def apply(self, w: Sequence[int]) -> Word:
        out = []
        for k in range(len(w)):
            out.append(self.label(tuple(w[:k]))[w[k]])
        return tuple(out)

    def __mul__(self, other: "TreeAut") -> "TreeAut":
        """``(s * t)(w) = s(t(w))``."""
        if (self.ell, self.n) != (other.ell, other.n):
            raise ValueError("tree shapes differ")
        labels = {}
        for k in range(self.n):
            for w in product(range(self.ell), repeat=k):
                tw = other.apply(w)
                s_lab, t_lab = self.label(tw), other.label(w)
                labels[w] = tuple(s_lab[t_lab[i]] for i in range(self.ell))
        return TreeAut(self.ell, self.n, labels)

    def to_json(self) -> dict:
        return {"ell": self.ell, "n": self.n,
                "labels": {"".join(map(str, w)) or "root": list(p)
                           for w, p in sorted(self.labels.items())}}

    @classmethod
    def from_json(cls, obj: dict) -> "TreeAut":
        labels = {}
        for key, perm in obj.get("labels", {}).items():
            w = () if key in ("", "root") else tuple(int(ch) for ch in key)
            labels[w] = tuple(perm)
        return cls(int(obj["ell"]), int(obj["n"]), labels)


def _index(w: Word, ell: int) -> int:
    i = 0
    for x in w:
        i = i * ell + x
    return i


def leaf_action(t: TreeAut, m: int) -> List[int]:
    """Permutation of the ell^m level-m words, as a list over base-ell indices."""
    if not 1 <= m <= t.n:
        raise ValueError(f"level {m} outside 1..{t.n}")
    return [_index(t.apply(w), t.ell) for w in product(range(t.ell), repeat=m)]


def perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return -1 if parity else 1


def sgn_vector(t: TreeAut) -> Tuple[int, ...]:
    return tuple(perm_sign(leaf_action(t, m)) for m in range(1, t.n + 1))


def sign_preimage(target: Sequence[int], ell: int = 2) -> TreeAut:
    """An automorphism whose level signs are ``target``.

    Swapping the first two children of the vertex 0^(m-1) is ell^(j-m)
    transpositions at level j >= m: for even ell that flips level m alone,
    for odd ell it flips every level from m down.
    """
    n = len(target)
    if any(s not in (1, -1) for s in target):
        raise ValueError("target entries must be +1 or -1")
    swap = (1, 0) + tuple(range(2, ell))
    labels = {}
    prev = 1
    for m, s in enumerate(target, start=1):
        flip = s == -1 if ell % 2 == 0 else s != prev
        if flip:
            labels[(0,) * (m - 1)] = swap
        prev = s
    return TreeAut(ell, n, labels)
