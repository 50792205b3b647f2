"""Graded vector spaces, Koszul signs, and canonical words.

Conventions used throughout the package:

* A basis element of the underlying space has unsuspended degree >= 0; the
  suspension shifts every degree up by exactly 1, so an ungraded algebra sits
  in suspended degree 1.
* Words are tuples of basis indices into a `Space`; the degree of a word is
  the sum of its factor degrees (suspended degrees everywhere past this
  module's `suspend`).
* A permutation p acts on the left: the factor in slot i moves to slot p[i],
  and the sign is the product of (-1)^(d_i * d_j) over pairs that invert.
  act(compose(p, q)) == act(p) . act(q).
* Symmetric words are canonicalized by sorting the indices; the Koszul sign of
  the sorting rearrangement is returned alongside, and a word with a repeated
  odd-degree factor is zero.
* Operators passing a tensor factor pick up (-1)^(|op| * |factor|); tensor
  products of operators follow (F (x) G)(x (x) y) = (-1)^(|G||x|) F x (x) G y.

Elements are plain dicts {word: Fraction}; helpers here keep them normalized
(no zero coefficients).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "GradedSpace",
    "Space",
    "koszul_sign",
    "sign_of_arrangement",
    "act",
    "compose",
    "inverse",
    "symmetrize",
    "shuffles",
    "unshuffle_splits",
    "canonical_sym",
    "add_into",
    "scale",
    "element_eq",
]


@dataclass(frozen=True)
class GradedSpace:
    """Finite list of labelled basis elements with unsuspended degrees >= 0."""

    labels: tuple
    degrees: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise ValueError("labels and degrees must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")
        for d in self.degrees:
            if not isinstance(d, int) or d < 0:
                raise ValueError(f"unsuspended degrees must be integers >= 0, got {d!r}")

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        return self.labels.index(label)

    def suspend(self):
        """The shifted space: degree d becomes d + 1."""
        return Space(self.labels, tuple(d + 1 for d in self.degrees))


@dataclass(frozen=True)
class Space:
    """Suspended basis data: every degree is >= 1.  Words index into this."""

    labels: tuple
    degrees: tuple

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        return self.labels.index(label)

    def word_degree(self, word):
        degs = self.degrees
        return sum(degs[i] for i in word)


def sign_of_arrangement(degrees, order):
    """Koszul sign of rearranging factors with the given degrees so that the
    output reads factor order[0], order[1], ... of the input.

    `order` is a permutation of range(len(degrees)) as source positions; the
    sign is (-1)^sum over inverted pairs of the degree product.
    """
    sign = 1
    n = len(order)
    for a in range(n):
        for b in range(a + 1, n):
            if order[a] > order[b]:
                if (degrees[order[a]] * degrees[order[b]]) % 2:
                    sign = -sign
    return sign


def inverse(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def compose(p, q):
    """(p . q)[i] = p[q[i]]: apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(q)))


def koszul_sign(perm, degrees):
    """Sign of the left action of perm on factors with the given degrees."""
    return sign_of_arrangement(degrees, inverse(perm))


def act(perm, word, degrees):
    """Left action on a word: slot i content moves to slot perm[i].

    Returns (sign, new_word) where degrees are those of the word's factors
    (not of the whole space).
    """
    inv = inverse(perm)
    new_word = tuple(word[inv[j]] for j in range(len(word)))
    return sign_of_arrangement(degrees, inv), new_word


def symmetrize(element, space):
    """Average over all signed permutations: the projector onto symmetric
    tensors (coefficients in Q, so the 1/n! is exact)."""
    out = {}
    for word, coeff in element.items():
        n = len(word)
        degs = [space.degrees[i] for i in word]
        norm = Fraction(1, 1)
        for k in range(2, n + 1):
            norm /= k
        for perm in itertools.permutations(range(n)):
            sign, new_word = act(perm, word, degs)
            add_into(out, new_word, coeff * norm * sign)
    return out


def shuffles(p, q):
    """All (p,q)-shuffles as permutations: slots 0..p-1 and p..p+q-1 keep
    their relative order in the output."""
    n = p + q
    out = []
    for positions in itertools.combinations(range(n), p):
        perm = [0] * n
        rest = [j for j in range(n) if j not in positions]
        for i, pos in enumerate(positions):
            perm[i] = pos
        for i, pos in enumerate(rest):
            perm[p + i] = pos
        out.append(tuple(perm))
    return out


def unshuffle_splits(word, degrees, k):
    """All ways to pull k factors to the front, keeping relative order on both
    sides: yields (sign, front, back) with the Koszul sign of the rearrangement.

    This enumerates the (k, n-k)-unshuffles acting on the word.
    """
    n = len(word)
    for chosen in itertools.combinations(range(n), k):
        rest = [i for i in range(n) if i not in chosen]
        order = list(chosen) + rest
        sign = sign_of_arrangement(degrees, order)
        front = tuple(word[i] for i in chosen)
        back = tuple(word[i] for i in rest)
        yield sign, front, back


def canonical_sym(word, space):
    """Canonical representative of a symmetric word: indices sorted ascending.

    Returns (sign, sorted_word); sign 0 means the word vanishes (a repeated
    factor of odd suspended degree).
    """
    n = len(word)
    if n <= 1:
        return 1, tuple(word)
    degs = space.degrees
    order = sorted(range(n), key=lambda i: word[i])
    sorted_word = tuple(word[i] for i in order)
    for a in range(n - 1):
        if sorted_word[a] == sorted_word[a + 1] and degs[sorted_word[a]] % 2:
            return 0, sorted_word
    word_degs = [degs[i] for i in word]
    return sign_of_arrangement(word_degs, order), sorted_word


def add_into(element, word, coeff):
    """element[word] += coeff, dropping zeros."""
    if not coeff:
        return
    nv = element.get(word, 0) + coeff
    if nv:
        element[word] = nv
    else:
        del element[word]


def scale(element, coeff):
    if not coeff:
        return {}
    return {w: c * coeff for w, c in element.items()}


def element_eq(a, b):
    return {w: c for w, c in a.items() if c} == {w: c for w, c in b.items() if c}
