"""Homology of finite chain complexes over Q, with optional block quotients.

A complex is a family of finite basis lists indexed by integer degree and a
differential lowering degree by one, given as a function on basis keys.  Each
block may additionally be quotiented by the span of supplied generators (the
differential must descend; `check_quotient_compatible` verifies that).  All
arithmetic is exact; homology representatives are canonical vectors in the
echelon coordinates of the quotient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rational_linalg import LinearSolver, RowReducer, SparseMatrix, kernel

__all__ = ["BettiTable", "ChainComplex"]


@dataclass
class BettiTable:
    """Homology dimensions by degree, with per-degree certification flags.

    `exact[q]` records whether dims[q] is complete as stated (no truncation
    artifact); callers that cap weights or degrees clear it accordingly.
    `block_dims[q]` is the chain-level dimension (after any quotient).
    """

    dims: dict
    exact: dict = field(default_factory=dict)
    block_dims: dict = field(default_factory=dict)
    representatives: dict | None = None
    caps: dict = field(default_factory=dict)

    def as_row(self, qs=None):
        qs = sorted(self.dims) if qs is None else list(qs)
        return tuple(self.dims.get(q, 0) for q in qs)


class ChainComplex:
    """blocks: {degree: [keys]}; diff(degree, key) -> {key: Fraction} one
    degree down.  Degrees absent from `blocks` are zero."""

    def __init__(self, blocks, diff, quotient_spans=None):
        self.blocks = {q: list(ks) for q, ks in blocks.items() if ks}
        self.index = {q: {k: i for i, k in enumerate(ks)}
                      for q, ks in self.blocks.items()}
        self.diff = diff
        self.reducers = {}
        for q, elements in (quotient_spans or {}).items():
            if q not in self.blocks:
                continue
            red = RowReducer()
            for el in elements:
                red.insert(self._coords(el, q))
            self.reducers[q] = red

    def _coords(self, el, q):
        """Element dict -> {column: Fraction} in block q's coordinates."""
        vec = {}
        for k, c in el.items():
            c = Fraction(c)
            if not c:
                continue
            idx = self.index.get(q)
            if idx is None or k not in idx:
                raise ValueError(f"key {k!r} not in block {q}")
            vec[idx[k]] = c
        return vec

    def _residual(self, vec, q):
        """Canonical representative of vec mod the quotient span of block q."""
        red = self.reducers.get(q)
        if red is None:
            return vec
        return red.residual(vec)

    def quotient_cols(self, q):
        """Column indices whose classes form the canonical quotient basis."""
        n = len(self.blocks.get(q, ()))
        red = self.reducers.get(q)
        if red is None:
            return list(range(n))
        return [i for i in range(n) if i not in red.rows]

    def dim(self, q):
        return len(self.quotient_cols(q))

    def _diff_columns(self, q):
        """Induced differential on the quotient: one residual dict per
        quotient basis vector of block q, in full coordinates of block q-1."""
        if q not in self.blocks:
            return []
        block = self.blocks[q]
        cols = []
        for c in self.quotient_cols(q):
            img = self.diff(q, block[c])
            cols.append(self._residual(self._coords(img, q - 1), q - 1))
        return cols

    def _matrix(self, cols, q_target):
        pos = {col: p for p, col in enumerate(self.quotient_cols(q_target))}
        entries = []
        for j, col in enumerate(cols):
            for r, v in col.items():
                entries.append((pos[r], j, v))
        return SparseMatrix.from_entries(len(pos), len(cols), entries)

    def check_quotient_compatible(self, q, elements):
        """Verify d(span generators) stays inside the lower span; returns a
        violating generator element or None."""
        for el in elements:
            image = {}
            for k, c in el.items():
                for k2, c2 in self.diff(q, k).items():
                    image[k2] = image.get(k2, Fraction(0)) + Fraction(c) * c2
            if self._residual(self._coords(image, q - 1), q - 1):
                return el
        return None

    def homology(self, qs, representatives=False):
        qs = sorted(qs)
        dcols, ranks = {}, {}
        for q in range(qs[0], qs[-1] + 2):
            dcols[q] = self._diff_columns(q)
            ranks[q] = _rank_cols(dcols[q], self, q - 1)
        dims, block_dims = {}, {}
        reps = {} if representatives else None
        for q in qs:
            n_q = self.dim(q)
            block_dims[q] = n_q
            dims[q] = (n_q - ranks[q]) - ranks[q + 1]
            if representatives:
                reps[q] = self._representatives(
                    q, dcols, self._matrix(dcols[q], q - 1))
        return BettiTable(dims=dims, exact={q: True for q in qs},
                          block_dims=block_dims, representatives=reps)

    def class_coefficients(self, q, element, reps):
        """Express a cycle's homology class in a given representative basis.

        `reps` is a list of cycle elements whose classes span H_q (typically
        the output of homology(..., representatives=True)); returns the
        coefficient dict {rep position: Fraction}.  Raises ValueError when
        the element's class lies outside the span, which for a complete
        representative basis means the element is not a cycle.
        """
        pos = {col: p for p, col in enumerate(self.quotient_cols(q))}
        solver = LinearSolver(len(pos))
        for j, img in enumerate(self._diff_columns(q + 1)):
            solver.add({pos[r]: v for r, v in img.items()}, ("b", j))
        for j, rep in enumerate(reps):
            vec = self._residual(self._coords(rep, q), q)
            solver.add({pos[r]: v for r, v in vec.items()}, ("r", j))
        target = self._residual(self._coords(element, q), q)
        combo = solver.express({pos[r]: v for r, v in target.items()})
        if combo is None:
            raise ValueError(f"element is not a cycle class in degree {q}")
        return {tag[1]: c for tag, c in combo.items() if tag[0] == "r"}

    def _representatives(self, q, dcols, mat_q):
        cols_q = self.quotient_cols(q)
        pos = {col: p for p, col in enumerate(cols_q)}
        red = RowReducer()
        for img in dcols[q + 1]:
            red.insert({pos[r]: v for r, v in img.items()})
        out = []
        block = self.blocks.get(q, [])
        for row in kernel(mat_q).basis:
            vec = dict(row)
            if red.insert(vec) is not None:
                out.append({block[cols_q[p]]: c for p, c in vec.items()})
        return out


def _rank_cols(cols, cx, q_target):
    if not cols:
        return 0
    pos = {col: p for p, col in enumerate(cx.quotient_cols(q_target))}
    red = RowReducer()
    count = 0
    for col in cols:
        if red.insert({pos[r]: v for r, v in col.items()}) is not None:
            count += 1
    return count
