"""Homotopy-associative structures and their cyclic complexes.

An algebra is stored twice: the input-level operations mu_k on the unsuspended
graded space (mu_k raises degree by k-2), and the induced odd cochain m on the
suspension, where all mu_k collapse to a single degree -1 coderivation of the
tensor coalgebra.  The sign of the translation on basis elements is

    m_k(s a_1, ..., s a_k) = (-1)^(sum_t (k-t) |a_t|) s mu_k(a_1, ..., a_k)

with unsuspended degrees in the exponent; squaring of the coderivation is then
exactly the full tower of higher associativity identities.

The cyclic complex lives on nonempty tensor words over the suspension, graded
so that degree q collects words of total suspended degree q+1; this is finite
in each degree because suspended degrees are >= 1, so no weight cap is ever
needed for correctness (one may still be imposed for speed, flagged inexact).
The cyclic rotation moves the last factor to the front with its Koszul sign,
and the boundary adds wraparound terms to the coderivation: rotate a tail
segment to the front, then apply m_k to the leading window with no prefix
sign.  For an ungraded associative algebra this reduces term-for-term to the
classical cyclic boundary and (-1)^n rotation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .chain import BettiTable, ChainComplex
from .coalgebra import Cochain, WeightCap, bracket, extend_coderivation
from .graded import GradedSpace, act, add_into
from .rational_linalg import RowReducer, Subspace

__all__ = [
    "AInftyAlgebra",
    "StructureReport",
    "UnitalityReport",
    "CyclicComplexSlice",
    "check_stasheff",
    "check_strict_unit",
    "from_associative",
    "from_dga",
    "suspend_operations",
    "cyclic_words",
    "rotate_word",
    "cyclic_lambda",
    "cyclic_boundary",
    "cyclic_b",
    "rotation_span",
    "cyclic_complex",
    "cyclic_homology",
]


def suspend_operations(space, ops, degree_shift=2, symmetric=False):
    """Translate unsuspended operations to the odd suspended cochain.

    `ops` is {arity: {index word: {index: coeff}}}; arity k must raise
    unsuspended degree by k - degree_shift (2 for products, matching the
    degree -1 coderivation).  Raises ValueError on inhomogeneous entries.
    With `symmetric`, input words must be canonically sorted and the result
    is a symmetric cochain (the suspended form of antisymmetric brackets).
    """
    susp = space.suspend()
    m = Cochain(susp, -1, symmetric=symmetric)
    for k, table in sorted(ops.items()):
        if k < 1:
            raise ValueError("operations must have arity >= 1")
        for word, val in table.items():
            word = tuple(word)
            if len(word) != k:
                raise ValueError(f"arity {k} entry has {len(word)} inputs")
            exp = sum((k - t) * space.degrees[i]
                      for t, i in enumerate(word, start=1))
            sgn = -1 if exp % 2 else 1
            m.set_value(word, {i: sgn * Fraction(c) for i, c in val.items()})
    return m


@dataclass
class AInftyAlgebra:
    """Finite-dimensional homotopy-associative algebra over Q."""

    space: GradedSpace            # unsuspended
    ops: dict                     # {arity: {word: {index: Fraction}}}
    unit: int | None = None       # basis index of a strict unit, if any
    name: str = ""
    suspended: object = field(init=False)
    m: Cochain = field(init=False)

    def __post_init__(self):
        clean = {}
        for k, table in self.ops.items():
            entries = {tuple(w): {i: Fraction(c) for i, c in v.items() if Fraction(c)}
                       for w, v in table.items()}
            entries = {w: v for w, v in entries.items() if v}
            if entries:
                clean[int(k)] = entries
        self.ops = clean
        if self.unit is not None and not (0 <= self.unit < self.space.dim):
            raise ValueError(f"unit index {self.unit} out of range")
        self.suspended = self.space.suspend()
        self.m = suspend_operations(self.space, self.ops)

    @property
    def max_arity(self):
        return max(self.ops, default=0)

    def coderivation(self, max_weight=None):
        return extend_coderivation(self.m, "tensor", max_weight)

    def op_value(self, k, word):
        """mu_k on a word of basis indices, {index: Fraction}."""
        return self.ops.get(k, {}).get(tuple(word), {})


def _table_mul(mult, left, right):
    """Multiply two sparse elements through a table {(i,j): {k: coeff}}."""
    out = {}
    for i, a in left.items():
        for j, b in right.items():
            for k, c in mult.get((i, j), {}).items():
                out[k] = out.get(k, Fraction(0)) + Fraction(a) * Fraction(b) * Fraction(c)
    return {k: v for k, v in out.items() if v}


def _clean_table(mult):
    out = {}
    for (i, j), val in mult.items():
        val = {k: Fraction(c) for k, c in val.items() if Fraction(c)}
        if val:
            out[(i, j)] = val
    return out


def from_associative(labels, mult, unit=None, name="", validate=True):
    """Degree-0 associative algebra as a homotopy algebra with only mu_2.

    `mult` maps basis pairs (i, j) to sparse products {k: coeff}.  Raises
    ValueError naming a witness triple if the table fails associativity, or a
    witness pair if the declared unit fails its law.
    """
    labels = tuple(labels)
    dim = len(labels)
    mult = _clean_table(mult)
    if validate:
        for a in range(dim):
            for b in range(dim):
                for c in range(dim):
                    lhs = _table_mul(mult, _table_mul(mult, {a: 1}, {b: 1}), {c: 1})
                    rhs = _table_mul(mult, {a: 1}, _table_mul(mult, {b: 1}, {c: 1}))
                    if lhs != rhs:
                        raise ValueError(
                            f"multiplication not associative at {(a, b, c)}")
        if unit is not None:
            for a in range(dim):
                if (_table_mul(mult, {unit: 1}, {a: 1}) != {a: Fraction(1)}
                        or _table_mul(mult, {a: 1}, {unit: 1}) != {a: Fraction(1)}):
                    raise ValueError(f"unit law fails at {(unit, a)}")
    space = GradedSpace(labels, (0,) * dim)
    ops = {2: {(i, j): dict(v) for (i, j), v in mult.items()}}
    return AInftyAlgebra(space, ops, unit=unit, name=name)


def from_dga(labels, degrees, differential, mult, unit=None, name="", validate=True):
    """Differential graded algebra as a homotopy algebra with mu_1 and mu_2.

    `differential` maps a basis index to its sparse image one degree down.
    Validates d^2 = 0, the signed Leibniz rule d(ab) = (da)b + (-1)^|a| a(db),
    and associativity, each with a witness tuple in the error message.
    """
    labels, degrees = tuple(labels), tuple(degrees)
    mult = _clean_table(mult)
    diff = {i: {j: Fraction(c) for j, c in v.items() if Fraction(c)}
            for i, v in differential.items()}
    diff = {i: v for i, v in diff.items() if v}

    def d_of(el):
        out = {}
        for i, a in el.items():
            for j, c in diff.get(i, {}).items():
                out[j] = out.get(j, Fraction(0)) + Fraction(a) * c
        return {j: v for j, v in out.items() if v}

    if validate:
        for i in range(len(labels)):
            if d_of(d_of({i: 1})):
                raise ValueError(f"differential does not square to zero at ({i},)")
        for a in range(len(labels)):
            for b in range(len(labels)):
                lhs = d_of(_table_mul(mult, {a: 1}, {b: 1}))
                rhs = _table_mul(mult, d_of({a: 1}), {b: 1})
                sgn = -1 if degrees[a] % 2 else 1
                for k, v in _table_mul(mult, {a: 1}, d_of({b: 1})).items():
                    rhs[k] = rhs.get(k, Fraction(0)) + sgn * v
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    raise ValueError(f"Leibniz rule fails at {(a, b)}")
                for c in range(len(labels)):
                    l3 = _table_mul(mult, _table_mul(mult, {a: 1}, {b: 1}), {c: 1})
                    r3 = _table_mul(mult, {a: 1}, _table_mul(mult, {b: 1}, {c: 1}))
                    if l3 != r3:
                        raise ValueError(
                            f"multiplication not associative at {(a, b, c)}")
    space = GradedSpace(labels, degrees)
    ops = {}
    if diff:
        ops[1] = {(i,): dict(v) for i, v in diff.items()}
    if mult:
        ops[2] = {(i, j): dict(v) for (i, j), v in mult.items()}
    return AInftyAlgebra(space, ops, unit=unit, name=name)


@dataclass
class StructureReport:
    ok: bool
    checked_arity: int
    complete: bool            # True when the check proves all identities
    witness: tuple | None = None   # (arity, word, defect element)

    def __bool__(self):
        return self.ok


def check_stasheff(alg, max_arity=None):
    """Verify the higher associativity tower by squaring the coderivation.

    With components up to arity K, the square has components only up to
    2K - 1, so checking that far is a complete proof; a smaller cap yields a
    partial certificate.  `max_arity` may be an int or a WeightCap.
    """
    if isinstance(max_arity, WeightCap):
        max_arity = max_arity.max_weight
    K = alg.max_arity
    full = 2 * K - 1 if K else 0
    cap = full if max_arity is None else min(max_arity, full)
    d = alg.coderivation()
    sq = bracket(d, d, cap)
    for n in sorted(sq.comps):
        table = sq.comps[n]
        for word in sorted(table):
            return StructureReport(False, cap, cap >= full,
                                   (n, word, dict(table[word])))
    return StructureReport(True, cap, cap >= full)


@dataclass
class UnitalityReport:
    ok: bool
    failures: list = field(default_factory=list)  # (description, arity, word)

    def __bool__(self):
        return self.ok


def check_strict_unit(alg):
    """Strict unit axioms on the unsuspended operations: mu_2(e, a) = a =
    mu_2(a, e), and every other arity vanishes whenever e is an argument."""
    e = alg.unit
    if e is None:
        return UnitalityReport(False, [("no unit declared", 0, ())])
    failures = []
    dim = alg.space.dim
    for a in range(dim):
        if alg.op_value(2, (e, a)) != {a: Fraction(1)}:
            failures.append(("left unit law fails", 2, (e, a)))
        if alg.op_value(2, (a, e)) != {a: Fraction(1)}:
            failures.append(("right unit law fails", 2, (a, e)))
    for k, table in alg.ops.items():
        if k == 2:
            continue
        for word, val in table.items():
            if e in word and val:
                failures.append(
                    (f"arity {k} operation must vanish on the unit", k, word))
    return UnitalityReport(not failures, failures)


def cyclic_words(space, total_degree):
    """All nonempty words over a suspended space with the given total degree,
    in lexicographic order.  Finite since suspended degrees are positive."""
    out = []
    degs = space.degrees

    def extend(prefix, remaining):
        if remaining == 0:
            if prefix:
                out.append(tuple(prefix))
            return
        for i in range(space.dim):
            if degs[i] <= remaining:
                prefix.append(i)
                extend(prefix, remaining - degs[i])
                prefix.pop()

    extend([], total_degree)
    return out


def rotate_word(word, space):
    """Cyclic rotation: last factor to the front, with its Koszul sign."""
    n = len(word)
    if n <= 1:
        return 1, tuple(word)
    degs = [space.degrees[i] for i in word]
    perm = tuple((i + 1) % n for i in range(n))
    return act(perm, word, degs)


def cyclic_lambda(word, space):
    """The signed cyclic rotation as an element, {rotated word: sign}."""
    sign, rw = rotate_word(word, space)
    return {rw: Fraction(sign)}


def cyclic_boundary(alg):
    """The cyclic boundary as a function on words: the coderivation terms plus
    wraparound windows (rotate s tail factors to the front, apply m_k there)."""
    m = alg.m
    space = alg.suspended
    d = alg.coderivation()
    arities = m.arities()

    def b(word):
        out = d.eval_word(word)
        n = len(word)
        degs = [space.degrees[i] for i in word]
        for k in arities:
            if k > n:
                continue
            for s in range(1, k):
                if s > n - 1:
                    break
                perm = tuple((i + s) % n for i in range(n))
                sign, w = act(perm, word, degs)
                val = m.apply(w[:k])
                for idx, c in val.items():
                    add_into(out, (idx,) + w[k:], sign * c)
        return out

    return b


def cyclic_b(alg, word):
    """The cyclic boundary of a single word, as an element."""
    return cyclic_boundary(alg)(tuple(word))


class CyclicComplexSlice:
    """Per-length view of the truncated cyclic complex.

    Slice n holds the words with n+1 tensor factors and total suspended
    degree within the cap, together with the rotation-difference subspace
    whose quotient is the cyclic block.  The boundary only respects the
    length slicing when every operation is binary; the degree grading used
    by `cyclic_complex` is the chain-level one, and this view exists for
    inspecting the rotation action length by length.
    """

    def __init__(self, algebra, cap):
        self.algebra = algebra
        self.cap = cap
        space = algebra.suspended
        self._by_length = {}
        max_len = cap.max_degree  # suspended degrees are >= 1
        if cap.max_weight is not None:
            max_len = min(max_len, cap.max_weight)
        for total in range(1, cap.max_degree + 1):
            for w in cyclic_words(space, total):
                if len(w) <= max_len:
                    self._by_length.setdefault(len(w) - 1, []).append(w)

    def words(self, n):
        """Basis of C_n: the admissible words with n+1 factors."""
        return list(self._by_length.get(n, []))

    def lambda_image(self, n):
        """Im(1 - lambda) inside C_n, as a Subspace."""
        words = self.words(n)
        index = {w: i for i, w in enumerate(words)}
        vectors = []
        for el in rotation_span(self.algebra.suspended, words):
            vectors.append({index[w]: c for w, c in el.items()})
        return Subspace.from_vectors(len(words), vectors)

    def quotient_dim(self, n):
        """Dimension of the cyclic block C_n mod rotation differences."""
        return len(self.words(n)) - self.lambda_image(n).dim

    def check_lambda_invariance(self, n):
        """Verify b(Im(1 - lambda)) stays inside Im(1 - lambda), across all
        the lengths the boundary reaches; returns a violating word or None."""
        space = self.algebra.suspended
        targets = []
        for m in sorted(self._by_length):
            if m <= n:
                targets.extend(self._by_length[m])
        index = {w: i for i, w in enumerate(targets)}
        red = RowReducer()
        for el in rotation_span(space, targets):
            red.insert({index[w]: c for w, c in el.items()})
        b = cyclic_boundary(self.algebra)
        for w in self.words(n):
            sign, rw = rotate_word(w, space)
            image = b(w)
            for idx, c in b(rw).items():
                add_into(image, idx, -Fraction(sign) * c)
            vec = {}
            for target, c in image.items():
                if target not in index:
                    return w  # boundary left the truncation window
                vec[index[target]] = c
            if red.residual(vec):
                return w
        return None


def rotation_span(space, words):
    """Generators of the rotation coinvariance span: (1 - lambda) w."""
    out = []
    for w in words:
        sign, rw = rotate_word(w, space)
        el = {w: Fraction(1)}
        add_into(el, rw, Fraction(-sign))
        if el:
            out.append(el)
    return out


def cyclic_complex(alg, max_degree, max_weight=None, coinvariant=True):
    """ChainComplex of cyclic words in degrees 0..max_degree+1, with the
    rotation quotient applied blockwise when `coinvariant`."""
    space = alg.suspended
    blocks, spans = {}, {}
    for q in range(0, max_degree + 2):
        words = cyclic_words(space, q + 1)
        if max_weight is not None:
            words = [w for w in words if len(w) <= max_weight]
        if not words:
            continue
        blocks[q] = words
        if coinvariant:
            spans[q] = rotation_span(space, words)
    b = cyclic_boundary(alg)
    return ChainComplex(blocks, lambda q, w: b(w),
                        quotient_spans=spans if coinvariant else None)


def cyclic_homology(alg, max_degree, max_weight=None, representatives=False):
    """Cyclic homology in degrees 0..max_degree as a BettiTable.

    Numbers are exact unless a weight cap actually truncates a contributing
    block, in which case the affected degrees are flagged inexact.
    """
    cx = cyclic_complex(alg, max_degree, max_weight=max_weight)
    table = cx.homology(range(0, max_degree + 1), representatives=representatives)
    for q in table.dims:
        complete = max_weight is None or max_weight >= q + 2
        table.exact[q] = complete
    table.caps = {"max_degree": max_degree, "max_weight": max_weight}
    return table
