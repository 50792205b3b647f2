"""Strongly homotopy Lie structures and Chevalley-Eilenberg homology.

A structure is stored as unsuspended antisymmetric brackets on canonically
sorted index words (ascending; a repeated index is legal only when its
unsuspended degree is odd) and as the induced symmetric degree -1 cochain ell
on the suspension, using the same suspension sign as the associative side.
Squaring the symmetric coderivation is the full tower of homotopy Jacobi
identities.

The Chevalley-Eilenberg complex is the symmetric coalgebra on the suspension:
degree q collects the canonical words of total suspended degree q, including
the empty word at q = 0.  Suspended degrees are positive, so every block is
finite with no weight cap; an optional cap is a speed filter whose effect on
each degree is flagged honestly.

Derivations are symmetric cochains d with [delta_ell, delta_d] = 0; inner
ones are brackets [delta_ell, delta_c], automatically derivations whenever
the structure squares to zero, and they act as zero on homology - asserted,
not assumed, by expressing their images in a computed representative basis.

Coinvariants by a degree-0 sub-Lie-algebra h quotient each block by the span
of the inner-derivation images of h.  The homology coproduct is induced by
the shuffle coproduct on cycle representatives; its independence of the
representative and its descent to the coinvariant quotient are verified at
computation time rather than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .ainfty import StructureReport, suspend_operations
from .chain import BettiTable, ChainComplex
from .coalgebra import Cochain, WeightCap, bracket, coproduct_sym, extend_coderivation
from .graded import GradedSpace, add_into
from .rational_linalg import LinearSolver, SparseMatrix, Subspace, kernel

__all__ = [
    "LInftyAlgebra",
    "Derivation",
    "CEComplexSlice",
    "HomologyCoalgebra",
    "check_linfty",
    "check_derivation",
    "make_inner",
    "ce_words",
    "ce_complex",
    "lie_homology",
    "inner_action_on_homology",
    "coalgebra_on_homology",
    "homology_coproduct",
    "primitives",
]


@dataclass
class LInftyAlgebra:
    """Finite-dimensional strongly homotopy Lie algebra over Q."""

    space: GradedSpace            # unsuspended
    ops: dict                     # {arity: {ascending word: {index: Fraction}}}
    name: str = ""
    suspended: object = field(init=False)
    ell: Cochain = field(init=False)

    def __post_init__(self):
        clean = {}
        for k, table in self.ops.items():
            entries = {}
            for w, v in table.items():
                w = tuple(w)
                if tuple(sorted(w)) != w:
                    raise ValueError(
                        f"bracket entries must use ascending index words, got {w}")
                val = {i: Fraction(c) for i, c in v.items() if Fraction(c)}
                if val:
                    entries[w] = val
            if entries:
                clean[int(k)] = entries
        self.ops = clean
        self.suspended = self.space.suspend()
        self.ell = suspend_operations(self.space, self.ops, symmetric=True)

    @property
    def max_arity(self):
        return max(self.ops, default=0)

    def coderivation(self, max_weight=None):
        return extend_coderivation(self.ell, "sym", max_weight)

    def op_value(self, k, word):
        """ell_k on a sorted word of basis indices, {index: Fraction}."""
        return self.ops.get(k, {}).get(tuple(word), {})

    def bracket2(self, x, y):
        """The binary bracket of two elements of the suspension."""
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for idx, c in self.ell.apply((i, j)).items():
                    out[idx] = out.get(idx, Fraction(0)) + Fraction(a) * Fraction(b) * c
        return {i: v for i, v in out.items() if v}


def check_linfty(alg, max_arity=None):
    """Verify the homotopy Jacobi tower by squaring the coderivation.

    Complete once checked through arity 2K - 1 for top arity K; a smaller
    cap gives a partial certificate.  `max_arity` may be int or WeightCap.
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
class Derivation:
    """A symmetric cochain whose coderivation commutes with the structure."""

    cochain: Cochain
    certificate: StructureReport

    def __bool__(self):
        return bool(self.certificate)

    @property
    def degree(self):
        return self.cochain.degree

    def coderivation(self, max_weight=None):
        return extend_coderivation(self.cochain, "sym", max_weight)


def check_derivation(alg, d, max_arity=None):
    """Certify [delta_ell, delta_d] = 0; returns a Derivation on success and
    the failing StructureReport otherwise.

    The commutator of cochains with top arities K and K' has components only
    through arity K + K' - 1, so the default check is a complete proof.
    """
    if isinstance(max_arity, WeightCap):
        max_arity = max_arity.max_weight
    full = max(alg.max_arity + d.max_arity() - 1, 0)
    cap = full if max_arity is None else min(max_arity, full)
    comm = bracket(alg.coderivation(), extend_coderivation(d, "sym"), cap)
    for n in sorted(comm.comps):
        table = comm.comps[n]
        for word in sorted(table):
            return StructureReport(False, cap, cap >= full,
                                   (n, word, dict(table[word])))
    return Derivation(d, StructureReport(True, cap, cap >= full))


def _as_cochain(alg, generator):
    """Coerce an inner-derivation generator to a symmetric cochain: either a
    cochain already, a basis index, or an element dict (arity 0)."""
    if isinstance(generator, Cochain):
        return generator
    if isinstance(generator, int):
        generator = {generator: 1}
    el = {i: Fraction(c) for i, c in generator.items() if Fraction(c)}
    if not el:
        raise ValueError("zero generator has no well-defined degree")
    degs = {alg.suspended.degrees[i] for i in el}
    if len(degs) > 1:
        raise ValueError("generator must be homogeneous in suspended degree")
    c = Cochain(alg.suspended, degs.pop(), symmetric=True)
    c.set_value((), el)
    return c


def make_inner(alg, generator, max_arity=None):
    """The inner derivation [delta_ell, delta_c] of a cochain or element.

    Certification is automatic whenever the structure squares to zero (the
    graded Jacobi identity of the coderivation bracket), but is recomputed
    and returned rather than assumed.
    """
    c = _as_cochain(alg, generator)
    if isinstance(max_arity, WeightCap):
        max_arity = max_arity.max_weight
    full = max(alg.max_arity + c.max_arity() - 1, 0)
    cap = full if max_arity is None else min(max_arity, full)
    inner = bracket(alg.coderivation(), extend_coderivation(c, "sym"), cap)
    result = check_derivation(alg, inner, max_arity=max_arity)
    if not result:
        raise ValueError(f"inner construction failed certification: {result.witness}")
    return result


def ce_words(space, total_degree):
    """Canonical symmetric words of the given total suspended degree, in
    lexicographic order: ascending indices, repeats only on even degrees.
    Includes the empty word at degree 0."""
    degs = space.degrees
    out = []

    def extend(prefix, start, remaining):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for i in range(start, space.dim):
            d = degs[i]
            if d > remaining:
                continue
            if prefix and prefix[-1] == i and d % 2:
                continue
            prefix.append(i)
            extend(prefix, i, remaining - d)
            prefix.pop()

    extend([], 0, total_degree)
    return out


def _h_elements(alg, h):
    """Normalize a subalgebra spec to a list of degree-0 element dicts."""
    out = []
    for item in h:
        if isinstance(item, int):
            item = {item: 1}
        el = {i: Fraction(c) for i, c in item.items() if Fraction(c)}
        if not el:
            continue
        for i in el:
            if alg.space.degrees[i] != 0:
                raise ValueError(
                    f"subalgebra generators must have degree 0, index {i} does not")
        out.append(el)
    return out


def _check_h_closed(alg, h_els):
    """Closure of the span under the binary bracket; raises on failure."""
    solver = LinearSolver(alg.space.dim)
    for j, el in enumerate(h_els):
        solver.add(el, j)
    for a, b in itertools.combinations_with_replacement(range(len(h_els)), 2):
        val = alg.bracket2(h_els[a], h_els[b])
        if val and solver.express(val) is None:
            raise ValueError(
                f"subalgebra not closed under the bracket at generators {(a, b)}")


def h_action_spans(alg, h, blocks, max_weight=None):
    """Per-degree spans of the h-action: images of each block under the inner
    derivations of the h generators."""
    h_els = _h_elements(alg, h)
    _check_h_closed(alg, h_els)
    actions = [make_inner(alg, el).coderivation(max_weight) for el in h_els]
    spans = {}
    for q, words in blocks.items():
        gens = []
        for act_ in actions:
            for w in words:
                img = act_.eval_word(w)
                if img:
                    gens.append(img)
        if gens:
            spans[q] = gens
    return spans


def ce_complex(alg, max_degree, max_weight=None, h=None):
    """ChainComplex of canonical symmetric words in degrees 0..max_degree+1,
    with blockwise h-coinvariant quotients when a subalgebra is supplied."""
    space = alg.suspended
    blocks = {}
    for q in range(0, max_degree + 2):
        words = ce_words(space, q)
        if max_weight is not None:
            words = [w for w in words if len(w) <= max_weight]
        if words:
            blocks[q] = words
    spans = h_action_spans(alg, h, blocks, max_weight) if h else None
    d = alg.coderivation(max_weight)
    return ChainComplex(blocks, lambda q, w: d.eval_word(w), quotient_spans=spans)


def lie_homology(alg, max_degree, max_weight=None, h=None, representatives=False):
    """Homology of the Chevalley-Eilenberg complex in degrees 0..max_degree,
    optionally after coinvariant reduction by a degree-0 subalgebra h.

    Exact unless the weight cap truncates a contributing block: degree q
    needs complete words through weight q+1.
    """
    cx = ce_complex(alg, max_degree, max_weight=max_weight, h=h)
    table = cx.homology(range(0, max_degree + 1), representatives=representatives)
    for q in table.dims:
        table.exact[q] = max_weight is None or max_weight >= q + 1
    table.caps = {"max_degree": max_degree, "max_weight": max_weight}
    return table


class CEComplexSlice:
    """Blocks of the truncated Chevalley-Eilenberg complex indexed by (total
    suspended degree, weight), with the differential between degree blocks."""

    def __init__(self, algebra, cap):
        self.algebra = algebra
        self.cap = cap
        self.blocks = {}
        for q in range(0, cap.max_degree + 1):
            for w in ce_words(algebra.suspended, q):
                if cap.max_weight is None or len(w) <= cap.max_weight:
                    self.blocks.setdefault((q, len(w)), []).append(w)

    def words(self, degree, weight=None):
        if weight is not None:
            return list(self.blocks.get((degree, weight), []))
        out = []
        for (q, n) in sorted(self.blocks):
            if q == degree:
                out.extend(self.blocks[(q, n)])
        return out

    def differential_entries(self, degree):
        """Sparse entries (target word, source word, coeff) of delta_ell from
        the degree block one step down."""
        d = self.algebra.coderivation(self.cap.max_weight)
        entries = []
        for w in self.words(degree):
            for w2, c in d.eval_word(w).items():
                entries.append((w2, w, c))
        return entries

    def check_square_zero(self, degree):
        """delta_ell twice on every word of the block; None or a witness."""
        d = self.algebra.coderivation(self.cap.max_weight)
        for w in self.words(degree):
            out = {}
            for w2, c in d.eval_word(w).items():
                for w3, c2 in d.eval_word(w2).items():
                    add_into(out, w3, c * c2)
            if out:
                return w
        return None


def inner_action_on_homology(alg, generator, max_degree, max_weight=None, h=None):
    """The induced map of an inner derivation on homology, degree by degree.

    Returns {q: list of coefficient dicts over the representative basis of
    the target degree}; the content of the inner-derivations-act-trivially
    lemma is that every dict is empty, which callers assert.
    """
    der = make_inner(alg, generator)
    shift = der.degree
    cx = ce_complex(alg, max_degree, max_weight=max_weight, h=h)
    table = cx.homology(range(0, max_degree + 1), representatives=True)
    action = der.coderivation(max_weight)
    induced = {}
    for q in range(0, max_degree + 1):
        reps = table.representatives.get(q, [])
        rows = []
        for rep in reps:
            img = {}
            for w, c in rep.items():
                for w2, c2 in action.eval_word(w).items():
                    add_into(img, w2, c * c2)
            target = q + shift
            target_reps = table.representatives.get(target, [])
            if not img:
                rows.append({})
                continue
            if target < 0 or target > max_degree:
                raise ValueError(f"induced image leaves the computed range at {q}")
            rows.append(cx.class_coefficients(target, img, target_reps))
        induced[q] = rows
    return induced


@dataclass
class HomologyCoalgebra:
    """Homology with its induced coproduct in a fixed representative basis.

    `pair_basis[q]` lists tags (a, b, i, j) for the class of rep i of H_a
    tensor rep j of H_b; `delta[q]` has one row per representative of H_q
    giving the reduced coproduct in that tag basis.  Both well-definedness
    checks (representative independence, descent to the block quotients) ran
    at construction time.
    """

    table: BettiTable
    pair_basis: dict
    delta: dict

    def primitive_subspace(self, q):
        """Classes with vanishing reduced coproduct, as a Subspace in the
        representative coordinates of H_q."""
        reps = self.table.representatives.get(q, [])
        rows = self.delta.get(q, [])
        tags = {t: i for i, t in enumerate(self.pair_basis.get(q, []))}
        entries = []
        for j, row in enumerate(rows):
            for t, c in row.items():
                entries.append((tags[t], j, c))
        mat = SparseMatrix.from_entries(len(tags), len(reps), entries)
        return kernel(mat)


def _reduced_coproduct(el, space, present):
    """Shuffle coproduct without counit terms, keeping only split halves that
    survive in the given blocks (in a graded presentation the absent words
    are exactly the ones the quotient map kills)."""
    out = {}
    for w, c in el.items():
        for (front, back), sign in coproduct_sym(w, space).items():
            if not front or not back:
                continue
            a = space.word_degree(front)
            b = space.word_degree(back)
            if front not in present.get(a, ()) or back not in present.get(b, ()):
                continue
            key = (front, back)
            out[key] = out.get(key, Fraction(0)) + Fraction(c) * sign
    return {k: v for k, v in out.items() if v}


def coalgebra_on_homology(space, blocks, dfun, max_degree, spans=None):
    """Homology of a word complex together with its induced coproduct.

    `blocks` maps degree to canonical symmetric words (degrees up to
    max_degree + 1), `dfun` is the differential on a word, `spans` the
    optional per-degree quotient generators.  Builds the complex, the
    two-factor complex on pairs, expresses the reduced coproduct of each
    representative in the basis of representative pairs, and verifies both
    representative independence and (when quotients are present) that the
    coproduct kills the span generators.
    """
    cx = ChainComplex(blocks, lambda q, w: dfun(w), quotient_spans=spans)
    table = cx.homology(range(0, max_degree + 1), representatives=True)
    present = {q: set(ws) for q, ws in blocks.items()}

    pair_blocks = {}
    for t in range(2, max_degree + 2):
        pairs = []
        for a in sorted(blocks):
            b = t - a
            if a < 1 or b < 1 or b not in blocks:
                continue
            for w1 in blocks[a]:
                if not w1:
                    continue
                for w2 in blocks[b]:
                    if w2:
                        pairs.append((w1, w2))
        if pairs:
            pair_blocks[t] = pairs

    pair_present = {q: set(ps) for q, ps in pair_blocks.items()}

    def pair_diff(q, pair):
        w1, w2 = pair
        a = space.word_degree(w1)
        out = {}
        for w, c in dfun(w1).items():
            if (w, w2) in pair_present.get(q - 1, ()):
                add_into(out, (w, w2), c)
        sgn = -1 if a % 2 else 1
        for w, c in dfun(w2).items():
            if (w1, w) in pair_present.get(q - 1, ()):
                add_into(out, (w1, w), sgn * c)
        return out

    pair_spans = None
    if spans:
        pair_spans = {}
        for q, pairs in pair_blocks.items():
            gens = []
            for a, gen_list in spans.items():
                for s in gen_list:
                    for b, words in blocks.items():
                        if a + b != q:
                            continue
                        for w in words:
                            if not w:
                                continue
                            left = {(ws, w): c for ws, c in s.items() if ws}
                            right = {(w, ws): c for ws, c in s.items() if ws}
                            if left:
                                gens.append(left)
                            if right:
                                gens.append(right)
            if gens:
                pair_spans[q] = gens

    pair_cx = ChainComplex(pair_blocks, pair_diff, quotient_spans=pair_spans)

    if spans:
        for q, gen_list in spans.items():
            if q > max_degree:
                continue
            for s in gen_list:
                img = _reduced_coproduct(s, space, present)
                if pair_cx._residual(pair_cx._coords(img, q), q):
                    raise ValueError(
                        f"coproduct does not descend to the quotient in degree {q}")

    pair_basis, pair_reps = {}, {}
    for q in range(2, max_degree + 1):
        tags, reps = [], []
        for a in range(1, q):
            b = q - a
            for i, ra in enumerate(table.representatives.get(a, [])):
                for j, rb in enumerate(table.representatives.get(b, [])):
                    tags.append((a, b, i, j))
                    el = {}
                    for w1, c1 in ra.items():
                        for w2, c2 in rb.items():
                            if (w1, w2) in pair_present.get(q, ()):
                                add_into(el, (w1, w2), Fraction(c1) * Fraction(c2))
                    reps.append(el)
        pair_basis[q] = tags
        pair_reps[q] = reps

    delta = {}
    for q in range(0, max_degree + 1):
        rows = []
        for rep in table.representatives.get(q, []):
            img = _reduced_coproduct(rep, space, present)
            if q < 2:
                if img:
                    raise ValueError("nonzero reduced coproduct below degree 2")
                rows.append({})
                continue
            combo = pair_cx.class_coefficients(q, img, pair_reps[q])
            rows.append({pair_basis[q][p]: c for p, c in combo.items()})
        delta[q] = rows

    for q in range(2, max_degree + 1):
        if q + 1 not in blocks or not table.representatives.get(q, []):
            continue
        perturb = {}
        for w in blocks[q + 1][: 3]:
            if w:
                add_into(perturb, w, Fraction(1))
        boundary = {}
        for w, c in perturb.items():
            for w2, c2 in dfun(w).items():
                add_into(boundary, w2, c * c2)
        if not boundary:
            continue
        for row, rep in zip(delta[q], table.representatives[q]):
            moved = dict(rep)
            for w, c in boundary.items():
                add_into(moved, w, c)
            img = _reduced_coproduct(moved, space, present)
            combo = pair_cx.class_coefficients(q, img, pair_reps[q])
            if {pair_basis[q][p]: c for p, c in combo.items()} != row:
                raise ValueError(
                    f"coproduct depends on the choice of representative in degree {q}")

    return HomologyCoalgebra(table=table, pair_basis=pair_basis, delta=delta), cx


def homology_coproduct(alg, max_degree, max_weight=None, h=None):
    """The induced coalgebra structure on Chevalley-Eilenberg homology."""
    space = alg.suspended
    blocks = {}
    for q in range(0, max_degree + 2):
        words = ce_words(space, q)
        if max_weight is not None:
            words = [w for w in words if len(w) <= max_weight]
        if words:
            blocks[q] = words
    spans = h_action_spans(alg, h, blocks, max_weight) if h else None
    d = alg.coderivation(max_weight)
    result, _ = coalgebra_on_homology(space, blocks, lambda w: d.eval_word(w),
                                      max_degree, spans=spans)
    result.table.caps = {"max_degree": max_degree, "max_weight": max_weight}
    for q in result.table.dims:
        result.table.exact[q] = max_weight is None or max_weight >= q + 1
    return result


def primitives(H):
    """Primitive classes of a homology coalgebra: {degree: Subspace in the
    representative coordinates}.  Degree-0 classes are never primitive (the
    counit splits them off); weight-one generators always are."""
    out = {}
    for q, reps in sorted(H.table.representatives.items()):
        if q == 0:
            out[q] = Subspace.from_vectors(len(reps), [])
            continue
        out[q] = H.primitive_subspace(q)
    return out
