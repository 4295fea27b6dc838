"""Representations of flag matroids over prime fields.

A representation is a full-row-rank matrix plus strictly increasing levels
(the layer ranks); a set F is feasible iff |F| is a level and the square
prefix minor on F's columns is nonsingular.  Level 0 is allowed and simply
contributes the empty feasible set, which is how rank-0 bottom layers (for
instance from graphic chains with a single-cell partition) are carried.

Decision procedures for GF(2)/GF(3) come in three mutually cross-checking
routes: forbidden flag minors, the lift-witness route (matroid-level
forbidden minors on the witness matroids, plus an explicit stitched
certificate), and exhaustive search for a representing matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import log2
from typing import Optional, Sequence

from . import flag_core as fl
from . import gf_linalg as gl
from . import matroid_core as mc
from .bitset import elements_of, mask_of
from .errors import (
    BadRank,
    FieldMismatch,
    FieldTooSmall,
    GroundSetMismatch,
    InvalidInput,
    LastLayer,
    LevelCollapse,
    NoTransform,
    NotFull,
    RankDeficientPrefix,
    SearchSpaceTooLarge,
    SingleLevel,
)
from .lifts_majors import MajorStructure, is_full, lift_witness_sequence, verify_major

SEARCH_FIELDS = (2, 3, 5, 7)


@dataclass(frozen=True)
class FlagRepresentation:
    """Full-row-rank matrix plus the levels d_1 < ... < d_k = row count."""

    matrix: gl.GFMatrix
    levels: tuple[int, ...]

    def __post_init__(self):
        lv = self.levels
        if not lv or any(x >= y for x, y in zip(lv, lv[1:])):
            raise RankDeficientPrefix("levels must be strictly increasing and nonempty")
        if lv[0] < 0 or lv[-1] != self.matrix.rows:
            raise RankDeficientPrefix("top level must equal the row count")
        for d in lv:
            if gl.rank(gl.prefix_rows(self.matrix, d)) != d:
                raise RankDeficientPrefix(f"prefix {d} is rank deficient", level=d)

    @property
    def p(self) -> int:
        return self.matrix.p

    @property
    def n(self) -> int:
        return self.matrix.cols


def flag_from_matrix(a: gl.GFMatrix, levels: Sequence[int]) -> fl.FlagMatroid:
    """The flag matroid whose layers are the column matroids of the row
    prefixes at the given levels."""
    lv = tuple(levels)
    if not lv or any(x >= y for x, y in zip(lv, lv[1:])):
        raise RankDeficientPrefix("levels must be strictly increasing and nonempty")
    if lv[0] < 0 or lv[-1] > a.rows:
        raise RankDeficientPrefix("levels outside the row range")
    layers = []
    for d in lv:
        prefix = gl.prefix_rows(a, d)
        if gl.rank(prefix) != d:
            raise RankDeficientPrefix(f"prefix {d} is rank deficient", level=d)
        layers.append(mc.linear_matroid(prefix))
    return fl.from_sequence(layers)


def represented_flag(rep: FlagRepresentation) -> fl.FlagMatroid:
    return flag_from_matrix(rep.matrix, rep.levels)


# --- constructions --------------------------------------------------------------

def uniform_flag_representation(r: int, n: int, p: int) -> FlagRepresentation:
    """Representation of the rank-r uniform flag on n elements.

    For r >= 2 this is the r x n Vandermonde matrix on nodes 0..n-1, which
    needs p >= n; for r <= 1 a constant row works over any field.  Levels
    are 1..r (the empty set rides along at level 0 only when r = 0).
    """
    if not (0 <= r <= n):
        raise BadRank(f"rank {r} outside 0..{n}")
    f = gl.field(p)
    if r == 0:
        return FlagRepresentation(gl.matrix(p, [], cols=n), (0,))
    if r == 1:
        return FlagRepresentation(gl.matrix(p, [[1] * n]), (1,))
    if p < n:
        raise FieldTooSmall(f"GF({p}) has fewer than {n} elements", p=p, n=n)
    rows = [[pow(j, i, p) for j in range(n)] for i in range(r)]
    return FlagRepresentation(gl.matrix(p, rows), tuple(range(1, r + 1)))


def dual_representation(rep: FlagRepresentation) -> FlagRepresentation:
    """Representation of the dual flag, built from the nested kernel chain."""
    n = rep.n
    chain = gl.nested_kernel_chain(rep.matrix, rep.levels)
    b = gl.matrix(rep.p, [list(v) for v in chain], cols=n)
    levels = tuple(n - d for d in reversed(rep.levels))
    out = FlagRepresentation(b, levels)
    if represented_flag(out) != fl.flag_dual(represented_flag(rep)):
        raise NoTransform("dual construction mismatch")  # pragma: no cover
    return out


def delete_representation(rep: FlagRepresentation, e: int) -> FlagRepresentation:
    """Representation of the flag with column e deleted.

    Levels whose layer had e as a coloop collapse; collapses are always an
    upper tail of the level list, so the repair drops those levels and the
    rows above the last survivor.  If everything collapses the set-system
    minor is empty and there is nothing to represent.
    """
    before = represented_flag(rep)
    try:
        expected = fl.flag_delete(before, e)
    except fl.EmptyResult as exc:
        raise LevelCollapse("deletion empties the flag; no repair exists") from exc
    a2 = gl.drop_col(rep.matrix, e)
    kept = [d for d in rep.levels if gl.rank(gl.prefix_rows(a2, d)) == d]
    if not kept:
        raise LevelCollapse("every level collapsed")  # pragma: no cover
    out = FlagRepresentation(gl.prefix_rows(a2, kept[-1]), tuple(kept))
    if represented_flag(out) != expected:
        raise LevelCollapse("no level repair matches the set-system minor")  # pragma: no cover
    return out


def contract_representation(rep: FlagRepresentation, e: int) -> FlagRepresentation:
    """Representation of the contraction, via dual + delete + dual."""
    before = represented_flag(rep)
    try:
        expected = fl.flag_contract(before, e)
    except fl.EmptyResult as exc:
        raise LevelCollapse("contraction empties the flag") from exc
    out = dual_representation(delete_representation(dual_representation(rep), e))
    if represented_flag(out) != expected:
        raise LevelCollapse("contraction repair mismatch")  # pragma: no cover
    return out


def chop_representation(rep: FlagRepresentation, level: int) -> FlagRepresentation:
    """Same matrix, one level removed (rows trimmed when the top level goes)."""
    if level not in rep.levels:
        raise RankDeficientPrefix(f"no level {level}")
    if len(rep.levels) == 1:
        raise LastLayer("chopping the only level")
    kept = tuple(d for d in rep.levels if d != level)
    return FlagRepresentation(gl.prefix_rows(rep.matrix, kept[-1]), kept)


def major_from_representation(rep: FlagRepresentation) -> MajorStructure:
    """Major built by appending unit columns for the rows above d_1.

    Extra column j (1-based) is the unit vector of row d_1 + j; block X_i
    holds the extras whose rows lie between d_i and d_{i+1}, so contracting
    the blocks above level i and deleting those below reproduces layer i.
    """
    lv = rep.levels
    if len(lv) < 2:
        raise SingleLevel("a single-level flag needs no major")
    d1, dk = lv[0], lv[-1]
    s = dk - d1
    n = rep.n
    rows = []
    for i in range(dk):
        extra = [1 if i == d1 + j else 0 for j in range(s)]
        rows.append(list(rep.matrix.row(i)) + extra)
    aprime = gl.matrix(rep.p, rows)
    q = mc.linear_matroid(aprime)
    blocks = []
    for i in range(len(lv) - 1):
        blocks.append(
            tuple(n + j for j in range(s) if lv[i] < d1 + j + 1 <= lv[i + 1])
        )
    major = MajorStructure(q, tuple(blocks), matrix=aprime)
    if not verify_major(q, major.blocks, represented_flag(rep)):
        raise SingleLevel("major construction failed verification")  # pragma: no cover
    return major


# --- projective equivalence and stitching -----------------------------------------

def projectively_equivalent(a: gl.GFMatrix, b: gl.GFMatrix) -> bool:
    """Equal row spaces (after discarding dependent rows)."""
    if a.p != b.p:
        raise FieldMismatch("different fields")
    if a.cols != b.cols:
        raise GroundSetMismatch("different column counts")
    return gl.row_space_echelon(a) == gl.row_space_echelon(b)


def stitch_representations(
    rep_a: FlagRepresentation, rep_b: FlagRepresentation
) -> FlagRepresentation:
    """Extend rep_a of (M_1..M_k) by rep_b of (M_k, M_{k+1}).

    Solves T with T @ (rep_b prefix) == rep_a matrix and applies the block
    transform diag(T, I); raises NoTransform when the two bottom row spaces
    differ (a column-scaling mismatch between otherwise compatible
    representations also lands here; see match_column_scaling).
    """
    if rep_a.p != rep_b.p:
        raise FieldMismatch("different fields")
    if rep_a.n != rep_b.n:
        raise GroundSetMismatch("different ground sets")
    if len(rep_b.levels) != 2 or rep_b.levels[0] != rep_a.levels[-1]:
        raise NoTransform("second representation must cover (top of first, one more)")
    r1 = rep_a.levels[-1]
    r2 = rep_b.levels[-1]
    t = gl.solve_left_transform(rep_a.matrix, gl.prefix_rows(rep_b.matrix, r1))
    p = rep_a.p
    that_rows = []
    for i in range(r2):
        if i < r1:
            that_rows.append(list(t.row(i)) + [0] * (r2 - r1))
        else:
            that_rows.append([0] * r1 + [1 if j == i - r1 else 0 for j in range(r2 - r1)])
    that = gl.matrix(p, that_rows)
    stitched = gl.matmul(that, rep_b.matrix)
    return FlagRepresentation(stitched, rep_a.levels + (r2,))


def match_column_scaling(a: gl.GFMatrix, b: gl.GFMatrix) -> Optional[gl.GFMatrix]:
    """Diagonal column rescaling of b whose row space matches a's, or None.

    a and b must be full-row-rank matrices representing the same matroid.
    Over GF(3) two representations may differ by a column scaling that row
    operations cannot absorb; this searches the scalings of a reference
    basis and checks the remaining columns by proportionality.
    """
    if a.p != b.p or a.cols != b.cols or a.rows != b.rows:
        return None
    p = a.p
    r, n = a.rows, a.cols
    if r == 0:
        return b
    ma = mc.linear_matroid(a)
    if ma != mc.linear_matroid(b):
        return None
    base = elements_of(ma.bases[0])
    a_f = gl.select_cols(a, base)
    b_f = gl.select_cols(b, base)
    _, _, b_f_inv = gl.rref(b_f)
    units = [x for x in range(1, p)]
    for delta in product(units, repeat=r):
        # T = a_f @ diag(delta) @ b_f^{-1}; require T b_j parallel to a_j
        scaled = gl.matmul(
            a_f, gl.matrix(p, [[delta[i] if i == j else 0 for j in range(r)] for i in range(r)])
        )
        t = gl.matmul(scaled, b_f_inv)
        scaling = [0] * n
        for pos, col in enumerate(base):
            scaling[col] = pow(delta[pos], p - 2, p)
        ok = True
        for j in range(n):
            if j in base:
                continue
            tb = gl.matmul(t, gl.select_cols(b, [j]))
            aj = a.col(j)
            tbv = tb.col(0)
            if all(x == 0 for x in tbv) and all(x == 0 for x in aj):
                scaling[j] = 1
                continue
            ratio = None
            for x, y in zip(tbv, aj):
                if (x == 0) != (y == 0):
                    ratio = None
                    break
                if x:
                    rr = (y * pow(x, p - 2, p)) % p
                    if ratio is None:
                        ratio = rr
                    elif ratio != rr:
                        ratio = None
                        break
            if not ratio:
                ok = False
                break
            scaling[j] = ratio
        if ok:
            rows = [
                [(b.at(i, j) * scaling[j]) % p for j in range(n)] for i in range(b.rows)
            ]
            return gl.matrix(p, rows, cols=n)
    return None


def _stitch_with_scaling(
    rep_a: FlagRepresentation, rep_b: FlagRepresentation
) -> FlagRepresentation:
    try:
        return stitch_representations(rep_a, rep_b)
    except NoTransform:
        pass
    r1 = rep_a.levels[-1]
    scaled = match_column_scaling(rep_a.matrix, gl.prefix_rows(rep_b.matrix, r1))
    if scaled is None:
        raise NoTransform("no column scaling aligns the shared layer")
    # apply the same scaling to the whole of rep_b
    p = rep_b.p
    factors = []
    for j in range(rep_b.n):
        col_old = gl.prefix_rows(rep_b.matrix, r1).col(j)
        col_new = scaled.col(j)
        factor = 1
        for x, y in zip(col_old, col_new):
            if x:
                factor = (y * pow(x, p - 2, p)) % p
                break
        factors.append(factor)
    rows = [
        [(rep_b.matrix.at(i, j) * factors[j]) % p for j in range(rep_b.n)]
        for i in range(rep_b.matrix.rows)
    ]
    rep_b2 = FlagRepresentation(gl.matrix(p, rows, cols=rep_b.n), rep_b.levels)
    return stitch_representations(rep_a, rep_b2)


# --- matroid representation search --------------------------------------------------

def matroid_representation(m: mc.Matroid, p: int) -> Optional[gl.GFMatrix]:
    """Exhaustive search for a GF(p) matrix whose column matroid is m.

    Canonicalized: the lexicographically first basis maps to the identity
    and every other column has leading entry 1 (or is zero, for loops), so
    the search space covers each representation class once.
    """
    gl.field(p)
    r, n = m.rank, m.n
    if r == 0:
        return gl.matrix(p, [], cols=n)
    base = elements_of(m.bases[0])
    cols: dict[int, tuple[int, ...]] = {}
    for pos, e in enumerate(base):
        cols[e] = tuple(1 if i == pos else 0 for i in range(r))
    rest = [e for e in range(n) if e not in cols]
    loops_mask = m.loops_mask

    candidates: list[tuple[int, ...]] = []
    for vec in product(range(p), repeat=r):
        lead = next((x for x in vec if x), None)
        if lead is None or lead == 1:
            candidates.append(vec)

    rank_table = m.rank_table

    def consistent(e: int, decided: list[int]) -> bool:
        # all subsets through e of size <= r must agree on independence
        others = [x for x in decided if x != e]
        for k in range(min(r, len(others) + 1)):
            for combo in combinations(others, k):
                subset = combo + (e,)
                mask = mask_of(subset)
                want = rank_table[mask] == len(subset)
                mat = gl.matrix(p, [[cols[c][i] for c in subset] for i in range(r)], cols=len(subset))
                if (gl.rank(mat) == len(subset)) != want:
                    return False
        return True

    decided = list(base)

    def place(idx: int) -> bool:
        if idx == len(rest):
            return True
        e = rest[idx]
        pool = [candidates[0]] if loops_mask >> e & 1 else candidates[1:]
        for vec in pool:
            cols[e] = vec
            decided.append(e)
            if consistent(e, decided) and place(idx + 1):
                return True
            decided.pop()
            del cols[e]
        return False

    if not place(0):
        return None
    out = gl.matrix(p, [[cols[j][i] for j in range(n)] for i in range(r)], cols=n)
    if mc.linear_matroid(out) != m:
        raise InvalidInput("search invariant broken")  # pragma: no cover
    return out


# --- flag representation search ------------------------------------------------------

def _rref_bands(p: int, positions: Sequence[int], g: int, n: int):
    """All g-row RREF matrices over the given coordinate positions, embedded
    as width-n rows (zero elsewhere), in a fixed deterministic order."""
    m = len(positions)
    if g == 0:
        yield ()
        return
    for pivots in combinations(range(m), g):
        free_cells = [
            (i, j)
            for i in range(g)
            for j in range(m)
            if j > pivots[i] and j not in pivots
        ]
        for values in product(range(p), repeat=len(free_cells)):
            rows = []
            for i in range(g):
                row = [0] * n
                row[positions[pivots[i]]] = 1
                rows.append(row)
            for (i, j), v in zip(free_cells, values):
                rows[i][positions[j]] = v
            yield tuple(tuple(r) for r in rows)


def _search_levelwise(fm: fl.FlagMatroid, p: int) -> Optional[FlagRepresentation]:
    """Greedy level-by-level search, complete over GF(2)/GF(3).

    Any representation of the longer flag can be transformed to extend the
    one already found, because representations of a binary/ternary top
    layer are unique up to row operations and column scaling; so a single
    representative per stage suffices and failure to extend is conclusive.
    """
    layers = fm.layers
    ranks = [m.rank for m in layers]
    n = fm.n
    cur = matroid_representation(layers[0], p)
    if cur is None:
        return None
    for nxt in layers[1:]:
        target = nxt.rank
        g = target - cur.rows
        _, pivots, _ = gl.rref(cur)
        positions = [j for j in range(n) if j not in pivots]
        if p ** (g * len(positions)) > 1 << 22:
            raise SearchSpaceTooLarge(f"band space too large at rank {target}")
        found = None
        for band in _rref_bands(p, positions, g, n):
            cand = gl.vstack(cur, gl.matrix(p, [list(r) for r in band], cols=n))
            if _level_matches(cand, target, nxt):
                found = cand
                break
        if found is None:
            return None
        cur = found
    return FlagRepresentation(cur, tuple(ranks))


def _level_matches(a: gl.GFMatrix, level: int, layer: mc.Matroid) -> bool:
    bases = layer.basis_set
    for cols in combinations(range(a.cols), level):
        sub = gl.select_cols(gl.prefix_rows(a, level), cols)
        if gl.is_nonsingular(sub) != (mask_of(cols) in bases):
            return False
    return True


def _search_columns(fm: fl.FlagMatroid, p: int, guard_bits: int) -> Optional[FlagRepresentation]:
    """Backtracking over columns in lexicographic order with prefix pruning;
    complete for any prime via column-scaling canonicalization plus pinning
    the first feasible singleton's column to a unit vector."""
    levels = fm.cardinalities
    r = levels[-1]
    n = fm.n
    if r * max(n - 1, 1) * log2(p) > guard_bits:
        raise SearchSpaceTooLarge(f"column space exceeds 2^{guard_bits}")
    feas = fm.feasible_set
    unit_col = None
    if 1 in levels:
        singles = [j for j in range(n) if (1 << j) in feas]
        if singles:
            unit_col = singles[0]
    candidates = []
    for vec in product(range(p), repeat=r):
        lead = next((x for x in vec if x), None)
        if lead is None or lead == 1:
            candidates.append(vec)
    pos_levels = [d for d in levels if d > 0]
    cols: list[tuple[int, ...]] = []

    def feasible_so_far() -> bool:
        j = len(cols) - 1
        for d in pos_levels:
            if d > len(cols):
                break
            for combo in combinations(range(len(cols) - 1), d - 1):
                subset = combo + (j,)
                sub = gl.matrix(p, [[cols[c][i] for c in subset] for i in range(d)], cols=d)
                if gl.is_nonsingular(sub) != (mask_of(subset) in feas):
                    return False
        return True

    def place(j: int) -> bool:
        if j == n:
            return True
        pool = [tuple(1 if i == 0 else 0 for i in range(r))] if j == unit_col else candidates
        for vec in pool:
            cols.append(vec)
            if feasible_so_far() and place(j + 1):
                return True
            cols.pop()
        return False

    if not place(0):
        return None
    mat = gl.matrix(p, [[cols[j][i] for j in range(n)] for i in range(r)], cols=n)
    return FlagRepresentation(mat, levels)


def search_representation(
    fm: fl.FlagMatroid, p: int, guard_bits: int = 24
) -> Optional[FlagRepresentation]:
    """Exhaustive search for a representation of fm over GF(p).

    GF(2)/GF(3) use the level-wise route (complete by projective
    uniqueness); GF(5)/GF(7) fall back to canonicalized column
    backtracking, guarded by `guard_bits`.
    """
    if p not in SEARCH_FIELDS:
        raise InvalidInput(f"search supports p in {SEARCH_FIELDS}")
    if p in (2, 3):
        rep = _search_levelwise(fm, p)
    else:
        rep = _search_columns(fm, p, guard_bits)
    if rep is not None and represented_flag(rep) != fm:
        raise InvalidInput("search produced a wrong representation")  # pragma: no cover
    return rep


# --- forbidden-minor and witness routes ------------------------------------------------

@dataclass(frozen=True)
class ForbiddenMinorWitness:
    target_name: str
    target: fl.FlagMatroid
    contract: tuple[int, ...]
    delete: tuple[int, ...]
    chops: tuple[int, ...]
    bijection: tuple[int, ...]


@dataclass(frozen=True)
class RepresentabilityDecision:
    p: int
    representable: bool
    witness: Optional[ForbiddenMinorWitness] = None
    certificate: Optional[FlagRepresentation] = None


@lru_cache(maxsize=None)
def binary_forbidden_flags() -> tuple[tuple[str, fl.FlagMatroid], ...]:
    u24 = fl.from_sequence([mc.uniform(2, 4)])
    pair = fl.from_sequence([mc.uniform(1, 3), mc.uniform(2, 3)])
    return (("(U_{2,4})", u24), ("(U_{1,3},U_{2,3})", pair))


@lru_cache(maxsize=None)
def ternary_forbidden_flags() -> tuple[tuple[str, fl.FlagMatroid], ...]:
    """(R) and the pairwise non-isomorphic (R/e, R\\e) for the four excluded
    matroids; e ranges over elements that are neither loops nor coloops."""
    f7 = mc.fano_matroid()
    named = (
        ("U_{2,5}", mc.uniform(2, 5)),
        ("U_{3,5}", mc.uniform(3, 5)),
        ("F_7", f7),
        ("F_7^*", mc.dual(f7)),
    )
    out: list[tuple[str, fl.FlagMatroid]] = []
    for name, r in named:
        out.append((f"({name})", fl.from_sequence([r])))
        pairs: list[fl.FlagMatroid] = []
        for e in range(r.n):
            if r.loops_mask >> e & 1 or r.coloops_mask >> e & 1:
                continue
            cand = fl.from_sequence([mc.contract(r, e), mc.delete(r, e)])
            if all(fl.flag_isomorphic(cand, seen) is None for seen in pairs):
                pairs.append(cand)
                out.append((f"({name}/e,{name}\\e)", cand))
    return tuple(out)


def forbidden_minor_decision(fm: fl.FlagMatroid, p: int) -> RepresentabilityDecision:
    """Decide GF(2)/GF(3) representability of a full flag matroid by
    searching the fixed forbidden-minor list."""
    if p == 2:
        targets = binary_forbidden_flags()
    elif p == 3:
        targets = ternary_forbidden_flags()
    else:
        raise InvalidInput("forbidden-minor route supports p in (2, 3)")
    if not is_full(fm):
        raise NotFull("forbidden-minor characterization needs a full flag")
    for name, target in targets:
        hit = fl.flag_has_minor(fm, target)
        if hit is not None:
            c, d, chops, bij = hit
            return RepresentabilityDecision(
                p, False, witness=ForbiddenMinorWitness(name, target, c, d, chops, bij)
            )
    return RepresentabilityDecision(p, True)


def _pair_representation(q: mc.Matroid, x: int, p: int) -> FlagRepresentation:
    """Representation of (Q/x, Q\\x) extracted from a representation of Q.

    Row-reduces so that column x becomes the last unit vector; dropping that
    column gives the pair's matrix, whose top rows represent the
    contraction.
    """
    rmat = matroid_representation(q, p)
    if rmat is None:
        raise NoTransform(f"witness matroid not representable over GF({p})")
    r = q.rank
    rows = [list(rmat.row(i)) for i in range(r)]
    pivot = max(i for i in range(r) if rows[i][x] % p)
    rows[pivot], rows[r - 1] = rows[r - 1], rows[pivot]
    inv = pow(rows[r - 1][x], p - 2, p)
    rows[r - 1] = [(v * inv) % p for v in rows[r - 1]]
    for i in range(r - 1):
        if rows[i][x]:
            f = rows[i][x]
            rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r - 1])]
    pair_rows = [row[:x] + row[x + 1 :] for row in rows]
    return FlagRepresentation(gl.matrix(p, pair_rows, cols=q.n - 1), (r - 1, r))


def witness_route_decision(fm: fl.FlagMatroid, p: int) -> RepresentabilityDecision:
    """Decide representability of a full flag via its lift witness sequence:
    representable iff every witness matroid is, in which case stitching the
    per-pair representations yields an explicit certificate."""
    if p == 2:
        matroid_ok = mc.is_binary
    elif p == 3:
        matroid_ok = mc.is_ternary
    else:
        raise InvalidInput("witness route supports p in (2, 3)")
    if not is_full(fm):
        raise NotFull("witness route needs a full flag")
    layers = fm.layers
    if len(layers) == 1:
        if not matroid_ok(layers[0]):
            return RepresentabilityDecision(p, False)
        a = matroid_representation(layers[0], p)
        return RepresentabilityDecision(
            p, True, certificate=FlagRepresentation(a, (layers[0].rank,))
        )
    seq = lift_witness_sequence(fm)
    if not all(matroid_ok(q) for q, _ in seq.witnesses):
        return RepresentabilityDecision(p, False)
    rep: Optional[FlagRepresentation] = None
    for q, x in seq.witnesses:
        pair = _pair_representation(q, x, p)
        rep = pair if rep is None else _stitch_with_scaling(rep, pair)
    if represented_flag(rep) != fm:
        raise NoTransform("stitched certificate mismatch")  # pragma: no cover
    return RepresentabilityDecision(p, True, certificate=rep)


def is_binary_full(fm: fl.FlagMatroid) -> RepresentabilityDecision:
    """Forbidden-minor decision over GF(2); positive answers carry a
    certificate from the witness route."""
    return _full_decision(fm, 2)


def is_ternary_full(fm: fl.FlagMatroid) -> RepresentabilityDecision:
    """Forbidden-minor decision over GF(3); positive answers carry a
    certificate from the witness route."""
    return _full_decision(fm, 3)


def _full_decision(fm: fl.FlagMatroid, p: int) -> RepresentabilityDecision:
    decision = forbidden_minor_decision(fm, p)
    if not decision.representable:
        return decision
    cert = witness_route_decision(fm, p).certificate
    return RepresentabilityDecision(p, True, certificate=cert)


@dataclass(frozen=True)
class FillingDecision:
    status: str  # "yes" | "no" | "unknown"
    filling: Optional[fl.FlagMatroid] = None
    certificate: Optional[FlagRepresentation] = None


def is_representable_via_fillings(
    fm: fl.FlagMatroid, p: int, budget: int = 10000
) -> FillingDecision:
    """Tri-state decision for arbitrary flags: representable iff some
    filling is; bounded filling enumeration makes the negative answer
    conditional on completeness."""
    from .lifts_majors import enumerate_fillings

    if p not in (2, 3):
        raise InvalidInput("filling route supports p in (2, 3)")
    search = enumerate_fillings(fm, budget)
    for filling in search.fillings:
        decision = forbidden_minor_decision(filling, p)
        if decision.representable:
            cert = witness_route_decision(filling, p).certificate
            for level in cert.levels:
                if level not in fm.cardinalities:
                    cert = chop_representation(cert, level)
            return FillingDecision("yes", filling=filling, certificate=cert)
    if search.complete:
        return FillingDecision("no")
    return FillingDecision("unknown")
