import random

import pytest

from flagmatroids import flag_core as fl
from flagmatroids import gf_linalg as gl
from flagmatroids import graphic as gr
from flagmatroids import lifts_majors as lm
from flagmatroids import matroid_core as mc
from flagmatroids.bitset import mask_of
from flagmatroids.errors import BudgetExhausted, NotElementaryLift, NotFull


def test_is_lift_examples():
    assert lm.is_lift(mc.uniform(2, 3), mc.uniform(1, 3), "all").ok
    assert lm.is_lift(mc.uniform(2, 3), mc.uniform(2, 3), "all").ok
    res = lm.is_lift(mc.uniform(1, 3), mc.uniform(2, 3), "all")
    assert not res.ok


def test_is_lift_methods_agree_n4():
    pool = list(mc.enumerate_matroids(4))
    for a in pool:
        for b in pool:
            verdicts = {m: lm.is_lift(a, b, m).ok for m in lm.LIFT_METHODS}
            assert len(set(verdicts.values())) == 1, (a, b, verdicts)


def test_verify_quotient_pair_examples():
    u35 = mc.uniform(3, 5)
    assert lm.verify_quotient_pair(u35, [3, 4], mc.uniform(1, 3), mc.uniform(3, 3))
    # brute-force check of the U_{2,5} contraction: two elements of a rank-2
    # uniform matroid leave rank 0
    u25 = mc.uniform(2, 5)
    assert lm.verify_quotient_pair(u25, [3, 4], mc.uniform(0, 3), mc.uniform(2, 3))
    q = mc.uniform(2, 4)
    assert lm.verify_quotient_pair(q, [], q, q)


def test_elementary_witness_examples():
    q = lm.elementary_witness(mc.uniform(1, 3), mc.uniform(2, 3))
    assert mc.is_isomorphic(q, mc.uniform(2, 4)) is not None
    q2 = lm.elementary_witness(mc.uniform(0, 2), mc.uniform(1, 2))
    assert mc.is_isomorphic(q2, mc.uniform(1, 3)) is not None
    with pytest.raises(NotElementaryLift):
        lm.elementary_witness(mc.uniform(1, 3), mc.uniform(3, 3))


def test_elementary_witness_round_trip():
    rng = random.Random(13)
    found = 0
    while found < 20:
        from conftest import random_gf_matrix

        q0 = mc.linear_matroid(random_gf_matrix(rng, rng.choice([2, 3]), 3, 5))
        e = rng.randrange(q0.n)
        if q0.loops_mask >> e & 1 or q0.coloops_mask >> e & 1:
            continue
        quot, lift = mc.contract(q0, e), mc.delete(q0, e)
        if lift.rank != quot.rank + 1:
            continue
        # move e to the top index so the witness convention applies
        perm = [i if i < e else i - 1 for i in range(q0.n)]
        perm[e] = q0.n - 1
        relabeled = mc.Matroid(
            q0.n,
            tuple(
                sorted(
                    (mask_of(perm[x] for x in _bits(b)) for b in q0.bases),
                    key=lambda s: tuple(_bits(s)),
                )
            ),
        )
        assert lm.elementary_witness(quot, lift) == relabeled
        found += 1


def _bits(mask):
    out = []
    e = 0
    while mask >> e:
        if mask >> e & 1:
            out.append(e)
        e += 1
    return tuple(out)


def test_coextension_uniqueness_pair():
    hits = lm.enumerate_elementary_coextensions(mc.uniform(1, 3), mc.uniform(2, 3))
    assert len(hits) == 1
    assert hits[0] == lm.elementary_witness(mc.uniform(1, 3), mc.uniform(2, 3))


def test_lift_witness_sequence():
    chain = fl.from_sequence([mc.uniform(1, 3), mc.uniform(2, 3), mc.uniform(3, 3)])
    seq = lm.lift_witness_sequence(chain)
    assert len(seq.witnesses) == 2
    assert mc.is_isomorphic(seq.witnesses[0][0], mc.uniform(2, 4)) is not None
    assert mc.is_isomorphic(seq.witnesses[1][0], mc.uniform(3, 4)) is not None

    single = fl.basis_flag(mc.uniform(2, 4))
    assert lm.lift_witness_sequence(single).witnesses == ()

    with pytest.raises(NotFull):
        lm.lift_witness_sequence(fl.from_sequence([mc.uniform(1, 3), mc.uniform(3, 3)]))


def test_witness_non_uniqueness_at_gap_two():
    """(U13, U33) admits several single witnesses: U_{3,5} (cf. the worked
    major example) and the one-element deletion of M(K4)."""
    u13, u33 = mc.uniform(1, 3), mc.uniform(3, 3)
    u35 = mc.uniform(3, 5)
    assert lm.verify_quotient_pair(u35, [3, 4], u13, u33)
    mk4_del = mc.delete(gr.cycle_matroid(gr.complete_graph(4)), 5)
    assert lm.verify_quotient_pair(mk4_del, [1, 2], u13, u33)
    assert mc.is_isomorphic(u35, mk4_del) is None


def test_is_full():
    assert lm.is_full(fl.from_sequence([mc.uniform(1, 3), mc.uniform(2, 3)]))
    assert not lm.is_full(fl.from_sequence([mc.uniform(1, 3), mc.uniform(3, 3)]))


def test_fill_from_representation():
    a = gl.matrix(5, [[1, 1, 1, 1], [0, 1, 2, 3], [0, 1, 4, 4]])
    fm = lm.fill_from_representation(a, (1, 3))
    assert lm.is_full(fm)
    assert [m.rank for m in fm.layers] == [1, 2, 3]


def test_enumerate_fillings_examples():
    g = fl.from_sequence([mc.uniform(1, 3), mc.uniform(3, 3)])
    search = lm.enumerate_fillings(g, budget=5000)
    assert search.complete
    mids = {f.layers[1] for f in search.fillings}
    assert mc.uniform(2, 3) in mids
    named = mc.Matroid(3, (mask_of([0, 1]), mask_of([0, 2])))
    assert named in mids
    for f in search.fillings:
        assert lm.is_full(f)
        assert fl.check_flag_axioms(f.n, f.feasible).ok

    full = fl.from_sequence([mc.uniform(1, 3), mc.uniform(2, 3)])
    assert lm.enumerate_fillings(full, 100).fillings == (full,)


def test_enumerate_fillings_budget_flag():
    g = fl.from_sequence([mc.uniform(1, 4), mc.uniform(4, 4)])
    search = lm.enumerate_fillings(g, budget=3)
    assert not search.complete


def test_enumerate_fillings_matches_unpruned():
    """Cross-check the candidate pruning against a fully unpruned
    enumeration over all matroids of the intermediate rank (n <= 4)."""
    cases = [
        fl.from_sequence([mc.uniform(0, 3), mc.uniform(2, 3)]),
        fl.from_sequence([mc.uniform(1, 4), mc.uniform(3, 4)]),
        fl.from_sequence([mc.uniform(0, 4), mc.uniform(2, 4)]),
    ]
    for fm in cases:
        low, high = fm.layers
        pruned = {f.layers[1] for f in lm.enumerate_fillings(fm, 10 ** 6).fillings}
        unpruned = {
            mid
            for mid in mc.enumerate_matroids(fm.n)
            if mid.rank == low.rank + 1
            and lm.is_lift(mid, low, "flats").ok
            and lm.is_lift(high, mid, "flats").ok
        }
        assert pruned == unpruned


def test_verify_major_worked_example():
    chain = fl.from_sequence([mc.uniform(1, 3), mc.uniform(2, 3), mc.uniform(3, 3)])
    u35 = mc.uniform(3, 5)
    assert lm.verify_major(u35, [(3,), (4,)], chain)
    # U_{3,5} is symmetric in the extras, so both orders pass here
    assert lm.verify_major(u35, [(4,), (3,)], chain)


def test_verify_major_block_order_matters():
    """On an asymmetric major (the K4 graphic one) only the correct block
    order verifies."""
    from itertools import permutations

    k4 = gr.multigraph(4, [(0, 1), (0, 3), (0, 2), (1, 3), (1, 2), (3, 2)])
    chain = gr.chain_of(
        4, [[[0, 1, 2, 3]], [[0, 1, 3], [2]], [[0, 1], [2], [3]], [[0], [1], [2], [3]]]
    )
    fm = gr.graphic_flag(k4, chain)
    _, major = gr.graphic_major(k4, chain)
    assert lm.verify_major(major.matroid, major.blocks, fm)
    outcomes = {
        perm: lm.verify_major(major.matroid, perm, fm)
        for perm in permutations(major.blocks)
    }
    assert outcomes[major.blocks]
    assert sum(outcomes.values()) == 1


def test_verify_major_rejects_wrong_flag():
    chain2 = fl.from_sequence([mc.uniform(1, 3), mc.uniform(2, 3)])
    assert not lm.verify_major(mc.uniform(3, 5), [(3,), (4,)], chain2)


def test_search_major_finds_and_verifies():
    g = fl.from_sequence([mc.uniform(1, 3), mc.uniform(3, 3)])
    major = lm.search_major(g, budget=200000)
    assert major is not None
    assert lm.verify_major(major.matroid, major.blocks, g)


def test_search_major_budget():
    g = fl.from_sequence([mc.uniform(1, 4), mc.uniform(4, 4)])
    with pytest.raises(BudgetExhausted):
        lm.search_major(g, budget=2)


def test_search_major_trivial():
    single = fl.basis_flag(mc.uniform(2, 4))
    major = lm.search_major(single)
    assert major is not None and major.matroid == mc.uniform(2, 4)
