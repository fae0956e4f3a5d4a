"""Randomized lemma suites over the small-group corpus.

Each suite draws well over a thousand seeded instances; the lemma inequalities
are checked with exact integer arithmetic against independently computed set
sizes wherever one exists (double-loop products, literal coset unions).
"""

import random

from hypothesis import given, strategies as st

from ingleton.engine import Quadruple, exclusion_verdict, ingleton_terms, is_offender
from ingleton.groups import bits_to_ids
from ingleton.permutations import format_cycles, parse_cycles
from ingleton.subgroups import (
    Subgroup,
    generated_subgroup,
    join_bits,
    normal_subgroups,
)


def random_subgroup(rng, G, max_gens=3):
    k = rng.randint(1, max_gens)
    return generated_subgroup(G, [rng.randrange(G.n) for _ in range(k)])


def corpus_instances(small_groups, count, seed):
    """Yield (rng, G) pairs cycling over the corpus until count instances."""
    rng = random.Random(seed)
    emitted = 0
    while emitted < count:
        for _, G in small_groups:
            if emitted >= count:
                return
            yield rng, G
            emitted += 1


def test_order_intersection_bound(small_groups):
    # |G| * |A n B| >= |A| * |B| for all subgroup pairs
    checked = 0
    for rng, G in corpus_instances(small_groups, 1200, seed=101):
        A = random_subgroup(rng, G)
        B = random_subgroup(rng, G)
        assert G.n * (A.bits & B.bits).bit_count() >= A.order * B.order
        checked += 1
    assert checked >= 1000


def test_index_reduction(small_groups):
    # A >= B implies |A| * |B n C| >= |B| * |A n C|
    checked = 0
    for rng, G in corpus_instances(small_groups, 1200, seed=202):
        A = random_subgroup(rng, G)
        members = A.member_ids()
        B = generated_subgroup(G, [rng.choice(members) for _ in range(rng.randint(1, 3))])
        C = random_subgroup(rng, G)
        assert A.bits & B.bits == B.bits
        assert A.order * (B.bits & C.bits).bit_count() >= B.order * (A.bits & C.bits).bit_count()
        checked += 1
    assert checked >= 1000


def _product_bits(G, A_bits, B_bits):
    """Literal {a*b} set, the independent oracle for product sizes."""
    out = 0
    mul = G.mul
    bs = bits_to_ids(B_bits)
    for a in bits_to_ids(A_bits):
        for b in bs:
            out |= 1 << mul(a, b)
    return out


def test_product_set_size_matches_double_loop(small_groups):
    from ingleton.subgroups import product_set_size

    checked = 0
    for rng, G in corpus_instances(small_groups, 1100, seed=303):
        A = random_subgroup(rng, G)
        B = random_subgroup(rng, G)
        literal = _product_bits(G, A.bits, B.bits).bit_count()
        assert product_set_size(A, B) == literal
        checked += 1
    assert checked >= 1000


def test_normal_product_bound_and_equality(small_groups):
    # |AN n B| * |N n A| <= |A n B| * |N|, with equality whenever N <= B
    checked = equality_cases = 0
    for rng, G in corpus_instances(small_groups, 1400, seed=404):
        normals = normal_subgroups(G)
        N = normals[rng.randrange(len(normals))]
        A = random_subgroup(rng, G)
        B = random_subgroup(rng, G)
        AN = _product_bits(G, A.bits, N.bits)  # N normal: AN is a subgroup
        lhs = (AN & B.bits).bit_count() * (N.bits & A.bits).bit_count()
        rhs = (A.bits & B.bits).bit_count() * N.order
        assert lhs <= rhs
        checked += 1
        # force the equality branch: extend B over N
        B2 = Subgroup(G, join_bits(G, N.bits, B.gens, base_gens=()))
        lhs2 = (AN & B2.bits).bit_count() * (N.bits & A.bits).bit_count()
        rhs2 = (A.bits & B2.bits).bit_count() * N.order
        assert lhs2 == rhs2
        equality_cases += 1
    assert checked >= 1000 and equality_cases >= 1000


def test_factorized_h12_is_never_an_offender(small_groups):
    # whenever |H123| * |H124| = |H12| * |H1234| the inequality must hold
    factorized = 0
    rng = random.Random(505)
    while factorized < 1000:
        for _, G in small_groups:
            h = [random_subgroup(rng, G) for _ in range(4)]
            t = ingleton_terms(Quadruple(*h))
            if t.h123 * t.h124 == t.h12 * t.h1234:
                assert t.lhs >= t.rhs
                factorized += 1
    assert factorized >= 1000


def test_exclusion_verdict_soundness(small_groups):
    # anything the verdict excludes really satisfies the inequality
    excluded = 0
    rng = random.Random(606)
    while excluded < 1000:
        for _, G in small_groups:
            h = [random_subgroup(rng, G) for _ in range(4)]
            Q = Quadruple(*h)
            v = exclusion_verdict(Q)
            if v.excluded:
                assert not is_offender(Q), f"excluded a true offender via {v.reason}"
                excluded += 1
    assert excluded >= 1000


def test_conjugation_invariance(small_groups):
    from ingleton.subgroups import conjugate_subgroup

    checked = 0
    for rng, G in corpus_instances(small_groups, 1100, seed=707):
        h = [random_subgroup(rng, G) for _ in range(4)]
        Q = Quadruple(*h)
        g = rng.randrange(G.n)
        conj = Quadruple(*(conjugate_subgroup(G, s, g) for s in h))
        assert ingleton_terms(conj) == ingleton_terms(Q)
        checked += 1
    assert checked >= 1000


def test_no_cyclic_h1_h2_in_any_found_offender(s5_classes, a4a4_classes, pgl27_classes, a6_classes):
    from ingleton.subgroups import is_cyclic

    for cls in s5_classes + a4a4_classes + pgl27_classes + a6_classes:
        Q = cls.representative
        assert not is_cyclic(Q.h1)
        assert not is_cyclic(Q.h2)


def test_shrink_preserves_every_found_offender(s5_classes, a4a4_classes, pgl27_classes, a6_classes):
    from ingleton.engine import shrink_h1

    for cls in s5_classes + a4a4_classes + pgl27_classes + a6_classes:
        assert is_offender(shrink_h1(cls.representative))


@given(st.permutations(list(range(8))))
def test_cycle_string_roundtrip(img):
    assert parse_cycles(format_cycles(tuple(img)), 8) == tuple(img)
