import random
from functools import lru_cache

import pytest

from ebrank.metrics import (
    AlignerKind,
    MetricKind,
    align,
    consistency,
    relevance,
    rouge_l,
    rouge_n,
    score,
)


def _lcs_oracle(a, b):
    # independent recursive LCS, memoized
    @lru_cache(maxsize=None)
    def rec(i, j):
        if i == len(a) or j == len(b):
            return 0
        if a[i] == b[j]:
            return 1 + rec(i + 1, j + 1)
        return max(rec(i + 1, j), rec(i, j + 1))

    return rec(0, 0)


def _random_seq(rng, vocab=("a", "b", "c", "d"), max_len=8):
    return tuple(rng.choices(vocab, k=rng.randint(0, max_len)))


class TestRougeN:
    def test_identity(self):
        assert rouge_n(("a", "b", "c"), ("a", "b", "c"), 1).value == 1.0

    def test_bigram_half_overlap(self):
        # bigrams {ab,bc} vs {ab,bd}: overlap 1, P=R=1/2, F1=1/2
        assert rouge_n(("a", "b", "c"), ("a", "b", "d"), 2).value == pytest.approx(0.5)

    def test_empty_candidate(self):
        assert rouge_n((), ("a",), 1).value == 0.0

    def test_too_short_for_n(self):
        assert rouge_n(("a",), ("a", "b"), 2).value == 0.0

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            rouge_n(("a",), ("a",), 3)

    def test_clipping(self):
        # candidate repeats "a" three times, reference has it once
        s = rouge_n(("a", "a", "a"), ("a", "b"), 1)
        # overlap clipped to 1: P=1/3, R=1/2, F1=0.4
        assert s.value == pytest.approx(0.4)


class TestRougeL:
    def test_identity(self):
        assert rouge_l(("x", "y"), ("x", "y")).value == 1.0

    def test_known_case(self):
        cand = ("the", "cat", "sat", "on", "mat")
        ref = ("the", "cat", "on", "the", "mat")
        assert _lcs_oracle(cand, ref) == 4
        assert rouge_l(cand, ref).value == pytest.approx(0.8)

    def test_disjoint(self):
        assert rouge_l(("a", "b"), ("c", "d")).value == 0.0

    def test_matches_lcs_oracle_on_random_inputs(self):
        rng = random.Random(5)
        for _ in range(200):
            cand, ref = _random_seq(rng), _random_seq(rng)
            got = rouge_l(cand, ref).value
            lcs = _lcs_oracle(cand, ref)
            if not cand or not ref or lcs == 0:
                assert got == 0.0
            else:
                p, r = lcs / len(cand), lcs / len(ref)
                assert got == pytest.approx(2 * p * r / (p + r))


class TestAlign:
    def test_exact_membership(self):
        assert align(("x", "y"), ("x", "z"), AlignerKind.EXACT) == (1.0, 0.0)

    def test_exact_subset_all_ones(self):
        assert align(("x", "z"), ("x", "y", "z"), AlignerKind.EXACT) == (1.0, 1.0)

    def test_soft_identical_token(self):
        assert align(("running",), ("running",), AlignerKind.SOFT_CHAR) == (1.0,)

    def test_soft_partial_overlap(self):
        (conf,) = align(("runner",), ("running",), AlignerKind.SOFT_CHAR)
        assert 0.0 < conf < 1.0

    def test_soft_short_tokens_exact_match(self):
        assert align(("at",), ("at",), AlignerKind.SOFT_CHAR) == (1.0,)

    def test_soft_short_tokens_bigram_fallback(self):
        (conf,) = align(("ab",), ("abc",), AlignerKind.SOFT_CHAR)
        # bigrams {ab} vs {ab, bc}: jaccard 1/2
        assert conf == pytest.approx(0.5)

    def test_empty_a(self):
        assert align((), ("x",), AlignerKind.EXACT) == ()

    def test_length_matches_a(self):
        rng = random.Random(1)
        for _ in range(50):
            a, b = _random_seq(rng), _random_seq(rng)
            for aligner in AlignerKind:
                vec = align(a, b, aligner)
                assert len(vec) == len(a)
                assert all(0.0 <= v <= 1.0 for v in vec)


class TestConsistency:
    def test_mean_of_alignment(self):
        s = consistency(("a", "b", "d"), ("a", "a", "c", "b"), AlignerKind.EXACT)
        assert s.value == pytest.approx(0.75)

    def test_fully_contained(self):
        s = consistency(("a", "b", "c"), ("b", "c"), AlignerKind.EXACT)
        assert s.value == 1.0

    def test_one_hallucinated_of_two(self):
        s = consistency(("a", "b"), ("a", "z"), AlignerKind.EXACT)
        assert s.value == 0.5

    def test_empty_candidate(self):
        assert consistency(("a",), (), AlignerKind.EXACT).value == 0.0

    def test_appending_unsupported_token_never_raises_it(self):
        rng = random.Random(3)
        for _ in range(100):
            x = _random_seq(rng) or ("a",)
            cand = _random_seq(rng) or ("a",)
            before = consistency(x, cand, AlignerKind.EXACT).value
            after = consistency(x, cand + ("zzz",), AlignerKind.EXACT).value
            assert after <= before + 1e-12


class TestRelevance:
    def test_product_of_means(self):
        # grounded mean 0.75 (3 of 4 in x), covered mean 0.5 (1 of 2 in cand)
        x = ("a", "b", "c")
        cand = ("a", "b", "c", "z")
        ref = ("a", "q")
        s = relevance(x, ref, cand, AlignerKind.EXACT)
        assert s.value == pytest.approx(0.375)

    def test_candidate_equals_reference_subsequence(self):
        x = ("a", "b", "c", "d")
        assert relevance(x, ("b", "c"), ("b", "c"), AlignerKind.EXACT).value == 1.0

    def test_candidate_disjoint_from_source(self):
        assert relevance(("a",), ("a",), ("z",), AlignerKind.EXACT).value == 0.0

    def test_bounded_by_consistency(self):
        rng = random.Random(9)
        for _ in range(100):
            x, ref, cand = _random_seq(rng), _random_seq(rng), _random_seq(rng)
            rel = relevance(x, ref, cand, AlignerKind.EXACT).value
            cons = consistency(x, cand, AlignerKind.EXACT).value
            assert rel <= cons + 1e-12


class TestScoreDispatch:
    def test_cons_plus_rel_is_sum(self):
        x = ("a", "b", "c")
        ref = ("a", "b")
        cand = ("a", "b")
        total = score(MetricKind.CONS_PLUS_REL, x, ref, cand).value
        expected = (
            consistency(x, cand, AlignerKind.EXACT).value
            + relevance(x, ref, cand, AlignerKind.EXACT).value
        )
        assert total == pytest.approx(expected)

    def test_consistency_without_reference(self):
        s = score(MetricKind.CONSISTENCY, ("a",), None, ("a",))
        assert s.value == 1.0

    def test_reference_dependent_requires_reference(self):
        with pytest.raises(ValueError):
            score(MetricKind.RL, ("a",), None, ("a",))

    def test_values_within_declared_ranges(self):
        rng = random.Random(17)
        for _ in range(200):
            x = _random_seq(rng) or ("a",)
            ref = _random_seq(rng) or ("b",)
            cand = _random_seq(rng)
            for kind in MetricKind:
                for aligner in AlignerKind:
                    v = score(kind, x, ref, cand, aligner).value
                    assert 0.0 <= v <= kind.max_value

    def test_rouge_f1_symmetric_under_swap(self):
        rng = random.Random(23)
        for _ in range(100):
            a, b = _random_seq(rng), _random_seq(rng)
            assert rouge_l(a, b).value == pytest.approx(rouge_l(b, a).value)
            for n in (1, 2):
                assert rouge_n(a, b, n).value == pytest.approx(rouge_n(b, a, n).value)
