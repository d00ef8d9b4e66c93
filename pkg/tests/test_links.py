import random

import pytest
from hypothesis import given, strategies as st

from engelkit.errors import LinkConstructionError, LinkDslSyntaxError
from engelkit.models.links import Classification
from engelkit.services import links
from engelkit.services.families import (
    FamilySpec,
    SweepEntry,
    family,
    family_companion,
    family_report,
    family_sweep,
    whitehead_all,
)
from engelkit.services.link_dsl import build, build_text, parse_construction, random_construction, to_dsl
from engelkit.services.words import Word


class TestConstructions:
    """Tests for the doubling operations on link models."""

    def test_hopf(self):
        hopf = links.hopf()
        assert links.linking_number(hopf, 1, 2) == 1
        assert links.mu_bar(hopf, [1, 2]).value == 1

    def test_unlink_is_trivial_plus(self):
        assert links.link_classifier.classify(links.unlink(3)) == Classification.TRIVIAL_PLUS

    def test_bing_double_of_hopf_is_borromean(self):
        borromean = links.bing(links.hopf(), 1)
        assert borromean.size == 3
        assert links.linking_numbers_zero(borromean)
        value = links.mu_bar(borromean, [1, 2, 3])
        assert abs(value.value) == 1
        assert value.valid
        assert links.link_classifier.classify(borromean) == Classification.ESSENTIAL

    def test_whitehead_link(self):
        wh = links.whitehead_link(1)
        assert wh.size == 2
        assert links.linking_number(wh, 1, 2) == 0
        assert links.link_classifier.classify(wh) == Classification.TRIVIAL_PLUS

    def test_taxonomy(self):
        wh = links.whitehead_link(1)
        classify = links.link_classifier.classify
        assert classify(links.par(wh, 1)) == Classification.TRIVIAL_NOT_PLUS
        assert classify(links.par(links.par(wh, 1), 2)) == Classification.ESSENTIAL

    def test_parallel_copy_repeats_longitude(self):
        doubled = links.par(links.hopf(), 1)
        assert doubled.size == 3
        assert links.mu_bar(doubled, [3, 2]).value == 1
        assert links.mu_bar(doubled, [1, 3]).value == 0

    def test_delete_parallel_copy(self):
        hopf = links.hopf()
        restored = links.delete_component(links.par(hopf, 1), 3)
        assert [c.longitude for c in restored.components] == [c.longitude for c in hopf.components]

    def test_ramification(self):
        assert links.ram(links.hopf(), 2, 3).size == 4
        assert links.ram(links.hopf(), 2, 1).size == 2
        with pytest.raises(LinkConstructionError):
            links.ram(links.hopf(), 1, 0)

    def test_bad_index(self):
        with pytest.raises(LinkConstructionError):
            links.bing(links.hopf(), 3)

    def test_bad_whitehead_sign(self):
        with pytest.raises(LinkConstructionError):
            links.whd(links.hopf(), 1, 2)

    def test_mu_bar_needs_distinct_indices(self):
        with pytest.raises(LinkConstructionError):
            links.mu_bar(links.hopf(), [1, 1])
        with pytest.raises(LinkConstructionError):
            links.mu_bar(links.hopf(), [1])

    def test_sublink_of_borromean_is_trivial(self):
        borromean = links.bing(links.hopf(), 1)
        assert links.is_h_trivial(links.sublink(borromean, [1, 2]))

    def test_longitude_limit(self, monkeypatch):
        monkeypatch.setenv("ENGELKIT_MAX_LONGITUDE_LENGTH", "3")
        with pytest.raises(LinkConstructionError):
            links.bing(links.hopf(), 1)

    def test_classification_report(self):
        report = links.link_classifier.report(links.bing(links.hopf(), 1))
        assert report.obstruction is not None
        assert len(report.obstruction.indices) == 3
        assert report.components == 3


class TestInvariance:
    """Tests for properties of the distinct-index invariants."""

    @given(st.integers(0, 10_000), st.sampled_from([Word.generator(1), Word.generator(2, -1)]))
    def test_first_value_survives_conjugation(self, seed, by):
        rng = random.Random(seed)
        link = build(random_construction(rng, steps=2, max_components=4))
        conjugated = links.conjugate_longitude(link, rng.randint(1, link.size), by)
        first = links.first_nonvanishing(link)
        if first is None:
            assert links.is_h_trivial(conjugated)
        else:
            assert first.valid
            assert links.mu_bar(conjugated, first.indices).value == first.value

    @given(st.integers(0, 10_000))
    def test_sublink_values_agree(self, seed):
        link = build(random_construction(random.Random(seed), steps=2, max_components=4))
        if link.size < 3:
            return
        keep = [1, 2, 3]
        smaller = links.sublink(link, keep)
        for indices in ([1, 2], [2, 1], [1, 2, 3], [3, 1, 2]):
            assert links.mu_bar(smaller, indices).value == links.mu_bar(link, indices).value

    @given(st.integers(0, 10_000))
    def test_pairwise_values_are_symmetric(self, seed):
        link = build(random_construction(random.Random(seed), steps=2, max_components=4))
        for i in range(1, link.size + 1):
            for j in range(i + 1, link.size + 1):
                assert links.mu_bar(link, [i, j]).value == links.mu_bar(link, [j, i]).value

    @given(st.integers(0, 10_000), st.data())
    def test_deleting_a_parallel_copy_restores_the_link(self, seed, data):
        link = build(random_construction(random.Random(seed), steps=2, max_components=4))
        i = data.draw(st.integers(1, link.size))
        restored = links.delete_component(links.par(link, i), link.size + 1)
        assert [c.longitude for c in restored.components] == [c.longitude for c in link.components]


class TestDsl:
    """Tests for construction expressions."""

    @pytest.mark.parametrize(
        "text",
        ["hopf", "unlink(3)", "wh(-)", "bing(hopf,1)", "whd(bing(hopf,1),2,-)", "ram(wh(+),1,2)", "par(hopf,2)"],
    )
    def test_canonical_text(self, text):
        assert to_dsl(parse_construction(text)) == text

    def test_spaces_are_allowed(self):
        assert to_dsl(parse_construction(" bing( hopf , 2 ) ")) == "bing(hopf,2)"

    def test_build_matches_direct_calls(self):
        built = build_text("bing(hopf,1)")
        direct = links.bing(links.hopf(), 1)
        assert built.components == direct.components
        assert built.provenance == "bing(hopf,1)"

    @pytest.mark.parametrize("text", ["bing(hopf)", "knot", "wh(*)", "hopf hopf", "bing(hopf,1"])
    def test_syntax_errors(self, text):
        with pytest.raises(LinkDslSyntaxError) as info:
            parse_construction(text)
        assert info.value.module == "links"

    def test_random_constructions_build(self):
        rng = random.Random(5)
        for _ in range(20):
            expr = random_construction(rng)
            assert build_text(to_dsl(expr)).size <= 5


class TestFamilies:
    """Tests for the Wh(Bing(Hopf)) and Wh(Bing(Wh)) families."""

    def test_sweep_members(self):
        names = [entry.name for entry in family_sweep()]
        assert len(names) == 10
        assert names[0] == "hopf-1"
        assert names[-1] == "wh-ramified-2"

    def test_hopf_seed_needs_a_bing_step(self):
        with pytest.raises(LinkConstructionError):
            family_companion(FamilySpec("hopf"))

    def test_unknown_seed(self):
        with pytest.raises(LinkConstructionError):
            family_companion(FamilySpec("trefoil", ((1, 1),)))

    def test_bing_step_ramifies_then_doubles(self):
        companion = family_companion(FamilySpec("hopf", ((1, 2),)))
        assert companion.size == 5

    def test_hopf_companion_is_essential(self):
        member = family_report(SweepEntry("hopf-1", FamilySpec("hopf", ((1, 1),))))
        assert member.companion.classification == Classification.ESSENTIAL
        assert member.member_linking_numbers_zero

    def test_whitehead_companion_is_trivial_plus(self):
        member = family_report(SweepEntry("wh-1", FamilySpec("wh", ((1, 1),))))
        assert member.companion.classification == Classification.TRIVIAL_PLUS
        assert member.member_components == 3

    def test_ramified_whitehead_companion_is_essential(self):
        spec = FamilySpec("wh", ((1, 1),), seed_ramification=2)
        member = family_report(SweepEntry("wh-ramified-1", spec))
        assert member.ramified
        assert member.companion.classification == Classification.ESSENTIAL

    def test_whitehead_all_signs(self):
        hopf = links.hopf()
        assert whitehead_all(hopf, (1, -1)).size == 2
        with pytest.raises(LinkConstructionError):
            whitehead_all(hopf, (1,))
        with pytest.raises(LinkConstructionError):
            whitehead_all(hopf, (1, 0))

    def test_member_provenance(self):
        spec = FamilySpec("hopf", ((1, 1),))
        assert family(spec).provenance == f"family({spec.describe()})"

    def test_whitehead_all_against_sequential_doubling(self):
        companion = family_companion(FamilySpec("hopf", ((1, 1),)))
        sequential = companion
        for i in range(1, companion.size + 1):
            sequential = links.whd(sequential, i)
        surrogate = whitehead_all(companion)
        assert surrogate.size == sequential.size
        assert surrogate.longitude(1) == links.whd(companion, 1).longitude(1)
        assert links.linking_numbers_zero(surrogate)
        assert links.linking_numbers_zero(sequential)
