#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <subst/subst.hpp>

#include "oracles.hpp"

using namespace subst;

namespace {

MinimalityVerdict verdict_of(const char* text) {
    return decide_minimality(parse_substitution(text));
}

template <class T>
const T* evidence_as(const MinimalityVerdict& v) {
    for (const Evidence& e : v.evidence)
        if (const T* p = std::get_if<T>(&e))
            return p;
    return nullptr;
}

} // namespace

TEST_CASE("sub-substitution extraction: worked examples") {
    {
        Substitution sub = parse_substitution("a -> aa\nd -> da");
        LetterClassification cls = classify_letters(sub);
        ReachReport reach = reachability(sub, cls);
        SubSubstitution s = extract_sub_substitution(sub, cls, reach, 0, 1);
        CHECK(s.b_set == "a");
        CHECK(s.b_l == "a");
        CHECK(s.sub.alphabet() == "a");
        CHECK(s.sub.image('a') == "aa");
        // 'd' is in L(sigma) but pruned from every table, so the pruned
        // tables of sigma and sigma_B agree even though the languages differ.
        CHECK(s.bounded_equality);
        CHECK(bounded_language(sub, 1).contains("d"));
        CHECK(!bounded_language(s.sub, 1).contains("d"));
    }
    {
        Substitution tm = parse_substitution("0 -> 01\n1 -> 10");
        LetterClassification cls = classify_letters(tm);
        SubSubstitution s = extract_sub_substitution(tm, cls, reachability(tm, cls));
        CHECK(s.b_set == "01");
        CHECK(s.sub.rules() == tm.rules());
        CHECK(s.bounded_equality);
    }
    {
        Substitution sub = parse_substitution("a -> aa\nb -> bb");
        LetterClassification cls = classify_letters(sub);
        ReachReport reach = reachability(sub, cls);
        SubSubstitution s0 = extract_sub_substitution(sub, cls, reach, 0);
        SubSubstitution s1 = extract_sub_substitution(sub, cls, reach, 1);
        CHECK(s0.b_set == "a");
        CHECK(s1.b_set == "b");
        CHECK(!s0.bounded_equality); // table of sigma holds both a^k and b^k
    }
}

TEST_CASE("verdicts: worked examples") {
    {
        MinimalityVerdict v = verdict_of("0 -> 01\n1 -> 10");
        CHECK(v.verdict == Verdict::minimal);
        CHECK(!v.single_periodic_orbit);
        REQUIRE(evidence_as<EvidenceTameAndPrimitive>(v));
    }
    {
        MinimalityVerdict v = verdict_of("0 -> 01\n1 -> 1");
        CHECK(v.verdict == Verdict::minimal);
        CHECK(v.single_periodic_orbit);
        const auto* e = evidence_as<EvidenceFiniteOrbits>(v);
        REQUIRE(e);
        CHECK(e->orbits == std::vector<Word>{"1"});
    }
    {
        MinimalityVerdict v = verdict_of("a -> baa\nb -> b");
        CHECK(v.verdict == Verdict::not_minimal);
        const auto* e = evidence_as<EvidencePeriodicPlusInterior>(v);
        REQUIRE(e);
        CHECK(e->periodic.word == "b");
        CHECK(e->interior.letter == 'a');
        CHECK(e->interior.n == 1);
        CHECK(e->interior.left_ctx == "b");
        CHECK(e->interior.right_ctx == "a");
    }
    {
        MinimalityVerdict v = verdict_of("a -> bb\nb -> aa");
        CHECK(v.verdict == Verdict::not_minimal);
        const auto* e = evidence_as<EvidenceFiniteOrbits>(v);
        REQUIRE(e);
        CHECK(e->orbits == std::vector<Word>{"a", "b"});
    }
    {
        MinimalityVerdict v = verdict_of("a -> aa\nb -> bb");
        CHECK(v.verdict == Verdict::not_minimal);
        CHECK((evidence_as<EvidenceFiniteOrbits>(v) || evidence_as<EvidenceDisjointMinimals>(v)));
    }
}

TEST_CASE("disjoint minimal subsystems certify non-minimality") {
    MinimalityVerdict v = verdict_of("0 -> 01\n1 -> 10\nx -> xy\ny -> x");
    CHECK(v.verdict == Verdict::not_minimal);
    const auto* e = evidence_as<EvidenceDisjointMinimals>(v);
    REQUIRE(e);
    CHECK(e->first_tame.tame);
    CHECK(e->second_tame.tame);
    CHECK(e->first_lprim.l_primitive);
    CHECK(e->second_lprim.l_primitive);
    // the witness word separates the two k-tables
    SubshiftTable t1 = subshift_table(e->first.sub, e->k, std::max(24, 4 * e->k));
    SubshiftTable t2 = subshift_table(e->second.sub, e->k, std::max(24, 4 * e->k));
    CHECK(t1.contains(e->witness_word) != t2.contains(e->witness_word));
    // and both parts re-verify as minimal on their own
    CHECK(decide_minimality(e->first.sub).verdict == Verdict::minimal);
    CHECK(decide_minimality(e->second.sub).verdict == Verdict::minimal);
}

TEST_CASE("set-map periods flag likely non-minimality") {
    MinimalityVerdict v = verdict_of("c -> ac\na -> bb\nb -> aa");
    CHECK(v.verdict == Verdict::likely_not_minimal);
    const auto* e = evidence_as<EvidenceSetPeriodOrClasses>(v);
    REQUIRE(e);
    REQUIRE(!e->set_periods.empty());
    CHECK(e->set_periods.front().second == 2);
}

TEST_CASE("unresolved tails come back inconclusive") {
    MinimalityVerdict v = verdict_of("d -> d0\n0 -> 01\n1 -> 10");
    CHECK(v.verdict == Verdict::inconclusive);
    CHECK(evidence_as<EvidenceBudgetsExhausted>(v));
}

TEST_CASE("periodic substitution construction: worked examples") {
    {
        Substitution sub = build_periodic_substitution("ab");
        CHECK(sub.image('a') == "ab");
        CHECK(sub.image('b') == "ab");
        MinimalityVerdict v = decide_minimality(sub);
        CHECK(v.verdict == Verdict::minimal);
        CHECK(v.single_periodic_orbit);
    }
    {
        Substitution sub = build_periodic_substitution("1");
        CHECK(sub.alphabet() == "1");
        CHECK(sub.image('1') == "11");
    }
    {
        Substitution sub = build_periodic_substitution("aba");
        CHECK(sub.image('a') == "aba");
        CHECK(sub.image('b') == "aba");
        MinimalityVerdict v = decide_minimality(sub);
        CHECK(v.verdict == Verdict::minimal);
        CHECK(v.single_periodic_orbit);
        const auto* e = evidence_as<EvidenceFiniteOrbits>(v);
        REQUIRE(e);
        REQUIRE(e->orbits.size() == 1);
        CHECK(e->orbits.front().size() == 3); // period-3 orbit
    }
}

TEST_CASE("minimal verdicts re-verify") {
    const char* texts[] = {"0 -> 01\n1 -> 10", "0 -> 0010\n1 -> 1", "a -> bca\nb -> b\nc -> ca",
                           "0 -> 01\n1 -> 0", "0 -> 01\n1 -> 00"};
    for (const char* t : texts) {
        Substitution sub = parse_substitution(t);
        MinimalityVerdict v = decide_minimality(sub);
        REQUIRE(v.verdict == Verdict::minimal);
        const auto* e = evidence_as<EvidenceTameAndPrimitive>(v);
        REQUIRE(e);
        // evidence recomputes from scratch
        LetterClassification cls = classify_letters(sub);
        StableConstants consts = stable_constants(sub, cls);
        CHECK(tameness(sub, cls, consts).tame == e->tameness.tame);
        LPrimitivityReport lp = l_primitivity(sub, cls);
        CHECK(lp.l_primitive);
        CHECK(lp.witness_n == e->lprim.witness_n);
    }
}

TEST_CASE("single-orbit verdicts agree with the periodic reconstruction") {
    const char* texts[] = {"0 -> 01\n1 -> 1", "a -> ab\nb -> b", "a -> aa\nd -> da"};
    for (const char* t : texts) {
        MinimalityVerdict v = verdict_of(t);
        REQUIRE(v.verdict == Verdict::minimal);
        REQUIRE(v.single_periodic_orbit);
        const auto* e = evidence_as<EvidenceFiniteOrbits>(v);
        REQUIRE(e);
        REQUIRE(e->orbits.size() == 1);
        Substitution rebuilt = build_periodic_substitution(e->orbits.front());
        MinimalityVerdict v2 = decide_minimality(rebuilt);
        CHECK(v2.verdict == Verdict::minimal);
        CHECK(v2.single_periodic_orbit);
        const auto* e2 = evidence_as<EvidenceFiniteOrbits>(v2);
        REQUIRE(e2);
        CHECK(e2->orbits == e->orbits);
    }
}

TEST_CASE("coexistence evidence re-verifies") {
    MinimalityVerdict v = verdict_of("a -> baa\nb -> b");
    const auto* e = evidence_as<EvidencePeriodicPlusInterior>(v);
    REQUIRE(e);
    Substitution sub = parse_substitution("a -> baa\nb -> b");
    // w^5 sits inside an actual expansion
    Word power;
    for (int i = 0; i < 5; ++i)
        power += e->periodic.word;
    Word big = expand(sub, e->periodic.origin, 6 * e->periodic.n0, {4'000'000, 256});
    CHECK(big.find(power) != Word::npos);
    // the interior witness letter is disjoint from the periodic word
    CHECK(!set_contains(letters_of(e->periodic.word), e->interior.letter));
    // contexts re-verify nonempty
    CHECK(!e->interior.left_ctx.empty());
    CHECK(!e->interior.right_ctx.empty());
    Word expanded = expand(sub, e->interior.letter, e->interior.n);
    CHECK(expanded == e->interior.left_ctx + e->interior.letter + e->interior.right_ctx);
}

TEST_CASE("verdicts cross-check with recurrence on minimal systems") {
    const char* texts[] = {"0 -> 01\n1 -> 10", "0 -> 0010\n1 -> 1", "a -> bca\nb -> b\nc -> ca"};
    for (const char* t : texts) {
        Substitution sub = parse_substitution(t);
        REQUIRE(decide_minimality(sub).verdict == Verdict::minimal);
        LetterClassification cls = classify_letters(sub);
        StableConstants consts = stable_constants(sub, cls);
        FixpointSeed seed =
            find_seed(sub, cls, reachability(sub, cls), tameness(sub, cls, consts));
        RecurrenceReport r = uniform_recurrence_check(sub, seed, 4, 2000, 5000);
        CHECK(r.uniformly_recurrent_observed);
    }
}

TEST_CASE("verdict propagates invalid substitutions") {
    CHECK_THROWS_AS(verdict_of("a -> b\nb -> a"), NotASubstitution);
}
