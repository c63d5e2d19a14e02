#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <subst/fixpoint.hpp>

#include "oracles.hpp"

using namespace subst;

namespace {

struct Analyzed {
    Substitution sub;
    LetterClassification cls;
    StableConstants consts;
    ReachReport reach;
    TamenessReport tame;
};

Analyzed analyze(const char* text) {
    Substitution sub = parse_substitution(text);
    LetterClassification cls = classify_letters(sub);
    StableConstants consts = stable_constants(sub, cls);
    ReachReport reach = reachability(sub, cls);
    TamenessReport tame = tameness(sub, cls, consts);
    return {std::move(sub), std::move(cls), std::move(consts), std::move(reach), std::move(tame)};
}

} // namespace

TEST_CASE("seeds: worked examples") {
    {
        auto a = analyze("0 -> 0010\n1 -> 1");
        FixpointSeed s = find_seed(a.sub, a.cls, a.reach, a.tame);
        CHECK(s.left_letter == '0');
        CHECK(s.middle == "");
        CHECK(s.right_letter == '0');
        CHECK(s.p == 1);
    }
    {
        auto a = analyze("0 -> 01\n1 -> 10");
        FixpointSeed s = find_seed(a.sub, a.cls, a.reach, a.tame);
        CHECK(s.left_letter == '0');
        CHECK(s.middle == "");
        CHECK(s.right_letter == '1');
        CHECK(s.p == 2);
    }
    {
        auto a = analyze("a -> bb\nb -> aa");
        FixpointSeed s = find_seed(a.sub, a.cls, a.reach, a.tame);
        CHECK(s.left_letter == 'a');
        CHECK(s.middle == "");
        CHECK(s.right_letter == 'a');
        CHECK(s.p == 2);
    }
}

TEST_CASE("find_seed requires tameness") {
    auto a = analyze("0 -> 01\n1 -> 1");
    CHECK_THROWS_AS(find_seed(a.sub, a.cls, a.reach, a.tame), NotTame);
}

TEST_CASE("windows: worked examples") {
    {
        auto a = analyze("0 -> 0010\n1 -> 1");
        FixpointSeed s = find_seed(a.sub, a.cls, a.reach, a.tame);
        CHECK(window(a.sub, s, 0, 3) == "0010");
        CHECK(window(a.sub, s, 0, 0) == "0");
    }
    {
        auto a = analyze("0 -> 01\n1 -> 10");
        FixpointSeed s = find_seed(a.sub, a.cls, a.reach, a.tame);
        CHECK(window(a.sub, s, 0, 7) == "10010110");
        CHECK(window(a.sub, s, 0, 0) == "1");
        CHECK(window(a.sub, s, -1, -1) == Word(1, s.left_letter));
    }
}

TEST_CASE("windows are invariant under extra applications of sigma^p") {
    const char* texts[] = {"0 -> 0010\n1 -> 1", "0 -> 01\n1 -> 10", "a -> bca\nb -> b\nc -> ca",
                           "a -> bb\nb -> aa"};
    for (const char* t : texts) {
        auto a = analyze(t);
        FixpointSeed s = find_seed(a.sub, a.cls, a.reach, a.tame);
        Word base = window(a.sub, s, -200, 200);
        for (int k = 2; k <= 3; ++k) {
            FixpointSeed more = s;
            more.p = s.p * k; // same fixed point, coarser steps
            CHECK(window(a.sub, more, -200, 200) == base);
        }
    }
}

TEST_CASE("window sides agree with direct expansions") {
    auto a = analyze("0 -> 0010\n1 -> 1");
    FixpointSeed s = find_seed(a.sub, a.cls, a.reach, a.tame);
    Word pow = oracles::naive_power(a.sub, '0', 5);
    CHECK(window(a.sub, s, 0, static_cast<long>(pow.size()) - 1) == pow);
}

TEST_CASE("periodic words from isolation: worked examples") {
    {
        auto a = analyze("0 -> 01\n1 -> 1");
        PeriodicWitness w = periodic_word_from_isolation(a.sub, a.cls, a.consts, '0');
        CHECK(w.word == "1");
        CHECK(w.n0 == 1);
        CHECK(w.origin == '0');
    }
    {
        auto a = analyze("a -> baa\nb -> b");
        PeriodicWitness w = periodic_word_from_isolation(a.sub, a.cls, a.consts, 'a');
        CHECK(w.word == "b");
        CHECK(w.n0 == 1);
    }
    {
        auto a = analyze("0 -> 0010\n1 -> 1");
        CHECK_THROWS_AS(periodic_word_from_isolation(a.sub, a.cls, a.consts, '0'), NotIsolated);
    }
}

TEST_CASE("periodic witness powers live inside actual expansions") {
    const char* texts[] = {"0 -> 01\n1 -> 1", "a -> baa\nb -> b", "a -> sb\nb -> aa\ns -> s"};
    for (const char* t : texts) {
        auto a = analyze(t);
        for (Letter x : a.cls.growing) {
            IsolationStatus st = isolation(a.sub, a.cls, x);
            if (!st.left_isolated && !st.right_isolated)
                continue;
            PeriodicWitness w = periodic_word_from_isolation(a.sub, a.cls, a.consts, x);
            CHECK(is_subset(letters_of(w.word), a.cls.bounded));
            for (int k = 1; k <= 5; ++k) {
                Word power;
                for (int i = 0; i < k; ++i)
                    power += w.word;
                Word big = expand(a.sub, x, (k + 1) * w.n0, {4'000'000, 256});
                CHECK(big.find(power) != Word::npos);
            }
        }
    }
}

TEST_CASE("interior pump: worked examples") {
    {
        auto a = analyze("a -> baa\nb -> b");
        auto w = interior_pump(a.sub, a.cls, 'a', 4);
        REQUIRE(w.has_value());
        CHECK(w->n == 1);
        CHECK(w->left_ctx == "b");
        CHECK(w->right_ctx == "a");
    }
    {
        auto a = analyze("0 -> 0010\n1 -> 1");
        auto w = interior_pump(a.sub, a.cls, '0', 2);
        REQUIRE(w.has_value());
        CHECK(w->n == 1);
        CHECK(w->left_ctx == "0");
        CHECK(w->right_ctx == "10");
    }
    {
        auto a = analyze("a -> ab\nb -> b");
        CHECK(!interior_pump(a.sub, a.cls, 'a', 6).has_value());
    }
}

TEST_CASE("interior witness contexts grow under pumping") {
    auto a = analyze("a -> baa\nb -> b");
    auto w = interior_pump(a.sub, a.cls, 'a', 4);
    REQUIRE(w.has_value());
    Expander ex(a.sub);
    Word once = ex.power('a', w->n);
    Word twice = ex.power('a', 2 * w->n);
    // the pumped occurrence sits at |sigma^n(left_ctx)| + ... with strictly
    // longer contexts on both sides
    std::size_t pos = (ex.word_power(w->left_ctx, w->n) + w->left_ctx).size();
    REQUIRE(pos < twice.size());
    CHECK(twice[pos] == 'a');
    CHECK(pos > w->left_ctx.size());
    CHECK(twice.size() - pos - 1 > w->right_ctx.size());
}

TEST_CASE("bounded gap constants: worked examples") {
    {
        auto a = analyze("0 -> 01\n1 -> 10");
        LPrimitivityReport lp = l_primitivity(a.sub, a.cls);
        BoundedGapReport b = bounded_gap_constants(a.sub, a.cls, lp, a.tame, a.consts);
        CHECK(b.p_prime == 2);
        CHECK(b.l == 4);
        CHECK(b.d == 0);
        CHECK(b.d_prime == 8);
    }
    {
        auto a = analyze("0 -> 0010\n1 -> 1");
        LPrimitivityReport lp = l_primitivity(a.sub, a.cls);
        BoundedGapReport b = bounded_gap_constants(a.sub, a.cls, lp, a.tame, a.consts);
        CHECK(b.p_prime == 1);
        CHECK(b.l == 4);
        CHECK(b.d_prime == b.d + 8);
    }
    {
        auto a = analyze("0 -> 01\n1 -> 1");
        LPrimitivityReport lp = l_primitivity(a.sub, a.cls);
        CHECK_THROWS_AS(bounded_gap_constants(a.sub, a.cls, lp, a.tame, a.consts),
                        PreconditionFailed);
    }
}

TEST_CASE("every growing letter occurs in every d'-window of x0") {
    const char* texts[] = {"0 -> 01\n1 -> 10", "0 -> 0010\n1 -> 1", "a -> bca\nb -> b\nc -> ca"};
    for (const char* t : texts) {
        auto a = analyze(t);
        LPrimitivityReport lp = l_primitivity(a.sub, a.cls);
        REQUIRE(a.tame.tame);
        REQUIRE(lp.l_primitive);
        BoundedGapReport b = bounded_gap_constants(a.sub, a.cls, lp, a.tame, a.consts);
        FixpointSeed s = find_seed(a.sub, a.cls, a.reach, a.tame);
        Word segment = window(a.sub, s, -5000, 5000);
        for (Letter x : a.cls.growing) {
            Word needle(1, x);
            // every window of length d' contains x
            std::size_t prev = Word::npos;
            std::size_t worst = 0;
            std::size_t first = segment.find(needle);
            REQUIRE(first != Word::npos);
            for (std::size_t pos = first; pos != Word::npos; pos = segment.find(needle, pos + 1)) {
                if (prev != Word::npos)
                    worst = std::max(worst, pos - prev);
                prev = pos;
            }
            worst = std::max({worst, first + 1, segment.size() - prev});
            CHECK(worst <= b.d_prime);
        }
    }
}
