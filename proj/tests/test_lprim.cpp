#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <subst/lprim.hpp>

#include "oracles.hpp"

using namespace subst;

namespace {

// Brute-force primitivity over the full alphabet: some n <= cap makes every
// letter occur in sigma^n(b) for all b. Letter sets are iterated directly,
// so no expansion budget is involved.
bool primitive_by_iteration(const Substitution& sub, int cap) {
    std::map<Letter, LetterSet> cur;
    for (Letter b : sub.alphabet())
        cur[b] = letters_of(sub.image(b));
    for (int n = 1; n <= cap; ++n) {
        bool all = true;
        for (Letter b : sub.alphabet())
            if (cur[b] != sub.alphabet()) {
                all = false;
                break;
            }
        if (all)
            return true;
        std::map<Letter, LetterSet> next;
        for (Letter b : sub.alphabet()) {
            LetterSet acc;
            for (Letter c : cur[b])
                acc = set_union(acc, letters_of(sub.image(c)));
            next[b] = std::move(acc);
        }
        cur = std::move(next);
    }
    return false;
}

} // namespace

TEST_CASE("l-primitivity: worked examples") {
    {
        Substitution tm = parse_substitution("0 -> 01\n1 -> 10");
        LPrimitivityReport r = l_primitivity(tm, classify_letters(tm));
        CHECK(r.l_primitive);
        CHECK(r.witness_n == 1);
        CHECK(!r.refutation.has_value());
    }
    {
        Substitution sub = parse_substitution("a -> bb\nb -> aa");
        LPrimitivityReport r = l_primitivity(sub, classify_letters(sub));
        CHECK(!r.l_primitive);
        REQUIRE(r.refutation.has_value());
        // components alternate {a} and {b}, neither ever covers
        CHECK(r.refutation->tuple.at('a').size() == 1);
        CHECK(r.refutation->tuple.at('b').size() == 1);
    }
    {
        Substitution sub = parse_substitution("0 -> 01\n1 -> 1");
        LPrimitivityReport r = l_primitivity(sub, classify_letters(sub));
        CHECK(r.l_primitive);
        CHECK(r.witness_n == 1);
    }
}

TEST_CASE("witnesses agree with brute-force coverage and are least") {
    const char* texts[] = {"0 -> 01\n1 -> 10", "0 -> 01\n1 -> 1", "a -> bca\nb -> b\nc -> ca",
                           "0 -> 0010\n1 -> 1", "x -> xy\ny -> x"};
    for (const char* t : texts) {
        Substitution sub = parse_substitution(t);
        LetterClassification cls = classify_letters(sub);
        LPrimitivityReport r = l_primitivity(sub, cls);
        REQUIRE(r.l_primitive);
        Expander ex(sub);
        auto covered_at = [&](int n) {
            for (Letter b : cls.growing)
                if (!is_subset(cls.growing, letters_of(ex.power(b, n))))
                    return false;
            return true;
        };
        CHECK(covered_at(*r.witness_n));
        for (int n = 1; n < *r.witness_n; ++n)
            CHECK(!covered_at(n));
    }
}

TEST_CASE("coverage persists one step past the witness") {
    const char* texts[] = {"0 -> 01\n1 -> 10", "a -> bca\nb -> b\nc -> ca", "0 -> 01\n1 -> 1"};
    for (const char* t : texts) {
        Substitution sub = parse_substitution(t);
        LetterClassification cls = classify_letters(sub);
        LPrimitivityReport r = l_primitivity(sub, cls);
        REQUIRE(r.l_primitive);
        Expander ex(sub);
        for (Letter b : cls.growing)
            CHECK(is_subset(cls.growing, letters_of(ex.power(b, *r.witness_n + 1))));
    }
}

TEST_CASE("refutations describe a genuinely stuck component") {
    Substitution sub = parse_substitution("c -> dd\nd -> dd");
    LetterClassification cls = classify_letters(sub);
    LPrimitivityReport r = l_primitivity(sub, cls);
    CHECK(!r.l_primitive);
    REQUIRE(r.refutation.has_value());
    CHECK(r.refutation->stuck == 'c');
    // letter c never reappears
    Expander ex(sub);
    for (int n = 1; n <= 6; ++n)
        CHECK(!set_contains(letters_of(ex.power('c', n)), 'c'));
}

TEST_CASE("with no bounded letters, l-primitivity is plain primitivity") {
    oracles::RandomSubstitutions gen(0xBADA55);
    int checked = 0;
    while (checked < 200) {
        Substitution sub = gen.next();
        LetterClassification cls;
        try {
            cls = classify_letters(sub);
        } catch (const NotASubstitution&) {
            continue;
        }
        if (!cls.bounded.empty())
            continue;
        ++checked;
        LPrimitivityReport r = l_primitivity(sub, cls);
        CHECK(r.l_primitive == primitive_by_iteration(sub, 2 * static_cast<int>(sub.size()) + 8));
    }
}
