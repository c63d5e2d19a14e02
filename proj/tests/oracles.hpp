// oracles.hpp -- brute-force reference implementations used only by tests.
// Everything here deliberately avoids the library's structural algorithms:
// powers are computed by plain repeated rewriting, occurrences by window
// scans, growth by iterate-until-repeat-or-blowup.
#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <subst/core.hpp>
#include <subst/growth.hpp>

namespace oracles {

using subst::Letter;
using subst::LetterSet;
using subst::Substitution;
using subst::Word;

// sigma^n(a) by n plain rewrites, no memo, no budget machinery.
inline Word naive_power(const Substitution& sub, Letter a, int n) {
    Word w(1, a);
    for (int i = 0; i < n; ++i) {
        Word next;
        for (char c : w)
            next += sub.image(c);
        w = std::move(next);
    }
    return w;
}

inline std::size_t brute_occurrences(const Word& v, const Word& u) {
    if (u.size() > v.size())
        return 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + u.size() <= v.size(); ++i)
        if (v.compare(i, u.size(), u) == 0)
            ++count;
    return count;
}

// First min(count, |sigma^n(a)|) letters of sigma^n(a), evaluated lazily so
// huge expansions never materialize.
inline Word prefix_of_power(const Substitution& sub, Letter a, int n, std::size_t count) {
    if (count == 0)
        return {};
    if (n == 0)
        return Word(1, a);
    Word out;
    for (char c : sub.image(a)) {
        out += prefix_of_power(sub, c, n - 1, count - out.size());
        if (out.size() >= count)
            break;
    }
    return out;
}

inline Word suffix_of_power(const Substitution& sub, Letter a, int n, std::size_t count) {
    if (count == 0)
        return {};
    if (n == 0)
        return Word(1, a);
    Word out;
    const Word& img = sub.image(a);
    for (std::size_t i = img.size(); i-- > 0;) {
        out = suffix_of_power(sub, img[i], n - 1, count - out.size()) + out;
        if (out.size() >= count)
            break;
    }
    return out;
}

// Growth by iteration: a word repeat means bounded, a length beyond
// 10 * |A| * (max image length) means growing.
inline bool grows_by_iteration(const Substitution& sub, Letter a) {
    std::size_t max_img = 0;
    for (const auto& [l, w] : sub.rules())
        max_img = std::max(max_img, w.size());
    const std::size_t blowup = 10 * sub.size() * max_img;

    std::set<Word> seen;
    Word w(1, a);
    seen.insert(w);
    for (;;) {
        w = sub.apply(w);
        if (w.size() > blowup)
            return true;
        if (!seen.insert(w).second)
            return false;
        if (seen.size() > 200000)
            throw std::logic_error("growth oracle failed to decide");
    }
}

// Direct scan for the isolation pattern: some sigma^n(a), n in [1, n_max],
// starts (resp. ends) with a nonempty bounded pad followed (resp. preceded)
// by a literal a. Uses lazy prefixes with doubling so only the pad and one
// extra letter are ever computed.
inline bool isolated_by_scan(const Substitution& sub, const subst::LetterClassification& cls,
                             Letter a, bool left, int n_max) {
    for (int n = 1; n <= n_max; ++n) {
        std::size_t count = 64;
        for (;;) {
            Word part = left ? prefix_of_power(sub, a, n, count)
                             : suffix_of_power(sub, a, n, count);
            // The edge growing letter of the whole word lies inside `part`
            // whenever `part` contains any growing letter at all: only
            // bounded letters can be cut off beyond it.
            std::size_t edge = Word::npos;
            if (left) {
                for (std::size_t i = 0; i < part.size(); ++i)
                    if (cls.is_growing(part[i])) {
                        edge = i;
                        break;
                    }
            } else {
                for (std::size_t i = part.size(); i-- > 0;)
                    if (cls.is_growing(part[i])) {
                        edge = i;
                        break;
                    }
            }
            if (edge != Word::npos) {
                const std::size_t pad = left ? edge : part.size() - 1 - edge;
                if (part[edge] == a && pad > 0)
                    return true;
                break; // edge letter found, pattern absent at this n
            }
            if (part.size() < count)
                throw std::logic_error("growing letter expanded to bounded letters only");
            count *= 4;
        }
    }
    return false;
}

// All distinct factors of w with lengths 1..k.
inline std::set<Word> factor_set(const Word& w, std::size_t k) {
    std::set<Word> out;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t len = 1; len <= k && i + len <= w.size(); ++len)
            out.insert(w.substr(i, len));
    return out;
}

// Seeded generator of random substitutions over the first `letters` letters
// of "abcd", images of length 1..4. May produce maps with no growing letter.
struct RandomSubstitutions {
    std::mt19937 rng;
    explicit RandomSubstitutions(std::uint32_t seed) : rng(seed) {}

    Substitution next() {
        std::uniform_int_distribution<int> size_dist(1, 4);
        const int n = size_dist(rng);
        std::map<Letter, Word> rules;
        for (int i = 0; i < n; ++i) {
            std::uniform_int_distribution<int> len_dist(1, 4);
            std::uniform_int_distribution<int> letter_dist(0, n - 1);
            Word w;
            const int len = len_dist(rng);
            for (int j = 0; j < len; ++j)
                w += static_cast<char>('a' + letter_dist(rng));
            rules.emplace(static_cast<char>('a' + i), std::move(w));
        }
        return Substitution::from_rules(std::move(rules));
    }
};

} // namespace oracles
