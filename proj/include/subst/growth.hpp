// growth.hpp -- partition of the alphabet into growing letters A_l and
// bounded letters A_s, plus the stabilization constants of the bounded part.
#pragma once

#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "core.hpp"

namespace subst {

struct LetterClassification {
    LetterSet growing; // A_l: |sigma^n(a)| -> infinity
    LetterSet bounded; // A_s: everything else
    // Per growing letter a, a certificate (b, n): b is reachable from a,
    // b occurs in sigma^n(b), and |sigma^n(b)| >= 2.
    std::map<Letter, std::pair<Letter, int>> witness;

    bool is_growing(Letter a) const { return set_contains(growing, a); }
    bool is_bounded(Letter a) const { return set_contains(bounded, a); }
};

/*
 * Structural growth decision. A letter grows iff it reaches, in zero or more
 * steps of the one-step letter graph, a letter b whose cycle expands:
 * b in Lett(sigma^n(b)) with |sigma^n(b)| >= 2 for some n in [1, |A|].
 *
 * Only simple cycle lengths (<= |A|) need checking: if sigma^n(b) returns to
 * b with |sigma^n(b)| = 1, then sigma^n(b) = b exactly, the forward orbit of
 * b consists of single letters forever, and no power of b ever expands.
 *
 * Throws NotASubstitution when no letter grows (A_l would be empty).
 */
inline LetterClassification classify_letters(const Substitution& sub) {
    const std::string& alphabet = sub.alphabet();
    const int n = static_cast<int>(alphabet.size());

    Expander lengths(sub);

    // Lett(sigma^m(x)) for m = 1..n, by iterating the one-step letter sets.
    std::map<Letter, LetterSet> one_step;
    for (Letter a : alphabet)
        one_step[a] = letters_of(sub.image(a));

    std::map<Letter, int> expanding; // letter -> least witnessing power, if any
    std::map<Letter, LetterSet> cur = one_step;
    for (int m = 1; m <= n; ++m) {
        for (Letter b : alphabet) {
            if (!expanding.count(b) && set_contains(cur[b], b) && lengths.length(b, m) >= 2)
                expanding.emplace(b, m);
        }
        if (m < n) {
            std::map<Letter, LetterSet> next;
            for (Letter b : alphabet) {
                LetterSet acc;
                for (Letter c : one_step[b])
                    acc = set_union(acc, cur[c]);
                next[b] = std::move(acc);
            }
            cur = std::move(next);
        }
    }

    auto closure = letter_reachability(sub);
    LetterClassification out;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        Letter a = alphabet[i];
        Letter via = 0;
        int power = 0;
        if (auto it = expanding.find(a); it != expanding.end()) {
            via = a;
            power = it->second;
        } else {
            for (std::size_t j = 0; j < alphabet.size(); ++j) {
                if (closure[i][j] && expanding.count(alphabet[j])) {
                    via = alphabet[j];
                    power = expanding.at(alphabet[j]);
                    break;
                }
            }
        }
        if (via != 0) {
            out.growing.push_back(a);
            out.witness.emplace(a, std::make_pair(via, power));
        } else {
            out.bounded.push_back(a);
        }
    }
    if (out.growing.empty())
        throw NotASubstitution("no letter has unboundedly growing images (A_l is empty)");
    return out;
}

/*
 * Constants of the bounded letters. For a in A_s the word sequence
 * sigma^n(a) is eventually periodic; n_s is the largest least preperiod over
 * A_s (at least 1), p_s the lcm of the least periods, w(a) = sigma^{n_s}(a)
 * the stable words and k_s their maximal length. With A_s empty the
 * degenerate convention is n_s = p_s = 1, k_s = 0.
 */
struct StableConstants {
    int n_s = 1;
    int p_s = 1;
    std::size_t k_s = 0;
    std::map<Letter, Word> stable_word; // a in A_s -> w(a)
};

inline StableConstants stable_constants(const Substitution& sub, const LetterClassification& cls) {
    StableConstants out;
    if (cls.bounded.empty())
        return out;

    struct Orbit {
        std::vector<Word> words;
        int preperiod = 0;
        int period = 1;
    };
    std::map<Letter, Orbit> orbits;
    for (Letter a : cls.bounded) {
        Orbit orbit;
        orbit.words.push_back(Word(1, a));
        std::map<Word, int> seen{{orbit.words.front(), 0}};
        for (;;) {
            Word next = sub.apply(orbit.words.back());
            auto [it, fresh] = seen.emplace(next, static_cast<int>(orbit.words.size()));
            if (!fresh) {
                orbit.preperiod = it->second;
                orbit.period = static_cast<int>(orbit.words.size()) - it->second;
                break;
            }
            orbit.words.push_back(std::move(next));
            if (orbit.words.size() > 1'000'000)
                throw std::logic_error("bounded letter failed to reach a cycle");
        }
        out.n_s = std::max(out.n_s, std::max(orbit.preperiod, 1));
        out.p_s = std::lcm(out.p_s, orbit.period);
        orbits.emplace(a, std::move(orbit));
    }
    for (Letter a : cls.bounded) {
        const Orbit& orbit = orbits.at(a);
        int idx = out.n_s < orbit.preperiod
                      ? out.n_s // unreachable: n_s >= every preperiod by construction
                      : orbit.preperiod + (out.n_s - orbit.preperiod) % orbit.period;
        const Word& w = orbit.words[static_cast<std::size_t>(idx)];
        out.k_s = std::max(out.k_s, w.size());
        out.stable_word.emplace(a, w);
    }
    return out;
}

} // namespace subst
