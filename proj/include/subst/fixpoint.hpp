// fixpoint.hpp -- sigma-periodic two-sided points built from a seed
// b0 . w0 c0, finite windows of the limit point x0, the periodic word
// arising from an isolated letter, interior-occurrence witnesses, and the
// bounded-gap constant d' for tame l-primitive substitutions.
#pragma once

#include <numeric>
#include <optional>
#include <tuple>

#include "core.hpp"
#include "growth.hpp"
#include "lprim.hpp"
#include "reach.hpp"
#include "tame.hpp"

namespace subst {

/*
 * A seed b0 w0 c0 with sigma^p(b0 w0 c0) = W- . b0 w0 c0 . W+ for nonempty
 * W-, W+: the last growing letter of sigma^p(b0) is b0 again, the first of
 * sigma^p(c0) is c0, and the junction word between them reproduces w0.
 * Iterating sigma^p re-centers the seed, so the two-sided limit x0 exists
 * and satisfies sigma^p(x0) = x0.
 */
struct FixpointSeed {
    Letter left_letter = 0;  // b0
    Word middle;             // w0, over A_s
    Letter right_letter = 0; // c0
    int p = 1;
};

/*
 * Seed search following the periodic-point construction: anchor at the
 * least minimal growing letter a, take its subset-map trajectory (N, F,
 * period), find the leftmost adjacent pair of growing letters b w c in
 * sigma^n(a) for the smallest n in {N, N+period, ...} (so the growing
 * letters seen are exactly F), then drive the junction state
 * (b_m, r_s(m,b) sigma^m(w) l_s(m,c), c_m) to its first repeat.
 */
inline FixpointSeed find_seed(const Substitution& sub, const LetterClassification& cls,
                              const ReachReport& reach, const TamenessReport& tame_report,
                              const ExpansionBudget& budget = {}) {
    if (!tame_report.tame)
        throw NotTame("seed construction requires a tame substitution");

    const Letter a = reach.min_l.front();
    SetTrajectory tr = set_trajectory(sub, cls, LetterSet(1, a));
    Expander ex(sub);

    Letter b = 0, c = 0;
    Word w;
    for (int n = tr.preperiod;; n += tr.period) {
        const Word& word = ex.power(a, n, budget); // throws BudgetExceeded eventually
        long prev = -1;
        bool found = false;
        for (std::size_t i = 0; i < word.size() && !found; ++i) {
            if (!cls.is_growing(word[i]))
                continue;
            if (prev >= 0) {
                b = word[static_cast<std::size_t>(prev)];
                c = word[i];
                w = word.substr(static_cast<std::size_t>(prev) + 1, i - static_cast<std::size_t>(prev) - 1);
                found = true;
            }
            prev = static_cast<long>(i);
        }
        if (found)
            break;
    }

    StableConstants consts = stable_constants(sub, cls);
    const long cap = 2 * static_cast<long>(sub.size()) + consts.n_s +
                     static_cast<long>(consts.p_s) * static_cast<long>(sub.size()) *
                         static_cast<long>(sub.size()) +
                     16;

    using State = std::tuple<Letter, Word, Letter>;
    State cur{b, w, c};
    std::map<State, int> seen{{cur, 0}};
    std::vector<State> states{cur};
    for (int m = 1; m <= cap; ++m) {
        EdgeSplit right_edge = edge_split(sub, cls, std::get<0>(cur), Side::right);
        EdgeSplit left_edge = edge_split(sub, cls, std::get<2>(cur), Side::left);
        State next{right_edge.next,
                   right_edge.emission + sub.apply(std::get<1>(cur)) + left_edge.emission,
                   left_edge.next};
        auto it = seen.find(next);
        if (it != seen.end()) {
            const State& s0 = states[static_cast<std::size_t>(it->second)];
            FixpointSeed seed;
            seed.left_letter = std::get<0>(s0);
            seed.middle = std::get<1>(s0);
            seed.right_letter = std::get<2>(s0);
            seed.p = m - it->second;

            // Re-centering checks; failures mean the construction is broken.
            const Word& pb = ex.power(seed.left_letter, seed.p, budget);
            std::size_t last = pb.find_last_of(cls.growing);
            if (last == Word::npos || pb[last] != seed.left_letter || last == 0)
                throw std::logic_error("seed left edge does not re-center");
            const Word& pc = ex.power(seed.right_letter, seed.p, budget);
            std::size_t first = pc.find_first_of(cls.growing);
            if (first == Word::npos || pc[first] != seed.right_letter || first + 1 == pc.size())
                throw std::logic_error("seed right edge does not re-center");
            Word junction = pb.substr(last + 1) + ex.word_power(seed.middle, seed.p, budget) +
                            pc.substr(0, first);
            if (junction != seed.middle)
                throw std::logic_error("seed junction word does not reproduce itself");
            if (!is_subset(letters_of(seed.middle), cls.bounded))
                throw std::logic_error("seed junction word contains growing letters");
            return seed;
        }
        seen.emplace(next, m);
        states.push_back(next);
        cur = std::move(next);
    }
    throw std::logic_error("junction state did not become periodic within its bound");
}

/*
 * x0[s..t] for the limit point of the seed. Index 0 is the first letter
 * right of the cut placed immediately after b0, so w0 c0 ... occupies the
 * nonnegative indices and b0 sits at index -1.
 */
inline Word window(const Substitution& sub, const FixpointSeed& seed, long s, long t,
                   const ExpansionBudget& budget = {}) {
    if (s > t)
        throw std::invalid_argument("window: need s <= t");
    Expander ex(sub);

    Word right; // x0[0 .. |right|-1]
    if (t >= 0) {
        Word cur(1, seed.right_letter);
        const std::size_t need = static_cast<std::size_t>(t) + 1;
        while (seed.middle.size() + cur.size() < need) {
            Word next = ex.word_power(cur, seed.p, budget);
            if (!next.starts_with(cur) || next.size() == cur.size())
                throw std::logic_error("seed right side is not a one-sided fixed point");
            cur = std::move(next);
        }
        right = seed.middle + cur;
    }

    Word left; // x0[-|left| .. -1]
    if (s < 0) {
        Word cur(1, seed.left_letter);
        const std::size_t need = static_cast<std::size_t>(-s);
        while (cur.size() < need) {
            Word next = ex.word_power(cur, seed.p, budget);
            if (!next.ends_with(cur) || next.size() == cur.size())
                throw std::logic_error("seed left side is not a one-sided fixed point");
            cur = std::move(next);
        }
        left = cur;
    }

    Word out;
    out.reserve(static_cast<std::size_t>(t - s + 1));
    for (long i = s; i <= t; ++i) {
        if (i < 0)
            out += left[left.size() - static_cast<std::size_t>(-i)];
        else
            out += right[static_cast<std::size_t>(i)];
    }
    return out;
}

/*
 * From an isolated letter a: with n0 = lcm(n_s, p_s, cycle length of the
 * isolating trajectory), the pad of sigma^{n0}(a) maps to a word
 * w = sigma^{n0}(pad) fixed by sigma^{n0}, and w w w ... of arbitrary
 * length lies in the language. Certifies a periodic point over A_s.
 */
struct PeriodicWitness {
    Word word;      // nonempty, over A_s
    Letter origin = 0;
    int n0 = 1;
};

inline PeriodicWitness periodic_word_from_isolation(const Substitution& sub,
                                                    const LetterClassification& cls,
                                                    const StableConstants& consts, Letter a) {
    IsolationStatus st = isolation(sub, cls, a);
    if (!st.left_isolated && !st.right_isolated)
        throw NotIsolated(std::string("letter '") + a + "' is not isolated");
    const Side side = st.left_isolated ? Side::left : Side::right;
    EdgeTrajectory tr = edge_trajectory(sub, cls, a, side);

    const int n0 = std::lcm(std::lcm(consts.n_s, consts.p_s), tr.cycle_length);
    Word pad = pad_of_power(sub, cls, a, n0, side);
    if (pad.empty() || !is_subset(letters_of(pad), cls.bounded))
        throw std::logic_error("isolation pad must be a nonempty bounded word");

    Expander ex(sub);
    ExpansionBudget b{1'000'000, std::max(64, n0)};
    PeriodicWitness out;
    out.word = ex.word_power(pad, n0, b);
    out.origin = a;
    out.n0 = n0;
    return out;
}

/*
 * A sufficient witness that some point of the subshift contains c: an
 * occurrence of c strictly inside sigma^n(c). Pumping with sigma^n grows
 * both contexts without bound, so a two-sided limit through c exists.
 */
struct InteriorWitness {
    Letter letter = 0;
    int n = 1;
    Word left_ctx;  // nonempty
    Word right_ctx; // nonempty
};

inline std::optional<InteriorWitness> interior_pump(const Substitution& sub,
                                                    const LetterClassification& cls, Letter c,
                                                    int n_max, const ExpansionBudget& budget = {}) {
    if (!cls.is_growing(c))
        throw std::invalid_argument("interior pump is defined for growing letters only");
    Expander ex(sub);
    for (int n = 1; n <= n_max; ++n) {
        const Word& w = ex.power(c, n, budget);
        for (std::size_t i = 1; i + 1 < w.size(); ++i) {
            if (w[i] == c) {
                InteriorWitness out;
                out.letter = c;
                out.n = n;
                out.left_ctx = w.substr(0, i);
                out.right_ctx = w.substr(i + 1);
                return out;
            }
        }
    }
    return std::nullopt;
}

/*
 * Quantities behind the bounded-gap property of x0 on tame l-primitive
 * input: p' is the least multiple of the seed period reaching the
 * l-primitivity witness, l the largest |sigma^{p'}(a)| over the alphabet,
 * d the stabilized gap bound k_s * gap(1) + 2 e_s, and d' = d + 2l. Every
 * growing letter occurs in every d'-window of x0.
 */
struct BoundedGapReport {
    int p_prime = 1;
    std::size_t l = 0;
    std::size_t d = 0;
    std::size_t d_prime = 0;
};

inline BoundedGapReport bounded_gap_constants(const Substitution& sub,
                                              const LetterClassification& cls,
                                              const LPrimitivityReport& lprim_report,
                                              const TamenessReport& tame_report,
                                              const StableConstants& consts,
                                              const ExpansionBudget& budget = {}) {
    if (!tame_report.tame)
        throw PreconditionFailed("bounded-gap constants require a tame substitution");
    if (!lprim_report.l_primitive)
        throw PreconditionFailed("bounded-gap constants require an l-primitive substitution");

    ReachReport reach = reachability(sub, cls);
    FixpointSeed seed = find_seed(sub, cls, reach, tame_report, budget);
    const int wit = *lprim_report.witness_n;

    BoundedGapReport out;
    out.p_prime = seed.p * ((wit + seed.p - 1) / seed.p);
    Expander ex(sub);
    for (Letter a : sub.alphabet())
        out.l = std::max(out.l, static_cast<std::size_t>(ex.length(a, out.p_prime)));
    GapReport g = gap(sub, cls, consts, 1, budget);
    out.d = *g.bound;
    out.d_prime = out.d + 2 * out.l;
    return out;
}

} // namespace subst
