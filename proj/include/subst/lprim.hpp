// lprim.hpp -- deciding l-primitivity: some power n makes every growing
// letter occur in sigma^n(b) for every growing b.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "core.hpp"
#include "growth.hpp"
#include "reach.hpp"

namespace subst {

struct LPrimitivityReport {
    bool l_primitive = false;
    std::optional<int> witness_n; // least n with full coverage

    // When not l-primitive: the first recurring tuple of per-letter sets,
    // with a component that never covers A_l anywhere on the tuple cycle.
    struct Refutation {
        int cycle_start = 0;                // n at which the tuple first appeared
        std::map<Letter, LetterSet> tuple;  // letter -> s^n({letter})
        Letter stuck = 0;
    };
    std::optional<Refutation> refutation;
};

/*
 * Iterates the combined tuple (s^n({b}))_{b in A_l} until it repeats. Since
 * s^n({b}) = Lett(sigma^n(b)) cap A_l, full coverage of a visited tuple at
 * some n >= 1 decides l-primitivity with that witness; coverage persists
 * once reached, so a repeat without coverage is a sound refutation. A single
 * combined state avoids stitching per-letter preperiods together.
 */
inline LPrimitivityReport l_primitivity(const Substitution& sub,
                                        const LetterClassification& cls) {
    using Tuple = std::vector<LetterSet>;
    const LetterSet& gl = cls.growing;

    Tuple cur;
    cur.reserve(gl.size());
    for (Letter b : gl)
        cur.push_back(LetterSet(1, b));

    auto covers = [&](const Tuple& t) {
        for (const LetterSet& f : t)
            if (!is_subset(gl, f))
                return false;
        return true;
    };

    std::map<Tuple, int> seen{{cur, 0}};
    std::vector<Tuple> history{cur};
    LPrimitivityReport out;
    for (int n = 1;; ++n) {
        Tuple next;
        next.reserve(cur.size());
        for (const LetterSet& f : cur)
            next.push_back(set_step(sub, cls, f));
        if (covers(next)) {
            out.l_primitive = true;
            out.witness_n = n;
            return out;
        }
        auto [it, fresh] = seen.emplace(next, n);
        if (!fresh) {
            LPrimitivityReport::Refutation ref;
            ref.cycle_start = it->second;
            for (std::size_t i = 0; i < gl.size(); ++i)
                ref.tuple.emplace(gl[i], next[i]);
            // Some component misses A_l on every tuple of the cycle.
            const int cycle_len = n - it->second;
            for (std::size_t i = 0; i < gl.size(); ++i) {
                bool ever = false;
                for (int d = 0; d < cycle_len; ++d)
                    if (is_subset(gl, history[static_cast<std::size_t>(it->second + d)][i])) {
                        ever = true;
                        break;
                    }
                if (!ever) {
                    ref.stuck = gl[i];
                    break;
                }
            }
            if (ref.stuck == 0)
                throw std::logic_error("tuple cycle with no stuck component but no coverage");
            out.refutation = std::move(ref);
            return out;
        }
        history.push_back(next);
        cur = std::move(next);
    }
}

} // namespace subst
