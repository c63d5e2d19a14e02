// dl_check.hpp -- bounded checker for the Damanik-Lenz conditions: a growing
// letter e whose powers generate the whole alphabet, equality of the
// subshift language with L(sigma) up to a tested factor length, and the
// observed bound on e-free return words e w e inside sigma^n(e).
#pragma once

#include <optional>

#include "core.hpp"
#include "growth.hpp"
#include "lang.hpp"
#include "reach.hpp"

namespace subst {

struct DLReport {
    bool cond1 = false; // A_l nonempty
    std::optional<Letter> cond1_witness;
    bool cond2 = false; // some e in A_l with union of Lett(sigma^n(e)) = A
    std::optional<Letter> cond2_witness;
    // L(X_sigma) cap A^{<=k} == L(sigma) cap A^{<=k}, decided up to k via
    // the pruned tables; a counterexample word is certainly outside the
    // subshift language but inside L(sigma).
    bool cond3_bounded = false;
    int cond3_k = 1;
    std::optional<Word> cond3_counterexample;
    // Largest |w| with e w e < sigma^n(e), e not in w, over n <= ewe_n_max.
    std::size_t ewe_gap_max = 0;
    std::optional<Letter> ewe_letter;
    int ewe_n_max = 0;
};

inline DLReport damanik_lenz_check(const Substitution& sub, const LetterClassification& cls,
                                   int k, int n_max, const ExpansionBudget& budget = {}) {
    if (k < 1 || n_max < 1)
        throw std::invalid_argument("damanik_lenz_check: need k, n_max >= 1");

    DLReport out;
    out.cond3_k = k;
    out.cond1 = !cls.growing.empty();
    if (out.cond1)
        out.cond1_witness = cls.growing.front();

    // cond2 via the arrow closure: union over n >= 1 of Lett(sigma^n(e))
    // equals the set of letters reachable from e.
    ReachReport reach = reachability(sub, cls);
    for (Letter e : cls.growing) {
        if (reach.arrow.at(e) == sub.alphabet()) {
            out.cond2 = true;
            out.cond2_witness = e;
            break;
        }
    }

    out.cond3_bounded = true;
    LanguageCache cache(sub);
    BoundedLanguage lang = bounded_language(sub, k);
    for (int j = 1; j <= k && out.cond3_bounded; ++j) {
        SubshiftTable table = subshift_table(sub, j, cache.at(std::max(4 * j, 24)));
        for (const Word& w : lang.words) {
            if (static_cast<int>(w.size()) != j)
                continue;
            if (!table.contains(w)) {
                out.cond3_bounded = false;
                out.cond3_counterexample = w;
                break;
            }
        }
    }

    if (Letter e = out.cond2 ? *out.cond2_witness : (out.cond1 ? *out.cond1_witness : 0); e != 0) {
        out.ewe_letter = e;
        Expander ex(sub);
        for (int n = 1; n <= n_max; ++n) {
            Word w;
            try {
                w = ex.power(e, n, budget);
            } catch (const BudgetExceeded&) {
                break;
            }
            out.ewe_n_max = n;
            std::size_t prev = Word::npos;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i] != e)
                    continue;
                if (prev != Word::npos)
                    out.ewe_gap_max = std::max(out.ewe_gap_max, i - prev - 1);
                prev = i;
            }
        }
    }
    return out;
}

} // namespace subst
