// config.hpp -- knobs for a full analysis run.
#pragma once

#include "core.hpp"

namespace subst {

struct AnalysisConfig {
    int k = 6;        // table/language depth
    int horizon = 24; // language horizon behind the tables
    int n_max = 0;    // interior-pump search depth; 0 derives 2|A| + 4
    long window = 2000;
    long M = 5000; // half-width of scanned x0 segments
    ExpansionBudget budget{};

    int effective_n_max(const Substitution& sub) const {
        return n_max > 0 ? n_max : static_cast<int>(2 * sub.size() + 4);
    }

    void validate() const {
        if (k < 1 || horizon < k + 2 || n_max < 0 || window < 1 || M < 1 ||
            budget.max_length == 0 || budget.max_power < 1)
            throw std::invalid_argument("analysis config out of range (need k >= 1, "
                                        "horizon >= k + 2, positive budgets)");
    }
};

} // namespace subst
