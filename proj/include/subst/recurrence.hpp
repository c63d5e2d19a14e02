// recurrence.hpp -- desk-scale oracles on materialized windows of x0:
// observed uniform recurrence of the table words and an empirical
// repetitivity profile R(k).
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "core.hpp"
#include "fixpoint.hpp"
#include "lang.hpp"

namespace subst {

namespace detail {

/*
 * Least W such that every length-W window of `segment` contains `w`, or
 * segment.size() + 1 when w does not occur at all.
 */
inline std::size_t least_covering_window(const Word& segment, const Word& w) {
    std::vector<std::size_t> starts;
    for (std::size_t pos = segment.find(w); pos != Word::npos; pos = segment.find(w, pos + 1))
        starts.push_back(pos);
    if (starts.empty())
        return segment.size() + 1;
    std::size_t need = starts.front() + w.size();             // window at the left edge
    need = std::max(need, segment.size() - starts.back());    // window at the right edge
    for (std::size_t i = 1; i < starts.size(); ++i)
        need = std::max(need, starts[i] - starts[i - 1] - 1 + w.size());
    return need;
}

} // namespace detail

struct RecurrenceReport {
    int k = 1;
    long window = 0;
    bool uniformly_recurrent_observed = false;
    Word worst_word;
    std::size_t worst_gap = 0;
};

/*
 * Scans x0[-M, M]: every word of the k-table must occur in every
 * length-`window_len` subsegment. Words missing from the segment entirely
 * count as the worst possible gap.
 */
inline RecurrenceReport uniform_recurrence_check(const Substitution& sub, const FixpointSeed& seed,
                                                 int k, long window_len, long M,
                                                 const ExpansionBudget& budget = {}) {
    if (window_len > 2 * M)
        throw std::invalid_argument("recurrence window must fit in the scanned segment");
    Word segment = window(sub, seed, -M, M, budget);
    SubshiftTable table = subshift_table(sub, k, std::max(4 * k, 24));

    RecurrenceReport out;
    out.k = k;
    out.window = window_len;
    for (const Word& w : table.words) {
        std::size_t need = detail::least_covering_window(segment, w);
        if (need > out.worst_gap) {
            out.worst_gap = need;
            out.worst_word = w;
        }
    }
    out.uniformly_recurrent_observed =
        !table.words.empty() && out.worst_gap <= static_cast<std::size_t>(window_len);
    return out;
}

struct RepetitivityEstimate {
    // k -> R(k): least W such that every table word of length k occurs in
    // every length-W window of the scanned segment (segment length + 1 when
    // some word never occurs).
    std::map<int, std::size_t> table;
    // max over k of R(k)/k, as an exact fraction: an empirical lower bound
    // for a linear-repetitivity constant.
    std::size_t ratio_num = 0;
    int ratio_den = 1;
};

inline RepetitivityEstimate repetitivity_estimate(const Substitution& sub,
                                                  const FixpointSeed& seed, int k_max, long M,
                                                  const ExpansionBudget& budget = {}) {
    Word segment = window(sub, seed, -M, M, budget);
    RepetitivityEstimate out;
    for (int k = 1; k <= k_max; ++k) {
        SubshiftTable table = subshift_table(sub, k, std::max(4 * k, 24));
        std::size_t r = 0;
        for (const Word& w : table.words)
            r = std::max(r, detail::least_covering_window(segment, w));
        out.table.emplace(k, r);
        if (r * static_cast<std::size_t>(out.ratio_den) >
            out.ratio_num * static_cast<std::size_t>(k)) {
            out.ratio_num = r;
            out.ratio_den = k;
        }
    }
    return out;
}

} // namespace subst
