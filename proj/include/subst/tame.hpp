// tame.hpp -- left/right isolation of growing letters, the tameness verdict,
// the padding bound e_s, the long-form decomposition of sigma^n(a) and the
// gap statistics it induces.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "core.hpp"
#include "growth.hpp"

namespace subst {

enum class Side { left, right };

/*
 * Splitting sigma(b) at its edge growing letter. For the left side the
 * emission is the bounded-letter prefix before the first growing letter;
 * for the right side, the bounded suffix after the last one. The edge
 * letter exists for every growing b since Lett(sigma(b)) meets A_l.
 */
struct EdgeSplit {
    Word emission; // over A_s
    Letter next;   // in A_l
};

inline EdgeSplit edge_split(const Substitution& sub, const LetterClassification& cls, Letter b,
                            Side side) {
    const Word& img = sub.image(b);
    if (side == Side::left) {
        for (std::size_t i = 0; i < img.size(); ++i)
            if (cls.is_growing(img[i]))
                return {img.substr(0, i), img[i]};
    } else {
        for (std::size_t i = img.size(); i-- > 0;)
            if (cls.is_growing(img[i]))
                return {img.substr(i + 1), img[i]};
    }
    throw std::logic_error("image of a growing letter contains no growing letter");
}

/*
 * Deterministic trajectory of the edge-letter map with its per-step
 * emissions: letter_{i+1} is the first (resp. last) growing letter of
 * sigma(letter_i) and emission_i the bounded prefix (resp. suffix) around
 * it. Eventually periodic; resolved by first letter repeat.
 */
struct EdgeStep {
    Letter letter;
    Word emission;
};

struct EdgeTrajectory {
    Side side = Side::left;
    Letter start = 0;
    std::vector<EdgeStep> path; // preperiod + cycle_length entries
    int preperiod = 0;
    int cycle_length = 1;

    const EdgeStep& step(int i) const {
        if (i < preperiod)
            return path[static_cast<std::size_t>(i)];
        return path[static_cast<std::size_t>(preperiod + (i - preperiod) % cycle_length)];
    }
};

inline EdgeTrajectory edge_trajectory(const Substitution& sub, const LetterClassification& cls,
                                      Letter a, Side side) {
    if (!cls.is_growing(a))
        throw std::invalid_argument("edge trajectories are defined for growing letters only");
    EdgeTrajectory out;
    out.side = side;
    out.start = a;
    std::map<Letter, int> seen{{a, 0}};
    Letter cur = a;
    for (int idx = 0;; ++idx) {
        EdgeSplit split = edge_split(sub, cls, cur, side);
        out.path.push_back({cur, split.emission});
        auto it = seen.find(split.next);
        if (it != seen.end()) {
            out.preperiod = it->second;
            out.cycle_length = idx + 1 - it->second;
            break;
        }
        seen.emplace(split.next, idx + 1);
        cur = split.next;
    }
    return out;
}

/*
 * The accumulated bounded pad of sigma^n(a) on one side: the prefix before
 * the first growing letter (left) or the suffix after the last (right),
 * computed without materializing sigma^n(a). Left recursion:
 * pad_{n+1} = sigma(pad_n) . emission(letter_n).
 */
inline Word pad_of_power(const Substitution& sub, const LetterClassification& cls, Letter a, int n,
                         Side side) {
    Word pad;
    Letter cur = a;
    for (int i = 0; i < n; ++i) {
        EdgeSplit split = edge_split(sub, cls, cur, side);
        if (side == Side::left)
            pad = sub.apply(pad) + split.emission;
        else
            pad = split.emission + sub.apply(pad);
        cur = split.next;
    }
    return pad;
}

/*
 * a is left isolated iff some sigma^n(a) starts with a nonempty bounded pad
 * followed by a literal a, i.e. the first growing letter of sigma^n(a) is a
 * itself with a nonempty prefix. That happens exactly when a lies on the
 * cycle of its own left trajectory (preperiod 0) and some emission on that
 * cycle is nonempty; one full cycle turn then realizes the pattern. Right
 * isolation is the mirror image.
 */
struct IsolationStatus {
    Letter letter = 0;
    bool left_isolated = false;
    bool right_isolated = false;
    // Witness for the left side when left isolated, otherwise for the right.
    std::optional<int> witness_n;
    std::optional<Word> witness_pad;
};

inline IsolationStatus isolation(const Substitution& sub, const LetterClassification& cls,
                                 Letter a) {
    IsolationStatus st;
    st.letter = a;
    for (Side side : {Side::left, Side::right}) {
        EdgeTrajectory tr = edge_trajectory(sub, cls, a, side);
        if (tr.preperiod != 0)
            continue;
        bool emits = false;
        for (int i = 0; i < tr.cycle_length; ++i)
            if (!tr.path[static_cast<std::size_t>(i)].emission.empty()) {
                emits = true;
                break;
            }
        if (!emits)
            continue;
        if (side == Side::left)
            st.left_isolated = true;
        else
            st.right_isolated = true;
        if (!st.witness_n) {
            st.witness_n = tr.cycle_length;
            st.witness_pad = pad_of_power(sub, cls, a, tr.cycle_length, side);
        }
    }
    return st;
}

/*
 * Tameness: no growing letter is left or right isolated. Only then are the
 * pads of sigma^n(a) uniformly bounded, and e_s = max over all n and all
 * growing a of the pad lengths. The pads are exhausted by iterating the
 * state (pad, edge letter) to its first repeat: past the trajectory
 * preperiod every cycle emission is empty (otherwise the cycle letters were
 * isolated), so the pad undergoes plain bounded-word iteration and the
 * state space is finite.
 */
struct TamenessReport {
    std::map<Letter, IsolationStatus> statuses; // over A_l
    bool tame = false;
    std::optional<std::size_t> e_s_minus;
    std::optional<std::size_t> e_s_plus;
    std::optional<std::size_t> e_s;
};

namespace detail {

inline std::size_t max_pad_length(const Substitution& sub, const LetterClassification& cls,
                                  const StableConstants& consts, Letter a, Side side) {
    EdgeTrajectory tr = edge_trajectory(sub, cls, a, side);
    // State recurs within preperiod + n_s + p_s * cycle_length steps; see
    // the note above. Anything past that bound means the input was not
    // actually tame and the caller's verdict is broken.
    const long cap = tr.preperiod + consts.n_s +
                     static_cast<long>(consts.p_s) * tr.cycle_length + 8;
    std::size_t best = 0;
    Word pad;
    Letter cur = a;
    std::set<std::pair<Word, Letter>> seen{{pad, cur}};
    for (long i = 0; i < cap; ++i) {
        EdgeSplit split = edge_split(sub, cls, cur, side);
        if (side == Side::left)
            pad = sub.apply(pad) + split.emission;
        else
            pad = split.emission + sub.apply(pad);
        cur = split.next;
        best = std::max(best, pad.size());
        if (!seen.emplace(pad, cur).second)
            return best;
    }
    throw PadDivergence("pad iteration did not close; isolation verdict is inconsistent");
}

} // namespace detail

inline TamenessReport tameness(const Substitution& sub, const LetterClassification& cls,
                               const StableConstants& consts) {
    TamenessReport out;
    out.tame = true;
    for (Letter a : cls.growing) {
        IsolationStatus st = isolation(sub, cls, a);
        if (st.left_isolated || st.right_isolated)
            out.tame = false;
        out.statuses.emplace(a, std::move(st));
    }
    if (!out.tame)
        return out;

    std::size_t e_minus = 0, e_plus = 0;
    for (Letter a : cls.growing) {
        e_minus = std::max(e_minus, detail::max_pad_length(sub, cls, consts, a, Side::left));
        e_plus = std::max(e_plus, detail::max_pad_length(sub, cls, consts, a, Side::right));
    }
    out.e_s_minus = e_minus;
    out.e_s_plus = e_plus;
    out.e_s = std::max(e_minus, e_plus);
    return out;
}

/*
 * Exact segmentation of sigma^n(a) into the bounded leading pad l_s(n,a),
 * the growing block letters with the bounded gap words between them, and
 * the bounded trailing pad r_s(n,a). j counts the interior gaps, so there
 * are j+1 block letters.
 */
struct LongFormDecomposition {
    Word leading_pad;
    std::vector<Letter> block_letters; // >= 1 entries, all growing
    std::vector<Word> gaps;            // block_letters.size() - 1 entries, over A_s
    Word trailing_pad;
    int j = 0;

    Word reassemble() const {
        Word out = leading_pad;
        for (std::size_t i = 0; i < block_letters.size(); ++i) {
            if (i > 0)
                out += gaps[i - 1];
            out += block_letters[i];
        }
        out += trailing_pad;
        return out;
    }
};

inline LongFormDecomposition long_form(const Substitution& sub, const LetterClassification& cls,
                                       Letter a, int n, const ExpansionBudget& budget = {}) {
    if (!cls.is_growing(a))
        throw std::invalid_argument("long form is defined for growing letters only");
    Expander ex(sub);
    const Word& w = ex.power(a, n, budget);

    LongFormDecomposition out;
    std::size_t gap_start = 0;
    bool seen_block = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!cls.is_growing(w[i]))
            continue;
        Word run = w.substr(gap_start, i - gap_start);
        if (!seen_block) {
            out.leading_pad = std::move(run);
            seen_block = true;
        } else {
            out.gaps.push_back(std::move(run));
        }
        out.block_letters.push_back(w[i]);
        gap_start = i + 1;
    }
    if (!seen_block)
        throw std::logic_error("expansion of a growing letter contains no growing letter");
    out.trailing_pad = w.substr(gap_start);
    out.j = static_cast<int>(out.gaps.size());
    return out;
}

/*
 * gap(n, a) = max over interior gap words w(n,a,i) of |sigma^{n_s}(w)|,
 * zero when there is no interior gap; gap(n) maximizes over A_l. The bound
 * field carries k_s * gap(n) + 2 e_s and is present only on tame inputs.
 */
struct GapReport {
    int n = 1;
    std::map<Letter, std::size_t> per_letter; // gap(n, a) for a in A_l
    std::size_t gap_n = 0;
    std::optional<std::size_t> bound;
};

inline GapReport gap(const Substitution& sub, const LetterClassification& cls,
                     const StableConstants& consts, int n, const ExpansionBudget& budget = {}) {
    if (n < 1)
        throw std::invalid_argument("gap is defined for n >= 1");
    Expander ex(sub);
    GapReport out;
    out.n = n;
    for (Letter a : cls.growing) {
        LongFormDecomposition lf = long_form(sub, cls, a, n, budget);
        std::size_t g = 0;
        for (const Word& w : lf.gaps)
            g = std::max(g, static_cast<std::size_t>(ex.word_length(w, consts.n_s)));
        out.per_letter.emplace(a, g);
        out.gap_n = std::max(out.gap_n, g);
    }
    TamenessReport tr = tameness(sub, cls, consts);
    if (tr.tame)
        out.bound = consts.k_s * out.gap_n + 2 * *tr.e_s;
    return out;
}

} // namespace subst
