// reach.hpp -- the reachability preorder a -> b on letters, minimal growing
// letters with their mutual-reachability classes, and trajectories of the
// subset map s(F) = union over a in F of Lett(sigma(a)) cap A_l.
#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "growth.hpp"

namespace subst {

struct ReachReport {
    // a -> all b with a -> b (some path of length >= 1).
    std::map<Letter, LetterSet> arrow;
    LetterSet circ;   // A_o: letters on a cycle (a -> a)
    LetterSet circ_l; // A_o cap A_l
    LetterSet min_l;  // growing letters minimal under ->
    // Mutual-reachability classes of min_l, ordered by least letter.
    std::vector<LetterSet> classes;
    int r = 0; // number of classes

    bool reaches(Letter a, Letter b) const { return set_contains(arrow.at(a), b); }
    /// a > b: b is a strict descendant of a.
    bool descendant(Letter a, Letter b) const { return reaches(a, b) && !reaches(b, a); }
};

inline ReachReport reachability(const Substitution& sub, const LetterClassification& cls) {
    const std::string& alphabet = sub.alphabet();
    auto closure = letter_reachability(sub);

    ReachReport out;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        LetterSet row;
        for (std::size_t j = 0; j < alphabet.size(); ++j)
            if (closure[i][j])
                row.push_back(alphabet[j]);
        out.arrow.emplace(alphabet[i], std::move(row));
        if (closure[i][i])
            out.circ.push_back(alphabet[i]);
    }
    out.circ_l = set_intersection(out.circ, cls.growing);

    for (Letter a : cls.growing) {
        bool minimal = true;
        for (Letter b : cls.growing)
            if (out.reaches(a, b) && !out.reaches(b, a)) {
                minimal = false;
                break;
            }
        if (minimal)
            out.min_l.push_back(a);
    }

    // On min_l, a ~ b iff a -> b; minimality makes this symmetric and every
    // minimal letter sits on a cycle, so ~ is an equivalence.
    LetterSet unassigned = out.min_l;
    while (!unassigned.empty()) {
        Letter a = unassigned.front();
        LetterSet cls_of_a(1, a);
        for (Letter b : unassigned)
            if (b != a && out.reaches(a, b))
                cls_of_a.push_back(b);
        LetterSet rest;
        for (Letter b : unassigned)
            if (!set_contains(cls_of_a, b))
                rest.push_back(b);
        unassigned = rest;
        out.classes.push_back(cls_of_a);
    }
    out.r = static_cast<int>(out.classes.size());

    // These hold for every valid substitution; a violation is a bug here,
    // not bad input.
    if (out.circ_l.empty())
        throw std::logic_error("no growing letter lies on a cycle");
    if (out.min_l.empty() || !is_subset(out.min_l, out.circ_l))
        throw std::logic_error("minimal growing letters must be nonempty and lie on cycles");
    return out;
}

/// One application of the subset map s.
inline LetterSet set_step(const Substitution& sub, const LetterClassification& cls,
                          const LetterSet& f) {
    LetterSet out;
    for (Letter a : f)
        out = set_union(out, set_intersection(letters_of(sub.image(a)), cls.growing));
    return out;
}

/*
 * Trajectory of a subset of A_l under s, resolved into preperiod and least
 * cycle by first repeat; the state space has at most 2^|A_l| elements, so
 * this always terminates. For a singleton {a} the result carries N(a),
 * F(a) = cycle.front() and p(set, a) = period.
 */
struct SetTrajectory {
    LetterSet start;
    int preperiod = 0;            // N
    std::vector<LetterSet> cycle; // cycle[0] = s^N(start)
    int period = 1;               // least; == cycle.size()
};

inline SetTrajectory set_trajectory(const Substitution& sub, const LetterClassification& cls,
                                    const LetterSet& start) {
    if (start.empty() || !is_subset(start, cls.growing))
        throw std::invalid_argument("start must be a nonempty subset of the growing letters");

    std::vector<LetterSet> seq{start};
    std::map<LetterSet, int> seen{{start, 0}};
    SetTrajectory out;
    out.start = start;
    for (;;) {
        LetterSet next = set_step(sub, cls, seq.back());
        auto [it, fresh] = seen.emplace(next, static_cast<int>(seq.size()));
        if (!fresh) {
            out.preperiod = it->second;
            out.cycle.assign(seq.begin() + it->second, seq.end());
            out.period = static_cast<int>(out.cycle.size());
            break;
        }
        seq.push_back(std::move(next));
    }
    for (const LetterSet& f : out.cycle)
        if (f.empty())
            throw std::logic_error("subset map produced an empty set on a cycle");
    return out;
}

} // namespace subst
