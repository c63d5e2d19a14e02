// verdict.hpp -- the minimality pipeline: combine tameness and
// l-primitivity into a certified MINIMAL verdict, resolve finite orbits,
// extract sub-substitutions, and issue NOT_MINIMAL with independently
// re-checkable evidence. Soundness beats completeness throughout: no full
// decision procedure for minimality exists, so unresolved cases come back
// LIKELY_NOT_MINIMAL or INCONCLUSIVE rather than guessed.
#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "config.hpp"
#include "core.hpp"
#include "dl_check.hpp"
#include "fixpoint.hpp"
#include "growth.hpp"
#include "lang.hpp"
#include "lprim.hpp"
#include "reach.hpp"
#include "recurrence.hpp"
#include "tame.hpp"

namespace subst {

/*
 * The closure B of a minimal class under images, with the restriction
 * sigma_B. B cap A_l equals the class itself: anything growing reachable
 * from a minimal letter reaches back. bounded_equality compares the pruned
 * k-tables of sigma and sigma_B level by level up to bounded_equality_k.
 */
struct SubSubstitution {
    LetterSet b_set;  // B
    Substitution sub; // sigma_B
    LetterSet b_l;    // B cap A_l (the originating class)
    int bounded_equality_k = 1;
    bool bounded_equality = false;
};

inline SubSubstitution extract_sub_substitution(const Substitution& sub,
                                                const LetterClassification& cls,
                                                const ReachReport& reach, int class_index = 0,
                                                int k = 6, int horizon = 24) {
    if (class_index < 0 || class_index >= reach.r)
        throw std::invalid_argument("class index out of range");
    const LetterSet& cls_letters = reach.classes[static_cast<std::size_t>(class_index)];

    LetterSet b = cls_letters;
    for (;;) {
        LetterSet next = b;
        for (Letter a : b)
            next = set_union(next, letters_of(sub.image(a)));
        if (next == b)
            break;
        b = std::move(next);
    }

    std::map<Letter, Word> rules;
    for (Letter a : b)
        rules.emplace(a, sub.image(a));

    SubSubstitution out{b, Substitution::from_rules(std::move(rules)),
                        set_intersection(b, cls.growing), k, true};
    if (out.b_l != cls_letters)
        throw std::logic_error("closure of a minimal class leaked growing letters");

    LanguageCache full_cache(sub), part_cache(out.sub);
    for (int j = 1; j <= k && out.bounded_equality; ++j) {
        const int h = std::max(horizon, 4 * j);
        out.bounded_equality = subshift_table(sub, j, full_cache.at(h)).words ==
                               subshift_table(out.sub, j, part_cache.at(h)).words;
    }
    return out;
}

enum class Verdict { minimal, not_minimal, likely_not_minimal, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::minimal:
        return "MINIMAL";
    case Verdict::not_minimal:
        return "NOT_MINIMAL";
    case Verdict::likely_not_minimal:
        return "LIKELY_NOT_MINIMAL";
    default:
        return "INCONCLUSIVE";
    }
}

// Evidence items; each carries everything needed to re-check it without
// rerunning the pipeline.

/// Tame + l-primitive certifies minimality directly.
struct EvidenceTameAndPrimitive {
    TamenessReport tameness;
    LPrimitivityReport lprim;
};

/// Complexity stabilized: the subshift is exactly these periodic orbits.
struct EvidenceFiniteOrbits {
    int stabilized_at = 1;
    std::vector<std::size_t> counts;
    std::vector<Word> orbits;
};

/// Two classes yield disjoint minimal subsystems; the witness word occurs
/// in the materialized fixed point of one and is certifiably absent from
/// the other's k-table.
struct EvidenceDisjointMinimals {
    SubSubstitution first;
    SubSubstitution second;
    TamenessReport first_tame, second_tame;
    LPrimitivityReport first_lprim, second_lprim;
    int k = 1;
    Word witness_word;
    bool witness_in_first = true;
};

/// A periodic point over A_s coexists with a point containing a growing
/// letter outside its letters.
struct EvidencePeriodicPlusInterior {
    PeriodicWitness periodic;
    InteriorWitness interior;
};

/// A minimal-class letter has subset-map period > 1, or several classes
/// exist, but periodicity was not resolved: minimal-aperiodic is excluded,
/// a single periodic orbit is not.
struct EvidenceSetPeriodOrClasses {
    std::vector<std::pair<Letter, int>> set_periods; // (letter, p(set, a)) with p > 1
    int r = 1;
};

/// Budgets the inconclusive run exhausted.
struct EvidenceBudgetsExhausted {
    int k = 0;
    int horizon = 0;
    int n_max = 0;
    std::size_t max_length = 0;
    int max_power = 0;
};

using Evidence =
    std::variant<EvidenceTameAndPrimitive, EvidenceFiniteOrbits, EvidenceDisjointMinimals,
                 EvidencePeriodicPlusInterior, EvidenceSetPeriodOrClasses,
                 EvidenceBudgetsExhausted>;

inline const char* evidence_kind(const Evidence& e) {
    struct Visitor {
        const char* operator()(const EvidenceTameAndPrimitive&) { return "tame_l_primitive"; }
        const char* operator()(const EvidenceFiniteOrbits&) { return "finite_orbits"; }
        const char* operator()(const EvidenceDisjointMinimals&) {
            return "disjoint_minimal_subsystems";
        }
        const char* operator()(const EvidencePeriodicPlusInterior&) {
            return "periodic_plus_interior";
        }
        const char* operator()(const EvidenceSetPeriodOrClasses&) {
            return "set_period_or_classes";
        }
        const char* operator()(const EvidenceBudgetsExhausted&) { return "budgets_exhausted"; }
    };
    return std::visit(Visitor{}, e);
}

struct MinimalityVerdict {
    Verdict verdict = Verdict::inconclusive;
    bool single_periodic_orbit = false;
    std::vector<Evidence> evidence;
};

/// The substitution whose subshift is the orbit of u^infinity: every letter
/// of u maps to u. A one-letter u doubles its image so that the result
/// still has a growing letter.
inline Substitution build_periodic_substitution(const Word& u) {
    if (u.empty())
        throw std::invalid_argument("periodic substitution needs a nonempty word");
    Word image = u.size() == 1 ? u + u : u;
    std::map<Letter, Word> rules;
    for (Letter a : letters_of(u))
        rules.emplace(a, image);
    return Substitution::from_rules(std::move(rules));
}

namespace detail {

/*
 * For the disjoint-minimals route: certify that some word separates two
 * minimal subsystems. A word outside a k-table is certainly outside that
 * subsystem's language (the table is a superset); a word found in a
 * materialized window of the other subsystem's fixed point is certainly
 * inside. Returns (k, word, found-in-first) or nothing.
 */
struct ClassAnalysis {
    SubSubstitution part;
    LetterClassification cls;
    TamenessReport tame;
    LPrimitivityReport lprim;
};

inline std::optional<std::tuple<int, Word, bool>>
separate_minimals(const ClassAnalysis& x, const ClassAnalysis& y, const AnalysisConfig& config) {
    Word wx, wy;
    try {
        ReachReport rx = reachability(x.part.sub, x.cls);
        ReachReport ry = reachability(y.part.sub, y.cls);
        FixpointSeed sx = find_seed(x.part.sub, x.cls, rx, x.tame, config.budget);
        FixpointSeed sy = find_seed(y.part.sub, y.cls, ry, y.tame, config.budget);
        long half = std::max<long>(256, 8L * config.k);
        wx = window(x.part.sub, sx, -half, half, config.budget);
        wy = window(y.part.sub, sy, -half, half, config.budget);
    } catch (const BudgetExceeded&) {
        return std::nullopt;
    }
    LanguageCache cx(x.part.sub), cy(y.part.sub);
    for (int k = 1; k <= config.k; ++k) {
        const int h = std::max(config.horizon, 4 * k);
        SubshiftTable tx = subshift_table(x.part.sub, k, cx.at(h));
        SubshiftTable ty = subshift_table(y.part.sub, k, cy.at(h));
        if (tx.words == ty.words)
            continue;
        for (const Word& w : tx.words)
            if (!ty.contains(w) && wx.find(w) != Word::npos)
                return std::make_tuple(k, w, true);
        for (const Word& w : ty.words)
            if (!tx.contains(w) && wy.find(w) != Word::npos)
                return std::make_tuple(k, w, false);
    }
    return std::nullopt;
}

} // namespace detail

inline MinimalityVerdict decide_minimality(const Substitution& sub,
                                           const AnalysisConfig& config = {}) {
    config.validate();
    LetterClassification cls = classify_letters(sub); // NotASubstitution propagates
    StableConstants consts = stable_constants(sub, cls);
    ReachReport reach = reachability(sub, cls);
    TamenessReport tame_report = tameness(sub, cls, consts);
    LPrimitivityReport lprim = l_primitivity(sub, cls);

    MinimalityVerdict out;

    // (i) tame + l-primitive: minimal, directly. The finite-orbit resolver
    // still runs so that single periodic orbits are flagged as such.
    if (tame_report.tame && lprim.l_primitive) {
        out.verdict = Verdict::minimal;
        out.evidence.push_back(EvidenceTameAndPrimitive{tame_report, lprim});
        ComplexityProfile prof = complexity_profile(sub, std::max(2, config.k), config.horizon);
        if (prof.stabilized_at) {
            out.single_periodic_orbit = prof.orbits->size() == 1;
            out.evidence.push_back(
                EvidenceFiniteOrbits{*prof.stabilized_at, prof.counts, *prof.orbits});
        }
        return out;
    }

    // (ii) finite-orbit resolution.
    ComplexityProfile prof = complexity_profile(sub, std::max(2, config.k), config.horizon);
    if (prof.stabilized_at) {
        EvidenceFiniteOrbits ev{*prof.stabilized_at, prof.counts, *prof.orbits};
        out.single_periodic_orbit = ev.orbits.size() == 1;
        out.verdict = out.single_periodic_orbit ? Verdict::minimal : Verdict::not_minimal;
        out.evidence.push_back(std::move(ev));
        return out;
    }

    // (iii) several classes: look for two certified disjoint minimal
    // subsystems.
    if (reach.r > 1) {
        std::vector<detail::ClassAnalysis> parts;
        for (int i = 0; i < reach.r; ++i) {
            detail::ClassAnalysis ca{
                extract_sub_substitution(sub, cls, reach, i, config.k, config.horizon), {}, {}, {}};
            ca.cls = classify_letters(ca.part.sub);
            ca.tame = tameness(ca.part.sub, ca.cls, stable_constants(ca.part.sub, ca.cls));
            ca.lprim = l_primitivity(ca.part.sub, ca.cls);
            parts.push_back(std::move(ca));
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t j = i + 1; j < parts.size(); ++j) {
                if (!(parts[i].tame.tame && parts[i].lprim.l_primitive &&
                      parts[j].tame.tame && parts[j].lprim.l_primitive))
                    continue;
                if (auto sep = detail::separate_minimals(parts[i], parts[j], config)) {
                    auto [k, word, in_first] = *sep;
                    out.verdict = Verdict::not_minimal;
                    out.evidence.push_back(EvidenceDisjointMinimals{
                        parts[i].part, parts[j].part, parts[i].tame, parts[j].tame,
                        parts[i].lprim, parts[j].lprim, k, word, in_first});
                    return out;
                }
            }
        }
    }

    // (iv) an isolated letter certifies a periodic point over A_s; any
    // growing letter pumped into a two-sided interior position lies outside
    // that orbit's closure.
    if (!tame_report.tame) {
        for (const auto& [a, st] : tame_report.statuses) {
            if (!st.left_isolated && !st.right_isolated)
                continue;
            PeriodicWitness pw = periodic_word_from_isolation(sub, cls, consts, a);
            for (Letter c : cls.growing) {
                std::optional<InteriorWitness> iw;
                try {
                    iw = interior_pump(sub, cls, c, config.effective_n_max(sub), config.budget);
                } catch (const BudgetExceeded&) {
                    continue;
                }
                if (iw) {
                    out.verdict = Verdict::not_minimal;
                    out.evidence.push_back(EvidencePeriodicPlusInterior{pw, *iw});
                    return out;
                }
            }
            break; // one isolated letter suffices; pumping failed for all c
        }
    }

    // (v) subset-map period > 1 on a minimal letter, or unresolved classes:
    // rules out minimal-aperiodic but not a single periodic orbit.
    EvidenceSetPeriodOrClasses e5;
    e5.r = reach.r;
    for (Letter a : reach.min_l) {
        SetTrajectory t = set_trajectory(sub, cls, LetterSet(1, a));
        if (t.period > 1)
            e5.set_periods.emplace_back(a, t.period);
    }
    if (!e5.set_periods.empty() || reach.r > 1) {
        out.verdict = Verdict::likely_not_minimal;
        out.evidence.push_back(std::move(e5));
        return out;
    }

    // (vi) nothing resolved within budgets.
    out.verdict = Verdict::inconclusive;
    out.evidence.push_back(EvidenceBudgetsExhausted{config.k, config.horizon,
                                                    config.effective_n_max(sub),
                                                    config.budget.max_length,
                                                    config.budget.max_power});
    return out;
}

} // namespace subst
