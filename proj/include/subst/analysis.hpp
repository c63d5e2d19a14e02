// analysis.hpp -- the full pipeline behind `analyze`: every module's report
// for one substitution, assembled into a schema-stable JSON document, plus
// batch mode over directories.
#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

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
#include "verdict.hpp"

namespace subst {

using ordered_json = nlohmann::ordered_json;

struct AnalysisReport {
    AnalysisReport(std::string name_, Substitution sub_, const AnalysisConfig& config_)
        : name(std::move(name_)), sub(std::move(sub_)), config(config_),
          classification(classify_letters(sub)) {}

    std::string name;
    Substitution sub;
    std::vector<std::string> warnings;
    AnalysisConfig config;

    LetterClassification classification;
    StableConstants constants;
    ReachReport reach;
    std::vector<SetTrajectory> set_trajectories; // singleton starts over A_l
    TamenessReport tameness_report;
    std::optional<GapReport> gap_report; // gap(1)
    LPrimitivityReport lprim;
    DLReport dl;
    std::optional<FixpointSeed> seed;             // present iff tame
    std::optional<Word> window_sample;            // x0[-40, 40]
    std::optional<BoundedGapReport> bounded_gap;  // present iff tame and l-primitive
    BoundedLanguage language;
    SubshiftTable table;
    ComplexityProfile complexity;
    std::optional<RecurrenceReport> recurrence;
    std::optional<RepetitivityEstimate> repetitivity;
    MinimalityVerdict verdict;
    std::optional<double> elapsed_seconds; // only with explicit timing
};

inline AnalysisReport run_analysis(const Substitution& sub, const AnalysisConfig& config = {},
                                   std::string name = "", bool with_timing = false) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();

    AnalysisReport r(std::move(name), sub, config); // classifies; may throw NotASubstitution
    r.constants = stable_constants(sub, r.classification);
    r.reach = reachability(sub, r.classification);
    for (Letter a : r.classification.growing)
        r.set_trajectories.push_back(set_trajectory(sub, r.classification, LetterSet(1, a)));
    r.tameness_report = tameness(sub, r.classification, r.constants);
    try {
        r.gap_report = gap(sub, r.classification, r.constants, 1, config.budget);
    } catch (const BudgetExceeded&) {
    }
    r.lprim = l_primitivity(sub, r.classification);
    r.dl = damanik_lenz_check(sub, r.classification, config.k, config.effective_n_max(sub),
                              config.budget);

    if (r.tameness_report.tame) {
        try {
            r.seed = find_seed(sub, r.classification, r.reach, r.tameness_report, config.budget);
            r.window_sample = window(sub, *r.seed, -40, 40, config.budget);
            r.recurrence = uniform_recurrence_check(sub, *r.seed, config.k, config.window,
                                                    config.M, config.budget);
            r.repetitivity = repetitivity_estimate(sub, *r.seed, config.k, config.M, config.budget);
            if (r.lprim.l_primitive)
                r.bounded_gap = bounded_gap_constants(sub, r.classification, r.lprim,
                                                      r.tameness_report, r.constants,
                                                      config.budget);
        } catch (const BudgetExceeded&) {
        }
    }

    r.language = bounded_language(sub, config.k);
    r.table = subshift_table(sub, config.k, std::max(config.horizon, 4 * config.k));
    r.complexity = complexity_profile(sub, std::max(2, config.k), config.horizon);
    r.verdict = decide_minimality(sub, config);

    if (with_timing)
        r.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline AnalysisReport run_analysis_file(const std::string& path, const AnalysisConfig& config = {},
                                        bool with_timing = false) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<std::string> warnings;
    Substitution sub = parse_substitution(buf.str(), &warnings);
    AnalysisReport r = run_analysis(sub, config, std::filesystem::path(path).stem().string(),
                                    with_timing);
    r.warnings = std::move(warnings);
    return r;
}

// ---- JSON assembly ---------------------------------------------------
// Field names are schema-stable; analyses that did not run are explicit
// nulls, never missing keys.

namespace json_detail {

inline std::string letter_str(Letter a) { return std::string(1, a); }

inline ordered_json classification_json(const LetterClassification& c) {
    ordered_json witness = ordered_json::object();
    for (const auto& [a, w] : c.witness)
        witness[letter_str(a)] = {{"via", letter_str(w.first)}, {"n", w.second}};
    return {{"A_l", c.growing}, {"A_s", c.bounded}, {"witness", witness}};
}

inline ordered_json constants_json(const StableConstants& c) {
    ordered_json words = ordered_json::object();
    for (const auto& [a, w] : c.stable_word)
        words[letter_str(a)] = w;
    return {{"n_s", c.n_s}, {"p_s", c.p_s}, {"k_s", c.k_s}, {"stable_words", words}};
}

inline ordered_json trajectory_json(const SetTrajectory& t) {
    return {{"start", t.start},
            {"preperiod", t.preperiod},
            {"cycle", t.cycle},
            {"period", t.period}};
}

inline ordered_json reach_json(const ReachReport& r, const std::vector<SetTrajectory>& ts) {
    ordered_json arrow = ordered_json::object();
    for (const auto& [a, row] : r.arrow)
        arrow[letter_str(a)] = row;
    ordered_json trajectories = ordered_json::array();
    for (const SetTrajectory& t : ts)
        trajectories.push_back(trajectory_json(t));
    return {{"arrow", arrow},     {"A_circ", r.circ},     {"A_circ_l", r.circ_l},
            {"A_min_l", r.min_l}, {"classes", r.classes}, {"r", r.r},
            {"set_trajectories", trajectories}};
}

inline ordered_json isolation_json(const IsolationStatus& st) {
    return {{"left_isolated", st.left_isolated},
            {"right_isolated", st.right_isolated},
            {"witness_n", st.witness_n ? ordered_json(*st.witness_n) : ordered_json(nullptr)},
            {"witness_pad", st.witness_pad ? ordered_json(*st.witness_pad) : ordered_json(nullptr)}};
}

inline ordered_json tameness_json(const TamenessReport& t) {
    ordered_json statuses = ordered_json::object();
    for (const auto& [a, st] : t.statuses)
        statuses[letter_str(a)] = isolation_json(st);
    auto opt = [](const std::optional<std::size_t>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    return {{"tame", t.tame},
            {"isolation", statuses},
            {"e_s_minus", opt(t.e_s_minus)},
            {"e_s_plus", opt(t.e_s_plus)},
            {"e_s", opt(t.e_s)}};
}

inline ordered_json gap_json(const GapReport& g) {
    ordered_json per = ordered_json::object();
    for (const auto& [a, v] : g.per_letter)
        per[letter_str(a)] = v;
    return {{"n", g.n},
            {"per_letter", per},
            {"gap_n", g.gap_n},
            {"bound", g.bound ? ordered_json(*g.bound) : ordered_json(nullptr)}};
}

inline ordered_json lprim_json(const LPrimitivityReport& l) {
    ordered_json ref(nullptr);
    if (l.refutation) {
        ordered_json tuple = ordered_json::object();
        for (const auto& [a, f] : l.refutation->tuple)
            tuple[letter_str(a)] = f;
        ref = {{"cycle_start", l.refutation->cycle_start},
               {"tuple", tuple},
               {"stuck", letter_str(l.refutation->stuck)}};
    }
    return {{"l_primitive", l.l_primitive},
            {"witness_n", l.witness_n ? ordered_json(*l.witness_n) : ordered_json(nullptr)},
            {"refutation", ref}};
}

inline ordered_json seed_json(const FixpointSeed& s) {
    return {{"left_letter", letter_str(s.left_letter)},
            {"middle", s.middle},
            {"right_letter", letter_str(s.right_letter)},
            {"p", s.p}};
}

inline ordered_json bounded_gap_json(const BoundedGapReport& b) {
    return {{"p_prime", b.p_prime}, {"l", b.l}, {"d", b.d}, {"d_prime", b.d_prime}};
}

inline ordered_json language_json(const BoundedLanguage& l) {
    return {{"k", l.k}, {"words", l.words}, {"saturated", l.saturated}};
}

inline ordered_json table_json(const SubshiftTable& t) {
    return {{"k", t.k},
            {"horizon", t.horizon},
            {"words", t.words},
            {"exact_if_periodic", t.exact_if_periodic}};
}

inline ordered_json complexity_json(const ComplexityProfile& c) {
    return {{"counts", c.counts},
            {"stabilized_at",
             c.stabilized_at ? ordered_json(*c.stabilized_at) : ordered_json(nullptr)},
            {"orbits", c.orbits ? ordered_json(*c.orbits) : ordered_json(nullptr)}};
}

inline ordered_json recurrence_json(const RecurrenceReport& r) {
    return {{"k", r.k},
            {"window", r.window},
            {"uniformly_recurrent_observed", r.uniformly_recurrent_observed},
            {"worst_word", r.worst_word},
            {"worst_gap", r.worst_gap}};
}

inline ordered_json repetitivity_json(const RepetitivityEstimate& r) {
    ordered_json table = ordered_json::object();
    for (const auto& [k, v] : r.table)
        table[std::to_string(k)] = v;
    return {{"table", table},
            {"ratio_max", {{"num", r.ratio_num}, {"den", r.ratio_den}}}};
}

inline ordered_json dl_json(const DLReport& d) {
    auto letter_opt = [](const std::optional<Letter>& v) {
        return v ? ordered_json(letter_str(*v)) : ordered_json(nullptr);
    };
    return {{"cond1", d.cond1},
            {"cond1_witness", letter_opt(d.cond1_witness)},
            {"cond2", d.cond2},
            {"cond2_witness", letter_opt(d.cond2_witness)},
            {"cond3_bounded", d.cond3_bounded},
            {"cond3_k", d.cond3_k},
            {"cond3_counterexample",
             d.cond3_counterexample ? ordered_json(*d.cond3_counterexample) : ordered_json(nullptr)},
            {"ewe_gap_max", d.ewe_gap_max},
            {"ewe_letter", letter_opt(d.ewe_letter)},
            {"ewe_n_max", d.ewe_n_max}};
}

inline ordered_json sub_rules_json(const Substitution& s) {
    ordered_json rules = ordered_json::object();
    for (const auto& [a, w] : s.rules())
        rules[letter_str(a)] = w;
    return rules;
}

inline ordered_json subsub_json(const SubSubstitution& s) {
    return {{"B", s.b_set},
            {"rules", sub_rules_json(s.sub)},
            {"B_l", s.b_l},
            {"bounded_equality_k", s.bounded_equality_k},
            {"bounded_equality", s.bounded_equality}};
}

inline ordered_json evidence_json(const Evidence& e) {
    ordered_json j;
    j["type"] = evidence_kind(e);
    struct Visitor {
        ordered_json& j;
        void operator()(const EvidenceTameAndPrimitive& v) {
            j["tameness"] = tameness_json(v.tameness);
            j["l_primitivity"] = lprim_json(v.lprim);
        }
        void operator()(const EvidenceFiniteOrbits& v) {
            j["stabilized_at"] = v.stabilized_at;
            j["counts"] = v.counts;
            j["orbits"] = v.orbits;
        }
        void operator()(const EvidenceDisjointMinimals& v) {
            j["first"] = subsub_json(v.first);
            j["second"] = subsub_json(v.second);
            j["first_tame"] = v.first_tame.tame;
            j["second_tame"] = v.second_tame.tame;
            j["first_l_primitive"] = v.first_lprim.l_primitive;
            j["second_l_primitive"] = v.second_lprim.l_primitive;
            j["k"] = v.k;
            j["witness_word"] = v.witness_word;
            j["witness_in_first"] = v.witness_in_first;
        }
        void operator()(const EvidencePeriodicPlusInterior& v) {
            j["periodic_witness"] = {{"word", v.periodic.word},
                                     {"origin", letter_str(v.periodic.origin)},
                                     {"n0", v.periodic.n0}};
            j["interior_witness"] = {{"letter", letter_str(v.interior.letter)},
                                     {"n", v.interior.n},
                                     {"left_ctx", v.interior.left_ctx},
                                     {"right_ctx", v.interior.right_ctx}};
        }
        void operator()(const EvidenceSetPeriodOrClasses& v) {
            ordered_json periods = ordered_json::array();
            for (const auto& [a, p] : v.set_periods)
                periods.push_back({{"letter", letter_str(a)}, {"period", p}});
            j["set_periods"] = periods;
            j["r"] = v.r;
        }
        void operator()(const EvidenceBudgetsExhausted& v) {
            j["k"] = v.k;
            j["horizon"] = v.horizon;
            j["n_max"] = v.n_max;
            j["max_length"] = v.max_length;
            j["max_power"] = v.max_power;
        }
    };
    std::visit(Visitor{j}, e);
    return j;
}

inline ordered_json verdict_json(const MinimalityVerdict& v) {
    ordered_json evidence = ordered_json::array();
    for (const Evidence& e : v.evidence)
        evidence.push_back(evidence_json(e));
    return {{"verdict", to_string(v.verdict)},
            {"detail", v.single_periodic_orbit ? ordered_json("single_periodic_orbit")
                                               : ordered_json(nullptr)},
            {"evidence", evidence}};
}

} // namespace json_detail

inline ordered_json report_to_json(const AnalysisReport& r) {
    using namespace json_detail;
    ordered_json j;
    j["input"] = {{"name", r.name},
                  {"rules", sub_rules_json(r.sub)},
                  {"alphabet", r.sub.alphabet()},
                  {"warnings", r.warnings}};
    j["config"] = {{"k", r.config.k},
                   {"horizon", r.config.horizon},
                   {"n_max", r.config.effective_n_max(r.sub)},
                   {"window", r.config.window},
                   {"M", r.config.M},
                   {"max_length", r.config.budget.max_length},
                   {"max_power", r.config.budget.max_power}};
    j["classification"] = classification_json(r.classification);
    j["constants"] = constants_json(r.constants);
    j["reach"] = reach_json(r.reach, r.set_trajectories);
    j["tame"] = tameness_json(r.tameness_report);
    j["gap"] = r.gap_report ? gap_json(*r.gap_report) : ordered_json(nullptr);
    j["l_primitive"] = lprim_json(r.lprim);
    j["seed"] = r.seed ? seed_json(*r.seed) : ordered_json(nullptr);
    j["window"] = r.window_sample ? ordered_json(*r.window_sample) : ordered_json(nullptr);
    j["d_prime"] = r.bounded_gap ? bounded_gap_json(*r.bounded_gap) : ordered_json(nullptr);
    j["language"] = language_json(r.language);
    j["table"] = table_json(r.table);
    j["complexity"] = complexity_json(r.complexity);
    j["recurrence"] = r.recurrence ? recurrence_json(*r.recurrence) : ordered_json(nullptr);
    j["repetitivity"] = r.repetitivity ? repetitivity_json(*r.repetitivity) : ordered_json(nullptr);
    j["damanik_lenz"] = dl_json(r.dl);
    j["verdict"] = verdict_json(r.verdict);
    j["timing"] = r.elapsed_seconds ? ordered_json(*r.elapsed_seconds) : ordered_json(nullptr);
    return j;
}

// ---- batch mode -------------------------------------------------------

struct BatchEntry {
    std::string name;
    bool error = false;
    std::string message;                  // parse or validity error text
    std::optional<AnalysisReport> report; // absent on error
};

inline std::vector<BatchEntry> batch(const std::string& dir, const AnalysisConfig& config = {}) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".sub")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<BatchEntry> out;
    for (const auto& path : files) {
        BatchEntry entry;
        entry.name = path.stem().string();
        try {
            entry.report = run_analysis_file(path.string(), config);
        } catch (const Error& e) {
            entry.error = true;
            entry.message = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

inline std::string batch_to_csv(const std::vector<BatchEntry>& entries) {
    std::string out = "name,letters,growing,tame,l_primitive,r,verdict,detail,evidence\n";
    for (const BatchEntry& entry : entries) {
        out += entry.name;
        out += ',';
        if (entry.error) {
            out += ",,,,,ERROR,,";
        } else {
            const AnalysisReport& r = *entry.report;
            std::string kinds;
            for (const Evidence& e : r.verdict.evidence) {
                if (!kinds.empty())
                    kinds += '+';
                kinds += evidence_kind(e);
            }
            out += std::to_string(r.sub.size()) + ',' +
                   std::to_string(r.classification.growing.size()) + ',' +
                   (r.tameness_report.tame ? "true" : "false") + ',' +
                   (r.lprim.l_primitive ? "true" : "false") + ',' + std::to_string(r.reach.r) +
                   ',' + to_string(r.verdict.verdict) + ',' +
                   (r.verdict.single_periodic_orbit ? "single_periodic_orbit" : "") + ',' + kinds;
        }
        out += '\n';
    }
    return out;
}

/// One full report per file; errors carry the message instead.
inline ordered_json batch_to_json(const std::vector<BatchEntry>& entries) {
    ordered_json out = ordered_json::array();
    for (const BatchEntry& entry : entries) {
        ordered_json j{{"name", entry.name}, {"error", entry.error}};
        if (entry.error)
            j["message"] = entry.message;
        else
            j["report"] = report_to_json(*entry.report);
        out.push_back(std::move(j));
    }
    return out;
}

} // namespace subst
