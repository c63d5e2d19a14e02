// substmin -- command-line front end: analyze substitutions, batch over
// directories, and expose the individual analyses as subcommands.
//
// Exit codes: 0 analysis ran (whatever the verdict), 2 parse error,
// 3 not a substitution (no growing letter), 1 anything else.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <subst/subst.hpp>

namespace {

subst::Substitution load(const std::string& path, std::vector<std::string>* warnings = nullptr) {
    std::ifstream in(path);
    if (!in)
        throw subst::Error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return subst::parse_substitution(buf.str(), warnings);
}

void add_config_options(CLI::App* cmd, subst::AnalysisConfig& cfg) {
    cmd->add_option("--k", cfg.k, "table/language depth");
    cmd->add_option("--horizon", cfg.horizon, "language horizon behind the tables");
    cmd->add_option("--nmax", cfg.n_max, "interior-pump search depth (0: 2|A|+4)");
    cmd->add_option("--window", cfg.window, "recurrence window length");
    cmd->add_option("--M", cfg.M, "half-width of scanned fixed-point segments");
    cmd->add_option("--max-len", cfg.budget.max_length, "expansion length budget");
    cmd->add_option("--max-pow", cfg.budget.max_power, "expansion power budget");
}

void print(const subst::ordered_json& j) { std::cout << j.dump(2) << '\n'; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"substitution subshift minimality analyzer"};
    app.require_subcommand(1);

    subst::AnalysisConfig cfg;
    std::string path, dir, letter_arg, word_arg;
    int power = 1;
    long from = -40, to = 40;
    bool csv = false, json_out = true, with_timing = false;

    auto* analyze = app.add_subcommand("analyze", "full analysis report as JSON");
    analyze->add_option("file", path)->required();
    analyze->add_flag("--timing", with_timing, "include wall-clock timing (breaks determinism)");
    add_config_options(analyze, cfg);

    auto* batch_cmd = app.add_subcommand("batch", "analyze every .sub file in a directory");
    batch_cmd->add_option("dir", dir)->required();
    batch_cmd->add_flag("--csv", csv, "CSV summary instead of JSON");
    batch_cmd->add_flag("--json", json_out, "JSON summary (default)");
    add_config_options(batch_cmd, cfg);

    auto* classify_cmd = app.add_subcommand("classify", "growing/bounded classification");
    classify_cmd->add_option("file", path)->required();
    add_config_options(classify_cmd, cfg);

    auto* tame_cmd = app.add_subcommand("tame", "isolation statuses and tameness");
    tame_cmd->add_option("file", path)->required();
    add_config_options(tame_cmd, cfg);

    auto* lprim_cmd = app.add_subcommand("lprimitive", "l-primitivity");
    lprim_cmd->add_option("file", path)->required();
    add_config_options(lprim_cmd, cfg);

    auto* minimal_cmd = app.add_subcommand("minimal", "minimality verdict with evidence");
    minimal_cmd->add_option("file", path)->required();
    add_config_options(minimal_cmd, cfg);

    auto* expand_cmd = app.add_subcommand("expand", "print sigma^n(letter)");
    expand_cmd->add_option("file", path)->required();
    expand_cmd->add_option("letter", letter_arg)->required();
    expand_cmd->add_option("n", power)->required();
    add_config_options(expand_cmd, cfg);

    auto* language_cmd = app.add_subcommand("language", "L(sigma) up to length k");
    language_cmd->add_option("file", path)->required();
    add_config_options(language_cmd, cfg);

    int kmax = 0;
    auto* complexity_cmd = app.add_subcommand("complexity", "factor-complexity profile");
    complexity_cmd->add_option("file", path)->required();
    complexity_cmd->add_option("--kmax", kmax, "profile depth (default: --k)");
    add_config_options(complexity_cmd, cfg);

    auto* fixpoint_cmd = app.add_subcommand("fixpoint", "seed and a window of x0");
    fixpoint_cmd->add_option("file", path)->required();
    fixpoint_cmd->add_option("--from", from, "window start index");
    fixpoint_cmd->add_option("--to", to, "window end index");
    add_config_options(fixpoint_cmd, cfg);

    auto* dl_cmd = app.add_subcommand("dl-check", "Damanik-Lenz condition checker");
    dl_cmd->add_option("file", path)->required();
    add_config_options(dl_cmd, cfg);

    auto* periodic_cmd = app.add_subcommand("make-periodic",
                                            "emit the substitution whose subshift is the orbit "
                                            "of word^infinity");
    periodic_cmd->add_option("word", word_arg)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            subst::AnalysisReport r = subst::run_analysis_file(path, cfg, with_timing);
            for (const std::string& w : r.warnings)
                std::cerr << "warning: " << w << '\n';
            print(subst::report_to_json(r));
        } else if (*batch_cmd) {
            auto rows = subst::batch(dir, cfg);
            if (csv)
                std::cout << subst::batch_to_csv(rows);
            else
                print(subst::batch_to_json(rows));
        } else if (*classify_cmd) {
            auto sub = load(path);
            auto cls = subst::classify_letters(sub);
            auto consts = subst::stable_constants(sub, cls);
            subst::ordered_json j = subst::json_detail::classification_json(cls);
            j.update(subst::json_detail::constants_json(consts));
            print(j);
        } else if (*tame_cmd) {
            auto sub = load(path);
            auto cls = subst::classify_letters(sub);
            auto consts = subst::stable_constants(sub, cls);
            subst::ordered_json j = subst::json_detail::tameness_json(subst::tameness(sub, cls, consts));
            j["gap"] = subst::json_detail::gap_json(subst::gap(sub, cls, consts, 1, cfg.budget));
            print(j);
        } else if (*lprim_cmd) {
            auto sub = load(path);
            auto cls = subst::classify_letters(sub);
            print(subst::json_detail::lprim_json(subst::l_primitivity(sub, cls)));
        } else if (*minimal_cmd) {
            auto sub = load(path);
            print(subst::json_detail::verdict_json(subst::decide_minimality(sub, cfg)));
        } else if (*expand_cmd) {
            if (letter_arg.size() != 1)
                throw subst::Error("expand: letter must be a single character");
            auto sub = load(path);
            std::cout << subst::expand(sub, letter_arg[0], power, cfg.budget) << '\n';
        } else if (*language_cmd) {
            auto sub = load(path);
            print(subst::json_detail::language_json(subst::bounded_language(sub, cfg.k)));
        } else if (*complexity_cmd) {
            auto sub = load(path);
            int depth = kmax > 0 ? kmax : cfg.k;
            print(subst::json_detail::complexity_json(
                subst::complexity_profile(sub, std::max(2, depth), cfg.horizon)));
        } else if (*fixpoint_cmd) {
            auto sub = load(path);
            auto cls = subst::classify_letters(sub);
            auto consts = subst::stable_constants(sub, cls);
            auto reach = subst::reachability(sub, cls);
            auto tame = subst::tameness(sub, cls, consts);
            auto seed = subst::find_seed(sub, cls, reach, tame, cfg.budget);
            subst::ordered_json j = subst::ordered_json::object();
            j["seed"] = subst::json_detail::seed_json(seed);
            j["from"] = from;
            j["to"] = to;
            j["window"] = subst::window(sub, seed, from, to, cfg.budget);
            print(j);
        } else if (*dl_cmd) {
            auto sub = load(path);
            auto cls = subst::classify_letters(sub);
            print(subst::json_detail::dl_json(
                subst::damanik_lenz_check(sub, cls, cfg.k, cfg.effective_n_max(sub), cfg.budget)));
        } else if (*periodic_cmd) {
            std::cout << subst::build_periodic_substitution(word_arg).serialize();
        }
    } catch (const subst::NotASubstitution& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const subst::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
