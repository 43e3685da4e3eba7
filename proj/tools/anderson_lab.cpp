#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "anderson/cli_config.hpp"
#include "anderson/result_io.hpp"

namespace {

using anderson::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitMissingFile = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolverBudget = 3;

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir;
    long trials = 0;
    bool trials_given = false;
    int threads = 0;
    bool threads_given = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "experiment config JSON")->required();
    cmd->add_option("--set", f.sets, "override, path.to.key=value (repeatable)");
    cmd->add_option("--seed", f.seed, "master seed override")->each([&f](const std::string&) {
        f.seed_given = true;
    });
    cmd->add_option("--out", f.out_dir, "output directory override");
    cmd->add_option("--trials", f.trials, "trial count override")->each([&f](const std::string&) {
        f.trials_given = true;
    });
    cmd->add_option("--threads", f.threads, "worker threads (scheduling hint only)")
        ->each([&f](const std::string&) { f.threads_given = true; });
}

int load_document(const CommonFlags& f, ordered_json& doc) {
    std::ifstream in(f.config_path);
    if (!in) {
        std::cerr << "error: cannot open config file " << f.config_path << "\n";
        return kExitMissingFile;
    }
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
        return kExitValidation;
    }
    try {
        doc = anderson::apply_overrides(doc, f.sets);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    if (f.seed_given) doc["master_seed"] = f.seed;
    if (!f.out_dir.empty()) doc["output_dir"] = f.out_dir;
    if (f.trials_given) doc["trials"] = f.trials;
    if (f.threads_given) doc["threads"] = f.threads;
    return kExitOk;
}

int parse_and_validate(const ordered_json& doc, anderson::ParsedExperiment& exp,
                       std::vector<std::string>& issues) {
    exp = anderson::parse_experiment(doc, issues);
    if (issues.empty()) {
        const auto more = anderson::validate_experiment(exp);
        issues.insert(issues.end(), more.begin(), more.end());
    }
    return issues.empty() ? kExitOk : kExitValidation;
}

struct OutputSet {
    std::string base;        // directory + basename, extensionless
    ordered_json summary;    // kind, seed, hash, config echo, result payload
};

OutputSet make_output(const anderson::ParsedExperiment& exp, const ordered_json& doc) {
    OutputSet o;
    const ordered_json canon = anderson::strip_volatile(doc);
    const std::string hash = anderson::fnv1a_hex16(canon.dump());
    const std::string name = anderson::output_basename(exp.kind, exp.master_seed, hash);
    o.base = (std::filesystem::path(exp.output_dir) / name).string();
    o.summary["kind"] = exp.kind;
    o.summary["master_seed"] = exp.master_seed;
    o.summary["config_hash"] = hash;
    o.summary["config"] = canon;
    return o;
}

void finish(OutputSet& o, const char* label, ordered_json result) {
    o.summary[label] = std::move(result);
    anderson::write_text_file(o.base + ".json", o.summary.dump(2) + "\n");
    std::cout << "wrote " << o.base << ".json\n";
}

int run_experiment(const anderson::ParsedExperiment& exp, const ordered_json& doc, bool sweep) {
    OutputSet out = make_output(exp, doc);
    if (sweep && exp.kind != "wegner-one" && exp.kind != "wegner-two") {
        std::cerr << "error: sweep applies to wegner-one and wegner-two only\n";
        return kExitValidation;
    }
    if (sweep && exp.epsilons.empty()) {
        std::cerr << "error: sweep needs an epsilons list (config key or --set epsilons=[...])\n";
        return kExitValidation;
    }

    if (exp.kind == "wegner-one" || exp.kind == "wegner-two") {
        const std::vector<double> eps =
            sweep ? exp.epsilons
                  : std::vector<double>{exp.kind == "wegner-one" ? exp.wegner_one.epsilon
                                                                 : exp.wegner_two.epsilon};
        const anderson::SweepResult res = exp.kind == "wegner-one"
                                              ? anderson::one_volume_sweep(exp.wegner_one, eps)
                                              : anderson::two_volume_sweep(exp.wegner_two, eps);
        anderson::write_text_file(out.base + ".csv", anderson::sweep_csv(res));
        anderson::write_text_file(out.base + "_plot.csv", anderson::sweep_plot_csv(res));
        finish(out, "result", anderson::sweep_json(res));
        if (!res.valid) {
            std::cerr << "error: exclusion budget exceeded (" << res.rows.front().excluded
                      << " of " << res.trials << " trials)\n";
            return kExitSolverBudget;
        }
        return kExitOk;
    }
    if (exp.kind == "spectrum") {
        const auto sites = anderson::required_sites(exp.spectrum_spec);
        const auto field = anderson::sample_amplitudes(exp.spectrum_spec.ensemble, sites,
                                                       exp.master_seed, exp.spectrum_trial);
        const anderson::Spectrum s =
            exp.spectrum_by_threshold
                ? anderson::spectrum_below(exp.spectrum_spec, field, exp.spectrum_threshold,
                                           exp.spectrum_engine)
                : anderson::lowest_k(exp.spectrum_spec, field,
                                     static_cast<int>(exp.spectrum_count), exp.spectrum_engine);
        anderson::write_text_file(out.base + ".csv", anderson::spectrum_csv(s));
        finish(out, "result", anderson::spectrum_json(s));
        if (!s.converged) {
            std::cerr << "error: eigensolver did not converge\n";
            return kExitSolverBudget;
        }
        return kExitOk;
    }
    if (exp.kind == "dm-check") {
        const anderson::DmShiftSummary s = anderson::dm_shift_sweep(exp.dm);
        anderson::write_text_file(out.base + ".csv", anderson::dm_csv(s));
        finish(out, "result", anderson::dm_json(s));
        return kExitOk;
    }
    if (exp.kind == "concentration") {
        const anderson::ConcentrationReport r = anderson::concentration_check(exp.concentration);
        finish(out, "result", anderson::concentration_json(r));
        return kExitOk;
    }
    if (exp.kind == "separation") {
        const anderson::SeparationVerdict v =
            anderson::classify_separation(exp.separation_first, exp.separation_second,
                                          exp.separation_reach, exp.separation_multiplier);
        finish(out, "result", anderson::separation_json(v));
        return kExitOk;
    }
    if (exp.kind == "covering") {
        const anderson::CoveringReport r = anderson::verify_covering(
            exp.covering_profile, exp.covering_cube, exp.covering_grid_step);
        finish(out, "result", anderson::covering_json(r));
        return kExitOk;
    }
    std::cerr << "error: unhandled experiment kind\n";
    return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-box two-particle random Hamiltonian laboratory"};
    app.require_subcommand(1);

    CommonFlags run_flags, validate_flags, sweep_flags;
    CLI::App* cmd_run = app.add_subcommand("run", "run one experiment");
    CLI::App* cmd_validate = app.add_subcommand("validate", "check a config without running");
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run a window-width sweep");
    add_common_flags(cmd_run, run_flags);
    add_common_flags(cmd_validate, validate_flags);
    add_common_flags(cmd_sweep, sweep_flags);

    CLI11_PARSE(app, argc, argv);

    const bool is_run = cmd_run->parsed();
    const bool is_sweep = cmd_sweep->parsed();
    const CommonFlags& flags = is_run ? run_flags : (is_sweep ? sweep_flags : validate_flags);

    ordered_json doc;
    const int load_rc = load_document(flags, doc);
    if (load_rc != kExitOk) return load_rc;

    anderson::ParsedExperiment exp;
    std::vector<std::string> issues;
    const int val_rc = parse_and_validate(doc, exp, issues);
    if (!is_run && !is_sweep) {
        if (issues.empty()) {
            std::cout << "ok: " << exp.kind << " config is valid\n";
            return kExitOk;
        }
        std::cout << "found " << issues.size() << " issue(s):\n";
        for (const auto& s : issues) std::cout << "  - " << s << "\n";
        return kExitValidation;
    }
    if (val_rc != kExitOk) {
        std::cerr << "error: config failed validation:\n";
        for (const auto& s : issues) std::cerr << "  - " << s << "\n";
        return kExitValidation;
    }

    try {
        return run_experiment(exp, doc, is_sweep);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
