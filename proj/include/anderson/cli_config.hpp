#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "anderson/experiments.hpp"

namespace anderson {

using ordered_json = nlohmann::ordered_json;

// One fully parsed experiment request. Only the section matching kind is
// meaningful; the rest keep their defaults.
struct ParsedExperiment {
    std::string kind;
    std::uint64_t master_seed = 1;
    std::string output_dir = "results";
    int threads = 1;
    long trials = 1000;
    std::vector<double> epsilons;  // sweep list, empty unless configured

    WegnerOneConfig wegner_one;
    WegnerTwoConfig wegner_two;
    DmShiftConfig dm;
    ConcentrationConfig concentration;

    HamiltonianSpec spectrum_spec;
    EngineOptions spectrum_engine;
    long spectrum_count = 10;
    double spectrum_threshold = 0.0;
    bool spectrum_by_threshold = false;
    std::uint64_t spectrum_trial = 0;

    TwoParticleBox separation_first;
    TwoParticleBox separation_second;
    double separation_reach = 1.0;
    double separation_multiplier = 8.0;

    BumpProfile covering_profile;
    Cube covering_cube;
    double covering_grid_step = 0.1;
};

// Folds dotted-path overrides ("a.b.c=value") into the document. Values are
// parsed as JSON when they parse, kept as strings otherwise.
ordered_json apply_overrides(ordered_json doc, const std::vector<std::string>& sets);

// Copy without the scheduling-only keys (threads, output_dir); its dump is
// what the audit hash and the config echo in summaries are computed from.
ordered_json strip_volatile(const ordered_json& doc);

// Schema walk and construction. Structural problems (unknown keys, wrong
// types, bad enum labels, malformed sections) land in issues; the returned
// struct is safe to inspect but only trustworthy when issues stayed empty.
ParsedExperiment parse_experiment(const ordered_json& doc, std::vector<std::string>& issues);

// Cross-field checks on a structurally sound config: hypothesis ranges,
// distance preconditions, covering, grid divisibility, budget sanity.
std::vector<std::string> validate_experiment(const ParsedExperiment& e);

}  // namespace anderson
