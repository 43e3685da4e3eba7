#include "anderson/cli_config.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <set>
#include <stdexcept>

namespace anderson {

namespace {

using Json = ordered_json;

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void reject_unknown(const Json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed, std::vector<std::string>& issues) {
    if (!obj.is_object()) {
        issues.push_back(path + ": expected an object");
        return;
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known) issues.push_back(path + ": unknown key '" + it.key() + "'");
    }
}

double num_or(const Json& o, const std::string& path, const char* k, double dflt,
              std::vector<std::string>& issues, bool required = false) {
    if (!o.is_object() || !o.contains(k)) {
        if (required) issues.push_back(path + "." + k + ": required");
        return dflt;
    }
    const Json& v = o.at(k);
    if (!v.is_number()) {
        issues.push_back(path + "." + k + ": expected a number");
        return dflt;
    }
    return v.get<double>();
}

long int_or(const Json& o, const std::string& path, const char* k, long dflt,
            std::vector<std::string>& issues, bool required = false) {
    if (!o.is_object() || !o.contains(k)) {
        if (required) issues.push_back(path + "." + k + ": required");
        return dflt;
    }
    const Json& v = o.at(k);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        issues.push_back(path + "." + k + ": expected an integer");
        return dflt;
    }
    return v.get<long>();
}

std::uint64_t seed_or(const Json& o, const std::string& path, const char* k, std::uint64_t dflt,
                      std::vector<std::string>& issues) {
    if (!o.is_object() || !o.contains(k)) return dflt;
    const Json& v = o.at(k);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0)
        return static_cast<std::uint64_t>(v.get<long long>());
    issues.push_back(path + "." + k + ": expected a nonnegative integer");
    return dflt;
}

bool bool_or(const Json& o, const std::string& path, const char* k, bool dflt,
             std::vector<std::string>& issues) {
    if (!o.is_object() || !o.contains(k)) return dflt;
    const Json& v = o.at(k);
    if (!v.is_boolean()) {
        issues.push_back(path + "." + k + ": expected a boolean");
        return dflt;
    }
    return v.get<bool>();
}

std::string str_or(const Json& o, const std::string& path, const char* k, const std::string& dflt,
                   std::vector<std::string>& issues, bool required = false) {
    if (!o.is_object() || !o.contains(k)) {
        if (required) issues.push_back(path + "." + k + ": required");
        return dflt;
    }
    const Json& v = o.at(k);
    if (!v.is_string()) {
        issues.push_back(path + "." + k + ": expected a string");
        return dflt;
    }
    return v.get<std::string>();
}

std::vector<double> numbers_or(const Json& o, const std::string& path, const char* k,
                               std::vector<double> dflt, std::vector<std::string>& issues,
                               bool required = false) {
    if (!o.is_object() || !o.contains(k)) {
        if (required) issues.push_back(path + "." + k + ": required");
        return dflt;
    }
    const Json& v = o.at(k);
    if (!v.is_array()) {
        issues.push_back(path + "." + k + ": expected an array of numbers");
        return dflt;
    }
    std::vector<double> out;
    for (const Json& x : v) {
        if (!x.is_number()) {
            issues.push_back(path + "." + k + ": expected an array of numbers");
            return dflt;
        }
        out.push_back(x.get<double>());
    }
    return out;
}

Cube parse_cube(const Json& o, const std::string& path, std::vector<std::string>& issues) {
    reject_unknown(o, path, {"center", "half_width"}, issues);
    std::vector<double> center =
        numbers_or(o, path, "center", {0.0}, issues, true);
    if (center.empty()) {
        issues.push_back(path + ".center: must be nonempty");
        center = {0.0};
    }
    const double hw = num_or(o, path, "half_width", 1.0, issues, true);
    try {
        return make_cube(center, hw);
    } catch (const std::exception& e) {
        issues.push_back(path + ": " + e.what());
        return make_cube({0.0}, 1.0);
    }
}

TwoParticleBox parse_pair_box(const Json& o, const std::string& path,
                              std::vector<std::string>& issues) {
    reject_unknown(o, path, {"factor1", "factor2"}, issues);
    Cube f1 = o.is_object() && o.contains("factor1")
                  ? parse_cube(o.at("factor1"), path + ".factor1", issues)
                  : (issues.push_back(path + ".factor1: required"), make_cube({0.0}, 1.0));
    Cube f2 = o.is_object() && o.contains("factor2")
                  ? parse_cube(o.at("factor2"), path + ".factor2", issues)
                  : f1;
    try {
        return make_box(f1, f2);
    } catch (const std::exception& e) {
        issues.push_back(path + ": " + e.what());
        return make_box(f1, f1);
    }
}

BumpProfile parse_profile(const Json& o, const std::string& path,
                          std::vector<std::string>& issues) {
    reject_unknown(o, path, {"kind", "range", "scale"}, issues);
    const std::string kind = str_or(o, path, "kind", "tent", issues);
    BumpKind bk = BumpKind::tent;
    if (kind == "indicator")
        bk = BumpKind::indicator;
    else if (kind == "tent")
        bk = BumpKind::tent;
    else if (kind == "smooth_compact")
        bk = BumpKind::smooth_compact;
    else
        issues.push_back(path + ".kind: unknown profile '" + kind + "'");
    const double range = num_or(o, path, "range", 1.0, issues);
    const double scale = num_or(o, path, "scale", 1.0, issues);
    try {
        return make_profile(bk, range, scale);
    } catch (const std::exception& e) {
        issues.push_back(path + ": " + e.what());
        return make_profile(BumpKind::tent, 1.0, 1.0);
    }
}

AmplitudeEnsemble parse_ensemble(const Json& o, const std::string& path,
                                 std::vector<std::string>& issues) {
    reject_unknown(o, path, {"kind", "bound", "signed", "coupling"}, issues);
    const std::string kind = str_or(o, path, "kind", "iid_uniform", issues);
    EnsembleKind ek = EnsembleKind::iid_uniform;
    if (kind == "iid_uniform")
        ek = EnsembleKind::iid_uniform;
    else if (kind == "iid_bounded_density")
        ek = EnsembleKind::iid_bounded_density;
    else if (kind == "markov_clipped")
        ek = EnsembleKind::markov_clipped;
    else
        issues.push_back(path + ".kind: unknown ensemble '" + kind + "'");
    const double bound = num_or(o, path, "bound", 1.0, issues);
    const bool sgn = bool_or(o, path, "signed", false, issues);
    const double coupling = num_or(o, path, "coupling", 0.0, issues);
    try {
        return make_ensemble(ek, bound, sgn, coupling);
    } catch (const std::exception& e) {
        issues.push_back(path + ": " + e.what());
        return make_ensemble(EnsembleKind::iid_uniform, 1.0);
    }
}

InteractionSpec parse_interaction(const Json& o, const std::string& path,
                                  std::vector<std::string>& issues) {
    reject_unknown(o, path, {"kind", "strength", "range"}, issues);
    const std::string kind = str_or(o, path, "kind", "zero", issues);
    InteractionKind ik = InteractionKind::zero;
    if (kind == "zero")
        ik = InteractionKind::zero;
    else if (kind == "square_well")
        ik = InteractionKind::square_well;
    else if (kind == "smoothed_core")
        ik = InteractionKind::smoothed_core;
    else
        issues.push_back(path + ".kind: unknown interaction '" + kind + "'");
    const double strength = num_or(o, path, "strength", 0.0, issues);
    const double range = num_or(o, path, "range", 1.0, issues);
    try {
        return make_interaction(ik, strength, range);
    } catch (const std::exception& e) {
        issues.push_back(path + ": " + e.what());
        return make_interaction(InteractionKind::zero, 0.0, 1.0);
    }
}

HamiltonianSpec parse_hamiltonian(const Json& o, const std::string& path,
                                  std::vector<std::string>& issues) {
    reject_unknown(o, path,
                   {"particles", "factor1", "factor2", "spacing", "mass1", "mass2", "interaction",
                    "profile", "ensemble"},
                   issues);
    HamiltonianSpec s;
    s.particles = static_cast<int>(int_or(o, path, "particles", 2, issues));
    Cube f1 = o.is_object() && o.contains("factor1")
                  ? parse_cube(o.at("factor1"), path + ".factor1", issues)
                  : (issues.push_back(path + ".factor1: required"), make_cube({0.0}, 1.0));
    Cube f2 = o.is_object() && o.contains("factor2")
                  ? parse_cube(o.at("factor2"), path + ".factor2", issues)
                  : f1;
    try {
        s.box = make_box(f1, f2);
    } catch (const std::exception& e) {
        issues.push_back(path + ": " + e.what());
        s.box = make_box(f1, f1);
    }
    s.spacing = num_or(o, path, "spacing", 0.25, issues);
    s.mass1 = num_or(o, path, "mass1", 1.0, issues);
    s.mass2 = num_or(o, path, "mass2", 1.0, issues);
    if (o.is_object() && o.contains("interaction"))
        s.interaction = parse_interaction(o.at("interaction"), path + ".interaction", issues);
    if (o.is_object() && o.contains("profile"))
        s.profile = parse_profile(o.at("profile"), path + ".profile", issues);
    if (o.is_object() && o.contains("ensemble"))
        s.ensemble = parse_ensemble(o.at("ensemble"), path + ".ensemble", issues);
    return s;
}

SpectrumRoute parse_route(const Json& doc, std::vector<std::string>& issues) {
    const std::string r = str_or(doc, "$", "route", "automatic", issues);
    if (r == "automatic") return SpectrumRoute::automatic;
    if (r == "separable") return SpectrumRoute::separable;
    if (r == "general_dense") return SpectrumRoute::general_dense;
    if (r == "general_iterative") return SpectrumRoute::general_iterative;
    issues.push_back("$.route: unknown route '" + r + "'");
    return SpectrumRoute::automatic;
}

SolverOptions parse_solver(const Json& doc, std::vector<std::string>& issues) {
    SolverOptions opt;
    if (!doc.is_object() || !doc.contains("solver")) return opt;
    const Json& o = doc.at("solver");
    reject_unknown(o, "$.solver", {"tol", "max_basis", "max_restarts", "dense_cutoff", "start_seed"},
                   issues);
    opt.tol = num_or(o, "$.solver", "tol", opt.tol, issues);
    opt.max_basis = static_cast<int>(int_or(o, "$.solver", "max_basis", opt.max_basis, issues));
    opt.max_restarts =
        static_cast<int>(int_or(o, "$.solver", "max_restarts", opt.max_restarts, issues));
    opt.dense_cutoff = int_or(o, "$.solver", "dense_cutoff", opt.dense_cutoff, issues);
    opt.start_seed = seed_or(o, "$.solver", "start_seed", opt.start_seed, issues);
    return opt;
}

std::vector<Site> parse_sites(const Json& o, const std::string& path,
                              std::vector<std::string>& issues) {
    std::vector<Site> out;
    if (!o.is_array()) {
        issues.push_back(path + ": expected an array of integer points");
        return out;
    }
    for (const Json& p : o) {
        if (!p.is_array() || p.empty()) {
            issues.push_back(path + ": each site must be a nonempty integer array");
            return {};
        }
        Site s;
        for (const Json& c : p) {
            if (!c.is_number_integer() && !c.is_number_unsigned()) {
                issues.push_back(path + ": each site must be a nonempty integer array");
                return {};
            }
            s.push_back(c.get<int>());
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

ordered_json apply_overrides(ordered_json doc, const std::vector<std::string>& sets) {
    for (const std::string& kv : sets) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("override must look like path.to.key=value: " + kv);
        const std::string path = kv.substr(0, eq);
        const std::string raw = kv.substr(eq + 1);
        Json value;
        try {
            value = Json::parse(raw);
        } catch (const Json::parse_error&) {
            value = raw;  // bare words stay strings
        }
        Json* cursor = &doc;
        std::size_t start = 0;
        while (true) {
            const std::size_t dot = path.find('.', start);
            const std::string key = path.substr(start, dot - start);
            if (key.empty()) throw std::invalid_argument("override has an empty path step: " + kv);
            if (dot == std::string::npos) {
                (*cursor)[key] = value;
                break;
            }
            if (!cursor->contains(key) || !(*cursor)[key].is_object()) (*cursor)[key] = Json::object();
            cursor = &(*cursor)[key];
            start = dot + 1;
        }
    }
    return doc;
}

ordered_json strip_volatile(const ordered_json& doc) {
    ordered_json out = doc;
    out.erase("threads");
    out.erase("output_dir");
    return out;
}

ParsedExperiment parse_experiment(const ordered_json& doc, std::vector<std::string>& issues) {
    ParsedExperiment e;
    if (!doc.is_object()) {
        issues.push_back("config root must be a JSON object");
        return e;
    }
    e.kind = str_or(doc, "$", "kind", "", issues, true);
    static const std::set<std::string> kinds = {"spectrum",      "wegner-one", "wegner-two",
                                                "dm-check",      "concentration", "separation",
                                                "covering"};
    if (!kinds.count(e.kind)) {
        if (!e.kind.empty()) issues.push_back("$.kind: unsupported experiment '" + e.kind + "'");
        return e;
    }
    e.master_seed = seed_or(doc, "$", "master_seed", 1, issues);
    e.output_dir = str_or(doc, "$", "output_dir", "results", issues);
    e.threads = static_cast<int>(int_or(doc, "$", "threads", 1, issues));
    e.trials = int_or(doc, "$", "trials", 1000, issues);

    if (e.kind == "wegner-one") {
        reject_unknown(doc, "$",
                       {"kind", "master_seed", "output_dir", "threads", "trials", "hamiltonian",
                        "energy", "epsilon", "epsilons", "margin_scale", "energy_exponent",
                        "route", "solver"},
                       issues);
        WegnerOneConfig& c = e.wegner_one;
        if (doc.contains("hamiltonian"))
            c.spec = parse_hamiltonian(doc.at("hamiltonian"), "$.hamiltonian", issues);
        else
            issues.push_back("$.hamiltonian: required");
        c.energy = num_or(doc, "$", "energy", 0.0, issues, true);
        c.epsilon = num_or(doc, "$", "epsilon", 0.01, issues, true);
        e.epsilons = numbers_or(doc, "$", "epsilons", {}, issues);
        c.margin_scale = num_or(doc, "$", "margin_scale", 2.0, issues);
        c.energy_exponent = num_or(doc, "$", "energy_exponent", -1.0, issues);
        c.trials = e.trials;
        c.master_seed = e.master_seed;
        c.threads = e.threads;
        c.engine.route = parse_route(doc, issues);
        c.engine.solver = parse_solver(doc, issues);
    } else if (e.kind == "wegner-two") {
        reject_unknown(doc, "$",
                       {"kind", "master_seed", "output_dir", "threads", "trials", "hamiltonian",
                        "second", "interval", "epsilon", "epsilons", "margin_scale", "multiplier",
                        "route", "solver"},
                       issues);
        WegnerTwoConfig& c = e.wegner_two;
        if (doc.contains("hamiltonian"))
            c.spec = parse_hamiltonian(doc.at("hamiltonian"), "$.hamiltonian", issues);
        else
            issues.push_back("$.hamiltonian: required");
        if (doc.contains("second"))
            c.box2 = parse_pair_box(doc.at("second"), "$.second", issues);
        else
            issues.push_back("$.second: required");
        const auto interval = numbers_or(doc, "$", "interval", {0.0, 1.0}, issues, true);
        if (interval.size() == 2) {
            c.interval_lo = interval[0];
            c.interval_hi = interval[1];
        } else {
            issues.push_back("$.interval: expected [low, high]");
        }
        c.epsilon = num_or(doc, "$", "epsilon", 0.01, issues, true);
        e.epsilons = numbers_or(doc, "$", "epsilons", {}, issues);
        c.margin_scale = num_or(doc, "$", "margin_scale", 2.0, issues);
        c.distance_multiplier = num_or(doc, "$", "multiplier", 8.0, issues);
        c.trials = e.trials;
        c.master_seed = e.master_seed;
        c.threads = e.threads;
        c.engine.route = parse_route(doc, issues);
        c.engine.solver = parse_solver(doc, issues);
    } else if (e.kind == "dm-check") {
        reject_unknown(doc, "$",
                       {"kind", "master_seed", "output_dir", "threads", "trials", "hamiltonian",
                        "shift", "shift_set", "custom_sites", "levels", "route", "solver"},
                       issues);
        DmShiftConfig& c = e.dm;
        if (doc.contains("hamiltonian"))
            c.spec = parse_hamiltonian(doc.at("hamiltonian"), "$.hamiltonian", issues);
        else
            issues.push_back("$.hamiltonian: required");
        c.shift = num_or(doc, "$", "shift", 0.5, issues, true);
        const std::string set = str_or(doc, "$", "shift_set", "full_support", issues);
        if (set == "full_support")
            c.set = ShiftSet::full_support;
        else if (set == "projection_1")
            c.set = ShiftSet::projection_1;
        else if (set == "projection_2")
            c.set = ShiftSet::projection_2;
        else if (set == "custom")
            c.set = ShiftSet::custom;
        else
            issues.push_back("$.shift_set: unknown subset '" + set + "'");
        if (doc.contains("custom_sites"))
            c.custom_sites = parse_sites(doc.at("custom_sites"), "$.custom_sites", issues);
        c.levels = static_cast<int>(int_or(doc, "$", "levels", 8, issues));
        c.trials = e.trials;
        c.master_seed = e.master_seed;
        c.threads = e.threads;
        c.engine.route = parse_route(doc, issues);
        c.engine.solver = parse_solver(doc, issues);
    } else if (e.kind == "concentration") {
        reject_unknown(doc, "$",
                       {"kind", "master_seed", "output_dir", "threads", "trials", "function",
                        "coords", "density", "window_lo", "epsilon"},
                       issues);
        ConcentrationConfig& c = e.concentration;
        const std::string fn = str_or(doc, "$", "function", "coordinate_max", issues);
        if (fn == "coordinate_max")
            c.fn = ConcentrationFunction::coordinate_max;
        else if (fn == "coordinate_sum")
            c.fn = ConcentrationFunction::coordinate_sum;
        else if (fn == "min_plus_mean")
            c.fn = ConcentrationFunction::min_plus_mean;
        else
            issues.push_back("$.function: unknown statistic '" + fn + "'");
        c.coords = static_cast<int>(int_or(doc, "$", "coords", 4, issues));
        c.density = num_or(doc, "$", "density", 1.0, issues);
        c.window_lo = num_or(doc, "$", "window_lo", 0.25, issues);
        c.epsilon = num_or(doc, "$", "epsilon", 0.05, issues, true);
        c.trials = e.trials;
        c.master_seed = e.master_seed;
        c.threads = e.threads;
    } else if (e.kind == "separation") {
        reject_unknown(doc, "$",
                       {"kind", "master_seed", "output_dir", "threads", "trials", "first",
                        "second", "reach", "multiplier"},
                       issues);
        if (doc.contains("first"))
            e.separation_first = parse_pair_box(doc.at("first"), "$.first", issues);
        else
            issues.push_back("$.first: required");
        if (doc.contains("second"))
            e.separation_second = parse_pair_box(doc.at("second"), "$.second", issues);
        else
            issues.push_back("$.second: required");
        e.separation_reach = num_or(doc, "$", "reach", 1.0, issues);
        e.separation_multiplier = num_or(doc, "$", "multiplier", 8.0, issues);
    } else if (e.kind == "covering") {
        reject_unknown(doc, "$",
                       {"kind", "master_seed", "output_dir", "threads", "trials", "profile",
                        "cube", "grid_step"},
                       issues);
        if (doc.contains("profile"))
            e.covering_profile = parse_profile(doc.at("profile"), "$.profile", issues);
        else
            issues.push_back("$.profile: required");
        if (doc.contains("cube"))
            e.covering_cube = parse_cube(doc.at("cube"), "$.cube", issues);
        else
            issues.push_back("$.cube: required");
        e.covering_grid_step = num_or(doc, "$", "grid_step", 0.1, issues);
    } else if (e.kind == "spectrum") {
        reject_unknown(doc, "$",
                       {"kind", "master_seed", "output_dir", "threads", "trials", "hamiltonian",
                        "count", "threshold", "trial", "route", "solver"},
                       issues);
        if (doc.contains("hamiltonian"))
            e.spectrum_spec = parse_hamiltonian(doc.at("hamiltonian"), "$.hamiltonian", issues);
        else
            issues.push_back("$.hamiltonian: required");
        e.spectrum_count = int_or(doc, "$", "count", 10, issues);
        if (doc.contains("threshold")) {
            e.spectrum_by_threshold = true;
            e.spectrum_threshold = num_or(doc, "$", "threshold", 0.0, issues);
            if (doc.contains("count"))
                issues.push_back("$: give either count or threshold, not both");
        }
        e.spectrum_trial = seed_or(doc, "$", "trial", 0, issues);
        e.spectrum_engine.route = parse_route(doc, issues);
        e.spectrum_engine.solver = parse_solver(doc, issues);
    }
    return e;
}

namespace {

void check_hamiltonian(const HamiltonianSpec& s, std::vector<std::string>& issues,
                       bool needs_covering) {
    if (s.particles != 1 && s.particles != 2)
        issues.push_back("hamiltonian.particles: must be 1 or 2");
    if (s.dim() < 1 || s.dim() > 3)
        issues.push_back("hamiltonian: factor dimension must be 1, 2, or 3");
    if (!(s.spacing > 0.0)) issues.push_back("hamiltonian.spacing: must be positive");
    if (!(s.mass1 > 0.0) || !(s.mass2 > 0.0))
        issues.push_back("hamiltonian: masses must be positive");
    try {
        if (s.particles == 2)
            build_grid(s.box, s.spacing);
        else
            build_grid(s.box.factor1, s.spacing);
    } catch (const std::exception& e) {
        issues.push_back(std::string("hamiltonian: ") + e.what());
    }
    if (needs_covering && s.dim() >= 1 && s.dim() <= 3) {
        const CoveringReport r1 = verify_covering(s.profile, s.box.factor1);
        if (!r1.holds)
            issues.push_back("covering fails on the first factor (min sum " +
                             fmt_num(r1.min_sum) + ")");
        if (s.particles == 2) {
            const CoveringReport r2 = verify_covering(s.profile, s.box.factor2);
            if (!r2.holds)
                issues.push_back("covering fails on the second factor (min sum " +
                                 fmt_num(r2.min_sum) + ")");
        }
    }
}

}  // namespace

std::vector<std::string> validate_experiment(const ParsedExperiment& e) {
    std::vector<std::string> issues;
    if (e.threads < 1 || e.threads > 64) issues.push_back("threads: must be in [1, 64]");
    if (e.trials < 1) issues.push_back("trials: must be at least 1");
    const auto check_epsilons = [&issues](const std::vector<double>& eps) {
        for (double x : eps)
            if (!(x > 0.0) || !(x < 1.0))
                issues.push_back("epsilons: each entry must lie in (0, 1)");
        for (std::size_t i = 1; i < eps.size(); ++i)
            if (std::abs(eps[i] - 0.5 * eps[i - 1]) > 1e-12 * eps[i - 1])
                issues.push_back("epsilons: entries must halve from entry to entry");
        if (eps.size() > 32) issues.push_back("epsilons: at most 32 entries");
    };
    if (e.kind == "wegner-one") {
        check_hamiltonian(e.wegner_one.spec, issues, true);
        if (!(e.wegner_one.epsilon > 0.0) || !(e.wegner_one.epsilon < 1.0))
            issues.push_back("epsilon: hypothesis requires a width in (0, 1)");
        if (!std::isfinite(e.wegner_one.energy)) issues.push_back("energy: must be finite");
        if (!(e.wegner_one.margin_scale >= 0.0))
            issues.push_back("margin_scale: must be nonnegative");
        check_epsilons(e.epsilons);
        if (e.wegner_one.spec.particles != 2)
            issues.push_back("wegner-one: needs a two-particle hamiltonian");
    } else if (e.kind == "wegner-two") {
        check_hamiltonian(e.wegner_two.spec, issues, true);
        HamiltonianSpec probe = e.wegner_two.spec;
        probe.box = e.wegner_two.box2;
        check_hamiltonian(probe, issues, true);
        if (e.wegner_two.spec.particles != 2)
            issues.push_back("wegner-two: needs a two-particle hamiltonian");
        if (!(e.wegner_two.epsilon > 0.0) || !(e.wegner_two.epsilon < 1.0))
            issues.push_back("epsilon: hypothesis requires a width in (0, 1)");
        if (!(e.wegner_two.interval_lo <= e.wegner_two.interval_hi))
            issues.push_back("interval: endpoints out of order");
        check_epsilons(e.epsilons);
        const double reach = e.wegner_two.spec.profile.range;
        if (!is_sufficiently_distant(e.wegner_two.spec.box, e.wegner_two.box2, reach,
                                     e.wegner_two.distance_multiplier)) {
            const double need =
                e.wegner_two.distance_multiplier *
                (std::max({e.wegner_two.spec.box.factor1.half_width,
                           e.wegner_two.spec.box.factor2.half_width,
                           e.wegner_two.box2.factor1.half_width,
                           e.wegner_two.box2.factor2.half_width}) +
                 reach);
            const auto u = center_point(e.wegner_two.spec.box);
            const auto v = center_point(e.wegner_two.box2);
            const double got = std::min(dist_max(u, v), dist_max(swap_halves(u), v));
            issues.push_back("boxes are not sufficiently distant: need center distance > " +
                             fmt_num(need) + ", found " + fmt_num(got));
        }
    } else if (e.kind == "dm-check") {
        check_hamiltonian(e.dm.spec, issues, true);
        if (e.dm.shift < 0.0) issues.push_back("shift: must be nonnegative");
        if (e.dm.levels < 1) issues.push_back("levels: must be at least 1");
        if (e.dm.set == ShiftSet::custom && e.dm.custom_sites.empty())
            issues.push_back("custom_sites: required when shift_set is custom");
    } else if (e.kind == "concentration") {
        if (e.concentration.coords < 1 || e.concentration.coords > 4096)
            issues.push_back("coords: must be in [1, 4096]");
        if (!(e.concentration.density > 0.0)) issues.push_back("density: must be positive");
        if (e.concentration.epsilon < 0.0) issues.push_back("epsilon: must be nonnegative");
        if (e.concentration.fn == ConcentrationFunction::min_plus_mean && e.trials < 1)
            issues.push_back("trials: this statistic has no closed form, sampling required");
    } else if (e.kind == "separation") {
        if (e.separation_first.dim() != e.separation_second.dim())
            issues.push_back("separation: boxes must share a dimension");
        if (!(e.separation_reach >= 0.0)) issues.push_back("reach: must be nonnegative");
        if (!(e.separation_multiplier > 0.0)) issues.push_back("multiplier: must be positive");
        else if (!is_sufficiently_distant(e.separation_first, e.separation_second,
                                          e.separation_reach, e.separation_multiplier))
            issues.push_back("boxes are not sufficiently distant for the case classification");
    } else if (e.kind == "covering") {
        if (!(e.covering_grid_step > 0.0) || e.covering_grid_step > 1.0)
            issues.push_back("grid_step: must be in (0, 1]");
    } else if (e.kind == "spectrum") {
        check_hamiltonian(e.spectrum_spec, issues, false);
        if (!e.spectrum_by_threshold && e.spectrum_count < 1)
            issues.push_back("count: must be at least 1");
    }
    return issues;
}

}  // namespace anderson
