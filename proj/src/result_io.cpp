#include "anderson/result_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace anderson {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fnv1a_hex16(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string output_basename(const std::string& kind, std::uint64_t seed,
                            const std::string& hash16) {
    return kind + "_seed" + std::to_string(seed) + "_" + hash16;
}

std::string sweep_csv(const SweepResult& r) {
    std::string out =
        "epsilon,hits,trials,excluded,estimate,ci_lo,ci_hi,bound_rhs,fitted_c,fitted_bound,"
        "implied_c,dominated\n";
    for (const SweepRow& row : r.rows) {
        out += format_double(row.epsilon) + ',' + std::to_string(row.hits) + ',' +
               std::to_string(r.trials) + ',' + std::to_string(row.excluded) + ',' +
               format_double(row.estimate) + ',' + format_double(row.ci_lo) + ',' +
               format_double(row.ci_hi) + ',' + format_double(row.bound_rhs) + ',' +
               format_double(r.fitted_c) + ',' + format_double(row.fitted_bound) + ',' +
               format_double(row.implied_c) + ',' + (row.dominated ? "1" : "0") + '\n';
    }
    return out;
}

std::string sweep_plot_csv(const SweepResult& r) {
    std::string out = "epsilon,estimate\n";
    for (const SweepRow& row : r.rows)
        out += format_double(row.epsilon) + ',' + format_double(row.estimate) + '\n';
    return out;
}

ordered_json sweep_json(const SweepResult& r) {
    ordered_json j;
    j["trials"] = r.trials;
    j["fitted_c"] = r.fitted_c;
    j["loglog_slope"] = r.loglog_slope;
    j["monotone_hits"] = r.monotone_hits;
    j["all_dominated"] = r.all_dominated;
    j["hypothesis_ok"] = r.hypothesis_ok;
    j["valid"] = r.valid;
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : r.rows) {
        ordered_json o;
        o["epsilon"] = row.epsilon;
        o["hits"] = row.hits;
        o["excluded"] = row.excluded;
        o["estimate"] = row.estimate;
        o["ci_lo"] = row.ci_lo;
        o["ci_hi"] = row.ci_hi;
        o["bound_rhs"] = row.bound_rhs;
        o["fitted_bound"] = row.fitted_bound;
        o["implied_c"] = row.implied_c;
        o["dominated"] = row.dominated;
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string spectrum_csv(const Spectrum& s) {
    std::string out = "index,value,residual\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double r = i < s.residuals.size() ? s.residuals[i] : 0.0;
        out += std::to_string(i) + ',' + format_double(s.values[i]) + ',' + format_double(r) + '\n';
    }
    return out;
}

ordered_json spectrum_json(const Spectrum& s) {
    ordered_json j;
    j["count"] = s.values.size();
    j["converged"] = s.converged;
    j["complete"] = s.complete;
    j["values"] = s.values;
    return j;
}

std::string dm_csv(const DmShiftSummary& s) {
    std::string out = "trial,min_delta\n";
    for (std::size_t i = 0; i < s.min_delta_per_trial.size(); ++i)
        out += std::to_string(i) + ',' + format_double(s.min_delta_per_trial[i]) + '\n';
    return out;
}

ordered_json dm_json(const DmShiftSummary& s) {
    ordered_json j;
    j["subset"] = s.subset;
    j["trials"] = s.trials;
    j["min_delta"] = s.min_delta;
    j["max_delta"] = s.max_delta;
    return j;
}

ordered_json concentration_json(const ConcentrationReport& r) {
    ordered_json j;
    j["bound"] = r.bound;
    j["has_exact"] = r.has_exact;
    if (r.has_exact) j["exact_probability"] = r.exact_probability;
    j["trials"] = r.trials;
    if (r.trials > 0) {
        j["hits"] = r.hits;
        j["estimate"] = r.estimate;
        j["ci_lo"] = r.ci_lo;
        j["ci_hi"] = r.ci_hi;
    }
    j["holds"] = r.holds;
    return j;
}

ordered_json separation_json(const SeparationVerdict& v) {
    ordered_json j;
    ordered_json cases = ordered_json::array();
    for (SeparationCase c : v.cases) cases.push_back(to_string(c));
    j["cases"] = std::move(cases);
    j["kind"] = v.kind();
    return j;
}

ordered_json covering_json(const CoveringReport& r) {
    ordered_json j;
    j["min_sum"] = r.min_sum;
    j["max_sum"] = r.max_sum;
    j["holds"] = r.holds;
    j["argmin"] = r.argmin;
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("short write to " + path);
}

}  // namespace anderson
