#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "anderson/experiments.hpp"

namespace anderson {

using ordered_json = nlohmann::ordered_json;

// Round-trip-exact decimal text for doubles, used by every CSV cell.
std::string format_double(double v);

// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex16(const std::string& data);

std::string output_basename(const std::string& kind, std::uint64_t seed,
                            const std::string& hash16);

std::string sweep_csv(const SweepResult& r);
std::string sweep_plot_csv(const SweepResult& r);
ordered_json sweep_json(const SweepResult& r);

std::string spectrum_csv(const Spectrum& s);
ordered_json spectrum_json(const Spectrum& s);

std::string dm_csv(const DmShiftSummary& s);
ordered_json dm_json(const DmShiftSummary& s);

ordered_json concentration_json(const ConcentrationReport& r);
ordered_json separation_json(const SeparationVerdict& v);
ordered_json covering_json(const CoveringReport& r);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace anderson
