#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "holosort/flicker.hpp"
#include "holosort/montecarlo.hpp"
#include "holosort/bench.hpp"
#include "holosort/optics.hpp"
#include "holosort/sequencer.hpp"
#include "holosort/stats.hpp"
#include "holosort/wgs.hpp"

namespace holosort::io {

// 8-bit binary PGM; pixel value v encodes phase 2*pi*v/256.
void write_pgm(const optics::PhaseMap& map, const std::filesystem::path& path);
optics::PhaseMap read_pgm(const std::filesystem::path& path);

// Debug CSV of a field: m, n, re, im.
void write_field_csv(const optics::ComplexField& field,
                     const std::filesystem::path& path);

std::string pattern_to_json(const optics::TweezerPattern& pattern,
                            const std::string& config_hash);
optics::TweezerPattern pattern_from_json(const std::string& text);

std::string occupancy_to_json(const std::vector<bool>& occ, double p_load,
                              std::uint64_t seed);
std::vector<bool> occupancy_from_json(const std::string& text);

std::string wgs_result_to_json(const wgs::WgsResult& result,
                               const optics::OpticalConfig& cfg,
                               const std::string& hologram_pgm);
// Loads the achieved/target patterns and grid config; the hologram itself is
// not reconstructed from the 8-bit PGM.
struct WgsResultFile {
    wgs::WgsResult result;
    optics::OpticalConfig cfg;
    std::string hologram_pgm;
};
WgsResultFile wgs_result_from_json(const std::string& text);

std::string plan_to_json(const sequencer::RearrangementPlan& plan);

// Sequence directory: numbered frame PGMs plus sequence.json carrying the
// exact per-frame patterns (full precision; the PGMs are 8-bit views).
void write_sequence(const sequencer::HologramSequence& seq,
                    const optics::OpticalConfig& cfg,
                    const std::filesystem::path& dir);
sequencer::HologramSequence read_sequence(const std::filesystem::path& dir,
                                          optics::OpticalConfig& cfg_out);

void write_trace_csv(const flicker::FlickerTrace& trace,
                     const std::filesystem::path& path);
void write_scan_csv(const std::vector<flicker::SlipScanRow>& rows,
                    const std::filesystem::path& path);
void write_bench_csv(const std::vector<bench::BenchRow>& rows,
                     const std::filesystem::path& path);
void write_mc_report(const montecarlo::McReport& report,
                     const montecarlo::McConfig& cfg,
                     const std::filesystem::path& json_path,
                     const std::filesystem::path& csv_path);

std::string optical_config_to_json(const optics::OpticalConfig& cfg);
optics::OpticalConfig optical_config_from_json(const std::string& text);

// Table-1-shaped fidelity file: {"p1": ..., "arrays": {"36": {...}, "16": {...}}}
struct FidelityFile {
    double p1 = 0.45;
    stats::FidelityParams arr36;
    stats::FidelityParams arr16;
};
FidelityFile fidelity_from_json(const std::string& text);

std::string config_hash(const optics::OpticalConfig& cfg);

// Run manifest; exactly one per artifact directory. wallclock_utc is the
// only field allowed to differ between identical reruns.
void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const std::vector<std::string>& argv,
                    const std::string& config_hash,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs,
                    std::uint64_t seed);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace holosort::io
