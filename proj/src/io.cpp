#include "holosort/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "holosort/util.hpp"

namespace holosort::io {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_pgm(const optics::PhaseMap& map, const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "P5\n# phase = 2*pi*v/256, row-major from l = -My/2\n"
        << map.mx << " " << map.my << "\n255\n";
    std::vector<std::uint8_t> bytes(map.values.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        long v = std::lround(map.values[i] * 256.0 / two_pi);
        bytes[i] = static_cast<std::uint8_t>(((v % 256) + 256) % 256);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

optics::PhaseMap read_pgm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string magic;
    in >> magic;
    if (magic != "P5") throw std::runtime_error("not a binary PGM: " + path.string());
    auto next_token = [&in]() {
        std::string tok;
        for (;;) {
            if (!(in >> tok)) throw std::runtime_error("truncated PGM header");
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
    };
    int mx = std::stoi(next_token());
    int my = std::stoi(next_token());
    int maxval = std::stoi(next_token());
    if (maxval != 255) throw std::runtime_error("unsupported PGM maxval");
    in.get();  // single whitespace after maxval
    optics::PhaseMap map(mx, my);
    std::vector<std::uint8_t> bytes(map.values.size());
    in.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!in) throw std::runtime_error("truncated PGM data");
    for (std::size_t i = 0; i < bytes.size(); ++i)
        map.values[i] = two_pi * bytes[i] / 256.0;
    return map;
}

void write_field_csv(const optics::ComplexField& field, const fs::path& path) {
    std::ostringstream out;
    out << "m,n,re,im\n";
    for (int n = -field.my / 2; n < field.my / 2; ++n)
        for (int m = -field.mx / 2; m < field.mx / 2; ++m) {
            const auto v = field.at(m, n);
            out << m << "," << n << "," << v.real() << "," << v.imag() << "\n";
        }
    write_text(path, out.str());
}

namespace {

json pattern_json(const optics::TweezerPattern& pattern) {
    json spots = json::array();
    for (const auto& t : pattern.tweezers)
        spots.push_back({{"m", t.m}, {"n", t.n}, {"amp", t.amp}, {"phase", t.phase}});
    return json{{"normalized", pattern.normalized}, {"tweezers", spots}};
}

optics::TweezerPattern pattern_from(const json& j) {
    optics::TweezerPattern p;
    p.normalized = j.value("normalized", false);
    for (const auto& s : j.at("tweezers"))
        p.tweezers.push_back({s.at("m").get<int>(), s.at("n").get<int>(),
                              s.at("amp").get<double>(), s.at("phase").get<double>()});
    return p;
}

json config_json(const optics::OpticalConfig& cfg) {
    return json{{"mx", cfg.mx},
                {"my", cfg.my},
                {"lambda", cfg.lambda},
                {"focal", cfg.focal},
                {"m_demag", cfg.m_demag},
                {"chip_len", cfg.chip_len},
                {"dx", cfg.dx},
                {"dy", cfg.dy},
                {"illumination",
                 cfg.illumination == optics::Illumination::Uniform ? "uniform"
                                                                   : "gaussian"},
                {"gaussian_waist", cfg.gaussian_waist}};
}

optics::OpticalConfig config_from(const json& j) {
    optics::OpticalConfig cfg;
    cfg.mx = j.at("mx").get<int>();
    cfg.my = j.at("my").get<int>();
    cfg.lambda = j.at("lambda").get<double>();
    cfg.focal = j.at("focal").get<double>();
    cfg.m_demag = j.at("m_demag").get<double>();
    cfg.chip_len = j.at("chip_len").get<double>();
    cfg.dx = j.at("dx").get<int>();
    cfg.dy = j.at("dy").get<int>();
    cfg.illumination = j.at("illumination").get<std::string>() == "gaussian"
                           ? optics::Illumination::Gaussian
                           : optics::Illumination::Uniform;
    cfg.gaussian_waist = j.at("gaussian_waist").get<double>();
    return cfg;
}

}  // namespace

std::string optical_config_to_json(const optics::OpticalConfig& cfg) {
    return config_json(cfg).dump(2) + "\n";
}

optics::OpticalConfig optical_config_from_json(const std::string& text) {
    return config_from(json::parse(text));
}

std::string config_hash(const optics::OpticalConfig& cfg) {
    return fnv1a_hex(config_json(cfg).dump());
}

std::string pattern_to_json(const optics::TweezerPattern& pattern,
                            const std::string& hash) {
    json j = pattern_json(pattern);
    j["schema"] = "holosort.pattern/1";
    j["config_hash"] = hash;
    return j.dump(2) + "\n";
}

optics::TweezerPattern pattern_from_json(const std::string& text) {
    return pattern_from(json::parse(text));
}

std::string occupancy_to_json(const std::vector<bool>& occ, double p_load,
                              std::uint64_t seed) {
    json j{{"schema", "holosort.occupancy/1"},
           {"p_load", p_load},
           {"seed", seed},
           {"occupied", json::array()}};
    for (bool b : occ) j["occupied"].push_back(b);
    return j.dump(2) + "\n";
}

std::vector<bool> occupancy_from_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<bool> occ;
    for (const auto& b : j.at("occupied")) occ.push_back(b.get<bool>());
    return occ;
}

std::string wgs_result_to_json(const wgs::WgsResult& result,
                               const optics::OpticalConfig& cfg,
                               const std::string& hologram_pgm) {
    json j{{"schema", "holosort.wgs/1"},
           {"config", config_json(cfg)},
           {"config_hash", config_hash(cfg)},
           {"uniformity", result.uniformity},
           {"iters_used", result.iters_used},
           {"converged", result.converged},
           {"achieved", pattern_json(result.achieved)},
           {"hologram_pgm", hologram_pgm}};
    return j.dump(2) + "\n";
}

WgsResultFile wgs_result_from_json(const std::string& text) {
    json j = json::parse(text);
    WgsResultFile out;
    out.cfg = config_from(j.at("config"));
    out.result.achieved = pattern_from(j.at("achieved"));
    out.result.uniformity = j.at("uniformity").get<double>();
    out.result.iters_used = j.at("iters_used").get<int>();
    out.result.converged = j.at("converged").get<bool>();
    out.hologram_pgm = j.value("hologram_pgm", "");
    return out;
}

std::string plan_to_json(const sequencer::RearrangementPlan& plan) {
    json pairs = json::array();
    for (const auto& [si, ti] : plan.assignment.pairs)
        pairs.push_back({{"source", si}, {"target", ti}});
    json moves = json::array();
    for (const auto& mv : plan.moves)
        moves.push_back({{"initial_index", mv.initial_index},
                         {"final_index", mv.final_index}});
    json occ = json::array();
    for (bool b : plan.occupancy) occ.push_back(b);
    json j{{"schema", "holosort.plan/1"},
           {"config_hash", config_hash(plan.cfg)},
           {"assignment",
            {{"pairs", pairs},
             {"total_cost", plan.assignment.total_cost},
             {"max_move", plan.assignment.max_move}}},
           {"moves", moves},
           {"occupancy", occ},
           {"move_steps", plan.move_steps},
           {"ramp_steps", plan.settings.ramp_steps},
           {"psi_slip", plan.settings.psi_slip}};
    return j.dump(2) + "\n";
}

void write_sequence(const sequencer::HologramSequence& seq,
                    const optics::OpticalConfig& cfg, const fs::path& dir) {
    fs::create_directories(dir);
    json frames = json::array();
    for (std::size_t f = 0; f < seq.frames.size(); ++f) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%03zu.pgm", f);
        write_pgm(seq.frames[f].hologram, dir / name);
        json ids = json::array();
        for (int id : seq.frames[f].tweezer_ids) ids.push_back(id);
        frames.push_back({{"file", name},
                          {"pattern", pattern_json(seq.frames[f].pattern)},
                          {"tweezer_ids", ids}});
    }
    json j{{"schema", "holosort.sequence/1"},
           {"config", config_json(cfg)},
           {"config_hash", config_hash(cfg)},
           {"ramp_steps", seq.ramp_steps},
           {"move_steps", seq.move_steps},
           {"frames", frames}};
    write_text(dir / "sequence.json", j.dump(2) + "\n");
}

sequencer::HologramSequence read_sequence(const fs::path& dir,
                                          optics::OpticalConfig& cfg_out) {
    json j = json::parse(read_text(dir / "sequence.json"));
    cfg_out = config_from(j.at("config"));
    sequencer::HologramSequence seq;
    seq.ramp_steps = j.at("ramp_steps").get<int>();
    seq.move_steps = j.at("move_steps").get<int>();
    for (const auto& fj : j.at("frames")) {
        sequencer::Frame frame;
        frame.pattern = pattern_from(fj.at("pattern"));
        for (const auto& id : fj.at("tweezer_ids"))
            frame.tweezer_ids.push_back(id.get<int>());
        // Re-synthesize from the full-precision pattern; the PGM is lossy.
        frame.hologram = optics::pattern_to_hologram(frame.pattern, cfg_out);
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

void write_trace_csv(const flicker::FlickerTrace& trace, const fs::path& path) {
    std::ostringstream out;
    out << "transition,tau,tweezer_id,rel_intensity,phase\n";
    for (const auto& s : trace.samples)
        out << s.transition << "," << s.tau << "," << s.probe_id << ","
            << s.rel_intensity << "," << s.phase << "\n";
    out << "# settled: frame,tweezer_id,phase\n";
    for (const auto& s : trace.settled)
        out << s.frame << "," << s.probe_id << "," << s.phase << "\n";
    write_text(path, out.str());
}

void write_scan_csv(const std::vector<flicker::SlipScanRow>& rows,
                    const fs::path& path) {
    std::ostringstream out;
    out << "dpsi,min_intensity,survival_proxy\n";
    for (const auto& r : rows)
        out << r.dpsi << "," << r.min_intensity << "," << r.survival_proxy << "\n";
    write_text(path, out.str());
}

void write_bench_csv(const std::vector<bench::BenchRow>& rows,
                     const fs::path& path) {
    std::ostringstream out;
    out << "n_tw,stage,mean_ms,sdev_ms,mode\n";
    for (const auto& r : rows) {
        auto line = [&](const char* stage, const bench::StageStats& s) {
            out << r.n_tw << "," << stage << "," << s.mean_ms << "," << s.sdev_ms
                << "," << r.mode << "\n";
        };
        line("update", r.update);
        line("compute", r.compute);
        line("transfer", r.transfer);
        line("display", r.display);
        line("total", r.total);
    }
    write_text(path, out.str());
}

void write_mc_report(const montecarlo::McReport& report,
                     const montecarlo::McConfig& cfg, const fs::path& json_path,
                     const fs::path& csv_path) {
    json j{{"schema", "holosort.mc/1"},
           {"trials", report.trials},
           {"defect_free", report.defect_free},
           {"defect_free_fraction", report.defect_free_fraction},
           {"mean_filling", report.mean_filling},
           {"mean_cycles_used", report.mean_cycles_used},
           {"discarded_loads", report.discarded_loads},
           {"config",
            {{"p_load", cfg.p_load},
             {"cycle_success", cfg.cycle_success},
             {"image_survival", cfg.image_survival},
             {"n_cycles", cfg.n_cycles},
             {"n_initial", cfg.n_initial},
             {"n_target", cfg.n_target},
             {"trials", cfg.trials},
             {"rng_seed", cfg.rng_seed},
             {"postselect_loading", cfg.postselect_loading},
             {"reload_between_cycles", cfg.reload_between_cycles},
             {"stop_when_complete", cfg.stop_when_complete}}}};
    write_text(json_path, j.dump(2) + "\n");

    std::ostringstream out;
    out << "missing_atoms,trials\n";
    for (std::size_t i = 0; i < report.missing_histogram.size(); ++i)
        out << i << "," << report.missing_histogram[i] << "\n";
    write_text(csv_path, out.str());
}

FidelityFile fidelity_from_json(const std::string& text) {
    json j = json::parse(text);
    FidelityFile out;
    out.p1 = j.value("p1", 0.45);
    auto parse_arr = [](const json& a) {
        stats::FidelityParams p;
        p.f0 = a.at("F0").get<double>();
        p.f1 = a.at("F1").get<double>();
        p.s0 = a.at("S0").get<double>();
        p.f0_err = a.value("F0_err", 0.0);
        p.f1_err = a.value("F1_err", 0.0);
        p.s0_err = a.value("S0_err", 0.0);
        return p;
    };
    out.arr36 = parse_arr(j.at("arrays").at("36"));
    out.arr16 = parse_arr(j.at("arrays").at("16"));
    return out;
}

void write_manifest(const fs::path& dir, const std::string& command,
                    const std::vector<std::string>& argv,
                    const std::string& hash,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs,
                    std::uint64_t seed) {
    auto now = std::chrono::system_clock::now();
    auto t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    json j{{"schema", "holosort.manifest/1"},
           {"command", command},
           {"argv", argv},
           {"config_hash", hash},
           {"inputs", inputs},
           {"outputs", outputs},
           {"formats",
            {{"pgm", "P5 maxval 255; pixel v encodes phase 2*pi*v/256; "
                     "row-major from l = -My/2, column k from -Mx/2"}}},
           {"seed", seed},
           {"version", "0.1.0"},
           {"wallclock_utc", stamp}};
    write_text(dir / "manifest.json", j.dump(2) + "\n");
}

}  // namespace holosort::io
