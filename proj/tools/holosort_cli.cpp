// holosort: hologram synthesis, rearrangement planning and simulation for
// SLM tweezer arrays. Every subcommand writes its outputs plus a manifest
// under --out; all randomness is seeded and recorded.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holosort/acceptance.hpp"
#include "holosort/assignment.hpp"
#include "holosort/bench.hpp"
#include "holosort/flicker.hpp"
#include "holosort/io.hpp"
#include "holosort/montecarlo.hpp"
#include "holosort/optics.hpp"
#include "holosort/patterns.hpp"
#include "holosort/sequencer.hpp"
#include "holosort/stats.hpp"
#include "holosort/util.hpp"
#include "holosort/wgs.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace holosort;

namespace {

struct CommonOpts {
    std::string out = ".";
    int grid = 1024;
    std::uint64_t seed = 1;
    std::string illumination = "uniform";
    int dx = 0;
    int dy = 0;
};

optics::OpticalConfig make_config(const CommonOpts& c) {
    optics::OpticalConfig cfg;
    cfg.mx = cfg.my = c.grid;
    cfg.dx = c.dx;
    cfg.dy = c.dy;
    cfg.illumination = c.illumination == "gaussian" ? optics::Illumination::Gaussian
                                                    : optics::Illumination::Uniform;
    cfg.validate();
    return cfg;
}

std::vector<std::string> collect_argv(int argc, char** argv) {
    return std::vector<std::string>(argv, argv + argc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SLM tweezer-array hologram toolkit"};
    app.require_subcommand(1);
    auto argv_list = collect_argv(argc, argv);

    CommonOpts common;

    // ---- pattern ---------------------------------------------------------
    auto* cmd_pattern = app.add_subcommand("pattern", "generate a target geometry");
    patterns::GeometrySpec gspec;
    std::string kind = "grid";
    double load_p = -1.0;
    cmd_pattern->add_option("--kind", kind, "grid|circle|kagome|triangular");
    cmd_pattern->add_option("--rows", gspec.rows);
    cmd_pattern->add_option("--cols", gspec.cols);
    cmd_pattern->add_option("--count", gspec.count);
    cmd_pattern->add_option("--spacing", gspec.spacing, "Fourier units");
    cmd_pattern->add_option("--center-m", gspec.center_m);
    cmd_pattern->add_option("--center-n", gspec.center_n);
    cmd_pattern->add_option("--load-p", load_p,
                            "also emit a stochastic occupancy with this probability");
    cmd_pattern->add_option("--out", common.out);
    cmd_pattern->add_option("--grid", common.grid);
    cmd_pattern->add_option("--seed", common.seed);

    // ---- wgs -------------------------------------------------------------
    auto* cmd_wgs = app.add_subcommand("wgs", "synthesize a balanced hologram");
    std::string pattern_path;
    wgs::WgsSettings wgs_settings;
    cmd_wgs->add_option("--pattern", pattern_path)->required();
    cmd_wgs->add_option("--iters", wgs_settings.max_iters);
    cmd_wgs->add_option("--target", wgs_settings.uniformity_target);
    cmd_wgs->add_option("--exponent", wgs_settings.weight_exponent);
    cmd_wgs->add_option("--out", common.out);
    cmd_wgs->add_option("--grid", common.grid);
    cmd_wgs->add_option("--seed", common.seed);
    cmd_wgs->add_option("--illumination", common.illumination, "uniform|gaussian");

    // ---- plan / sequence ---------------------------------------------------
    std::string initial_path, final_path, occupancy_path;
    sequencer::SequencerSettings seq_settings;
    auto add_seq_inputs = [&](CLI::App* cmd) {
        cmd->add_option("--initial", initial_path)->required();
        cmd->add_option("--final", final_path)->required();
        cmd->add_option("--occupancy", occupancy_path)->required();
        cmd->add_option("--ramp-steps", seq_settings.ramp_steps);
        cmd->add_option("--psi-slip", seq_settings.psi_slip);
        cmd->add_option("--out", common.out);
    };
    auto* cmd_plan = app.add_subcommand("plan", "assign atoms and size the move");
    add_seq_inputs(cmd_plan);
    auto* cmd_sequence =
        app.add_subcommand("sequence", "emit the full hologram sequence");
    add_seq_inputs(cmd_sequence);

    // ---- flicker ------------------------------------------------------------
    auto* cmd_flicker = app.add_subcommand("flicker", "transient intensity trace");
    std::string sequence_dir;
    std::string mode = "valuepath";
    int substeps = 16;
    cmd_flicker->add_option("--sequence", sequence_dir)->required();
    cmd_flicker->add_option("--mode", mode, "valuepath|crossfade");
    cmd_flicker->add_option("--substeps", substeps);
    cmd_flicker->add_option("--out", common.out);
    cmd_flicker->add_option("--dx", common.dx);
    cmd_flicker->add_option("--dy", common.dy);

    // ---- slipscan -------------------------------------------------------------
    auto* cmd_slipscan =
        app.add_subcommand("slipscan", "survival proxy vs programmed phase slip");
    int scan_rows = 6, scan_cols = 6, scan_steps = 5, psi_steps = 32, scan_d = 0;
    double scan_spacing = 13, threshold = 0.3;
    std::string scan_mode = "crossfade";
    cmd_slipscan->add_option("--rows", scan_rows);
    cmd_slipscan->add_option("--cols", scan_cols);
    cmd_slipscan->add_option("--spacing", scan_spacing);
    cmd_slipscan->add_option("--steps", scan_steps);
    cmd_slipscan->add_option("--psi-steps", psi_steps);
    cmd_slipscan->add_option("--d", scan_d, "computational-center displacement [px]");
    cmd_slipscan->add_option("--threshold", threshold);
    cmd_slipscan->add_option("--mode", scan_mode);
    cmd_slipscan->add_option("--substeps", substeps);
    cmd_slipscan->add_option("--grid", common.grid);
    cmd_slipscan->add_option("--out", common.out);

    // ---- stats -------------------------------------------------------------
    auto* cmd_stats = app.add_subcommand("stats", "SPAM-corrected statistics");
    std::string params_path;
    double r0 = -1.0, r0_err = 0.0;
    int n_cycles_stats = 1;
    double p1_override = -1.0;
    cmd_stats->add_option("--params", params_path)->required();
    cmd_stats->add_option("--r0", r0, "measured conditional retention");
    cmd_stats->add_option("--r0-err", r0_err);
    cmd_stats->add_option("--n", n_cycles_stats, "rearrangement cycles");
    cmd_stats->add_option("--p1", p1_override);
    cmd_stats->add_option("--out", common.out);

    // ---- mc ------------------------------------------------------------------
    auto* cmd_mc = app.add_subcommand("mc", "Monte Carlo assembly simulation");
    montecarlo::McConfig mc_cfg;
    cmd_mc->add_option("--p-load", mc_cfg.p_load);
    cmd_mc->add_option("--r", mc_cfg.cycle_success, "per-atom cycle success");
    cmd_mc->add_option("--s", mc_cfg.image_survival, "per-image survival");
    cmd_mc->add_option("--cycles", mc_cfg.n_cycles);
    cmd_mc->add_option("--n-initial", mc_cfg.n_initial);
    cmd_mc->add_option("--n-target", mc_cfg.n_target);
    cmd_mc->add_option("--trials", mc_cfg.trials);
    cmd_mc->add_flag("--no-postselect", [&](std::int64_t) {
        mc_cfg.postselect_loading = false;
    });
    cmd_mc->add_option("--out", common.out);
    cmd_mc->add_option("--seed", common.seed);

    // ---- bench ------------------------------------------------------------------
    auto* cmd_bench = app.add_subcommand("bench", "stage-resolved timing");
    bench::BenchConfig bench_cfg;
    std::vector<int> ntw_list;
    std::string transfer_mode = "fixed";
    cmd_bench->add_option("--ntw", ntw_list, "tweezer counts (squares)");
    cmd_bench->add_option("--steps", bench_cfg.steps);
    cmd_bench->add_option("--reps", bench_cfg.repetitions);
    cmd_bench->add_option("--display-ms", bench_cfg.display_ms);
    cmd_bench->add_option("--transfer-ms", bench_cfg.transfer_ms);
    cmd_bench->add_option("--transfer", transfer_mode, "fixed|copy");
    cmd_bench->add_flag("--pipelined", bench_cfg.pipelined);
    cmd_bench->add_option("--grid", bench_cfg.grid);
    cmd_bench->add_option("--out", common.out);

    // ---- reproduce -----------------------------------------------------------------
    auto* cmd_reproduce =
        app.add_subcommand("reproduce", "run the acceptance criteria end to end");
    int only_criterion = 0;
    cmd_reproduce->add_option("--criterion", only_criterion, "run a single criterion");
    cmd_reproduce->add_option("--out", common.out);

    CLI11_PARSE(app, argc, argv);

    try {
        fs::path out_dir(common.out);
        fs::create_directories(out_dir);

        if (cmd_pattern->parsed()) {
            gspec.kind = patterns::kind_from_string(kind);
            auto pattern = patterns::generate(gspec);
            auto cfg = make_config(common);
            pattern.validate(cfg);
            std::string hash = io::config_hash(cfg);
            io::write_text(out_dir / "pattern.json", io::pattern_to_json(pattern, hash));
            std::vector<std::string> outputs{"pattern.json"};
            if (load_p >= 0.0) {
                auto occ = patterns::load_stochastic(pattern, load_p, common.seed);
                io::write_text(out_dir / "occupancy.json",
                               io::occupancy_to_json(occ, load_p, common.seed));
                outputs.push_back("occupancy.json");
            }
            io::write_manifest(out_dir, "pattern", argv_list, hash, {}, outputs,
                               common.seed);
        } else if (cmd_wgs->parsed()) {
            auto cfg = make_config(common);
            auto pattern = io::pattern_from_json(io::read_text(pattern_path));
            wgs_settings.rng_seed = common.seed;
            auto result = wgs::run_wgs(pattern, cfg, wgs_settings);
            io::write_pgm(result.hologram, out_dir / "hologram.pgm");
            io::write_text(out_dir / "result.json",
                           io::wgs_result_to_json(result, cfg, "hologram.pgm"));
            io::write_manifest(out_dir, "wgs", argv_list, io::config_hash(cfg),
                               {pattern_path}, {"hologram.pgm", "result.json"},
                               common.seed);
            if (!result.converged)
                std::fprintf(stderr, "warning: uniformity %.4f after %d iterations\n",
                             result.uniformity, result.iters_used);
        } else if (cmd_plan->parsed() || cmd_sequence->parsed()) {
            auto initial = io::wgs_result_from_json(io::read_text(initial_path));
            auto final = io::wgs_result_from_json(io::read_text(final_path));
            auto occ = io::occupancy_from_json(io::read_text(occupancy_path));
            auto p = sequencer::plan(initial.result, final.result, occ, initial.cfg,
                                     seq_settings);
            io::write_text(out_dir / "plan.json", io::plan_to_json(p));
            std::vector<std::string> outputs{"plan.json"};
            if (cmd_sequence->parsed()) {
                auto seq = sequencer::full_sequence(p);
                io::write_sequence(seq, p.cfg, out_dir / "frames");
                outputs.push_back("frames/");
            }
            io::write_manifest(out_dir, cmd_plan->parsed() ? "plan" : "sequence",
                               argv_list, io::config_hash(p.cfg),
                               {initial_path, final_path, occupancy_path}, outputs,
                               0);
        } else if (cmd_flicker->parsed()) {
            optics::OpticalConfig cfg;
            auto seq = io::read_sequence(sequence_dir, cfg);
            cfg.dx = common.dx;
            cfg.dy = common.dy;
            flicker::TransientModel model;
            model.substeps = substeps;
            model.mode = mode == "crossfade" ? flicker::TransientMode::CrossFade
                                             : flicker::TransientMode::ValuePathLinear;
            auto trace = flicker::sequence_flicker(seq, model, cfg);
            io::write_trace_csv(trace, out_dir / "trace.csv");
            io::write_manifest(out_dir, "flicker", argv_list, io::config_hash(cfg),
                               {sequence_dir}, {"trace.csv"}, 0);
        } else if (cmd_slipscan->parsed()) {
            CommonOpts scan_common = common;
            scan_common.illumination = "gaussian";
            auto cfg = make_config(scan_common);
            patterns::GeometrySpec spec;
            spec.rows = scan_rows;
            spec.cols = scan_cols;
            spec.spacing = scan_spacing;
            auto array = patterns::generate(spec);
            std::vector<double> psis(psi_steps);
            for (int i = 0; i < psi_steps; ++i) psis[i] = two_pi * i / psi_steps;
            flicker::SlipScanSettings settings;
            settings.steps = scan_steps;
            settings.survival_threshold = threshold;
            settings.model.substeps = substeps;
            settings.model.mode = scan_mode == "valuepath"
                                      ? flicker::TransientMode::ValuePathLinear
                                      : flicker::TransientMode::CrossFade;
            auto rows = flicker::phase_slip_scan(array, psis, scan_d, settings, cfg);
            io::write_scan_csv(rows, out_dir / "scan.csv");
            io::write_manifest(out_dir, "slipscan", argv_list, io::config_hash(cfg),
                               {}, {"scan.csv"}, 0);
        } else if (cmd_stats->parsed()) {
            auto file = io::fidelity_from_json(io::read_text(params_path));
            double p1 = p1_override > 0 ? p1_override : file.p1;
            auto s36 = stats::corrected_survival_with_error(file.arr36, p1);
            auto s16 = stats::corrected_survival_with_error(file.arr16, p1);
            json report{{"schema", "holosort.stats/1"},
                        {"p1", p1},
                        {"S36", {{"value", s36.value},
                                 {"err_plus", s36.err_plus},
                                 {"err_minus", s36.err_minus}}},
                        {"S16", {{"value", s16.value},
                                 {"err_plus", s16.err_plus},
                                 {"err_minus", s16.err_minus}}}};
            std::string csv = "quantity,value,err_plus,err_minus\n";
            auto csv_row = [&csv](const std::string& name,
                                  const stats::ValueWithError& v) {
                csv += name + "," + std::to_string(v.value) + "," +
                       std::to_string(v.err_plus) + "," +
                       std::to_string(v.err_minus) + "\n";
            };
            csv_row("S36", s36);
            csv_row("S16", s16);
            if (r0 >= 0.0) {
                auto r = stats::corrected_rearrangement_with_error(
                    r0, r0_err, n_cycles_stats, file.arr36, file.arr16, p1);
                report["R"] = {{"value", r.value},
                               {"err_plus", r.err_plus},
                               {"err_minus", r.err_minus},
                               {"r0", r0},
                               {"n", n_cycles_stats}};
                csv_row("R", r);
            }
            io::write_text(out_dir / "report.json", report.dump(2) + "\n");
            io::write_text(out_dir / "report.csv", csv);
            io::write_manifest(out_dir, "stats", argv_list, "", {params_path},
                               {"report.json", "report.csv"}, 0);
        } else if (cmd_mc->parsed()) {
            mc_cfg.rng_seed = common.seed;
            auto report = montecarlo::run(mc_cfg);
            io::write_mc_report(report, mc_cfg, out_dir / "report.json",
                                out_dir / "missing.csv");
            io::write_manifest(out_dir, "mc", argv_list, "", {},
                               {"report.json", "missing.csv"}, common.seed);
            std::printf("defect-free fraction: %.4f\n", report.defect_free_fraction);
        } else if (cmd_bench->parsed()) {
            if (!ntw_list.empty()) bench_cfg.n_tw_values = ntw_list;
            bench_cfg.transfer = transfer_mode == "copy"
                                     ? bench::TransferEmulation::BufferCopy
                                     : bench::TransferEmulation::FixedDelay;
            auto rows = bench::run_bench(bench_cfg);
            io::write_bench_csv(rows, out_dir / "bench.csv");
            io::write_manifest(out_dir, "bench", argv_list, "", {}, {"bench.csv"},
                               bench_cfg.rng_seed);
        } else if (cmd_reproduce->parsed()) {
            int failed = 0;
            json lines = json::array();
            for (int id = 1; id <= acceptance::criterion_count(); ++id) {
                if (only_criterion != 0 && id != only_criterion) continue;
                auto res = acceptance::run_criterion(id);
                std::printf("%s criterion %2d: %-34s (%.2fs) %s\n",
                            res.passed ? "PASS" : "FAIL", res.id, res.name.c_str(),
                            res.seconds, res.detail.c_str());
                std::fflush(stdout);
                lines.push_back({{"id", res.id},
                                 {"name", res.name},
                                 {"passed", res.passed},
                                 {"detail", res.detail}});
                if (!res.passed) ++failed;
            }
            io::write_text(out_dir / "acceptance.json",
                           json{{"schema", "holosort.acceptance/1"},
                                {"criteria", lines}}
                                   .dump(2) +
                               "\n");
            io::write_manifest(out_dir, "reproduce", argv_list, "", {},
                               {"acceptance.json"}, 0);
            return failed == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        json err{{"error", e.what()}, {"command", argv_list.size() > 1 ? argv_list[1] : ""}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
