#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "sps/errors.hpp"
#include "sps/metrics.hpp"
#include "sps/synth.hpp"
#include "sps/touchstone.hpp"

namespace fs = std::filesystem;
using namespace sps;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitCompare = 2;

struct ConfigFlags {
    double f_norm_hz = 1e9;
    double f_min_hz = 0.0;
    std::optional<double> f_max_hz;
    std::string direction = "atob";
    std::string nn_mode = "points";
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
    cmd->add_option("--fnorm", flags.f_norm_hz,
                    "Normalization frequency in Hz (z axis unit of RIF space)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--fmin", flags.f_min_hz, "Lower band edge in Hz")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--fmax", flags.f_max_hz, "Upper band edge (cap) in Hz")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--direction", flags.direction, "Distance direction: atob, btoa or sym")
        ->transform(CLI::IsMember({"atob", "btoa", "sym"}, CLI::ignore_case))
        ->capture_default_str();
    cmd->add_option("--nn", flags.nn_mode, "Nearest-neighbor mode: points or polyline")
        ->transform(CLI::IsMember({"points", "polyline"}, CLI::ignore_case))
        ->capture_default_str();
}

ComparisonConfig to_config(const ConfigFlags& flags) {
    ComparisonConfig cfg;
    cfg.f_norm_hz = flags.f_norm_hz;
    cfg.band_min_hz = flags.f_min_hz;
    cfg.band_max_hz = flags.f_max_hz;
    cfg.direction = flags.direction == "btoa"  ? Direction::BtoA
                    : flags.direction == "sym" ? Direction::Symmetric
                                               : Direction::AtoB;
    cfg.nn_mode = flags.nn_mode == "polyline" ? NnMode::Polyline : NnMode::PointSet;
    return cfg;
}

ParseResult load_network(const fs::path& path) {
    ParseResult result = read_touchstone_file(path);
    for (const auto& w : result.warnings) {
        std::cerr << "warning: " << path.filename().string() << ": " << w << "\n";
    }
    return result;
}

void warn_small_f_norm(const ComparisonConfig& cfg, const NetworkData& meas) {
    double step = median_frequency_step_hz(meas);
    if (step > 0.0 && cfg.f_norm_hz <= step) {
        std::cerr << "warning: f_norm (" << cli::freq_label(cfg.f_norm_hz)
                  << ") is not above the median frequency step of B ("
                  << cli::freq_label(step) << "); scores become sampling-sensitive\n";
    }
}

int run_compare(const std::string& model_path, const std::string& meas_path,
                const ConfigFlags& flags, const std::string& json_path,
                const std::string& csv_path, const std::string& trace_dir,
                const std::string& spiral_dir) {
    ParseResult model = load_network(model_path);
    ParseResult meas = load_network(meas_path);

    ComparisonConfig cfg = to_config(flags);
    warn_small_f_norm(cfg, meas.network);

    SimilarityReport report = compare(model.network, meas.network, cfg);
    std::cout << cli::render_compare_table(report);

    std::string pair_tag =
        cli::sanitize_tag(report.label_a) + "_vs_" + cli::sanitize_tag(report.label_b);
    if (!json_path.empty()) {
        nlohmann::json j = cli::report_to_json(report);
        j["generated_at"] = cli::iso8601_utc_now();
        cli::write_text_file(json_path, j.dump(2) + "\n");
    }
    if (!csv_path.empty()) cli::write_text_file(csv_path, cli::render_compare_csv(report));
    if (!trace_dir.empty()) cli::write_trace_files(trace_dir, pair_tag, report);
    if (!spiral_dir.empty()) {
        cli::write_spiral_files(spiral_dir, pair_tag, model.network, meas.network, report);
    }
    return kExitOk;
}

int run_batch(const std::string& manifest_path, const ConfigFlags& flags,
              std::vector<double> caps, const std::string& json_path,
              const std::string& csv_path) {
    auto manifest = cli::read_manifest(manifest_path);
    if (manifest.empty()) {
        std::cerr << "warning: manifest '" << manifest_path << "' has no rows\n";
    }

    std::sort(caps.begin(), caps.end());
    ComparisonConfig base = to_config(flags);

    std::vector<ComparisonConfig> configs;
    std::vector<std::string> cap_labels;
    if (caps.empty()) {
        configs.push_back(base);
        cap_labels.push_back(base.band_max_hz ? cli::freq_label(*base.band_max_hz) : "full");
    } else {
        for (double cap : caps) {
            ComparisonConfig cfg = base;
            cfg.band_max_hz = cap;
            configs.push_back(cfg);
            cap_labels.push_back(cli::freq_label(cap));
        }
    }

    const fs::path manifest_dir = fs::path(manifest_path).parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path path(p);
        return path.is_absolute() ? path : manifest_dir / path;
    };

    std::vector<cli::BatchRow> rows;
    for (const auto& entry : manifest) {
        cli::BatchRow row;
        row.manifest = entry;
        try {
            ParseResult model = load_network(resolve(entry.path_model));
            ParseResult meas = load_network(resolve(entry.path_meas));
            model.network.source_label = entry.label_model;
            meas.network.source_label = entry.label_meas;
            for (const auto& cfg : configs) {
                cli::BatchCell cell;
                try {
                    cell.report = compare(model.network, meas.network, cfg);
                } catch (const std::exception& e) {
                    cell.error = e.what();
                    std::cerr << "error: " << entry.label_model << " vs " << entry.label_meas
                              << ": " << e.what() << "\n";
                }
                row.cells.push_back(std::move(cell));
            }
        } catch (const std::exception& e) {
            row.row_error = e.what();
            row.cells.assign(configs.size(), cli::BatchCell{std::nullopt, e.what()});
            std::cerr << "error: " << entry.label_model << " vs " << entry.label_meas << ": "
                      << e.what() << "\n";
        }
        rows.push_back(std::move(row));
    }

    std::cout << cli::render_batch_table(rows, cap_labels);
    if (!csv_path.empty()) cli::write_text_file(csv_path, cli::render_batch_csv(rows, cap_labels));
    if (!json_path.empty()) {
        nlohmann::json j = cli::batch_to_json(rows, caps, base);
        j["generated_at"] = cli::iso8601_utc_now();
        cli::write_text_file(json_path, j.dump(2) + "\n");
    }
    return kExitOk;
}

ValueFormat parse_format(const std::string& s) {
    if (s == "ri") return ValueFormat::RI;
    if (s == "ma") return ValueFormat::MA;
    return ValueFormat::DB;
}

FreqUnit parse_unit(const std::string& s) {
    if (s == "hz") return FreqUnit::Hz;
    if (s == "khz") return FreqUnit::kHz;
    if (s == "mhz") return FreqUnit::MHz;
    return FreqUnit::GHz;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"S-parameter similarity scoring over RIF point sets"};
    app.require_subcommand(1);

    // compare ---------------------------------------------------------------
    auto* cmd_compare = app.add_subcommand("compare", "Score one model file against one measurement file");
    std::string model_path, meas_path;
    cmd_compare->add_option("model", model_path, "Touchstone file A (model)")->required();
    cmd_compare->add_option("meas", meas_path, "Touchstone file B (measurement)")->required();
    ConfigFlags compare_flags;
    add_config_flags(cmd_compare, compare_flags);
    std::string json_path, csv_path, trace_dir, spiral_dir;
    cmd_compare->add_option("--json", json_path, "Write the full-precision JSON report here");
    cmd_compare->add_option("--csv", csv_path, "Write a one-row CSV summary here");
    cmd_compare->add_option("--trace", trace_dir, "Directory for per-element distance traces");
    cmd_compare->add_option("--spiral", spiral_dir,
                            "Directory for per-element RIF point files (both sources)");

    // batch -----------------------------------------------------------------
    auto* cmd_batch = app.add_subcommand("batch", "Score every pair in a CSV manifest");
    std::string manifest_path;
    cmd_batch->add_option("manifest", manifest_path, "CSV manifest of label/path pairs")
        ->required();
    ConfigFlags batch_flags;
    add_config_flags(cmd_batch, batch_flags);
    std::vector<double> bands;
    cmd_batch->add_option("--bands", bands, "Band caps in Hz, one SPS column per cap")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    std::string batch_json, batch_csv;
    cmd_batch->add_option("--json", batch_json, "Write the batch JSON bundle here");
    cmd_batch->add_option("--csv", batch_csv, "Write the batch CSV summary here");

    // generate --------------------------------------------------------------
    auto* cmd_generate = app.add_subcommand("generate", "Write synthetic Touchstone fixtures");
    cmd_generate->require_subcommand(1);
    std::string gen_format = "ri";
    std::string gen_unit = "ghz";

    auto* gen_line = cmd_generate->add_subcommand("ideal-line", "Matched transmission line");
    LineSpec line_spec;
    line_spec.grid = {1e7, 5e10, 1e7};
    std::string line_out = "line.s2p";
    gen_line->add_option("--out", line_out, "Output file")->capture_default_str();
    gen_line->add_option("--length", line_spec.length_m, "Line length in m")
        ->capture_default_str();
    gen_line->add_option("--delay-per-m", line_spec.delay_per_m_s, "Delay in s/m")
        ->capture_default_str();
    gen_line->add_option("--loss-db-per-m", line_spec.loss_db_per_m_at_f0,
                         "Loss in dB/m at --f0, scaling with sqrt(f/f0)")
        ->capture_default_str();
    gen_line->add_option("--f0", line_spec.f0_hz, "Loss reference frequency in Hz")
        ->capture_default_str();
    gen_line->add_option("--fstart", line_spec.grid.start_hz, "Grid start in Hz")
        ->capture_default_str();
    gen_line->add_option("--fstop", line_spec.grid.stop_hz, "Grid stop in Hz")
        ->capture_default_str();
    gen_line->add_option("--step", line_spec.grid.step_hz, "Grid step in Hz")
        ->capture_default_str();

    auto* gen_res = cmd_generate->add_subcommand("shifted-resonator",
                                                 "Notch resonator pair, second one detuned");
    double res_freq = 1e10, res_shift = 2e8, res_q = 50.0;
    FrequencyGrid res_grid{5e9, 1.5e10, 1e7};
    std::string out_a = "resonator_a.s2p", out_b = "resonator_b.s2p";
    gen_res->add_option("--out-a", out_a, "Output file for the reference resonator")
        ->capture_default_str();
    gen_res->add_option("--out-b", out_b, "Output file for the shifted resonator")
        ->capture_default_str();
    gen_res->add_option("--fres", res_freq, "Resonance frequency in Hz")->capture_default_str();
    gen_res->add_option("--shift", res_shift, "Resonance shift in Hz")->capture_default_str();
    gen_res->add_option("--q", res_q, "Quality factor")->capture_default_str();
    gen_res->add_option("--fstart", res_grid.start_hz, "Grid start in Hz")->capture_default_str();
    gen_res->add_option("--fstop", res_grid.stop_hz, "Grid stop in Hz")->capture_default_str();
    gen_res->add_option("--step", res_grid.step_hz, "Grid step in Hz")->capture_default_str();

    for (auto* g : {gen_line, gen_res}) {
        g->add_option("--format", gen_format, "Output value format: ri, ma or db")
            ->transform(CLI::IsMember({"ri", "ma", "db"}, CLI::ignore_case))
            ->capture_default_str();
        g->add_option("--unit", gen_unit, "Output frequency unit: hz, khz, mhz or ghz")
            ->transform(CLI::IsMember({"hz", "khz", "mhz", "ghz"}, CLI::ignore_case))
            ->capture_default_str();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_compare->parsed()) {
            return run_compare(model_path, meas_path, compare_flags, json_path, csv_path,
                               trace_dir, spiral_dir);
        }
        if (cmd_batch->parsed()) {
            return run_batch(manifest_path, batch_flags, bands, batch_json, batch_csv);
        }
        if (cmd_generate->parsed()) {
            ValueFormat fmt = parse_format(gen_format);
            FreqUnit unit = parse_unit(gen_unit);
            if (gen_line->parsed()) {
                NetworkData net = ideal_line(line_spec);
                net.source_label = fs::path(line_out).stem().string();
                write_touchstone_file(line_out, net, fmt, unit);
                std::cout << "wrote " << line_out << " (" << net.size() << " points)\n";
            } else {
                auto [a, b] = shifted_resonator_pair(res_freq, res_shift, res_q, res_grid);
                a.source_label = fs::path(out_a).stem().string();
                b.source_label = fs::path(out_b).stem().string();
                write_touchstone_file(out_a, a, fmt, unit);
                write_touchstone_file(out_b, b, fmt, unit);
                std::cout << "wrote " << out_a << " and " << out_b << " (" << a.size()
                          << " points each)\n";
            }
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ComparisonError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompare;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
