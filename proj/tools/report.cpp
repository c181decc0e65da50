#include "report.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "sps/errors.hpp"
#include "sps/rif.hpp"

namespace sps::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(trim(current));
    return fields;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

std::string freq_label(double hz) {
    struct Unit {
        double scale;
        const char* suffix;
    };
    static constexpr Unit units[] = {{1e9, "GHz"}, {1e6, "MHz"}, {1e3, "kHz"}, {1.0, "Hz"}};
    for (const Unit& u : units) {
        if (hz >= u.scale || u.scale == 1.0) {
            return format_full(hz / u.scale) + u.suffix;
        }
    }
    return format_full(hz) + "Hz";
}

std::string format_sps(double sps) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.4f", sps);
    return buf.data();
}

std::string format_full(double v) {
    std::array<char, 40> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string sanitize_tag(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    for (char c : label) {
        bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
        out += ok ? c : '_';
    }
    if (out.empty()) out = "unnamed";
    return out;
}

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf.data();
}

nlohmann::json config_to_json(const ComparisonConfig& cfg) {
    nlohmann::json j;
    j["f_norm_hz"] = cfg.f_norm_hz;
    j["band_min_hz"] = cfg.band_min_hz;
    if (cfg.band_max_hz) {
        j["band_max_hz"] = *cfg.band_max_hz;
    } else {
        j["band_max_hz"] = nullptr;
    }
    j["direction"] = std::string(to_string(cfg.direction));
    j["nn_mode"] = std::string(to_string(cfg.nn_mode));
    j["tiers"] = {{"good", cfg.tiers.good},
                  {"acceptable", cfg.tiers.acceptable},
                  {"inconclusive", cfg.tiers.inconclusive}};
    return j;
}

nlohmann::json report_to_json(const SimilarityReport& report) {
    nlohmann::json j;
    j["schema"] = "sps-report-v1";
    j["model"] = report.label_a;
    j["meas"] = report.label_b;
    j["config"] = config_to_json(report.config_echo);
    j["effective_band_hz"] = {report.effective_band.lo_hz, report.effective_band.hi_hz};
    j["matrix"] = {{"d_mh", report.d_mh_matrix},
                   {"sps", report.sps_matrix},
                   {"tier", std::string(to_string(report.tier))}};
    nlohmann::json elements = nlohmann::json::array();
    for (const auto& er : report.per_element) {
        nlohmann::json e;
        e["element"] = element_label(er.element);
        e["i"] = er.element.i;
        e["j"] = er.element.j;
        e["d_mh"] = er.d_mh;
        e["sps"] = er.sps;
        e["tier"] = std::string(to_string(er.tier));
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& t : er.trace) trace.push_back({t.freq_hz, t.d_rif});
        e["trace"] = std::move(trace);
        elements.push_back(std::move(e));
    }
    j["elements"] = std::move(elements);
    return j;
}

std::string render_compare_table(const SimilarityReport& report) {
    std::ostringstream out;
    out << "A (model): " << report.label_a << "\n";
    out << "B (meas):  " << report.label_b << "\n";
    const auto& cfg = report.config_echo;
    out << "f_norm " << freq_label(cfg.f_norm_hz) << ", band [" << freq_label(report.effective_band.lo_hz)
        << ", " << freq_label(report.effective_band.hi_hz) << "], direction "
        << to_string(cfg.direction) << ", nn " << to_string(cfg.nn_mode) << "\n\n";

    out << std::left << std::setw(10) << "element" << std::right << std::setw(12) << "d_mh"
        << std::setw(12) << "SPS" << "  tier\n";
    auto row = [&](const std::string& name, double d, double sps, Tier tier) {
        std::array<char, 32> dbuf{};
        std::snprintf(dbuf.data(), dbuf.size(), "%.6f", d);
        out << std::left << std::setw(10) << name << std::right << std::setw(12) << dbuf.data()
            << std::setw(12) << format_sps(sps) << "  " << to_string(tier) << "\n";
    };
    for (const auto& er : report.per_element) {
        row(element_label(er.element), er.d_mh, er.sps, er.tier);
    }
    row("matrix", report.d_mh_matrix, report.sps_matrix, report.tier);
    return out.str();
}

std::string render_compare_csv(const SimilarityReport& report) {
    std::string out = "model,meas,f_lo_hz,f_hi_hz,d_mh,sps,tier\n";
    out += report.label_a + "," + report.label_b + "," + format_full(report.effective_band.lo_hz) +
           "," + format_full(report.effective_band.hi_hz) + "," + format_full(report.d_mh_matrix) +
           "," + format_sps(report.sps_matrix) + "," + std::string(to_string(report.tier)) + "\n";
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_trace_files(const std::filesystem::path& dir, const std::string& pair_tag,
                       const SimilarityReport& report) {
    std::filesystem::create_directories(dir);
    for (const auto& er : report.per_element) {
        std::string text = "freq_Hz,d_rif\n";
        for (const auto& t : er.trace) {
            text += format_full(t.freq_hz) + "," + format_full(t.d_rif) + "\n";
        }
        write_text_file(dir / (pair_tag + "_" + element_label(er.element) + "_trace.csv"), text);
    }
}

void write_spiral_files(const std::filesystem::path& dir, const std::string& pair_tag,
                        const NetworkData& a, const NetworkData& b,
                        const SimilarityReport& report) {
    std::filesystem::create_directories(dir);
    const auto& cfg = report.config_echo;
    std::string tag_a = sanitize_tag(report.label_a);
    std::string tag_b = sanitize_tag(report.label_b);
    for (const auto& er : report.per_element) {
        std::string text = "source,freq_Hz,re,im,z\n";
        auto append = [&](const NetworkData& net, const std::string& tag) {
            RifPointCloud cloud = to_rif(net, er.element, cfg.f_norm_hz, report.effective_band);
            for (std::size_t k = 0; k < cloud.points.size(); ++k) {
                const RifPoint& p = cloud.points[k];
                text += tag + "," + format_full(cloud.source_freqs_hz[k]) + "," +
                        format_full(p.x) + "," + format_full(p.y) + "," + format_full(p.z) + "\n";
            }
        };
        append(a, tag_a);
        append(b, tag_b);
        write_text_file(dir / (pair_tag + "_" + element_label(er.element) + "_rif.csv"), text);
    }
}

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open manifest '" + path.string() + "'");

    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) {
            header = split_csv_line(line);
            break;
        }
    }
    const std::vector<std::string> expected = {"label_model", "path_model", "label_meas",
                                               "path_meas"};
    if (header.size() != expected.size())
        throw ParseError("manifest header must be: label_model,path_model,label_meas,path_meas");
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (lower(header[k]) != expected[k])
            throw ParseError("manifest header must be: label_model,path_model,label_meas,path_meas");
    }

    std::vector<ManifestRow> rows;
    std::set<std::pair<std::string, std::string>> seen;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw ParseError("manifest row needs 4 fields, got " + std::to_string(fields.size()) +
                             ": " + line);
        ManifestRow row{fields[0], fields[1], fields[2], fields[3]};
        if (!seen.insert({row.label_model, row.label_meas}).second)
            throw ParseError("duplicate manifest pair '" + row.label_model + "' vs '" +
                             row.label_meas + "'");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_batch_table(const std::vector<BatchRow>& rows,
                               const std::vector<std::string>& cap_labels) {
    std::size_t w_model = 5, w_meas = 4;
    for (const auto& r : rows) {
        w_model = std::max(w_model, r.manifest.label_model.size());
        w_meas = std::max(w_meas, r.manifest.label_meas.size());
    }

    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(w_model) + 2) << "model"
        << std::setw(static_cast<int>(w_meas) + 2) << "meas";
    for (const auto& label : cap_labels) {
        out << std::right << std::setw(12) << ("SPS(" + label + ")") << std::setw(14)
            << ("tier(" + label + ")");
    }
    out << "\n";

    for (const auto& r : rows) {
        out << std::left << std::setw(static_cast<int>(w_model) + 2) << r.manifest.label_model
            << std::setw(static_cast<int>(w_meas) + 2) << r.manifest.label_meas;
        for (const auto& cell : r.cells) {
            if (cell.report) {
                out << std::right << std::setw(12) << format_sps(cell.report->sps_matrix)
                    << std::setw(14) << to_string(cell.report->tier);
            } else {
                out << std::right << std::setw(12) << "ERROR" << std::setw(14) << "ERROR";
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string render_batch_csv(const std::vector<BatchRow>& rows,
                             const std::vector<std::string>& cap_labels) {
    std::string out = "model,meas";
    for (const auto& label : cap_labels) out += ",sps_" + label;
    for (const auto& label : cap_labels) out += ",tier_" + label;
    out += "\n";

    for (const auto& r : rows) {
        out += r.manifest.label_model + "," + r.manifest.label_meas;
        for (const auto& cell : r.cells) {
            out += ",";
            out += cell.report ? format_sps(cell.report->sps_matrix) : "ERROR";
        }
        for (const auto& cell : r.cells) {
            out += ",";
            out += cell.report ? std::string(to_string(cell.report->tier)) : "ERROR";
        }
        out += "\n";
    }
    return out;
}

nlohmann::json batch_to_json(const std::vector<BatchRow>& rows, const std::vector<double>& caps,
                             const ComparisonConfig& base) {
    nlohmann::json j;
    j["schema"] = "sps-batch-v1";
    j["config"] = config_to_json(base);
    j["caps_hz"] = caps;
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json jr;
        jr["model"] = r.manifest.label_model;
        jr["meas"] = r.manifest.label_meas;
        jr["path_model"] = r.manifest.path_model;
        jr["path_meas"] = r.manifest.path_meas;
        if (!r.row_error.empty()) {
            jr["error"] = r.row_error;
        } else {
            nlohmann::json results = nlohmann::json::array();
            for (std::size_t c = 0; c < r.cells.size(); ++c) {
                nlohmann::json cell;
                if (c < caps.size()) cell["cap_hz"] = caps[c];
                if (r.cells[c].report) {
                    cell["report"] = report_to_json(*r.cells[c].report);
                } else {
                    cell["error"] = r.cells[c].error;
                }
                results.push_back(std::move(cell));
            }
            jr["results"] = std::move(results);
        }
        jrows.push_back(std::move(jr));
    }
    j["rows"] = std::move(jrows);
    return j;
}

}  // namespace sps::cli
