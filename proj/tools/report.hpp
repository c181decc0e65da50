#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sps/metrics.hpp"
#include "sps/network.hpp"

namespace sps::cli {

/// Compact frequency label for table headers and CSV columns: 1e10 -> "10GHz".
std::string freq_label(double hz);

/// SPS percentage with the fixed 4-decimal table formatting.
std::string format_sps(double sps);

/// Shortest round-trip decimal for full-precision CSV columns.
std::string format_full(double v);

/// Filesystem-safe tag built from a label.
std::string sanitize_tag(std::string_view label);

std::string iso8601_utc_now();

nlohmann::json config_to_json(const ComparisonConfig& cfg);
nlohmann::json report_to_json(const SimilarityReport& report);

std::string render_compare_table(const SimilarityReport& report);
std::string render_compare_csv(const SimilarityReport& report);

void write_text_file(const std::filesystem::path& path, const std::string& text);

/// One `<pair>_S<i><j>_trace.csv` per element with freq_Hz,d_rif columns.
void write_trace_files(const std::filesystem::path& dir, const std::string& pair_tag,
                       const SimilarityReport& report);

/// One `<pair>_S<i><j>_rif.csv` per element holding both clouds over the
/// effective band, rows tagged by source label.
void write_spiral_files(const std::filesystem::path& dir, const std::string& pair_tag,
                        const NetworkData& a, const NetworkData& b,
                        const SimilarityReport& report);

struct ManifestRow {
    std::string label_model;
    std::string path_model;
    std::string label_meas;
    std::string path_meas;
};

/// CSV manifest with header label_model,path_model,label_meas,path_meas.
/// Throws ParseError on unreadable files, a bad header, short rows, or
/// duplicate (label_model, label_meas) pairs.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);

struct BatchCell {
    std::optional<SimilarityReport> report;
    std::string error;
};

struct BatchRow {
    ManifestRow manifest;
    std::string row_error;         // set when the row's files failed to load
    std::vector<BatchCell> cells;  // one per band cap
};

std::string render_batch_table(const std::vector<BatchRow>& rows,
                               const std::vector<std::string>& cap_labels);
std::string render_batch_csv(const std::vector<BatchRow>& rows,
                             const std::vector<std::string>& cap_labels);
nlohmann::json batch_to_json(const std::vector<BatchRow>& rows, const std::vector<double>& caps,
                             const ComparisonConfig& base);

}  // namespace sps::cli
