#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sps/network.hpp"
#include "sps/rif.hpp"

namespace sps {

/// Which way the directed distance runs. AtoB is the default: A is the model
/// (usually the sparser sweep), B the measurement.
enum class Direction { AtoB, BtoA, Symmetric };

/// Nearest-neighbour flavour: distance to the closest sample point, or to the
/// polyline through the samples (lets a query match between samples).
enum class NnMode { PointSet, Polyline };

enum class Tier { Good, Acceptable, Inconclusive, Bad };

std::string_view to_string(Direction d);
std::string_view to_string(NnMode m);
std::string_view to_string(Tier t);

/// SPS percentages at or above `good` are Good, at or above `acceptable`
/// Acceptable, at or above `inconclusive` Inconclusive, anything below Bad.
struct TierThresholds {
    double good = 99.0;
    double acceptable = 90.0;
    double inconclusive = 80.0;
};

Tier classify_tier(double sps_percent, const TierThresholds& t = {});

struct ComparisonConfig {
    double f_norm_hz = 1e9;
    double band_min_hz = 0.0;
    std::optional<double> band_max_hz;
    Direction direction = Direction::AtoB;
    NnMode nn_mode = NnMode::PointSet;
    TierThresholds tiers{};
};

/// One matrix element's samples on its frequency grid.
struct ElementSweep {
    Element element;
    std::vector<double> freqs_hz;
    std::vector<std::complex<double>> values;
};

ElementSweep element_sweep(const NetworkData& net, Element element,
                           std::optional<Band> band = std::nullopt);

/// Mean complex-plane distance over collocated grids. Requires the two
/// sweeps to share the frequency grid (relative tolerance 1e-6 per point);
/// never interpolates — throws ComparisonError on any mismatch.
double mean_abs_distance(const ElementSweep& a, const ElementSweep& b);

/// Root-mean-square counterpart of mean_abs_distance, same grid contract.
double rms_distance(const ElementSweep& a, const ElementSweep& b);

struct TracePoint {
    double freq_hz = 0.0;
    double d_rif = 0.0;
};

struct DirectedResult {
    double distance = 0.0;
    std::vector<TracePoint> trace;  // one entry per source point, frequency order
};

/// Directed modified Hausdorff distance: the mean, over the source cloud's
/// points, of each point's nearest distance into the target cloud. Both
/// clouds must share f_norm and already be restricted to the common band.
DirectedResult modified_hausdorff_directed(const RifPointCloud& source,
                                           const RifPointCloud& target,
                                           NnMode mode = NnMode::PointSet);

/// Directed or symmetrized (max of both directions) modified Hausdorff.
double modified_hausdorff(const RifPointCloud& a, const RifPointCloud& b,
                          Direction direction, NnMode mode = NnMode::PointSet);

/// SPS percentage for a distance: 100 * max(1 - d, 0).
double sps_from_distance(double distance);

/// Intersection of both sweeps' spans with the configured band. Checks that
/// each side keeps at least one in-band sample (two for Polyline mode).
Band effective_band(const NetworkData& a, const NetworkData& b,
                    const ComparisonConfig& cfg);

struct ElementReport {
    Element element;
    double d_mh = 0.0;
    double sps = 0.0;  // percent, in [0, 100]
    Tier tier = Tier::Bad;
    std::vector<TracePoint> trace;
    Band effective_band;
};

struct SimilarityReport {
    std::vector<ElementReport> per_element;  // row-major: S11, S12, ..., SNN
    double d_mh_matrix = 0.0;                // max over elements
    double sps_matrix = 0.0;                 // min over elements
    Tier tier = Tier::Bad;
    Band effective_band;
    ComparisonConfig config_echo;
    std::string label_a;
    std::string label_b;
};

/// Full matrix comparison: per-element clouds over the effective band,
/// per-element distance/SPS/tier, matrix distance as the worst (max) element
/// and matrix SPS as the worst (min) element.
/// Requires matching port counts and S-parameter data on both sides.
SimilarityReport compare(const NetworkData& a, const NetworkData& b,
                         const ComparisonConfig& cfg = {});

}  // namespace sps
