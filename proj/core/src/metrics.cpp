#include "sps/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sps/errors.hpp"

namespace sps {

namespace {

void validate_config(const ComparisonConfig& cfg) {
    if (!(cfg.f_norm_hz > 0.0))
        throw ComparisonError("normalization frequency must be positive");
    if (cfg.band_max_hz && !(cfg.band_min_hz < *cfg.band_max_hz))
        throw ComparisonError("band_min must be below band_max");
}

void check_collocated(const ElementSweep& a, const ElementSweep& b) {
    if (a.freqs_hz.empty() || b.freqs_hz.empty())
        throw ComparisonError("collocated distance on an empty sweep");
    if (a.freqs_hz.size() != b.freqs_hz.size())
        throw ComparisonError("frequency grids differ in length (" +
                              std::to_string(a.freqs_hz.size()) + " vs " +
                              std::to_string(b.freqs_hz.size()) + "); no interpolation is done");
    for (std::size_t k = 0; k < a.freqs_hz.size(); ++k) {
        double fa = a.freqs_hz[k];
        double fb = b.freqs_hz[k];
        if (std::abs(fa - fb) > 1e-6 * std::max(std::abs(fa), std::abs(fb)))
            throw ComparisonError("frequency grids are not collocated at index " +
                                  std::to_string(k) + " (" + std::to_string(fa) + " vs " +
                                  std::to_string(fb) + " Hz); no interpolation is done");
    }
}

// Same arithmetic shape as the 3D distance with dz == 0; keeps the
// collocated-grid identity between the directed distance and the mean
// distance exact rather than within rounding.
double planar_distance(const std::complex<double>& a, const std::complex<double>& b) {
    double dx = a.real() - b.real();
    double dy = a.imag() - b.imag();
    return std::sqrt(dx * dx + dy * dy);
}

std::size_t count_in_band(const NetworkData& net, const Band& band) {
    std::size_t count = 0;
    for (double f : net.frequencies_hz) {
        if (band.contains(f)) ++count;
    }
    return count;
}

}  // namespace

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::AtoB: return "AtoB";
        case Direction::BtoA: return "BtoA";
        case Direction::Symmetric: return "Symmetric";
    }
    return "?";
}

std::string_view to_string(NnMode m) {
    switch (m) {
        case NnMode::PointSet: return "PointSet";
        case NnMode::Polyline: return "Polyline";
    }
    return "?";
}

std::string_view to_string(Tier t) {
    switch (t) {
        case Tier::Good: return "Good";
        case Tier::Acceptable: return "Acceptable";
        case Tier::Inconclusive: return "Inconclusive";
        case Tier::Bad: return "Bad";
    }
    return "?";
}

Tier classify_tier(double sps_percent, const TierThresholds& t) {
    if (sps_percent >= t.good) return Tier::Good;
    if (sps_percent >= t.acceptable) return Tier::Acceptable;
    if (sps_percent >= t.inconclusive) return Tier::Inconclusive;
    return Tier::Bad;
}

ElementSweep element_sweep(const NetworkData& net, Element element, std::optional<Band> band) {
    if (element.i < 1 || element.i > net.n_ports || element.j < 1 || element.j > net.n_ports)
        throw ComparisonError("element " + element_label(element) + " is out of range for a " +
                              std::to_string(net.n_ports) + "-port network");
    ElementSweep sweep;
    sweep.element = element;
    for (std::size_t k = 0; k < net.size(); ++k) {
        double f = net.frequencies_hz[k];
        if (band && !band->contains(f)) continue;
        sweep.freqs_hz.push_back(f);
        sweep.values.push_back(net.matrices[k](element.i - 1, element.j - 1));
    }
    return sweep;
}

double mean_abs_distance(const ElementSweep& a, const ElementSweep& b) {
    check_collocated(a, b);
    double sum = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        sum += planar_distance(a.values[k], b.values[k]);
    }
    return sum / static_cast<double>(a.values.size());
}

double rms_distance(const ElementSweep& a, const ElementSweep& b) {
    check_collocated(a, b);
    double sum = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        double d = planar_distance(a.values[k], b.values[k]);
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(a.values.size()));
}

DirectedResult modified_hausdorff_directed(const RifPointCloud& source,
                                           const RifPointCloud& target, NnMode mode) {
    if (source.points.empty() || target.points.empty())
        throw ComparisonError("directed distance on an empty cloud");
    if (source.f_norm_hz != target.f_norm_hz)
        throw ComparisonError("clouds use different normalization frequencies");

    DirectedResult result;
    result.trace.reserve(source.points.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < source.points.size(); ++k) {
        double d = mode == NnMode::PointSet
                       ? nearest_distance(source.points[k], target).distance
                       : nearest_distance_polyline(source.points[k], target);
        sum += d;
        result.trace.push_back({source.source_freqs_hz[k], d});
    }
    result.distance = sum / static_cast<double>(source.points.size());
    return result;
}

double modified_hausdorff(const RifPointCloud& a, const RifPointCloud& b, Direction direction,
                          NnMode mode) {
    switch (direction) {
        case Direction::AtoB:
            return modified_hausdorff_directed(a, b, mode).distance;
        case Direction::BtoA:
            return modified_hausdorff_directed(b, a, mode).distance;
        case Direction::Symmetric:
            return std::max(modified_hausdorff_directed(a, b, mode).distance,
                            modified_hausdorff_directed(b, a, mode).distance);
    }
    throw ComparisonError("unknown direction");
}

double sps_from_distance(double distance) {
    return 100.0 * std::max(1.0 - distance, 0.0);
}

Band effective_band(const NetworkData& a, const NetworkData& b, const ComparisonConfig& cfg) {
    validate_config(cfg);
    if (a.empty() || b.empty()) throw ComparisonError("cannot compare an empty network");

    Band band;
    band.lo_hz = std::max({a.frequencies_hz.front(), b.frequencies_hz.front(), cfg.band_min_hz});
    band.hi_hz = std::min(a.frequencies_hz.back(), b.frequencies_hz.back());
    if (cfg.band_max_hz) band.hi_hz = std::min(band.hi_hz, *cfg.band_max_hz);
    if (!(band.lo_hz <= band.hi_hz)) {
        std::ostringstream msg;
        msg << "comparison band is empty: spans [" << a.frequencies_hz.front() << ", "
            << a.frequencies_hz.back() << "] and [" << b.frequencies_hz.front() << ", "
            << b.frequencies_hz.back() << "] Hz";
        if (cfg.band_max_hz) msg << " with cap " << *cfg.band_max_hz << " Hz";
        throw ComparisonError(msg.str());
    }

    const std::size_t need = cfg.nn_mode == NnMode::Polyline ? 2 : 1;
    if (count_in_band(a, band) < need || count_in_band(b, band) < need) {
        throw ComparisonError("fewer than " + std::to_string(need) +
                              " in-band frequency points on one side");
    }
    return band;
}

SimilarityReport compare(const NetworkData& a, const NetworkData& b,
                         const ComparisonConfig& cfg) {
    validate_config(cfg);
    if (a.parameter != ParamType::S || b.parameter != ParamType::S)
        throw ComparisonError("comparison is defined for S-parameters only (got " +
                              std::string(to_string(a.parameter)) + " vs " +
                              std::string(to_string(b.parameter)) + ")");
    if (a.n_ports != b.n_ports)
        throw ComparisonError("port count mismatch: " + std::to_string(a.n_ports) + " vs " +
                              std::to_string(b.n_ports));

    const Band band = effective_band(a, b, cfg);

    SimilarityReport report;
    report.effective_band = band;
    report.config_echo = cfg;
    report.label_a = a.source_label;
    report.label_b = b.source_label;

    const int n = a.n_ports;
    report.per_element.reserve(static_cast<std::size_t>(n) * n);
    double worst_distance = 0.0;
    double worst_sps = 100.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            RifPointCloud ca = to_rif(a, {i, j}, cfg.f_norm_hz, band);
            RifPointCloud cb = to_rif(b, {i, j}, cfg.f_norm_hz, band);

            ElementReport er;
            er.element = {i, j};
            er.effective_band = band;
            switch (cfg.direction) {
                case Direction::AtoB: {
                    DirectedResult r = modified_hausdorff_directed(ca, cb, cfg.nn_mode);
                    er.d_mh = r.distance;
                    er.trace = std::move(r.trace);
                    break;
                }
                case Direction::BtoA: {
                    DirectedResult r = modified_hausdorff_directed(cb, ca, cfg.nn_mode);
                    er.d_mh = r.distance;
                    er.trace = std::move(r.trace);
                    break;
                }
                case Direction::Symmetric: {
                    DirectedResult ab = modified_hausdorff_directed(ca, cb, cfg.nn_mode);
                    DirectedResult ba = modified_hausdorff_directed(cb, ca, cfg.nn_mode);
                    er.d_mh = std::max(ab.distance, ba.distance);
                    // Model-to-measurement view of the trace.
                    er.trace = std::move(ab.trace);
                    break;
                }
            }
            er.sps = sps_from_distance(er.d_mh);
            er.tier = classify_tier(er.sps, cfg.tiers);

            worst_distance = std::max(worst_distance, er.d_mh);
            worst_sps = std::min(worst_sps, er.sps);
            report.per_element.push_back(std::move(er));
        }
    }

    report.d_mh_matrix = worst_distance;
    report.sps_matrix = worst_sps;
    report.tier = classify_tier(worst_sps, cfg.tiers);
    return report;
}

}  // namespace sps
