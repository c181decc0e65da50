#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sps/network.hpp"

namespace sps {

/// A point in RIF space: (Re(s), Im(s), f / f_norm). All three coordinates
/// are dimensionless.
struct RifPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// One matrix element's frequency sweep as an ordered 3D point set.
///
/// Invariants (enforced by to_rif, not by the type itself):
///   - points are ordered by strictly increasing z
///   - points[k].z == source_freqs_hz[k] / f_norm_hz exactly
struct RifPointCloud {
    Element element;
    double f_norm_hz = 1e9;
    std::vector<RifPoint> points;
    std::vector<double> source_freqs_hz;
};

struct NearestHit {
    double distance = 0.0;
    std::size_t index = 0;
};

/// Builds the RIF cloud for one matrix element, keeping only samples inside
/// the closed band [lo_hz, hi_hz] when a band is given.
/// Throws ComparisonError for an out-of-range element, non-positive f_norm,
/// or when no sample survives the band filter.
RifPointCloud to_rif(const NetworkData& net, Element element, double f_norm_hz,
                     std::optional<Band> band = std::nullopt);

/// Exhaustive nearest-point query; ties broken by smallest index.
/// The oracle for nearest_distance — kept public so callers can cross-check.
NearestHit nearest_distance_brute(const RifPoint& p, const RifPointCloud& cloud);

/// Nearest-point query exploiting the z-sorted order: binary-search the
/// closest z, expand outward both ways, and stop a side once its z-gap alone
/// exceeds the best distance found (|dz| lower-bounds the 3D distance).
/// Returns exactly what nearest_distance_brute returns, ties included.
NearestHit nearest_distance(const RifPoint& p, const RifPointCloud& cloud);

/// Distance from p to the polyline through the cloud's points (clamped
/// projection onto each segment). Never exceeds the point-set distance.
/// Requires at least 2 points.
double nearest_distance_polyline(const RifPoint& p, const RifPointCloud& cloud);

}  // namespace sps
