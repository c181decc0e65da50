#include "sps/rif.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sps/errors.hpp"

namespace sps {

namespace {

// Plain sqrt-of-sum-of-squares on purpose: with dz == 0 this reduces
// bit-exactly to the 2D distance, which the collocated-grid identities in
// the metrics layer rely on.
double distance3(const RifPoint& a, const RifPoint& b) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double segment_distance(const RifPoint& p, const RifPoint& a, const RifPoint& b) {
    double vx = b.x - a.x;
    double vy = b.y - a.y;
    double vz = b.z - a.z;
    double len2 = vx * vx + vy * vy + vz * vz;
    double t = 0.0;
    if (len2 > 0.0) {
        t = ((p.x - a.x) * vx + (p.y - a.y) * vy + (p.z - a.z) * vz) / len2;
    }
    // Hitting the endpoints exactly keeps this <= the point-set distance even
    // at the last ulp, so clamp to the endpoint coordinates themselves.
    if (t <= 0.0) return distance3(p, a);
    if (t >= 1.0) return distance3(p, b);
    RifPoint q{a.x + t * vx, a.y + t * vy, a.z + t * vz};
    return distance3(p, q);
}

}  // namespace

RifPointCloud to_rif(const NetworkData& net, Element element, double f_norm_hz,
                     std::optional<Band> band) {
    if (!(f_norm_hz > 0.0))
        throw ComparisonError("normalization frequency must be positive");
    if (element.i < 1 || element.i > net.n_ports || element.j < 1 || element.j > net.n_ports)
        throw ComparisonError("element " + element_label(element) + " is out of range for a " +
                              std::to_string(net.n_ports) + "-port network");
    // Closed interval; lo == hi is a legal one-point band (a cap sitting
    // exactly on the common lower edge produces it).
    if (band && band->lo_hz > band->hi_hz)
        throw ComparisonError("band must satisfy lo <= hi");

    RifPointCloud cloud;
    cloud.element = element;
    cloud.f_norm_hz = f_norm_hz;
    cloud.points.reserve(net.size());
    cloud.source_freqs_hz.reserve(net.size());
    for (std::size_t k = 0; k < net.size(); ++k) {
        double f = net.frequencies_hz[k];
        if (band && !band->contains(f)) continue;
        const std::complex<double>& s = net.matrices[k](element.i - 1, element.j - 1);
        cloud.points.push_back({s.real(), s.imag(), f / f_norm_hz});
        cloud.source_freqs_hz.push_back(f);
    }
    if (cloud.points.empty())
        throw ComparisonError("no frequency points of " + element_label(element) +
                              " fall inside the requested band");
    return cloud;
}

NearestHit nearest_distance_brute(const RifPoint& p, const RifPointCloud& cloud) {
    const auto& pts = cloud.points;
    if (pts.empty()) throw ComparisonError("nearest-point query on an empty cloud");
    NearestHit best{distance3(p, pts[0]), 0};
    for (std::size_t m = 1; m < pts.size(); ++m) {
        double d = distance3(p, pts[m]);
        if (d < best.distance) best = {d, m};
    }
    return best;
}

NearestHit nearest_distance(const RifPoint& p, const RifPointCloud& cloud) {
    const auto& pts = cloud.points;
    if (pts.empty()) throw ComparisonError("nearest-point query on an empty cloud");
    const auto n = static_cast<std::ptrdiff_t>(pts.size());
    constexpr double inf = std::numeric_limits<double>::infinity();

    auto first_ge = std::lower_bound(pts.begin(), pts.end(), p.z,
                                     [](const RifPoint& q, double z) { return q.z < z; });
    std::ptrdiff_t right = first_ge - pts.begin();
    std::ptrdiff_t left = right - 1;

    NearestHit best{inf, 0};
    auto consider = [&](std::ptrdiff_t idx) {
        double d = distance3(p, pts[idx]);
        auto u = static_cast<std::size_t>(idx);
        if (d < best.distance || (d == best.distance && u < best.index)) best = {d, u};
    };

    // Candidates with |dz| == best can still tie and win on index, so a side
    // dies only once its z-gap strictly exceeds the best distance.
    while (left >= 0 || right < n) {
        double gap_left = left >= 0 ? p.z - pts[left].z : inf;
        double gap_right = right < n ? pts[right].z - p.z : inf;
        if (gap_left <= gap_right) {
            if (gap_left > best.distance) {
                left = -1;
                continue;
            }
            consider(left--);
        } else {
            if (gap_right > best.distance) {
                right = n;
                continue;
            }
            consider(right++);
        }
    }
    return best;
}

double nearest_distance_polyline(const RifPoint& p, const RifPointCloud& cloud) {
    const auto& pts = cloud.points;
    if (pts.size() < 2)
        throw ComparisonError("polyline distance needs a cloud of at least 2 points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m + 1 < pts.size(); ++m) {
        best = std::min(best, segment_distance(p, pts[m], pts[m + 1]));
    }
    return best;
}

}  // namespace sps
