#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sps {

/// Network parameter kind declared in a Touchstone options line. Files with
/// Y/Z/G/H data parse and write back fine, but similarity comparison is
/// defined for S-parameters only.
enum class ParamType { S, Y, Z, G, H };

std::string_view to_string(ParamType p);

/// One element of an N-port matrix, addressed by 1-based port pair (i, j)
/// as in the usual S11/S21 notation.
struct Element {
    int i = 1;
    int j = 1;

    friend bool operator==(const Element&, const Element&) = default;
};

/// "S11", "S21", ...; ports above 9 are separated: "S10_11".
std::string element_label(Element e);

/// Closed frequency interval [lo_hz, hi_hz].
struct Band {
    double lo_hz = 0.0;
    double hi_hz = 0.0;

    bool contains(double f_hz) const { return f_hz >= lo_hz && f_hz <= hi_hz; }
};

/// Dense N x N complex matrix, row-major, 0-based access.
class SMatrix {
public:
    SMatrix() = default;
    explicit SMatrix(int order)
        : order_(order),
          values_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order)) {}

    int order() const { return order_; }

    std::complex<double>& operator()(int row, int col) {
        return values_[static_cast<std::size_t>(row) * order_ + col];
    }
    const std::complex<double>& operator()(int row, int col) const {
        return values_[static_cast<std::size_t>(row) * order_ + col];
    }

private:
    int order_ = 0;
    std::vector<std::complex<double>> values_;
};

/// A sampled N-port network: one S-matrix per frequency point.
///
/// Frequencies are always stored in Hz (parsers convert on the way in) and
/// must be strictly increasing and positive. Instances are plain values;
/// treat them as immutable once filled and they are safe to share across
/// threads.
struct NetworkData {
    int n_ports = 0;
    std::vector<double> frequencies_hz;
    std::vector<SMatrix> matrices;
    std::string source_label;
    double reference_impedance = 50.0;
    ParamType parameter = ParamType::S;

    bool empty() const { return frequencies_hz.empty(); }
    std::size_t size() const { return frequencies_hz.size(); }
};

/// Throws std::invalid_argument when the structural invariants do not hold:
/// strictly increasing positive frequencies, one matrix per point, every
/// matrix of order n_ports.
void validate_network(const NetworkData& net);

/// Largest |s_ij| over all points, with the frequency and element attaining it.
struct MagnitudePeak {
    double magnitude = 0.0;
    double freq_hz = 0.0;
    Element element;
};

MagnitudePeak max_magnitude(const NetworkData& net);

/// Warning text when the data exceeds the passive bound |s| <= 1, else
/// nullopt. Measured data legitimately overshoots a little, so this is
/// advisory and never an error.
std::optional<std::string> passivity_warning(const NetworkData& net);

/// Median spacing of the frequency grid; 0 when there are fewer than two points.
double median_frequency_step_hz(const NetworkData& net);

}  // namespace sps
