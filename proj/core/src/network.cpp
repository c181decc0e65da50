#include "sps/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sps {

std::string_view to_string(ParamType p) {
    switch (p) {
        case ParamType::S: return "S";
        case ParamType::Y: return "Y";
        case ParamType::Z: return "Z";
        case ParamType::G: return "G";
        case ParamType::H: return "H";
    }
    return "?";
}

std::string element_label(Element e) {
    std::string label = "S";
    if (e.i > 9 || e.j > 9) {
        label += std::to_string(e.i) + "_" + std::to_string(e.j);
    } else {
        label += std::to_string(e.i) + std::to_string(e.j);
    }
    return label;
}

void validate_network(const NetworkData& net) {
    if (net.n_ports < 1) throw std::invalid_argument("network has no ports");
    if (net.frequencies_hz.empty()) throw std::invalid_argument("network has no frequency points");
    if (net.matrices.size() != net.frequencies_hz.size())
        throw std::invalid_argument("matrix count does not match frequency count");
    double prev = 0.0;
    for (double f : net.frequencies_hz) {
        if (!(f > prev))
            throw std::invalid_argument("frequencies must be positive and strictly increasing");
        prev = f;
    }
    for (const SMatrix& m : net.matrices) {
        if (m.order() != net.n_ports)
            throw std::invalid_argument("matrix order does not match port count");
    }
    if (!(net.reference_impedance > 0.0))
        throw std::invalid_argument("reference impedance must be positive");
}

MagnitudePeak max_magnitude(const NetworkData& net) {
    MagnitudePeak peak;
    for (std::size_t k = 0; k < net.size(); ++k) {
        for (int i = 0; i < net.n_ports; ++i) {
            for (int j = 0; j < net.n_ports; ++j) {
                double mag = std::abs(net.matrices[k](i, j));
                if (mag > peak.magnitude) {
                    peak = {mag, net.frequencies_hz[k], Element{i + 1, j + 1}};
                }
            }
        }
    }
    return peak;
}

std::optional<std::string> passivity_warning(const NetworkData& net) {
    if (net.empty()) return std::nullopt;
    MagnitudePeak peak = max_magnitude(net);
    if (peak.magnitude <= 1.0) return std::nullopt;
    std::ostringstream msg;
    msg << "|" << element_label(peak.element) << "| = " << peak.magnitude << " at "
        << peak.freq_hz << " Hz exceeds 1; data is not passive";
    if (!net.source_label.empty()) msg << " (" << net.source_label << ")";
    return msg.str();
}

double median_frequency_step_hz(const NetworkData& net) {
    if (net.size() < 2) return 0.0;
    std::vector<double> steps(net.size() - 1);
    for (std::size_t k = 0; k + 1 < net.size(); ++k) {
        steps[k] = net.frequencies_hz[k + 1] - net.frequencies_hz[k];
    }
    std::sort(steps.begin(), steps.end());
    std::size_t mid = steps.size() / 2;
    return steps.size() % 2 == 1 ? steps[mid] : 0.5 * (steps[mid - 1] + steps[mid]);
}

}  // namespace sps
