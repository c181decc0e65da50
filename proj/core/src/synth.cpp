#include "sps/synth.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace sps {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

void validate_grid(const FrequencyGrid& grid) {
    if (!(grid.start_hz > 0.0) || !(grid.stop_hz > 0.0) || !(grid.step_hz > 0.0))
        throw std::invalid_argument("grid start/stop/step must be positive");
    if (!(grid.start_hz < grid.stop_hz))
        throw std::invalid_argument("grid start must be below stop");
}

}  // namespace

std::vector<double> FrequencyGrid::frequencies() const {
    validate_grid(*this);
    std::vector<double> freqs;
    for (std::size_t k = 0;; ++k) {
        double f = start_hz + static_cast<double>(k) * step_hz;
        if (f > stop_hz * (1.0 + 1e-12)) break;
        freqs.push_back(f);
    }
    return freqs;
}

NetworkData ideal_line(const LineSpec& spec) {
    if (spec.length_m < 0.0) throw std::invalid_argument("line length must be non-negative");
    if (!(spec.delay_per_m_s > 0.0)) throw std::invalid_argument("delay per meter must be positive");
    if (spec.loss_db_per_m_at_f0 < 0.0) throw std::invalid_argument("loss must be non-negative");
    if (!(spec.f0_hz > 0.0)) throw std::invalid_argument("loss reference frequency must be positive");

    const double tau = spec.length_m * spec.delay_per_m_s;
    NetworkData net;
    net.n_ports = 2;
    net.frequencies_hz = spec.grid.frequencies();
    net.matrices.reserve(net.frequencies_hz.size());
    for (double f : net.frequencies_hz) {
        double amp = std::pow(
            10.0, -(spec.loss_db_per_m_at_f0 * spec.length_m * std::sqrt(f / spec.f0_hz)) / 20.0);
        double phase = -kTwoPi * f * tau;
        std::complex<double> s21{amp * std::cos(phase), amp * std::sin(phase)};
        SMatrix m(2);
        m(0, 0) = m(1, 1) = 0.0;
        m(0, 1) = m(1, 0) = s21;
        net.matrices.push_back(std::move(m));
    }
    return net;
}

std::pair<NetworkData, NetworkData> shifted_resonator_pair(double f_res_hz, double shift_hz,
                                                           double q,
                                                           const FrequencyGrid& grid) {
    validate_grid(grid);
    if (!(q > 0.0)) throw std::invalid_argument("resonator q must be positive");
    if (!(f_res_hz >= grid.start_hz && f_res_hz <= grid.stop_hz))
        throw std::invalid_argument("resonance frequency must lie inside the grid");
    if (!(f_res_hz + shift_hz > 0.0))
        throw std::invalid_argument("shifted resonance frequency must stay positive");

    auto make = [&](double fr) {
        NetworkData net;
        net.n_ports = 2;
        net.frequencies_hz = grid.frequencies();
        net.matrices.reserve(net.frequencies_hz.size());
        for (double f : net.frequencies_hz) {
            double detuning = f / fr - fr / f;
            std::complex<double> denom{1.0, q * detuning};
            std::complex<double> s21 = std::complex<double>{0.0, q * detuning} / denom;
            std::complex<double> s11 = -1.0 / denom;
            SMatrix m(2);
            m(0, 0) = m(1, 1) = s11;
            m(0, 1) = m(1, 0) = s21;
            net.matrices.push_back(std::move(m));
        }
        return net;
    };
    return {make(f_res_hz), make(f_res_hz + shift_hz)};
}

}  // namespace sps
