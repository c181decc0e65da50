#pragma once

#include <utility>
#include <vector>

#include "sps/network.hpp"

namespace sps {

/// Equidistant sweep: start, start + step, ... up to and including stop.
struct FrequencyGrid {
    double start_hz = 0.0;
    double stop_hz = 0.0;
    double step_hz = 0.0;

    std::vector<double> frequencies() const;
};

/// Matched transmission-line fixture. Loss in dB/m is specified at f0 and
/// scales with sqrt(f/f0), skin-effect style, so mismatch between a lossy
/// line and its lossless twin grows with frequency.
struct LineSpec {
    double length_m = 0.0508;
    double delay_per_m_s = 5.6e-9;
    double loss_db_per_m_at_f0 = 0.0;
    double f0_hz = 1e9;
    FrequencyGrid grid;
};

/// 2-port matched line: S11 = S22 = 0, S21 = S12 = A(f) * exp(-j*2*pi*f*tau),
/// tau = length * delay_per_m, A(f) = 10^(-loss * length * sqrt(f/f0) / 20).
/// Passive and reciprocal by construction.
NetworkData ideal_line(const LineSpec& spec);

/// Two lossless 2-port notch resonators, identical except the resonance
/// center of the second is moved by shift_hz. With
/// delta(f) = f/f_res - f_res/f:
///   S21 = S12 = j*q*delta / (1 + j*q*delta)
///   S11 = S22 = -1 / (1 + j*q*delta)
/// which is unitary at every frequency (|S11|^2 + |S21|^2 == 1).
std::pair<NetworkData, NetworkData> shifted_resonator_pair(double f_res_hz,
                                                           double shift_hz, double q,
                                                           const FrequencyGrid& grid);

}  // namespace sps
