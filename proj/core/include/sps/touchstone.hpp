#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sps/network.hpp"

namespace sps {

enum class FreqUnit { Hz, kHz, MHz, GHz };
enum class ValueFormat { RI, MA, DB };

std::string_view to_string(FreqUnit u);
std::string_view to_string(ValueFormat f);
double unit_to_hz(FreqUnit u);

/// The `#` options line of a Touchstone v1.x file. Fields omitted from the
/// line take the standard defaults below.
struct OptionsLine {
    FreqUnit freq_unit = FreqUnit::GHz;
    ParamType parameter = ParamType::S;
    ValueFormat format = ValueFormat::MA;
    double reference_impedance = 50.0;
};

struct ParseResult {
    NetworkData network;
    OptionsLine options;
    std::vector<std::string> warnings;
};

/// Parses Touchstone v1.x text into a NetworkData.
///
/// Frequencies are converted to Hz and all values to complex real/imaginary
/// regardless of the file's numeric format. Handles `!` comments (full-line
/// and trailing), blank lines, wrapped N-port rows, the 2-port column order
/// quirk (S11 S21 S12 S22 on each line), and a trailing 2-port noise-parameter
/// section (frequency restarts downward), which is skipped with a warning.
/// Touchstone v2 keyword blocks (`[Version]` etc.) are rejected.
///
/// The port count comes from `port_count_hint` when given (callers reading
/// from a file should pass the `.sNp` extension digit); otherwise it is
/// inferred from the size of the first frequency block.
///
/// Throws ParseError on malformed input.
ParseResult parse_touchstone(std::string_view text,
                             std::optional<int> port_count_hint = std::nullopt);

/// Reads and parses a Touchstone file. The port count hint is taken from the
/// extension digit (`.s2p` -> 2) when present, and the network's source_label
/// is set to the file stem. Throws ParseError when the file cannot be read.
ParseResult read_touchstone_file(const std::filesystem::path& path);

/// Renders a NetworkData as Touchstone v1.x text.
///
/// Values are emitted with shortest round-trip precision, and frequencies are
/// emitted so that parsing reproduces the stored Hz value exactly for any
/// unit. Layout follows the v1 conventions the parser expects: 2-port lines
/// in S11 S21 S12 S22 order, N >= 3 matrices row-major with each matrix row
/// starting a new line and at most 4 entries per line.
std::string write_touchstone(const NetworkData& net,
                             ValueFormat format = ValueFormat::RI,
                             FreqUnit unit = FreqUnit::GHz);

void write_touchstone_file(const std::filesystem::path& path, const NetworkData& net,
                           ValueFormat format = ValueFormat::RI,
                           FreqUnit unit = FreqUnit::GHz);

}  // namespace sps
