#include "sps/touchstone.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sps/errors.hpp"

namespace sps {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kDbFloor = -600.0;  // stands in for -inf when |s| == 0

std::string to_upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && is_space(s[pos])) ++pos;
        std::size_t start = pos;
        while (pos < s.size() && !is_space(s[pos])) ++pos;
        if (pos > start) tokens.push_back(s.substr(start, pos - start));
    }
    return tokens;
}

// Whole-token float parse, locale independent. Leading '+' is accepted
// (from_chars itself rejects it).
bool parse_double(std::string_view token, double& out) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (token.empty()) return false;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::string format_double(double v) {
    std::array<char, 40> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

OptionsLine parse_options_line(std::string_view body) {
    OptionsLine opt;
    auto tokens = split_ws(body);
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        std::string token = to_upper(tokens[t]);
        if (token == "HZ") {
            opt.freq_unit = FreqUnit::Hz;
        } else if (token == "KHZ") {
            opt.freq_unit = FreqUnit::kHz;
        } else if (token == "MHZ") {
            opt.freq_unit = FreqUnit::MHz;
        } else if (token == "GHZ") {
            opt.freq_unit = FreqUnit::GHz;
        } else if (token == "S") {
            opt.parameter = ParamType::S;
        } else if (token == "Y") {
            opt.parameter = ParamType::Y;
        } else if (token == "Z") {
            opt.parameter = ParamType::Z;
        } else if (token == "G") {
            opt.parameter = ParamType::G;
        } else if (token == "H") {
            opt.parameter = ParamType::H;
        } else if (token == "RI") {
            opt.format = ValueFormat::RI;
        } else if (token == "MA") {
            opt.format = ValueFormat::MA;
        } else if (token == "DB") {
            opt.format = ValueFormat::DB;
        } else if (token == "R") {
            double r = 0.0;
            if (t + 1 >= tokens.size() || !parse_double(tokens[t + 1], r))
                throw ParseError("malformed options line: R must be followed by a resistance");
            if (!(r > 0.0))
                throw ParseError("malformed options line: reference impedance must be positive");
            opt.reference_impedance = r;
            ++t;
        } else if (token.size() > 1 && token.front() == 'R') {
            // "R50" without the space shows up in the wild
            double r = 0.0;
            if (!parse_double(tokens[t].substr(1), r) || !(r > 0.0))
                throw ParseError("malformed options line: unrecognized token '" +
                                 std::string(tokens[t]) + "'");
            opt.reference_impedance = r;
        } else {
            throw ParseError("malformed options line: unrecognized token '" +
                             std::string(tokens[t]) + "'");
        }
    }
    return opt;
}

std::complex<double> decode_value(double first, double second, ValueFormat format) {
    switch (format) {
        case ValueFormat::RI:
            return {first, second};
        case ValueFormat::MA: {
            double rad = second * kPi / 180.0;
            return {first * std::cos(rad), first * std::sin(rad)};
        }
        case ValueFormat::DB: {
            double mag = std::pow(10.0, first / 20.0);
            double rad = second * kPi / 180.0;
            return {mag * std::cos(rad), mag * std::sin(rad)};
        }
    }
    return {};
}

// One frequency record: the leading frequency token (kept verbatim for exact
// unit conversion) plus all value tokens, with wrapped continuation lines
// already joined.
struct FreqBlock {
    std::string freq_token;
    std::vector<double> values;
};

int unit_exponent(FreqUnit u) {
    switch (u) {
        case FreqUnit::Hz: return 0;
        case FreqUnit::kHz: return 3;
        case FreqUnit::MHz: return 6;
        case FreqUnit::GHz: return 9;
    }
    return 0;
}

// Converts token * 10^exp10 by shifting the decimal exponent in the string
// before the one binary rounding. Multiplying the parsed double by the unit
// afterwards would round twice and is not exactly invertible; this is.
bool parse_scaled(std::string_view token, int exp10, double& out) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (token.empty()) return false;
    if (exp10 == 0) return parse_double(token, out);

    std::size_t epos = token.find_first_of("eE");
    std::string rebuilt;
    if (epos == std::string_view::npos) {
        rebuilt = std::string(token) + "e" + std::to_string(exp10);
    } else {
        std::string_view exp_part = token.substr(epos + 1);
        if (!exp_part.empty() && exp_part.front() == '+') exp_part.remove_prefix(1);
        int old_exp = 0;
        const char* b = exp_part.data();
        const char* e = b + exp_part.size();
        auto [p, ec] = std::from_chars(b, e, old_exp);
        if (ec != std::errc() || p != e) return false;
        rebuilt = std::string(token.substr(0, epos)) + "e" + std::to_string(old_exp + exp10);
    }
    return parse_double(rebuilt, out);
}

// Shortest representation of f_hz expressed in the unit 10^exp10, again by
// decimal exponent arithmetic so that parse_scaled reads back f_hz exactly.
std::string format_freq_in_unit(double f_hz, int exp10) {
    std::string s = format_double(f_hz);
    if (exp10 == 0) return s;
    std::size_t epos = s.find_first_of("eE");
    int old_exp = 0;
    std::string mantissa;
    if (epos == std::string::npos) {
        mantissa = s;
    } else {
        mantissa = s.substr(0, epos);
        old_exp = std::stoi(s.substr(epos + 1));
    }
    int new_exp = old_exp - exp10;
    if (new_exp == 0) return mantissa;
    return mantissa + "e" + std::to_string(new_exp);
}

int infer_port_count(std::size_t first_block_values) {
    for (int n = 1; n <= 64; ++n) {
        if (first_block_values == static_cast<std::size_t>(2 * n * n)) return n;
    }
    throw ParseError("cannot infer port count from a frequency block of " +
                     std::to_string(first_block_values) + " values");
}

void encode_value(std::string& out, const std::complex<double>& s, ValueFormat format) {
    switch (format) {
        case ValueFormat::RI:
            out += format_double(s.real());
            out += ' ';
            out += format_double(s.imag());
            break;
        case ValueFormat::MA: {
            double mag = std::abs(s);
            double ang = mag == 0.0 ? 0.0 : std::arg(s) * 180.0 / kPi;
            out += format_double(mag);
            out += ' ';
            out += format_double(ang);
            break;
        }
        case ValueFormat::DB: {
            double mag = std::abs(s);
            double db = mag == 0.0 ? kDbFloor : 20.0 * std::log10(mag);
            double ang = mag == 0.0 ? 0.0 : std::arg(s) * 180.0 / kPi;
            out += format_double(db);
            out += ' ';
            out += format_double(ang);
            break;
        }
    }
}

}  // namespace

std::string_view to_string(FreqUnit u) {
    switch (u) {
        case FreqUnit::Hz: return "Hz";
        case FreqUnit::kHz: return "kHz";
        case FreqUnit::MHz: return "MHz";
        case FreqUnit::GHz: return "GHz";
    }
    return "?";
}

std::string_view to_string(ValueFormat f) {
    switch (f) {
        case ValueFormat::RI: return "RI";
        case ValueFormat::MA: return "MA";
        case ValueFormat::DB: return "DB";
    }
    return "?";
}

double unit_to_hz(FreqUnit u) {
    switch (u) {
        case FreqUnit::Hz: return 1.0;
        case FreqUnit::kHz: return 1e3;
        case FreqUnit::MHz: return 1e6;
        case FreqUnit::GHz: return 1e9;
    }
    return 1.0;
}

ParseResult parse_touchstone(std::string_view text, std::optional<int> port_count_hint) {
    ParseResult result;
    OptionsLine opt;
    bool saw_options = false;
    bool saw_data = false;
    std::vector<FreqBlock> blocks;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (std::size_t bang = line.find('!'); bang != std::string_view::npos)
            line = line.substr(0, bang);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            throw ParseError("Touchstone v2 keyword block '" + std::string(line) +
                             "' is not supported; only v1.x files are accepted");
        }
        if (line.front() == '#') {
            if (saw_options)
                throw ParseError("line " + std::to_string(line_no) + ": duplicate options line");
            if (saw_data)
                throw ParseError("line " + std::to_string(line_no) + ": options line after data");
            opt = parse_options_line(line.substr(1));
            saw_options = true;
            continue;
        }

        auto tokens = split_ws(line);
        std::vector<double> numbers(tokens.size());
        for (std::size_t t = 0; t < tokens.size(); ++t) {
            if (!parse_double(tokens[t], numbers[t]))
                throw ParseError("line " + std::to_string(line_no) + ": bad number '" +
                                 std::string(tokens[t]) + "'");
        }
        saw_data = true;
        if (numbers.size() % 2 == 1) {
            FreqBlock block;
            block.freq_token = std::string(tokens.front());
            block.values.assign(numbers.begin() + 1, numbers.end());
            blocks.push_back(std::move(block));
        } else {
            if (blocks.empty())
                throw ParseError("line " + std::to_string(line_no) +
                                 ": continuation data before any frequency line");
            blocks.back().values.insert(blocks.back().values.end(), numbers.begin(),
                                        numbers.end());
        }
    }

    if (blocks.empty()) throw ParseError("no data rows found");

    int n_ports = 0;
    if (port_count_hint) {
        if (*port_count_hint < 1)
            throw ParseError("port count hint must be positive");
        n_ports = *port_count_hint;
    } else {
        n_ports = infer_port_count(blocks.front().values.size());
    }
    const std::size_t values_per_block = static_cast<std::size_t>(2) * n_ports * n_ports;

    const int exp10 = unit_exponent(opt.freq_unit);
    std::vector<double> freqs_hz(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (!parse_scaled(blocks[k].freq_token, exp10, freqs_hz[k]))
            throw ParseError("bad frequency '" + blocks[k].freq_token + "'");
    }

    // A 2-port file may trail off into a noise-parameter section, flagged by
    // the frequency dropping back down. Everything from there on is skipped.
    std::size_t usable = blocks.size();
    for (std::size_t k = 1; k < blocks.size(); ++k) {
        if (n_ports == 2 && freqs_hz[k] < freqs_hz[k - 1]) {
            usable = k;
            result.warnings.push_back("noise-parameter section (" +
                                      std::to_string(blocks.size() - k) +
                                      " rows) detected and ignored");
            break;
        }
    }

    NetworkData net;
    net.n_ports = n_ports;
    net.reference_impedance = opt.reference_impedance;
    net.parameter = opt.parameter;

    double prev_hz = 0.0;
    for (std::size_t k = 0; k < usable; ++k) {
        const FreqBlock& block = blocks[k];
        if (block.values.size() != values_per_block) {
            throw ParseError("frequency block " + std::to_string(k + 1) + " has " +
                             std::to_string(block.values.size()) + " values, expected " +
                             std::to_string(values_per_block) + " for " +
                             std::to_string(n_ports) + " ports");
        }
        double f_hz = freqs_hz[k];
        if (!(f_hz > 0.0))
            throw ParseError("frequency block " + std::to_string(k + 1) +
                             ": frequencies must be positive");
        if (!(f_hz > prev_hz))
            throw ParseError("frequency block " + std::to_string(k + 1) +
                             ": frequencies must be strictly increasing");
        prev_hz = f_hz;

        SMatrix m(n_ports);
        for (std::size_t v = 0; v < values_per_block / 2; ++v) {
            std::complex<double> s =
                decode_value(block.values[2 * v], block.values[2 * v + 1], opt.format);
            if (n_ports == 2) {
                // File order is S11 S21 S12 S22.
                static constexpr int kRow[4] = {0, 1, 0, 1};
                static constexpr int kCol[4] = {0, 0, 1, 1};
                m(kRow[v], kCol[v]) = s;
            } else {
                m(static_cast<int>(v) / n_ports, static_cast<int>(v) % n_ports) = s;
            }
        }
        net.frequencies_hz.push_back(f_hz);
        net.matrices.push_back(std::move(m));
    }

    if (auto warn = passivity_warning(net)) result.warnings.push_back(*warn);

    result.network = std::move(net);
    result.options = opt;
    return result;
}

ParseResult read_touchstone_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();

    // The .sNp extension digit is the most reliable port count source.
    std::optional<int> hint;
    std::string ext = to_upper(path.extension().string());
    if (ext.size() >= 4 && ext.front() == '.' && ext[1] == 'S' && ext.back() == 'P') {
        std::string digits = ext.substr(2, ext.size() - 3);
        bool all_digits = !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c)) != 0;
        });
        if (all_digits) {
            int n = std::stoi(digits);
            if (n >= 1) hint = n;
        }
    }

    ParseResult result = parse_touchstone(buffer.str(), hint);
    result.network.source_label = path.stem().string();
    return result;
}

std::string write_touchstone(const NetworkData& net, ValueFormat format, FreqUnit unit) {
    validate_network(net);
    std::string out;
    if (!net.source_label.empty()) {
        out += "! ";
        out += net.source_label;
        out += '\n';
    }
    out += "# ";
    out += to_upper(to_string(unit));
    out += ' ';
    out += to_string(net.parameter);
    out += ' ';
    out += to_string(format);
    out += " R ";
    out += format_double(net.reference_impedance);
    out += '\n';

    const int exp10 = unit_exponent(unit);
    const int n = net.n_ports;
    for (std::size_t k = 0; k < net.size(); ++k) {
        const SMatrix& m = net.matrices[k];
        out += format_freq_in_unit(net.frequencies_hz[k], exp10);
        if (n == 1) {
            out += ' ';
            encode_value(out, m(0, 0), format);
            out += '\n';
        } else if (n == 2) {
            for (auto [i, j] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
                out += ' ';
                encode_value(out, m(i, j), format);
            }
            out += '\n';
        } else {
            // Row-major, each matrix row starts a new line, at most 4 entries
            // per line.
            for (int i = 0; i < n; ++i) {
                int on_line = 0;
                for (int j = 0; j < n; ++j) {
                    if (on_line == 4) {
                        out += '\n';
                        on_line = 0;
                    }
                    out += ' ';
                    encode_value(out, m(i, j), format);
                    ++on_line;
                }
                out += '\n';
            }
        }
    }
    return out;
}

void write_touchstone_file(const std::filesystem::path& path, const NetworkData& net,
                           ValueFormat format, FreqUnit unit) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << write_touchstone(net, format, unit);
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace sps
