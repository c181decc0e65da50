// Acceptance suite. Runs every gate criterion at its stated tolerance and
// prints one pass/fail line each. Usage: acceptance <sps-binary> <golden-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "batch_fixtures.hpp"
#include "sps/metrics.hpp"
#include "sps/rif.hpp"
#include "sps/synth.hpp"
#include "sps/touchstone.hpp"
#include "test_support.hpp"
#include "touchstone_corpus.hpp"

namespace fs = std::filesystem;
using namespace sps;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_bin;
fs::path g_golden;
int g_failed = 0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void run_criterion(const std::string& name, double time_budget_s,
                   const std::function<Outcome()>& body) {
    auto start = Clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome.pass = false;
        outcome.detail = std::string("exception: ") + e.what();
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (time_budget_s > 0.0 && elapsed > time_budget_s) {
        outcome.pass = false;
        outcome.detail += (outcome.detail.empty() ? "" : "; ") + std::string("over time budget ") +
                          std::to_string(time_budget_s) + " s";
    }
    std::printf("[%s] %-28s %6.2f s%s%s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), elapsed,
                outcome.detail.empty() ? "" : "  -- ", outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++g_failed;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- criteria -------------------------------------------------------------

// compare(x, x) == 100 exactly for randomized networks of 1..4 ports.
Outcome identity_exact() {
    std::mt19937_64 rng(0xACC01);
    for (int trial = 0; trial < 20; ++trial) {
        int ports = 1 + static_cast<int>(rng() % 4);
        std::size_t points = 10 + rng() % 4991;  // 10..5000
        NetworkData net = testutil::random_network(rng, ports, points);
        SimilarityReport rep = compare(net, net, ComparisonConfig{});
        if (rep.sps_matrix != 100.0 || rep.tier != Tier::Good || rep.d_mh_matrix != 0.0) {
            return {false, "trial " + std::to_string(trial) + ": sps " +
                               std::to_string(rep.sps_matrix)};
        }
    }
    return {true, "20 networks, 1-4 ports, 10-5000 points"};
}

// On identical equidistant grids with step/f_norm > 2 the directed rif
// distance equals the collocated mean distance to 1e-12.
Outcome collocated_equality() {
    std::mt19937_64 rng(0xACC02);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        double step = 1e7 * (1.0 + 9.0 * u01(rng));
        double f0 = step * (1.0 + 9.0 * u01(rng));
        std::size_t points = 20 + rng() % 180;
        NetworkData a = testutil::random_equidistant_network(rng, 2, points, f0, step);
        NetworkData b = testutil::random_equidistant_network(rng, 2, points, f0, step);
        double f_norm = step / (2.0 + 2.0 * u01(rng));  // step/f_norm in (2, 4]
        for (int i = 1; i <= 2; ++i) {
            for (int j = 1; j <= 2; ++j) {
                double d_dir = modified_hausdorff_directed(to_rif(a, {i, j}, f_norm),
                                                           to_rif(b, {i, j}, f_norm))
                                   .distance;
                double d_mean =
                    mean_abs_distance(element_sweep(a, {i, j}), element_sweep(b, {i, j}));
                worst = std::max(worst, std::abs(d_dir - d_mean));
            }
        }
    }
    if (worst > 1e-12) return {false, "worst |d_dir - d_mean| = " + std::to_string(worst)};
    return {true, "100 collocated pairs, worst gap " + std::to_string(worst)};
}

// For ANY f_norm the directed distance never exceeds the collocated mean.
Outcome collocated_upper_bound() {
    std::mt19937_64 rng(0xACC03);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        double step = 1e7 * (1.0 + 9.0 * u01(rng));
        double f0 = step * (1.0 + 9.0 * u01(rng));
        std::size_t points = 20 + rng() % 180;
        NetworkData a = testutil::random_equidistant_network(rng, 2, points, f0, step);
        NetworkData b = testutil::random_equidistant_network(rng, 2, points, f0, step);
        double f_norm = std::pow(10.0, 5.0 + 6.0 * u01(rng));
        for (int i = 1; i <= 2; ++i) {
            for (int j = 1; j <= 2; ++j) {
                double d_dir = modified_hausdorff_directed(to_rif(a, {i, j}, f_norm),
                                                           to_rif(b, {i, j}, f_norm))
                                   .distance;
                double d_mean =
                    mean_abs_distance(element_sweep(a, {i, j}), element_sweep(b, {i, j}));
                if (d_dir > d_mean) {
                    return {false, "trial " + std::to_string(trial) + ": " +
                                       std::to_string(d_dir) + " > " + std::to_string(d_mean)};
                }
            }
        }
    }
    return {true, "100 collocated pairs, no violation at any f_norm"};
}

// The pruned sweep returns exactly what the brute-force oracle returns.
Outcome nn_oracle_equivalence() {
    std::mt19937_64 rng(0xACC04);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    RifPointCloud cloud;
    int checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        if (trial % 10 == 0) {
            std::size_t m = 1 + rng() % 500;
            bool lattice = trial % 20 == 0;
            cloud.points.clear();
            cloud.source_freqs_hz.clear();
            cloud.f_norm_hz = 1e9;
            double z = u01(rng);
            for (std::size_t k = 0; k < m; ++k) {
                double x = 2.0 * u01(rng) - 1.0;
                double y = 2.0 * u01(rng) - 1.0;
                if (lattice) {
                    x = std::round(x * 2.0) / 2.0;
                    y = std::round(y * 2.0) / 2.0;
                    z += 0.25;
                } else {
                    z += 0.01 + u01(rng) * 0.2;
                }
                cloud.points.push_back({x, y, z});
                cloud.source_freqs_hz.push_back(z * 1e9);
            }
        }
        double span = cloud.points.back().z - cloud.points.front().z + 4.0;
        RifPoint p{2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0,
                   cloud.points.front().z - 2.0 + span * u01(rng)};
        NearestHit fast = nearest_distance(p, cloud);
        NearestHit brute = nearest_distance_brute(p, cloud);
        if (fast.index != brute.index || std::abs(fast.distance - brute.distance) > 1e-12) {
            return {false, "trial " + std::to_string(trial) + ": fast (" +
                               std::to_string(fast.distance) + ", " + std::to_string(fast.index) +
                               ") vs brute (" + std::to_string(brute.distance) + ", " +
                               std::to_string(brute.index) + ")"};
        }
        ++checked;
    }
    return {true, std::to_string(checked) + " query/cloud pairs, M <= 500"};
}

// Distance non-increasing / SPS non-decreasing in f_norm, and the smooth line
// fixture is stable between 100 MHz and 1 GHz normalization.
Outcome f_norm_monotonicity() {
    LineSpec lossless;
    lossless.grid = {1e7, 5e10, 1e7};
    LineSpec lossy = lossless;
    lossy.loss_db_per_m_at_f0 = 4.0;
    NetworkData line_a = ideal_line(lossless);
    NetworkData line_b = ideal_line(lossy);
    auto [res_a, res_b] = shifted_resonator_pair(1e10, 2e8, 50.0, FrequencyGrid{5e9, 1.5e10, 1e7});

    const double f_norms[] = {1e7, 1e8, 1e9, 1e10};
    double line_sps[4] = {0, 0, 0, 0};
    struct Fixture {
        const NetworkData* a;
        const NetworkData* b;
        const char* name;
    } fixtures[] = {{&line_a, &line_b, "line"}, {&res_a, &res_b, "resonator"}};

    for (const auto& fx : fixtures) {
        double prev_d = std::numeric_limits<double>::infinity();
        double prev_sps = -1.0;
        for (int k = 0; k < 4; ++k) {
            ComparisonConfig cfg;
            cfg.f_norm_hz = f_norms[k];
            SimilarityReport rep = compare(*fx.a, *fx.b, cfg);
            if (!(rep.d_mh_matrix <= prev_d) || !(rep.sps_matrix >= prev_sps)) {
                return {false, std::string(fx.name) + ": not monotone at f_norm " +
                                   std::to_string(f_norms[k])};
            }
            prev_d = rep.d_mh_matrix;
            prev_sps = rep.sps_matrix;
            if (fx.a == &line_a) line_sps[k] = rep.sps_matrix;
        }
    }

    double stability = std::abs(line_sps[2] - line_sps[1]);  // 1 GHz vs 100 MHz
    if (stability >= 0.5) {
        return {false, "line fixture moved " + std::to_string(stability) +
                           " SPS points between 100 MHz and 1 GHz normalization"};
    }
    return {true, "monotone on both fixtures; 100MHz-vs-1GHz drift " + std::to_string(stability)};
}

// A 2% resonance shift scores strictly better under rif matching than under
// the collocated mean distance.
Outcome shifted_resonator_beats_mean() {
    auto [a, b] = shifted_resonator_pair(1e10, 2e8, 50.0, FrequencyGrid{5e9, 1.5e10, 1e7});
    SimilarityReport rep = compare(a, b, ComparisonConfig{});  // f_norm = 1 GHz

    double mean_sps = 100.0;
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            double d = mean_abs_distance(element_sweep(a, {i, j}), element_sweep(b, {i, j}));
            mean_sps = std::min(mean_sps, sps_from_distance(d));
        }
    }
    if (!(rep.sps_matrix > mean_sps)) {
        return {false, "rif " + std::to_string(rep.sps_matrix) + " vs mean " +
                           std::to_string(mean_sps)};
    }
    std::ostringstream detail;
    detail.precision(6);
    detail << "rif " << rep.sps_matrix << " > mean " << mean_sps;
    return {true, detail.str()};
}

Outcome tier_fixtures() {
    struct Fix {
        double sps;
        Tier tier;
    } fixes[] = {{97.1513, Tier::Acceptable},
                 {92.5639, Tier::Acceptable},
                 {84.677, Tier::Inconclusive},
                 {99.2, Tier::Good},
                 {79.9, Tier::Bad}};
    for (const auto& f : fixes) {
        if (classify_tier(f.sps) != f.tier) {
            return {false, std::to_string(f.sps) + " classified as " +
                               std::string(to_string(classify_tier(f.sps)))};
        }
    }
    return {true, "5 fixture scores classified"};
}

// Lossy line vs its lossless twin: similarity strictly degrades as the
// comparison bandwidth grows.
Outcome bandwidth_degradation() {
    LineSpec lossless;
    lossless.grid = {1e7, 5e10, 1e7};
    LineSpec lossy = lossless;
    lossy.loss_db_per_m_at_f0 = 4.0;
    NetworkData a = ideal_line(lossless);
    NetworkData b = ideal_line(lossy);

    double sps[3];
    const double caps[] = {1e10, 3.5e10, 5e10};
    for (int k = 0; k < 3; ++k) {
        ComparisonConfig cfg;
        cfg.band_max_hz = caps[k];
        sps[k] = compare(a, b, cfg).sps_matrix;
    }
    if (!(sps[0] > sps[1] && sps[1] > sps[2])) {
        return {false, std::to_string(sps[0]) + " / " + std::to_string(sps[1]) + " / " +
                           std::to_string(sps[2])};
    }
    std::ostringstream detail;
    detail.precision(6);
    detail << sps[0] << " > " << sps[1] << " > " << sps[2];
    return {true, detail.str()};
}

Outcome parser_corpus() {
    auto cases = corpus::cases();
    if (cases.size() < 12) return {false, "corpus has only " + std::to_string(cases.size())};
    for (const auto& c : cases) {
        ParseResult r = parse_touchstone(c.text, c.port_hint);
        if (r.network.n_ports != c.n_ports || r.network.size() != c.freqs_hz.size()) {
            return {false, c.name + ": wrong shape"};
        }
        for (std::size_t k = 0; k < c.freqs_hz.size(); ++k) {
            if (std::abs(r.network.frequencies_hz[k] - c.freqs_hz[k]) >
                1e-9 * c.freqs_hz[k]) {
                return {false, c.name + ": frequency " + std::to_string(k)};
            }
            for (int i = 0; i < c.n_ports; ++i) {
                for (int j = 0; j < c.n_ports; ++j) {
                    auto expect = c.matrices[k][static_cast<std::size_t>(i) * c.n_ports + j];
                    if (std::abs(r.network.matrices[k](i, j) - expect) > 1e-8) {
                        return {false, c.name + ": " + element_label({i + 1, j + 1})};
                    }
                }
            }
        }
        if (!c.warning_substr.empty()) {
            bool warned = std::any_of(r.warnings.begin(), r.warnings.end(),
                                      [&](const std::string& w) {
                                          return w.find(c.warning_substr) != std::string::npos;
                                      });
            if (!warned) return {false, c.name + ": missing warning"};
        }
    }

    // write/parse round trip across formats and units
    std::mt19937_64 rng(0xACC09);
    double worst = 0.0;
    const ValueFormat formats[] = {ValueFormat::RI, ValueFormat::MA, ValueFormat::DB};
    const FreqUnit units[] = {FreqUnit::Hz, FreqUnit::kHz, FreqUnit::MHz, FreqUnit::GHz};
    for (int trial = 0; trial < 36; ++trial) {
        int ports = 1 + static_cast<int>(rng() % 4);
        NetworkData net = testutil::random_network(rng, ports, 5 + rng() % 30);
        auto back =
            parse_touchstone(write_touchstone(net, formats[trial % 3], units[trial % 4]), ports);
        if (back.network.frequencies_hz != net.frequencies_hz) {
            return {false, "round-trip frequency drift on trial " + std::to_string(trial)};
        }
        for (std::size_t k = 0; k < net.size(); ++k) {
            for (int i = 0; i < ports; ++i) {
                for (int j = 0; j < ports; ++j) {
                    worst = std::max(worst, std::abs(back.network.matrices[k](i, j) -
                                                     net.matrices[k](i, j)));
                }
            }
        }
    }
    if (worst >= 1e-8) return {false, "round-trip worst error " + std::to_string(worst)};
    return {true, std::to_string(cases.size()) + " files + 36 round trips, worst " +
                      std::to_string(worst)};
}

// End-to-end: the CLI batch over the 3-pair synthetic manifest reproduces the
// committed golden CSV byte for byte.
Outcome batch_golden() {
    fs::path work = fs::temp_directory_path() / "sps_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);
    fs::path manifest = testutil::make_batch_fixtures(work / "fixtures");
    fs::path out_csv = work / "batch.csv";

    auto start = Clock::now();
    std::string cmd = "'" + g_bin + "' batch '" + manifest.string() +
                      "' --bands 1e10,3.5e10,5e10 --csv '" + out_csv.string() + "' > '" +
                      (work / "stdout.txt").string() + "' 2> '" +
                      (work / "stderr.txt").string() + "'";
    int status = std::system(cmd.c_str());
    double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (exit_code != 0) return {false, "batch exited with " + std::to_string(exit_code)};
    if (elapsed >= 5.0) return {false, "batch took " + std::to_string(elapsed) + " s"};

    std::string got = slurp(out_csv);
    std::string want = slurp(g_golden / "batch_summary.csv");
    if (want.empty()) return {false, "golden file missing: " + (g_golden / "batch_summary.csv").string()};
    if (got != want) return {false, "CSV differs from golden file"};
    fs::remove_all(work);
    return {true, "byte-identical CSV in " + std::to_string(elapsed) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <sps-binary> <golden-dir>\n";
        return 2;
    }
    g_bin = argv[1];
    g_golden = argv[2];

    run_criterion("identity", 10.0, identity_exact);
    run_criterion("collocated-equality", 0.0, collocated_equality);
    run_criterion("collocated-upper-bound", 0.0, collocated_upper_bound);
    run_criterion("nn-oracle-equivalence", 30.0, nn_oracle_equivalence);
    run_criterion("f-norm-monotonicity", 0.0, f_norm_monotonicity);
    run_criterion("shifted-resonator", 0.0, shifted_resonator_beats_mean);
    run_criterion("tier-fixtures", 0.0, tier_fixtures);
    run_criterion("bandwidth-degradation", 0.0, bandwidth_degradation);
    run_criterion("parser-corpus", 0.0, parser_corpus);
    run_criterion("batch-golden", 0.0, batch_golden);

    if (g_failed != 0) {
        std::cerr << g_failed << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
