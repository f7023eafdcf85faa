#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coopstc/acmoro.hpp"
#include "coopstc/channel.hpp"
#include "coopstc/modem.hpp"
#include "coopstc/stcodes.hpp"

namespace coopstc {

/// Monte Carlo experiment description. Noise levels in the config are
/// multipliers of the per-point noise variance P1 / 10^(snr_db/10).
struct ExperimentConfig {
    SystemType system = SystemType::Mas;
    Scheme scheme = Scheme::DAlamouti;
    Modulation modulation = Modulation::Bpsk;
    std::size_t n_relays = 2;
    std::size_t n_antennas = 2;
    std::vector<std::size_t> delays{0, 1};
    bool direct_link = false;
    double sigma2_n1 = 1.0;
    double sigma2_d = 1.0;
    double sigma2_f = 1.0;
    double sigma2_g = 1.0;
    double p1 = 1.0;
    double p2 = 1.0;
    std::optional<double> p_r;  // default: n_r * N * T (MAS), n_r (SAS)
    std::vector<double> snr_db{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    double beta = 0.03;
    std::size_t sg_iterations = 50;
    bool redetect = true;
    Policy policy = Policy::Equal;
    bool optimize = true;
    std::size_t block_length = 100;  // symbol vectors per fading block
    std::size_t trials = 20000;     // fading blocks per point (upper bound)
    std::uint64_t min_bit_errors = 200;  // stop rule; 0 runs all trials
    std::uint64_t seed = 1;
    std::size_t workers = 1;

    double code_power() const;
    void validate() const;
};

/// Flat `key = value` text, one entry per line; `#` starts a comment.
/// Unknown keys and malformed values throw ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& cfg);
std::map<std::string, std::string> config_entries(const ExperimentConfig& cfg);

/// "a:step:b" (inclusive) or "[x, y, ...]".
std::vector<double> parse_snr_grid(std::string_view text);

struct BERRecord {
    double snr_db = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    double ber = 0.0;
    double ci95 = 0.0;  // Wilson half-width
    double wall_time = 0.0;
    std::uint64_t blocks = 0;
    std::uint64_t degenerate_blocks = 0;
};

struct Interval {
    double lo;
    double hi;
};
/// 95% Wilson score interval for k successes in n trials.
Interval wilson_interval(std::uint64_t k, std::uint64_t n);
double wilson_half_width(std::uint64_t k, std::uint64_t n);

/// 0.5 erfc(sqrt(snr)): BPSK over AWGN with Es/N0 = snr.
double bpsk_awgn_ber(double snr_db);

/// Outcome of one fading block.
struct BlockOutcome {
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    bool degenerate = false;
};

/// Simulates one fading block of cfg.block_length symbol vectors at the given
/// SNR with its own RNG stream.
BlockOutcome simulate_block(const ExperimentConfig& cfg, double snr_db, RngStream& rng);

/// RNG stream id for block `block` of grid point `point`.
std::uint64_t block_stream_id(std::size_t point, std::uint64_t block);

/// Blocks are accumulated in index order until cfg.trials blocks or
/// cfg.min_bit_errors errors; the result is independent of cfg.workers.
BERRecord run_point(const ExperimentConfig& cfg, double snr_db, std::size_t point_index = 0);

struct SweepResult {
    std::vector<BERRecord> records;
    std::string manifest_json;
};

/// Runs every grid point. With out_dir set, the CSV is rewritten after each
/// point (so an interrupted run leaves the finished points) and the manifest
/// is written at the end.
SweepResult run_sweep(const ExperimentConfig& cfg, const std::optional<std::filesystem::path>& out_dir = std::nullopt);

std::string format_csv(const std::vector<BERRecord>& records);
std::string manifest_json(const ExperimentConfig& cfg, const std::vector<BERRecord>& records);

struct CurvePoint {
    double snr_db;
    double ber;
};
using Curve = std::vector<CurvePoint>;
Curve to_curve(const std::vector<BERRecord>& records);
/// Reads the snr_db and ber columns of a results CSV.
Curve read_curve_csv(const std::filesystem::path& path);

/// snr_a(target) - snr_b(target), each from log-linear interpolation between
/// the first pair of points bracketing the target: positive when curve b
/// reaches target_ber at a lower SNR. Throws RangeError if either curve does
/// not bracket the target.
double measure_gain_db(const Curve& a, const Curve& b, double target_ber);
/// SNR at which the curve crosses target_ber (same interpolation).
double crossing_snr_db(const Curve& c, double target_ber);

/// -slope of the least-squares line through (snr_db/10, log10 ber) over the
/// points in [snr_lo, snr_hi] with ber > 0. Throws RangeError with fewer than 3.
double estimate_diversity_order(const Curve& c, double snr_lo, double snr_hi);

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace coopstc
