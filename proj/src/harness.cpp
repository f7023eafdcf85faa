#include "coopstc/harness.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "coopstc/errors.hpp"

namespace coopstc {

namespace {

constexpr std::uint64_t kLdcStream = ~std::uint64_t{0};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || p != end || !std::isfinite(out))
        throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || p != end) throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: '" + key + "' expects on | off, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& key, const std::string& v) {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw ConfigError("config: '" + key + "' expects a list like [0, 1]");
    std::vector<std::string> items;
    std::stringstream ss(v.substr(1, v.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("config: empty entry in '" + key + "'");
        items.push_back(item);
    }
    return items;
}

template <class F>
auto wrap_parse(const std::string& key, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("config: '" + key + "': " + e.what());
    }
}

std::string format_list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt_double(v[i]);
    return s + "]";
}

}  // namespace

double ExperimentConfig::code_power() const {
    if (p_r) return *p_r;
    const double nr = static_cast<double>(n_relays);
    const double n = static_cast<double>(n_antennas);
    return system == SystemType::Sas ? nr : nr * n * n;
}

void ExperimentConfig::validate() const {
    if (snr_db.empty()) throw ConfigError("config: snr grid is empty");
    for (std::size_t i = 1; i < snr_db.size(); ++i)
        if (!(snr_db[i] > snr_db[i - 1])) throw ConfigError("config: snr grid must be strictly increasing");
    if (trials < 1) throw ConfigError("config: trials must be at least 1");
    if (block_length < 1) throw ConfigError("config: block_length must be at least 1");
    if (workers < 1) throw ConfigError("config: workers must be at least 1");
    if (!(p1 > 0.0) || !(p2 > 0.0) || !(code_power() > 0.0)) throw ConfigError("config: p1, p2, p_r must be positive");
    if (!(sigma2_d > 0.0) || sigma2_n1 < 0.0 || !(sigma2_f > 0.0) || !(sigma2_g > 0.0))
        throw ConfigError("config: noise and channel variances must be positive");
    if (beta < 0.0) throw ConfigError("config: beta must be non-negative");
    if (system == SystemType::PointToPoint) return;
    if (n_relays < 1) throw ConfigError("config: n_relays must be at least 1");
    if (n_antennas < 1) throw ConfigError("config: n_antennas must be at least 1");
    if (scheme != Scheme::Ldc && n_antennas != 2) throw ConfigError("config: Alamouti schemes need n_antennas = 2");
    if (delays.size() != n_relays) throw ConfigError("config: delays must list one entry per relay");
    if (*std::min_element(delays.begin(), delays.end()) != 0) throw ConfigError("config: the smallest delay must be 0");
}

std::vector<double> parse_snr_grid(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("config: empty snr grid");
    if (t.front() == '[') {
        std::vector<double> out;
        for (const auto& item : split_list("snr_db_range", t)) out.push_back(to_double("snr_db_range", item));
        return out;
    }
    std::vector<std::string> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() != 3) throw ConfigError("config: snr_db_range expects a:step:b or a list");
    const double a = to_double("snr_db_range", parts[0]);
    const double step = to_double("snr_db_range", parts[1]);
    const double b = to_double("snr_db_range", parts[2]);
    if (!(step > 0.0) || b < a) throw ConfigError("config: snr_db_range needs step > 0 and a <= b");
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::stringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool delays_set = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string v = trim(std::string_view(line).substr(eq + 1));
        if (v.empty()) throw ConfigError("config: '" + key + "' has no value");

        if (key == "system") {
            cfg.system = wrap_parse(key, [&] { return parse_system(v); });
        } else if (key == "stc") {
            cfg.scheme = wrap_parse(key, [&] { return parse_scheme(v); });
        } else if (key == "modulation") {
            cfg.modulation = wrap_parse(key, [&] { return parse_modulation(v); });
        } else if (key == "n_relays") {
            cfg.n_relays = to_u64(key, v);
        } else if (key == "n_antennas") {
            cfg.n_antennas = to_u64(key, v);
        } else if (key == "delays") {
            cfg.delays.clear();
            for (const auto& item : split_list(key, v)) cfg.delays.push_back(to_u64(key, item));
            delays_set = true;
        } else if (key == "direct_link") {
            cfg.direct_link = to_bool(key, v);
        } else if (key == "sigma2_n1") {
            cfg.sigma2_n1 = to_double(key, v);
        } else if (key == "sigma2_d") {
            cfg.sigma2_d = to_double(key, v);
        } else if (key == "sigma2_f") {
            cfg.sigma2_f = to_double(key, v);
        } else if (key == "sigma2_g") {
            cfg.sigma2_g = to_double(key, v);
        } else if (key == "p1") {
            cfg.p1 = to_double(key, v);
        } else if (key == "p2") {
            cfg.p2 = to_double(key, v);
        } else if (key == "p_r") {
            cfg.p_r = to_double(key, v);
        } else if (key == "snr_db_range") {
            cfg.snr_db = parse_snr_grid(v);
        } else if (key == "beta") {
            cfg.beta = to_double(key, v);
        } else if (key == "sg_iterations") {
            cfg.sg_iterations = to_u64(key, v);
        } else if (key == "redetect") {
            cfg.redetect = to_bool(key, v);
        } else if (key == "policy") {
            cfg.policy = wrap_parse(key, [&] { return parse_policy(v); });
        } else if (key == "optimize") {
            cfg.optimize = to_bool(key, v);
        } else if (key == "block_length") {
            cfg.block_length = to_u64(key, v);
        } else if (key == "trials") {
            cfg.trials = to_u64(key, v);
        } else if (key == "min_bit_errors") {
            cfg.min_bit_errors = to_u64(key, v);
        } else if (key == "seed") {
            cfg.seed = to_u64(key, v);
        } else if (key == "workers") {
            cfg.workers = to_u64(key, v);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    if (!delays_set && cfg.delays.size() != cfg.n_relays) {
        // Default profile: relay k arrives k slots late.
        cfg.delays.resize(cfg.n_relays);
        for (std::size_t k = 0; k < cfg.n_relays; ++k) cfg.delays[k] = k;
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::map<std::string, std::string> config_entries(const ExperimentConfig& cfg) {
    std::map<std::string, std::string> e;
    e["system"] = to_string(cfg.system);
    e["stc"] = to_string(cfg.scheme);
    e["modulation"] = to_string(cfg.modulation);
    e["n_relays"] = std::to_string(cfg.n_relays);
    e["n_antennas"] = std::to_string(cfg.n_antennas);
    std::string d = "[";
    for (std::size_t i = 0; i < cfg.delays.size(); ++i) d += (i ? ", " : "") + std::to_string(cfg.delays[i]);
    e["delays"] = d + "]";
    e["direct_link"] = cfg.direct_link ? "on" : "off";
    e["sigma2_n1"] = fmt_double(cfg.sigma2_n1);
    e["sigma2_d"] = fmt_double(cfg.sigma2_d);
    e["sigma2_f"] = fmt_double(cfg.sigma2_f);
    e["sigma2_g"] = fmt_double(cfg.sigma2_g);
    e["p1"] = fmt_double(cfg.p1);
    e["p2"] = fmt_double(cfg.p2);
    if (cfg.p_r) e["p_r"] = fmt_double(*cfg.p_r);
    e["snr_db_range"] = format_list(cfg.snr_db);
    e["beta"] = fmt_double(cfg.beta);
    e["sg_iterations"] = std::to_string(cfg.sg_iterations);
    e["redetect"] = cfg.redetect ? "on" : "off";
    e["policy"] = to_string(cfg.policy);
    e["optimize"] = cfg.optimize ? "on" : "off";
    e["block_length"] = std::to_string(cfg.block_length);
    e["trials"] = std::to_string(cfg.trials);
    e["min_bit_errors"] = std::to_string(cfg.min_bit_errors);
    e["seed"] = std::to_string(cfg.seed);
    e["workers"] = std::to_string(cfg.workers);
    return e;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : config_entries(cfg)) out += k + " = " + v + "\n";
    return out;
}

Interval wilson_interval(std::uint64_t k, std::uint64_t n) {
    if (n == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (p + z * z / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double wilson_half_width(std::uint64_t k, std::uint64_t n) {
    const Interval i = wilson_interval(k, n);
    return 0.5 * (i.hi - i.lo);
}

double bpsk_awgn_ber(double snr_db) { return 0.5 * std::erfc(std::sqrt(std::pow(10.0, snr_db / 10.0))); }

std::uint64_t block_stream_id(std::size_t point, std::uint64_t block) {
    return (static_cast<std::uint64_t>(point) << 40) | block;
}

namespace {

std::uint64_t count_bit_errors(const Bits& a, const Bits& b) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
    return n;
}

BlockOutcome simulate_p2p(const ExperimentConfig& cfg, double snr_db, RngStream& rng) {
    const Constellation c = Constellation::make(cfg.modulation);
    const double s2 = cfg.sigma2_d * cfg.p1 / std::pow(10.0, snr_db / 10.0);
    const double amp = std::sqrt(cfg.p1);
    BlockOutcome out;
    for (std::size_t i = 0; i < cfg.block_length; ++i) {
        const std::size_t idx = rng.uniform_index(c.size());
        const cplx r = amp * c.points()[idx] + rng.complex_normal(s2);
        const std::size_t det = c.nearest(r / amp);
        out.bit_errors += static_cast<std::uint64_t>(std::popcount(idx ^ det));
        out.bits += c.bits_per_symbol();
    }
    return out;
}

}  // namespace

BlockOutcome simulate_block(const ExperimentConfig& cfg, double snr_db, RngStream& rng) {
    if (cfg.system == SystemType::PointToPoint) return simulate_p2p(cfg, snr_db, rng);

    const double s2 = cfg.p1 / std::pow(10.0, snr_db / 10.0);
    const NoiseLevels noise{cfg.sigma2_n1 * s2, cfg.sigma2_d * s2, 1.0};
    const std::size_t n = cfg.n_antennas;
    const Constellation constellation = Constellation::make(cfg.modulation);
    const auto codebook = enumerate_codebook(constellation, n);
    std::vector<Bits> labels;
    labels.reserve(codebook.size());
    for (std::size_t i = 0; i < codebook.size(); ++i) labels.push_back(codebook_bits(constellation, n, i));

    DispersionSet dispersion;
    if (cfg.scheme == Scheme::Ldc) {
        RngStream code_rng(cfg.seed, kLdcStream);
        dispersion = random_unitary_dispersion(code_rng, n, n);
    } else {
        dispersion = alamouti_dispersion();
    }

    ChannelConfig ch;
    ch.system = cfg.system;
    ch.n_relays = cfg.n_relays;
    ch.n_antennas = n;
    ch.sigma2_f = cfg.sigma2_f;
    ch.sigma2_g = cfg.sigma2_g;
    ch.direct_link = cfg.direct_link;

    BlockOutcome out;
    try {
        const LinkSet links = draw_block_fading(rng, ch);
        const RelayCode code = make_relay_code(cfg.scheme, dispersion, cfg.n_relays, rng);
        ModelParams params{cfg.system, cfg.p1, {}};
        if (selects_source_antenna(cfg.policy))
            params.source_weights = source_antenna_weights(n, select_source_antenna(links));
        const SystemModel model = build_system_model(links, dispersion, code, DelayProfile::make(cfg.delays), params);

        const PolicyContext ctx{cfg.policy, cfg.p1, cfg.p2, cfg.code_power(), cfg.sigma2_f, noise};
        const SGConfig sg{cfg.beta, cfg.sg_iterations, cfg.redetect};
        OptimizerState state = initialize_codes(rng, model, ctx.p_r);
        ActiveSet active = select_active(model, state.codes, ctx);

        for (std::size_t i = 0; i < cfg.block_length; ++i) {
            normalize_power(state.codes, active.branches, active_budget(model, ctx, active));
            const std::size_t idx = rng.uniform_index(codebook.size());
            const NoiseSample ns = draw_noise(rng, model, noise.sigma2_n1, noise.sigma2_d);
            const CVector r = transmit(model, codebook[idx], state.codes, active.gains, ns).r;
            const CandidateImages images(effective_signal_map(model, state.codes, active.gains), codebook);
            const std::size_t det = images.detect_index(r);
            out.bit_errors += count_bit_errors(labels[idx], labels[det]);
            out.bits += labels[idx].size();
            if (cfg.optimize) {
                BlockResult res = run_block_optimization(model, r, codebook, std::move(state), active, sg, ctx);
                state = std::move(res.state);
                state.objective_trace.clear();
                active = std::move(res.next_active);
            }
        }
    } catch (const DegenerateStateError&) {
        return BlockOutcome{0, 0, true};
    }
    return out;
}

BERRecord run_point(const ExperimentConfig& cfg, double snr_db, std::size_t point_index) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    BERRecord rec;
    rec.snr_db = snr_db;

    const std::size_t workers = std::max<std::size_t>(1, cfg.workers);
    const std::uint64_t chunk = std::max<std::uint64_t>(16, 4 * workers);
    std::vector<BlockOutcome> outcomes;
    bool done = false;
    for (std::uint64_t base = 0; base < cfg.trials && !done; base += chunk) {
        const std::uint64_t count = std::min<std::uint64_t>(chunk, cfg.trials - base);
        outcomes.assign(count, BlockOutcome{});
        auto work = [&](std::size_t w) {
            for (std::uint64_t i = w; i < count; i += workers) {
                RngStream rng(cfg.seed, block_stream_id(point_index, base + i));
                outcomes[i] = simulate_block(cfg, snr_db, rng);
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::exception_ptr> errors(workers);
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try {
                        work(w);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            for (auto& t : pool) t.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
        }
        // Reduce in block order so the stopping block does not depend on the worker count.
        for (const auto& o : outcomes) {
            ++rec.blocks;
            if (o.degenerate) {
                ++rec.degenerate_blocks;
            } else {
                rec.bit_errors += o.bit_errors;
                rec.bits += o.bits;
            }
            if (cfg.min_bit_errors > 0 && rec.bit_errors >= cfg.min_bit_errors) {
                done = true;
                break;
            }
        }
    }
    if (rec.degenerate_blocks * 1000 > rec.blocks)
        throw DegenerateStateError("run_point: more than 0.1% of blocks were degenerate");
    rec.ber = rec.bits ? static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits) : 0.0;
    rec.ci95 = wilson_half_width(rec.bit_errors, rec.bits);
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::string format_csv(const std::vector<BERRecord>& records) {
    std::string out = "snr_db,ber,bit_errors,bits,ci95\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%.6g,%.9e,%llu,%llu,%.9e\n", r.snr_db, r.ber,
                      static_cast<unsigned long long>(r.bit_errors), static_cast<unsigned long long>(r.bits), r.ci95);
        out += buf;
    }
    return out;
}

std::string manifest_json(const ExperimentConfig& cfg, const std::vector<BERRecord>& records) {
    nlohmann::ordered_json j;
    j["tool"] = "coopstc";
    j["version"] = std::string(kVersion);
    j["seed"] = cfg.seed;
    nlohmann::ordered_json c;
    for (const auto& [k, v] : config_entries(cfg)) c[k] = v;
    j["config"] = c;
    j["csv"] = "ber.csv";
    auto& recs = j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records)
        recs.push_back({{"snr_db", r.snr_db},
                        {"ber", r.ber},
                        {"bit_errors", r.bit_errors},
                        {"bits", r.bits},
                        {"ci95", r.ci95},
                        {"blocks", r.blocks},
                        {"degenerate_blocks", r.degenerate_blocks},
                        {"wall_time", r.wall_time}});
    return j.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
    const auto tmp = p.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write " + tmp);
        f << content;
        if (!f) throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, p, ec);
    if (ec) throw IoError("cannot move " + tmp + " to " + p.string() + ": " + ec.message());
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg, const std::optional<std::filesystem::path>& out_dir) {
    cfg.validate();
    if (out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*out_dir, ec);
        if (ec) throw IoError("cannot create output directory " + out_dir->string() + ": " + ec.message());
    }
    SweepResult res;
    for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
        res.records.push_back(run_point(cfg, cfg.snr_db[i], i));
        if (out_dir) write_file(*out_dir / "ber.csv", format_csv(res.records));
    }
    res.manifest_json = manifest_json(cfg, res.records);
    if (out_dir) write_file(*out_dir / "manifest.json", res.manifest_json);
    return res;
}

Curve to_curve(const std::vector<BERRecord>& records) {
    Curve c;
    for (const auto& r : records) c.push_back({r.snr_db, r.ber});
    return c;
}

Curve read_curve_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open curve file " + path.string());
    std::string line;
    if (!std::getline(f, line)) throw ConfigError("curve file " + path.string() + " is empty");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string h;
        while (std::getline(ss, h, ',')) header.push_back(trim(h));
    }
    const auto col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ConfigError("curve file " + path.string() + " has no '" + name + "' column");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_snr = col("snr_db");
    const std::size_t c_ber = col("ber");
    Curve c;
    while (std::getline(f, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        if (cells.size() != header.size()) throw ConfigError("curve file " + path.string() + ": ragged row");
        c.push_back({to_double("snr_db", cells[c_snr]), to_double("ber", cells[c_ber])});
    }
    return c;
}

double crossing_snr_db(const Curve& c, double target_ber) {
    if (!(target_ber > 0.0)) throw RangeError("target BER must be positive");
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const auto& a = c[i];
        const auto& b = c[i + 1];
        if (!(a.ber > 0.0) || !(b.ber > 0.0)) continue;
        if (a.ber >= target_ber && b.ber <= target_ber) {
            if (a.ber == b.ber) return a.snr_db;
            const double la = std::log10(a.ber);
            const double lb = std::log10(b.ber);
            const double t = (std::log10(target_ber) - la) / (lb - la);
            return a.snr_db + t * (b.snr_db - a.snr_db);
        }
    }
    throw RangeError("curve does not bracket the target BER");
}

double measure_gain_db(const Curve& a, const Curve& b, double target_ber) {
    return crossing_snr_db(a, target_ber) - crossing_snr_db(b, target_ber);
}

double estimate_diversity_order(const Curve& c, double snr_lo, double snr_hi) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& p : c)
        if (p.snr_db >= snr_lo && p.snr_db <= snr_hi && p.ber > 0.0) {
            xs.push_back(p.snr_db / 10.0);
            ys.push_back(std::log10(p.ber));
        }
    if (xs.size() < 3) throw RangeError("diversity estimate needs at least 3 points with BER > 0 in the window");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return -sxy / sxx;
}

}  // namespace coopstc
