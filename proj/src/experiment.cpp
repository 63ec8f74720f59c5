#include "stable_limits/experiment.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "stable_limits/errors.hpp"
#include "stable_limits/levy_sim.hpp"
#include "stable_limits/partial_sum.hpp"

namespace stable_limits {

namespace {

std::vector<double> default_gap_grid() {
    std::vector<double> g(50);
    for (std::size_t i = 0; i < 50; ++i) g[i] = static_cast<double>(i + 1) / 50.0;
    return g;
}

std::vector<double> default_vague_grid(double b_n) {
    const double lo = std::max(0.5, 1.0 / b_n);
    const double hi = 10.0;
    std::vector<double> g(96);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(g.size() - 1);
    return g;
}

std::vector<double> default_ecf_grid() {
    std::vector<double> g(32);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 0.25 * static_cast<double>(i + 1);
    return g;
}

std::size_t hill_order_count(std::size_t n) {
    if (n < 3) return 0;
    std::size_t k = std::max<std::size_t>(10, n / 100);
    k = std::min<std::size_t>(k, 1000);
    return std::min(k, n - 2);
}

// Running sup of |pre - lim| componentwise, written into the given slices.
void gap_curves_for_path(const CharTriplet& pre, const CharTriplet& lim, double* b1, double* c11,
                         double* c12, double* c22) {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < pre.grid.size(); ++i) {
        m1 = std::max(m1, std::abs(pre.B1[i] - lim.B1[i]));
        m2 = std::max(m2, std::abs(pre.C11[i] - lim.C11[i]));
        m3 = std::max(m3, std::abs(pre.C12[i] - lim.C12[i]));
        m4 = std::max(m4, std::abs(pre.C22[i] - lim.C22[i]));
        b1[i] = m1;
        c11[i] = m2;
        c12[i] = m3;
        c22[i] = m4;
    }
}

double gap_value_at(const CharGapCurves& curves, const std::vector<double>& column, double t) {
    double value = 0.0;
    for (std::size_t i = 0; i < curves.grid.size(); ++i)
        if (curves.grid[i] <= t + 1e-12) value = column[i];
    return value;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 2.0)) throw ConfigError("alpha must lie in (0,2)");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0,1]");
    if (regime == RegimeKind::theorem1 && !(alpha < 1.0))
        throw ConfigError("regime theorem1 requires alpha in (0,1)");
    if (regime == RegimeKind::theorem2) {
        if (!(alpha >= 1.0)) throw ConfigError("regime theorem2 requires alpha in [1,2)");
        if (!(epsilon > 0.0 && epsilon < 0.5))
            throw ConfigError("regime theorem2 requires epsilon in (0, 1/2)");
    }
    if (n_values.empty()) throw ConfigError("n_values must be nonempty");
    for (std::size_t n : n_values)
        if (n == 0) throw ConfigError("n_values entries must be positive");
    if (replicate_count == 0) throw ConfigError("replicate_count must be positive");
    if (eval_times.empty()) throw ConfigError("eval_times must be nonempty");
    for (double t : eval_times)
        if (!(t > 0.0 && t <= 1.0)) throw ConfigError("eval_times must lie in (0,1]");
    if (!(ks_level == 0.05 || ks_level == 0.01)) throw ConfigError("ks_level must be 0.05 or 0.01");
    if (delta != 0.0 && !(delta > 0.0 && delta < TruncationFn::inner_radius))
        throw ConfigError("delta must lie in (0, 1/2)");
    if (f_tag.empty()) throw ConfigError("f_tag must be set");
    FunctionalF::parse(f_tag);  // throws ConfigError on bad ids
    if (output_dir.empty()) throw ConfigError("output_dir must be set");
}

double ExperimentConfig::effective_delta() const {
    if (delta > 0.0) return delta;
    const double r = static_cast<double>(replicate_count);
    const double tol = ks_critical_coefficient(ks_level) * std::sqrt(2.0 / r);
    return recommended_jump_floor(alpha, tol);
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream os;
    os << "alpha = " << format_double_17(alpha) << "\n";
    os << "p = " << format_double_17(p) << "\n";
    os << "n_values = ";
    for (std::size_t i = 0; i < n_values.size(); ++i) os << (i ? ", " : "") << n_values[i];
    os << "\n";
    os << "replicate_count = " << replicate_count << "\n";
    os << "f_tag = " << f_tag << "\n";
    os << "h_shape = " << (h_shape == TruncationShape::taper ? "taper" : "hard") << "\n";
    os << "regime = " << (regime == RegimeKind::theorem1 ? "theorem1" : "theorem2") << "\n";
    if (regime == RegimeKind::theorem2) os << "epsilon = " << format_double_17(epsilon) << "\n";
    if (delta > 0.0) os << "delta = " << format_double_17(delta) << "\n";
    os << "eval_times = ";
    for (std::size_t i = 0; i < eval_times.size(); ++i)
        os << (i ? ", " : "") << format_double_17(eval_times[i]);
    os << "\n";
    os << "master_seed = " << master_seed << "\n";
    os << "ks_level = " << format_double_17(ks_level) << "\n";
    os << "output_dir = " << output_dir << "\n";
    return os.str();
}

std::uint64_t ExperimentConfig::id() const {
    const std::string text = canonical_text();
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing junk");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad numeric value '" + value + "'");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream is(value);
    while (std::getline(is, token, ',')) {
        token = trim(token);
        if (!token.empty()) parts.push_back(token);
    }
    return parts;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    bool saw_alpha = false, saw_p = false, saw_n = false, saw_reps = false, saw_f = false,
         saw_h = false, saw_regime = false, saw_times = false, saw_seed = false;
    std::vector<std::string> seen;

    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw ConfigError("config key '" + key + "' given twice");
        seen.push_back(key);

        if (key == "alpha") {
            cfg.alpha = parse_number(key, value);
            saw_alpha = true;
        } else if (key == "p") {
            cfg.p = parse_number(key, value);
            saw_p = true;
        } else if (key == "n_values") {
            for (const auto& tok : split_list(value)) {
                const double x = parse_number(key, tok);
                if (!(x >= 1.0 && x == std::floor(x)))
                    throw ConfigError("config key 'n_values': entries must be positive integers");
                cfg.n_values.push_back(static_cast<std::size_t>(x));
            }
            saw_n = true;
        } else if (key == "replicate_count") {
            const double x = parse_number(key, value);
            if (!(x >= 0.0 && x == std::floor(x)))
                throw ConfigError("config key 'replicate_count': must be a nonnegative integer");
            cfg.replicate_count = static_cast<std::size_t>(x);
            saw_reps = true;
        } else if (key == "f_tag") {
            cfg.f_tag = value;
            saw_f = true;
        } else if (key == "h_shape") {
            if (value == "taper")
                cfg.h_shape = TruncationShape::taper;
            else if (value == "hard")
                cfg.h_shape = TruncationShape::hard;
            else
                throw ConfigError("config key 'h_shape': expected taper or hard");
            saw_h = true;
        } else if (key == "regime") {
            if (value == "theorem1")
                cfg.regime = RegimeKind::theorem1;
            else if (value == "theorem2")
                cfg.regime = RegimeKind::theorem2;
            else
                throw ConfigError("config key 'regime': expected theorem1 or theorem2");
            saw_regime = true;
        } else if (key == "epsilon") {
            cfg.epsilon = parse_number(key, value);
        } else if (key == "delta") {
            cfg.delta = parse_number(key, value);
        } else if (key == "eval_times") {
            for (const auto& tok : split_list(value)) cfg.eval_times.push_back(parse_number(key, tok));
            saw_times = true;
        } else if (key == "master_seed") {
            try {
                cfg.master_seed = std::stoull(value);
            } catch (const std::exception&) {
                throw ConfigError("config key 'master_seed': bad unsigned integer");
            }
            saw_seed = true;
        } else if (key == "ks_level") {
            cfg.ks_level = parse_number(key, value);
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    if (!saw_alpha || !saw_p || !saw_n || !saw_reps || !saw_f || !saw_h || !saw_regime ||
        !saw_times || !saw_seed)
        throw ConfigError(
            "config requires alpha, p, n_values, replicate_count, f_tag, h_shape, regime, "
            "eval_times, master_seed");
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

void parallel_for_indices(std::size_t count, unsigned threads,
                          const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

unsigned resolve_thread_count(long cli_value) {
    if (cli_value > 0) return static_cast<unsigned>(std::min<long>(cli_value, 256));
    if (const char* env = std::getenv("STABLE_LIMITS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return 1;
}

CharGapCurves mean_characteristic_gaps(const TailLaw& law, const LevyMeasure& measure,
                                       std::size_t n, const TruncationFn& h, const FunctionalF& f,
                                       std::size_t path_count, std::uint64_t master_seed,
                                       unsigned threads) {
    if (path_count == 0) throw std::invalid_argument("mean_characteristic_gaps: need paths");
    const ScalingConstants sc = make_scaling_constants(law, n, h);
    const PreLimitKernel kernel{law, sc, h, true};
    const PreLimitKernelTable pretable(kernel, f.bound());
    const LimitKernelTable limtable(measure, h, f.bound());
    const auto grid = default_gap_grid();
    const std::size_t g = grid.size();

    std::vector<double> buffer(path_count * 4 * g, 0.0);
    parallel_for_indices(path_count, threads, [&](std::size_t j) {
        auto rng = RngStream::derive(master_seed, j, StreamPurpose::prelimit_samples);
        const auto samples = sample_tail_law(law, n, rng);
        const auto paths = build_functional_paths(samples, sc, f);
        const auto pre = path_characteristics(pretable, sc, samples, f, grid);
        const auto lim = limit_characteristics(limtable, paths.s, f, grid);
        double* base = buffer.data() + j * 4 * g;
        gap_curves_for_path(pre, lim, base, base + g, base + 2 * g, base + 3 * g);
    });

    CharGapCurves out;
    out.grid = grid;
    out.b1.assign(g, 0.0);
    out.c11.assign(g, 0.0);
    out.c12.assign(g, 0.0);
    out.c22.assign(g, 0.0);
    for (std::size_t j = 0; j < path_count; ++j) {
        const double* base = buffer.data() + j * 4 * g;
        for (std::size_t i = 0; i < g; ++i) {
            out.b1[i] += base[i];
            out.c11[i] += base[g + i];
            out.c12[i] += base[2 * g + i];
            out.c22[i] += base[3 * g + i];
        }
    }
    const double dp = static_cast<double>(path_count);
    for (std::size_t i = 0; i < g; ++i) {
        out.b1[i] /= dp;
        out.c11[i] /= dp;
        out.c12[i] /= dp;
        out.c22[i] /= dp;
    }
    return out;
}

ExperimentReport run_convergence_experiment(const ExperimentConfig& cfg, unsigned threads) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const TailLaw law(cfg.alpha, cfg.p);
    const LevyMeasure measure(cfg.alpha, cfg.p);
    const TruncationFn h(cfg.h_shape);
    const FunctionalF f = FunctionalF::parse(cfg.f_tag);
    const bool theorem1 = cfg.regime == RegimeKind::theorem1;

    std::vector<double> times(cfg.eval_times);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    ExperimentReport report;
    report.config = cfg;
    report.experiment_id = cfg.id();
    const std::size_t reps = cfg.replicate_count;

    for (std::size_t n : cfg.n_values) {
        const ScalingConstants sc = make_scaling_constants(law, n, h);
        const PreLimitKernel kernel{law, sc, h, true};
        const std::size_t char_count = std::min<std::size_t>(100, reps);
        const auto grid = default_gap_grid();
        const std::size_t g = grid.size();

        const PreLimitKernelTable pretable(kernel, f.bound());
        const LimitKernelTable limtable(measure, h, f.bound());

        std::vector<RawBlock> blocks(times.size());
        for (std::size_t k = 0; k < times.size(); ++k) {
            blocks[k].n = n;
            blocks[k].t = times[k];
            blocks[k].s.assign(reps, 0.0);
            blocks[k].y.assign(reps, 0.0);
            blocks[k].z.assign(reps, 0.0);
            blocks[k].integral.assign(reps, 0.0);
        }
        std::vector<double> gapbuf(char_count * 4 * g, 0.0);
        std::vector<double> rep0_samples;

        LimitPathConfig lim_cfg;
        lim_cfg.regime = theorem1 ? LimitRegime::direct : LimitRegime::truncated;
        lim_cfg.jump_floor = theorem1 ? cfg.effective_delta() : cfg.epsilon;
        lim_cfg.sample_times = times;

        parallel_for_indices(reps, threads, [&](std::size_t j) {
            auto rng_pre = RngStream::derive(cfg.master_seed, j, StreamPurpose::prelimit_samples);
            const auto samples = sample_tail_law(law, n, rng_pre);
            const PathEndpoints ep =
                theorem1 ? evaluate_path_functionals(samples, sc, f, times)
                         : evaluate_truncated_functionals(samples, law, sc, f, h, cfg.epsilon, times);
            for (std::size_t k = 0; k < times.size(); ++k) {
                blocks[k].s[j] = ep.s[k];
                blocks[k].y[j] = ep.y[k];
            }
            if (j == 0) rep0_samples = samples;
            if (j < char_count) {
                const auto paths =
                    theorem1 ? build_functional_paths(samples, sc, f)
                             : build_truncated_paths(samples, law, sc, f, h, cfg.epsilon);
                const auto pre = path_characteristics(pretable, sc, samples, f, grid);
                const auto lim = limit_characteristics(limtable, paths.s, f, grid);
                double* base = gapbuf.data() + j * 4 * g;
                gap_curves_for_path(pre, lim, base, base + g, base + 2 * g, base + 3 * g);
            }
            auto rng_lim = RngStream::derive(cfg.master_seed, j, StreamPurpose::limit_path);
            const StepPath z = simulate_levy_path(measure, lim_cfg, h, rng_lim);
            const StepPath integral =
                euler_stochastic_integral(z, [&f](double x) { return f(x); });
            for (std::size_t k = 0; k < times.size(); ++k) {
                blocks[k].z[j] = z.value_at(times[k]);
                blocks[k].integral[j] = integral.value_at(times[k]);
            }
        });

        NDiagnostics diag;
        diag.n = n;
        diag.vague_sup = vague_check(kernel, measure, default_vague_grid(sc.b_n));
        const std::size_t k_hill = hill_order_count(n);
        diag.hill_alpha = std::numeric_limits<double>::quiet_NaN();
        if (k_hill >= 1) {
            try {
                diag.hill_alpha = hill_estimate(rep0_samples, k_hill);
            } catch (const std::exception&) {
                // leave NaN for degenerate draws
            }
        }
        diag.gaps.grid = grid;
        diag.gaps.b1.assign(g, 0.0);
        diag.gaps.c11.assign(g, 0.0);
        diag.gaps.c12.assign(g, 0.0);
        diag.gaps.c22.assign(g, 0.0);
        for (std::size_t j = 0; j < char_count; ++j) {
            const double* base = gapbuf.data() + j * 4 * g;
            for (std::size_t i = 0; i < g; ++i) {
                diag.gaps.b1[i] += base[i];
                diag.gaps.c11[i] += base[g + i];
                diag.gaps.c12[i] += base[2 * g + i];
                diag.gaps.c22[i] += base[3 * g + i];
            }
        }
        if (char_count > 0) {
            const double dp = static_cast<double>(char_count);
            for (std::size_t i = 0; i < g; ++i) {
                diag.gaps.b1[i] /= dp;
                diag.gaps.c11[i] /= dp;
                diag.gaps.c12[i] /= dp;
                diag.gaps.c22[i] /= dp;
            }
        }
        report.diagnostics.push_back(std::move(diag));
        for (auto& b : blocks) report.raw.push_back(std::move(b));
    }

    compute_report_rows(report);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void compute_report_rows(ExperimentReport& report) {
    report.rows.clear();
    report.experiment_id = report.config.id();
    const auto u_grid = default_ecf_grid();

    for (const auto& block : report.raw) {
        const NDiagnostics* diag = nullptr;
        for (const auto& d : report.diagnostics)
            if (d.n == block.n) diag = &d;

        std::vector<double> pre_sum(block.s.size()), lim_sum(block.z.size());
        for (std::size_t i = 0; i < pre_sum.size(); ++i) pre_sum[i] = block.s[i] + block.y[i];
        for (std::size_t i = 0; i < lim_sum.size(); ++i) lim_sum[i] = block.z[i] + block.integral[i];

        const std::array<std::pair<const char*, std::pair<const std::vector<double>*,
                                                          const std::vector<double>*>>,
                         3>
            quantities{{{"S", {&block.s, &block.z}},
                        {"Y", {&block.y, &block.integral}},
                        {"pair_sum", {&pre_sum, &lim_sum}}}};

        for (const auto& [name, pair] : quantities) {
            ReportRow row;
            row.experiment_id = report.experiment_id;
            row.n = block.n;
            row.t = block.t;
            row.quantity = name;
            const KSResult ks = ks_two_sample(*pair.first, *pair.second, report.config.ks_level);
            row.ks_stat = ks.statistic;
            row.ks_threshold = ks.threshold;
            row.pass = ks.pass;
            row.ecf_dist = ecf_distance(*pair.first, *pair.second, u_grid);
            if (diag) {
                row.b1_gap = gap_value_at(diag->gaps, diag->gaps.b1, block.t);
                row.c11_gap = gap_value_at(diag->gaps, diag->gaps.c11, block.t);
                row.c22_gap = gap_value_at(diag->gaps, diag->gaps.c22, block.t);
                row.vague_sup = diag->vague_sup;
                row.hill_alpha = diag->hill_alpha;
            }
            row.seed = report.config.master_seed;
            report.rows.push_back(std::move(row));
        }
    }
}

}  // namespace stable_limits
