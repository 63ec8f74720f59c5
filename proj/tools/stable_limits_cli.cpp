// Command-line front end: sample / vague-check / chars / experiment / report.
// Exit codes: 0 ok, 1 config error, 2 numerical failure, 3 I/O error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stable_limits/errors.hpp"
#include "stable_limits/experiment.hpp"
#include "stable_limits/levy_sim.hpp"
#include "stable_limits/partial_sum.hpp"

namespace sl = stable_limits;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long threads = 0;
    std::string format = "csv";
};

sl::ExperimentConfig load_config(const GlobalOpts& g) {
    if (g.config_path.empty()) throw sl::ConfigError("--config <path> is required");
    sl::ExperimentConfig cfg = sl::parse_config_file(g.config_path);
    if (g.seed_set) cfg.master_seed = g.seed;
    return cfg;
}

sl::ReportFormat parse_format(const std::string& fmt) {
    if (fmt == "csv") return sl::ReportFormat::csv;
    if (fmt == "json") return sl::ReportFormat::json;
    throw sl::ConfigError("--format must be csv or json");
}

int run_sample(const GlobalOpts& g, std::size_t count) {
    const auto cfg = load_config(g);
    const sl::TailLaw law(cfg.alpha, cfg.p);
    auto rng = sl::RngStream::derive(cfg.master_seed, 0, sl::StreamPurpose::diagnostics);
    const auto draws = sl::sample_tail_law(law, count, rng);
    for (double x : draws) std::cout << sl::format_double_17(x) << '\n';
    return 0;
}

int run_vague_check(const GlobalOpts& g) {
    const auto cfg = load_config(g);
    const sl::TailLaw law(cfg.alpha, cfg.p);
    const sl::LevyMeasure measure(cfg.alpha, cfg.p);
    const sl::TruncationFn h(cfg.h_shape);
    std::cout << "n,vague_sup,ca_a1,ca_a2\n";
    for (std::size_t n : cfg.n_values) {
        const sl::PreLimitKernel kernel{law, sl::make_scaling_constants(law, n, h), h, true};
        std::vector<double> grid;
        const double lo = std::max(0.5, 1.0 / kernel.sc.b_n);
        for (int i = 0; i < 96; ++i) grid.push_back(lo + (10.0 - lo) * i / 95.0);
        const double sup = sl::vague_check(kernel, measure, grid);
        const std::vector<double> a_values{1.0, 2.0};
        const auto ca = sl::ca_family_check(kernel, measure, a_values);
        std::cout << n << ',' << sl::format_double_17(sup) << ','
                  << sl::format_double_17(ca.at(1.0)) << ',' << sl::format_double_17(ca.at(2.0))
                  << '\n';
    }
    return 0;
}

int run_chars(const GlobalOpts& g) {
    const auto cfg = load_config(g);
    const sl::TailLaw law(cfg.alpha, cfg.p);
    const sl::LevyMeasure measure(cfg.alpha, cfg.p);
    const sl::TruncationFn h(cfg.h_shape);
    const sl::FunctionalF f = sl::FunctionalF::parse(cfg.f_tag);
    const unsigned threads = sl::resolve_thread_count(g.threads);
    const std::size_t paths = std::min<std::size_t>(100, cfg.replicate_count);
    std::cout << "n,b1_gap,c11_gap,c12_gap,c22_gap\n";
    for (std::size_t n : cfg.n_values) {
        const auto gaps =
            sl::mean_characteristic_gaps(law, measure, n, h, f, paths, cfg.master_seed, threads);
        std::cout << n << ',' << sl::format_double_17(gaps.b1.back()) << ','
                  << sl::format_double_17(gaps.c11.back()) << ','
                  << sl::format_double_17(gaps.c12.back()) << ','
                  << sl::format_double_17(gaps.c22.back()) << '\n';
    }
    return 0;
}

int run_experiment(const GlobalOpts& g) {
    const auto cfg = load_config(g);
    const unsigned threads = sl::resolve_thread_count(g.threads);
    const auto report = sl::run_convergence_experiment(cfg, threads);
    const std::string path = sl::write_report_files(report, parse_format(g.format));
    std::cerr << "wrote " << path << " (" << report.rows.size() << " rows, "
              << report.wall_seconds << " s)\n";
    for (const auto& row : report.rows) {
        std::cout << "n=" << row.n << " t=" << row.t << " " << row.quantity
                  << " ks=" << row.ks_stat << (row.pass ? " pass" : " FAIL") << '\n';
    }
    return 0;
}

int run_report(const GlobalOpts& g, const std::string& input) {
    auto report = sl::load_raw_results(input);
    sl::compute_report_rows(report);
    const std::string path = sl::write_report_files(report, parse_format(g.format));
    std::cerr << "wrote " << path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heavy-tailed partial sums vs alpha-stable stochastic integrals"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "experiment config file (key = value)");
    auto* seed_opt = app.add_option("--seed", g.seed, "override master_seed");
    app.add_option("--threads", g.threads,
                   "worker threads (default: STABLE_LIMITS_THREADS or 1); never affects results");
    app.add_option("--format", g.format, "report format: csv or json");

    std::size_t sample_count = 10;
    auto* cmd_sample = app.add_subcommand("sample", "dump heavy-tail draws");
    cmd_sample->add_option("--count", sample_count, "number of draws");

    auto* cmd_vague = app.add_subcommand("vague-check", "tail-identity discrepancies per n");
    auto* cmd_chars = app.add_subcommand("chars", "characteristic discrepancy table per n");
    auto* cmd_exp = app.add_subcommand("experiment", "full convergence experiment");

    std::string report_input;
    auto* cmd_report = app.add_subcommand("report", "re-emit a report from stored raw results");
    cmd_report->add_option("--input", report_input, "results.json produced by `experiment`")
        ->required();

    CLI11_PARSE(app, argc, argv);
    g.seed_set = seed_opt->count() > 0;

    try {
        if (cmd_sample->parsed()) return run_sample(g, sample_count);
        if (cmd_vague->parsed()) return run_vague_check(g);
        if (cmd_chars->parsed()) return run_chars(g);
        if (cmd_exp->parsed()) return run_experiment(g);
        if (cmd_report->parsed()) return run_report(g, report_input);
    } catch (const sl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const sl::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const sl::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
