#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "stable_limits/characteristics.hpp"
#include "stable_limits/diagnostics.hpp"
#include "stable_limits/functional.hpp"
#include "stable_limits/heavy_tail_model.hpp"
#include "stable_limits/prelimit.hpp"

namespace stable_limits {

enum class RegimeKind { theorem1, theorem2 };

struct ExperimentConfig {
    double alpha = 0.8;
    double p = 0.5;
    std::vector<std::size_t> n_values;
    std::size_t replicate_count = 0;
    std::string f_tag = "sine";
    TruncationShape h_shape = TruncationShape::taper;
    RegimeKind regime = RegimeKind::theorem1;
    double epsilon = 0.0;  // theorem2 truncation level
    double delta = 0.0;    // theorem1 small-jump floor; 0 = derive from the KS budget
    std::vector<double> eval_times;
    std::uint64_t master_seed = 1;
    double ks_level = 0.01;
    std::string output_dir = "out";

    void validate() const;                    // throws ConfigError
    double effective_delta() const;           // delta or the variance-budget default
    std::string canonical_text() const;       // key=value serialization
    std::uint64_t id() const;                 // FNV-1a of canonical_text()
};

// Flat key=value file; '#' starts a comment, unknown keys are errors.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Mean over paths of the running sup-gap between pre-limit and limit
// characteristics evaluated along the same realized path.
struct CharGapCurves {
    std::vector<double> grid;
    std::vector<double> b1, c11, c12, c22;
};

CharGapCurves mean_characteristic_gaps(const TailLaw& law, const LevyMeasure& measure,
                                       std::size_t n, const TruncationFn& h, const FunctionalF& f,
                                       std::size_t path_count, std::uint64_t master_seed,
                                       unsigned threads = 1);

struct NDiagnostics {
    std::size_t n = 0;
    double vague_sup = 0.0;
    double hill_alpha = 0.0;
    CharGapCurves gaps;
};

struct RawBlock {
    std::size_t n = 0;
    double t = 0.0;
    std::vector<double> s, y, z, integral;  // indexed by replicate
};

struct ReportRow {
    std::uint64_t experiment_id = 0;
    std::size_t n = 0;
    double t = 0.0;
    std::string quantity;  // "S", "Y", "pair_sum"
    double ks_stat = 0.0;
    double ks_threshold = 0.0;
    bool pass = false;
    double ecf_dist = 0.0;
    double b1_gap = 0.0;
    double c11_gap = 0.0;
    double c22_gap = 0.0;
    double vague_sup = 0.0;
    double hill_alpha = 0.0;
    std::uint64_t seed = 0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::uint64_t experiment_id = 0;
    std::vector<NDiagnostics> diagnostics;  // one per n
    std::vector<RawBlock> raw;              // one per (n, t)
    std::vector<ReportRow> rows;
    double wall_seconds = 0.0;              // never serialized (determinism)
};

ExperimentReport run_convergence_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

// Pure function of (config, diagnostics, raw); used by the run and by the
// `report` re-emission path.
void compute_report_rows(ExperimentReport& report);

// 17-significant-digit decimal; reparse is bit-exact for finite doubles.
std::string format_double_17(double x);

enum class ReportFormat { csv, json };
void emit_report_csv(const ExperimentReport& report, std::ostream& os);
void emit_report_json(const ExperimentReport& report, std::ostream& os);

// Writes results.json (raw store) and report.csv / report.json into
// config.output_dir; returns the emitted report path. Throws IoError.
std::string write_report_files(const ExperimentReport& report, ReportFormat format);
void write_raw_results(const ExperimentReport& report, const std::string& path);
ExperimentReport load_raw_results(const std::string& path);  // rows left empty

// Replicate-level deterministic parallelism; results must be written to
// per-index slots. threads == 0 or 1 runs inline.
void parallel_for_indices(std::size_t count, unsigned threads,
                          const std::function<void(std::size_t)>& fn);

// --threads CLI value if positive, else STABLE_LIMITS_THREADS, else 1.
unsigned resolve_thread_count(long cli_value);

}  // namespace stable_limits
