#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "stable_limits/errors.hpp"
#include "stable_limits/experiment.hpp"

namespace stable_limits {

namespace {

using nlohmann::json;

json config_echo(const ExperimentConfig& cfg) {
    json j;
    j["alpha"] = cfg.alpha;
    j["p"] = cfg.p;
    j["n_values"] = cfg.n_values;
    j["replicate_count"] = cfg.replicate_count;
    j["f_tag"] = cfg.f_tag;
    j["h_shape"] = cfg.h_shape == TruncationShape::taper ? "taper" : "hard";
    j["regime"] = cfg.regime == RegimeKind::theorem1 ? "theorem1" : "theorem2";
    j["epsilon"] = cfg.epsilon;
    j["delta"] = cfg.delta;
    j["eval_times"] = cfg.eval_times;
    j["master_seed"] = cfg.master_seed;
    j["ks_level"] = cfg.ks_level;
    j["output_dir"] = cfg.output_dir;
    return j;
}

json row_to_json(const ReportRow& row) {
    json j;
    j["experiment_id"] = row.experiment_id;
    j["n"] = row.n;
    j["t"] = row.t;
    j["quantity"] = row.quantity;
    j["ks_stat"] = row.ks_stat;
    j["ks_threshold"] = row.ks_threshold;
    j["pass"] = row.pass;
    j["ecf_dist"] = row.ecf_dist;
    j["b1_gap"] = row.b1_gap;
    j["c11_gap"] = row.c11_gap;
    j["c22_gap"] = row.c22_gap;
    j["vague_sup"] = row.vague_sup;
    j["hill_alpha"] = row.hill_alpha;
    j["seed"] = row.seed;
    return j;
}

}  // namespace

std::string format_double_17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void emit_report_csv(const ExperimentReport& report, std::ostream& os) {
    os << "experiment_id,n,t,quantity,ks_stat,ks_threshold,pass,ecf_dist,b1_gap,c11_gap,"
          "c22_gap,vague_sup,hill_alpha,seed\n";
    for (const auto& row : report.rows) {
        os << row.experiment_id << ',' << row.n << ',' << format_double_17(row.t) << ','
           << row.quantity << ',' << format_double_17(row.ks_stat) << ','
           << format_double_17(row.ks_threshold) << ',' << (row.pass ? 1 : 0) << ','
           << format_double_17(row.ecf_dist) << ',' << format_double_17(row.b1_gap) << ','
           << format_double_17(row.c11_gap) << ',' << format_double_17(row.c22_gap) << ','
           << format_double_17(row.vague_sup) << ',' << format_double_17(row.hill_alpha) << ','
           << row.seed << '\n';
    }
}

void emit_report_json(const ExperimentReport& report, std::ostream& os) {
    json j;
    j["config"] = config_echo(report.config);
    json rows = json::array();
    for (const auto& row : report.rows) rows.push_back(row_to_json(row));
    j["rows"] = rows;
    os << j.dump(2) << '\n';
}

void write_raw_results(const ExperimentReport& report, const std::string& path) {
    json j;
    j["config_text"] = report.config.canonical_text();
    json diags = json::array();
    for (const auto& d : report.diagnostics) {
        json dj;
        dj["n"] = d.n;
        dj["vague_sup"] = d.vague_sup;
        dj["hill_alpha"] = d.hill_alpha;
        dj["gap_grid"] = d.gaps.grid;
        dj["b1_gap"] = d.gaps.b1;
        dj["c11_gap"] = d.gaps.c11;
        dj["c12_gap"] = d.gaps.c12;
        dj["c22_gap"] = d.gaps.c22;
        diags.push_back(std::move(dj));
    }
    j["diagnostics"] = diags;
    json raws = json::array();
    for (const auto& b : report.raw) {
        json bj;
        bj["n"] = b.n;
        bj["t"] = b.t;
        bj["s"] = b.s;
        bj["y"] = b.y;
        bj["z"] = b.z;
        bj["integral"] = b.integral;
        raws.push_back(std::move(bj));
    }
    j["raw"] = raws;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

ExperimentReport load_raw_results(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open raw results '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("bad raw results file '" + path + "': " + e.what());
    }

    ExperimentReport report;
    try {
        report.config = parse_config_text(j.at("config_text").get<std::string>());
        report.experiment_id = report.config.id();
        for (const auto& dj : j.at("diagnostics")) {
            NDiagnostics d;
            d.n = dj.at("n").get<std::size_t>();
            d.vague_sup = dj.at("vague_sup").get<double>();
            d.hill_alpha = dj.at("hill_alpha").is_null()
                               ? std::numeric_limits<double>::quiet_NaN()
                               : dj.at("hill_alpha").get<double>();
            d.gaps.grid = dj.at("gap_grid").get<std::vector<double>>();
            d.gaps.b1 = dj.at("b1_gap").get<std::vector<double>>();
            d.gaps.c11 = dj.at("c11_gap").get<std::vector<double>>();
            d.gaps.c12 = dj.at("c12_gap").get<std::vector<double>>();
            d.gaps.c22 = dj.at("c22_gap").get<std::vector<double>>();
            report.diagnostics.push_back(std::move(d));
        }
        for (const auto& bj : j.at("raw")) {
            RawBlock b;
            b.n = bj.at("n").get<std::size_t>();
            b.t = bj.at("t").get<double>();
            b.s = bj.at("s").get<std::vector<double>>();
            b.y = bj.at("y").get<std::vector<double>>();
            b.z = bj.at("z").get<std::vector<double>>();
            b.integral = bj.at("integral").get<std::vector<double>>();
            report.raw.push_back(std::move(b));
        }
    } catch (const json::exception& e) {
        throw IoError("bad raw results file '" + path + "': " + e.what());
    }
    return report;
}

std::string write_report_files(const ExperimentReport& report, ReportFormat format) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(report.config.output_dir, ec);
    if (ec) throw IoError("cannot create output dir '" + report.config.output_dir + "'");

    const fs::path dir(report.config.output_dir);
    write_raw_results(report, (dir / "results.json").string());

    const fs::path out =
        dir / (format == ReportFormat::csv ? "report.csv" : "report.json");
    std::ofstream os(out, std::ios::binary);
    if (!os) throw IoError("cannot open '" + out.string() + "' for writing");
    if (format == ReportFormat::csv)
        emit_report_csv(report, os);
    else
        emit_report_json(report, os);
    if (!os) throw IoError("write failed for '" + out.string() + "'");
    return out.string();
}

}  // namespace stable_limits
