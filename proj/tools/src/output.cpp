#include "colsafe/app/output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace colsafe::app {
namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_ms(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

}  // namespace

std::vector<std::string> trace_columns(Index dim, Index constraints) {
    std::vector<std::string> cols{"n"};
    for (Index j = 1; j <= dim; ++j) cols.push_back("a_" + std::to_string(j));
    cols.push_back("f_hat");
    for (Index i = 1; i <= constraints; ++i) cols.push_back("g_hat_" + std::to_string(i));
    for (const char* c : {"safe_size", "maximizers_size", "expanders_size", "expansion_count", "t_bounds_ms",
                          "t_sets_ms", "t_select_ms", "t_ingest_ms", "violations_true"}) {
        cols.emplace_back(c);
    }
    return cols;
}

TraceWriter::TraceWriter(const std::string& path, Index dim, Index constraints)
    : out_(open_or_throw(path)), dim_(dim), constraints_(constraints) {
    const auto cols = trace_columns(dim, constraints);
    for (Index k = 0; k < cols.size(); ++k) out_ << (k ? "," : "") << cols[k];
    out_ << '\n';
    out_.flush();
}

std::string format_trace_row(const TraceRow& row, Index dim, Index constraints) {
    std::string line = std::to_string(row.iteration);
    for (Index j = 0; j < dim; ++j) line += "," + fmt_double(row.point[static_cast<Eigen::Index>(j)]);
    for (Index i = 0; i <= constraints; ++i) line += "," + fmt_double(row.measurement[static_cast<Eigen::Index>(i)]);
    line += "," + std::to_string(row.safe_size) + "," + std::to_string(row.maximizers_size) + "," +
            std::to_string(row.expanders_size) + "," + std::to_string(row.expansion_count);
    line += "," + fmt_ms(row.t_bounds_ms) + "," + fmt_ms(row.t_sets_ms) + "," + fmt_ms(row.t_select_ms) + "," +
            fmt_ms(row.t_ingest_ms);
    line += "," + (row.true_violations ? std::to_string(*row.true_violations) : std::string());
    return line;
}

void TraceWriter::write(const TraceRow& row) {
    out_ << format_trace_row(row, dim_, constraints_) << '\n';
    out_.flush();
}

void write_safe_set_csv(const std::string& path, const DomainGrid& grid, const LoopState& state) {
    auto out = open_or_throw(path);
    out << "index";
    for (Index j = 1; j <= grid.dim(); ++j) out << ",a_" << j;
    out << ",in_seed,in_safe,in_maximizers,in_expanders\n";
    std::vector<char> s(grid.size(), 0), m(grid.size(), 0), g(grid.size(), 0);
    for (Index a : state.safe) s[a] = 1;
    for (Index a : state.maximizers) m[a] = 1;
    for (Index a : state.expanders) g[a] = 1;
    for (Index a = 0; a < grid.size(); ++a) {
        out << a;
        for (Index j = 0; j < grid.dim(); ++j) out << ',' << fmt_double(grid.point(a)[static_cast<Eigen::Index>(j)]);
        out << ',' << int(grid.is_seed(a)) << ',' << int(s[a]) << ',' << int(m[a]) << ',' << int(g[a]) << '\n';
    }
}

nlohmann::json make_summary(const RunResult& result, const Problem& problem, const std::string& method,
                            std::uint64_t seed, Index budget) {
    nlohmann::json j;
    j["method"] = method;
    j["problem"] = problem.name;
    j["seed"] = seed;
    j["budget"] = budget;
    j["iterations"] = result.rows.size();
    j["converged"] = result.converged;

    nlohmann::json best;
    best["index"] = result.best_guess;
    best["point"] = std::vector<double>(result.best_point.data(), result.best_point.data() + result.best_point.size());
    best["reward_lower_bound"] = std::isfinite(result.best_lower) ? nlohmann::json(result.best_lower)
                                                                  : nlohmann::json(nullptr);
    if (problem.truth) {
        const Measurement truth = problem.ground_truth(result.best_point);
        best["true_reward"] = truth[0];
        best["true_constraints"] = std::vector<double>(truth.data() + 1, truth.data() + truth.size());
    } else {
        best["true_reward"] = nullptr;
        best["true_constraints"] = nullptr;
    }
    j["best_guess"] = best;

    j["total_true_violations"] = result.total_true_violations;
    j["intersection_violations"] = result.intersection_violations;
    j["final_safe_size"] = result.final_state.safe.size();
    j["grid_size"] = problem.grid.size();

    double tb = 0, ts = 0, tsel = 0, ti = 0;
    for (const auto& r : result.rows) {
        tb += r.t_bounds_ms;
        ts += r.t_sets_ms;
        tsel += r.t_select_ms;
        ti += r.t_ingest_ms;
    }
    j["wall_time_ms"] = {{"bounds", tb}, {"sets", ts}, {"select", tsel}, {"ingest", ti}, {"total", tb + ts + tsel + ti}};
    return j;
}

void write_json(const std::string& path, const nlohmann::json& value) {
    auto out = open_or_throw(path);
    out << value.dump(2) << '\n';
}

}  // namespace colsafe::app
