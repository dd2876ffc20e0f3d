#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "colsafe/loop.hpp"

namespace colsafe::app {

/// Column names of trace.csv for a problem of dimension d with q constraints.
std::vector<std::string> trace_columns(Index dim, Index constraints);

/// Streams trace rows to CSV and flushes after each row, so a failed run leaves a partial trace.
class TraceWriter {
public:
    TraceWriter(const std::string& path, Index dim, Index constraints);
    void write(const TraceRow& row);

private:
    std::ofstream out_;
    Index dim_;
    Index constraints_;
};

std::string format_trace_row(const TraceRow& row, Index dim, Index constraints);

/// Final S/M/G membership of every grid point.
void write_safe_set_csv(const std::string& path, const DomainGrid& grid, const LoopState& state);

nlohmann::json make_summary(const RunResult& result, const Problem& problem, const std::string& method,
                            std::uint64_t seed, Index budget);

void write_json(const std::string& path, const nlohmann::json& value);

}  // namespace colsafe::app
