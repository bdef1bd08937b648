#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctfagent/run_record.hpp"

namespace ctfagent {

class AxisConstantError : public Error {
 public:
  using Error::Error;
};

struct ModelRow {
  std::string model_id;
  std::map<std::string, long long> solved_per_benchmark;
  long long solved_total = 0;
  long long attempts = 0;
  double avg_time_s = 0.0;      // mean wall time over SOLVED challenges
  double avg_time_all_s = 0.0;  // mean over all attempts (structured export)
  long long total_tokens = 0;   // planner + summarizer
  std::map<std::string, long long> solved_by_category;
  std::map<std::string, long long> solved_by_difficulty;
};

struct MetricsReport {
  std::vector<std::string> benchmark_order;           // first-seen order
  std::map<std::string, long long> benchmark_sizes;   // distinct challenge ids
  std::vector<ModelRow> rows;                         // sorted by solved_total desc
  std::map<std::string, std::vector<double>> token_series;  // mean cumulative per step
  std::map<std::string, long long> command_frequency;       // head token -> count
  long long record_count = 0;
};

MetricsReport aggregate(const std::vector<RunRecord>& records);

enum class ReportFormat { text_table, csv, structured };

ReportFormat report_format_from_string(const std::string& s);

// text_table columns: LLM | <benchmark> (N)... | Avg. Time/Challenge (s),
// times to one decimal place, rows by total solved descending. csv carries
// the same columns; structured is a JSON document with every report field.
std::string render_report(const MetricsReport& report, ReportFormat format);

// Per-model mean cumulative (planner + summarizer) tokens through step k;
// episodes shorter than k are excluded from entry k.
std::map<std::string, std::vector<double>> token_series(const std::vector<RunRecord>& records);

enum class SweepAxis { temperature, top_p, window };

SweepAxis sweep_axis_from_string(const std::string& s);

struct SweepRow {
  double axis_value = 0.0;
  long long solved = 0;
  long long records = 0;
  long long steps = 0;
  long long error_commands = 0;  // steps with nonzero exit code
  double error_command_rate = 0.0;
};

// One row per distinct axis value, ascending; errors with AxisConstant
// when the records do not vary along the chosen axis.
std::vector<SweepRow> sweep_table(const std::vector<RunRecord>& records, SweepAxis axis);

std::string render_sweep_table(const std::vector<SweepRow>& rows, SweepAxis axis);

}  // namespace ctfagent
