// Copyright 2026 The vqsdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "vqsdp/solvers.hpp"

namespace vqsdp {

namespace {

constexpr const char* kColumns[] = {"outer_iter", "inner_iters_used", "objective",   "grad_norm_theta",
                                    "grad_norm_full", "constraint_violation", "penalty_c", "eta_k",
                                    "wall_time_ms", "shots_used"};
constexpr int kFixedColumns = 10;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, int line, const std::string& column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("trace line " + std::to_string(line) + ", column " + column + ": bad number '" + s + "'");
  }
}

}  // namespace

std::string trace_csv_header(int num_duals) {
  std::ostringstream os;
  for (int i = 0; i < kFixedColumns; ++i) os << (i ? "," : "") << kColumns[i];
  for (int i = 0; i < num_duals; ++i) os << ",y_" << i;
  return os.str();
}

std::string trace_to_csv(const Trace& trace, int num_duals) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << trace_csv_header(num_duals) << '\n';
  for (const auto& row : trace) {
    os << row.outer_iter << ',' << row.inner_iters_used << ',' << row.objective << ',' << row.grad_norm_theta << ','
       << row.grad_norm_full << ',' << row.constraint_violation << ',' << row.penalty_c << ',' << row.eta_k << ','
       << row.wall_time_ms << ',' << row.shots_used;
    for (int i = 0; i < num_duals; ++i) {
      os << ',';
      if (i < row.duals.size()) os << row.duals[i];
    }
    os << '\n';
  }
  return os.str();
}

std::string trace_to_json(const Trace& trace) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : trace) {
    nlohmann::ordered_json j;
    j["outer_iter"] = row.outer_iter;
    j["inner_iters_used"] = row.inner_iters_used;
    j["objective"] = row.objective;
    j["grad_norm_theta"] = row.grad_norm_theta;
    j["grad_norm_full"] = row.grad_norm_full;
    j["constraint_violation"] = row.constraint_violation;
    j["penalty_c"] = row.penalty_c;
    j["eta_k"] = row.eta_k;
    j["wall_time_ms"] = row.wall_time_ms;
    j["shots_used"] = row.shots_used;
    j["duals"] = std::vector<double>(row.duals.data(), row.duals.data() + row.duals.size());
    j["inner_tolerance"] = row.inner_tolerance;
    j["inner_converged"] = row.inner_converged;
    rows.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["version"] = kTraceSchema;
  doc["rows"] = std::move(rows);
  return doc.dump(1);
}

void write_trace_csv(const Trace& trace, int num_duals, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << trace_to_csv(trace, num_duals);
  if (!os) throw Error("failed writing " + path);
}

Trace trace_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ParseError("trace: empty input");
  const auto header = split(line, ',');
  if (static_cast<int>(header.size()) < kFixedColumns) throw ParseError("trace: header too short");
  for (int i = 0; i < kFixedColumns; ++i) {
    if (header[i] != kColumns[i]) throw ParseError("trace: unexpected column '" + header[i] + "'");
  }
  const int num_duals = static_cast<int>(header.size()) - kFixedColumns;
  Trace out;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw ParseError("trace line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " cells");
    }
    TraceRow row;
    row.outer_iter = static_cast<int>(parse_double(cells[0], line_no, kColumns[0]));
    row.inner_iters_used = static_cast<int>(parse_double(cells[1], line_no, kColumns[1]));
    row.objective = parse_double(cells[2], line_no, kColumns[2]);
    row.grad_norm_theta = parse_double(cells[3], line_no, kColumns[3]);
    row.grad_norm_full = parse_double(cells[4], line_no, kColumns[4]);
    row.constraint_violation = parse_double(cells[5], line_no, kColumns[5]);
    row.penalty_c = parse_double(cells[6], line_no, kColumns[6]);
    row.eta_k = parse_double(cells[7], line_no, kColumns[7]);
    row.wall_time_ms = parse_double(cells[8], line_no, kColumns[8]);
    row.shots_used = static_cast<long long>(parse_double(cells[9], line_no, kColumns[9]));
    row.duals.resize(num_duals);
    for (int i = 0; i < num_duals; ++i) row.duals[i] = parse_double(cells[kFixedColumns + i], line_no, header[kFixedColumns + i]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace vqsdp
