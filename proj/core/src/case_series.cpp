// Copyright 2026 The Sentinel Authors
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

#include "sentinel/case_series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "sentinel/errors.hpp"

namespace sentinel {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

Date parse_date(const std::string& text) {
  const std::string s = trim(text);
  int y = 0, m = 0, d = 0;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
    throw ParseError("date must be formatted YYYY-MM-DD, got '" + s + "'");
  }
  auto parse_int = [&s](std::size_t pos, std::size_t len, int& out) {
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return ec == std::errc{} && ptr == s.data() + pos + len;
  };
  if (!parse_int(0, 4, y) || !parse_int(5, 2, m) || !parse_int(8, 2, d)) {
    throw ParseError("date must be formatted YYYY-MM-DD, got '" + s + "'");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                        std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) {
    throw ParseError("'" + s + "' is not a real calendar day");
  }
  return std::chrono::sys_days{ymd};
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::vector<std::string> CaseSeries::strata() const {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    if (std::find(out.begin(), out.end(), r.stratum) == out.end()) out.push_back(r.stratum);
  }
  return out;
}

std::vector<CaseRow> CaseSeries::stratum_rows(const std::string& stratum) const {
  std::vector<CaseRow> out;
  for (const auto& r : rows) {
    if (r.stratum == stratum) out.push_back(r);
  }
  std::sort(out.begin(), out.end(),
            [](const CaseRow& a, const CaseRow& b) { return a.date < b.date; });
  return out;
}

std::vector<std::int64_t> CaseSeries::stratum_counts(const std::string& stratum, Date first,
                                                     Date last) const {
  std::vector<std::int64_t> out;
  for (const auto& r : stratum_rows(stratum)) {
    if (r.date >= first && r.date <= last) out.push_back(r.count);
  }
  return out;
}

CaseSeries ingest_csv(std::istream& in, const IngestOptions& opts) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("empty input: expected header 'date,stratum,count'");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    const auto header = split_csv_line(line);
    if (header.size() != 3 || trim(header[0]) != "date" || trim(header[1]) != "stratum" ||
        trim(header[2]) != "count") {
      throw ParseError("header must be 'date,stratum,count', got '" + line + "'", 1);
    }
  }

  CaseSeries series;
  std::int64_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw ParseError("row " + std::to_string(row_no) + ": expected 3 columns, got " +
                           std::to_string(fields.size()),
                       row_no);
    }
    CaseRow row;
    try {
      row.date = parse_date(fields[0]);
    } catch (const ParseError& e) {
      throw ParseError("row " + std::to_string(row_no) + ", column 1: " + e.what(), row_no);
    }
    row.stratum = trim(fields[1]);
    if (row.stratum.empty()) {
      throw ParseError("row " + std::to_string(row_no) + ", column 2: empty stratum label",
                       row_no);
    }
    const std::string count_text = trim(fields[2]);
    std::int64_t count = 0;
    auto [ptr, ec] =
        std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
      throw ParseError("row " + std::to_string(row_no) +
                           ", column 3: count must be an integer, got '" + count_text + "'",
                       row_no);
    }
    if (count < 0) {
      throw ParseError("row " + std::to_string(row_no) + ", column 3: negative count " +
                           std::to_string(count),
                       row_no);
    }
    row.count = count;
    series.rows.push_back(std::move(row));
  }

  // Per-stratum invariants: strict date order as listed, no duplicates, no
  // calendar gaps unless explicitly allowed.
  std::map<std::string, std::pair<Date, std::int64_t>> last_seen;  // stratum -> (date, row)
  std::int64_t idx = 1;
  for (const auto& r : series.rows) {
    ++idx;
    auto it = last_seen.find(r.stratum);
    if (it != last_seen.end()) {
      const auto [prev_date, prev_row] = it->second;
      if (r.date == prev_date) {
        throw InvariantViolation("duplicate (date, stratum) pair at rows " +
                                 std::to_string(prev_row) + " and " + std::to_string(idx) +
                                 ": " + format_date(r.date) + ", " + r.stratum);
      }
      if (r.date < prev_date) {
        throw InvariantViolation("dates not increasing within stratum '" + r.stratum +
                                 "' at row " + std::to_string(idx));
      }
      if (!opts.allow_gaps && r.date - prev_date != std::chrono::days{1}) {
        throw InvariantViolation("missing day(s) between " + format_date(prev_date) + " and " +
                                 format_date(r.date) + " in stratum '" + r.stratum +
                                 "' (row " + std::to_string(idx) +
                                 "); pass allow-gaps to accept");
      }
    }
    last_seen[r.stratum] = {r.date, idx};
  }
  return series;
}

CaseSeries ingest_csv_file(const std::string& path, const IngestOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return ingest_csv(in, opts);
}

void emit_csv(std::ostream& out, const CaseSeries& series) {
  out << "date,stratum,count\n";
  for (const auto& r : series.rows) {
    out << format_date(r.date) << ',' << r.stratum << ',' << r.count << '\n';
  }
}

}  // namespace sentinel
