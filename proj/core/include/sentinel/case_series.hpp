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

#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sentinel {

// Date-indexed stratified daily case counts, ingested from and emitted as
// CSV with the header `date,stratum,count`. Dates are ISO-8601 calendar
// days; the daily cadence is the monitoring tick throughout the library.

using Date = std::chrono::sys_days;

/// Parses "YYYY-MM-DD"; throws ParseError on malformed or impossible dates.
Date parse_date(const std::string& text);
std::string format_date(Date d);

struct CaseRow {
  Date date{};
  std::string stratum;
  std::int64_t count = 0;
};

struct CaseSeries {
  std::vector<CaseRow> rows;

  std::vector<std::string> strata() const;
  /// Rows of one stratum in date order.
  std::vector<CaseRow> stratum_rows(const std::string& stratum) const;
  /// Counts of one stratum restricted to [first, last], inclusive.
  std::vector<std::int64_t> stratum_counts(const std::string& stratum, Date first,
                                           Date last) const;
};

struct IngestOptions {
  bool allow_gaps = false;  // otherwise missing days inside a stratum are rejected
};

/// Validated load: strictly increasing dates within each stratum, no
/// duplicate (date, stratum) pairs, nonnegative counts. Throws ParseError
/// for malformed rows and InvariantViolation for ordering/gap/duplicate
/// problems (listing the offending rows).
CaseSeries ingest_csv(std::istream& in, const IngestOptions& opts = {});
CaseSeries ingest_csv_file(const std::string& path, const IngestOptions& opts = {});

void emit_csv(std::ostream& out, const CaseSeries& series);

}  // namespace sentinel
