// Copyright 2026 The lpac contributors
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

// CSV and JSON writers for accuracy reports and study tables. Columns are
// in a fixed order and floats carry four significant digits.

#ifndef LPAC_REPORTS_HPP_
#define LPAC_REPORTS_HPP_

#include <string>
#include <vector>

#include "lpac/capacitor_placement.hpp"
#include "lpac/evaluation.hpp"
#include "lpac/restoration.hpp"

namespace lpac {

enum class ReportFormat { kCsv, kJson };

// "csv" or "json"; throws std::invalid_argument otherwise.
ReportFormat ParseReportFormat(const std::string& text);

// printf "%.4g"; "inf", "-inf" and "nan" for non-finite values.
std::string FormatSig4(double value);

// Header: benchmark,model,quantity,corr,mean_abs,max_abs,rel_at_max
std::string WriteAccuracy(const std::vector<AccuracyReport>& reports,
                          ReportFormat format);

// Header: benchmark,model,re_drop,im_drop,p_bus,q_bus
std::string WriteCumulative(const std::vector<CumulativeErrorReport>& reports,
                            ReportFormat format);

// One row per contingency class keyed "N-k", one column per variant.
std::string WriteConvergenceTable(const StudyTable& table,
                                  ReportFormat format);
std::string WriteSheddingTable(const StudyTable& table, ReportFormat format);

// Header: v_min,min_v,max_v,max_q,count,time_s,status,ac
// Solve times vary between runs; leave them out for byte-stable output.
std::string WriteCapacitorTable(const std::vector<CppSolution>& rows,
                                ReportFormat format, bool with_time = true);

}  // namespace lpac

#endif  // LPAC_REPORTS_HPP_
