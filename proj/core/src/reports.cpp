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

#include "lpac/reports.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "json.hpp"

namespace lpac {

namespace {

using Json = nlohmann::ordered_json;

Json Number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(FormatSig4(v));
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

std::string ClassKey(int k) { return "N-" + std::to_string(k); }

struct Quantity {
  const char* name;
  const QuantityStats AccuracyReport::*stats;
};

constexpr Quantity kQuantities[] = {
    {"p_flow_mw", &AccuracyReport::active},
    {"q_flow_mvar", &AccuracyReport::reactive},
    {"angle_rad", &AccuracyReport::angle},
    {"vm_pu", &AccuracyReport::voltage},
};

std::string StudyCsv(const StudyTable& table,
                     const std::function<std::string(const StudyCell&)>& cell) {
  std::string out = "class";
  for (RestorationVariant v : table.variants) out += std::string(",") + ToString(v);
  out += "\n";
  for (int k : table.classes) {
    out += ClassKey(k);
    for (RestorationVariant v : table.variants) {
      const StudyCell* c = table.find(k, v);
      out += "," + (c ? cell(*c) : std::string());
    }
    out += "\n";
  }
  return out;
}

Json StudyJson(const StudyTable& table,
               const std::function<Json(const StudyCell&)>& cell) {
  Json rows = Json::array();
  for (int k : table.classes) {
    Json row = Json::object();
    row["class"] = ClassKey(k);
    for (RestorationVariant v : table.variants) {
      const StudyCell* c = table.find(k, v);
      row[ToString(v)] = c ? cell(*c) : Json(nullptr);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ReportFormat ParseReportFormat(const std::string& text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown report format '" + text + "'");
}

std::string FormatSig4(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", value == 0.0 ? 0.0 : value);
  return buf;
}

std::string WriteAccuracy(const std::vector<AccuracyReport>& reports,
                          ReportFormat format) {
  if (format == ReportFormat::kJson) {
    Json rows = Json::array();
    for (const AccuracyReport& r : reports) {
      for (const Quantity& q : kQuantities) {
        const QuantityStats& s = r.*(q.stats);
        if (!s.present) continue;
        rows.push_back({{"benchmark", r.benchmark},
                        {"model", r.model},
                        {"quantity", q.name},
                        {"flow_vectors", ToString(r.flow_mode)},
                        {"corr", Number(s.corr)},
                        {"mean_abs", Number(s.mean_abs)},
                        {"max_abs", Number(s.max_abs)},
                        {"rel_at_max", Number(s.rel_at_max)}});
      }
    }
    return Dump(rows);
  }
  std::string out = "benchmark,model,quantity,corr,mean_abs,max_abs,rel_at_max\n";
  for (const AccuracyReport& r : reports) {
    for (const Quantity& q : kQuantities) {
      const QuantityStats& s = r.*(q.stats);
      if (!s.present) continue;
      out += r.benchmark + "," + r.model + "," + q.name + "," +
             FormatSig4(s.corr) + "," + FormatSig4(s.mean_abs) + "," +
             FormatSig4(s.max_abs) + "," + FormatSig4(s.rel_at_max) + "\n";
    }
  }
  return out;
}

std::string WriteCumulative(const std::vector<CumulativeErrorReport>& reports,
                            ReportFormat format) {
  if (format == ReportFormat::kJson) {
    Json rows = Json::array();
    for (const CumulativeErrorReport& r : reports) {
      rows.push_back({{"benchmark", r.benchmark},
                      {"model", r.model},
                      {"re_drop", Number(r.re_drop)},
                      {"im_drop", Number(r.im_drop)},
                      {"p_bus", Number(r.p_bus)},
                      {"q_bus", Number(r.q_bus)}});
    }
    return Dump(rows);
  }
  std::string out = "benchmark,model,re_drop,im_drop,p_bus,q_bus\n";
  for (const CumulativeErrorReport& r : reports) {
    out += r.benchmark + "," + r.model + "," + FormatSig4(r.re_drop) + "," +
           FormatSig4(r.im_drop) + "," + FormatSig4(r.p_bus) + "," +
           FormatSig4(r.q_bus) + "\n";
  }
  return out;
}

std::string WriteConvergenceTable(const StudyTable& table,
                                  ReportFormat format) {
  if (format == ReportFormat::kJson) {
    return Dump(StudyJson(table, [](const StudyCell& c) {
      return Json(c.converged);
    }));
  }
  return StudyCsv(table, [](const StudyCell& c) {
    return std::to_string(c.converged);
  });
}

std::string WriteSheddingTable(const StudyTable& table, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    return Dump(StudyJson(table, [](const StudyCell& c) {
      return Number(c.mean_shed);
    }));
  }
  return StudyCsv(table, [](const StudyCell& c) {
    return FormatSig4(c.mean_shed);
  });
}

std::string WriteCapacitorTable(const std::vector<CppSolution>& rows,
                                ReportFormat format, bool with_time) {
  if (format == ReportFormat::kJson) {
    Json out = Json::array();
    for (const CppSolution& s : rows) {
      Json row = {{"v_min", Number(s.v_min)},
                  {"min_v", Number(s.v_low_violation)},
                  {"max_v", Number(s.v_high_violation)},
                  {"max_q", Number(s.q_violation)},
                  {"count", s.count}};
      if (with_time) row["time_s"] = Number(s.seconds);
      row["status"] = ToString(s.status);
      row["ac_converged"] = s.ac_converged;
      out.push_back(row);
    }
    return Dump(out);
  }
  std::string out = with_time
                        ? "v_min,min_v,max_v,max_q,count,time_s,status,ac\n"
                        : "v_min,min_v,max_v,max_q,count,status,ac\n";
  for (const CppSolution& s : rows) {
    out += FormatSig4(s.v_min) + "," + FormatSig4(s.v_low_violation) + "," +
           FormatSig4(s.v_high_violation) + "," + FormatSig4(s.q_violation) +
           "," + std::to_string(s.count) + "," +
           (with_time ? FormatSig4(s.seconds) + "," : std::string()) +
           ToString(s.status) + "," +
           (!s.verified ? "unchecked" : s.ac_converged ? "converged" : "failed") +
           "\n";
  }
  return out;
}

}  // namespace lpac
