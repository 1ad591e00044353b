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

#include "lpac/case_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace lpac {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Column positions in the MATPOWER tables.
enum BusCol { BUS_I, BUS_TYPE, PD, QD, GS, BS, BUS_AREA, VM, VA, BASE_KV,
              ZONE, VMAX, VMIN, kBusCols };
enum GenCol { GEN_BUS, PG, QG, QMAX, QMIN, VG, MBASE, GEN_STATUS, PMAX, PMIN,
              kGenCols };
enum BranchCol { F_BUS, T_BUS, BR_R, BR_X, BR_B, RATE_A, RATE_B, RATE_C, TAP,
                 SHIFT, BR_STATUS, kBranchCols };

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double ParseNumber(std::string_view token, int line) {
  std::string buf(token);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || std::isnan(v)) {
    throw ParseError(line, "malformed number '" + buf + "'");
  }
  return v;
}

struct Matrix {
  std::vector<std::vector<double>>* rows = nullptr;
  std::vector<int>* lines = nullptr;
};

class Reader {
 public:
  explicit Reader(CaseDocument& doc) : doc_(doc) {}

  void Feed(std::string_view raw, int line) {
    if (auto pct = raw.find('%'); pct != std::string_view::npos) {
      raw = raw.substr(0, pct);
    }
    if (skipping_cell_) {
      if (raw.find('}') != std::string_view::npos) skipping_cell_ = false;
      return;
    }
    if (in_matrix_) {
      Consume(raw, line);
      return;
    }
    std::string_view s = Trim(raw);
    if (s.empty()) return;
    if (s.starts_with("function")) {
      if (auto eq = s.find('='); eq != std::string_view::npos) {
        doc_.name = std::string(Trim(s.substr(eq + 1)));
      }
      return;
    }
    if (!s.starts_with("mpc.")) return;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line, "expected assignment");
    }
    const std::string field(Trim(s.substr(4, eq - 4)));
    std::string_view rhs = Trim(s.substr(eq + 1));
    if (rhs.starts_with('{')) {
      skipping_cell_ = rhs.find('}') == std::string_view::npos;
      return;
    }
    if (rhs.starts_with('[')) {
      current_ = Select(field);
      in_matrix_ = true;
      width_ = -1;
      Consume(rhs.substr(1), line);
      return;
    }
    if (field == "baseMVA") {
      if (rhs.ends_with(';')) rhs.remove_suffix(1);
      doc_.base_mva = ParseNumber(Trim(rhs), line);
      seen_base_ = true;
    }
  }

  void Finish(int line) {
    if (in_matrix_) throw ParseError(line, "unterminated matrix");
    if (!seen_base_) throw ParseError(line, "missing mpc.baseMVA");
  }

  std::vector<int> bus_lines, gen_lines, branch_lines;

 private:
  Matrix Select(const std::string& field) {
    if (field == "bus") return {&doc_.bus, &bus_lines};
    if (field == "gen") return {&doc_.gen, &gen_lines};
    if (field == "branch") return {&doc_.branch, &branch_lines};
    return {&sink_, &sink_lines_};
  }

  void EndRow(int line) {
    if (row_.empty()) return;
    if (width_ < 0) width_ = static_cast<int>(row_.size());
    if (static_cast<int>(row_.size()) != width_) {
      throw ParseError(line, "row has " + std::to_string(row_.size()) +
                                 " columns, expected " +
                                 std::to_string(width_));
    }
    current_.rows->push_back(std::move(row_));
    current_.lines->push_back(line);
    row_.clear();
  }

  void Consume(std::string_view s, int line) {
    std::size_t i = 0;
    while (i < s.size()) {
      const char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++i;
      } else if (c == ';') {
        EndRow(line);
        ++i;
      } else if (c == ']') {
        EndRow(line);
        in_matrix_ = false;
        return;
      } else {
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
               s[j] != ',' && s[j] != ';' && s[j] != ']') {
          ++j;
        }
        row_.push_back(ParseNumber(s.substr(i, j - i), line));
        i = j;
      }
    }
    EndRow(line);  // a newline also terminates a row
  }

  CaseDocument& doc_;
  Matrix current_;
  std::vector<double> row_;
  std::vector<std::vector<double>> sink_;
  std::vector<int> sink_lines_;
  int width_ = -1;
  bool in_matrix_ = false;
  bool skipping_cell_ = false;
  bool seen_base_ = false;
};

struct Located {
  CaseDocument doc;
  std::vector<int> bus_lines, gen_lines, branch_lines;
};

Located Read(std::string_view text) {
  Located out;
  Reader reader(out.doc);
  int line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    reader.Feed(text.substr(pos, end - pos), ++line);
    pos = end + 1;
  }
  reader.Finish(line);
  out.bus_lines = std::move(reader.bus_lines);
  out.gen_lines = std::move(reader.gen_lines);
  out.branch_lines = std::move(reader.branch_lines);
  return out;
}

void CheckWidth(const std::vector<std::vector<double>>& rows,
                const std::vector<int>& lines, int need, const char* what) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) < need) {
      throw ParseError(lines.empty() ? 0 : lines[r],
                       std::string(what) + " row needs at least " +
                           std::to_string(need) + " columns");
    }
  }
}

PowerNetwork Convert(const CaseDocument& doc, const std::vector<int>& bl,
                     const std::vector<int>& gl, const std::vector<int>& brl,
                     std::vector<std::string>* warnings) {
  auto line_of = [](const std::vector<int>& v, std::size_t r) {
    return r < v.size() ? v[r] : 0;
  };
  CheckWidth(doc.bus, bl, kBusCols, "bus");
  CheckWidth(doc.gen, gl, kGenCols, "gen");
  CheckWidth(doc.branch, brl, kBranchCols, "branch");
  const double base = doc.base_mva;
  if (!(base > 0.0)) throw ParseError(0, "baseMVA must be positive");

  // First in-service generator setpoint per bus id.
  std::map<int, double> setpoint;
  std::vector<Generator> gens;
  for (std::size_t r = 0; r < doc.gen.size(); ++r) {
    const auto& row = doc.gen[r];
    if (row[GEN_STATUS] <= 0) continue;
    Generator g;
    g.bus = static_cast<int>(row[GEN_BUS]);
    g.p_output = row[PG] / base;
    g.q_output = row[QG] / base;
    g.q_max = row[QMAX] / base;
    g.q_min = row[QMIN] / base;
    g.voltage_setpoint = row[VG];
    g.p_max = row[PMAX] / base;
    g.p_min = row[PMIN] / base;
    setpoint.emplace(g.bus, g.voltage_setpoint);
    gens.push_back(g);
  }

  std::vector<Bus> buses;
  int slack_line = -1;
  for (std::size_t r = 0; r < doc.bus.size(); ++r) {
    const auto& row = doc.bus[r];
    Bus b;
    b.id = static_cast<int>(row[BUS_I]);
    const int type = static_cast<int>(row[BUS_TYPE]);
    b.load = Complex(row[PD], row[QD]) / base;
    b.shunt = Complex(row[GS], row[BS]) / base;
    b.area = static_cast<int>(row[BUS_AREA]);
    b.vm_case = row[VM];
    b.va_case = row[VA] * kDegToRad;
    b.base_kv = row[BASE_KV];
    b.zone = static_cast<int>(row[ZONE]);
    b.v_max = row[VMAX];
    b.v_min = row[VMIN];
    auto sp = setpoint.find(b.id);
    switch (type) {
      case 1:
        b.kind = BusKind::kLoad;
        break;
      case 2:
        if (sp == setpoint.end()) {
          b.kind = BusKind::kLoad;
          if (warnings) {
            warnings->push_back("bus " + std::to_string(b.id) +
                                " is PV without an online generator; "
                                "treated as PQ");
          }
        } else {
          b.kind = BusKind::kGenerator;
        }
        break;
      case 3:
        if (slack_line >= 0) {
          throw ParseError(line_of(bl, r), "multiple slack buses");
        }
        slack_line = line_of(bl, r);
        b.kind = BusKind::kSlack;
        break;
      case 4:
        b.kind = BusKind::kLoad;
        b.isolated = true;
        if (warnings) {
          warnings->push_back("bus " + std::to_string(b.id) +
                              " is isolated; retained");
        }
        break;
      default:
        throw ParseError(line_of(bl, r),
                         "unknown bus type " + std::to_string(type));
    }
    if (b.kind != BusKind::kLoad) {
      b.voltage_setpoint = sp != setpoint.end() ? sp->second : b.vm_case;
    }
    buses.push_back(b);
  }
  if (slack_line < 0) throw ParseError(0, "no slack bus");

  std::vector<LineRecord> lines;
  for (std::size_t r = 0; r < doc.branch.size(); ++r) {
    const auto& row = doc.branch[r];
    if (row[BR_STATUS] <= 0) continue;
    LineRecord l;
    l.from = static_cast<int>(row[F_BUS]);
    l.to = static_cast<int>(row[T_BUS]);
    l.series_impedance = Complex(row[BR_R], row[BR_X]);
    l.charge = Complex(0.0, row[BR_B]);
    if (row[TAP] != 0.0 || row[SHIFT] != 0.0) {
      l.transformer = Transformer{row[TAP] == 0.0 ? 1.0 : row[TAP],
                                  row[SHIFT] * kDegToRad};
    }
    if (row[RATE_A] > 0.0) l.thermal_limit = row[RATE_A];
    if (l.series_impedance == Complex(0.0, 0.0)) {
      throw ParseError(line_of(brl, r), "branch has zero series impedance");
    }
    lines.push_back(l);
  }
  try {
    return PowerNetwork(base, std::move(buses), std::move(lines),
                        std::move(gens));
  } catch (const NetworkError& e) {
    throw ParseError(0, e.what());
  }
}

// Decimal value d with d / scale == target exactly after parsing.
double InvertDivision(double target, double scale) {
  if (!std::isfinite(target)) return target;
  double d = target * scale;
  for (int i = 0; i < 16 && d / scale != target; ++i) {
    d = std::nextafter(d, d / scale < target ? kInfinity : -kInfinity);
  }
  return d;
}

// Decimal value d with d * scale == target exactly after parsing.
double InvertProduct(double target, double scale) {
  double d = target / scale;
  for (int i = 0; i < 16 && d * scale != target; ++i) {
    d = std::nextafter(d, d * scale < target ? kInfinity : -kInfinity);
  }
  return d;
}

std::string Num(double v) {
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CaseDocument ParseCaseDocument(std::string_view text) { return Read(text).doc; }

PowerNetwork ToNetwork(const CaseDocument& doc,
                       std::vector<std::string>* warnings) {
  return Convert(doc, {}, {}, {}, warnings);
}

PowerNetwork ParseCase(std::string_view text,
                       std::vector<std::string>* warnings) {
  Located loc = Read(text);
  return Convert(loc.doc, loc.bus_lines, loc.gen_lines, loc.branch_lines,
                 warnings);
}

PowerNetwork LoadCase(const std::filesystem::path& path,
                      std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open case file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseCase(ss.str(), warnings);
}

std::string WriteCase(const PowerNetwork& net, std::string_view name) {
  const double base = net.base_mva();
  std::ostringstream out;
  out << "function mpc = " << name << "\n";
  out << "mpc.version = '2';\n";
  out << "mpc.baseMVA = " << Num(base) << ";\n\n";
  out << "%% bus_i type Pd Qd Gs Bs area Vm Va baseKV zone Vmax Vmin\n";
  out << "mpc.bus = [\n";
  for (const Bus& b : net.buses()) {
    int type = 1;
    if (b.kind == BusKind::kSlack) type = 3;
    if (b.kind == BusKind::kGenerator) type = 2;
    if (b.isolated) type = 4;
    out << "\t" << b.id << "\t" << type << "\t"
        << Num(InvertDivision(b.load.real(), base)) << "\t"
        << Num(InvertDivision(b.load.imag(), base)) << "\t"
        << Num(InvertDivision(b.shunt.real(), base)) << "\t"
        << Num(InvertDivision(b.shunt.imag(), base)) << "\t" << b.area
        << "\t" << Num(b.vm_case) << "\t"
        << Num(InvertProduct(b.va_case, kDegToRad)) << "\t" << Num(b.base_kv)
        << "\t" << b.zone << "\t" << Num(b.v_max) << "\t" << Num(b.v_min)
        << ";\n";
  }
  out << "];\n\n";
  out << "%% bus Pg Qg Qmax Qmin Vg mBase status Pmax Pmin\n";
  out << "mpc.gen = [\n";
  for (const Generator& g : net.generators()) {
    out << "\t" << g.bus << "\t" << Num(InvertDivision(g.p_output, base))
        << "\t" << Num(InvertDivision(g.q_output, base)) << "\t"
        << Num(InvertDivision(g.q_max, base)) << "\t"
        << Num(InvertDivision(g.q_min, base)) << "\t"
        << Num(g.voltage_setpoint) << "\t" << Num(base) << "\t1\t"
        << Num(InvertDivision(g.p_max, base)) << "\t"
        << Num(InvertDivision(g.p_min, base)) << ";\n";
  }
  out << "];\n\n";
  out << "%% fbus tbus r x b rateA rateB rateC ratio angle status\n";
  out << "mpc.branch = [\n";
  for (const LineRecord& l : net.lines()) {
    const double rate = l.thermal_limit.value_or(0.0);
    out << "\t" << l.from << "\t" << l.to << "\t"
        << Num(l.series_impedance.real()) << "\t"
        << Num(l.series_impedance.imag()) << "\t" << Num(l.charge.imag())
        << "\t" << Num(rate) << "\t" << Num(rate) << "\t" << Num(rate) << "\t"
        << Num(l.transformer ? l.transformer->tap : 0.0) << "\t"
        << Num(l.transformer ? InvertProduct(l.transformer->shift, kDegToRad)
                             : 0.0)
        << "\t1;\n";
  }
  out << "];\n";
  return out.str();
}

}  // namespace lpac
