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

#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpac/ac_solver.hpp"
#include "lpac/capacitor_placement.hpp"
#include "lpac/case_io.hpp"
#include "lpac/evaluation.hpp"
#include "lpac/lpac_models.hpp"
#include "lpac/reports.hpp"
#include "lpac/restoration.hpp"

namespace lpac::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Bad arguments or unreadable/unwritable files: exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::string>& Aliases() {
  static const std::map<std::string, std::string> aliases = {
      {"ieee14", "case14.m"},   {"ieee30", "case_ieee30.m"},
      {"mp24", "case24_ieee_rts.m"}, {"mp30", "case30.m"},
      {"mp39", "case39.m"},     {"ieee57", "case57.m"},
      {"ieee118", "case118.m"},
  };
  return aliases;
}

std::string Lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(ch));
  return s;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string Num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string Precise(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

struct Common {
  std::string case_name;
  std::string case_dir;
  std::string output;
  std::string format = "csv";
  double ac_tol = 1e-8;
  int ac_iter = 50;
  int segments = PwlCosine::kDefaultSegments;
  double feas_tol = 1e-7;

  ReportFormat report_format() const { return ParseReportFormat(format); }
  AcOptions ac() const {
    AcOptions o;
    o.tolerance = ac_tol;
    o.max_iterations = ac_iter;
    return o;
  }
  SolverOptions solver() const {
    SolverOptions o;
    o.feasibility_tol = feas_tol;
    return o;
  }
  std::string benchmark() const {
    return fs::path(case_name).stem().string();
  }
};

void AddCommon(CLI::App* sub, Common& c) {
  sub->add_option("--case", c.case_name,
                  "Case file, or ieee14/mp24/ieee30/mp30/mp39/ieee57/ieee118")
      ->required();
  sub->add_option("--case-dir", c.case_dir,
                  "Directory searched for short case names")
      ->capture_default_str();
  sub->add_option("-o,--output", c.output,
                  "Output file (default: standard output)");
  sub->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--ac-tol", c.ac_tol, "AC mismatch tolerance, p.u.")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--ac-max-iter", c.ac_iter, "Newton iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--segments", c.segments, "Cosine tangent count (cs)")
      ->check(CLI::Range(1, 10000))
      ->capture_default_str();
  sub->add_option("--feas-tol", c.feas_tol, "LP feasibility tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

PowerNetwork Load(const Common& c, std::ostream& err, std::string& path) {
  path = ResolveCasePath(c.case_name, c.case_dir);
  std::vector<std::string> warnings;
  PowerNetwork net;
  try {
    net = LoadCase(path, &warnings);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const NetworkError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
  return net;
}

void Header(std::ostream& err, const std::string& command, const Common& c,
            const std::string& path,
            const std::vector<std::pair<std::string, std::string>>& extra) {
  err << "# lpac " << LPAC_VERSION << "\n"
      << "# command: " << command << "\n"
      << "# case: " << path << "\n"
      << "# cs: " << c.segments << "\n"
      << "# ac_tolerance: " << Num(c.ac_tol) << "\n"
      << "# ac_max_iterations: " << c.ac_iter << "\n"
      << "# lp_feasibility_tolerance: " << Num(c.feas_tol) << "\n";
  for (const auto& [key, value] : extra) {
    err << "# " << key << ": " << value << "\n";
  }
}

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw UsageError("cannot write " + path);
}

struct ModelSpec {
  ModelKind kind = ModelKind::kCold;
  Variant variant;
};

ModelSpec ParseModel(const std::string& text) {
  const std::string t = Lower(text);
  ModelSpec m;
  if (t == "ldc") {
    m.kind = ModelKind::kLdc;
  } else if (t == "hot") {
    m.kind = ModelKind::kHot;
  } else if (t == "warm") {
    m.kind = ModelKind::kWarm;
  } else if (t == "cold") {
    m.kind = ModelKind::kCold;
  } else if (t == "cold-c") {
    m.variant = Variant::C();
  } else if (t == "cold-g") {
    m.variant = Variant::G();
  } else if (t == "cold-gc" || t == "cold-cg") {
    m.variant = Variant::GC();
  } else {
    throw UsageError("unknown model '" + text +
                     "' (ldc, hot, warm, cold, cold-c, cold-g, cold-gc)");
  }
  return m;
}

Variant ParseVariant(const std::string& text) {
  const std::string t = Lower(text);
  if (t == "none" || t.empty()) return {};
  if (t == "c") return Variant::C();
  if (t == "g") return Variant::G();
  if (t == "gc" || t == "cg") return Variant::GC();
  throw UsageError("unknown variant '" + text + "' (none, C, G, GC)");
}

// Hot and warm models take their voltages from the AC solution.
LpacModel BuildNamed(const PowerNetwork& net, const AcSolution* ac,
                     const ModelSpec& spec, ModelOptions options) {
  options.variant = spec.variant;
  switch (spec.kind) {
    case ModelKind::kLdc:
      return BuildLdc(net);
    case ModelKind::kHot:
      return BuildLpacHot(net, ac->vm, options);
    case ModelKind::kWarm:
      return BuildLpacWarm(net, ac->vm, options);
    case ModelKind::kCold:
      return BuildLpacCold(net, options);
  }
  throw UsageError("unknown model kind");
}

std::string BusTable(const PowerNetwork& net, const std::vector<double>& vm,
                     const std::vector<double>& va,
                     const std::vector<Complex>& injection,
                     ReportFormat format, Json meta) {
  const double base = net.base_mva();
  if (format == ReportFormat::kJson) {
    Json buses = Json::array();
    for (std::size_t i = 0; i < net.num_buses(); ++i) {
      buses.push_back({{"bus", net.buses()[i].id},
                       {"vm_pu", vm[i]},
                       {"va_rad", va[i]},
                       {"p_mw", injection[i].real() * base},
                       {"q_mvar", injection[i].imag() * base}});
    }
    meta["buses"] = std::move(buses);
    return meta.dump(2) + "\n";
  }
  std::string out = "bus,vm_pu,va_rad,p_mw,q_mvar\n";
  for (std::size_t i = 0; i < net.num_buses(); ++i) {
    out += std::to_string(net.buses()[i].id) + "," + Precise(vm[i]) + "," +
           Precise(va[i]) + "," + Precise(injection[i].real() * base) + "," +
           Precise(injection[i].imag() * base) + "\n";
  }
  return out;
}

// ---- subcommands ----------------------------------------------------------

int RunAcpf(const Common& c, bool q_limits, std::ostream& out,
            std::ostream& err) {
  std::string path;
  const PowerNetwork net = Load(c, err, path);
  Header(err, "acpf", c, path, {{"start", "flat"},
                                {"q_limits", q_limits ? "on" : "off"}});
  AcOptions o = c.ac();
  o.enforce_q_limits = q_limits;
  const AcSolution ac = SolveAc(net, o);
  err << "# converged: " << (ac.converged ? "yes" : "no") << " after "
      << ac.iterations << " iterations, residual " << Num(ac.max_residual)
      << "\n";
  if (!ac.converged) {
    err << "error: AC power flow did not converge: " << ac.diagnostic << "\n";
    return kExitFailed;
  }
  Emit(c.output,
       BusTable(net, ac.vm, ac.va, ac.injection, c.report_format(),
                {{"converged", true}, {"iterations", ac.iterations}}),
       out);
  return kExitOk;
}

struct LpacFlags {
  std::string kind = "cold";
  std::string variant = "none";
  std::string cold_voltage = "setpoint";
  std::optional<double> v_min, v_max;
  bool q_limits = false;
  std::optional<int> thermal;
};

void AddLpacFlags(CLI::App* sub, LpacFlags& f) {
  sub->add_option("--kind", f.kind, "ldc, hot, warm or cold")
      ->check(CLI::IsMember({"ldc", "hot", "warm", "cold"}, CLI::ignore_case))
      ->capture_default_str();
  sub->add_option("--variant", f.variant, "Cold-model ablation: none, C, G, GC")
      ->capture_default_str();
  sub->add_option("--cold-voltage", f.cold_voltage,
                  "Cold voltage estimate: setpoint or unit")
      ->check(CLI::IsMember({"setpoint", "unit"}))
      ->capture_default_str();
  sub->add_option("--vmin", f.v_min, "Voltage floor, p.u.");
  sub->add_option("--vmax", f.v_max, "Voltage ceiling, p.u.");
  sub->add_flag("--q-limits", f.q_limits, "Cap generator reactive output");
  sub->add_option("--thermal", f.thermal, "Thermal polygon sides (>= 4)");
}

LpacModel BuildFromFlags(const PowerNetwork& net, const Common& c,
                         const LpacFlags& f, const AcSolution* ac) {
  ModelSpec spec = ParseModel(f.kind);
  spec.variant = ParseVariant(f.variant);
  if (!spec.variant.none() && spec.kind != ModelKind::kCold) {
    throw UsageError("--variant applies to the cold model only");
  }
  ModelOptions mo;
  mo.cosine_segments = c.segments;
  mo.cold_voltage = f.cold_voltage == "unit" ? ColdVoltage::kUnit
                                             : ColdVoltage::kSetpoint;
  LpacModel m = BuildNamed(net, ac, spec, mo);
  ConstraintOptions co;
  co.v_min = f.v_min;
  co.v_max = f.v_max;
  co.generator_q_limits = f.q_limits;
  co.thermal_segments = f.thermal;
  try {
    AddConstraints(m, co);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return m;
}

bool NeedsAc(const std::string& kind) {
  const std::string k = Lower(kind);
  return k == "hot" || k == "warm";
}

int RunLpac(const Common& c, const LpacFlags& f, std::ostream& out,
            std::ostream& err) {
  std::string path;
  const PowerNetwork net = Load(c, err, path);
  Header(err, "lpac", c, path,
         {{"model", Lower(f.kind) + ParseVariant(f.variant).suffix()},
          {"cold_voltage", f.cold_voltage}});
  AcSolution ac;
  if (NeedsAc(f.kind)) {
    ac = SolveAc(net, c.ac());
    if (!ac.converged) {
      err << "error: hot/warm voltages need a converged AC solution: "
          << ac.diagnostic << "\n";
      return kExitFailed;
    }
  }
  const LpacModel m = BuildFromFlags(net, c, f, &ac);
  const LinearSolution s = SolveLinear(m, c.solver());
  if (!s.optimal()) {
    err << "error: " << s.diagnostic << "\n";
    return kExitFailed;
  }
  err << "# objective: " << Num(s.objective) << "\n";
  Emit(c.output,
       BusTable(net, s.vm, s.theta, s.injection, c.report_format(),
                {{"model", m.label()}, {"objective", s.objective}}),
       out);
  return kExitOk;
}

int RunCompare(const Common& c, const std::string& models,
               const std::string& flows, bool cumulative, std::ostream& out,
               std::ostream& err) {
  std::vector<ModelSpec> specs;
  for (const std::string& name : SplitList(models)) {
    specs.push_back(ParseModel(name));
  }
  if (specs.empty()) throw UsageError("--models is empty");
  FlowVectorMode mode = FlowVectorMode::kPairFrom;
  if (flows == "record") mode = FlowVectorMode::kRecordFrom;
  if (flows == "both") mode = FlowVectorMode::kBothDirections;
  std::string path;
  const PowerNetwork net = Load(c, err, path);
  Header(err, "compare", c, path,
         {{"models", models}, {"flow_vectors", flows},
          {"metric", cumulative ? "cumulative" : "accuracy"}});
  const AcSolution ac = SolveAc(net, c.ac());
  if (!ac.converged) {
    err << "error: AC reference did not converge: " << ac.diagnostic << "\n";
    Emit(c.output,
         cumulative ? WriteCumulative({}, c.report_format())
                    : WriteAccuracy({}, c.report_format()),
         out);
    return kExitFailed;
  }
  ModelOptions mo;
  mo.cosine_segments = c.segments;
  std::vector<AccuracyReport> reports;
  std::vector<CumulativeErrorReport> sums;
  int code = kExitOk;
  for (const ModelSpec& spec : specs) {
    const LpacModel m = BuildNamed(net, &ac, spec, mo);
    const LinearSolution s = SolveLinear(m, c.solver());
    if (!s.optimal()) {
      err << "error: " << m.label() << ": " << s.diagnostic << "\n";
      code = kExitFailed;
      continue;
    }
    if (cumulative) {
      CumulativeErrorReport r = CumulativeErrors(ac, s, net);
      r.benchmark = c.benchmark();
      r.model = m.label();
      sums.push_back(r);
    } else {
      AccuracyReport r = Compare(ac, s, net, mode);
      r.benchmark = c.benchmark();
      r.model = m.label();
      reports.push_back(r);
    }
  }
  Emit(c.output,
       cumulative ? WriteCumulative(sums, c.report_format())
                  : WriteAccuracy(reports, c.report_format()),
       out);
  return code;
}

struct RestoreFlags {
  std::string classes = "3..20";
  int samples = 100;
  std::uint64_t seed = 7;
  std::string variants = "ldc,lpac,lpac-r,lpac-r-v";
  unsigned threads = 0;
  double v_min = 0.9;
  double v_max = 1.1;
  double weight = 1e-3;
  int check_iterations = 10;
  bool cap_slack = false;
  std::string shed_output;
};

std::pair<int, int> ParseClasses(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("--classes expects K or A..B, got '" + text + "'");
  }
}

std::string ShedPath(const std::string& output, const std::string& explicit_path) {
  if (!explicit_path.empty() || output.empty()) return explicit_path;
  const fs::path p(output);
  return (p.parent_path() / (p.stem().string() + "_shed" + p.extension().string()))
      .string();
}

int RunRestore(const Common& c, const RestoreFlags& f, std::ostream& out,
               std::ostream& err) {
  const auto [first, last] = ParseClasses(f.classes);
  if (first < 0 || last < first) throw UsageError("bad --classes range");
  StudyOptions so;
  so.k_first = first;
  so.k_last = last;
  so.samples = f.samples;
  so.seed = f.seed;
  so.threads = f.threads;
  so.solver = c.solver();
  so.variants.clear();
  try {
    for (const std::string& v : SplitList(f.variants)) {
      so.variants.push_back(ParseRestorationVariant(v));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::string path;
  const PowerNetwork net = Load(c, err, path);
  if (static_cast<std::size_t>(last) >= net.num_lines()) {
    throw UsageError("--classes exceeds the number of lines");
  }
  Header(err, "restore", c, path,
         {{"seed", std::to_string(f.seed)},
          {"classes", f.classes},
          {"samples", std::to_string(f.samples)},
          {"variants", f.variants},
          {"v_bounds", Num(f.v_min) + "," + Num(f.v_max)},
          {"cos_weight", Num(f.weight)},
          {"ac_check_iterations", std::to_string(f.check_iterations)},
          {"slack_q_cap", f.cap_slack ? "on" : "off"}});
  // The study samples through RunStudy; per-instance settings are applied
  // by the hook below.
  so.configure = [&](RestorationInstance& inst) {
    inst.v_min = f.v_min;
    inst.v_max = f.v_max;
    inst.cos_weight = f.weight;
    inst.cosine_segments = c.segments;
    inst.ac_max_iterations = f.check_iterations;
    inst.ac_tolerance = c.ac_tol;
    inst.cap_slack_q = f.cap_slack;
  };
  const StudyTable table = RunStudy(net, so);
  const ReportFormat fmt = c.report_format();
  int failures = 0;
  for (const StudyCell& cell : table.cells) failures += cell.lp_failures;
  const std::string convergence = WriteConvergenceTable(table, fmt);
  const std::string shedding = WriteSheddingTable(table, fmt);
  if (c.output.empty()) {
    Emit("", convergence + "\n" + shedding, out);
  } else {
    Emit(c.output, convergence, out);
    Emit(ShedPath(c.output, f.shed_output), shedding, out);
  }
  if (failures > 0) {
    err << "error: " << failures << " restoration LPs were not solved\n";
    return kExitFailed;
  }
  return kExitOk;
}

struct CapFlags {
  bool make_c = false;
  double qc = 30.0;
  std::string v_mins = "0.885,0.935,0.96,0.975,0.9775,0.98,0.984";
  double v_max = 1.05;
  double time_limit = 600.0;
  bool timing = false;
};

int RunCapplace(const Common& c, const CapFlags& f, std::ostream& out,
                std::ostream& err) {
  std::vector<double> floors;
  for (const std::string& v : SplitList(f.v_mins)) {
    try {
      floors.push_back(std::stod(v));
    } catch (const std::exception&) {
      throw UsageError("--vmin expects numbers, got '" + v + "'");
    }
  }
  std::string path;
  PowerNetwork net = Load(c, err, path);
  if (f.make_c) net = MakeIeee57c(net);
  Header(err, "capplace", c, path,
         {{"make_c", f.make_c ? "on" : "off"},
          {"qc_mvar", Num(f.qc)},
          {"vmin", f.v_mins},
          {"vmax", Num(f.v_max)},
          {"time_limit_s", Num(f.time_limit)}});
  std::vector<CppSolution> rows;
  int code = kExitOk;
  for (double floor : floors) {
    CppInstance inst{net};
    inst.qc_max_mvar = f.qc;
    inst.v_min = floor;
    inst.v_max = f.v_max;
    inst.cosine_segments = c.segments;
    SolverOptions so = c.solver();
    so.time_limit_seconds = f.time_limit;
    CppSolution s;
    try {
      s = SolveCpp(inst, so);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (s.optimal()) {
      VerifyCpp(inst, s);
      if (!s.ac_converged) {
        err << "error: AC verification failed at v_min " << Num(floor) << ": "
            << s.ac_diagnostic << "\n";
        code = kExitFailed;
      }
    } else {
      err << "error: placement at v_min " << Num(floor) << ": "
          << ToString(s.status) << "\n";
      code = kExitFailed;
    }
    rows.push_back(s);
  }
  for (const CppSolution& s : rows) {
    err << "# v_min " << Num(s.v_min) << ": " << Num(s.seconds) << " s, "
        << s.nodes << " nodes\n";
  }
  Emit(c.output, WriteCapacitorTable(rows, c.report_format(), f.timing), out);
  return code;
}

int RunExport(const Common& c, const LpacFlags& f, const std::string& problem,
              const CapFlags& cap, std::ostream& out, std::ostream& err) {
  std::string path;
  PowerNetwork net = Load(c, err, path);
  Header(err, "export-lp", c, path, {{"problem", problem}});
  if (problem == "capplace") {
    if (cap.make_c) net = MakeIeee57c(net);
    const std::vector<std::string> floors = SplitList(cap.v_mins);
    CppInstance inst{net};
    inst.qc_max_mvar = cap.qc;
    inst.v_min = floors.empty() ? 0.9 : std::stod(floors.front());
    inst.v_max = cap.v_max;
    inst.cosine_segments = c.segments;
    Emit(c.output, ToLpFormat(BuildCpp(inst).model.lp), out);
    return kExitOk;
  }
  AcSolution ac;
  if (NeedsAc(f.kind)) {
    ac = SolveAc(net, c.ac());
    if (!ac.converged) {
      err << "error: AC solution needed for " << f.kind << " did not converge\n";
      return kExitFailed;
    }
  }
  Emit(c.output, ToLpFormat(BuildFromFlags(net, c, f, &ac).lp), out);
  return kExitOk;
}

}  // namespace

std::string DefaultCaseDir() {
  if (const char* env = std::getenv("LPAC_CASE_DIR"); env && *env) return env;
  return LPAC_DEFAULT_CASE_DIR;
}

std::string ResolveCasePath(const std::string& name,
                            const std::string& case_dir) {
  if (fs::exists(name)) return name;
  const fs::path dir = case_dir.empty() ? fs::path(DefaultCaseDir())
                                        : fs::path(case_dir);
  const auto it = Aliases().find(Lower(name));
  if (it != Aliases().end()) return (dir / it->second).string();
  fs::path p = dir / name;
  if (!p.has_extension()) p += ".m";
  return p.string();
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Linear AC power-flow models, studies and reports", "lpac"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LPAC_VERSION);

  Common common;
  common.case_dir = DefaultCaseDir();

  auto* acpf = app.add_subcommand("acpf", "Newton-Raphson AC power flow");
  AddCommon(acpf, common);
  bool q_limits = false;
  acpf->add_flag("--q-limits", q_limits,
                 "Switch PV buses to PQ at reactive limits");

  auto* lpac = app.add_subcommand("lpac", "Solve one linear model");
  AddCommon(lpac, common);
  LpacFlags lpac_flags;
  AddLpacFlags(lpac, lpac_flags);

  auto* compare = app.add_subcommand("compare",
                                     "Accuracy of linear models against AC");
  AddCommon(compare, common);
  std::string models = "ldc,cold,warm";
  std::string flows = "pair";
  bool cumulative = false;
  compare->add_option("--models", models,
                      "Comma list: ldc, hot, warm, cold, cold-c, cold-g, "
                      "cold-gc")
      ->capture_default_str();
  compare->add_option("--flows", flows,
                      "Flow vectors: pair (from side, parallel lines summed), "
                      "record or both")
      ->check(CLI::IsMember({"pair", "record", "both"}))
      ->capture_default_str();
  compare->add_flag("--cumulative", cumulative,
                    "Report cumulative voltage-drop and bus-power errors");

  auto* restore = app.add_subcommand("restore",
                                     "Load restoration over sampled N-k");
  AddCommon(restore, common);
  RestoreFlags rf;
  restore->add_option("--classes", rf.classes, "K or A..B")
      ->capture_default_str();
  restore->add_option("--samples", rf.samples, "Samples per class")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  restore->add_option("--seed", rf.seed)->capture_default_str();
  restore->add_option("--variants", rf.variants,
                      "Comma list: ldc, lpac, lpac-r, lpac-r-v")
      ->capture_default_str();
  restore->add_option("--threads", rf.threads, "0 uses all cores")
      ->capture_default_str();
  restore->add_option("--vmin", rf.v_min, "LPAC-R-V voltage floor")
      ->capture_default_str();
  restore->add_option("--vmax", rf.v_max, "LPAC-R-V voltage ceiling")
      ->capture_default_str();
  restore->add_option("--weight", rf.weight, "Cosine objective weight")
      ->capture_default_str();
  restore->add_option("--check-iter", rf.check_iterations,
                      "Newton iteration cap of the AC check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  restore->add_flag("--cap-slack-q", rf.cap_slack,
                    "Apply the LPAC-R reactive cap to the slack too");
  restore->add_option("--shed-output", rf.shed_output,
                      "Shedding table path (default: <output>_shed)");

  auto* capplace = app.add_subcommand("capplace", "Capacitor placement sweep");
  AddCommon(capplace, common);
  CapFlags cf;
  capplace->add_flag("--make-c", cf.make_c,
                     "Unit taps and no synchronous condensers");
  capplace->add_option("--qc", cf.qc, "Capacitor cap, MVar")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  capplace->add_option("--vmin", cf.v_mins, "Comma list of voltage floors")
      ->capture_default_str();
  capplace->add_option("--vmax", cf.v_max)->capture_default_str();
  capplace->add_option("--time-limit", cf.time_limit, "Seconds per MIP")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  capplace->add_flag("--timing", cf.timing,
                     "Add the solve-time column (varies between runs)");

  auto* export_lp = app.add_subcommand("export-lp",
                                       "Write a model in CPLEX LP format");
  AddCommon(export_lp, common);
  LpacFlags export_flags;
  AddLpacFlags(export_lp, export_flags);
  std::string problem = "lpac";
  CapFlags export_cap;
  export_lp->add_option("--problem", problem, "lpac or capplace")
      ->check(CLI::IsMember({"lpac", "capplace"}))
      ->capture_default_str();
  export_lp->add_flag("--make-c", export_cap.make_c);
  export_lp->add_option("--qc", export_cap.qc)->capture_default_str();
  export_lp->add_option("--cap-vmin", export_cap.v_mins,
                        "Voltage floor of the exported placement model");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << LPAC_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (acpf->parsed()) return RunAcpf(common, q_limits, out, err);
    if (lpac->parsed()) return RunLpac(common, lpac_flags, out, err);
    if (compare->parsed()) {
      return RunCompare(common, models, flows, cumulative, out, err);
    }
    if (restore->parsed()) return RunRestore(common, rf, out, err);
    if (capplace->parsed()) return RunCapplace(common, cf, out, err);
    if (export_lp->parsed()) {
      return RunExport(common, export_flags, problem, export_cap, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace lpac::cli
