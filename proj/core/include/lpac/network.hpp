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

#ifndef LPAC_NETWORK_HPP_
#define LPAC_NETWORK_HPP_

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace lpac {

using Complex = std::complex<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Raised for structurally invalid networks (bad references, zero impedance,
// slack problems). The message names the offending element.
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BusKind { kSlack, kGenerator, kLoad };

struct Bus {
  int id = 0;
  BusKind kind = BusKind::kLoad;
  double voltage_setpoint = 1.0;  // meaningful for slack and PV buses
  Complex shunt{0.0, 0.0};        // g^s + i b^s, p.u. at 1.0 V
  Complex load{0.0, 0.0};         // p + i q, p.u.
  double base_kv = 0.0;
  // Voltage stored in the case file; kept for round trips and warm starts.
  double vm_case = 1.0;
  double va_case = 0.0;  // radians
  double v_min = 0.0;
  double v_max = kInfinity;
  int area = 1;
  int zone = 1;
  bool isolated = false;  // case-file type 4
};

struct Transformer {
  double tap = 1.0;    // |T|, applied on the from side
  double shift = 0.0;  // radians
};

struct LineRecord {
  int from = 0;
  int to = 0;
  Complex series_impedance{0.0, 0.0};  // r + i x
  Complex charge{0.0, 0.0};            // total g^c + i b^c, split in halves
  std::optional<Transformer> transformer;
  std::optional<double> thermal_limit;  // MVA

  Complex SeriesAdmittance() const { return 1.0 / series_impedance; }
  double Tap() const { return transformer ? transformer->tap : 1.0; }
  double Shift() const { return transformer ? transformer->shift : 0.0; }
};

struct Generator {
  int bus = 0;
  double p_output = 0.0;
  double p_max = kInfinity;
  double p_min = 0.0;
  double q_output = 0.0;
  double q_min = -kInfinity;  // infinite limits mean unbounded
  double q_max = kInfinity;
  double voltage_setpoint = 1.0;
};

// <N, L, G, s>. Immutable after construction; indices used throughout the
// library are positions in buses() (bus "index"), not case-file ids.
class PowerNetwork {
 public:
  PowerNetwork() = default;
  PowerNetwork(double base_mva, std::vector<Bus> buses,
               std::vector<LineRecord> lines,
               std::vector<Generator> generators);

  double base_mva() const { return base_mva_; }
  const std::vector<Bus>& buses() const { return buses_; }
  const std::vector<LineRecord>& lines() const { return lines_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t num_buses() const { return buses_.size(); }
  std::size_t num_lines() const { return lines_.size(); }

  int slack_id() const { return buses_[slack_].id; }
  std::size_t slack_index() const { return slack_; }
  std::size_t index_of(int bus_id) const;
  bool has_bus(int bus_id) const { return index_.count(bus_id) != 0; }

  std::size_t from_index(std::size_t line) const { return line_from_[line]; }
  std::size_t to_index(std::size_t line) const { return line_to_[line]; }

  // Bus classification by index.
  bool is_slack(std::size_t i) const { return i == slack_; }
  bool is_generator(std::size_t i) const {
    return buses_[i].kind == BusKind::kGenerator;
  }
  // Buses whose voltage magnitude is held: PV buses and the slack.
  bool is_voltage_controlled(std::size_t i) const {
    return buses_[i].kind != BusKind::kLoad;
  }
  std::size_t num_generator_buses() const;  // |G|, slack included

  // Scheduled net injection (generation minus load), p.u., shunt excluded.
  Complex scheduled_injection(std::size_t i) const;
  // Aggregates over the in-service generators attached to bus index i.
  double generation_p(std::size_t i) const { return gen_p_[i]; }
  double generation_q(std::size_t i) const { return gen_q_[i]; }
  double generation_p_max(std::size_t i) const { return gen_pmax_[i]; }
  double generation_q_max(std::size_t i) const { return gen_qmax_[i]; }
  double generation_q_min(std::size_t i) const { return gen_qmin_[i]; }
  const std::vector<std::size_t>& generators_at(std::size_t i) const {
    return gens_at_[i];
  }

  double total_load_p() const;

 private:
  void Index();

  double base_mva_ = 100.0;
  std::vector<Bus> buses_;
  std::vector<LineRecord> lines_;
  std::vector<Generator> generators_;
  std::size_t slack_ = 0;
  std::unordered_map<int, std::size_t> index_;
  std::vector<std::size_t> line_from_, line_to_;
  std::vector<double> gen_p_, gen_q_, gen_pmax_, gen_qmax_, gen_qmin_;
  std::vector<std::vector<std::size_t>> gens_at_;
};

// Dense nodal admittance matrix, row-major, indexed by bus index.
struct YBus {
  std::size_t n = 0;
  std::vector<Complex> entries;

  Complex operator()(std::size_t r, std::size_t c) const {
    return entries[r * n + c];
  }
  Complex& operator()(std::size_t r, std::size_t c) {
    return entries[r * n + c];
  }
};

YBus BuildYBus(const PowerNetwork& net);

// One direction of a line record. With voltages V_n, V_m and
// delta = theta_n - theta_m - angle_offset the flows are
//   p = V_n^2 (g + self.real) - V_n V_m (g cos delta + b sin delta)
//   q = -V_n^2 (b + self.imag) - V_n V_m (g sin delta - b cos delta)
// where (g, b) is the series admittance divided by the tap magnitude and
// `self` holds the constant shunt-side admittance seen at n.
struct DirectedLine {
  std::size_t line = 0;  // record index
  std::size_t n = 0;     // sending bus index
  std::size_t m = 0;     // receiving bus index
  bool forward = true;   // n is the record's from bus
  double g = 0.0;
  double b = 0.0;
  Complex self{0.0, 0.0};
  double angle_offset = 0.0;  // +shift forward, -shift reverse
};

// Two entries per record: 2k is the forward direction, 2k+1 the reverse.
std::vector<DirectedLine> LineCoefficients(const PowerNetwork& net);

// Active/reactive flow on one directed line for a voltage assignment.
Complex DirectedFlow(const DirectedLine& d, const std::vector<double>& vm,
                     const std::vector<double>& va);

// Bus injections S_n = V_n (Y V)_n^* computed directly from the Y-bus.
std::vector<Complex> YBusInjections(const YBus& y,
                                    const std::vector<double>& vm,
                                    const std::vector<double>& va);

// Same injections as the sum of directed line flows plus bus-shunt terms.
std::vector<Complex> LineInjections(const PowerNetwork& net,
                                    const std::vector<DirectedLine>& lines,
                                    const std::vector<double>& vm,
                                    const std::vector<double>& va);

// Connected components by bus index (lines of any kind connect).
std::vector<int> ConnectedComponents(const PowerNetwork& net);

}  // namespace lpac

#endif  // LPAC_NETWORK_HPP_
