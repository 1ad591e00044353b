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

#include "lpac/ac_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace lpac {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

enum class Role { kSlack, kPv, kPq };

struct Newton {
  const PowerNetwork& net;
  MatrixXcd y;
  std::vector<Role> role;
  std::vector<Complex> spec;  // scheduled injections (PQ q may be pinned)

  explicit Newton(const PowerNetwork& network) : net(network) {
    const YBus yb = BuildYBus(net);
    const std::size_t n = yb.n;
    y.resize(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) y(r, c) = yb(r, c);
    }
    role.resize(n);
    spec.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      role[i] = net.is_slack(i)       ? Role::kSlack
                : net.is_generator(i) ? Role::kPv
                                      : Role::kPq;
      spec[i] = net.scheduled_injection(i);
    }
  }

  void Indices(std::vector<std::size_t>& pvpq, std::vector<std::size_t>& pq) {
    pvpq.clear();
    pq.clear();
    for (std::size_t i = 0; i < role.size(); ++i) {
      if (role[i] != Role::kSlack) pvpq.push_back(i);
      if (role[i] == Role::kPq) pq.push_back(i);
    }
  }

  int Run(std::vector<double>& vm, std::vector<double>& va, double tol,
          int max_iter, double& residual, std::string& diagnostic) {
    const std::size_t n = role.size();
    std::vector<std::size_t> pvpq, pq;
    Indices(pvpq, pq);
    const std::size_t np = pvpq.size();
    const std::size_t nq = pq.size();
    VectorXcd v(n);
    auto mismatch = [&](VectorXd& f) {
      for (std::size_t i = 0; i < n; ++i) v(i) = std::polar(vm[i], va[i]);
      const VectorXcd current = y * v;
      f.resize(np + nq);
      for (std::size_t k = 0; k < np; ++k) {
        const std::size_t i = pvpq[k];
        f(k) = (v(i) * std::conj(current(i)) - spec[i]).real();
      }
      for (std::size_t k = 0; k < nq; ++k) {
        const std::size_t i = pq[k];
        f(np + k) = (v(i) * std::conj(current(i)) - spec[i]).imag();
      }
      return current;
    };
    VectorXd f;
    VectorXcd current = mismatch(f);
    residual = f.size() ? f.lpNorm<Eigen::Infinity>() : 0.0;
    int it = 0;
    while (!(residual <= tol)) {
      if (it >= max_iter) {
        diagnostic = "iteration limit reached";
        return it;
      }
      if (!std::isfinite(residual) || residual > 1e10) {
        diagnostic = "diverged";
        return it;
      }
      ++it;
      // dS/dVa = j diag(V) conj(diag(I) - Y diag(V))
      // dS/dVm = diag(V) conj(Y diag(V/|V|)) + conj(diag(I)) diag(V/|V|)
      VectorXcd vnorm(n);
      for (std::size_t i = 0; i < n; ++i) vnorm(i) = v(i) / std::abs(v(i));
      MatrixXd jac(np + nq, np + nq);
      auto dva = [&](std::size_t r, std::size_t c) {
        Complex t = -y(r, c) * v(c);
        if (r == c) t += current(r);
        return Complex(0.0, 1.0) * v(r) * std::conj(t);
      };
      auto dvm = [&](std::size_t r, std::size_t c) {
        Complex t = v(r) * std::conj(y(r, c) * vnorm(c));
        if (r == c) t += std::conj(current(r)) * vnorm(r);
        return t;
      };
      for (std::size_t a = 0; a < np; ++a) {
        const std::size_t r = pvpq[a];
        for (std::size_t b = 0; b < np; ++b) {
          jac(a, b) = dva(r, pvpq[b]).real();
        }
        for (std::size_t b = 0; b < nq; ++b) {
          jac(a, np + b) = dvm(r, pq[b]).real();
        }
      }
      for (std::size_t a = 0; a < nq; ++a) {
        const std::size_t r = pq[a];
        for (std::size_t b = 0; b < np; ++b) {
          jac(np + a, b) = dva(r, pvpq[b]).imag();
        }
        for (std::size_t b = 0; b < nq; ++b) {
          jac(np + a, np + b) = dvm(r, pq[b]).imag();
        }
      }
      Eigen::PartialPivLU<MatrixXd> lu(jac);
      if (!(lu.rcond() > 1e-14)) {
        diagnostic = "singular Jacobian";
        return it;
      }
      const VectorXd dx = lu.solve(-f);
      if (!dx.allFinite()) {
        diagnostic = "singular Jacobian";
        return it;
      }
      for (std::size_t k = 0; k < np; ++k) va[pvpq[k]] += dx(k);
      for (std::size_t k = 0; k < nq; ++k) vm[pq[k]] += dx(np + k);
      current = mismatch(f);
      residual = f.size() ? f.lpNorm<Eigen::Infinity>() : 0.0;
    }
    diagnostic.clear();
    return it;
  }
};

}  // namespace

std::vector<Complex> LineFlows(const PowerNetwork& net,
                               const std::vector<double>& vm,
                               const std::vector<double>& va) {
  const auto lines = LineCoefficients(net);
  std::vector<Complex> out;
  out.reserve(lines.size());
  for (const DirectedLine& d : lines) out.push_back(DirectedFlow(d, vm, va));
  return out;
}

AcSolution SolveAc(const PowerNetwork& net, const AcOptions& options) {
  const std::size_t n = net.num_buses();
  AcSolution sol;
  sol.vm.assign(n, 1.0);
  sol.va.assign(n, 0.0);
  if (options.start == AcStart::kGiven) {
    if (options.vm_start.size() != n || options.va_start.size() != n) {
      sol.diagnostic = "start vector has the wrong size";
      return sol;
    }
    sol.vm = options.vm_start;
    sol.va = options.va_start;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (net.is_voltage_controlled(i)) {
      sol.vm[i] = net.buses()[i].voltage_setpoint;
    }
  }
  sol.va[net.slack_index()] = 0.0;

  Newton newton(net);
  int total = 0;
  bool ok = false;
  for (int outer = 0; outer < 1 + static_cast<int>(n); ++outer) {
    double residual = 0.0;
    total += newton.Run(sol.vm, sol.va, options.tolerance,
                        options.max_iterations - total, residual,
                        sol.diagnostic);
    sol.max_residual = residual;
    ok = residual <= options.tolerance;
    if (!ok || !options.enforce_q_limits) break;
    // Pin the worst reactive-limit violator at its limit and re-solve.
    const auto s = LineInjections(net, LineCoefficients(net), sol.vm, sol.va);
    std::size_t worst = n;
    double worst_excess = 1e-9;
    double pinned = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (newton.role[i] != Role::kPv) continue;
      const double qg = s[i].imag() + net.buses()[i].load.imag();
      const double hi = qg - net.generation_q_max(i);
      const double lo = net.generation_q_min(i) - qg;
      if (hi > worst_excess) {
        worst = i, worst_excess = hi, pinned = net.generation_q_max(i);
      }
      if (lo > worst_excess) {
        worst = i, worst_excess = lo, pinned = net.generation_q_min(i);
      }
    }
    if (worst == n) break;
    newton.role[worst] = Role::kPq;
    newton.spec[worst].imag(pinned - net.buses()[worst].load.imag());
  }
  sol.iterations = total;
  sol.converged = ok;
  if (!ok && sol.diagnostic.empty()) sol.diagnostic = "not converged";
  const auto lines = LineCoefficients(net);
  sol.flows.clear();
  for (const DirectedLine& d : lines) {
    sol.flows.push_back(DirectedFlow(d, sol.vm, sol.va));
  }
  sol.injection = LineInjections(net, lines, sol.vm, sol.va);
  return sol;
}

KclResidual ComputeKclResidual(const PowerNetwork& net,
                               const std::vector<double>& vm,
                               const std::vector<double>& va) {
  const std::size_t n = net.num_buses();
  const auto s = LineInjections(net, LineCoefficients(net), vm, va);
  KclResidual r;
  r.mismatch.resize(n);
  r.p_enforced.resize(n);
  r.q_enforced.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.mismatch[i] = net.scheduled_injection(i) - s[i];
    r.p_enforced[i] = !net.is_slack(i);
    r.q_enforced[i] = !net.is_voltage_controlled(i);
    if (r.p_enforced[i]) {
      r.max_enforced = std::max(r.max_enforced, std::abs(r.mismatch[i].real()));
    }
    if (r.q_enforced[i]) {
      r.max_enforced = std::max(r.max_enforced, std::abs(r.mismatch[i].imag()));
    }
  }
  return r;
}

}  // namespace lpac
