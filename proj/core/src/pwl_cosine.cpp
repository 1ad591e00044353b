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

#include "lpac/pwl_cosine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lpac {

PwlCosine::PwlCosine(double lower, double upper, int segments)
    : lower_(lower), upper_(upper) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (!(lower > -kHalfPi && upper < kHalfPi && lower < upper)) {
    throw std::invalid_argument(
        "cosine domain must satisfy -pi/2 < lower < upper < pi/2");
  }
  if (segments < 1) {
    throw std::invalid_argument("segment count must be at least 1, got " +
                                std::to_string(segments));
  }
  const double cl = std::cos(lower);
  const double slope = (std::cos(upper) - cl) / (upper - lower);
  chord_ = {slope, cl - slope * lower};
  const double inc = (upper - lower) / (segments + 1);
  for (int i = 1; i <= segments; ++i) {
    const double a = lower + i * inc;
    points_.push_back(a);
    tangents_.push_back({-std::sin(a), std::sin(a) * a + std::cos(a)});
  }
}

void PwlCosine::CheckDomain(double x) const {
  if (!(x >= lower_ && x <= upper_)) {
    throw std::out_of_range("angle " + std::to_string(x) +
                            " outside the cosine approximation domain");
  }
}

double PwlCosine::Envelope(double x) const {
  CheckDomain(x);
  double best = tangents_.front().at(x);
  for (const LinearPiece& t : tangents_) best = std::min(best, t.at(x));
  return best;
}

double PwlCosine::Chord(double x) const {
  CheckDomain(x);
  return chord_.at(x);
}

}  // namespace lpac
