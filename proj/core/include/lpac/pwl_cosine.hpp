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

// Convex polyhedral envelope of cos(x) on a sub-interval of (-pi/2, pi/2):
// one chord from below and s evenly spaced interior tangents from above.

#ifndef LPAC_PWL_COSINE_HPP_
#define LPAC_PWL_COSINE_HPP_

#include <numbers>
#include <vector>

namespace lpac {

// y = slope * x + intercept
struct LinearPiece {
  double slope = 0.0;
  double intercept = 0.0;
  double at(double x) const { return slope * x + intercept; }
};

class PwlCosine {
 public:
  static constexpr double kDefaultBound = std::numbers::pi / 3.0;
  static constexpr int kDefaultSegments = 20;

  // Throws std::invalid_argument unless -pi/2 < lower < upper < pi/2 and
  // segments >= 1.
  PwlCosine(double lower = -kDefaultBound, double upper = kDefaultBound,
            int segments = kDefaultSegments);

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  int segments() const { return static_cast<int>(tangents_.size()); }

  const LinearPiece& chord() const { return chord_; }
  const std::vector<LinearPiece>& tangents() const { return tangents_; }
  const std::vector<double>& tangent_points() const { return points_; }

  // Minimum over the tangents; x must lie in [lower, upper].
  double Envelope(double x) const;
  double Chord(double x) const;

 private:
  void CheckDomain(double x) const;

  double lower_;
  double upper_;
  LinearPiece chord_;
  std::vector<LinearPiece> tangents_;
  std::vector<double> points_;
};

}  // namespace lpac

#endif  // LPAC_PWL_COSINE_HPP_
