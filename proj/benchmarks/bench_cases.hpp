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


#ifndef LPAC_BENCH_CASES_HPP_
#define LPAC_BENCH_CASES_HPP_

#include <cstdlib>
#include <filesystem>
#include <string>

#include "lpac/case_io.hpp"

namespace lpac::bench {

// Case files live in LPAC_CASE_DIR (environment) or the configured default.
inline std::string CasePath(const std::string& file) {
  const char* env = std::getenv("LPAC_CASE_DIR");
  return std::string(env && *env ? env : LPAC_BENCH_CASE_DIR) + "/" + file;
}

inline bool HaveCase(const std::string& file) {
  return std::filesystem::exists(CasePath(file));
}

}  // namespace lpac::bench

#endif  // LPAC_BENCH_CASES_HPP_
