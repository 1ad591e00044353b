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

#ifndef LPAC_TOOLS_CLI_HPP_
#define LPAC_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace lpac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // infeasible or not converged
inline constexpr int kExitUsage = 2;   // bad arguments or IO

// args excludes the program name. Reports go to `out` unless --output is
// given; the reproducibility header and diagnostics go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Maps short names (ieee14, mp24, ...) to case files under case_dir. An
// existing path is returned unchanged.
std::string ResolveCasePath(const std::string& name,
                            const std::string& case_dir);

// LPAC_CASE_DIR from the environment, else the build-time default.
std::string DefaultCaseDir();

}  // namespace lpac::cli

#endif  // LPAC_TOOLS_CLI_HPP_
