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

// MATPOWER case text ingestion and serialization.

#ifndef LPAC_CASE_IO_HPP_
#define LPAC_CASE_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lpac/network.hpp"

namespace lpac {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Raw matrices as they appear in the file (MATPOWER units).
struct CaseDocument {
  std::string name;
  double base_mva = 100.0;
  std::vector<std::vector<double>> bus;
  std::vector<std::vector<double>> gen;
  std::vector<std::vector<double>> branch;
};

CaseDocument ParseCaseDocument(std::string_view text);

// Converts a document to a network: per-unit scaling, degrees to radians,
// tap 0 read as 1, out-of-service rows dropped, PV buses without an online
// generator demoted to PQ. Non-fatal findings are appended to `warnings`.
PowerNetwork ToNetwork(const CaseDocument& doc,
                       std::vector<std::string>* warnings = nullptr);

PowerNetwork ParseCase(std::string_view text,
                       std::vector<std::string>* warnings = nullptr);
PowerNetwork LoadCase(const std::filesystem::path& path,
                      std::vector<std::string>* warnings = nullptr);

// Serializes to MATPOWER text that parses back to an identical network.
std::string WriteCase(const PowerNetwork& net,
                      std::string_view name = "lpac_case");

}  // namespace lpac

#endif  // LPAC_CASE_IO_HPP_
