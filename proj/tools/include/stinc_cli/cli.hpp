// Copyright 2026 The stinc Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace stinc::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitDiagnostic = 2;

enum class OutputFormat { kJson, kCsv, kBoth };

// Malformed configuration; `path` names the offending field.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::filesystem::path base_dir;  // relative paths in the config resolve here
};

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::map<std::string, std::string> csv;  // file name -> contents
  std::string summary;
};

// Fills defaults and validates; the result is what reports echo.
nlohmann::json normalize_config(const nlohmann::json& config, const RunOptions& opt = {});

// Runs a parsed configuration in-process without touching the filesystem
// except for tabulated density inputs.
RunResult run_config(const nlohmann::json& config, const RunOptions& opt = {});

// Writes report.json and/or the CSV tables into `out_dir`.
void write_outputs(const RunResult& result, const std::filesystem::path& out_dir, OutputFormat format);

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace stinc::cli
