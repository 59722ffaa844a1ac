// Copyright The skewsep Authors
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
#include <ostream>
#include <string>
#include <vector>

namespace skewsep {

struct SuiteResult {
  std::string name;
  std::string property;
  std::size_t instances = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SelftestOptions {
  std::uint64_t seed = 20240611;
  std::size_t instances = 500;
  // Test hook: scale one canonical LOO element by sqrt(2) before checking.
  bool corrupt_loo = false;
};

struct SelftestReport {
  std::vector<SuiteResult> suites;
  bool pass() const;
};

SelftestReport run_selftest(const SelftestOptions& opts = {});
void print_report(const SelftestReport& report, std::ostream& os);

}  // namespace skewsep
