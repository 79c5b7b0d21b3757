// Copyright 2026 The ncsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NCSIM_TOOLS_CLI_H
#define NCSIM_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace ncsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs the ncsim command line with argv[0] as the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// RFC-4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(const std::string &value);

}  // namespace ncsim

#endif
