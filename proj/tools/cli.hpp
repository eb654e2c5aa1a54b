// Copyright 2026 The chsh-stochastic Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chsh::cli {

enum ExitCode : int {
    kOk = 0,
    kParseError = 2,
    kInvariantError = 3,
    kIoError = 4,
};

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out` as key=value lines; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest "%.17g" rendering; parses back to the same double.
std::string format_number(double v);

}  // namespace chsh::cli
