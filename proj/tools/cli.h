// Copyright 2026 The affstab Authors
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

#include <ostream>
#include <string>
#include <vector>

namespace affstab::cli {

enum ExitCode : int {
    kOk = 0,
    kBadInput = 1,
    kCapacity = 2,
    kMismatch = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`; the return value is the process exit status.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace affstab::cli
