// Copyright 2026 The HaloGraph Authors.
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

#include <iosfwd>
#include <string>
#include <vector>

namespace halograph::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,            // bad flags, unreadable files, other failures
  kInvalidInput = 2,     // parse, integrity or validation failure
  kMissingNli = 3,       // an NLI ordered pair required for scoring is absent
  kUnlabeled = 4,        // evaluation input has no labels
  kUndefinedMetric = 5,  // evaluation finished but some metric is undefined
};

// Runs one command line (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halograph::cli
