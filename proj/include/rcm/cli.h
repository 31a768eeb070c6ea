// Copyright 2026 The Authors.
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

//
// Command-line front end. Subcommands: generate, solve, attack, evaluate,
// export-ilp, bruteforce, bench, rpm. Run with --help for the flags.
//

#ifndef RCM_CLI_H_
#define RCM_CLI_H_

#include <ostream>

namespace rcm {

// Returns 0 on success, 1 when a stage fails (the diagnostic names the
// stage), and CLI11's code for usage errors.
int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace rcm

#endif  // RCM_CLI_H_
