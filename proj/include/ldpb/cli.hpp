// Copyright 2026 The ldpboost Authors
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

#ifndef LDPB_CLI_HPP_
#define LDPB_CLI_HPP_

#include <string>
#include <vector>

namespace ldpb {

// Runs the command-line tool on natural-order arguments (program name
// excluded) and returns the process exit code. All output tables embed the
// effective configuration and are byte-identical across reruns of the same
// command.
int run_cli(std::vector<std::string> args);

}  // namespace ldpb

#endif  // LDPB_CLI_HPP_
