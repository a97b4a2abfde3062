// Copyright 2026 The RAZOR Authors.
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

#ifndef RAZOR_TOOLS_CLI_H_
#define RAZOR_TOOLS_CLI_H_

#include <ostream>

namespace razor::cli {

// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 backend error.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace razor::cli

#endif  // RAZOR_TOOLS_CLI_H_
