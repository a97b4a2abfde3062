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

#ifndef RAZOR_LOGGING_H_
#define RAZOR_LOGGING_H_

#include <functional>
#include <string>

namespace razor {

enum class LogLevel { kDebug, kInfo, kWarning, kError };

// Diagnostics go to stderr unless a sink is installed. Thread-safe.
void Log(LogLevel level, const std::string& message);
inline void LogInfo(const std::string& m) { Log(LogLevel::kInfo, m); }
inline void LogWarning(const std::string& m) { Log(LogLevel::kWarning, m); }

void SetMinLogLevel(LogLevel level);

using LogSink = std::function<void(LogLevel, const std::string&)>;
// Returns the previous sink. Passing nullptr restores stderr output.
LogSink SetLogSink(LogSink sink);

}  // namespace razor

#endif  // RAZOR_LOGGING_H_
