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

#ifndef RAZOR_ERROR_H_
#define RAZOR_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace razor {

// Fine-grained failure codes. Each maps onto one of the CLI exit classes
// (usage, data, backend) via ExitClassOf().
enum class ErrorCode {
  kInvalidConfig,
  kMalformedInput,
  kMissingField,
  kUnknownLabel,
  kDuplicateId,
  kEmptyText,
  kInvalidDataset,
  kIo,
  kStaleStats,
  kDegenerateDocument,
  kZeroEmbedding,
  kNoContrast,
  kObjectiveUndefined,
  kOutOfRange,
  kEmptyComplement,
  kMissingPrediction,
  kDimensionMismatch,
  kUnboundPlaceholder,
  kMissingLabelName,
  kEmptyCorpus,
  kSchemaMismatch,
  kBackendTransport,
  kCheckpointMismatch,
};

enum class ExitClass { kUsage = 1, kData = 2, kBackend = 3 };

std::string_view ErrorCodeName(ErrorCode code);
ExitClass ExitClassOf(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace razor

#endif  // RAZOR_ERROR_H_
