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

#include "razor/error.h"

namespace razor {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kMalformedInput: return "malformed-input";
    case ErrorCode::kMissingField: return "missing-field";
    case ErrorCode::kUnknownLabel: return "unknown-label";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kEmptyText: return "empty-text";
    case ErrorCode::kInvalidDataset: return "invalid-dataset";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kStaleStats: return "stale-stats";
    case ErrorCode::kDegenerateDocument: return "degenerate-document";
    case ErrorCode::kZeroEmbedding: return "zero-embedding";
    case ErrorCode::kNoContrast: return "no-contrast";
    case ErrorCode::kObjectiveUndefined: return "objective-undefined";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kEmptyComplement: return "empty-complement";
    case ErrorCode::kMissingPrediction: return "missing-prediction";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kUnboundPlaceholder: return "unbound-placeholder";
    case ErrorCode::kMissingLabelName: return "missing-label-name";
    case ErrorCode::kEmptyCorpus: return "empty-corpus";
    case ErrorCode::kSchemaMismatch: return "schema-mismatch";
    case ErrorCode::kBackendTransport: return "backend-transport";
    case ErrorCode::kCheckpointMismatch: return "checkpoint-mismatch";
  }
  return "unknown";
}

ExitClass ExitClassOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kUnboundPlaceholder:
    case ErrorCode::kMissingLabelName:
    case ErrorCode::kCheckpointMismatch:
      return ExitClass::kUsage;
    case ErrorCode::kBackendTransport:
      return ExitClass::kBackend;
    default:
      return ExitClass::kData;
  }
}

}  // namespace razor
