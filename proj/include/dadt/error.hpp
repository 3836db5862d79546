/*
 * Copyright 2026 The DADT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DADT_ERROR_HPP_
#define DADT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dadt {

enum class ErrorCode {
  kSchemaMismatch,
  kValueOutOfDomain,
  kParseError,
  kMissingValue,
  kEmptyDataset,
  kUnknownAttribute,
  kUnlabeledData,
  kFormatError,
  kNormalizationError,
  kArityOverflow,
  kDomainError,
  kSubsetViolation,
  kEmptyContext,
  kIncomparableSupports,
  kInsufficientKnowledge,
  kGroupMissing,
  kNoPositives,
  kConfigError,
  kIoError,
  kInternalError,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kValueOutOfDomain: return "ValueOutOfDomain";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingValue: return "MissingValue";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kUnlabeledData: return "UnlabeledData";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kNormalizationError: return "NormalizationError";
    case ErrorCode::kArityOverflow: return "ArityOverflow";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kSubsetViolation: return "SubsetViolation";
    case ErrorCode::kEmptyContext: return "EmptyContext";
    case ErrorCode::kIncomparableSupports: return "IncomparableSupports";
    case ErrorCode::kInsufficientKnowledge: return "InsufficientKnowledge";
    case ErrorCode::kGroupMissing: return "GroupMissing";
    case ErrorCode::kNoPositives: return "NoPositives";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternalError: return "InternalError";
  }
  return "Unknown";
}

// All library failures are reported through this exception. The code is
// the machine-readable part; the message carries row/column context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace dadt

#endif  // DADT_ERROR_HPP_
