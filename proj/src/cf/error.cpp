// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cf/error.hpp"

namespace cf {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kDegenerateLambda: return "DegenerateLambda";
    case ErrorCode::kPeelingFailed: return "PeelingFailed";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kTableFull: return "TableFull";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kConflictingLabel: return "ConflictingLabel";
    case ErrorCode::kInsufficientSurvivors: return "InsufficientSurvivors";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kCodeTooDeep: return "CodeTooDeep";
    case ErrorCode::kEmptyAlphabet: return "EmptyAlphabet";
    case ErrorCode::kRebuildLoop: return "RebuildLoop";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace cf
