// Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cf {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDomain,
  kDegenerateLambda,
  kPeelingFailed,
  kDuplicateKey,
  kTableFull,
  kNotFound,
  kConflictingLabel,
  kInsufficientSurvivors,
  kNonConvergence,
  kCapacityExceeded,
  kCodeTooDeep,
  kEmptyAlphabet,
  kRebuildLoop,
  kFormat,
  kIo,
  kVerificationFailed,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures surface as cf::Error; the C API maps code() onto
// cf_status values one-to-one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cf
