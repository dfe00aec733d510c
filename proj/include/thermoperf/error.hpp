// Copyright 2026 The thermoperf Authors
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

#ifndef THERMOPERF_ERROR_HPP_
#define THERMOPERF_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace thermoperf {

enum class ErrorKind {
  kInvalidInput,
  kDomain,
  kSingularity,
  kDegenerate,
  kPairing,
  kFormat,
  kRange,
  kSession,
  kParameter,
  kEmptyRoi,
  kUndefinedPercentage,
  kSegmentation,
  kSpec,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can tell a degenerate histogram from a malformed file.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace thermoperf

#endif  // THERMOPERF_ERROR_HPP_
