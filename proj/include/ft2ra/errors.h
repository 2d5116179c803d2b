// Copyright 2026 The ft2ra Authors.
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

#ifndef FT2RA_ERRORS_H_
#define FT2RA_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ft2ra {

// Raised when a caller violates a documented precondition (bad dimensions,
// out-of-range ids, non-finite values, empty test sets).
class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Raised when a model, datastore or vocab file cannot be decoded. `offset` is
// the byte position at which decoding failed.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::uint64_t offset);

  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace ft2ra

#endif  // FT2RA_ERRORS_H_
