/* Copyright 2026 The fgovd Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef FGOVD_ERRORS_H_
#define FGOVD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fgovd {

// Malformed input document. `where` carries line/field context when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what),
        where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input record that references something the benchmark does not know
// about, or that has the wrong shape (e.g. score vector length).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Object left with no attributes after simplification.
class DegenerateObjectError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Object has fewer locatable attribute slots than a strategy needs.
class InsufficientAttributesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Object has no slot of the attribute type a strategy substitutes.
class NotApplicableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Transport failure talking to a completion backend. Retryable; distinct
// from a caption being rejected by the checks.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fgovd

#endif  // FGOVD_ERRORS_H_
