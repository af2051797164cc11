/*
 * Copyright 2026 The hetgen Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace hetgen {

/// Coarse error categories. The C API maps each one onto a stable status code.
enum class ErrorKind {
  kParse,
  kIntegrity,
  kParameter,
  kSampling,
  kShape,
  kContract,
  kTraining,
  kIo,
  kLookup,
  kGeneration,
  kPartialGraph,
  kUsage,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error parse_error(const std::string& what) { return {ErrorKind::kParse, what}; }
inline Error integrity_error(const std::string& what) { return {ErrorKind::kIntegrity, what}; }
inline Error parameter_error(const std::string& what) { return {ErrorKind::kParameter, what}; }
inline Error sampling_error(const std::string& what) { return {ErrorKind::kSampling, what}; }
inline Error shape_error(const std::string& what) { return {ErrorKind::kShape, what}; }
inline Error contract_error(const std::string& what) { return {ErrorKind::kContract, what}; }
inline Error training_error(const std::string& what) { return {ErrorKind::kTraining, what}; }
inline Error io_error(const std::string& what) { return {ErrorKind::kIo, what}; }
inline Error lookup_error(const std::string& what) { return {ErrorKind::kLookup, what}; }
inline Error generation_error(const std::string& what) { return {ErrorKind::kGeneration, what}; }
inline Error usage_error(const std::string& what) { return {ErrorKind::kUsage, what}; }

}  // namespace hetgen
