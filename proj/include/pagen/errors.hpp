// Copyright 2026 The pagen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pagen {

/// Invalid user input: a config field, an initial network, a plan. `path()` is a
/// JSON pointer to the offending field when the error came from a document.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, std::string path = {})
        : std::runtime_error(path.empty() ? msg : path + ": " + msg), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A generation run that cannot continue (negative preference, exhausted
/// rejection budget, a sampler with no candidates).
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NegativePreferenceError : public GenerationError {
public:
    using GenerationError::GenerationError;
};

class NoCandidateError : public GenerationError {
public:
    using GenerationError::GenerationError;
};

class RejectionLimitError : public GenerationError {
public:
    using GenerationError::GenerationError;
};

/// Evaluation of a preference expression left its domain (log of a
/// nonpositive value, division by zero, non-finite result).
class DomainError : public GenerationError {
public:
    using GenerationError::GenerationError;
};

class ParseError : public ConfigError {
public:
    ParseError(const std::string& msg, std::size_t position)
        : ConfigError(msg + " at position " + std::to_string(position)), position_(position) {}

    /// 1-based column of the offending character.
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Malformed TSV or JSON file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pagen
