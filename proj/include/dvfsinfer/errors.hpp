/**
 * Copyright (c) the dvfsinfer contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef DVFSINFER_ERRORS_HPP
#define DVFSINFER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dvfsinfer {

/// Inputs that are structurally fine but unusable for the requested
/// operation (missing model family, missing feature sizes, bad flag set).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

/// Too few samples for a fit.
class InsufficientDataError : public std::runtime_error {
public:
  explicit InsufficientDataError(const std::string &msg)
      : std::runtime_error(msg) {}
};

/// Malformed profile or trace file. `line` is 1-based for CSV input and 0
/// when no line number applies; what() already carries the position.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string &msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

} // namespace dvfsinfer

#endif // DVFSINFER_ERRORS_HPP
