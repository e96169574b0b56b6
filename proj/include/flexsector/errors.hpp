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

#ifndef FLEXSECTOR_ERRORS_HPP
#define FLEXSECTOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flexsector {

/// Invalid configuration or malformed input (CLI exit code 2).
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// The instance cannot satisfy its constraints (CLI exit code 3).
/// `deficit` carries the antenna shortfall when meaningful, else 0.
class infeasible_error : public std::runtime_error {
public:
  explicit infeasible_error(const std::string& what, double deficit = 0.0)
      : std::runtime_error(what), deficit_(deficit) {}
  double deficit() const noexcept { return deficit_; }

private:
  double deficit_;
};

/// A numerical routine failed to converge (CLI exit code 4).
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flexsector

#endif  // FLEXSECTOR_ERRORS_HPP
