// Copyright 2026 The kzmagic Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace kzmagic {

// Invalid user input: bad model parameters, grid sizes, config keys.
// The CLI maps this family to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Anything that goes wrong while computing: integrator failure, degenerate
// modes, non-convergent quadrature, ill-posed fits. Exit code 3.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A mode sits on a gapless point, so its eigenbasis is undefined.
class DegenerateModeError : public NumericalError {
  public:
    explicit DegenerateModeError(double k);
    double k() const { return k_; }

  private:
    double k_;
};

// The integrator could not meet its tolerance, or unitarity drifted.
class EvolutionError : public NumericalError {
  public:
    EvolutionError(double k, double t, const std::string &what);
    double k() const { return k_; }
    double t() const { return t_; }

  private:
    double k_;
    double t_;
};

}  // namespace kzmagic
