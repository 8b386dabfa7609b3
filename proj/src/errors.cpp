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

#include "kzmagic/errors.hpp"

#include <cstdio>

namespace kzmagic {

namespace {
std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}
}  // namespace

DegenerateModeError::DegenerateModeError(double k)
    : NumericalError("degenerate gapless mode at k=" + fmt_double(k)), k_(k) {}

EvolutionError::EvolutionError(double k, double t, const std::string &what)
    : NumericalError("evolution failed for mode k=" + fmt_double(k) + " at t=" + fmt_double(t) + ": " + what),
      k_(k),
      t_(t) {}

}  // namespace kzmagic
