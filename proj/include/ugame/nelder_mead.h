// Copyright 2026 The ugame Authors
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

#ifndef UGAME_NELDER_MEAD_H
#define UGAME_NELDER_MEAD_H

#include <functional>
#include <vector>

namespace ugame {

struct NelderMeadOptions {
    double initial_step = 0.05;
    int max_evaluations = 2000;
    /// Stop once the spread of simplex values falls below this.
    double value_tolerance = 1e-13;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    int evaluations;
};

/// Derivative-free minimization with the standard reflection / expansion /
/// contraction / shrink coefficients (1, 2, 1/2, 1/2). The returned value
/// never exceeds f(x0).
NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double> &)> &f,
                                      std::vector<double> x0, const NelderMeadOptions &options = {});

}  // namespace ugame

#endif
