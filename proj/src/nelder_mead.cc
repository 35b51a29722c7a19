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

#include "ugame/nelder_mead.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ugame {

namespace {

std::vector<double> affine(const std::vector<double> &a, const std::vector<double> &b, double t) {
    // a + t (b - a)
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        out[i] = a[i] + t * (b[i] - a[i]);
    }
    return out;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double> &)> &f,
                                      std::vector<double> x0, const NelderMeadOptions &options) {
    const std::size_t n = x0.size();
    if (n == 0) {
        return {x0, f(x0), 1};
    }
    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; i++) {
        simplex[i + 1][i] += options.initial_step;
    }
    std::vector<double> values(n + 1);
    int evals = 0;
    for (std::size_t i = 0; i <= n; i++) {
        values[i] = f(simplex[i]);
        evals++;
    }
    std::vector<std::size_t> order(n + 1);

    while (evals < options.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
        if (values[worst] - values[best] < options.value_tolerance) {
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; k++) {
            for (std::size_t i = 0; i < n; i++) {
                centroid[i] += simplex[order[k]][i] / static_cast<double>(n);
            }
        }
        std::vector<double> reflected = affine(centroid, simplex[worst], -1.0);
        double fr = f(reflected);
        evals++;
        if (fr < values[best]) {
            std::vector<double> expanded = affine(centroid, simplex[worst], -2.0);
            double fe = f(expanded);
            evals++;
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                values[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = std::move(reflected);
            values[worst] = fr;
            continue;
        }
        bool outside = fr < values[worst];
        std::vector<double> contracted = outside ? affine(centroid, reflected, 0.5) : affine(centroid, simplex[worst], 0.5);
        double fc = f(contracted);
        evals++;
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = std::move(contracted);
            values[worst] = fc;
            continue;
        }
        for (std::size_t k = 1; k <= n; k++) {
            std::size_t idx = order[k];
            simplex[idx] = affine(simplex[best], simplex[idx], 0.5);
            values[idx] = f(simplex[idx]);
            evals++;
        }
    }
    std::size_t best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return {simplex[best], values[best], evals};
}

}  // namespace ugame
