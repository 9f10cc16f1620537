// Copyright 2026 The trimode Authors
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


// Squeezed coherent state basics: quadrature variances, a Wigner value and
// the sub-Poissonian parameter of the collective mode.

#include <cstdio>
#include <numbers>

#include "trimode/gaussian_state.hpp"
#include "trimode/photon_statistics.hpp"

int main() {
    using namespace trimode;
    const double lambda = 0.3;
    const CoherentAmplitudes alpha(0.5, Complex(0.2, 0.1), -0.3);
    const auto state = make_state(lambda, alpha);

    std::printf("Var(X3) = %.12g  (vacuum 0.25)\n", central_moment(state, MomentQuery::x3(2)));
    std::printf("Var(Y3) = %.12g\n", central_moment(state, MomentQuery::y3(2)));
    std::printf("W(mean) = %.12g  (1/pi^3 = %.12g)\n",
                wigner(state, state.mean.head<3>(), state.mean.tail<3>()), 1.0 / (std::numbers::pi * std::numbers::pi * std::numbers::pi));

    for (int k = 2; k <= 4; ++k) {
        const auto r = pk(k, alpha, lambda, StatsPath::exact);
        std::printf("P_%d = %.12g\n", k, r.value());
    }
    return 0;
}
