// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <stdexcept>

namespace fasc
{

struct ScalarMaximum
{
    double x = 0.0;
    double value = 0.0;
};

// Golden-section search for the maximum of a unimodal function on [lo, hi].
// Stops once the bracket is narrower than tol. The endpoints are compared against
// the interior estimate so boundary maxima are returned exactly.
template <typename Fn>
ScalarMaximum golden_section_maximize(Fn &&fn, double lo, double hi, double tol)
{
    if (!(lo <= hi))
        throw std::invalid_argument("golden_section_maximize: empty interval");
    if (!(tol > 0.0))
        throw std::invalid_argument("golden_section_maximize: tolerance must be positive");

    ScalarMaximum best{lo, fn(lo)};
    if (hi == lo)
        return best;

    const double f_hi = fn(hi);
    if (f_hi > best.value)
        best = {hi, f_hi};

    constexpr double inv_phi = 0.6180339887498949; // (sqrt(5) - 1) / 2
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);

    while (b - a > tol)
    {
        if (f1 < f2)
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = fn(x2);
        }
        else
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = fn(x1);
        }
    }

    const double x_mid = 0.5 * (a + b);
    const double f_mid = fn(x_mid);
    if (f_mid > best.value)
        best = {x_mid, f_mid};
    if (f1 > best.value)
        best = {x1, f1};
    if (f2 > best.value)
        best = {x2, f2};
    return best;
}

} // namespace fasc
