// SPDX-License-Identifier: Apache-2.0
//
// coopmimo - cascaded precoding with D2D receiver cooperation
// Copyright (C) 2026 The coopmimo authors
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


#ifndef COOPMIMO_RANDOM_HPP
#define COOPMIMO_RANDOM_HPP

#include "types.hpp"

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace coopmimo
{
    using rng_type = std::mt19937_64;

    /// SplitMix64 finalizer. Used to derive statistically independent seeds
    /// for child streams from a parent seed and a list of stream labels.
    constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    constexpr std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> labels) noexcept
    {
        std::uint64_t s = splitmix64(parent);
        for (auto label : labels)
            s = splitmix64(s ^ splitmix64(label + 0x632BE59BD9B4E019ULL));
        return s;
    }

    inline rng_type make_rng(std::uint64_t parent, std::initializer_list<std::uint64_t> labels)
    {
        return rng_type(derive_seed(parent, labels));
    }

    // Circularly-symmetric complex Gaussian: Re and Im each N(0, variance/2).
    inline cx complex_gaussian(rng_type &rng, double variance = 1.0)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
        const double re = n(rng);
        const double im = n(rng);
        return {re, im};
    }

    inline CMatrix complex_gaussian_matrix(rng_type &rng, Eigen::Index rows, Eigen::Index cols, double variance = 1.0)
    {
        CMatrix g(rows, cols);
        // Column-major fill order is part of the reproducibility contract.
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
                g(r, c) = complex_gaussian(rng, variance);
        return g;
    }
}

#endif
