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


#ifndef COOPMIMO_DECODING_MATRIX_HPP
#define COOPMIMO_DECODING_MATRIX_HPP

#include "linalg.hpp"
#include "types.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

namespace coopmimo
{
    /// P x P unitary matrix whose column p is the decoding vector applied by
    /// user p to the pooled receive samples.
    class decoding_matrix
    {
    public:
        static constexpr double unitary_tolerance = 1e-10;

        explicit decoding_matrix(CMatrix q) : q_(std::move(q))
        {
            if (q_.rows() == 0 || q_.rows() != q_.cols())
                throw std::invalid_argument("decoding_matrix: must be square and nonempty");
            if (unitary_defect(q_) >= unitary_tolerance)
                throw std::invalid_argument("decoding_matrix: not unitary");
        }

        static decoding_matrix identity(std::size_t users)
        {
            const auto n = static_cast<Eigen::Index>(users);
            return decoding_matrix(CMatrix::Identity(n, n));
        }

        const CMatrix &matrix() const noexcept { return q_; }
        auto column(std::size_t p) const { return q_.col(static_cast<Eigen::Index>(p)); }
        std::size_t users() const noexcept { return static_cast<std::size_t>(q_.cols()); }

    private:
        CMatrix q_;
    };
}

#endif
