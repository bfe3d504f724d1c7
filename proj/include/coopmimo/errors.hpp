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

#ifndef COOPMIMO_ERRORS_HPP
#define COOPMIMO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coopmimo
{
    // Gram matrix of the effective channel is singular or too badly conditioned.
    class ill_conditioned_channel : public std::runtime_error
    {
    public:
        explicit ill_conditioned_channel(double condition_number)
            : std::runtime_error("ill-conditioned effective channel (condition number " +
                                 std::to_string(condition_number) + ")"),
              condition_number_(condition_number)
        {
        }

        double condition_number() const noexcept { return condition_number_; }

    private:
        double condition_number_;
    };

    // A lower-bound term left the region where its denominator is positive.
    class bound_invalid : public std::runtime_error
    {
    public:
        explicit bound_invalid(std::size_t user)
            : std::runtime_error("SNR lower bound invalid: nonpositive denominator for user " +
                                 std::to_string(user)),
              user_(user)
        {
        }

        std::size_t user() const noexcept { return user_; }

    private:
        std::size_t user_;
    };

    class resource_limit : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class config_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };
}

#endif
