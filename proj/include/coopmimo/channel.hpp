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


#ifndef COOPMIMO_CHANNEL_HPP
#define COOPMIMO_CHANNEL_HPP

#include "linalg.hpp"
#include "random.hpp"
#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace coopmimo
{
    /// Shared multipath geometry seen by co-located users: a half-wavelength
    /// ULA with M elements and L paths arriving from fixed angles. Every path
    /// carries average power 1/L, so E||h||^2 = M.
    struct scattering_environment
    {
        std::size_t num_antennas = 0;
        std::vector<double> path_angles; // radians, in [-pi/2, pi/2)

        std::size_t num_paths() const noexcept { return path_angles.size(); }
        double path_gain_variance() const { return 1.0 / static_cast<double>(path_angles.size()); }

        void validate() const
        {
            if (num_antennas == 0)
                throw std::invalid_argument("scattering_environment: need at least one antenna");
            if (path_angles.empty())
                throw std::invalid_argument("scattering_environment: need at least one path");
            for (double a : path_angles)
                if (!std::isfinite(a) || a < -pi / 2 || a >= pi / 2)
                    throw std::invalid_argument("scattering_environment: path angle outside [-pi/2, pi/2)");
        }
    };

    struct inner_precoder
    {
        CMatrix basis;          // M x D, orthonormal columns, descending eigenvalue
        double captured_energy; // sum of the D largest eigenvalues of R
        RVector eigenvalues;    // all M eigenvalues of R, descending
    };

    inline CVector steering_vector(double theta, std::size_t num_antennas)
    {
        if (!std::isfinite(theta))
            throw std::invalid_argument("steering_vector: angle must be finite");
        if (num_antennas == 0)
            throw std::invalid_argument("steering_vector: need at least one antenna");
        const double phase = pi * std::sin(theta);
        CVector s(static_cast<Eigen::Index>(num_antennas));
        for (std::size_t m = 0; m < num_antennas; ++m)
            s[static_cast<Eigen::Index>(m)] = std::polar(1.0, phase * static_cast<double>(m));
        return s;
    }

    /// Draws L path angles uniformly over [center - spread/2, center + spread/2),
    /// clipped into [-pi/2, pi/2).
    inline scattering_environment draw_environment(std::size_t num_antennas, std::size_t num_paths,
                                                   double sector_center, double sector_spread, rng_type &rng)
    {
        if (num_antennas == 0 || num_paths == 0)
            throw std::invalid_argument("draw_environment: M and L must be positive");
        if (!std::isfinite(sector_center) || sector_center < -pi / 2 || sector_center >= pi / 2)
            throw std::invalid_argument("draw_environment: sector center outside [-pi/2, pi/2)");
        if (!std::isfinite(sector_spread) || sector_spread <= 0.0)
            throw std::invalid_argument("draw_environment: sector spread must be positive");

        const double upper = std::nextafter(pi / 2, 0.0);
        std::uniform_real_distribution<double> u(sector_center - sector_spread / 2, sector_center + sector_spread / 2);
        scattering_environment env{num_antennas, {}};
        env.path_angles.reserve(num_paths);
        for (std::size_t l = 0; l < num_paths; ++l)
            env.path_angles.push_back(std::clamp(u(rng), -pi / 2, upper));
        return env;
    }

    /// h_p = sum_l alpha_{l,p} s(theta_l), alpha ~ CN(0, 1/L) independent over l and p.
    inline CMatrix sample_channel(const scattering_environment &env, std::size_t num_users, rng_type &rng)
    {
        env.validate();
        if (num_users == 0)
            throw std::invalid_argument("sample_channel: need at least one user");
        const auto m = static_cast<Eigen::Index>(env.num_antennas);
        const auto l = static_cast<Eigen::Index>(env.num_paths());

        CMatrix steering(m, l);
        for (Eigen::Index k = 0; k < l; ++k)
            steering.col(k) = steering_vector(env.path_angles[static_cast<std::size_t>(k)], env.num_antennas);

        const CMatrix gains = complex_gaussian_matrix(rng, l, static_cast<Eigen::Index>(num_users),
                                                      env.path_gain_variance());
        return steering * gains;
    }

    // R = (1/L) sum_l s(theta_l) s(theta_l)^H
    inline CMatrix analytic_covariance(const scattering_environment &env)
    {
        env.validate();
        const auto m = static_cast<Eigen::Index>(env.num_antennas);
        // Summation in sorted angle order makes R exactly invariant to path order.
        std::vector<double> angles = env.path_angles;
        std::sort(angles.begin(), angles.end());
        CMatrix r = CMatrix::Zero(m, m);
        for (double theta : angles)
        {
            const CVector s = steering_vector(theta, env.num_antennas);
            r.noalias() += s * s.adjoint();
        }
        r /= static_cast<double>(env.num_paths());
        return r;
    }

    inline inner_precoder make_inner_precoder(const CMatrix &covariance, std::size_t dim)
    {
        const auto m = covariance.rows();
        if (covariance.cols() != m)
            throw std::invalid_argument("inner_precoder: covariance must be square");
        if (dim == 0 || static_cast<Eigen::Index>(dim) > m)
            throw std::invalid_argument("inner_precoder: need 1 <= D <= M");
        const double tol = 1e-12 * std::max(1.0, covariance.cwiseAbs().maxCoeff());
        if (hermitian_defect(covariance) > tol)
            throw std::invalid_argument("inner_precoder: covariance is not Hermitian");

        auto eig = eigh(covariance);
        const auto d = static_cast<Eigen::Index>(dim);
        return {eig.vectors.leftCols(d), eig.values.head(d).sum(), std::move(eig.values)};
    }
}

#endif
