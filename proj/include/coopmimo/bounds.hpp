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


#ifndef COOPMIMO_BOUNDS_HPP
#define COOPMIMO_BOUNDS_HPP

#include "decoding_matrix.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "precoding.hpp"
#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace coopmimo
{
    /// Spectrum of A = H_e^H H_e: A = U diag(lambda) U^H, lambda descending.
    struct eigen_spectrum
    {
        RVector eigenvalues;
        CMatrix eigenmatrix;

        std::size_t users() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }

        // trace(A^{-1}) = sum_p 1/lambda_p
        double inverse_trace() const { return eigenvalues.cwiseInverse().sum(); }
    };

    inline eigen_spectrum make_eigen_spectrum(const effective_channel &he)
    {
        auto eig = eigh(he.gram());
        return {std::move(eig.values), std::move(eig.vectors)};
    }

    inline eigen_spectrum make_eigen_spectrum(const gram_inverse &g)
    {
        return {g.spectrum.values, g.spectrum.vectors};
    }

    /// Random-codebook approximation E{sin^2 theta} ~ 2^{-b/(P-1)}.
    inline double expected_cell_distortion(unsigned bits, std::size_t users)
    {
        if (users < 2)
            throw std::invalid_argument("expected_cell_distortion: needs P >= 2");
        return std::exp2(-static_cast<double>(bits) / static_cast<double>(users - 1));
    }

    /// Per-user terms 1/(N0 (1/lambda_p + (tr(A^{-1}) - 2/lambda_p) delta)) of the
    /// Jensen lower bound on the expected average SNR, for a given mean cell
    /// distortion delta. Throws bound_invalid if a denominator is not positive.
    inline std::vector<double> snr_lower_bound_terms(const eigen_spectrum &s, double distortion, double n0)
    {
        check_noise_power(n0);
        if (s.users() == 0)
            throw std::invalid_argument("snr_lower_bound: empty spectrum");
        if (!(distortion >= 0.0))
            throw std::invalid_argument("snr_lower_bound: distortion must be nonnegative");
        for (Eigen::Index p = 0; p < s.eigenvalues.size(); ++p)
            if (!(s.eigenvalues[p] > 0.0))
                throw std::invalid_argument("snr_lower_bound: eigenvalues must be positive");

        const double tr = s.inverse_trace();
        std::vector<double> terms(s.users());
        for (std::size_t p = 0; p < terms.size(); ++p)
        {
            const double inv = 1.0 / s.eigenvalues[static_cast<Eigen::Index>(p)];
            const double denom = inv + (tr - 2.0 * inv) * distortion;
            if (!(denom > 0.0))
                throw bound_invalid(p);
            terms[p] = 1.0 / (n0 * denom);
        }
        return terms;
    }

    inline double snr_lower_bound_for_distortion(const eigen_spectrum &s, double distortion, double n0)
    {
        const auto terms = snr_lower_bound_terms(s, distortion, n0);
        return std::accumulate(terms.begin(), terms.end(), 0.0) / static_cast<double>(terms.size());
    }

    inline double snr_lower_bound(const eigen_spectrum &s, unsigned bits, double n0)
    {
        return snr_lower_bound_for_distortion(s, expected_cell_distortion(bits, s.users()), n0);
    }

    // (1/(N0 P)) sum_p lambda_p
    inline double ideal_cooperation_snr(const eigen_spectrum &s, double n0)
    {
        check_noise_power(n0);
        return s.eigenvalues.sum() / (n0 * static_cast<double>(s.users()));
    }

    // Per-user ideal-cooperation SNRs lambda_p / N0.
    inline std::vector<double> ideal_cooperation_snrs(const eigen_spectrum &s, double n0)
    {
        check_noise_power(n0);
        std::vector<double> out(s.users());
        for (std::size_t p = 0; p < out.size(); ++p)
            out[p] = s.eigenvalues[static_cast<Eigen::Index>(p)] / n0;
        return out;
    }

    /// cos^2 of the angle between decoding vector q_p (row p) and eigenvector u_i (column i).
    inline Eigen::MatrixXd decoding_angle_cos2(const decoding_matrix &q, const eigen_spectrum &s)
    {
        if (q.users() != s.users())
            throw std::invalid_argument("decoding_angle_cos2: size mismatch");
        return (q.matrix().adjoint() * s.eigenmatrix).cwiseAbs2();
    }

    /// Mean sin^2 between decoding vectors and eigenvectors after pairing each
    /// q_p with a distinct u_i so that the total alignment is maximal. The
    /// selection metric is invariant to column permutations of Q, so the
    /// pairing with the eigenbasis is only defined up to this assignment.
    /// Exhaustive over P! pairings; intended for small P.
    inline double matched_cell_distortion(const decoding_matrix &q, const eigen_spectrum &s)
    {
        const Eigen::MatrixXd c2 = decoding_angle_cos2(q, s);
        const auto n = static_cast<std::size_t>(c2.rows());
        if (n > 8)
            throw std::invalid_argument("matched_cell_distortion: P too large for exhaustive pairing");
        std::vector<Eigen::Index> perm(n);
        std::iota(perm.begin(), perm.end(), Eigen::Index{0});
        double best = -1.0;
        do
        {
            double aligned = 0.0;
            for (std::size_t p = 0; p < n; ++p)
                aligned += c2(static_cast<Eigen::Index>(p), perm[p]);
            best = std::max(best, aligned);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return 1.0 - best / static_cast<double>(n);
    }
}

#endif
