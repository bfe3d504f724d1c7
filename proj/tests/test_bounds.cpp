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


#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include <coopmimo/bounds.hpp>
#include <coopmimo/codebook.hpp>

#include <algorithm>
#include <random>

using namespace coopmimo;
using Catch::Approx;

namespace
{
    eigen_spectrum spectrum_of(std::initializer_list<double> values)
    {
        eigen_spectrum s{RVector(static_cast<Eigen::Index>(values.size())),
                         CMatrix::Identity(static_cast<Eigen::Index>(values.size()),
                                           static_cast<Eigen::Index>(values.size()))};
        Eigen::Index k = 0;
        for (double v : values)
            s.eigenvalues[k++] = v;
        return s;
    }

    eigen_spectrum random_spectrum(std::size_t users, rng_type &rng)
    {
        std::lognormal_distribution<double> dist(0.0, 1.5);
        std::vector<double> v(users);
        for (auto &x : v)
            x = dist(rng);
        std::sort(v.begin(), v.end(), std::greater<>());
        eigen_spectrum s{RVector(static_cast<Eigen::Index>(users)), oracle::haar_unitary(users, rng)};
        for (std::size_t k = 0; k < users; ++k)
            s.eigenvalues[static_cast<Eigen::Index>(k)] = v[k];
        return s;
    }
}

TEST_CASE("eigen spectrum of the effective channel", "[bounds]")
{
    rng_type rng(1);
    SECTION("orthonormal columns")
    {
        const auto s = make_eigen_spectrum(effective_channel{oracle::haar_unitary(6, rng).leftCols(4)});
        for (Eigen::Index k = 0; k < 4; ++k)
            CHECK(s.eigenvalues[k] == Approx(1.0).epsilon(1e-12));
    }
    SECTION("diagonal Gram")
    {
        CMatrix h = CMatrix::Zero(5, 3);
        h(0, 0) = 1.0;
        h(1, 1) = 3.0;
        h(2, 2) = 2.0;
        const auto s = make_eigen_spectrum(effective_channel{h});
        CHECK(s.eigenvalues[0] == Approx(9.0));
        CHECK(s.eigenvalues[1] == Approx(4.0));
        CHECK(s.eigenvalues[2] == Approx(1.0));
    }
    SECTION("random instances reconstruct and satisfy the trace identity")
    {
        for (int i = 0; i < 100; ++i)
        {
            const effective_channel he{oracle::gaussian_matrix(6, 4, rng)};
            const auto s = make_eigen_spectrum(he);
            const CMatrix a = he.gram();
            const CMatrix rebuilt = s.eigenmatrix * s.eigenvalues.asDiagonal() * s.eigenmatrix.adjoint();
            CHECK((rebuilt - a).norm() / a.norm() < 1e-9);
            CHECK(unitary_defect(s.eigenmatrix) < 1e-10);

            const auto inv = oracle::inverse(oracle::to_rows(a));
            double tr = 0.0;
            for (std::size_t k = 0; k < 4; ++k)
                tr += inv[k][k].real();
            CHECK(oracle::relative_error(s.inverse_trace(), tr) < 1e-9);
        }
    }
}

TEST_CASE("expected cell distortion", "[bounds]")
{
    CHECK(expected_cell_distortion(0, 4) == 1.0);
    CHECK(expected_cell_distortion(3, 4) == 0.5);
    CHECK(expected_cell_distortion(8, 2) == 0.00390625);
    CHECK_THROWS_AS(expected_cell_distortion(4, 1), std::invalid_argument);
}

TEST_CASE("SNR lower bound", "[bounds]")
{
    SECTION("vanishing distortion gives ideal cooperation")
    {
        const auto s = spectrum_of({5.0, 3.0, 2.0, 0.5});
        CHECK(snr_lower_bound_for_distortion(s, 0.0, 1.0) == Approx(ideal_cooperation_snr(s, 1.0)).epsilon(1e-14));
        CHECK(snr_lower_bound(s, 600u, 1.0) == Approx(ideal_cooperation_snr(s, 1.0)).epsilon(1e-12));
    }
    SECTION("hand-evaluated two-user case")
    {
        CHECK(snr_lower_bound(spectrum_of({1.0, 1.0}), 1u, 1.0) == Approx(1.0).epsilon(1e-14));
    }
    SECTION("never above the ideal-cooperation SNR")
    {
        rng_type rng(2);
        for (int i = 0; i < 1000; ++i)
        {
            const auto s = random_spectrum(2 + static_cast<std::size_t>(i % 4), rng);
            for (unsigned b : {6u, 12u})
                CHECK(snr_lower_bound(s, b, 0.4) <= ideal_cooperation_snr(s, 0.4) * (1.0 + 1e-9));
        }
    }
    SECTION("nonpositive denominator is reported with the user index")
    {
        try
        {
            (void)snr_lower_bound_terms(spectrum_of({100.0, 0.01}), 1.5, 1.0);
            FAIL("expected bound_invalid");
        }
        catch (const bound_invalid &e)
        {
            CHECK(e.user() == 1);
        }
        CHECK_THROWS_AS(snr_lower_bound_terms(spectrum_of({1.0, 0.0}), 0.1, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(snr_lower_bound_terms(spectrum_of({1.0, 1.0}), 0.1, -1.0), std::invalid_argument);
    }
}

TEST_CASE("ideal cooperation SNR", "[bounds]")
{
    CHECK(ideal_cooperation_snr(spectrum_of({4.0, 2.0, 1.0, 1.0}), 1.0) == Approx(2.0));
    CHECK(ideal_cooperation_snr(spectrum_of({1.0, 1.0, 1.0}), 0.25) == Approx(4.0));

    rng_type rng(3);
    const effective_channel he{oracle::gaussian_matrix(6, 4, rng)};
    const auto s = make_eigen_spectrum(he);
    CHECK(oracle::relative_error(average_snr(he, decoding_matrix(s.eigenmatrix), 0.6),
                                 ideal_cooperation_snr(s, 0.6)) < 1e-9);
}

TEST_CASE("decoding-vector angle geometry", "[bounds][property]")
{
    rng_type rng(4);
    for (int i = 0; i < 200; ++i)
    {
        const effective_channel he{oracle::gaussian_matrix(6, 4, rng)};
        const auto s = make_eigen_spectrum(he);
        const decoding_matrix q(oracle::haar_unitary(4, rng));
        const Eigen::MatrixXd c2 = decoding_angle_cos2(q, s);
        for (Eigen::Index p = 0; p < 4; ++p)
        {
            CHECK(std::abs(c2.row(p).sum() - 1.0) < 1e-10);
            const double sin2 = 1.0 - c2(p, p);
            for (Eigen::Index k = 0; k < 4; ++k)
                if (k != p)
                    CHECK(c2(p, k) <= sin2 + 1e-10);
        }
        const double matched = matched_cell_distortion(q, s);
        CHECK(matched >= -1e-12);
        CHECK(matched <= 1.0 - c2.diagonal().mean() + 1e-12);
    }
}

TEST_CASE("matched distortion ignores column order", "[bounds]")
{
    rng_type rng(5);
    const auto s = make_eigen_spectrum(effective_channel{oracle::gaussian_matrix(5, 3, rng)});
    CHECK(matched_cell_distortion(decoding_matrix(s.eigenmatrix), s) == Approx(0.0).margin(1e-12));
    CMatrix swapped = s.eigenmatrix;
    swapped.col(0).swap(swapped.col(2));
    swapped.col(1) *= std::polar(1.0, 1.1);
    CHECK(matched_cell_distortion(decoding_matrix(swapped), s) == Approx(0.0).margin(1e-12));
}
