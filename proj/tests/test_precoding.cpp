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
#include <coopmimo/channel.hpp>
#include <coopmimo/precoding.hpp>
#include <coopmimo/transceiver.hpp>

#include <cmath>

using namespace coopmimo;
using Catch::Approx;

namespace
{
    effective_channel random_effective_channel(std::size_t d, std::size_t p, rng_type &rng)
    {
        return {oracle::gaussian_matrix(d, p, rng)};
    }
}

TEST_CASE("effective channel", "[precoding]")
{
    rng_type rng(4);
    SECTION("identity inner precoder passes the channel through")
    {
        const CMatrix h = oracle::gaussian_matrix(5, 3, rng);
        CHECK(make_effective_channel(CMatrix::Identity(5, 5), h).entries == h);
    }
    SECTION("channels inside the precoder range map to their coordinates")
    {
        const CMatrix w = oracle::haar_unitary(8, rng).leftCols(4);
        const CMatrix g = oracle::gaussian_matrix(4, 3, rng);
        CHECK((make_effective_channel(w, w * g).entries - g).norm() < 1e-12);
    }
    SECTION("default dimensions")
    {
        const auto env = draw_environment(64, 20, 0.0, pi, rng);
        const auto w = make_inner_precoder(analytic_covariance(env), 6);
        const auto he = make_effective_channel(w, sample_channel(env, 4, rng));
        CHECK(he.dim() == 6);
        CHECK(he.users() == 4);
    }
    SECTION("dimension mismatches are rejected")
    {
        CHECK_THROWS_AS(make_effective_channel(CMatrix::Identity(4, 4), CMatrix::Ones(5, 2)), std::invalid_argument);
        CHECK_THROWS_AS(make_effective_channel(CMatrix::Identity(4, 2), CMatrix::Ones(4, 3)), std::invalid_argument);
    }
}

TEST_CASE("zero-forcing outer precoder", "[precoding]")
{
    rng_type rng(5);
    SECTION("orthonormal channel with Q = I returns the channel itself")
    {
        const effective_channel he{oracle::haar_unitary(6, rng).leftCols(4)};
        const CMatrix v = zf_outer_precoder(he, decoding_matrix::identity(4));
        CHECK((v - he.entries).norm() < 1e-12);
        const CMatrix diag = he.entries.adjoint() * v;
        CHECK((diag - CMatrix::Identity(4, 4)).norm() < 1e-12);
    }
    SECTION("single user is matched filtering")
    {
        const effective_channel he{oracle::gaussian_matrix(6, 1, rng)};
        const decoding_matrix q(CMatrix::Constant(1, 1, std::polar(1.0, 0.4)));
        const CMatrix v = zf_outer_precoder(he, q);
        const CVector hq = he.entries * q.matrix();
        CHECK((v.col(0) - hq / hq.norm()).norm() < 1e-12);
        const cx gain = (q.matrix().adjoint() * he.entries.adjoint() * v)(0, 0);
        CHECK(std::abs(gain - cx(hq.norm(), 0.0)) < 1e-12);
    }
    SECTION("random channel and unitary decoder diagonalize the link")
    {
        for (int i = 0; i < 50; ++i)
        {
            const auto he = random_effective_channel(6, 4, rng);
            const decoding_matrix q(oracle::haar_unitary(4, rng));
            const CMatrix v = zf_outer_precoder(he, q);
            const CMatrix link = q.matrix().adjoint() * he.entries.adjoint() * v;
            const auto b_inv = oracle::inverse(oracle::to_rows(q.matrix().adjoint() * he.gram() * q.matrix()));
            for (Eigen::Index r = 0; r < 4; ++r)
            {
                CHECK(v.col(r).norm() == Approx(1.0).epsilon(1e-10));
                for (Eigen::Index c = 0; c < 4; ++c)
                    if (r != c)
                        CHECK(std::abs(link(r, c)) < 1e-8);
                CHECK(std::abs(link(r, r).imag()) < 1e-10);
                const double want = 1.0 / std::sqrt(b_inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)].real());
                CHECK(link(r, r).real() == Approx(want).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("per-user SNR closed forms", "[precoding]")
{
    rng_type rng(6);
    SECTION("single user")
    {
        const effective_channel he{oracle::gaussian_matrix(4, 1, rng)};
        CHECK(per_user_snr(he, decoding_matrix::identity(1), 0.5, 0) ==
              Approx(he.entries.squaredNorm() / 0.5).epsilon(1e-12));
    }
    SECTION("eigenmatrix decoder gives lambda_p / N0")
    {
        const auto he = random_effective_channel(6, 4, rng);
        const auto s = make_eigen_spectrum(he);
        const decoding_matrix u(s.eigenmatrix);
        for (std::size_t p = 0; p < 4; ++p)
            CHECK(per_user_snr(he, u, 2.0, p) ==
                  Approx(s.eigenvalues[static_cast<Eigen::Index>(p)] / 2.0).epsilon(1e-10));
    }
    SECTION("orthogonal columns")
    {
        const CMatrix basis = oracle::haar_unitary(5, rng).leftCols(3);
        const double gains[] = {0.5, 2.0, 3.5};
        effective_channel he{basis};
        for (Eigen::Index p = 0; p < 3; ++p)
            he.entries.col(p) *= gains[p];
        for (std::size_t p = 0; p < 3; ++p)
            CHECK(per_user_snr(he, decoding_matrix::identity(3), 0.1, p) ==
                  Approx(gains[p] * gains[p] / 0.1).epsilon(1e-10));
    }
    SECTION("errors")
    {
        const auto he = random_effective_channel(4, 2, rng);
        CHECK_THROWS_AS(per_user_snr(he, decoding_matrix::identity(2), 0.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(per_user_snr(he, decoding_matrix::identity(2), 1.0, 2), std::out_of_range);
        CHECK_THROWS_AS(per_user_snr(he, decoding_matrix::identity(3), 1.0, 0), std::invalid_argument);

        CMatrix rank_deficient = oracle::gaussian_matrix(4, 2, rng);
        rank_deficient.col(1) = rank_deficient.col(0);
        try
        {
            (void)per_user_snr(effective_channel{rank_deficient}, decoding_matrix::identity(2), 1.0, 0);
            FAIL("expected ill_conditioned_channel");
        }
        catch (const ill_conditioned_channel &e)
        {
            CHECK(e.condition_number() >= max_gram_condition);
        }
    }
}

TEST_CASE("quadratic form, matrix form and reference inverse agree", "[precoding][property]")
{
    rng_type rng(7);
    for (int i = 0; i < 200; ++i)
    {
        const auto he = random_effective_channel(6, 4, rng);
        const decoding_matrix q(oracle::haar_unitary(4, rng));
        const gram_inverse g(he);
        const auto ref = oracle::inverse(oracle::to_rows(q.matrix().adjoint() * he.gram() * q.matrix()));
        for (std::size_t p = 0; p < 4; ++p)
        {
            const double fast = per_user_snr(g, q, 0.7, p);
            const double slow = per_user_snr_matrix_form(he, q, 0.7, p);
            const double want = 1.0 / (0.7 * ref[p][p].real());
            CHECK(oracle::relative_error(fast, want) < 1e-8);
            CHECK(oracle::relative_error(slow, want) < 1e-8);
        }
    }
}

TEST_CASE("unitary conjugation preserves the Gram spectrum", "[precoding][property]")
{
    rng_type rng(8);
    for (int i = 0; i < 100; ++i)
    {
        const auto he = random_effective_channel(6, 4, rng);
        const CMatrix q = oracle::haar_unitary(4, rng);
        const auto a = oracle::hermitian_eigenvalues(he.gram());
        const auto b = oracle::hermitian_eigenvalues(q.adjoint() * he.gram() * q);
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(oracle::relative_error(b[k], a[k]) < 1e-9);
    }
}

TEST_CASE("average SNR never exceeds the eigenvalue cap", "[precoding][property]")
{
    rng_type rng(9);
    for (int i = 0; i < 200; ++i)
    {
        const auto he = random_effective_channel(6, 4, rng);
        const gram_inverse g(he);
        const decoding_matrix q(oracle::haar_unitary(4, rng));
        double sum = 0.0;
        for (std::size_t p = 0; p < 4; ++p)
            sum += 1.0 / g.quadratic_form(q.column(p));
        CHECK(sum <= he.gram().trace().real() * (1.0 + 1e-9));
    }
}

TEST_CASE("non-cooperative baseline", "[precoding]")
{
    rng_type rng(10);
    SECTION("orthonormal channel")
    {
        const effective_channel he{oracle::haar_unitary(6, rng).leftCols(4)};
        for (double s : noncooperative_baseline_snr(he, 0.25))
            CHECK(s == Approx(4.0).epsilon(1e-12));
    }
    SECTION("equals Q = I")
    {
        const auto he = random_effective_channel(6, 4, rng);
        const auto base = noncooperative_baseline_snr(he, 1.3);
        for (std::size_t p = 0; p < 4; ++p)
            CHECK(base[p] == Approx(per_user_snr(he, decoding_matrix::identity(4), 1.3, p)).epsilon(1e-13));
    }
    SECTION("correlated pair loses SNR as the correlation grows")
    {
        double previous = INFINITY;
        for (double rho : {0.0, 0.3, 0.6, 0.9, 0.99})
        {
            CMatrix h(2, 2);
            h << 1.0, rho, 0.0, std::sqrt(1.0 - rho * rho);
            const auto s = noncooperative_baseline_snr(effective_channel{h}, 1.0);
            CHECK(s[0] == Approx(1.0 - rho * rho).epsilon(1e-10));
            CHECK(s[1] == Approx(1.0 - rho * rho).epsilon(1e-10));
            CHECK(s[0] < previous + 1e-15);
            previous = s[0];
        }
    }
}

TEST_CASE("symbol-level link simulation reproduces the closed form", "[precoding][statistical]")
{
    rng_type rng(11);
    const auto env = draw_environment(64, 20, 0.0, pi, rng);
    const auto w = make_inner_precoder(analytic_covariance(env), 6);
    for (int i = 0; i < 3; ++i)
    {
        const auto he = make_effective_channel(w, sample_channel(env, 4, rng));
        const decoding_matrix q(oracle::haar_unitary(4, rng));
        const double n0 = 0.8;
        const auto m = simulate_link(he, q, zf_outer_precoder(he, q), n0, 100000, rng);
        for (std::size_t p = 0; p < 4; ++p)
            CHECK(oracle::relative_error(m.sinr[p], per_user_snr(he, q, n0, p)) < 0.03);
    }
}
