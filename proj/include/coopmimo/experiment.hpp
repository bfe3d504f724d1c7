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


#ifndef COOPMIMO_EXPERIMENT_HPP
#define COOPMIMO_EXPERIMENT_HPP

#include "bounds.hpp"
#include "channel.hpp"
#include "codebook.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "precoding.hpp"
#include "quantization.hpp"
#include "random.hpp"
#include "types.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

namespace coopmimo
{
    inline constexpr double not_applicable = std::numeric_limits<double>::quiet_NaN();

    // Sum of per-user Shannon rates, bits/s/Hz.
    inline double capacity(std::span<const double> snrs)
    {
        double c = 0.0;
        for (double s : snrs)
        {
            if (!(s >= 0.0))
                throw std::invalid_argument("capacity: SNRs must be nonnegative");
            c += std::log2(1.0 + s);
        }
        return c;
    }

    inline double noise_power_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

    struct grid_point
    {
        std::size_t users;
        unsigned bits;
        double snr_db;
        double gamma_db;  // NaN in ideal-rsi mode
        double bw_ratio;  // NaN in ideal-rsi mode
    };

    struct trial_record
    {
        grid_point point;
        std::size_t trial;
        double capacity_coop;
        double capacity_zf;
        double capacity_ideal;
        double capacity_bound; // NaN when the bound is undefined at this point
        unsigned cond_fail;
        double overload_rate;
        std::size_t codeword; // selected index within the 2^b prefix
        unsigned coop_bits;   // quantizer bits granted by the link; 0 in ideal-rsi mode
    };

    inline std::vector<grid_point> enumerate_grid(const experiment_config &cfg)
    {
        const bool quantized = cfg.mode == rsi_mode::quantized;
        const std::vector<double> gammas = quantized ? cfg.gamma_db_grid : std::vector<double>{not_applicable};
        const std::vector<double> ratios = quantized ? cfg.bandwidth_ratio_grid : std::vector<double>{not_applicable};
        std::vector<grid_point> grid;
        for (auto p : cfg.users_swept())
            for (auto b : cfg.b_grid)
                for (auto s : cfg.snr_db_grid)
                    for (auto g : gammas)
                        for (auto r : ratios)
                            grid.push_back({p, b, s, g, r});
        return grid;
    }

    /// One nested codebook per swept user count, sized for the largest b in
    /// the grid; smaller b use its prefixes.
    class codebook_store
    {
    public:
        explicit codebook_store(const experiment_config &cfg)
        {
            for (auto p : cfg.users_swept())
            {
                if (books_.contains(p))
                    continue;
                auto rng = make_rng(cfg.effective_codebook_seed(), {p});
                books_.emplace(p, generate_codebook(p, cfg.max_bits(), rng, cfg.codebook_memory_budget));
            }
        }

        const decoding_codebook &for_users(std::size_t p) const { return books_.at(p); }

    private:
        std::map<std::size_t, decoding_codebook> books_;
    };

    namespace stream
    {
        inline constexpr std::uint64_t trial = 0x7121A1ULL;
        inline constexpr std::uint64_t environment = 0xE4BULL;
        inline constexpr std::uint64_t channel = 0xC4A4ULL;
        inline constexpr std::uint64_t overload = 0x0BE4ULL;
    }

    /// Everything about one trial that does not depend on the grid point:
    /// the channel of each user count, its Gram inverse, and the best codeword
    /// of every codebook prefix.
    class trial_context
    {
    public:
        struct users_state
        {
            effective_channel he;
            std::optional<gram_inverse> gram; // empty: ill-conditioned
            eigen_spectrum spectrum;
            std::vector<std::size_t> best_upto; // best_upto[b] = argmax over the first 2^b codewords
        };

        trial_context(const experiment_config &cfg, const codebook_store &books, std::size_t trial,
                      std::span<const std::size_t> users)
            : cfg_(&cfg), books_(&books), trial_(trial)
        {
            auto env_rng = cfg.fixed_environment ? make_rng(cfg.master_seed, {stream::environment})
                                                 : make_rng(cfg.master_seed, {stream::trial, trial, stream::environment});
            const auto env = draw_environment(cfg.num_antennas, cfg.num_paths, cfg.sector_center, cfg.sector_spread,
                                              env_rng);
            const auto w = make_inner_precoder(analytic_covariance(env), cfg.effective_dim);

            for (auto p : users)
            {
                if (states_.contains(p))
                    continue;
                auto ch_rng = make_rng(cfg.master_seed, {stream::trial, trial, stream::channel, p});
                users_state st{make_effective_channel(w, sample_channel(env, p, ch_rng)), std::nullopt, {}, {}};
                try
                {
                    st.gram.emplace(st.he);
                }
                catch (const ill_conditioned_channel &)
                {
                }
                if (st.gram)
                {
                    st.spectrum = make_eigen_spectrum(*st.gram);
                    const auto &book = books.for_users(p);
                    const auto scores = codeword_scores(book.codewords(), *st.gram);
                    std::size_t best = 0;
                    st.best_upto.push_back(0);
                    for (unsigned b = 1; b <= book.bits(); ++b)
                    {
                        for (std::size_t k = std::size_t{1} << (b - 1); k < (std::size_t{1} << b); ++k)
                            if (scores[k] > scores[best])
                                best = k;
                        st.best_upto.push_back(best);
                    }
                }
                states_.emplace(p, std::move(st));
            }
        }

        trial_record evaluate(const grid_point &pt) const
        {
            const auto &st = states_.at(pt.users);
            trial_record rec{pt, trial_, not_applicable, not_applicable, not_applicable, not_applicable,
                             1, not_applicable, 0, 0};
            if (!st.gram)
                return rec;
            rec.cond_fail = 0;
            rec.overload_rate = 0.0;

            const double n0 = noise_power_from_snr_db(pt.snr_db);
            const auto &g = *st.gram;
            const auto &book = books_->for_users(pt.users);
            rec.codeword = st.best_upto.at(pt.bits);
            const decoding_matrix &q = book[rec.codeword];

            rec.capacity_zf = capacity(noncooperative_baseline_snr(g, n0));
            rec.capacity_ideal = capacity(ideal_cooperation_snrs(st.spectrum, n0));
            if (pt.users >= 2)
            {
                try
                {
                    rec.capacity_bound = capacity(snr_lower_bound_terms(
                        st.spectrum, expected_cell_distortion(pt.bits, pt.users), n0));
                }
                catch (const bound_invalid &)
                {
                }
            }

            if (cfg_->mode == rsi_mode::ideal)
            {
                rec.capacity_coop = capacity(per_user_snrs(g, q, n0));
                return rec;
            }

            const cooperation_link link{pt.bw_ratio, db_to_linear(pt.gamma_db)};
            const auto qs = quantized_snr(g, q, n0, link, cfg_->tau);
            rec.capacity_coop = capacity(qs.snrs);
            rec.coop_bits = qs.bits;
            if (qs.cooperative)
                rec.overload_rate = measure_overload(st.he, q, n0, pt);
            return rec;
        }

        // Received samples per trial and grid point used to audit the clip level.
        static constexpr std::size_t overload_symbols = 256;

    private:
        double measure_overload(const effective_channel &he, const decoding_matrix &q, double n0,
                                const grid_point &pt) const
        {
            auto rng = make_rng(cfg_->master_seed, {stream::trial, trial_, stream::overload, pt.users, pt.bits,
                                                    std::bit_cast<std::uint64_t>(pt.snr_db)});
            const CMatrix response = he.entries.adjoint() * zf_outer_precoder(he, q);
            const double tau = cfg_->tau;
            std::size_t clipped = 0;
            CVector x(response.cols());
            for (std::size_t n = 0; n < overload_symbols; ++n)
            {
                for (Eigen::Index k = 0; k < x.size(); ++k)
                    x[k] = complex_gaussian(rng);
                CVector y = response * x;
                for (Eigen::Index k = 0; k < y.size(); ++k)
                {
                    y[k] += complex_gaussian(rng, n0);
                    clipped += std::abs(y[k].real()) > tau;
                    clipped += std::abs(y[k].imag()) > tau;
                }
            }
            return static_cast<double>(clipped) / static_cast<double>(2 * overload_symbols * response.cols());
        }

        const experiment_config *cfg_;
        const codebook_store *books_;
        std::size_t trial_;
        std::map<std::size_t, users_state> states_;
    };

    /// Single trial at a single grid point. Bitwise identical to the record the
    /// full sweep produces for the same (config, point, trial).
    inline trial_record run_trial(const experiment_config &cfg, const grid_point &pt, std::size_t trial,
                                  const codebook_store &books)
    {
        const std::size_t users[] = {pt.users};
        return trial_context(cfg, books, trial, users).evaluate(pt);
    }

    inline trial_record run_trial(const experiment_config &cfg, const grid_point &pt, std::size_t trial)
    {
        cfg.validate();
        return run_trial(cfg, pt, trial, codebook_store(cfg));
    }

    struct aggregate_row
    {
        grid_point point;
        std::size_t trials;    // trials that entered the means
        std::size_t cond_fail; // trials excluded as ill-conditioned
        double mean_bound;
        double mean_overload_rate;
        double mean_coop, sem_coop;
        double mean_zf, sem_zf;
        double mean_ideal;
        double norm_capacity;  // mean_coop / mean_ideal
    };

    struct experiment_result
    {
        std::vector<grid_point> grid;
        std::vector<trial_record> records;  // sorted by (grid point, trial)
        std::vector<aggregate_row> aggregates;
    };

    namespace detail
    {
        struct running_stats
        {
            std::size_t n = 0;
            double sum = 0.0;
            double sum_sq = 0.0;

            void add(double x)
            {
                ++n;
                sum += x;
                sum_sq += x * x;
            }
            double mean() const { return n ? sum / static_cast<double>(n) : not_applicable; }
            double sem() const
            {
                if (n < 2)
                    return n == 1 ? 0.0 : not_applicable;
                const double m = mean();
                const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
                return std::sqrt(var / static_cast<double>(n));
            }
        };
    }

    inline aggregate_row aggregate(const grid_point &pt, std::span<const trial_record> recs)
    {
        detail::running_stats coop, zf, ideal, bound, overload;
        std::size_t failures = 0;
        for (const auto &r : recs)
        {
            if (r.cond_fail)
            {
                ++failures;
                continue;
            }
            coop.add(r.capacity_coop);
            zf.add(r.capacity_zf);
            ideal.add(r.capacity_ideal);
            overload.add(r.overload_rate);
            if (!std::isnan(r.capacity_bound))
                bound.add(r.capacity_bound);
        }
        return {pt,
                coop.n,
                failures,
                bound.n == coop.n ? bound.mean() : not_applicable,
                overload.mean(),
                coop.mean(),
                coop.sem(),
                zf.mean(),
                zf.sem(),
                ideal.mean(),
                coop.mean() / ideal.mean()};
    }

    /// Full sweep. Trials run on `threads` workers (0: hardware concurrency);
    /// each trial owns RNG streams derived from (master_seed, trial), so the
    /// output does not depend on scheduling.
    inline experiment_result run_experiment(const experiment_config &cfg, unsigned threads = 0)
    {
        cfg.validate();
        const codebook_store books(cfg);
        experiment_result out;
        out.grid = enumerate_grid(cfg);
        const auto users = cfg.users_swept();

        std::vector<std::vector<trial_record>> per_trial(cfg.num_trials);
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (std::size_t t = next++; t < cfg.num_trials; t = next++)
            {
                try
                {
                    const trial_context ctx(cfg, books, t, users);
                    auto &slot = per_trial[t];
                    slot.reserve(out.grid.size());
                    for (const auto &pt : out.grid)
                        slot.push_back(ctx.evaluate(pt));
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = cfg.num_trials;
                }
            }
        };

        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.num_trials));
        {
            std::vector<std::jthread> pool;
            for (unsigned i = 1; i < threads; ++i)
                pool.emplace_back(worker);
            worker();
        }
        if (failure)
            std::rethrow_exception(failure);

        out.records.reserve(out.grid.size() * cfg.num_trials);
        for (std::size_t i = 0; i < out.grid.size(); ++i)
            for (std::size_t t = 0; t < cfg.num_trials; ++t)
                out.records.push_back(per_trial[t][i]);
        for (std::size_t i = 0; i < out.grid.size(); ++i)
            out.aggregates.push_back(aggregate(
                out.grid[i], std::span<const trial_record>(out.records).subspan(i * cfg.num_trials, cfg.num_trials)));
        return out;
    }
}

#endif
