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


#ifndef COOPMIMO_REPORT_HPP
#define COOPMIMO_REPORT_HPP

#include "config.hpp"
#include "experiment.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

namespace coopmimo
{
    inline constexpr const char *trial_csv_header =
        "preset,mode,M,P,D,L,b,snr_db,gamma_db,bw_ratio,trial,capacity_coop,capacity_zf,capacity_ideal,"
        "capacity_bound,cond_fail,overload_rate";

    inline constexpr const char *aggregate_csv_header =
        "preset,mode,M,P,D,L,b,snr_db,gamma_db,bw_ratio,trials,cond_fail,mean_bound,mean_overload_rate,"
        "mean_coop,sem_coop,mean_zf,sem_zf,mean_ideal,norm_capacity";

    // Shortest round-trip decimal form, so output is byte-stable across runs.
    inline std::string format_number(double x)
    {
        if (std::isnan(x))
            return "nan";
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof(buf), x);
        return std::string(buf, res.ptr);
    }

    namespace detail
    {
        inline void write_point_prefix(std::ostream &os, const experiment_config &cfg, const grid_point &pt)
        {
            os << (cfg.figure_preset.empty() ? "custom" : cfg.figure_preset) << ',' << to_string(cfg.mode) << ','
               << cfg.num_antennas << ',' << pt.users << ',' << cfg.effective_dim << ',' << cfg.num_paths << ','
               << pt.bits << ',' << format_number(pt.snr_db) << ',' << format_number(pt.gamma_db) << ','
               << format_number(pt.bw_ratio);
        }
    }

    inline void write_trials_csv(std::ostream &os, const experiment_config &cfg, const experiment_result &res)
    {
        os << trial_csv_header << '\n';
        for (const auto &r : res.records)
        {
            detail::write_point_prefix(os, cfg, r.point);
            os << ',' << r.trial << ',' << format_number(r.capacity_coop) << ',' << format_number(r.capacity_zf)
               << ',' << format_number(r.capacity_ideal) << ',' << format_number(r.capacity_bound) << ','
               << r.cond_fail << ',' << format_number(r.overload_rate) << '\n';
        }
    }

    inline void write_aggregate_csv(std::ostream &os, const experiment_config &cfg, const experiment_result &res)
    {
        os << aggregate_csv_header << '\n';
        for (const auto &a : res.aggregates)
        {
            detail::write_point_prefix(os, cfg, a.point);
            os << ',' << a.trials << ',' << a.cond_fail << ',' << format_number(a.mean_bound) << ','
               << format_number(a.mean_overload_rate) << ',' << format_number(a.mean_coop) << ','
               << format_number(a.sem_coop) << ',' << format_number(a.mean_zf) << ',' << format_number(a.sem_zf)
               << ',' << format_number(a.mean_ideal) << ',' << format_number(a.norm_capacity) << '\n';
        }
    }

    namespace detail
    {
        // JSON has no NaN; not-applicable values become null.
        inline nlohmann::json number_or_null(double x)
        {
            return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x);
        }

        inline nlohmann::json point_json(const grid_point &pt)
        {
            return {{"P", pt.users},
                    {"b", pt.bits},
                    {"snr_db", pt.snr_db},
                    {"gamma_db", number_or_null(pt.gamma_db)},
                    {"bw_ratio", number_or_null(pt.bw_ratio)}};
        }
    }

    /// JSON mirror of both CSV tables plus the config that produced them.
    inline nlohmann::json result_to_json(const experiment_config &cfg, const experiment_result &res)
    {
        using detail::number_or_null;
        nlohmann::json trials = nlohmann::json::array();
        for (const auto &r : res.records)
            trials.push_back({{"point", detail::point_json(r.point)},
                              {"trial", r.trial},
                              {"capacity_coop", number_or_null(r.capacity_coop)},
                              {"capacity_zf", number_or_null(r.capacity_zf)},
                              {"capacity_ideal", number_or_null(r.capacity_ideal)},
                              {"capacity_bound", number_or_null(r.capacity_bound)},
                              {"cond_fail", r.cond_fail},
                              {"overload_rate", number_or_null(r.overload_rate)}});
        nlohmann::json aggregates = nlohmann::json::array();
        for (const auto &a : res.aggregates)
            aggregates.push_back({{"point", detail::point_json(a.point)},
                                  {"trials", a.trials},
                                  {"cond_fail", a.cond_fail},
                                  {"mean_bound", number_or_null(a.mean_bound)},
                                  {"mean_overload_rate", number_or_null(a.mean_overload_rate)},
                                  {"mean_coop", number_or_null(a.mean_coop)},
                                  {"sem_coop", number_or_null(a.sem_coop)},
                                  {"mean_zf", number_or_null(a.mean_zf)},
                                  {"sem_zf", number_or_null(a.sem_zf)},
                                  {"mean_ideal", number_or_null(a.mean_ideal)},
                                  {"norm_capacity", number_or_null(a.norm_capacity)}});
        return {{"config", config_to_json(cfg)}, {"trials", std::move(trials)}, {"aggregates", std::move(aggregates)}};
    }
}

#endif
