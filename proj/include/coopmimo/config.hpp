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


#ifndef COOPMIMO_CONFIG_HPP
#define COOPMIMO_CONFIG_HPP

#include "codebook.hpp"
#include "errors.hpp"
#include "types.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace coopmimo
{
    enum class rsi_mode
    {
        ideal,
        quantized
    };

    inline std::string_view to_string(rsi_mode m)
    {
        return m == rsi_mode::ideal ? "ideal-rsi" : "quantized-rsi";
    }

    inline rsi_mode parse_rsi_mode(std::string_view s)
    {
        if (s == "ideal-rsi")
            return rsi_mode::ideal;
        if (s == "quantized-rsi")
            return rsi_mode::quantized;
        throw config_error("unknown mode '" + std::string(s) + "' (expected ideal-rsi or quantized-rsi)");
    }

    inline const std::vector<std::string> &preset_names()
    {
        static const std::vector<std::string> names = {"fig-capacity-vs-snr", "fig-capacity-vs-bits",
                                                       "fig-capacity-vs-bandwidth-snr",
                                                       "fig-capacity-vs-bandwidth-gamma"};
        return names;
    }

    /// Declarative description of a Monte Carlo sweep. The swept grid is the
    /// Cartesian product users x bits x snr x gamma x bandwidth; gamma and
    /// bandwidth only take part in quantized-rsi mode.
    struct experiment_config
    {
        std::size_t num_antennas = 64;
        std::size_t num_users = 4;
        std::size_t effective_dim = 6;
        std::size_t num_paths = 20;
        double sector_center = 0.0;
        double sector_spread = pi;
        std::vector<double> snr_db_grid;
        std::vector<unsigned> b_grid;
        std::vector<std::size_t> user_count_grid; // empty: {num_users}
        double tau = 30.0;
        std::vector<double> gamma_db_grid;
        std::vector<double> bandwidth_ratio_grid;
        std::size_t num_trials = 200;
        std::uint64_t master_seed = 1;
        rsi_mode mode = rsi_mode::ideal;
        std::string figure_preset; // empty: custom
        std::optional<std::uint64_t> codebook_seed;
        bool fixed_environment = false;
        std::size_t codebook_memory_budget = default_codebook_memory_budget;

        std::vector<std::size_t> users_swept() const
        {
            return user_count_grid.empty() ? std::vector<std::size_t>{num_users} : user_count_grid;
        }

        unsigned max_bits() const { return *std::max_element(b_grid.begin(), b_grid.end()); }

        std::uint64_t effective_codebook_seed() const
        {
            return codebook_seed ? *codebook_seed : derive_seed(master_seed, {0xC0DEB00CULL});
        }

        void validate() const
        {
            auto fail = [](const std::string &what) { throw config_error("invalid config: " + what); };
            if (num_antennas == 0 || num_users == 0 || effective_dim == 0 || num_paths == 0)
                fail("M, P, D and L must be positive");
            if (effective_dim > num_antennas)
                fail("D must not exceed M");
            for (auto p : users_swept())
            {
                if (p == 0)
                    fail("user counts must be positive");
                if (p > effective_dim)
                    fail("D must be at least every swept user count (zero-forcing feasibility)");
            }
            if (!std::isfinite(sector_center) || sector_center < -pi / 2 || sector_center >= pi / 2)
                fail("sector_center must lie in [-pi/2, pi/2)");
            if (!std::isfinite(sector_spread) || sector_spread <= 0.0)
                fail("sector_spread must be positive");
            if (snr_db_grid.empty() || b_grid.empty())
                fail("snr_db_grid and b_grid must be nonempty");
            for (double s : snr_db_grid)
                if (!std::isfinite(s))
                    fail("snr_db_grid entries must be finite");
            if (num_trials == 0)
                fail("num_trials must be at least 1");
            if (!(tau > 0.0) || !std::isfinite(tau))
                fail("tau must be positive");
            if (mode == rsi_mode::quantized)
            {
                if (gamma_db_grid.empty() || bandwidth_ratio_grid.empty())
                    fail("quantized-rsi mode needs nonempty gamma_db_grid and bandwidth_ratio_grid");
                for (double g : gamma_db_grid)
                    if (!std::isfinite(g))
                        fail("gamma_db_grid entries must be finite");
                for (double r : bandwidth_ratio_grid)
                    if (!(r > 0.0) || !std::isfinite(r))
                        fail("bandwidth_ratio_grid entries must be positive");
            }
            if (!figure_preset.empty() &&
                std::find(preset_names().begin(), preset_names().end(), figure_preset) == preset_names().end())
                fail("unknown figure_preset '" + figure_preset + "'");
            for (auto p : users_swept())
                if (max_bits() >= 48 || codebook_bytes(p, max_bits()) > codebook_memory_budget)
                    fail("codebook for P=" + std::to_string(p) + ", b=" + std::to_string(max_bits()) +
                         " exceeds the memory budget");
        }
    };

    // ---- JSON ------------------------------------------------------------

    namespace detail
    {
        template <typename T>
        T get_unsigned(const nlohmann::json &j, const char *key)
        {
            const auto &v = j.at(key);
            if (!v.is_number_unsigned())
                throw config_error(std::string("config field '") + key + "' must be a nonnegative integer");
            return v.get<T>();
        }

        template <typename T>
        std::vector<T> get_unsigned_list(const nlohmann::json &j, const char *key)
        {
            std::vector<T> out;
            for (const auto &v : j.at(key))
            {
                if (!v.is_number_unsigned())
                    throw config_error(std::string("config field '") + key + "' must hold nonnegative integers");
                out.push_back(v.get<T>());
            }
            return out;
        }
    }

    inline experiment_config config_from_json(const nlohmann::json &j)
    {
        static const std::set<std::string> known = {
            "M",           "P",          "D",           "L",          "sector_center", "sector_spread",
            "snr_db_grid", "b_grid",     "user_count_grid", "tau",    "gamma_db_grid", "bandwidth_ratio_grid",
            "num_trials",  "master_seed", "mode",       "figure_preset", "codebook_seed", "fixed_environment"};
        static const std::set<std::string> required = {"M", "P", "D", "L", "snr_db_grid", "b_grid",
                                                       "num_trials", "master_seed", "mode"};
        if (!j.is_object())
            throw config_error("config must be a JSON object");
        for (const auto &[key, _] : j.items())
            if (!known.contains(key))
                throw config_error("unknown config field '" + key + "'");
        for (const auto &key : required)
            if (!j.contains(key))
                throw config_error("missing config field '" + key + "'");

        experiment_config c;
        try
        {
            c.num_antennas = detail::get_unsigned<std::size_t>(j, "M");
            c.num_users = detail::get_unsigned<std::size_t>(j, "P");
            c.effective_dim = detail::get_unsigned<std::size_t>(j, "D");
            c.num_paths = detail::get_unsigned<std::size_t>(j, "L");
            c.sector_center = j.value("sector_center", 0.0);
            c.sector_spread = j.value("sector_spread", pi);
            c.snr_db_grid = j.at("snr_db_grid").get<std::vector<double>>();
            c.b_grid = detail::get_unsigned_list<unsigned>(j, "b_grid");
            if (j.contains("user_count_grid"))
                c.user_count_grid = detail::get_unsigned_list<std::size_t>(j, "user_count_grid");
            c.tau = j.value("tau", 30.0);
            c.gamma_db_grid = j.value("gamma_db_grid", std::vector<double>{});
            c.bandwidth_ratio_grid = j.value("bandwidth_ratio_grid", std::vector<double>{});
            c.num_trials = detail::get_unsigned<std::size_t>(j, "num_trials");
            c.master_seed = detail::get_unsigned<std::uint64_t>(j, "master_seed");
            c.mode = parse_rsi_mode(j.at("mode").get<std::string>());
            c.figure_preset = j.value("figure_preset", std::string{});
            if (j.contains("codebook_seed"))
                c.codebook_seed = detail::get_unsigned<std::uint64_t>(j, "codebook_seed");
            c.fixed_environment = j.value("fixed_environment", false);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw config_error(std::string("config field has wrong type: ") + e.what());
        }
        c.validate();
        return c;
    }

    inline nlohmann::json config_to_json(const experiment_config &c)
    {
        nlohmann::json j = {{"M", c.num_antennas},
                            {"P", c.num_users},
                            {"D", c.effective_dim},
                            {"L", c.num_paths},
                            {"sector_center", c.sector_center},
                            {"sector_spread", c.sector_spread},
                            {"snr_db_grid", c.snr_db_grid},
                            {"b_grid", c.b_grid},
                            {"tau", c.tau},
                            {"num_trials", c.num_trials},
                            {"master_seed", c.master_seed},
                            {"mode", std::string(to_string(c.mode))},
                            {"fixed_environment", c.fixed_environment}};
        if (!c.user_count_grid.empty())
            j["user_count_grid"] = c.user_count_grid;
        if (c.mode == rsi_mode::quantized)
        {
            j["gamma_db_grid"] = c.gamma_db_grid;
            j["bandwidth_ratio_grid"] = c.bandwidth_ratio_grid;
        }
        if (!c.figure_preset.empty())
            j["figure_preset"] = c.figure_preset;
        if (c.codebook_seed)
            j["codebook_seed"] = *c.codebook_seed;
        return j;
    }

    // ---- Presets -----------------------------------------------------------
    // Array and channel settings shared by all presets: M=64, L=20, D=6, full
    // [-pi/2, pi/2) sector, tau=30, 200 trials.

    inline experiment_config preset_config(std::string_view name)
    {
        experiment_config c;
        c.figure_preset = std::string(name);
        c.master_seed = 20170521;
        if (name == "fig-capacity-vs-snr")
        {
            for (int k = 0; k <= 8; ++k)
                c.snr_db_grid.push_back(-10.0 + 2.5 * k);
            c.b_grid = {6, 12};
        }
        else if (name == "fig-capacity-vs-bits")
        {
            c.snr_db_grid = {-5.0};
            c.user_count_grid = {3, 4, 5};
            for (unsigned b = 1; b <= 16; ++b)
                c.b_grid.push_back(b);
        }
        else if (name == "fig-capacity-vs-bandwidth-snr")
        {
            // gamma = 10 dB puts the smallest ratio at c = 2 and the largest at c = 26.
            c.mode = rsi_mode::quantized;
            c.snr_db_grid = {-10.0, -5.0, 0.0, 5.0, 10.0};
            c.b_grid = {12};
            c.gamma_db_grid = {10.0};
            c.bandwidth_ratio_grid = {0.6, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
        }
        else if (name == "fig-capacity-vs-bandwidth-gamma")
        {
            // Every (gamma, ratio) pair grants c >= 2.
            c.mode = rsi_mode::quantized;
            c.snr_db_grid = {-5.0};
            c.b_grid = {12};
            c.gamma_db_grid = {5.0, 10.0, 15.0, 20.0};
            c.bandwidth_ratio_grid = {1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
        }
        else
        {
            throw config_error("unknown preset '" + std::string(name) + "'");
        }
        c.validate();
        return c;
    }
}

#endif
