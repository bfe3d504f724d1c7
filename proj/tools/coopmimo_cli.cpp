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


// Command-line front end: run sweeps from JSON configs or built-in presets.

#include <coopmimo.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;

namespace
{
    enum exit_code : int
    {
        ok = 0,
        other_failure = 1,
        bad_config = 2,
        numerical_failure = 3,
    };

    coopmimo::experiment_config load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw coopmimo::config_error("cannot open config file " + path);
        nlohmann::json j;
        try
        {
            in >> j;
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw coopmimo::config_error(std::string("config is not valid JSON: ") + e.what());
        }
        return coopmimo::config_from_json(j);
    }

    void write_outputs(const coopmimo::experiment_config &cfg, const coopmimo::experiment_result &res,
                       const fs::path &out_dir, bool with_json)
    {
        fs::create_directories(out_dir);
        auto open = [](const fs::path &p) {
            std::ofstream f(p, std::ios::binary);
            if (!f)
                throw std::runtime_error("cannot write " + p.string());
            return f;
        };
        {
            auto f = open(out_dir / "trials.csv");
            coopmimo::write_trials_csv(f, cfg, res);
        }
        {
            auto f = open(out_dir / "aggregate.csv");
            coopmimo::write_aggregate_csv(f, cfg, res);
        }
        if (with_json)
        {
            auto f = open(out_dir / "results.json");
            f << coopmimo::result_to_json(cfg, res).dump(1) << '\n';
        }
    }

    void run_and_write(const coopmimo::experiment_config &cfg, const fs::path &out_dir, bool with_json,
                       unsigned threads)
    {
        const auto res = coopmimo::run_experiment(cfg, threads);
        write_outputs(cfg, res, out_dir, with_json);
        std::size_t failures = 0;
        for (const auto &a : res.aggregates)
            failures += a.cond_fail;
        std::cerr << "wrote " << res.records.size() << " trial records and " << res.aggregates.size()
                  << " aggregate rows to " << out_dir.string();
        if (failures)
            std::cerr << " (" << failures << " ill-conditioned trial evaluations excluded)";
        std::cerr << '\n';
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Cascaded-precoding massive MIMO with D2D receiver cooperation: Monte Carlo capacity sweeps"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: available parallelism)");

    auto *run = app.add_subcommand("run", "Run the sweep described by a JSON config");
    std::string config_path, out_dir;
    bool with_json = false;
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_flag("--json", with_json, "Also write results.json");

    auto *preset = app.add_subcommand("preset", "Run a built-in figure preset");
    std::string preset_name;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    preset->add_option("name", preset_name, "Preset name")
        ->required()
        ->check(CLI::IsMember(coopmimo::preset_names()));
    preset->add_option("--out", out_dir, "Output directory")->required();
    auto *trials_opt = preset->add_option("--trials", trials, "Override the number of trials")
                           ->check(CLI::PositiveNumber);
    auto *seed_opt = preset->add_option("--seed", seed, "Override the master seed");
    preset->add_flag("--json", with_json, "Also write results.json");

    auto *validate = app.add_subcommand("validate", "Check a config file and print it normalized");
    validate->add_option("--config", config_path, "Experiment config (JSON)")->required();

    auto *codebook = app.add_subcommand("codebook", "Generate a decoding codebook and write it to a file");
    std::size_t users = 4;
    unsigned bits = 6;
    std::uint64_t codebook_seed = 1;
    std::string codebook_path, format = "json";
    codebook->add_option("--users", users, "Users P")->check(CLI::PositiveNumber);
    codebook->add_option("--bits", bits, "Codebook bits b");
    codebook->add_option("--seed", codebook_seed, "Codebook seed");
    codebook->add_option("--out", codebook_path, "Output file")->required();
    codebook->add_option("--format", format, "json or binary")->check(CLI::IsMember({"json", "binary"}));

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            run_and_write(load_config(config_path), out_dir, with_json, threads);
        }
        else if (*preset)
        {
            auto cfg = coopmimo::preset_config(preset_name);
            if (*trials_opt)
                cfg.num_trials = trials;
            if (*seed_opt)
                cfg.master_seed = seed;
            cfg.validate();
            run_and_write(cfg, out_dir, with_json, threads);
        }
        else if (*validate)
        {
            const auto cfg = load_config(config_path);
            std::cout << coopmimo::config_to_json(cfg).dump(2) << '\n'
                      << "config ok: " << coopmimo::enumerate_grid(cfg).size() << " grid points x " << cfg.num_trials
                      << " trials\n";
        }
        else if (*codebook)
        {
            auto rng = coopmimo::make_rng(codebook_seed, {users});
            const auto book = coopmimo::generate_codebook(users, bits, rng);
            if (format == "binary")
            {
                coopmimo::save_codebook_binary(book, codebook_path);
            }
            else
            {
                std::ofstream f(codebook_path);
                if (!f)
                    throw std::runtime_error("cannot write " + codebook_path);
                f << coopmimo::codebook_to_json(book).dump() << '\n';
            }
        }
    }
    catch (const coopmimo::config_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return bad_config;
    }
    catch (const coopmimo::ill_conditioned_channel &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return numerical_failure;
    }
    catch (const coopmimo::resource_limit &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return bad_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return other_failure;
    }
    return ok;
}
