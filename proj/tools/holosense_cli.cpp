// SPDX-License-Identifier: Apache-2.0
//
// holosense: radio-image sensing workbench for large intelligent surfaces
// Copyright (C) 2026 The holosense authors
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

// holosense command line: scene validation, dataset generation, training and sweeps.
//
//   holosense scene validate <config>
//   holosense generate <config> --out DIR [--dump-fields]
//   holosense train-eval <dir> [--c-grid 1e-4,1e-3] [--split grouped|random] [--k 5] [--seed N]
//   holosense sweep <config> --axis snr|spacing|aperture|averaging --out CSV
//   holosense baseline <config> --out CSV

#include "holosense/channel.hpp"
#include "holosense/errors.hpp"
#include "holosense/experiment.hpp"
#include "holosense/scene.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
    using namespace holosense;

    void write_file(const std::string &path, const std::string &text)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os || !os.write(text.data(), std::streamsize(text.size())))
            throw IoError("cannot write " + path);
    }

    std::vector<double> parse_list(const std::string &text)
    {
        std::vector<double> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(item, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != item.size())
                throw ConfigError("cannot parse '" + item + "' in list '" + text + "'");
            out.push_back(v);
        }
        if (out.empty())
            throw ConfigError("empty list");
        return out;
    }

    int cmd_validate(const std::string &config_path)
    {
        const auto cfg = scene::load_scene_config(config_path);
        const auto s = scene::build_scene(cfg);
        std::printf("scene ok: hall %gx%gx%g m, lambda %.6f m, LIS %dx%d (spacing %.6f m, aperture %.4fx%.4f m), "
                    "route %zu points, offset %.3f m\n",
                    s.hall.width_m, s.hall.depth_m, s.hall.height_m, s.hall.wavelength(), s.lis.rows, s.lis.cols,
                    s.lis.spacing_m, s.lis.aperture_rows_m(), s.lis.aperture_cols_m(), s.correct.points.size(),
                    s.anomalous.offset_m);
        return 0;
    }

    int cmd_generate(const std::string &config_path, const std::string &out_dir, bool dump_fields)
    {
        const auto cfg = experiment::load_experiment_config(config_path);
        const std::uint64_t seed = experiment::derive_seed(cfg.master_seed, "generate", 0);
        std::vector<experiment::RouteFields> fields;
        const auto ds = experiment::build_dataset(cfg, experiment::default_run(cfg), seed, dump_fields ? &fields : nullptr);
        experiment::write_dataset(ds, out_dir);
        for (const auto &route : fields)
            channel::write_snapshots((std::filesystem::path(out_dir) / ("fields_" + route.route_id + ".lisf")).string(),
                                     route.snapshots);
        std::printf("wrote %zu images to %s (sigma2 = %.6g W)\n", ds.samples.size(), out_dir.c_str(), ds.sigma2);
        return 0;
    }

    struct TrainEvalArgs
    {
        std::string dir;
        std::string c_grid;
        std::string split = "grouped";
        int k = 5;
        std::uint64_t seed = 1;
        bool raw_features = false;
        std::string metrics_path;
        std::string model_path;
    };

    int cmd_train_eval(const TrainEvalArgs &args)
    {
        const auto ds = experiment::read_dataset(args.dir);
        experiment::TrainEvalOptions opts;
        if (!args.c_grid.empty())
            opts.c_grid = parse_list(args.c_grid);
        opts.split_mode = classify::parse_split_mode(args.split);
        opts.k_folds = args.k;
        opts.seed = args.seed;
        opts.standardize = !args.raw_features;
        const auto result = experiment::train_eval(ds, opts);

        const std::filesystem::path dir(args.dir);
        const std::string metrics_path = args.metrics_path.empty() ? (dir / "metrics.csv").string() : args.metrics_path;
        const std::string model_path = args.model_path.empty() ? (dir / "model.txt").string() : args.model_path;
        write_file(metrics_path, experiment::metrics_csv(result, opts));
        write_file((std::filesystem::path(metrics_path).parent_path() / "cv_scores.csv").string(),
                   experiment::cv_scores_csv(result.cv));
        classify::save_model(model_path, result.model);
        std::printf("C=%g PF1=%.4f NF1=%.4f (train %zu, test %zu)\n", result.model.c_reg, result.metrics.pf1,
                    result.metrics.nf1, result.n_train, result.n_test);
        return 0;
    }

    int cmd_sweep(const std::string &config_path, const std::string &axis, const std::string &out)
    {
        const auto cfg = experiment::load_experiment_config(config_path);
        const auto rows = experiment::sweep(cfg, experiment::parse_axis(axis));
        write_file(out, experiment::sweep_csv(rows));
        std::printf("wrote %zu rows to %s\n", rows.size(), out.c_str());
        return 0;
    }

    int cmd_baseline(const std::string &config_path, const std::string &out)
    {
        const auto cfg = experiment::load_experiment_config(config_path);
        const auto rows = experiment::baseline_run(cfg);
        write_file(out, experiment::baseline_csv(rows));
        std::printf("wrote %zu rows to %s\n", rows.size(), out.c_str());
        return 0;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"holosense: LIS radio-image sensing workbench"};
    app.require_subcommand(1);

    auto *scene_cmd = app.add_subcommand("scene", "Scene utilities");
    scene_cmd->require_subcommand(1);
    std::string validate_config;
    auto *validate_cmd = scene_cmd->add_subcommand("validate", "Check a scene config file");
    validate_cmd->add_option("config", validate_config, "Config file")->required();

    std::string gen_config, gen_out;
    bool dump_fields = false;
    auto *gen_cmd = app.add_subcommand("generate", "Simulate routes and write images + manifest");
    gen_cmd->add_option("config", gen_config, "Config file")->required();
    gen_cmd->add_option("--out", gen_out, "Output directory")->required();
    gen_cmd->add_flag("--dump-fields", dump_fields, "Also write per-route LISF field dumps");

    TrainEvalArgs te;
    auto *te_cmd = app.add_subcommand("train-eval", "Train and evaluate the classifier on a dataset directory");
    te_cmd->add_option("dir", te.dir, "Dataset directory")->required();
    te_cmd->add_option("--c-grid", te.c_grid, "Comma-separated C values");
    te_cmd->add_option("--split", te.split, "grouped or random")->check(CLI::IsMember({"grouped", "random"}));
    te_cmd->add_option("--k", te.k, "Cross-validation folds");
    te_cmd->add_option("--seed", te.seed, "Seed for splits and solver");
    te_cmd->add_flag("--raw-features", te.raw_features, "Skip per-feature standardization");
    te_cmd->add_option("--metrics", te.metrics_path, "Metrics CSV path (default DIR/metrics.csv)");
    te_cmd->add_option("--model", te.model_path, "Model file path (default DIR/model.txt)");

    std::string sweep_config, sweep_axis, sweep_out;
    auto *sweep_cmd = app.add_subcommand("sweep", "Regenerate and retrain along one parameter axis");
    sweep_cmd->add_option("config", sweep_config, "Config file")->required();
    sweep_cmd->add_option("--axis", sweep_axis, "snr, spacing, aperture or averaging")
        ->required()
        ->check(CLI::IsMember({"snr", "spacing", "aperture", "averaging"}));
    sweep_cmd->add_option("--out", sweep_out, "Output CSV")->required();

    std::string base_config, base_out;
    auto *base_cmd = app.add_subcommand("baseline", "Compare the LRT oracle with the classifier on a LoS scene");
    base_cmd->add_option("config", base_config, "Config file")->required();
    base_cmd->add_option("--out", base_out, "Output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*validate_cmd)
            return cmd_validate(validate_config);
        if (*gen_cmd)
            return cmd_generate(gen_config, gen_out, dump_fields);
        if (*te_cmd)
            return cmd_train_eval(te);
        if (*sweep_cmd)
            return cmd_sweep(sweep_config, sweep_axis, sweep_out);
        if (*base_cmd)
            return cmd_baseline(base_config, base_out);
    }
    catch (const holosense::Error &e)
    {
        std::fprintf(stderr, "error: %s: %s\n", e.kind().c_str(), e.what());
        return 2;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
