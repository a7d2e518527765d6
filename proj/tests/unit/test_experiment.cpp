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

#include "holosense/errors.hpp"
#include "holosense/experiment.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>
#include <sstream>

using namespace holosense;
using namespace holosense::experiment;
namespace fs = std::filesystem;

namespace
{
    const std::string kSmallScene = "[hall]\nwidth_m = 8\ndepth_m = 6\nheight_m = 3\nmax_reflection_order = 1\n"
                                    "[lis]\nrows = 8\ncols = 8\ncenter_m = 4, 0.1, 1.5\n"
                                    "[routes]\nstart_m = 3, 1.5, 1\nend_m = 5, 1.5, 1\nn_points = 12\noffset_m = 0.5\n";

    ExperimentConfig load_text(const std::string &name, const std::string &text)
    {
        const auto dir = testing::scratch_dir("cfg_" + name);
        testing::spit(dir / "c.ini", text);
        return load_experiment_config((dir / "c.ini").string());
    }

    ExperimentConfig small_config()
    {
        return load_text("small", kSmallScene + "[experiment]\nsnapshots_per_point = 3\nextra_samples = 4\n"
                                                "snr_db = 10\nmaster_seed = 5\nsweep_snr_db = 0, 20\n"
                                                "apertures = 4x4, 8x8\naveraging_samples = 1, 4\n"
                                                "[classifier]\nc_grid = 0.01, 1\nk_folds = 3\n");
    }

    std::string config_path(const std::string &name) { return std::string(HOLOSENSE_SOURCE_DIR) + "/configs/" + name; }
} // namespace

TEST_CASE("experiment config parsing")
{
    const auto cfg = small_config();
    CHECK(cfg.snapshots_per_point == 3);
    CHECK(cfg.extra_samples == 4);
    CHECK(cfg.sweep_snr_db == std::vector<double>{0.0, 20.0});
    REQUIRE(cfg.apertures.size() == 2);
    CHECK(cfg.apertures[0].rows == 4);
    CHECK(cfg.apertures[1].cols == 8);
    CHECK(cfg.c_grid == std::vector<double>{0.01, 1.0});
    CHECK(cfg.k_folds == 3);
    CHECK(cfg.master_seed == 5);
    CHECK(cfg.scene.routes.n_points == 12);

    const auto inf = load_text("inf", kSmallScene + "[experiment]\nsnr_db = inf\n");
    CHECK(std::isinf(inf.snr_db));

    CHECK_THROWS_AS(load_text("bad_s", kSmallScene + "[experiment]\nextra_samples = 0\n"), ConfigError);
    CHECK_THROWS_AS(load_text("bad_split", kSmallScene + "[experiment]\nsplit_fraction = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(load_text("bad_mode", kSmallScene + "[experiment]\nsplit_mode = sideways\n"), ConfigError);
    CHECK_THROWS_AS(load_text("bad_ap", kSmallScene + "[experiment]\napertures = 8by8\n"), ConfigError);
}

TEST_CASE("shipped configs load")
{
    for (const char *name : {"desk.ini", "noiseless_los.ini", "toy_los.ini", "large_hall.ini"})
    {
        CAPTURE(name);
        CHECK_NOTHROW(load_experiment_config(config_path(name)));
    }
}

TEST_CASE("derived seeds are stable and distinct")
{
    CHECK(derive_seed(1, "snr", 0) == derive_seed(1, "snr", 0));
    std::set<std::uint64_t> seen;
    for (const char *axis : {"snr", "spacing", "aperture", "averaging"})
        for (std::uint64_t g = 0; g < 10; ++g)
            seen.insert(derive_seed(1, axis, g));
    CHECK(seen.size() == 40);
    CHECK(derive_seed(1, "snr", 0) != derive_seed(2, "snr", 0));
}

TEST_CASE("dataset shape, labels and determinism")
{
    const auto cfg = small_config();
    const auto params = default_run(cfg);
    const auto a = build_dataset(cfg, params, 99);
    CHECK(a.samples.size() == 2u * 12u * 3u);
    CHECK(a.sigma2 > 0.0);
    std::map<std::string, int> per_route;
    for (const auto &s : a.samples)
    {
        per_route[s.route_id]++;
        CHECK(s.image.rows == 8);
        CHECK(s.image.cols == 8);
        CHECK(s.image.label == (s.route_id == "correct" ? scene::RouteLabel::Correct : scene::RouteLabel::Anomalous));
    }
    CHECK(per_route["correct"] == 36);
    CHECK(per_route["anomalous"] == 36);

    const auto b = build_dataset(cfg, params, 99);
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        CHECK(a.samples[i].image.pixels == b.samples[i].image.pixels);

    auto threaded = cfg;
    threaded.threads = 4;
    const auto c = build_dataset(threaded, params, 99);
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        CHECK(a.samples[i].image.pixels == c.samples[i].image.pixels);

    const auto d = build_dataset(cfg, params, 100);
    bool differs = false;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        differs = differs || a.samples[i].image.pixels != d.samples[i].image.pixels;
    CHECK(differs);
}

TEST_CASE("noiseless dataset repeats the same image per point")
{
    auto cfg = small_config();
    auto params = default_run(cfg);
    params.snr_db = INFINITY;
    const auto ds = build_dataset(cfg, params, 1);
    CHECK(ds.sigma2 == 0.0);
    for (std::size_t i = 0; i + 1 < ds.samples.size(); ++i)
        if (ds.samples[i].point_index == ds.samples[i + 1].point_index &&
            ds.samples[i].route_id == ds.samples[i + 1].route_id)
            CHECK(ds.samples[i].image.pixels == ds.samples[i + 1].image.pixels);
}

TEST_CASE("dataset directory round trip and manifest integrity")
{
    const auto cfg = small_config();
    const auto ds = build_dataset(cfg, default_run(cfg), 7);
    const auto dir = testing::scratch_dir("dataset");
    write_dataset(ds, dir.string());

    std::istringstream manifest(testing::slurp(dir / "manifest.csv"));
    std::string line;
    std::getline(manifest, line);
    CHECK(line == "file_path,label,route_id,point_index,draw_index,snr_db,spacing_m,rows,cols,S");
    int rows = 0, anomalous = 0;
    while (std::getline(manifest, line))
    {
        ++rows;
        const auto comma = line.find(',');
        CHECK(fs::exists(dir / line.substr(0, comma)));
        anomalous += line[comma + 1] == '1';
    }
    CHECK(rows == 72);
    CHECK(anomalous == 36);

    const auto back = read_dataset(dir.string());
    REQUIRE(back.samples.size() == ds.samples.size());
    for (std::size_t i = 0; i < ds.samples.size(); ++i)
    {
        CHECK(back.samples[i].image.pixels == ds.samples[i].image.pixels);
        CHECK(back.samples[i].image.label == ds.samples[i].image.label);
        CHECK(back.samples[i].point_index == ds.samples[i].point_index);
    }
    CHECK(back.params.extra_samples == 4);

    const auto again = testing::scratch_dir("dataset_again");
    write_dataset(build_dataset(cfg, default_run(cfg), 7), again.string());
    CHECK(testing::slurp(again / "manifest.csv") == testing::slurp(dir / "manifest.csv"));
    for (const auto &entry : fs::directory_iterator(dir / "images"))
        CHECK(testing::slurp(entry.path()) == testing::slurp(again / "images" / entry.path().filename()));
}

TEST_CASE("train_eval on a noiseless dataset separates perfectly")
{
    // Line of sight only with a 16x16 aperture: every held-out position is separable
    auto text = kSmallScene + "[experiment]\nsnapshots_per_point = 3\nextra_samples = 4\nmaster_seed = 5\n"
                              "[classifier]\nc_grid = 0.01, 1\nk_folds = 3\n";
    for (const auto &[from, to] : {std::pair<std::string, std::string>{"max_reflection_order = 1", "max_reflection_order = 0"},
                                   {"rows = 8\ncols = 8", "rows = 16\ncols = 16"}})
        text.replace(text.find(from), from.size(), to);
    const auto cfg = load_text("los_toy", text);
    auto params = default_run(cfg);
    params.snr_db = INFINITY;
    const auto ds = build_dataset(cfg, params, 3);
    const auto opts = train_eval_options(cfg, 11);
    const auto result = train_eval(ds, opts);
    CHECK(result.metrics.pf1 == 1.0);
    CHECK(result.metrics.nf1 == 1.0);
    CHECK(result.n_train + result.n_test == ds.samples.size());
    CHECK(result.model.feature_config_digest == feature_digest(opts));

    const auto csv = metrics_csv(result, opts);
    CHECK(csv.rfind("C,PP,RP,PN,RN,PF1,NF1,TP,FP,TN,FN,n_train,n_test,split,seed\n", 0) == 0);
    CHECK(cv_scores_csv(result.cv).find('\n') != std::string::npos);

    Dataset one_class = ds;
    std::erase_if(one_class.samples, [](const Sample &s) { return s.route_id == "anomalous"; });
    CHECK_THROWS_AS(train_eval(one_class, opts), TrainingError);
}

TEST_CASE("sweep grids")
{
    const auto cfg = small_config();
    const auto snr = sweep_grid(cfg, SweepAxis::Snr);
    CHECK(snr.size() == 2);
    const auto avg = sweep_grid(cfg, SweepAxis::Averaging);
    REQUIRE(avg.size() == 4);
    CHECK(avg[0].second.extra_samples == 1);
    CHECK(avg[3].second.extra_samples == 4);
    CHECK(avg[3].second.snr_db == 20.0);

    const auto ap = sweep_grid(cfg, SweepAxis::Aperture);
    CHECK(ap[0].first == 16.0);
    CHECK(ap[1].second.rows == 8);

    auto wide = cfg;
    wide.scene.lis.rows = wide.scene.lis.cols = 33;
    const auto sp = sweep_grid(wide, SweepAxis::Spacing);
    REQUIRE(sp.size() == 3);
    CHECK(sp[0].second.rows == 33);
    CHECK(sp[1].second.rows == 17);
    CHECK(sp[2].second.rows == 9);
    for (const auto &[value, p] : sp)
        CHECK(double(p.rows - 1) * p.spacing_wavelengths == doctest::Approx(16.0));

    CHECK(parse_axis("spacing") == SweepAxis::Spacing);
    CHECK_THROWS_AS(parse_axis("frequency"), ConfigError);
}

TEST_CASE("sweep output is reproducible")
{
    const auto cfg = small_config();
    const auto a = sweep_csv(sweep(cfg, SweepAxis::Aperture));
    const auto b = sweep_csv(sweep(cfg, SweepAxis::Aperture));
    CHECK(a == b);
    CHECK(a.rfind("axis_value,snr_db,S,spacing,rows,cols,PF1,NF1,seed\n", 0) == 0);
    std::size_t lines = 0;
    for (const char ch : a)
        lines += ch == '\n';
    CHECK(lines == 3);
}

TEST_CASE("desk LoS scene at 20 dB reaches PF1 >= 0.95")
{
    auto cfg = load_experiment_config(config_path("desk.ini"));
    cfg.scene.hall.max_reflection_order = 0;
    auto params = default_run(cfg);
    params.snr_db = 20.0;
    const std::uint64_t seed = derive_seed(cfg.master_seed, "los-20db", 0);
    const auto result = train_eval(build_dataset(cfg, params, seed), train_eval_options(cfg, seed));
    CHECK(result.metrics.pf1 >= 0.95);
}

TEST_CASE("baseline comparison on the toy scene")
{
    auto cfg = load_experiment_config(config_path("toy_los.ini"));
    SUBCASE("oracle is never worse than the classifier")
    {
        const auto rows = baseline_run(cfg);
        REQUIRE(rows.size() == cfg.baseline_snr_db.size());
        for (const auto &r : rows)
        {
            CAPTURE(r.snr_db);
            CHECK(r.trials == 2 * cfg.baseline_trials_per_class);
            CHECK(r.lrt_error <= r.svm_error + 0.05);
        }
        CHECK(baseline_csv(rows).rfind("snr_db,lrt_error,svm_error,trials\n", 0) == 0);
    }
    SUBCASE("vanishing noise: both detectors are exact")
    {
        cfg.baseline_snr_db = {80.0};
        cfg.baseline_trials_per_class = 200;
        const auto rows = baseline_run(cfg);
        CHECK(rows[0].lrt_error == 0.0);
        CHECK(rows[0].svm_error == 0.0);
    }
    SUBCASE("multipath scenes are rejected")
    {
        cfg.scene.hall.max_reflection_order = 1;
        CHECK_THROWS_AS(baseline_run(cfg), ConfigError);
    }
}
