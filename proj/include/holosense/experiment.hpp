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

#ifndef HOLOSENSE_EXPERIMENT_HPP
#define HOLOSENSE_EXPERIMENT_HPP

#include "holosense/channel.hpp"
#include "holosense/classify.hpp"
#include "holosense/holo.hpp"
#include "holosense/scene.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace holosense::experiment
{
    struct Aperture
    {
        int rows = 0;
        int cols = 0;
    };

    struct ExperimentConfig
    {
        scene::SceneConfig scene;

        int snapshots_per_point = 10; // N_s
        int extra_samples = 100;      // S, so N_s' = N_s * S
        double snr_db = 10.0;         // operating SNR; +inf renders noiseless images

        std::vector<double> sweep_snr_db{-10.0, -5.0, 0.0, 5.0, 10.0, 20.0, 30.0};
        std::vector<double> spacing_wavelengths{0.5, 1.0, 2.0};
        std::vector<Aperture> apertures{{8, 8}, {16, 16}, {32, 32}};
        std::vector<int> averaging_samples{1, 100};

        double split_fraction = 0.8;
        classify::SplitMode split_mode = classify::SplitMode::Grouped;
        std::vector<double> c_grid{1e-4, 1e-3, 1e-2, 1e-1, 1.0};
        int k_folds = 5;
        bool standardize = true;
        classify::FeatureConfig features;
        classify::SolverConfig solver;

        std::uint64_t master_seed = 1;
        int threads = 0; // 0 = all hardware threads

        std::vector<double> baseline_snr_db{-10.0, -5.0, 0.0, 5.0, 10.0, 20.0, 30.0};
        int baseline_train_per_class = 200;
        int baseline_trials_per_class = 1000;

        void validate() const;
    };

    // Reads [hall], [lis], [routes], [experiment], [classifier] and [baseline]
    ExperimentConfig load_experiment_config(const std::string &path);

    // hash(master_seed, axis, index), stable across platforms
    std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view axis, std::uint64_t index);

    // One simulation setting; the scene's LIS is rebuilt with these dimensions
    struct RunParams
    {
        double snr_db = 10.0;
        int extra_samples = 1;
        int rows = 32;
        int cols = 32;
        double spacing_wavelengths = 0.5;
    };

    RunParams default_run(const ExperimentConfig &config);

    struct Sample
    {
        holo::HoloImage image;
        std::string route_id;
        int point_index = 0;
        int draw_index = 0;
    };

    struct Dataset
    {
        std::vector<Sample> samples; // route-major, then point, then retained draw
        RunParams params;
        double spacing_m = 0.0;
        double sigma2 = 0.0;
        std::uint64_t seed = 0;
    };

    struct RouteFields
    {
        std::string route_id;
        std::vector<channel::FieldSnapshot> snapshots;
    };

    // Simulates both routes: per point, N_s retained samples, each the mean of S noisy
    // power draws, imaged on the LIS grid. Noise is calibrated on the correct route.
    Dataset build_dataset(const ExperimentConfig &config, const RunParams &params, std::uint64_t seed,
                          std::vector<RouteFields> *fields = nullptr);

    // images/<route>_p<point>_d<draw>.pgm plus manifest.csv (paths relative to 'dir')
    void write_dataset(const Dataset &dataset, const std::string &dir);
    Dataset read_dataset(const std::string &dir);

    struct TrainEvalOptions
    {
        std::vector<double> c_grid{1e-4, 1e-3, 1e-2, 1e-1, 1.0};
        int k_folds = 5;
        classify::SplitMode split_mode = classify::SplitMode::Grouped;
        double split_fraction = 0.8;
        bool standardize = true;
        classify::FeatureConfig features;
        classify::SolverConfig solver;
        std::uint64_t seed = 1;
        int threads = 0;
    };

    TrainEvalOptions train_eval_options(const ExperimentConfig &config, std::uint64_t seed);

    struct TrainEvalResult
    {
        classify::Metrics metrics;
        classify::SvmModel model;
        classify::CvResult cv;
        std::size_t n_train = 0;
        std::size_t n_test = 0;
    };

    // Grouped (by point index) holdout, CV over the C grid on the training side,
    // final fit on the whole training side, metrics on the held-out side.
    TrainEvalResult train_eval(const Dataset &dataset, const TrainEvalOptions &options);

    std::string feature_digest(const TrainEvalOptions &options);

    std::string metrics_csv(const TrainEvalResult &result, const TrainEvalOptions &options);
    std::string cv_scores_csv(const classify::CvResult &cv);

    enum class SweepAxis
    {
        Snr,
        Spacing,
        Aperture,
        Averaging
    };

    SweepAxis parse_axis(const std::string &text);
    const char *to_string(SweepAxis axis);

    struct SweepRow
    {
        double axis_value = 0.0;
        double snr_db = 0.0;
        int extra_samples = 1;
        double spacing_m = 0.0;
        int rows = 0;
        int cols = 0;
        double pf1 = 0.0;
        double nf1 = 0.0;
        std::uint64_t seed = 0;
    };

    // Grid points of an axis, in output order
    std::vector<std::pair<double, RunParams>> sweep_grid(const ExperimentConfig &config, SweepAxis axis);

    std::vector<SweepRow> sweep(const ExperimentConfig &config, SweepAxis axis);
    std::string sweep_csv(const std::vector<SweepRow> &rows);

    struct BaselineRow
    {
        double snr_db = 0.0;
        double lrt_error = 0.0;
        double svm_error = 0.0;
        int trials = 0;
    };

    // LRT oracle versus the image classifier on the middle point of the correct route
    // and its anomalous twin. Requires a pure-LoS scene (max_reflection_order = 0).
    std::vector<BaselineRow> baseline_run(const ExperimentConfig &config);
    std::string baseline_csv(const std::vector<BaselineRow> &rows);

} // namespace holosense::experiment

#endif
