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

#ifndef HOLOSENSE_CLASSIFY_HPP
#define HOLOSENSE_CLASSIFY_HPP

#include "holosense/holo.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace holosense::classify
{
    using scene::RouteLabel;

    // Block-statistics extractor: area-resample to resample_size^2, split into
    // blocks of block_size^2 and emit {mean, std, mean |dx|, mean |dy|} per block,
    // then scale the whole vector to unit Euclidean norm.
    struct FeatureConfig
    {
        int resample_size = 64;
        int block_size = 8;

        int dimension() const;
        std::string describe() const;
    };

    struct FeatureVector
    {
        std::vector<double> values;
        std::string source_image_id;
    };

    // Area-averaging resampler; output is row-major doubles in pixel units
    std::vector<double> resample_area(const holo::HoloImage &image, int out_rows, int out_cols);

    FeatureVector extract_features(const holo::HoloImage &image, const FeatureConfig &config = {});

    // Feature CSV: header "image_id,label,f_1,...,f_n", label 0 = Correct, 1 = Anomalous
    struct LabeledFeatures
    {
        std::vector<FeatureVector> vectors;
        std::vector<RouteLabel> labels;
    };

    LabeledFeatures import_features(const std::string &path);
    void export_features(const std::string &path, const LabeledFeatures &data);

    // Dual solver for the L2-regularized hinge loss with an unpenalized bias
    //   min 1/2 |w|^2 + C sum_i max(0, 1 - y_i (w.x_i + b)).
    // Pairwise (SMO) updates with second-order working-set selection over a cached
    // Gram matrix, so memory grows as n^2 doubles. The seed fixes the scan order
    // that breaks ties between equally violating samples.
    struct SolverConfig
    {
        int max_epochs = 1000;   // one epoch = n pair updates
        double tolerance = 1e-3; // stop when the maximal KKT violation falls below this

        std::string describe() const;
    };

    struct SvmModel
    {
        std::vector<double> weights;
        double bias = 0.0;
        double c_reg = 1.0;
        std::string feature_config_digest;
    };

    // Per-epoch objectives. primal_objective is the incumbent (returned) model's
    // objective, dual_objective the minimization-form dual 1/2 |w|^2 - sum alpha.
    // The last entry is taken at termination.
    struct TrainingTrace
    {
        std::vector<double> primal_objective;
        std::vector<double> dual_objective;
        int epochs = 0;
        bool converged = false;
    };

    // labels are +1 (Anomalous) / -1 (Correct)
    SvmModel train_svm(std::span<const FeatureVector> features, std::span<const int> labels, double c_reg,
                       std::uint64_t seed, const SolverConfig &solver = {}, TrainingTrace *trace = nullptr);

    double primal_objective(const SvmModel &model, std::span<const FeatureVector> features,
                            std::span<const int> labels);

    struct Prediction
    {
        RouteLabel label;
        double margin;
    };

    // margin = w.x + b; margin >= 0 predicts Anomalous
    Prediction predict(const SvmModel &model, std::span<const double> x);

    // Model file: text header {dim, C, digest}, then weights and bias with 17 significant digits
    void save_model(const std::string &path, const SvmModel &model);
    SvmModel load_model(const std::string &path);

    // Per-dimension z-scoring fitted on training data
    struct Standardizer
    {
        std::vector<double> mean;
        std::vector<double> scale;

        static Standardizer fit(std::span<const FeatureVector> features);
        FeatureVector apply(const FeatureVector &f) const;

        // Rewrites a model trained on standardized inputs into one that takes raw features
        SvmModel fold_into(const SvmModel &model) const;
    };

    struct Metrics
    {
        double precision_pos = 0.0; // PP
        double recall_pos = 0.0;    // RP
        double precision_neg = 0.0; // PN
        double recall_neg = 0.0;    // RN
        double pf1 = 0.0;
        double nf1 = 0.0;
        int tp = 0, fp = 0, tn = 0, fn = 0;
        bool degenerate = false; // some ratio had an empty denominator and was set to 0
    };

    // Positive class is Anomalous
    Metrics compute_metrics(std::span<const RouteLabel> predictions, std::span<const RouteLabel> truths);

    enum class SplitMode
    {
        Grouped,
        Random
    };

    SplitMode parse_split_mode(const std::string &text);
    const char *to_string(SplitMode mode);

    // Stratified assignment of whole groups to k folds. Groups are stratified by their
    // label composition, shuffled from the seed and dealt round robin, so fold sizes
    // (in groups) differ by at most one. Returns the fold of every sample.
    std::vector<int> assign_folds(std::span<const RouteLabel> labels, std::span<const int> groups, int k,
                                  std::uint64_t seed);

    struct HoldoutSplit
    {
        std::vector<std::size_t> train;
        std::vector<std::size_t> test;
    };

    // Stratified group split with roughly train_fraction of the groups on the training side
    HoldoutSplit split_holdout(std::span<const RouteLabel> labels, std::span<const int> groups,
                               double train_fraction, std::uint64_t seed);

    struct CvScore
    {
        double c_reg = 0.0;
        double mean_pf1 = 0.0;
        std::vector<double> fold_pf1;
    };

    struct CvResult
    {
        double best_c = 0.0;
        std::vector<CvScore> scores;
    };

    struct CvOptions
    {
        SolverConfig solver;
        bool standardize = true;
    };

    // k-fold model selection over c_grid by mean validation PF1; ties go to the smaller C
    CvResult cross_validate(std::span<const FeatureVector> features, std::span<const RouteLabel> labels,
                            std::span<const int> groups, std::span<const double> c_grid, int k, std::uint64_t seed,
                            const CvOptions &options = {});

    // Fits a model on (optionally standardized) features and returns one that takes raw features
    SvmModel fit_model(std::span<const FeatureVector> features, std::span<const RouteLabel> labels, double c_reg,
                       std::uint64_t seed, const CvOptions &options, const std::string &digest);

} // namespace holosense::classify

#endif
