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

#include "holosense/classify.hpp"

#include "holosense/counter_rng.hpp"
#include "holosense/errors.hpp"
#include "ini_util.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace holosense::classify
{
    namespace
    {
        struct AxisWeight
        {
            int source;
            double weight;
        };

        // For each output cell, the source cells it overlaps and the normalized overlap
        std::vector<std::vector<AxisWeight>> area_weights(int in, int out)
        {
            auto table = std::vector<std::vector<AxisWeight>>(std::size_t(out));
            const double ratio = double(in) / double(out);
            for (int o = 0; o < out; ++o)
            {
                const double lo = double(o) * ratio;
                const double hi = double(o + 1) * ratio;
                const int first = int(std::floor(lo));
                const int last = std::min(in - 1, int(std::ceil(hi)) - 1);
                for (int s = first; s <= last; ++s)
                {
                    const double overlap = std::min(hi, double(s + 1)) - std::max(lo, double(s));
                    if (overlap > 0.0)
                        table[std::size_t(o)].push_back({s, overlap / ratio});
                }
            }
            return table;
        }

        int to_sign(RouteLabel label) { return label == RouteLabel::Anomalous ? 1 : -1; }

        double dot_span(std::span<const double> a, std::span<const double> b)
        {
            double s = 0.0;
            for (std::size_t j = 0; j < a.size(); ++j)
                s += a[j] * b[j];
            return s;
        }

        std::string format_g17(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        double ratio_or_zero(int num, int den, bool &degenerate)
        {
            if (den == 0)
            {
                degenerate = true;
                return 0.0;
            }
            return double(num) / double(den);
        }

        double harmonic(double p, double r, bool &degenerate)
        {
            if (p + r == 0.0)
            {
                degenerate = true;
                return 0.0;
            }
            return 2.0 * p * r / (p + r);
        }

        std::vector<int> signs_of(std::span<const RouteLabel> labels)
        {
            std::vector<int> y(labels.size());
            for (std::size_t i = 0; i < labels.size(); ++i)
                y[i] = to_sign(labels[i]);
            return y;
        }

        // Groups bucketed by (positives, negatives) composition, in deterministic order
        std::map<std::pair<int, int>, std::vector<int>> strata_of(std::span<const RouteLabel> labels,
                                                                   std::span<const int> groups)
        {
            if (labels.size() != groups.size())
                throw ShapeError("labels and groups differ in length");
            std::map<int, std::pair<int, int>> composition;
            for (std::size_t i = 0; i < labels.size(); ++i)
            {
                auto &c = composition[groups[i]];
                (labels[i] == RouteLabel::Anomalous ? c.first : c.second) += 1;
            }
            std::map<std::pair<int, int>, std::vector<int>> strata;
            for (const auto &[group, comp] : composition)
                strata[comp].push_back(group);
            return strata;
        }
    } // namespace

    int FeatureConfig::dimension() const
    {
        const int blocks = resample_size / block_size;
        return blocks * blocks * 4;
    }

    std::string FeatureConfig::describe() const
    {
        return "blockstats(resample=" + std::to_string(resample_size) + ",block=" + std::to_string(block_size) + ",unitnorm)";
    }

    std::vector<double> resample_area(const holo::HoloImage &image, int out_rows, int out_cols)
    {
        if (image.rows < 1 || image.cols < 1 || image.pixels.size() != std::size_t(image.rows) * std::size_t(image.cols))
            throw ShapeError("malformed image");
        const auto wr = area_weights(image.rows, out_rows);
        const auto wc = area_weights(image.cols, out_cols);

        // Columns first, then rows
        std::vector<double> tmp(std::size_t(image.rows) * std::size_t(out_cols), 0.0);
        for (int r = 0; r < image.rows; ++r)
            for (int c = 0; c < out_cols; ++c)
            {
                double acc = 0.0;
                for (const auto &w : wc[std::size_t(c)])
                    acc += w.weight * double(image.at(r, w.source));
                tmp[std::size_t(r) * std::size_t(out_cols) + std::size_t(c)] = acc;
            }
        std::vector<double> out(std::size_t(out_rows) * std::size_t(out_cols), 0.0);
        for (int r = 0; r < out_rows; ++r)
            for (const auto &w : wr[std::size_t(r)])
                for (int c = 0; c < out_cols; ++c)
                    out[std::size_t(r) * std::size_t(out_cols) + std::size_t(c)] +=
                        w.weight * tmp[std::size_t(w.source) * std::size_t(out_cols) + std::size_t(c)];
        return out;
    }

    FeatureVector extract_features(const holo::HoloImage &image, const FeatureConfig &config)
    {
        const int n = config.resample_size;
        const int b = config.block_size;
        if (n < 1 || b < 2 || n % b != 0)
            throw ShapeError("resample size must be a multiple of the block size (>= 2)");
        const std::vector<double> px = resample_area(image, n, n);
        const auto at = [&](int r, int c) { return px[std::size_t(r) * std::size_t(n) + std::size_t(c)]; };

        const int blocks = n / b;
        FeatureVector f;
        f.values.reserve(std::size_t(config.dimension()));
        const double cells = double(b) * double(b);
        const double pairs = double(b) * double(b - 1);
        for (int br = 0; br < blocks; ++br)
            for (int bc = 0; bc < blocks; ++bc)
            {
                const int r0 = br * b, c0 = bc * b;
                double sum = 0.0;
                for (int r = r0; r < r0 + b; ++r)
                    for (int c = c0; c < c0 + b; ++c)
                        sum += at(r, c);
                const double mean = sum / cells;
                double var = 0.0, dx = 0.0, dy = 0.0;
                for (int r = r0; r < r0 + b; ++r)
                    for (int c = c0; c < c0 + b; ++c)
                    {
                        const double d = at(r, c) - mean;
                        var += d * d;
                        if (c + 1 < c0 + b)
                            dx += std::abs(at(r, c + 1) - at(r, c));
                        if (r + 1 < r0 + b)
                            dy += std::abs(at(r + 1, c) - at(r, c));
                    }
                f.values.push_back(mean);
                f.values.push_back(std::sqrt(var / cells));
                f.values.push_back(dx / pairs);
                f.values.push_back(dy / pairs);
            }

        const double len = std::sqrt(dot_span(f.values, f.values));
        if (len > 0.0)
            for (auto &v : f.values)
                v /= len;
        return f;
    }

    LabeledFeatures import_features(const std::string &path)
    {
        std::ifstream is(path);
        if (!is)
            throw IoError("cannot open " + path);
        std::string line;
        if (!std::getline(is, line))
            throw FormatError("feature CSV: missing header");
        const auto header = detail::split(detail::trim(line), ',');
        if (header.size() < 3 || detail::trim(header[0]) != "image_id" || detail::trim(header[1]) != "label")
            throw FormatError("feature CSV: header must start with image_id,label and name at least one feature");
        const std::size_t dim = header.size() - 2;

        LabeledFeatures out;
        int line_no = 1;
        while (std::getline(is, line))
        {
            ++line_no;
            if (detail::trim(line).empty())
                continue;
            const auto cells = detail::split(detail::trim(line), ',');
            if (cells.size() != dim + 2)
                throw FormatError("feature CSV line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(dim + 2) + " columns, got " + std::to_string(cells.size()));
            const std::string label = detail::trim(cells[1]);
            if (label != "0" && label != "1")
                throw FormatError("feature CSV line " + std::to_string(line_no) + ": label must be 0 or 1");
            FeatureVector f;
            f.source_image_id = detail::trim(cells[0]);
            f.values.reserve(dim);
            for (std::size_t j = 2; j < cells.size(); ++j)
            {
                const std::string cell = detail::trim(cells[j]);
                char *end = nullptr;
                errno = 0;
                const double v = std::strtod(cell.c_str(), &end);
                if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v))
                    throw FormatError("feature CSV line " + std::to_string(line_no) + ": non-finite value '" + cell + "'");
                f.values.push_back(v);
            }
            out.vectors.push_back(std::move(f));
            out.labels.push_back(label == "1" ? RouteLabel::Anomalous : RouteLabel::Correct);
        }
        return out;
    }

    void export_features(const std::string &path, const LabeledFeatures &data)
    {
        if (data.vectors.size() != data.labels.size())
            throw ShapeError("features and labels differ in length");
        const std::size_t dim = data.vectors.empty() ? 0 : data.vectors.front().values.size();
        std::ofstream os(path);
        if (!os)
            throw IoError("cannot open " + path + " for writing");
        os << "image_id,label";
        for (std::size_t j = 1; j <= dim; ++j)
            os << ",f_" << j;
        os << '\n';
        for (std::size_t i = 0; i < data.vectors.size(); ++i)
        {
            const auto &f = data.vectors[i];
            if (f.values.size() != dim)
                throw ShapeError("ragged feature vectors");
            os << f.source_image_id << ',' << (data.labels[i] == RouteLabel::Anomalous ? 1 : 0);
            for (const double v : f.values)
                os << ',' << format_g17(v);
            os << '\n';
        }
        if (!os)
            throw IoError("write failed for " + path);
    }

    std::string SolverConfig::describe() const
    {
        return "smo-hinge(max_epochs=" + std::to_string(max_epochs) + ",tol=" + format_g17(tolerance) + ",wss=2)";
    }

    SvmModel train_svm(std::span<const FeatureVector> features, std::span<const int> labels, double c_reg,
                       std::uint64_t seed, const SolverConfig &solver, TrainingTrace *trace)
    {
        if (features.size() != labels.size())
            throw ShapeError("features and labels differ in length");
        if (!(c_reg > 0.0) || !std::isfinite(c_reg))
            throw TrainingError("regularization C must be positive");
        bool has_pos = false, has_neg = false;
        for (const int y : labels)
        {
            if (y != 1 && y != -1)
                throw TrainingError("labels must be +1 or -1");
            (y > 0 ? has_pos : has_neg) = true;
        }
        if (!has_pos || !has_neg)
            throw TrainingError("training data must contain both classes");
        const std::size_t dim = features.front().values.size();
        for (const auto &f : features)
            if (f.values.size() != dim)
                throw ShapeError("inconsistent feature dimensions");

        const std::size_t n = features.size();
        const double C = c_reg;
        constexpr double kTau = 1e-12;

        // Samples are visited in a seeded order; slot k holds sample order[k]
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        rng::Stream(seed).shuffle(order);
        std::vector<double> y(n);
        for (std::size_t k = 0; k < n; ++k)
            y[k] = double(labels[order[k]]);

        std::vector<double> gram(n * n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l <= k; ++l)
                gram[k * n + l] = gram[l * n + k] = dot_span(features[order[k]].values, features[order[l]].values);
        const auto K = [&](std::size_t k, std::size_t l) { return gram[k * n + l]; };

        std::vector<double> alpha(n, 0.0);
        std::vector<double> grad(n, -1.0); // Q alpha - 1, Q_kl = y_k y_l K_kl

        const auto in_up = [&](std::size_t k) { return y[k] > 0 ? alpha[k] < C : alpha[k] > 0.0; };
        const auto in_low = [&](std::size_t k) { return y[k] > 0 ? alpha[k] > 0.0 : alpha[k] < C; };

        const auto bias_now = [&] {
            double ub = INFINITY, lb = -INFINITY, free_sum = 0.0;
            std::size_t n_free = 0;
            for (std::size_t k = 0; k < n; ++k)
            {
                const double yg = y[k] * grad[k];
                if (alpha[k] >= C)
                    (y[k] < 0 ? ub : lb) = y[k] < 0 ? std::min(ub, yg) : std::max(lb, yg);
                else if (alpha[k] <= 0.0)
                    (y[k] > 0 ? ub : lb) = y[k] > 0 ? std::min(ub, yg) : std::max(lb, yg);
                else
                {
                    ++n_free;
                    free_sum += yg;
                }
            }
            return -(n_free > 0 ? free_sum / double(n_free) : 0.5 * (ub + lb));
        };
        // Objectives straight from the gradient: w.x_k = y_k (grad_k + 1)
        const auto primal_at = [&](double b) {
            double ww = 0.0, loss = 0.0;
            for (std::size_t k = 0; k < n; ++k)
            {
                ww += alpha[k] * (grad[k] + 1.0);
                loss += std::max(0.0, -grad[k] - y[k] * b);
            }
            return 0.5 * ww + C * loss;
        };
        const auto dual_now = [&] {
            double d = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                d += alpha[k] * (grad[k] - 1.0);
            return 0.5 * d;
        };

        double best_primal = INFINITY, best_bias = 0.0;
        std::vector<double> best_alpha(n, 0.0);
        if (trace)
            *trace = TrainingTrace{};
        const auto checkpoint = [&](int epoch, bool done) {
            const double b = bias_now();
            const double primal = primal_at(b);
            if (primal < best_primal)
            {
                best_primal = primal;
                best_bias = b;
                best_alpha = alpha;
            }
            if (trace)
            {
                trace->primal_objective.push_back(best_primal);
                trace->dual_objective.push_back(dual_now());
                trace->epochs = epoch;
                trace->converged = done;
            }
        };

        const std::size_t max_iter = std::size_t(std::max(solver.max_epochs, 1)) * n;
        bool done = false;
        std::size_t iter = 0;
        for (; iter < max_iter; ++iter)
        {
            if (iter > 0 && iter % n == 0)
                checkpoint(int(iter / n), false);

            // Second-order working-set selection
            double g_max = -INFINITY;
            std::size_t i = n;
            for (std::size_t k = 0; k < n; ++k)
                if (in_up(k) && -y[k] * grad[k] > g_max)
                {
                    g_max = -y[k] * grad[k];
                    i = k;
                }
            double g_max2 = -INFINITY, obj_min = INFINITY;
            std::size_t j = n;
            for (std::size_t k = 0; k < n; ++k)
            {
                if (!in_low(k))
                    continue;
                g_max2 = std::max(g_max2, y[k] * grad[k]);
                const double diff = g_max + y[k] * grad[k];
                if (diff > 0.0 && i < n)
                {
                    double quad = K(i, i) + K(k, k) - 2.0 * K(i, k);
                    if (quad <= 0.0)
                        quad = kTau;
                    const double obj = -diff * diff / quad;
                    if (obj < obj_min)
                    {
                        obj_min = obj;
                        j = k;
                    }
                }
            }
            if (g_max + g_max2 < solver.tolerance || i == n || j == n)
            {
                done = true;
                break;
            }

            double quad = K(i, i) + K(j, j) - 2.0 * K(i, j);
            if (quad <= 0.0)
                quad = kTau;
            const double old_i = alpha[i], old_j = alpha[j];
            if (y[i] != y[j])
            {
                const double delta = (-grad[i] - grad[j]) / quad;
                const double diff = alpha[i] - alpha[j];
                alpha[i] += delta;
                alpha[j] += delta;
                if (diff > 0.0 && alpha[j] < 0.0)
                {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
                else if (diff <= 0.0 && alpha[i] < 0.0)
                {
                    alpha[i] = 0.0;
                    alpha[j] = -diff;
                }
                if (diff > 0.0 && alpha[i] > C)
                {
                    alpha[i] = C;
                    alpha[j] = C - diff;
                }
                else if (diff <= 0.0 && alpha[j] > C)
                {
                    alpha[j] = C;
                    alpha[i] = C + diff;
                }
            }
            else
            {
                const double delta = (grad[i] - grad[j]) / quad;
                const double sum = alpha[i] + alpha[j];
                alpha[i] -= delta;
                alpha[j] += delta;
                if (sum > C && alpha[i] > C)
                {
                    alpha[i] = C;
                    alpha[j] = sum - C;
                }
                else if (sum <= C && alpha[j] < 0.0)
                {
                    alpha[j] = 0.0;
                    alpha[i] = sum;
                }
                if (sum > C && alpha[j] > C)
                {
                    alpha[j] = C;
                    alpha[i] = sum - C;
                }
                else if (sum <= C && alpha[i] < 0.0)
                {
                    alpha[i] = 0.0;
                    alpha[j] = sum;
                }
            }

            const double di = (alpha[i] - old_i) * y[i], dj = (alpha[j] - old_j) * y[j];
            for (std::size_t k = 0; k < n; ++k)
                grad[k] += y[k] * (K(k, i) * di + K(k, j) * dj);
        }
        checkpoint(int((iter + n - 1) / n), done);

        SvmModel model;
        model.c_reg = c_reg;
        model.bias = best_bias;
        model.weights.assign(dim, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            if (best_alpha[k] != 0.0)
            {
                const double coef = best_alpha[k] * y[k];
                const auto &x = features[order[k]].values;
                for (std::size_t d = 0; d < dim; ++d)
                    model.weights[d] += coef * x[d];
            }
        return model;
    }

    double primal_objective(const SvmModel &model, std::span<const FeatureVector> features,
                            std::span<const int> labels)
    {
        double loss = 0.0;
        for (std::size_t i = 0; i < features.size(); ++i)
            loss += std::max(0.0, 1.0 - double(labels[i]) * predict(model, features[i].values).margin);
        return 0.5 * dot_span(model.weights, model.weights) + model.c_reg * loss;
    }

    Prediction predict(const SvmModel &model, std::span<const double> x)
    {
        if (x.size() != model.weights.size())
            throw ShapeError("feature dimension " + std::to_string(x.size()) + " does not match model dimension " +
                             std::to_string(model.weights.size()));
        const double margin = dot_span(model.weights, x) + model.bias;
        return {margin >= 0.0 ? RouteLabel::Anomalous : RouteLabel::Correct, margin};
    }

    void save_model(const std::string &path, const SvmModel &model)
    {
        std::ofstream os(path);
        if (!os)
            throw IoError("cannot open " + path + " for writing");
        os << "holosense-svm 1\n";
        os << "dim " << model.weights.size() << '\n';
        os << "C " << format_g17(model.c_reg) << '\n';
        os << "digest " << (model.feature_config_digest.empty() ? "-" : model.feature_config_digest) << '\n';
        os << "weights\n";
        for (const double v : model.weights)
            os << format_g17(v) << '\n';
        os << "bias " << format_g17(model.bias) << '\n';
        if (!os)
            throw IoError("write failed for " + path);
    }

    SvmModel load_model(const std::string &path)
    {
        std::ifstream is(path);
        if (!is)
            throw IoError("cannot open " + path);
        const auto expect_key = [&](const std::string &key) {
            std::string token;
            if (!(is >> token) || token != key)
                throw FormatError("model file: expected '" + key + "'");
        };
        const auto read_double = [&](const char *what) {
            std::string token;
            if (!(is >> token))
                throw FormatError(std::string("model file: missing ") + what);
            return detail::parse_double(token, what);
        };
        expect_key("holosense-svm");
        std::string version;
        if (!(is >> version) || version != "1")
            throw FormatError("model file: unsupported version");
        expect_key("dim");
        long long dim = 0;
        if (!(is >> dim) || dim < 1)
            throw FormatError("model file: bad dimension");
        SvmModel model;
        expect_key("C");
        model.c_reg = read_double("C");
        expect_key("digest");
        if (!(is >> model.feature_config_digest))
            throw FormatError("model file: missing digest");
        if (model.feature_config_digest == "-")
            model.feature_config_digest.clear();
        expect_key("weights");
        model.weights.resize(std::size_t(dim));
        for (auto &v : model.weights)
            v = read_double("weight");
        expect_key("bias");
        model.bias = read_double("bias");
        std::string extra;
        if (is >> extra)
            throw FormatError("model file: trailing content");
        return model;
    }

    Standardizer Standardizer::fit(std::span<const FeatureVector> features)
    {
        if (features.empty())
            throw ShapeError("cannot fit a standardizer on zero samples");
        const std::size_t dim = features.front().values.size();
        Standardizer s;
        s.mean.assign(dim, 0.0);
        s.scale.assign(dim, 0.0);
        for (const auto &f : features)
        {
            if (f.values.size() != dim)
                throw ShapeError("inconsistent feature dimensions");
            for (std::size_t j = 0; j < dim; ++j)
                s.mean[j] += f.values[j];
        }
        for (auto &m : s.mean)
            m /= double(features.size());
        for (const auto &f : features)
            for (std::size_t j = 0; j < dim; ++j)
            {
                const double d = f.values[j] - s.mean[j];
                s.scale[j] += d * d;
            }
        for (auto &v : s.scale)
        {
            v = std::sqrt(v / double(features.size()));
            if (!(v > 1e-12))
                v = 1.0;
        }
        return s;
    }

    FeatureVector Standardizer::apply(const FeatureVector &f) const
    {
        if (f.values.size() != mean.size())
            throw ShapeError("feature dimension does not match the standardizer");
        FeatureVector out;
        out.source_image_id = f.source_image_id;
        out.values.resize(f.values.size());
        for (std::size_t j = 0; j < f.values.size(); ++j)
            out.values[j] = (f.values[j] - mean[j]) / scale[j];
        return out;
    }

    SvmModel Standardizer::fold_into(const SvmModel &model) const
    {
        SvmModel out = model;
        for (std::size_t j = 0; j < model.weights.size(); ++j)
        {
            out.weights[j] = model.weights[j] / scale[j];
            out.bias -= out.weights[j] * mean[j];
        }
        return out;
    }

    Metrics compute_metrics(std::span<const RouteLabel> predictions, std::span<const RouteLabel> truths)
    {
        if (predictions.size() != truths.size())
            throw ShapeError("predictions and truths differ in length");
        if (predictions.empty())
            throw ShapeError("metrics need at least one prediction");
        Metrics m;
        for (std::size_t i = 0; i < predictions.size(); ++i)
        {
            const bool pred_pos = predictions[i] == RouteLabel::Anomalous;
            const bool true_pos = truths[i] == RouteLabel::Anomalous;
            if (pred_pos && true_pos)
                ++m.tp;
            else if (pred_pos)
                ++m.fp;
            else if (true_pos)
                ++m.fn;
            else
                ++m.tn;
        }
        bool deg = false;
        m.precision_pos = ratio_or_zero(m.tp, m.tp + m.fp, deg);
        m.recall_pos = ratio_or_zero(m.tp, m.tp + m.fn, deg);
        m.precision_neg = ratio_or_zero(m.tn, m.tn + m.fn, deg);
        m.recall_neg = ratio_or_zero(m.tn, m.tn + m.fp, deg);
        m.pf1 = harmonic(m.precision_pos, m.recall_pos, deg);
        m.nf1 = harmonic(m.precision_neg, m.recall_neg, deg);
        m.degenerate = deg;
        return m;
    }

    SplitMode parse_split_mode(const std::string &text)
    {
        if (text == "grouped")
            return SplitMode::Grouped;
        if (text == "random")
            return SplitMode::Random;
        throw ConfigError("split mode must be 'grouped' or 'random', got '" + text + "'");
    }

    const char *to_string(SplitMode mode) { return mode == SplitMode::Grouped ? "grouped" : "random"; }

    std::vector<int> assign_folds(std::span<const RouteLabel> labels, std::span<const int> groups, int k,
                                  std::uint64_t seed)
    {
        if (k < 2)
            throw SplitError("k must be >= 2");
        auto strata = strata_of(labels, groups);
        std::size_t n_groups = 0;
        for (const auto &[comp, members] : strata)
            n_groups += members.size();
        if (n_groups < std::size_t(k))
            throw SplitError("only " + std::to_string(n_groups) + " groups for " + std::to_string(k) + " folds");

        rng::Stream stream(rng::key(seed, rng::fnv1a("folds")));
        std::map<int, int> fold_of_group;
        std::size_t next = 0;
        for (auto &[comp, members] : strata)
        {
            stream.shuffle(members);
            for (const int g : members)
                fold_of_group[g] = int(next++ % std::size_t(k));
        }
        std::vector<int> folds(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            folds[i] = fold_of_group.at(groups[i]);
        return folds;
    }

    HoldoutSplit split_holdout(std::span<const RouteLabel> labels, std::span<const int> groups,
                               double train_fraction, std::uint64_t seed)
    {
        if (!(train_fraction > 0.0 && train_fraction < 1.0))
            throw SplitError("train fraction must lie in (0, 1)");
        auto strata = strata_of(labels, groups);
        rng::Stream stream(rng::key(seed, rng::fnv1a("holdout")));
        std::map<int, bool> in_train;
        for (auto &[comp, members] : strata)
        {
            stream.shuffle(members);
            const auto n_train = std::size_t(std::llround(train_fraction * double(members.size())));
            for (std::size_t j = 0; j < members.size(); ++j)
                in_train[members[j]] = j < n_train;
        }
        HoldoutSplit split;
        for (std::size_t i = 0; i < labels.size(); ++i)
            (in_train.at(groups[i]) ? split.train : split.test).push_back(i);
        if (split.train.empty() || split.test.empty())
            throw SplitError("holdout split left one side empty");
        return split;
    }

    SvmModel fit_model(std::span<const FeatureVector> features, std::span<const RouteLabel> labels, double c_reg,
                       std::uint64_t seed, const CvOptions &options, const std::string &digest)
    {
        const std::vector<int> y = signs_of(labels);
        SvmModel model;
        if (options.standardize)
        {
            const Standardizer s = Standardizer::fit(features);
            std::vector<FeatureVector> z;
            z.reserve(features.size());
            for (const auto &f : features)
                z.push_back(s.apply(f));
            model = s.fold_into(train_svm(z, y, c_reg, seed, options.solver));
        }
        else
            model = train_svm(features, y, c_reg, seed, options.solver);
        model.feature_config_digest = digest;
        return model;
    }

    CvResult cross_validate(std::span<const FeatureVector> features, std::span<const RouteLabel> labels,
                            std::span<const int> groups, std::span<const double> c_grid, int k, std::uint64_t seed,
                            const CvOptions &options)
    {
        if (c_grid.empty())
            throw SplitError("C grid is empty");
        if (features.size() != labels.size())
            throw ShapeError("features and labels differ in length");
        const std::vector<int> folds = assign_folds(labels, groups, k, seed);

        CvResult result;
        for (const double c : c_grid)
            result.scores.push_back({c, 0.0, {}});

        for (int f = 0; f < k; ++f)
        {
            std::vector<FeatureVector> train_x;
            std::vector<RouteLabel> train_y;
            std::vector<std::size_t> val;
            for (std::size_t i = 0; i < features.size(); ++i)
            {
                if (folds[i] == f)
                    val.push_back(i);
                else
                {
                    train_x.push_back(features[i]);
                    train_y.push_back(labels[i]);
                }
            }
            for (std::size_t ci = 0; ci < c_grid.size(); ++ci)
            {
                const SvmModel model = fit_model(train_x, train_y, c_grid[ci], rng::key(seed, f, ci), options, {});
                std::vector<RouteLabel> pred, truth;
                for (const std::size_t i : val)
                {
                    pred.push_back(predict(model, features[i].values).label);
                    truth.push_back(labels[i]);
                }
                result.scores[ci].fold_pf1.push_back(compute_metrics(pred, truth).pf1);
            }
        }

        double best = -1.0;
        for (auto &s : result.scores)
        {
            s.mean_pf1 = std::accumulate(s.fold_pf1.begin(), s.fold_pf1.end(), 0.0) / double(s.fold_pf1.size());
            if (s.mean_pf1 > best || (s.mean_pf1 == best && s.c_reg < result.best_c))
            {
                best = s.mean_pf1;
                result.best_c = s.c_reg;
            }
        }
        return result;
    }

} // namespace holosense::classify
