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

#include "holosense/experiment.hpp"

#include "holosense/baseline.hpp"
#include "holosense/counter_rng.hpp"
#include "holosense/errors.hpp"
#include "holosense/parallel.hpp"
#include "ini_util.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace holosense::experiment
{
    namespace fs = std::filesystem;

    namespace
    {
        std::string fmt(const char *pattern, double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, pattern, v);
            return buf;
        }

        std::string g17(double v) { return fmt("%.17g", v); }
        std::string g10(double v) { return fmt("%.10g", v); }
        std::string f6(double v) { return fmt("%.6f", v); }

        bool parse_bool(const std::string &text, const std::string &key)
        {
            if (text == "true" || text == "1" || text == "yes" || text == "on")
                return true;
            if (text == "false" || text == "0" || text == "no" || text == "off")
                return false;
            throw ConfigError(key + ": expected a boolean, got '" + text + "'");
        }

        Aperture parse_aperture(const std::string &text)
        {
            const auto parts = detail::split(detail::trim(text), 'x');
            if (parts.size() != 2)
                throw ConfigError("aperture '" + text + "' must look like ROWSxCOLS");
            const double r = detail::parse_double(parts[0], "apertures");
            const double c = detail::parse_double(parts[1], "apertures");
            if (r < 1 || c < 1 || r != std::floor(r) || c != std::floor(c))
                throw ConfigError("aperture '" + text + "' needs positive integer dimensions");
            return {int(r), int(c)};
        }

        std::uint64_t parse_seed(const std::string &text)
        {
            const std::string t = detail::trim(text);
            if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
                throw ConfigError("master_seed must be a non-negative integer");
            try
            {
                return std::stoull(t);
            }
            catch (const std::exception &)
            {
                throw ConfigError("master_seed out of range");
            }
        }

        scene::Scene scene_for(const ExperimentConfig &config, const RunParams &params)
        {
            scene::SceneConfig sc = config.scene;
            sc.lis.rows = params.rows;
            sc.lis.cols = params.cols;
            sc.lis.spacing_wavelengths = params.spacing_wavelengths;
            return scene::build_scene(sc);
        }

        std::vector<channel::FieldSnapshot> route_fields(const scene::Scene &s, const scene::Trajectory &route,
                                                         int threads)
        {
            std::vector<channel::FieldSnapshot> out(route.points.size());
            parallel_for(route.points.size(), threads, [&](std::size_t j) {
                out[j] = channel::field_snapshot(s.hall, s.lis, route.points[j], int(j));
            });
            return out;
        }

        std::vector<holo::HoloImage> noisy_images(const channel::FieldSnapshot &snap, double wavelength,
                                                  const channel::NoiseConfig &noise, int retained, int extra,
                                                  int rows, int cols, scene::RouteLabel label)
        {
            std::vector<holo::HoloImage> images;
            images.reserve(std::size_t(retained));
            std::vector<channel::Complex> y;
            for (int d = 0; d < retained; ++d)
            {
                holo::PowerAccumulator acc(snap.fields.size());
                for (int s = 0; s < extra; ++s)
                {
                    channel::receive_into(snap, wavelength, noise, std::uint64_t(d) * std::uint64_t(extra) + std::uint64_t(s), y);
                    acc.add(y);
                }
                images.push_back(holo::to_image(acc.mean().values, rows, cols, label, snap.point_index));
            }
            return images;
        }

        std::vector<classify::FeatureVector> features_of(std::span<const holo::HoloImage> images,
                                                         const classify::FeatureConfig &config, int threads)
        {
            std::vector<classify::FeatureVector> out(images.size());
            parallel_for(images.size(), threads, [&](std::size_t i) { out[i] = classify::extract_features(images[i], config); });
            return out;
        }

        void write_text(const std::string &path, const std::string &text)
        {
            std::ofstream os(path, std::ios::binary);
            if (!os || !os.write(text.data(), std::streamsize(text.size())))
                throw IoError("cannot write " + path);
        }

        constexpr const char *kManifestHeader = "file_path,label,route_id,point_index,draw_index,snr_db,spacing_m,rows,cols,S";
    } // namespace

    void ExperimentConfig::validate() const
    {
        scene.hall.validate();
        if (scene.routes.n_points < 2)
            throw ConfigError("n_points must be >= 2");
        if (snapshots_per_point < 1)
            throw ConfigError("snapshots_per_point must be >= 1");
        if (extra_samples < 1)
            throw ConfigError("extra_samples must be >= 1");
        if (std::isnan(snr_db) || snr_db == -INFINITY)
            throw ConfigError("snr_db must be a number or +inf");
        if (!(split_fraction > 0.0 && split_fraction < 1.0))
            throw ConfigError("split_fraction must lie in (0, 1)");
        if (c_grid.empty())
            throw ConfigError("c_grid must not be empty");
        for (const double c : c_grid)
            if (!(c > 0.0) || !std::isfinite(c))
                throw ConfigError("c_grid values must be positive");
        if (k_folds < 2)
            throw ConfigError("k_folds must be >= 2");
        for (const int s : averaging_samples)
            if (s < 1)
                throw ConfigError("averaging_samples must be >= 1");
        for (const double s : spacing_wavelengths)
            if (!(s > 0.0))
                throw ConfigError("spacing_wavelengths must be positive");
        for (const double s : baseline_snr_db)
            if (!std::isfinite(s))
                throw ConfigError("baseline snr_db values must be finite");
        if (baseline_train_per_class < 2 || baseline_trials_per_class < 1)
            throw ConfigError("baseline sample counts are too small");
    }

    ExperimentConfig load_experiment_config(const std::string &path)
    {
        using namespace holosense::detail;
        ExperimentConfig cfg;
        cfg.scene = scene::load_scene_config(path);
        const Tree tree = read_ini(path);

        cfg.snapshots_per_point = get_int(tree, "experiment.snapshots_per_point", cfg.snapshots_per_point);
        cfg.extra_samples = get_int(tree, "experiment.extra_samples", cfg.extra_samples);
        cfg.snr_db = get_double(tree, "experiment.snr_db", cfg.snr_db);
        cfg.sweep_snr_db = get_doubles(tree, "experiment.sweep_snr_db", cfg.sweep_snr_db);
        cfg.spacing_wavelengths = get_doubles(tree, "experiment.spacing_wavelengths", cfg.spacing_wavelengths);
        if (const auto v = raw(tree, "experiment.apertures"))
        {
            cfg.apertures.clear();
            for (const auto &part : split(*v, ','))
                cfg.apertures.push_back(parse_aperture(part));
        }
        cfg.averaging_samples = get_ints(tree, "experiment.averaging_samples", cfg.averaging_samples);
        cfg.split_fraction = get_double(tree, "experiment.split_fraction", cfg.split_fraction);
        if (const auto v = raw(tree, "experiment.split_mode"))
            cfg.split_mode = classify::parse_split_mode(*v);
        if (const auto v = raw(tree, "experiment.master_seed"))
            cfg.master_seed = parse_seed(*v);
        cfg.threads = get_int(tree, "experiment.threads", cfg.threads);

        cfg.c_grid = get_doubles(tree, "classifier.c_grid", cfg.c_grid);
        cfg.k_folds = get_int(tree, "classifier.k_folds", cfg.k_folds);
        if (const auto v = raw(tree, "classifier.standardize"))
            cfg.standardize = parse_bool(*v, "classifier.standardize");
        cfg.features.resample_size = get_int(tree, "classifier.resample_size", cfg.features.resample_size);
        cfg.features.block_size = get_int(tree, "classifier.block_size", cfg.features.block_size);
        cfg.solver.max_epochs = get_int(tree, "classifier.max_epochs", cfg.solver.max_epochs);
        cfg.solver.tolerance = get_double(tree, "classifier.tolerance", cfg.solver.tolerance);

        cfg.baseline_snr_db = get_doubles(tree, "baseline.snr_db", cfg.baseline_snr_db);
        cfg.baseline_train_per_class = get_int(tree, "baseline.train_per_class", cfg.baseline_train_per_class);
        cfg.baseline_trials_per_class = get_int(tree, "baseline.trials_per_class", cfg.baseline_trials_per_class);

        cfg.validate();
        return cfg;
    }

    std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view axis, std::uint64_t index)
    {
        return rng::key(master_seed, rng::fnv1a(axis), index);
    }

    RunParams default_run(const ExperimentConfig &config)
    {
        return {config.snr_db, config.extra_samples, config.scene.lis.rows, config.scene.lis.cols,
                config.scene.lis.spacing_wavelengths};
    }

    Dataset build_dataset(const ExperimentConfig &config, const RunParams &params, std::uint64_t seed,
                          std::vector<RouteFields> *fields)
    {
        const scene::Scene s = scene_for(config, params);
        const double wavelength = s.hall.wavelength();
        const std::vector<const scene::Trajectory *> routes{&s.correct, &s.anomalous};

        std::vector<std::vector<channel::FieldSnapshot>> snaps;
        for (const auto *route : routes)
            snaps.push_back(route_fields(s, *route, config.threads));

        Dataset ds;
        ds.params = params;
        ds.spacing_m = s.lis.spacing_m;
        ds.seed = seed;
        ds.sigma2 = std::isinf(params.snr_db) ? 0.0 : channel::calibrate_noise(snaps[0], wavelength, params.snr_db);

        const std::size_t n_points = s.correct.points.size();
        const int retained = config.snapshots_per_point;
        std::vector<std::vector<holo::HoloImage>> per_task(routes.size() * n_points);
        parallel_for(per_task.size(), config.threads, [&](std::size_t task) {
            const std::size_t r = task / n_points, j = task % n_points;
            const channel::NoiseConfig noise{ds.sigma2, rng::key(seed, rng::fnv1a("noise"), r)};
            per_task[task] = noisy_images(snaps[r][j], wavelength, noise, retained, params.extra_samples,
                                          params.rows, params.cols, routes[r]->label);
        });

        ds.samples.reserve(per_task.size() * std::size_t(retained));
        for (std::size_t task = 0; task < per_task.size(); ++task)
        {
            const auto *route = routes[task / n_points];
            for (std::size_t d = 0; d < per_task[task].size(); ++d)
                ds.samples.push_back({std::move(per_task[task][d]), route->route_id, int(task % n_points), int(d)});
        }

        if (fields)
        {
            fields->clear();
            for (std::size_t r = 0; r < routes.size(); ++r)
                fields->push_back({routes[r]->route_id, std::move(snaps[r])});
        }
        return ds;
    }

    void write_dataset(const Dataset &dataset, const std::string &dir)
    {
        std::error_code ec;
        fs::create_directories(fs::path(dir) / "images", ec);
        if (ec)
            throw IoError("cannot create " + dir + ": " + ec.message());

        std::ostringstream manifest;
        manifest << kManifestHeader << '\n';
        for (const auto &s : dataset.samples)
        {
            char name[128];
            std::snprintf(name, sizeof name, "images/%s_p%05d_d%03d.pgm", s.route_id.c_str(), s.point_index, s.draw_index);
            holo::write_pgm(s.image, (fs::path(dir) / name).string());
            manifest << name << ',' << (s.image.label == scene::RouteLabel::Anomalous ? 1 : 0) << ',' << s.route_id
                     << ',' << s.point_index << ',' << s.draw_index << ',' << g17(dataset.params.snr_db) << ','
                     << g17(dataset.spacing_m) << ',' << dataset.params.rows << ',' << dataset.params.cols << ','
                     << dataset.params.extra_samples << '\n';
        }
        write_text((fs::path(dir) / "manifest.csv").string(), manifest.str());
    }

    Dataset read_dataset(const std::string &dir)
    {
        const fs::path manifest_path = fs::path(dir) / "manifest.csv";
        std::ifstream is(manifest_path);
        if (!is)
            throw IoError("cannot open " + manifest_path.string());
        std::string line;
        if (!std::getline(is, line) || detail::trim(line) != kManifestHeader)
            throw FormatError("manifest: unexpected header");

        Dataset ds;
        bool first = true;
        int line_no = 1;
        while (std::getline(is, line))
        {
            ++line_no;
            if (detail::trim(line).empty())
                continue;
            const auto cells = detail::split(detail::trim(line), ',');
            if (cells.size() != 10)
                throw FormatError("manifest line " + std::to_string(line_no) + ": expected 10 columns");
            const std::string ctx = "manifest line " + std::to_string(line_no);
            Sample s;
            s.image = holo::read_pgm((fs::path(dir) / cells[0]).string());
            if (cells[1] != "0" && cells[1] != "1")
                throw FormatError(ctx + ": label must be 0 or 1");
            s.image.label = cells[1] == "1" ? scene::RouteLabel::Anomalous : scene::RouteLabel::Correct;
            s.route_id = cells[2];
            try
            {
                s.point_index = int(detail::parse_double(cells[3], ctx));
                s.draw_index = int(detail::parse_double(cells[4], ctx));
                s.image.point_index = s.point_index;
                if (first)
                {
                    ds.params.snr_db = detail::parse_double(cells[5], ctx);
                    ds.spacing_m = detail::parse_double(cells[6], ctx);
                    ds.params.rows = int(detail::parse_double(cells[7], ctx));
                    ds.params.cols = int(detail::parse_double(cells[8], ctx));
                    ds.params.extra_samples = int(detail::parse_double(cells[9], ctx));
                    first = false;
                }
            }
            catch (const ConfigError &e)
            {
                throw FormatError(e.what());
            }
            if (s.image.rows != ds.params.rows || s.image.cols != ds.params.cols)
                throw FormatError(ctx + ": image size does not match the manifest");
            ds.samples.push_back(std::move(s));
        }
        if (ds.samples.empty())
            throw FormatError("manifest lists no samples");
        return ds;
    }

    TrainEvalOptions train_eval_options(const ExperimentConfig &config, std::uint64_t seed)
    {
        TrainEvalOptions o;
        o.c_grid = config.c_grid;
        o.k_folds = config.k_folds;
        o.split_mode = config.split_mode;
        o.split_fraction = config.split_fraction;
        o.standardize = config.standardize;
        o.features = config.features;
        o.solver = config.solver;
        o.seed = seed;
        o.threads = config.threads;
        return o;
    }

    std::string feature_digest(const TrainEvalOptions &options)
    {
        const std::string text = options.features.describe() + ";" + options.solver.describe() +
                                 ";standardize=" + (options.standardize ? "1" : "0");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng::fnv1a(text)));
        return buf;
    }

    TrainEvalResult train_eval(const Dataset &dataset, const TrainEvalOptions &options)
    {
        const std::size_t n = dataset.samples.size();
        std::vector<holo::HoloImage> images;
        std::vector<scene::RouteLabel> labels;
        std::vector<int> groups;
        images.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const auto &s = dataset.samples[i];
            images.push_back(s.image);
            labels.push_back(s.image.label);
            groups.push_back(options.split_mode == classify::SplitMode::Grouped ? s.point_index : int(i));
        }
        const auto features = features_of(images, options.features, options.threads);

        const auto split = classify::split_holdout(labels, groups, options.split_fraction, rng::key(options.seed, rng::fnv1a("split")));
        std::vector<classify::FeatureVector> train_x;
        std::vector<scene::RouteLabel> train_y;
        std::vector<int> train_g;
        for (const std::size_t i : split.train)
        {
            train_x.push_back(features[i]);
            train_y.push_back(labels[i]);
            train_g.push_back(groups[i]);
        }

        bool pos = false, neg = false;
        for (const auto l : train_y)
            (l == scene::RouteLabel::Anomalous ? pos : neg) = true;
        if (!pos || !neg)
            throw TrainingError("training side of the split contains a single class");

        const classify::CvOptions cv_options{options.solver, options.standardize};
        TrainEvalResult result;
        result.cv = classify::cross_validate(train_x, train_y, train_g, options.c_grid, options.k_folds,
                                             rng::key(options.seed, rng::fnv1a("cv")), cv_options);
        result.model = classify::fit_model(train_x, train_y, result.cv.best_c, rng::key(options.seed, rng::fnv1a("fit")),
                                           cv_options, feature_digest(options));

        std::vector<scene::RouteLabel> pred, truth;
        for (const std::size_t i : split.test)
        {
            pred.push_back(classify::predict(result.model, features[i].values).label);
            truth.push_back(labels[i]);
        }
        result.metrics = classify::compute_metrics(pred, truth);
        result.n_train = split.train.size();
        result.n_test = split.test.size();
        return result;
    }

    std::string metrics_csv(const TrainEvalResult &r, const TrainEvalOptions &options)
    {
        const auto &m = r.metrics;
        std::ostringstream os;
        os << "C,PP,RP,PN,RN,PF1,NF1,TP,FP,TN,FN,n_train,n_test,split,seed\n";
        os << g17(r.model.c_reg) << ',' << f6(m.precision_pos) << ',' << f6(m.recall_pos) << ','
           << f6(m.precision_neg) << ',' << f6(m.recall_neg) << ',' << f6(m.pf1) << ',' << f6(m.nf1) << ',' << m.tp
           << ',' << m.fp << ',' << m.tn << ',' << m.fn << ',' << r.n_train << ',' << r.n_test << ','
           << classify::to_string(options.split_mode) << ',' << options.seed << '\n';
        return os.str();
    }

    std::string cv_scores_csv(const classify::CvResult &cv)
    {
        std::ostringstream os;
        os << "C,mean_PF1,selected\n";
        for (const auto &s : cv.scores)
            os << g17(s.c_reg) << ',' << f6(s.mean_pf1) << ',' << (s.c_reg == cv.best_c ? 1 : 0) << '\n';
        return os.str();
    }

    SweepAxis parse_axis(const std::string &text)
    {
        if (text == "snr")
            return SweepAxis::Snr;
        if (text == "spacing")
            return SweepAxis::Spacing;
        if (text == "aperture")
            return SweepAxis::Aperture;
        if (text == "averaging")
            return SweepAxis::Averaging;
        throw ConfigError("unknown sweep axis '" + text + "'");
    }

    const char *to_string(SweepAxis axis)
    {
        switch (axis)
        {
        case SweepAxis::Snr:
            return "snr";
        case SweepAxis::Spacing:
            return "spacing";
        case SweepAxis::Aperture:
            return "aperture";
        case SweepAxis::Averaging:
            return "averaging";
        }
        return "?";
    }

    std::vector<std::pair<double, RunParams>> sweep_grid(const ExperimentConfig &config, SweepAxis axis)
    {
        const RunParams base = default_run(config);
        std::vector<std::pair<double, RunParams>> grid;
        switch (axis)
        {
        case SweepAxis::Snr:
            for (const double snr : config.sweep_snr_db)
            {
                RunParams p = base;
                p.snr_db = snr;
                grid.emplace_back(snr, p);
            }
            break;
        case SweepAxis::Averaging:
            for (const int s : config.averaging_samples)
                for (const double snr : config.sweep_snr_db)
                {
                    RunParams p = base;
                    p.snr_db = snr;
                    p.extra_samples = s;
                    grid.emplace_back(double(s), p);
                }
            break;
        case SweepAxis::Aperture:
            for (const auto &ap : config.apertures)
            {
                RunParams p = base;
                p.rows = ap.rows;
                p.cols = ap.cols;
                grid.emplace_back(double(ap.rows) * double(ap.cols), p);
            }
            break;
        case SweepAxis::Spacing:
        {
            // Hold the physical aperture edge fixed, in wavelengths
            const double edge_rows = double(base.rows - 1) * base.spacing_wavelengths;
            const double edge_cols = double(base.cols - 1) * base.spacing_wavelengths;
            for (const double s : config.spacing_wavelengths)
            {
                RunParams p = base;
                p.spacing_wavelengths = s;
                p.rows = int(std::lround(edge_rows / s)) + 1;
                p.cols = int(std::lround(edge_cols / s)) + 1;
                grid.emplace_back(s, p);
            }
            break;
        }
        }
        if (grid.empty())
            throw ConfigError(std::string("sweep axis '") + to_string(axis) + "' has an empty grid");
        return grid;
    }

    std::vector<SweepRow> sweep(const ExperimentConfig &config, SweepAxis axis)
    {
        config.validate();
        const auto grid = sweep_grid(config, axis);
        std::vector<SweepRow> rows;
        for (std::size_t g = 0; g < grid.size(); ++g)
        {
            const auto &[value, params] = grid[g];
            const std::uint64_t seed = derive_seed(config.master_seed, to_string(axis), g);
            const Dataset ds = build_dataset(config, params, seed);
            const auto result = train_eval(ds, train_eval_options(config, rng::key(seed, rng::fnv1a("train-eval"))));
            rows.push_back({value, params.snr_db, params.extra_samples, ds.spacing_m, params.rows, params.cols,
                            result.metrics.pf1, result.metrics.nf1, seed});
        }
        return rows;
    }

    std::string sweep_csv(const std::vector<SweepRow> &rows)
    {
        std::ostringstream os;
        os << "axis_value,snr_db,S,spacing,rows,cols,PF1,NF1,seed\n";
        for (const auto &r : rows)
            os << g10(r.axis_value) << ',' << g10(r.snr_db) << ',' << r.extra_samples << ',' << g10(r.spacing_m) << ','
               << r.rows << ',' << r.cols << ',' << f6(r.pf1) << ',' << f6(r.nf1) << ',' << r.seed << '\n';
        return os.str();
    }

    std::vector<BaselineRow> baseline_run(const ExperimentConfig &config)
    {
        config.validate();
        if (config.scene.hall.max_reflection_order != 0)
            throw ConfigError("baseline needs a pure-LoS scene (max_reflection_order = 0)");
        const RunParams base = default_run(config);
        const scene::Scene s = scene_for(config, base);
        const double wavelength = s.hall.wavelength();
        const std::size_t mid = s.correct.points.size() / 2;
        const std::array<channel::FieldSnapshot, 2> snaps{
            channel::field_snapshot(s.hall, s.lis, s.correct.points[mid], 0),
            channel::field_snapshot(s.hall, s.lis, s.anomalous.points[mid], 0)};
        const std::array<scene::RouteLabel, 2> route_labels{scene::RouteLabel::Correct, scene::RouteLabel::Anomalous};

        baseline::KnownChannelPair pair;
        pair.h_c = channel::scaled_fields(snaps[0], wavelength);
        pair.h_a = channel::scaled_fields(snaps[1], wavelength);

        const int n_train = config.baseline_train_per_class;
        const int n_test = config.baseline_trials_per_class;
        std::vector<BaselineRow> rows;
        for (std::size_t g = 0; g < config.baseline_snr_db.size(); ++g)
        {
            const double snr = config.baseline_snr_db[g];
            const std::uint64_t seed = derive_seed(config.master_seed, "baseline", g);
            pair.sigma2 = channel::calibrate_noise(std::span(snaps.data(), 1), wavelength, snr);

            // Training images: independent noise stream from the test trials
            std::vector<holo::HoloImage> train_images;
            std::vector<scene::RouteLabel> train_labels;
            for (std::size_t r = 0; r < 2; ++r)
            {
                const channel::NoiseConfig noise{pair.sigma2, rng::key(seed, rng::fnv1a("train"), r)};
                for (int d = 0; d < n_train; ++d)
                {
                    const auto y = channel::receive(snaps[r], wavelength, noise, std::uint64_t(d));
                    train_images.push_back(holo::to_image(holo::power_vector(y).values, base.rows, base.cols, route_labels[r]));
                    train_labels.push_back(route_labels[r]);
                }
            }
            const auto train_x = features_of(train_images, config.features, config.threads);
            std::vector<int> groups(train_x.size());
            for (std::size_t i = 0; i < groups.size(); ++i)
                groups[i] = int(i);
            const classify::CvOptions cv_options{config.solver, config.standardize};
            const auto cv = classify::cross_validate(train_x, train_labels, groups, config.c_grid, config.k_folds,
                                                     rng::key(seed, rng::fnv1a("cv")), cv_options);
            const auto model = classify::fit_model(train_x, train_labels, cv.best_c, rng::key(seed, rng::fnv1a("fit")),
                                                   cv_options, {});

            // Paired test trials: both detectors see the same draws
            std::vector<int> lrt_wrong(2 * std::size_t(n_test), 0), svm_wrong(2 * std::size_t(n_test), 0);
            parallel_for(2 * std::size_t(n_test), config.threads, [&](std::size_t t) {
                const std::size_t r = t / std::size_t(n_test);
                const channel::NoiseConfig noise{pair.sigma2, rng::key(seed, rng::fnv1a("test"), r)};
                const auto y = channel::receive(snaps[r], wavelength, noise, std::uint64_t(t % std::size_t(n_test)));
                const auto w = holo::power_vector(y);
                lrt_wrong[t] = baseline::lrt_decide(w.values, pair) != route_labels[r];
                const auto img = holo::to_image(w.values, base.rows, base.cols, route_labels[r]);
                svm_wrong[t] = classify::predict(model, classify::extract_features(img, config.features).values).label != route_labels[r];
            });
            const int trials = 2 * n_test;
            int lrt_errors = 0, svm_errors = 0;
            for (std::size_t t = 0; t < lrt_wrong.size(); ++t)
            {
                lrt_errors += lrt_wrong[t];
                svm_errors += svm_wrong[t];
            }
            rows.push_back({snr, double(lrt_errors) / trials, double(svm_errors) / trials, trials});
        }
        return rows;
    }

    std::string baseline_csv(const std::vector<BaselineRow> &rows)
    {
        std::ostringstream os;
        os << "snr_db,lrt_error,svm_error,trials\n";
        for (const auto &r : rows)
            os << g10(r.snr_db) << ',' << f6(r.lrt_error) << ',' << f6(r.svm_error) << ',' << r.trials << '\n';
        return os.str();
    }

} // namespace holosense::experiment
