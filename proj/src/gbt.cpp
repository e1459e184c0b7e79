#include "aeroamp/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "aeroamp/rng.hpp"

namespace aeroamp::gbt {

double Tree::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    int node = 0;
    while (!nodes[static_cast<std::size_t>(node)].is_leaf()) {
        const auto& nd = nodes[static_cast<std::size_t>(node)];
        node = x[nd.feature] < nd.threshold ? nd.left : nd.right;
    }
    return nodes[static_cast<std::size_t>(node)].value;
}

namespace {

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

double node_sse(const Eigen::MatrixXd&, const Eigen::VectorXd& residual,
                const std::vector<int>& rows) {
    double sum = 0.0, sumsq = 0.0;
    for (int r : rows) {
        sum += residual[r];
        sumsq += residual[r] * residual[r];
    }
    const double n = static_cast<double>(rows.size());
    return sumsq - sum * sum / n;
}

// Exact greedy search over midpoints of sorted unique feature values.
// Features and thresholds are visited in ascending order and only a strictly
// larger gain replaces the incumbent, so the choice is deterministic.
SplitChoice best_split(const Eigen::MatrixXd& X, const Eigen::VectorXd& residual,
                       const std::vector<int>& rows, const std::vector<int>& features) {
    SplitChoice best;
    const double parent_sse = node_sse(X, residual, rows);
    std::vector<int> order(rows);
    for (int f : features) {
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return X(a, f) < X(b, f); });
        double left_sum = 0.0, left_sumsq = 0.0;
        double total_sum = 0.0, total_sumsq = 0.0;
        for (int r : order) {
            total_sum += residual[r];
            total_sumsq += residual[r] * residual[r];
        }
        const double n = static_cast<double>(order.size());
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            const double v = residual[order[i]];
            left_sum += v;
            left_sumsq += v * v;
            const double x_lo = X(order[i], f), x_hi = X(order[i + 1], f);
            if (x_lo == x_hi) continue;
            const double nl = static_cast<double>(i + 1), nr = n - nl;
            const double sse_l = left_sumsq - left_sum * left_sum / nl;
            const double right_sum = total_sum - left_sum;
            const double sse_r = (total_sumsq - left_sumsq) - right_sum * right_sum / nr;
            const double gain = parent_sse - sse_l - sse_r;
            if (gain > best.gain) {
                best.feature = f;
                best.threshold = 0.5 * (x_lo + x_hi);
                best.gain = gain;
            }
        }
    }
    return best;
}

int build_node(Tree& tree, const Eigen::MatrixXd& X, const Eigen::VectorXd& residual,
               const std::vector<int>& rows, const std::vector<int>& features,
               int depth, const GbtParams& params) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();

    double mean = 0.0;
    for (int r : rows) mean += residual[r];
    mean /= static_cast<double>(rows.size());
    tree.nodes[static_cast<std::size_t>(id)].value = mean;

    if (depth >= params.max_depth || rows.size() < 2) return id;
    const SplitChoice split = best_split(X, residual, rows, features);
    // A zero-gain split never changes a prediction; gains below gamma are
    // pruned per the regularization rule.
    if (split.feature < 0 || split.gain <= 0.0 || split.gain < params.gamma) return id;

    std::vector<int> left_rows, right_rows;
    for (int r : rows) {
        if (X(r, split.feature) < split.threshold)
            left_rows.push_back(r);
        else
            right_rows.push_back(r);
    }
    const int left = build_node(tree, X, residual, left_rows, features, depth + 1, params);
    const int right = build_node(tree, X, residual, right_rows, features, depth + 1, params);
    auto& nd = tree.nodes[static_cast<std::size_t>(id)];
    nd.feature = split.feature;
    nd.threshold = split.threshold;
    nd.left = left;
    nd.right = right;
    return id;
}

}  // namespace

GbtModel train_gbt(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                   const GbtParams& params, std::uint64_t seed) {
    const Eigen::Index n = features.rows();
    const Eigen::Index d = features.cols();
    if (n < 2)
        throw NoSamples("train_gbt: need at least 2 samples");
    if (targets.size() != n)
        throw DimensionMismatch("train_gbt: targets/features length mismatch");
    if (params.rounds < 1)
        throw InvalidInput("train_gbt: rounds must be >= 1");
    if (!(params.row_subsample > 0.0 && params.row_subsample <= 1.0) ||
        !(params.feature_subsample > 0.0 && params.feature_subsample <= 1.0))
        throw InvalidInput("train_gbt: subsample ratios must be in (0, 1]");

    GbtModel model;
    model.learning_rate = params.learning_rate;
    model.base_prediction = targets.mean();
    model.n_features = static_cast<int>(d);
    model.trees.reserve(static_cast<std::size_t>(params.rounds));

    Eigen::VectorXd prediction = Eigen::VectorXd::Constant(n, model.base_prediction);
    for (int round = 0; round < params.rounds; ++round) {
        auto engine = rng::substream(seed, static_cast<std::uint64_t>(round));
        const Eigen::VectorXd residual = targets - prediction;

        std::vector<int> rows;
        if (params.row_subsample >= 1.0) {
            rows.resize(static_cast<std::size_t>(n));
            std::iota(rows.begin(), rows.end(), 0);
        } else {
            const std::size_t k = std::max<std::size_t>(
                2, static_cast<std::size_t>(std::floor(params.row_subsample *
                                                       static_cast<double>(n))));
            for (std::size_t idx :
                 rng::sample_without_replacement(engine, static_cast<std::size_t>(n), k))
                rows.push_back(static_cast<int>(idx));
            std::sort(rows.begin(), rows.end());
        }
        std::vector<int> feats;
        if (params.feature_subsample >= 1.0) {
            feats.resize(static_cast<std::size_t>(d));
            std::iota(feats.begin(), feats.end(), 0);
        } else {
            const std::size_t k = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::floor(params.feature_subsample *
                                                       static_cast<double>(d))));
            for (std::size_t idx :
                 rng::sample_without_replacement(engine, static_cast<std::size_t>(d), k))
                feats.push_back(static_cast<int>(idx));
            std::sort(feats.begin(), feats.end());
        }

        Tree tree;
        build_node(tree, features, residual, rows, feats, 0, params);
        for (Eigen::Index i = 0; i < n; ++i)
            prediction[i] += params.learning_rate * tree.predict(features.row(i));
        model.trees.push_back(std::move(tree));
        model.train_loss.push_back((targets - prediction).squaredNorm() /
                                   static_cast<double>(n));
    }
    return model;
}

double predict_gbt(const GbtModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != model.n_features)
        throw DimensionMismatch("predict_gbt: expected " +
                                std::to_string(model.n_features) + " features, got " +
                                std::to_string(x.size()));
    double out = model.base_prediction;
    for (const auto& tree : model.trees) out += model.learning_rate * tree.predict(x);
    return out;
}

namespace {

std::vector<GbtParams> enumerate_grid(const HyperGrid& grid) {
    if (grid.learning_rates.empty() || grid.max_depths.empty() || grid.gammas.empty())
        throw EmptyGrid("cv_grid_search: hypergrid has an empty axis");
    std::vector<GbtParams> points;
    for (double lr : grid.learning_rates)
        for (int depth : grid.max_depths)
            for (double gamma : grid.gammas) {
                GbtParams p;
                p.learning_rate = lr;
                p.max_depth = depth;
                p.gamma = gamma;
                p.row_subsample = grid.row_subsample;
                p.feature_subsample = grid.feature_subsample;
                p.rounds = grid.rounds;
                points.push_back(p);
            }
    return points;
}

std::array<GbtModel, 3> train_all_regimes(const std::array<RegimeData, 3>& regimes,
                                          const std::vector<int>& train_flights,
                                          const GbtParams& params, std::uint64_t seed) {
    std::set<int> train_set(train_flights.begin(), train_flights.end());
    std::array<GbtModel, 3> models;
    std::uint64_t seed_state = seed;
    for (std::size_t r = 0; r < 3; ++r) {
        const auto& data = regimes[r];
        std::vector<int> rows;
        for (std::size_t i = 0; i < data.flight_ids.size(); ++i)
            if (train_set.count(data.flight_ids[i])) rows.push_back(static_cast<int>(i));
        Eigen::MatrixXd X(rows.size(), data.features.cols());
        Eigen::VectorXd y(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            X.row(static_cast<Eigen::Index>(i)) = data.features.row(rows[i]);
            y[static_cast<Eigen::Index>(i)] = data.mean_power[rows[i]];
        }
        models[r] = train_gbt(X, y, params, rng::splitmix64(seed_state));
    }
    return models;
}

// Flight-level ARE of a three-regime GBT model set on the given flights.
double mean_flight_are(const std::array<RegimeData, 3>& regimes,
                       const std::array<GbtModel, 3>& models,
                       const std::map<int, double>& measured_energy_j,
                       const std::vector<int>& flights) {
    std::set<int> flight_set(flights.begin(), flights.end());
    std::map<int, double> estimated;
    for (std::size_t r = 0; r < 3; ++r) {
        const auto& data = regimes[r];
        for (std::size_t i = 0; i < data.flight_ids.size(); ++i) {
            const int id = data.flight_ids[i];
            if (!flight_set.count(id)) continue;
            const double p =
                predict_gbt(models[r], data.features.row(static_cast<Eigen::Index>(i))
                                            .transpose());
            estimated[id] += p * data.duration[static_cast<Eigen::Index>(i)];
        }
    }
    double total = 0.0;
    int count = 0;
    for (int id : flights) {
        auto meas = measured_energy_j.find(id);
        auto est = estimated.find(id);
        if (meas == measured_energy_j.end() || est == estimated.end()) continue;
        total += std::abs(meas->second - est->second) / meas->second;
        ++count;
    }
    return count > 0 ? total / count : 0.0;
}

}  // namespace

CvResult cv_grid_search(const std::array<RegimeData, 3>& regimes,
                        const std::map<int, double>& measured_energy_j,
                        const HyperGrid& grid, int folds, std::uint64_t seed) {
    std::set<int> id_set;
    for (const auto& data : regimes)
        id_set.insert(data.flight_ids.begin(), data.flight_ids.end());
    std::vector<int> flights(id_set.begin(), id_set.end());
    if (static_cast<int>(flights.size()) < folds)
        throw TooFewFlights("cv_grid_search: fewer flights than folds");

    // Flight-granularity folds: shuffle once, then deal round-robin.
    auto engine = rng::substream(seed, 0xF01DULL);
    rng::shuffle(flights, engine);
    std::vector<std::vector<int>> fold_flights(static_cast<std::size_t>(folds));
    for (std::size_t i = 0; i < flights.size(); ++i)
        fold_flights[i % static_cast<std::size_t>(folds)].push_back(flights[i]);

    CvResult result;
    result.grid_points = enumerate_grid(grid);
    result.mean_are.assign(result.grid_points.size(), 0.0);

    for (std::size_t g = 0; g < result.grid_points.size(); ++g) {
        double sum = 0.0;
        for (int f = 0; f < folds; ++f) {
            std::vector<int> train, held_out = fold_flights[static_cast<std::size_t>(f)];
            for (int ff = 0; ff < folds; ++ff)
                if (ff != f)
                    train.insert(train.end(), fold_flights[static_cast<std::size_t>(ff)].begin(),
                                 fold_flights[static_cast<std::size_t>(ff)].end());
            const std::uint64_t sub_seed =
                seed + 1 + g * static_cast<std::uint64_t>(folds) + static_cast<std::uint64_t>(f);
            const auto models =
                train_all_regimes(regimes, train, result.grid_points[g], sub_seed);
            const double are =
                mean_flight_are(regimes, models, measured_energy_j, held_out);
            result.table.push_back({static_cast<int>(g), f, are});
            sum += are;
        }
        result.mean_are[g] = sum / folds;
    }

    // Argmin with ties broken toward smaller depth, then smaller learning rate.
    std::size_t best = 0;
    for (std::size_t g = 1; g < result.grid_points.size(); ++g) {
        const auto& a = result.grid_points[g];
        const auto& b = result.grid_points[best];
        const auto key = [&](std::size_t i, const GbtParams& p) {
            return std::make_tuple(result.mean_are[i], p.max_depth, p.learning_rate,
                                   p.gamma);
        };
        if (key(g, a) < key(best, b)) best = g;
    }
    result.best_index = static_cast<int>(best);
    result.best = result.grid_points[best];
    result.final_models =
        train_all_regimes(regimes, flights, result.best, seed + 0xBE57ULL);
    return result;
}

}  // namespace aeroamp::gbt
