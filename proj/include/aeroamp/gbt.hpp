#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "aeroamp/errors.hpp"

namespace aeroamp::gbt {

// Flat binary regression tree. feature < 0 marks a leaf.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;
    double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

struct GbtParams {
    double learning_rate = 0.1;
    int max_depth = 4;
    double gamma = 0.0;  // minimum loss reduction to keep a split
    double row_subsample = 0.75;
    double feature_subsample = 0.75;
    int rounds = 200;
};

struct GbtModel {
    std::vector<Tree> trees;
    double learning_rate = 0.1;
    double base_prediction = 0.0;  // mean of training targets
    int n_features = 0;
    std::vector<double> train_loss;  // full-training-set MSE after each round
};

struct HyperGrid {
    std::vector<double> learning_rates{0.05, 0.1, 0.3};
    std::vector<int> max_depths{2, 4, 6};
    std::vector<double> gammas{0.0, 1.0, 10.0};
    double row_subsample = 0.75;
    double feature_subsample = 0.75;
    int rounds = 200;
};

// Gradient boosting with quadratic loss: each round fits one depth-limited
// tree to the residuals on a row/feature subsample, greedy variance-reduction
// splits, deterministic per seed.
GbtModel train_gbt(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                   const GbtParams& params, std::uint64_t seed);

double predict_gbt(const GbtModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

// Per-regime training table: one row per flight.
struct RegimeData {
    Eigen::MatrixXd features;      // n_flights x n_features
    Eigen::VectorXd mean_power;    // W, regression target
    Eigen::VectorXd duration;      // s, used for flight-level energy
    std::vector<int> flight_ids;   // row -> flight
};

struct CvCell {
    int grid_point = 0;
    int fold = 0;
    double are = 0.0;
};

struct CvResult {
    GbtParams best;
    int best_index = 0;
    std::vector<GbtParams> grid_points;
    std::vector<CvCell> table;                  // one cell per (grid point, fold)
    std::vector<double> mean_are;               // per grid point
    std::array<GbtModel, 3> final_models;       // winner retrained on all flights
};

// Flight-granularity k-fold grid search over the hypergrid; flight-level ARE
// is the tuning metric. Ties go to smaller depth, then smaller learning rate.
// The winner is retrained on the full training fold.
CvResult cv_grid_search(const std::array<RegimeData, 3>& regimes,
                        const std::map<int, double>& measured_energy_j,
                        const HyperGrid& grid, int folds, std::uint64_t seed);

}  // namespace aeroamp::gbt
