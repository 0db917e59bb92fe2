// Discrete heat equation du/dt = -L u on a graph: exact spectral solution,
// a fixed-step RK4 integrator as an independent oracle, and the transient
// analysis that ties long-time extremes back to the Fiedler vector.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fiedlerlab/graph.hpp"
#include "fiedlerlab/spectral.hpp"

namespace fiedlerlab {

struct HeatState {
    double t = 0.0;
    Eigen::VectorXd u;
};

// Time-ordered samples of one diffusion run.
struct HeatTrajectory {
    std::vector<HeatState> samples;
};

// u(t) = sum_i (u0, e_i) exp(-lambda_i t) e_i via full_spectrum. Refuses
// graphs above the dense cap; use heat_solve_rk4 there instead.
HeatState heat_solve_spectral(const Graph& g, const Eigen::VectorXd& u0, double t);

// Same expansion against an already computed spectrum.
HeatState heat_solve_spectral(const Spectrum& spectrum, const Eigen::VectorXd& u0, double t);

// One expansion, many sample times. Times must be strictly increasing and
// nonnegative.
HeatTrajectory heat_trajectory_spectral(const Graph& g, const Eigen::VectorXd& u0,
                                        const std::vector<double>& times);

// Classical fixed-step RK4 for du/dt = -L u, final partial step shortened to
// land exactly on t. Requires dt <= 0.1 / max_degree (stability guard).
HeatState heat_solve_rk4(const Graph& g, const Eigen::VectorXd& u0, double t, double dt);

HeatTrajectory heat_trajectory_rk4(const Graph& g, const Eigen::VectorXd& u0,
                                   const std::vector<double>& times, double dt);

struct TransientReport {
    double t_star = 0.0;
    std::vector<int> hot_vertices;   // argmax set of u(t_star)
    std::vector<int> cold_vertices;  // argmin set of u(t_star)
    std::vector<int> fiedler_hot;    // argmax set of sigma * e2
    std::vector<int> fiedler_cold;   // argmin set of sigma * e2
    bool matched = false;            // hot == fiedler_hot and cold == fiedler_cold
};

// Picks t_star so the non-Fiedler transient is at most 1e-8 of the Fiedler
// mode (triangle-inequality bound over modes i >= 3), evaluates u(t_star)
// spectrally, and compares its extreme-vertex sets against +-e2 oriented by
// sigma = sign((u0, e2)). Requires a connected graph, a simple lambda2, and
// |(u0, e2)| > 1e-9.
TransientReport transient_extremes(const Graph& g, const Eigen::VectorXd& u0);

// Tie tolerance used when grouping heat extremes: coarse enough to absorb
// the residual 1e-8 transient, far finer than any real separation here.
inline constexpr double kHeatTieTol = 1e-6;

}  // namespace fiedlerlab
