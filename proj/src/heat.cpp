#include "fiedlerlab/heat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace fiedlerlab {

namespace {

void require_matching_length(const Graph& g, const Eigen::VectorXd& u0) {
    if (u0.size() != g.vertex_count()) {
        throw std::invalid_argument("u0 has length " + std::to_string(u0.size()) +
                                    " but the graph has " + std::to_string(g.vertex_count()) +
                                    " vertices");
    }
    if (!u0.allFinite()) {
        throw std::invalid_argument("u0 has non-finite entries");
    }
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("time must be finite and nonnegative, got " +
                                    std::to_string(t));
    }
}

void require_increasing(const std::vector<double>& times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        require_time(times[i]);
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw std::invalid_argument("sample times must be strictly increasing");
        }
    }
}

Eigen::VectorXd spectral_state(const Spectrum& spectrum, const Eigen::VectorXd& coeffs,
                               double t) {
    const Eigen::Index n = spectrum.eigenvalues.size();
    Eigen::VectorXd damped(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // Clamp tiny negative round-off in lambda1 so exp() never amplifies.
        const double lambda = std::max(spectrum.eigenvalues(i), 0.0);
        damped(i) = coeffs(i) * std::exp(-lambda * t);
    }
    return spectrum.eigenvectors * damped;
}

}  // namespace

HeatState heat_solve_spectral(const Spectrum& spectrum, const Eigen::VectorXd& u0, double t) {
    if (u0.size() != spectrum.eigenvalues.size()) {
        throw std::invalid_argument("u0 length does not match the spectrum dimension");
    }
    require_time(t);
    const Eigen::VectorXd coeffs = spectrum.eigenvectors.transpose() * u0;
    return HeatState{t, spectral_state(spectrum, coeffs, t)};
}

HeatState heat_solve_spectral(const Graph& g, const Eigen::VectorXd& u0, double t) {
    require_matching_length(g, u0);
    if (g.vertex_count() > kDenseSpectrumCap) {
        throw std::invalid_argument("spectral heat solve needs a dense eigendecomposition and n = " +
                                    std::to_string(g.vertex_count()) + " exceeds the cap of " +
                                    std::to_string(kDenseSpectrumCap) +
                                    "; use heat_solve_rk4 instead");
    }
    return heat_solve_spectral(full_spectrum(g), u0, t);
}

HeatTrajectory heat_trajectory_spectral(const Graph& g, const Eigen::VectorXd& u0,
                                        const std::vector<double>& times) {
    require_matching_length(g, u0);
    require_increasing(times);
    if (g.vertex_count() > kDenseSpectrumCap) {
        throw std::invalid_argument("spectral heat solve exceeds the dense cap; use heat_solve_rk4");
    }
    const Spectrum spectrum = full_spectrum(g);
    const Eigen::VectorXd coeffs = spectrum.eigenvectors.transpose() * u0;
    HeatTrajectory trajectory;
    trajectory.samples.reserve(times.size());
    for (double t : times) {
        trajectory.samples.push_back(HeatState{t, spectral_state(spectrum, coeffs, t)});
    }
    return trajectory;
}

HeatState heat_solve_rk4(const Graph& g, const Eigen::VectorXd& u0, double t, double dt) {
    require_matching_length(g, u0);
    require_time(t);
    const int max_degree = g.max_degree();
    const double bound = 0.1 / std::max(max_degree, 1);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("dt must be finite and positive");
    }
    if (dt > bound) {
        throw std::invalid_argument("dt = " + std::to_string(dt) +
                                    " violates the stability guard dt <= 0.1/max_degree = " +
                                    std::to_string(bound));
    }

    const LaplacianView view(g);
    Eigen::VectorXd u = u0;
    double elapsed = 0.0;
    while (elapsed < t) {
        const double h = std::min(dt, t - elapsed);
        const Eigen::VectorXd k1 = -view.apply(u);
        const Eigen::VectorXd k2 = -view.apply(u + 0.5 * h * k1);
        const Eigen::VectorXd k3 = -view.apply(u + 0.5 * h * k2);
        const Eigen::VectorXd k4 = -view.apply(u + h * k3);
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        elapsed += h;
    }
    return HeatState{t, std::move(u)};
}

HeatTrajectory heat_trajectory_rk4(const Graph& g, const Eigen::VectorXd& u0,
                                   const std::vector<double>& times, double dt) {
    require_matching_length(g, u0);
    require_increasing(times);
    HeatTrajectory trajectory;
    trajectory.samples.reserve(times.size());
    Eigen::VectorXd u = u0;
    double current = 0.0;
    for (double t : times) {
        const HeatState advanced = heat_solve_rk4(g, u, t - current, dt);
        u = advanced.u;
        current = t;
        trajectory.samples.push_back(HeatState{t, u});
    }
    return trajectory;
}

TransientReport transient_extremes(const Graph& g, const Eigen::VectorXd& u0) {
    require_matching_length(g, u0);
    if (!is_connected(g)) {
        throw std::invalid_argument("transient analysis requires a connected graph");
    }
    if (g.vertex_count() < 3) {
        throw std::invalid_argument("transient analysis needs at least 3 vertices");
    }
    if (g.vertex_count() > kDenseSpectrumCap) {
        throw std::invalid_argument("transient analysis exceeds the dense cap of " +
                                    std::to_string(kDenseSpectrumCap));
    }

    const Spectrum spectrum = full_spectrum(g);
    const Eigen::Index n = spectrum.eigenvalues.size();
    const double lambda2 = spectrum.eigenvalues(1);
    const double lambda3 = spectrum.eigenvalues(2);
    const double spectral_gap = lambda3 - lambda2;
    if (spectral_gap <= 1e-8 * std::max(1.0, lambda2)) {
        throw std::invalid_argument(
            "lambda2 is degenerate (gap " + std::to_string(spectral_gap) +
            "); the Fiedler direction is not unique and the transient comparison is undefined");
    }

    Eigen::VectorXd e2 = spectrum.eigenvectors.col(1);
    const Eigen::VectorXd coeffs = spectrum.eigenvectors.transpose() * u0;
    const double c2 = coeffs(1);
    if (std::abs(c2) <= 1e-9) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3g", c2);
        throw std::invalid_argument("(u0, e2) = " + std::string(buf) +
                                    " is too close to zero; the Fiedler mode never dominates");
    }

    // Sum_{i>=3} |c_i| e^{-lambda_i t} <= S e^{-lambda3 t}, so the transient
    // ratio drops below 1e-8 once t >= ln(S / (1e-8 |c2|)) / (lambda3 - lambda2).
    double subdominant_mass = 0.0;
    for (Eigen::Index i = 2; i < n; ++i) subdominant_mass += std::abs(coeffs(i));
    double t_star = 0.0;
    if (subdominant_mass > 0.0) {
        t_star = std::max(0.0, std::log(subdominant_mass / (1e-8 * std::abs(c2))) / spectral_gap);
    }

    TransientReport report;
    report.t_star = t_star;
    const Eigen::VectorXd u_star = spectral_state(spectrum, coeffs, t_star);
    report.hot_vertices = extreme_max_set(u_star, kHeatTieTol);
    report.cold_vertices = extreme_min_set(u_star, kHeatTieTol);

    const double sigma = c2 >= 0.0 ? 1.0 : -1.0;
    const Eigen::VectorXd oriented = sigma * e2;
    report.fiedler_hot = extreme_max_set(oriented, kHeatTieTol);
    report.fiedler_cold = extreme_min_set(oriented, kHeatTieTol);
    report.matched = report.hot_vertices == report.fiedler_hot &&
                     report.cold_vertices == report.fiedler_cold;
    return report;
}

}  // namespace fiedlerlab
