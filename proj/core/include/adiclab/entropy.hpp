#pragma once

/**
 * @file entropy.hpp
 * @brief Besicovitch-Eggleston dimension and the constrained entropy minimum.
 *
 * The set of x whose base-s digit frequencies equal tau has Hausdorff
 * dimension
 *
 *     dim E[tau] = -sum_i tau_i ln tau_i / ln s.
 *
 * Over the slice C(theta) = { tau on the simplex : sum_i i tau_i = theta },
 * f(tau) = sum_i tau_i ln tau_i attains its minimum m(theta) at the Gibbs
 * vector tau_i ~ exp(lambda i), and -m(theta)/ln s is a lower bound for the
 * dimension of the numbers with asymptotic digit mean theta whose digit
 * frequencies all exist. f is strictly convex on the slice, so the
 * stationary point is the unique minimizer.
 *
 * This module works in binary64; the grid oracle bounds the error of the
 * closed-form route.
 */

#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "adiclab/digits.hpp"

namespace adiclab {

class ProbabilityVector;

/// x ln x with phi(0) = 0. Throws std::domain_error outside [0,1].
double phi(double x);

/// f(tau) = sum_i phi(tau_i).
double neg_entropy(std::span<const double> tau);

/// -sum_i phi(tau_i) / ln s, s = tau.size(). In [0,1].
double be_dimension(const ProbabilityVector& tau);
/// Same for a floating vector. Throws std::domain_error if an entry is
/// outside [0,1] or the entries do not sum to 1 within 1e-9.
double be_dimension(std::span<const double> tau);

struct GibbsVector {
    std::vector<double> tau;
    double mean = 0.0;
};

/// tau_i = exp(lambda i) / Z. Evaluated with the largest exponent shifted
/// to zero, so any finite lambda is safe from overflow. Throws
/// std::domain_error for non-finite lambda.
GibbsVector exp_family_vector(double lambda, Base base = Base());

struct EntropyResult {
    double theta = 0.0;
    double m_value = 0.0;
    std::vector<double> argmin;
    /// Gibbs multiplier; +-infinity at the endpoints theta = 0, s - 1.
    double multiplier = 0.0;
    double dimension_bound = 0.0;
};

inline constexpr double kDefaultMeanTolerance = 1e-10;
inline constexpr double kLambdaBracket = 50.0;

/// Minimum of f over the slice with mean theta, solved by bisection on the
/// Gibbs multiplier in [-50, 50] until |mean(lambda) - theta| <= tol.
/// Endpoints return the point mass, m = 0, bound 0.
/// Throws std::domain_error for theta outside [0, s-1] or tol <= 0, and
/// std::runtime_error if the bracket does not contain theta.
EntropyResult m_theta(double theta, Base base = Base(), double tol = kDefaultMeanTolerance);

struct GridMinimum {
    double theta = 0.0;
    double step = 0.0;
    double m_value = 0.0;
    std::vector<double> argmin;
    std::size_t points_evaluated = 0;
};

/// Independent oracle: scans tau_2..tau_{s-1} on a grid of spacing `step`,
/// solves tau_0, tau_1 from the two constraints and keeps the smallest f.
/// Every grid point is feasible, so the result is >= m(theta).
/// Cost is O(step^-(s-2)). Requires 0 < theta < s - 1, 0 < step <= 1/10.
GridMinimum m_theta_bruteforce(double theta, Base base, double step);

nlohmann::json to_json(const EntropyResult& result);

}  // namespace adiclab
