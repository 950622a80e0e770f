#include "adiclab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "adiclab/probability.hpp"

namespace adiclab {

namespace {

constexpr int kMaxBisectionSteps = 400;

EntropyResult point_mass(double theta, Base base, std::size_t index) {
    EntropyResult r;
    r.theta = theta;
    r.argmin.assign(static_cast<std::size_t>(base.value()), 0.0);
    r.argmin[index] = 1.0;
    r.m_value = 0.0;
    r.dimension_bound = 0.0;
    r.multiplier = index == 0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    return r;
}

struct GridScan {
    double theta;
    double step;
    int s;
    std::size_t steps_per_unit;
    std::vector<double> tau;
    GridMinimum best;

    // Assigns tau[i] for i = index..2 (descending), with `mass` and `moment`
    // the running sums over already-assigned coordinates >= 2.
    void scan(int index, double mass, double moment) {
        if (index < 2) {
            double t1 = theta - moment;
            double t0 = 1.0 - t1 - mass;
            if (t1 < -1e-12 || t0 < -1e-12) return;
            tau[1] = std::max(t1, 0.0);
            tau[0] = std::max(t0, 0.0);
            ++best.points_evaluated;
            double f = neg_entropy(tau);
            if (f < best.m_value) {
                best.m_value = f;
                best.argmin = tau;
            }
            return;
        }
        for (std::size_t j = 0; j <= steps_per_unit; ++j) {
            double t = static_cast<double>(j) * step;
            double next_moment = moment + index * t;
            if (next_moment > theta + 1e-12 || mass + t > 1.0 + 1e-12) break;
            tau[static_cast<std::size_t>(index)] = t;
            scan(index - 1, mass + t, next_moment);
        }
        tau[static_cast<std::size_t>(index)] = 0.0;
    }
};

}  // namespace

double phi(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("phi: argument outside [0,1]");
    return x == 0.0 ? 0.0 : x * std::log(x);
}

double neg_entropy(std::span<const double> tau) {
    double f = 0.0;
    for (double t : tau) f += phi(t);
    return f;
}

double be_dimension(std::span<const double> tau) {
    if (tau.size() < 2) throw std::domain_error("be_dimension: need at least two digits");
    double sum = 0.0;
    for (double t : tau) {
        if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("be_dimension: entry outside [0,1]");
        sum += t;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::domain_error("be_dimension: entries do not sum to 1");
    // 0.0 - f rather than -f: point masses give +0, not -0.
    return (0.0 - neg_entropy(tau)) / std::log(static_cast<double>(tau.size()));
}

double be_dimension(const ProbabilityVector& tau) {
    std::vector<double> t = tau.to_doubles();
    return be_dimension(std::span<const double>(t));
}

GibbsVector exp_family_vector(double lambda, Base base) {
    if (!std::isfinite(lambda)) throw std::domain_error("exp_family_vector: lambda must be finite");
    const int s = base.value();
    const double top = lambda > 0.0 ? lambda * (s - 1) : 0.0;
    GibbsVector g;
    g.tau.resize(static_cast<std::size_t>(s));
    double z = 0.0;
    for (int i = 0; i < s; ++i) {
        g.tau[static_cast<std::size_t>(i)] = std::exp(lambda * i - top);
        z += g.tau[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < s; ++i) {
        g.tau[static_cast<std::size_t>(i)] /= z;
        g.mean += i * g.tau[static_cast<std::size_t>(i)];
    }
    return g;
}

EntropyResult m_theta(double theta, Base base, double tol) {
    const double top = base.max_digit();
    if (!(theta >= 0.0 && theta <= top)) {
        throw std::domain_error("m_theta: theta must lie in [0, " + std::to_string(base.max_digit()) + "]");
    }
    if (!(tol > 0.0)) throw std::domain_error("m_theta: tolerance must be positive");
    if (theta == 0.0) return point_mass(theta, base, 0);
    if (theta == top) return point_mass(theta, base, base.max_digit());

    double lo = -kLambdaBracket;
    double hi = kLambdaBracket;
    if (!(exp_family_vector(lo, base).mean < theta && theta < exp_family_vector(hi, base).mean)) {
        throw std::runtime_error("m_theta: theta outside the multiplier bracket");
    }

    double lambda = 0.0;
    GibbsVector g = exp_family_vector(lambda, base);
    for (int step = 0; step < kMaxBisectionSteps && std::abs(g.mean - theta) > tol; ++step) {
        if (g.mean < theta) lo = lambda; else hi = lambda;
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        lambda = mid;
        g = exp_family_vector(lambda, base);
    }
    if (std::abs(g.mean - theta) > tol) throw std::runtime_error("m_theta: bisection did not reach tolerance");

    EntropyResult r;
    r.theta = theta;
    r.multiplier = lambda;
    r.m_value = neg_entropy(g.tau);
    r.argmin = std::move(g.tau);
    r.dimension_bound = -r.m_value / std::log(static_cast<double>(base.value()));
    return r;
}

GridMinimum m_theta_bruteforce(double theta, Base base, double step) {
    const double top = base.max_digit();
    if (!(theta > 0.0 && theta < top)) throw std::domain_error("m_theta_bruteforce: theta must be interior");
    if (!(step > 0.0 && step <= 0.1)) throw std::domain_error("m_theta_bruteforce: step must be in (0, 1/10]");

    const int s = base.value();
    GridScan scan{theta, step, s, static_cast<std::size_t>(std::floor(1.0 / step + 1e-9)),
                  std::vector<double>(static_cast<std::size_t>(s), 0.0), {}};
    scan.best.theta = theta;
    scan.best.step = step;
    scan.best.m_value = std::numeric_limits<double>::infinity();
    scan.scan(s - 1, 0.0, 0.0);
    if (scan.best.points_evaluated == 0) throw std::runtime_error("m_theta_bruteforce: no feasible grid point");
    return std::move(scan.best);
}

nlohmann::json to_json(const EntropyResult& result) {
    nlohmann::json j{{"theta", result.theta},
                     {"m", result.m_value},
                     {"argmin", result.argmin},
                     {"dimension_bound", result.dimension_bound}};
    // JSON has no infinities; the endpoint multiplier is written as null.
    j["lambda"] = std::isfinite(result.multiplier) ? nlohmann::json(result.multiplier) : nlohmann::json(nullptr);
    return j;
}

}  // namespace adiclab
