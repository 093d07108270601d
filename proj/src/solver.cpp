#include "coxmy/solver.hpp"

#include <algorithm>
#include <cmath>

namespace coxmy {

double SpectralSolution::alpha(int i) const {
    if (i < 1) throw IndexOutOfRange("alpha index must be >= 1");
    if (alphas.size() == 1) return alphas[0];
    return alphas.at(i - 1);
}

namespace {

double alpha_of(const QueueModel& model, int i, double phi) {
    // phase factor: alpha_i = lambda_{i-1} / (lambda_i + mu (1 - phi))
    const double mu = model.service.mu();
    return model.arrival.lambda(i - 1) / (model.arrival.lambda(i) + mu * (1.0 - phi));
}

double fixpoint_general(const QueueModel& model, double gamma) {
    const double mu = model.service.mu();
    const double phi = model.service.phi(gamma);
    const int k = model.arrival.order();
    const double lambda0 = model.arrival.lambda(0);

    double sum = lambda0 * (1.0 - model.arrival.q(0));
    double prod = 1.0;
    for (int i = 1; i < k; ++i) {
        prod *= model.arrival.q(i - 1) * alpha_of(model, i, phi);
        sum += prod * (1.0 - model.arrival.q(i)) * model.arrival.lambda(i);
    }
    return (sum + gamma * mu * phi) / (lambda0 + mu);
}

double fixpoint_erlang(const QueueModel& model, double gamma) {
    const double lambda = model.arrival.lambda(0);
    const double mu = model.service.mu();
    const double a = lambda / (lambda + mu * (1.0 - model.service.phi(gamma)));
    return std::pow(a, model.arrival.order());
}

double fixpoint_cox_inf(const QueueModel& model, double gamma) {
    const double lq = model.arrival.lambda(0) * (1.0 - model.arrival.q(0));
    return lq / (lq + model.service.mu() * (1.0 - model.service.phi(gamma)));
}

}  // namespace

double fixpoint_F(const QueueModel& model, double gamma) {
    if (model.arrival.is_infinite()) return fixpoint_cox_inf(model, gamma);
    if (model.arrival.is_erlang()) return fixpoint_erlang(model, gamma);
    return fixpoint_general(model, gamma);
}

SpectralSolution solve_gamma(const QueueModel& model, RootMethod method, double gamma0, double tol,
                             long max_iter) {
    if (!is_ergodic(model)) throw NotErgodic("model violates the arrival/service rate condition");
    if (!(gamma0 > 0.0 && gamma0 < 1.0)) throw IndexOutOfRange("gamma0 must lie in (0,1)");
    if (max_iter < 0) max_iter = (method == RootMethod::FixedPoint) ? 1000000 : 200;

    SpectralSolution sol;
    sol.method = method;
    double gamma = gamma0;

    switch (method) {
        case RootMethod::FixedPoint: {
            long it = 0;
            double res = 1.0;
            for (; it < max_iter; ++it) {
                const double next = fixpoint_F(model, gamma);
                res = std::fabs(next - gamma);
                gamma = next;
                if (res < tol) break;
            }
            if (res >= tol) throw NoConvergence("fixed-point iteration stalled", it, res);
            sol.iterations = it + 1;
            break;
        }
        case RootMethod::Newton: {
            const double h = 1e-7;
            long it = 0;
            for (; it < max_iter; ++it) {
                const double g = fixpoint_F(model, gamma) - gamma;
                if (std::fabs(g) < tol) break;
                const double gp =
                    (fixpoint_F(model, gamma + h) - fixpoint_F(model, gamma - h)) / (2.0 * h) - 1.0;
                if (gp == 0.0) throw NoConvergence("Newton derivative vanished", it, g);
                gamma = std::clamp(gamma - g / gp, 0.0, 1.0 - 1e-9);
            }
            if (it == max_iter) throw NoConvergence("Newton iteration stalled", it, 0.0);
            sol.iterations = it;
            break;
        }
        case RootMethod::Bisection: {
            double lo = 0.0, hi = 1.0 - 1e-8;
            if (fixpoint_F(model, hi) - hi > 0.0)
                throw NoConvergence("no sign change below 1 - 1e-8 (nearly null recurrent)", 0, 0.0);
            long it = 0;
            for (; it < max_iter && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (fixpoint_F(model, mid) - mid > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            gamma = 0.5 * (lo + hi);
            // polish with a couple of fixed-point steps (stable fixpoint)
            for (int p = 0; p < 3; ++p) gamma = fixpoint_F(model, gamma);
            sol.iterations = it;
            break;
        }
    }

    if (gamma > 1.0 - 1e-8)
        throw NoConvergence("gamma indistinguishable from 1 (spectral gap below 1e-8)", sol.iterations,
                            std::fabs(fixpoint_F(model, gamma) - gamma));

    sol.gamma = gamma;
    sol.residual = std::fabs(fixpoint_F(model, gamma) - gamma);
    const double phi = model.service.phi(gamma);
    if (model.arrival.is_infinite()) {
        const double lambda = model.arrival.lambda(0);
        sol.alphas = {lambda / (lambda + model.service.mu() * (1.0 - phi))};
    } else {
        for (int i = 1; i < model.arrival.order(); ++i) sol.alphas.push_back(alpha_of(model, i, phi));
        if (model.arrival.order() == 1) {
            const double lambda = model.arrival.lambda(0);
            sol.alphas = {lambda / (lambda + model.service.mu() * (1.0 - phi))};
        }
    }
    return sol;
}

StationaryDistribution::StationaryDistribution(QueueModel model, SpectralSolution solution)
    : model_(std::move(model)), sol_(std::move(solution)) {
    const double gamma = sol_.gamma;
    const double mu = model_.service.mu();
    const double lambda0 = model_.arrival.lambda(0);
    phi_ = model_.service.phi(gamma);
    // boundary recursion constant: sum_{m>=1} gamma^{m-1} D'_m collapses to
    // mu (1-phi)/(1-gamma), so the inhomogeneous term carries no extra factor
    c_ = 1.0;

    if (model_.arrival.is_infinite()) {
        const double q = model_.arrival.q(0);
        pi00_ = (1.0 - q) * (1.0 - sol_.alpha(1));
    } else {
        double geom = 0.0;  // sum_{i>=1} (lambda_0/lambda_i) prod_{j<i} q_j
        double prodq = 1.0;
        for (int i = 1; i < model_.arrival.order(); ++i) {
            prodq *= model_.arrival.q(i - 1);
            geom += lambda0 / model_.arrival.lambda(i) * prodq;
        }
        pi00_ = 1.0 / ((1.0 + lambda0 / (mu * (1.0 - phi_))) * (1.0 + geom));
    }
    coeff_ = pi00_ * lambda0 * (1.0 - gamma) / (mu * (1.0 - phi_));
    pi10_ = coeff_;
}

double StationaryDistribution::phase_profile(int i) const {
    if (model_.arrival.is_infinite()) {
        const double qa = model_.arrival.q(0) * sol_.alpha(1);
        return std::pow(qa, i);
    }
    double prod = 1.0;
    for (int l = 1; l <= i; ++l) prod *= model_.arrival.q(l - 1) * sol_.alpha(l);
    return prod;
}

double StationaryDistribution::profile_sum() const {
    if (model_.arrival.is_infinite()) {
        const double qa = model_.arrival.q(0) * sol_.alpha(1);
        return 1.0 / (1.0 - qa);
    }
    double sum = 0.0, prod = 1.0;
    for (int i = 0; i < model_.arrival.order(); ++i) {
        sum += prod;
        if (i + 1 < model_.arrival.order()) prod *= model_.arrival.q(i) * sol_.alpha(i + 1);
    }
    return sum;
}

double StationaryDistribution::boundary(int i) const {
    if (i < 0 || (!model_.arrival.is_infinite() && i >= model_.arrival.order()))
        throw IndexOutOfRange("phase index out of range");
    if (i == 0) return pi00_;
    double alpha_sum = 0.0, aprod = 1.0;
    for (int j = 1; j <= i; ++j) {
        aprod *= sol_.alpha(j);
        alpha_sum += aprod;
    }
    double reach = 1.0;  // (lambda_0/lambda_i) prod_{s<i} q_s
    for (int s = 0; s < i; ++s) reach *= model_.arrival.q(s);
    reach *= model_.arrival.lambda(0) / model_.arrival.lambda(i);
    return pi00_ * reach * (1.0 + c_ * alpha_sum);
}

double StationaryDistribution::prob(int m, int i) const {
    if (m < 0) throw IndexOutOfRange("level must be >= 0");
    if (m == 0) return boundary(i);
    if (i < 0 || (!model_.arrival.is_infinite() && i >= model_.arrival.order()))
        throw IndexOutOfRange("phase index out of range");
    return coeff_ * std::pow(sol_.gamma, m - 1) * phase_profile(i);
}

double StationaryDistribution::level_marginal(int m) const {
    if (m < 0) throw IndexOutOfRange("level must be >= 0");
    if (m >= 1) return coeff_ * std::pow(sol_.gamma, m - 1) * profile_sum();
    if (!model_.arrival.is_infinite()) {
        double sum = 0.0;
        for (int i = 0; i < model_.arrival.order(); ++i) sum += boundary(i);
        return sum;
    }
    const double q = model_.arrival.q(0);
    const double qa = q * sol_.alpha(1);
    return pi00_ * (1.0 + c_ * qa / (1.0 - qa)) / (1.0 - q);
}

double StationaryDistribution::total_mass() const {
    return level_marginal(0) + coeff_ * profile_sum() / (1.0 - sol_.gamma);
}

std::vector<double> StationaryDistribution::boundary_row() const {
    if (model_.arrival.is_infinite())
        throw IndexOutOfRange("boundary_row requires a finite order");
    std::vector<double> row(model_.arrival.order());
    for (int i = 0; i < model_.arrival.order(); ++i) row[i] = boundary(i);
    return row;
}

StationaryDistribution boundary_distribution(const QueueModel& model, const SpectralSolution& sol) {
    return StationaryDistribution(model, sol);
}

double stationary_prob(const StationaryDistribution& dist, int m, int i) { return dist.prob(m, i); }

double level_marginal(const StationaryDistribution& dist, int m) { return dist.level_marginal(m); }

}  // namespace coxmy
