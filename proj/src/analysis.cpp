#include "coxmy/analysis.hpp"

#include <cmath>

namespace coxmy {

CoxianArrival calibrate(double lambda_star, double q, int k) {
    if (!(lambda_star > 0.0)) throw SchemaError("lambda_star must be positive");
    if (!(q > 0.0 && q <= 1.0)) throw SchemaError("q must lie in (0,1]");
    if (k < 1) throw SchemaError("order must be >= 1");
    const double lambda_k =
        (q == 1.0) ? k * lambda_star : lambda_star * (1.0 - std::pow(q, k)) / (1.0 - q);
    return CoxianArrival::homogeneous(k, lambda_k, q);
}

MetricsRow metrics(const QueueModel& model, const SpectralSolution& sol, double lambda_star) {
    MetricsRow row;
    row.k = model.arrival.is_infinite() ? -1 : model.arrival.order();
    row.lambda_k = model.arrival.lambda(0);
    row.gamma = sol.gamma;
    row.alpha = sol.alpha(1);

    const double rho = lambda_star / model.service.mu();
    const double phi = model.service.phi(sol.gamma);
    const double base = rho / (1.0 - phi);
    row.pi0_bar = 1.0 - base * (1.0 - sol.gamma);
    row.L = base;
    row.W = base / lambda_star;
    row.V = base * ((1.0 + sol.gamma) / (1.0 - sol.gamma) - base);
    return row;
}

namespace {

double phi_prime(const BatchService& service, double x) {
    const auto& p = service.pmf();
    double d = 0.0;
    for (int j = static_cast<int>(p.size()); j >= 1; --j) d = d * x + j * p[j - 1];
    return d;
}

}  // namespace

double gamma_star(double rho, const BatchService& service) {
    if (!(rho > 0.0) || rho >= service.mean_batch())
        throw NotErgodic("requires lambda_star < mu E[Y]");
    auto g = [&](double x) { return std::exp(-(1.0 - service.phi(x)) / rho) - x; };

    double lo = 0.0, hi = 1.0 - 1e-12;
    if (g(hi) > 0.0) throw NoConvergence("no root below 1 - 1e-12", 0, g(hi));
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    double xi = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {  // Newton polish with the analytic derivative
        const double e = std::exp(-(1.0 - service.phi(xi)) / rho);
        const double gp = e * phi_prime(service, xi) / rho - 1.0;
        if (gp == 0.0) break;
        const double next = xi - (e - xi) / gp;
        if (next <= 0.0 || next >= 1.0) break;
        xi = next;
    }
    return xi;
}

double Dm1Distribution::marginal(int m) const {
    if (m < 0) throw IndexOutOfRange("level must be >= 0");
    const double base = rho / (1.0 - phi_sigma);
    if (m == 0) return 1.0 - base * (1.0 - sigma);
    return base * (1.0 - sigma) * (1.0 - sigma) * std::pow(sigma, m - 1);
}

Dm1Distribution dm1_distribution(double rho, const BatchService& service) {
    Dm1Distribution d;
    d.rho = rho;
    d.sigma = gamma_star(rho, service);
    d.phi_sigma = service.phi(d.sigma);
    return d;
}

SweepResult monotonicity_sweep(double lambda_star, double q, const std::vector<int>& k_list,
                               const BatchService& service) {
    SweepResult res;
    res.lambda_star = lambda_star;
    res.q = q;
    res.verdicts.single_batch = service.max_batch() == 1;

    std::vector<double> tail_decay;    // gamma per k, for tail sums
    std::vector<double> tail_at_1;     // P{level >= 1} per k, from the closed form
    for (int k : k_list) {
        const QueueModel model{calibrate(lambda_star, q, k), service};
        const SpectralSolution sol = solve_gamma(model);
        res.rows.push_back(metrics(model, sol, lambda_star));
        tail_decay.push_back(sol.gamma);
        tail_at_1.push_back(1.0 - res.rows.back().pi0_bar);
    }

    auto& v = res.verdicts;
    v.gamma_strictly_decreasing = true;
    v.pi0_strictly_decreasing = true;
    v.pi0_constant = true;
    v.L_nonincreasing = v.W_nonincreasing = v.V_nonincreasing = true;
    v.alpha_strictly_increasing = true;
    v.tail_dominance = true;

    const double eps = 1e-12;
    for (std::size_t i = 1; i < res.rows.size(); ++i) {
        const MetricsRow& a = res.rows[i - 1];
        const MetricsRow& b = res.rows[i];
        v.gamma_strictly_decreasing &= b.gamma < a.gamma - eps;
        v.pi0_strictly_decreasing &= b.pi0_bar < a.pi0_bar - eps;
        v.pi0_constant &= std::fabs(b.pi0_bar - a.pi0_bar) < 1e-10;
        v.L_nonincreasing &= b.L <= a.L + eps;
        v.W_nonincreasing &= b.W <= a.W + eps;
        v.V_nonincreasing &= b.V <= a.V + eps;
        v.alpha_strictly_increasing &= b.alpha > a.alpha + eps;
        // geometric level tails: P{level >= M}, M = 1..50; M = 0 is always 1
        for (int M = 1; M <= 50 && v.tail_dominance; ++M) {
            const double ta = tail_at_1[i - 1] * std::pow(tail_decay[i - 1], M - 1);
            const double tb = tail_at_1[i] * std::pow(tail_decay[i], M - 1);
            v.tail_dominance &= tb <= ta + 1e-12;
        }
    }
    return res;
}

}  // namespace coxmy
