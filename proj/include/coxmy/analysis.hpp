#pragma once

#include <vector>

#include "coxmy/model.hpp"
#include "coxmy/solver.hpp"

namespace coxmy {

// Homogeneous Cox(k) arrival with mean inter-arrival time 1/lambda_star:
// rate lambda_star (1 - q^k)/(1 - q), or k lambda_star in the Erlang case.
CoxianArrival calibrate(double lambda_star, double q, int k);

struct MetricsRow {
    int k = 0;
    double lambda_k = 0.0;
    double gamma = 0.0;
    double alpha = 0.0;
    double pi0_bar = 0.0;  // probability of an empty system
    double L = 0.0;        // mean number of customers
    double W = 0.0;        // mean sojourn time (Little)
    double V = 0.0;        // variance of the number of customers
};

// Closed-form performance metrics at the solved gamma. rho = lambda_star/mu.
MetricsRow metrics(const QueueModel& model, const SpectralSolution& sol, double lambda_star);

// Root xi < 1 of xi = exp(-(1 - phi_Y(xi))/rho), the deterministic-arrival
// limit of the geometric decay rate. Bisection plus Newton polish.
double gamma_star(double rho, const BatchService& service);

// Level marginals of the D/M^Y/1 queue.
struct Dm1Distribution {
    double rho = 0.0;
    double sigma = 0.0;
    double phi_sigma = 0.0;

    double marginal(int m) const;
};

Dm1Distribution dm1_distribution(double rho, const BatchService& service);

struct SweepVerdicts {
    bool gamma_strictly_decreasing = false;
    bool pi0_strictly_decreasing = false;
    bool pi0_constant = false;  // expected when Y == 1 a.s.
    bool L_nonincreasing = false;
    bool W_nonincreasing = false;
    bool V_nonincreasing = false;
    bool alpha_strictly_increasing = false;
    bool tail_dominance = false;  // only evaluated for Y == 1
    bool single_batch = false;    // P{Y=1} = 1
};

struct SweepResult {
    double lambda_star = 0.0;
    double q = 0.0;
    std::vector<MetricsRow> rows;  // ordered by k
    SweepVerdicts verdicts;
};

// Fixed-mean family across the given orders; rows are reported for every k and
// the verdicts record the observed monotonicity patterns.
SweepResult monotonicity_sweep(double lambda_star, double q, const std::vector<int>& k_list,
                               const BatchService& service);

}  // namespace coxmy
