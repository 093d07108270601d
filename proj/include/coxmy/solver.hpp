#pragma once

#include <vector>

#include "coxmy/model.hpp"

namespace coxmy {

enum class RootMethod { FixedPoint, Newton, Bisection };

struct SpectralSolution {
    double gamma = 0.0;
    std::vector<double> alphas;  // alpha_1..alpha_{k-1}; single alpha for Cox(inf)
    RootMethod method = RootMethod::FixedPoint;
    long iterations = 0;
    double residual = 0.0;

    double alpha(int i) const;  // 1-based phase factor
};

// One evaluation of the fixpoint map F. gamma = 1 is always a fixpoint; the
// interior fixpoint < 1 exists iff the model is ergodic. Dispatches to the
// closed Erlang / Cox(inf) forms when the model qualifies.
double fixpoint_F(const QueueModel& model, double gamma);

SpectralSolution solve_gamma(const QueueModel& model, RootMethod method = RootMethod::FixedPoint,
                             double gamma0 = 0.5, double tol = 1e-12, long max_iter = -1);

// Full stationary distribution in product form: boundary level plus the
// geometric levels m >= 1.
class StationaryDistribution {
  public:
    StationaryDistribution(QueueModel model, SpectralSolution solution);

    const QueueModel& model() const { return model_; }
    const SpectralSolution& solution() const { return sol_; }
    double pi00() const { return pi00_; }
    double pi10() const { return pi10_; }

    double boundary(int i) const;      // pi_{(0,i)}
    double prob(int m, int i) const;   // pi_{(m,i)}
    double level_marginal(int m) const;
    double total_mass() const;         // closed-form sum over all states, == 1

    // finite order only: materialized boundary row
    std::vector<double> boundary_row() const;

  private:
    double phase_profile(int i) const;  // prod_{l=1}^{i} q_{l-1} alpha_l
    double profile_sum() const;         // sum_i phase_profile(i)

    QueueModel model_;
    SpectralSolution sol_;
    double pi00_ = 0.0;
    double pi10_ = 0.0;
    double phi_ = 0.0;     // phi_Y(gamma)
    double c_ = 0.0;       // boundary recursion constant (identically 1)
    double coeff_ = 0.0;   // pi00 * lambda_0 (1-gamma) / (mu (1-phi))
};

StationaryDistribution boundary_distribution(const QueueModel& model, const SpectralSolution& sol);
double stationary_prob(const StationaryDistribution& dist, int m, int i);
double level_marginal(const StationaryDistribution& dist, int m);

}  // namespace coxmy
