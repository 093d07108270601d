#pragma once

#include <random>
#include <vector>

#include "coxmy/finite.hpp"
#include "coxmy/linalg.hpp"
#include "coxmy/model.hpp"
#include "coxmy/solver.hpp"

namespace coxmy {

// Stationary vector of a conservative generator by GTH state reduction
// (subtraction free). Dense variant for small matrices.
std::vector<double> gth_stationary_dense(const Matrix& generator);

// Brute-force stationary distribution of the level-truncated chain, states
// (m,i) flattened as m*k+i. Uses banded GTH storage; the generator bandwidth
// is (b+1)*k. Throws CapacityExceeded beyond 50000 states.
std::vector<double> oracle_stationary(const QueueModel& model, int level_cap);

// Same with level-dependent service laws below the plan threshold.
std::vector<double> oracle_stationary_variable(const QueueModel& model, const VariableRatePlan& plan,
                                               int level_cap);

// Exact finite-capacity chain solved by GTH, for checking solve_finite.
std::vector<double> oracle_finite(const QueueModel& model, int S, BlockingPolicy policy);

struct OracleReport {
    int level_cap = 0;
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;  // over states with pi > 1e-12
    double tail_mass_bound = 0.0;
};

// Compares the analytic product form against the truncated-chain solution on
// levels <= level_limit.
OracleReport compare_with_oracle(const StationaryDistribution& dist, int level_cap, int level_limit);

struct CensoringReport {
    double censored_inverse_error = 0.0;  // max |q~^{-1}_{ij} - q^{-1}_{ij}|
    double exit_row_error = 0.0;          // max |q^{-1}_{sj} - sum_r (q_sr/q_s) q~^{-1}_{rj}|
};

// Verifies the censoring identities for a transient generator q and a
// censored-out state s.
CensoringReport censoring_identity_check(const Matrix& q, std::size_t s);

struct SeriesReport {
    double max_error = 0.0;        // |-q^{-1} - truncated Neumann series| (max norm)
    double remainder_bound = 0.0;  // geometric bound on the dropped tail
};

// Checks -q^{-1} against the jump-chain Neumann series truncated at n_terms.
SeriesReport sojourn_series_check(const Matrix& q, int n_terms);

// Random strictly substochastic generator: off-diagonal rates uniform(0,1),
// an extra leak uniform(0,0.5) on a random nonempty subset of rows.
Matrix random_transient_generator(std::mt19937& rng, int order);

}  // namespace coxmy
