#pragma once

#include <vector>

#include "coxmy/linalg.hpp"
#include "coxmy/model.hpp"
#include "coxmy/solver.hpp"

namespace coxmy {

// What happens to the arrival process while the system is full.
// PhaseFreeze: phase completions keep advancing at full rate lambda_i and the
//   customer waits in the last phase until a service frees space.
// LossRestart: a completed arrival is lost and the inter-arrival process
//   restarts at phase 0 (phase transitions keep their q_i weights).
enum class BlockingPolicy { PhaseFreeze, LossRestart };

struct FiniteSolution {
    int capacity = 0;  // levels 0..S
    int phases = 0;
    std::vector<std::vector<double>> pi;  // pi[m][i]

    double prob(int m, int i) const { return pi.at(m).at(i); }
    double level_marginal(int m) const;
};

// Per-level service laws for levels <= threshold; the model's own law applies
// above the threshold.
struct VariableRatePlan {
    int threshold = 0;  // S
    std::vector<double> mus;                  // mus[m], m = 0..S
    std::vector<std::vector<double>> pmfs;    // pmfs[m]
};

struct VariableRateSolution {
    int threshold = 0;
    int phases = 0;
    std::vector<std::vector<double>> pi;  // levels 0..S explicit
    double gamma = 0.0;
    std::vector<double> tail_profile;  // pi[S+1+j][i] = gamma^j * tail_profile[i]

    double prob(int m, int i) const;
};

// Censored top-level generator of the size-S queue (k x k, conservative).
Matrix top_level_q_tilde(const QueueModel& model, BlockingPolicy policy);

// Full generator of the finite-capacity queue on levels 0..S.
Matrix assemble_finite_generator(const QueueModel& model, int S, BlockingPolicy policy);

// Stationary distribution by backward recursion from the top level.
FiniteSolution solve_finite(const QueueModel& model, int S,
                            BlockingPolicy policy = BlockingPolicy::PhaseFreeze);

VariableRateSolution solve_variable_rates(const QueueModel& model, const VariableRatePlan& plan);

}  // namespace coxmy
