#pragma once

#include <vector>

#include "coxmy/linalg.hpp"
#include "coxmy/model.hpp"

namespace coxmy {

// Level-homogeneous blocks of the queue generator. Levels count customers and
// increase upward; arrivals move one level up (skip-free direction), batch
// services jump up to b levels down. Internally everything is expressed in
// this single orientation.
struct QsfBlocks {
    int phases = 0;            // k
    Matrix W0;                 // boundary diagonal block (level 0: no service)
    Matrix W;                  // interior diagonal block, W = W0 - mu*I
    Matrix U;                  // one-level-up block, rank one: c * (1,0,...,0)
    std::vector<Matrix> D;     // D[i-1] = D_i = p_i * mu * I, i = 1..b

    int max_batch() const { return static_cast<int>(D.size()); }
    Matrix d_prime(int k) const;  // D'_k = sum_{i>=k} D_i
};

QsfBlocks make_blocks(const QueueModel& model);  // finite order only

// True iff the skip-free-direction block U has exactly one nonzero column,
// i.e. every entry into a level lands in a single phase.
bool has_exit_state(const QsfBlocks& blocks);

// Generator of the chain truncated at level_cap. Upward rates at the top
// level are folded into the diagonal so the truncated chain stays
// conservative.
Matrix assemble_truncated_generator(const QsfBlocks& blocks, int level_cap);

// Embedded k x k generator on a level with upward excursions lumped into the
// entrance phase (exit-state lumping). Independent of the batch distribution.
Matrix embedded_q_tilde(const QsfBlocks& blocks);

// Absorption blocks A_i (k x k, i = 1..b): direct service rates from level
// m+i into level m, with batches overshooting below m redistributed to the
// entrance phase.
std::vector<Matrix> embedded_a_tilde(const QsfBlocks& blocks);

struct RateMatrixResult {
    Matrix R;                          // pi_m = pi_{m+1} * R
    double gamma = 0.0;                // level factor, < 1 iff ergodic
    std::vector<double> phase_vector;  // beta with beta*R = (1/gamma)*beta, sum 1
    int outer_iterations = 0;          // gamma refinement rounds (1 when b = 1)
};

RateMatrixResult rate_matrix(const QsfBlocks& blocks, double tol = 1e-13, long max_iter = 200);

}  // namespace coxmy
