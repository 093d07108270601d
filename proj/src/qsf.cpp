#include "coxmy/qsf.hpp"

#include <cmath>

namespace coxmy {

Matrix QsfBlocks::d_prime(int k) const {
    Matrix sum(phases, phases);
    for (int i = k; i <= max_batch(); ++i) sum = sum + D[i - 1];
    return sum;
}

QsfBlocks make_blocks(const QueueModel& model) {
    if (model.arrival.is_infinite())
        throw InvalidBlocks("blocks require a finite Coxian order");
    const int k = model.arrival.order();
    const double mu = model.service.mu();
    QsfBlocks blocks;
    blocks.phases = k;

    blocks.W0 = Matrix(k, k);
    for (int i = 0; i < k; ++i) {
        blocks.W0(i, i) = -model.arrival.lambda(i);
        if (i + 1 < k) blocks.W0(i, i + 1) = model.arrival.q(i) * model.arrival.lambda(i);
    }
    blocks.W = blocks.W0 - Matrix::identity(k).scaled(mu);

    blocks.U = Matrix(k, k);
    for (int i = 0; i < k; ++i)
        blocks.U(i, 0) = (1.0 - model.arrival.q(i)) * model.arrival.lambda(i);

    for (int j = 1; j <= model.service.max_batch(); ++j)
        blocks.D.push_back(Matrix::identity(k).scaled(model.service.p(j) * mu));
    return blocks;
}

bool has_exit_state(const QsfBlocks& blocks) {
    int nonzero_col = -1;
    for (int j = 0; j < blocks.phases; ++j) {
        bool any = false;
        for (int i = 0; i < blocks.phases; ++i)
            if (blocks.U(i, j) != 0.0) any = true;
        if (any) {
            if (nonzero_col >= 0) return false;
            nonzero_col = j;
        }
    }
    return nonzero_col >= 0;
}

Matrix assemble_truncated_generator(const QsfBlocks& blocks, int level_cap) {
    const int k = blocks.phases;
    const int b = blocks.max_batch();
    if (level_cap < b + 1) throw InvalidBlocks("level_cap must be at least b+1");

    // Pre-truncation conservativeness: each interior row of (D' ... D1 W U)
    // must sum to zero.
    for (int i = 0; i < k; ++i) {
        double row = 0.0;
        for (int j = 0; j < k; ++j) {
            row += blocks.W(i, j) + blocks.U(i, j);
            for (const Matrix& d : blocks.D) row += d(i, j);
        }
        if (std::fabs(row) > 1e-9)
            throw InvalidBlocks("interior block row " + std::to_string(i) + " does not sum to 0");
    }

    const int n = (level_cap + 1) * k;
    Matrix g(n, n);
    auto put = [&](int lm, int li, int cm, int ci, double v) {
        if (v != 0.0) g(lm * k + li, cm * k + ci) += v;
    };

    for (int m = 0; m <= level_cap; ++m) {
        const Matrix& diag = (m == 0) ? blocks.W0 : blocks.W;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) put(m, i, m, j, diag(i, j));
        if (m < level_cap) {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) put(m, i, m + 1, j, blocks.U(i, j));
        } else {
            // fold the blocked upward rates back into the diagonal
            for (int i = 0; i < k; ++i) {
                double up = 0.0;
                for (int j = 0; j < k; ++j) up += blocks.U(i, j);
                put(m, i, m, i, up);
            }
        }
        for (int s = 1; s <= b && s <= m; ++s) {
            const Matrix d = (s == m) ? blocks.d_prime(s) : blocks.D[s - 1];
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) put(m, i, m - s, j, d(i, j));
        }
    }
    return g;
}

namespace {

// Normalized entrance profile: row of U with entries, scaled to sum 1.
std::vector<double> entrance_profile(const QsfBlocks& blocks) {
    if (!has_exit_state(blocks)) throw NoExitState("upward block has no exit-state structure");
    for (int i = 0; i < blocks.phases; ++i) {
        double row = 0.0;
        for (int j = 0; j < blocks.phases; ++j) row += blocks.U(i, j);
        if (row > 0.0) {
            std::vector<double> prof(blocks.phases, 0.0);
            for (int j = 0; j < blocks.phases; ++j) prof[j] = blocks.U(i, j) / row;
            return prof;
        }
    }
    throw NoExitState("upward block is zero");
}

}  // namespace

Matrix embedded_q_tilde(const QsfBlocks& blocks) {
    const int k = blocks.phases;
    const std::vector<double> prof = entrance_profile(blocks);
    Matrix q = blocks.W;
    for (int i = 0; i < k; ++i) {
        double down = 0.0;
        for (const Matrix& d : blocks.D)
            for (int j = 0; j < k; ++j) down += d(i, j);
        for (int j = 0; j < k; ++j) q(i, j) += down * prof[j];
    }
    return q;
}

std::vector<Matrix> embedded_a_tilde(const QsfBlocks& blocks) {
    const int k = blocks.phases;
    const int b = blocks.max_batch();
    const std::vector<double> prof = entrance_profile(blocks);
    std::vector<Matrix> out;
    out.reserve(b);
    for (int i = 1; i <= b; ++i) {
        Matrix a = blocks.D[i - 1];
        for (int r = 0; r < k; ++r) {
            double overshoot = 0.0;
            for (int s = i + 1; s <= b; ++s)
                for (int j = 0; j < k; ++j) overshoot += blocks.D[s - 1](r, j);
            for (int j = 0; j < k; ++j) a(r, j) += overshoot * prof[j];
        }
        out.push_back(std::move(a));
    }
    return out;
}

RateMatrixResult rate_matrix(const QsfBlocks& blocks, double tol, long max_iter) {
    const Matrix q_tilde = embedded_q_tilde(blocks);
    const std::vector<Matrix> a = embedded_a_tilde(blocks);
    const Matrix neg_q_inv = invert(q_tilde.scaled(-1.0));
    const int b = static_cast<int>(a.size());

    RateMatrixResult res;
    double gamma = 0.5;
    for (long it = 0; it < max_iter; ++it) {
        Matrix acc = a[0];
        double g = 1.0;
        for (int i = 2; i <= b; ++i) {
            g *= gamma;
            acc = acc + a[i - 1].scaled(g);
        }
        res.R = acc * neg_q_inv;
        const EigenPair pair = dominant_left_eigenpair(res.R, 1e-14, 200000);
        const double next = 1.0 / pair.value;
        res.phase_vector = pair.left_vector;
        res.outer_iterations = static_cast<int>(it) + 1;
        const bool done = (b == 1) || std::fabs(next - gamma) < tol;
        gamma = next;
        if (done) {
            res.gamma = gamma;
            return res;
        }
    }
    throw NoConvergence("rate-matrix gamma refinement did not converge", max_iter, 0.0);
}

}  // namespace coxmy
