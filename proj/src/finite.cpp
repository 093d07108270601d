#include "coxmy/finite.hpp"

#include <cmath>
#include <numeric>

#include "coxmy/oracle.hpp"
#include "coxmy/qsf.hpp"

namespace coxmy {

double FiniteSolution::level_marginal(int m) const {
    const auto& row = pi.at(m);
    return std::accumulate(row.begin(), row.end(), 0.0);
}

double VariableRateSolution::prob(int m, int i) const {
    if (m <= threshold) return pi.at(m).at(i);
    return std::pow(gamma, m - threshold - 1) * tail_profile.at(i);
}

Matrix top_level_q_tilde(const QueueModel& model, BlockingPolicy policy) {
    if (model.arrival.is_infinite()) throw InvalidBlocks("finite capacity requires a finite order");
    const int k = model.arrival.order();
    const double mu = model.service.mu();
    Matrix q(k, k);
    for (int i = 0; i < k; ++i) {
        const double lam = model.arrival.lambda(i);
        q(i, 0) += mu;  // services leave the level and return through phase 0
        if (policy == BlockingPolicy::PhaseFreeze) {
            if (i + 1 < k) {
                q(i, i) += -(lam + mu);
                q(i, i + 1) += lam;
            } else {
                q(i, i) += -mu;  // last phase waits for a departure
            }
        } else {
            q(i, i) += -(lam + mu);
            if (i + 1 < k) q(i, i + 1) += model.arrival.q(i) * lam;
            q(i, 0) += (1.0 - model.arrival.q(i)) * lam;  // lost arrival, phase restarts
        }
    }
    return q;
}

namespace {

// Diagonal block of the full generator at the capacity level (services not
// included; they appear as D blocks).
Matrix blocked_diag(const QueueModel& model, BlockingPolicy policy) {
    const int k = model.arrival.order();
    const double mu = model.service.mu();
    Matrix t = top_level_q_tilde(model, policy);
    for (int i = 0; i < k; ++i) t(i, 0) -= mu;  // strip the censored return rate
    return t;
}

}  // namespace

Matrix assemble_finite_generator(const QueueModel& model, int S, BlockingPolicy policy) {
    const QsfBlocks blocks = make_blocks(model);
    const int k = blocks.phases;
    const int b = blocks.max_batch();
    const int n = (S + 1) * k;
    Matrix g(n, n);
    auto add_block = [&](int lm, int cm, const Matrix& blk) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) g(lm * k + i, cm * k + j) += blk(i, j);
    };

    const Matrix top = blocked_diag(model, policy);
    for (int m = 0; m <= S; ++m) {
        if (m == S)
            add_block(m, m, top);
        else
            add_block(m, m, m == 0 ? blocks.W0 : blocks.W);
        if (m < S) add_block(m, m + 1, blocks.U);
        for (int s = 1; s <= b && s <= m; ++s)
            add_block(m, m - s, (s == m) ? blocks.d_prime(s) : blocks.D[s - 1]);
    }
    return g;
}

FiniteSolution solve_finite(const QueueModel& model, int S, BlockingPolicy policy) {
    if (S < 1) throw InvalidBlocks("capacity must be >= 1");
    const QsfBlocks blocks = make_blocks(model);
    const int k = blocks.phases;
    const int b = blocks.max_batch();
    const Matrix q_tilde = embedded_q_tilde(blocks);
    const std::vector<Matrix> a = embedded_a_tilde(blocks);

    FiniteSolution out;
    out.capacity = S;
    out.phases = k;
    out.pi.assign(S + 1, std::vector<double>(k, 0.0));

    // top level: stationary vector of the censored generator
    out.pi[S] = gth_stationary_dense(top_level_q_tilde(model, policy));

    // backward recursion: pi_m * Qtilde = -sum_i pi_{m+i} * A_i
    const Matrix q_t = q_tilde.transpose();
    for (int m = S - 1; m >= 1; --m) {
        std::vector<double> rhs(k, 0.0);
        for (int i = 1; i <= b && m + i <= S; ++i) {
            const std::vector<double> contrib = vec_mat(out.pi[m + i], a[i - 1]);
            for (int j = 0; j < k; ++j) rhs[j] -= contrib[j];
        }
        out.pi[m] = solve(q_t, rhs);
    }

    // boundary level from the level-0 balance columns: pi_0 W0 = -sum pi_m D'_m
    {
        std::vector<double> rhs(k, 0.0);
        for (int m = 1; m <= b && m <= S; ++m) {
            const std::vector<double> contrib = vec_mat(out.pi[m], blocks.d_prime(m));
            for (int j = 0; j < k; ++j) rhs[j] -= contrib[j];
        }
        out.pi[0] = solve(blocks.W0.transpose(), rhs);
    }

    long double total = 0.0L;
    for (const auto& row : out.pi)
        for (double v : row) total += v;
    for (auto& row : out.pi)
        for (double& v : row) v = static_cast<double>(v / total);
    return out;
}

namespace {

struct ServiceLaw {
    double mu;
    std::vector<double> pmf;
    int max_batch() const { return static_cast<int>(pmf.size()); }
};

ServiceLaw law_at(const QueueModel& model, const VariableRatePlan& plan, int level) {
    if (level <= plan.threshold) return {plan.mus.at(level), plan.pmfs.at(level)};
    return {model.service.mu(), model.service.pmf()};
}

Matrix q_tilde_for(const QueueModel& model, const ServiceLaw& law) {
    const int k = model.arrival.order();
    Matrix q(k, k);
    for (int i = 0; i < k; ++i) {
        q(i, i) = -(model.arrival.lambda(i) + law.mu);
        if (i + 1 < k) q(i, i + 1) = model.arrival.q(i) * model.arrival.lambda(i);
        q(i, 0) += law.mu;
    }
    return q;
}

// A_i for service out of a level governed by `law`.
Matrix a_block_for(int k, const ServiceLaw& law, int i) {
    Matrix a = Matrix::identity(k).scaled(law.pmf.at(i - 1) * law.mu);
    double overshoot = 0.0;
    for (int s = i + 1; s <= law.max_batch(); ++s) overshoot += law.pmf[s - 1] * law.mu;
    for (int r = 0; r < k; ++r) a(r, 0) += overshoot;
    return a;
}

}  // namespace

VariableRateSolution solve_variable_rates(const QueueModel& model, const VariableRatePlan& plan) {
    if (model.arrival.is_infinite()) throw InvalidBlocks("variable rates require a finite order");
    if (static_cast<int>(plan.mus.size()) != plan.threshold + 1 ||
        static_cast<int>(plan.pmfs.size()) != plan.threshold + 1)
        throw InvalidBlocks("plan must provide a law for every level 0..S");
    for (const auto& pmf : plan.pmfs) BatchService(1.0, pmf);  // validates each pmf
    if (!is_ergodic(model)) throw NotErgodic("homogeneous law above the threshold is not ergodic");

    const int k = model.arrival.order();
    const int S = plan.threshold;
    const SpectralSolution sol = solve_gamma(model);
    const double gamma = sol.gamma;

    VariableRateSolution out;
    out.threshold = S;
    out.phases = k;
    out.gamma = gamma;
    out.pi.assign(S + 1, std::vector<double>(k, 0.0));

    // unnormalized geometric continuation with the homogeneous phase profile
    std::vector<double> profile(k, 0.0);
    {
        double prod = 1.0;
        for (int i = 0; i < k; ++i) {
            profile[i] = prod;
            if (i + 1 < k) prod *= model.arrival.q(i) * sol.alpha(i + 1);
        }
    }
    auto level_above = [&](int m) {  // m >= S+1
        std::vector<double> v(k);
        for (int i = 0; i < k; ++i) v[i] = std::pow(gamma, m - S - 1) * profile[i];
        return v;
    };

    int max_b = model.service.max_batch();
    for (int m = 1; m <= S; ++m) max_b = std::max(max_b, law_at(model, plan, m).max_batch());

    auto level_pi = [&](int m) {
        return (m > S) ? level_above(m) : out.pi[m];
    };

    for (int m = S; m >= 1; --m) {
        const ServiceLaw own = law_at(model, plan, m);
        std::vector<double> rhs(k, 0.0);
        for (int i = 1; i <= max_b; ++i) {
            const ServiceLaw src = law_at(model, plan, m + i);
            if (i > src.max_batch()) continue;
            const std::vector<double> contrib = vec_mat(level_pi(m + i), a_block_for(k, src, i));
            for (int j = 0; j < k; ++j) rhs[j] -= contrib[j];
        }
        out.pi[m] = solve(q_tilde_for(model, own).transpose(), rhs);
    }

    // level-0 columns: pi_0 W0 = -sum_m pi_m D'^{(m)}_m
    {
        Matrix w0(k, k);
        for (int i = 0; i < k; ++i) {
            w0(i, i) = -model.arrival.lambda(i);
            if (i + 1 < k) w0(i, i + 1) = model.arrival.q(i) * model.arrival.lambda(i);
        }
        std::vector<double> rhs(k, 0.0);
        for (int m = 1; m <= max_b; ++m) {
            const ServiceLaw src = law_at(model, plan, m);
            if (m > src.max_batch()) continue;
            double rate = 0.0;  // D'_m = sum_{j>=m} p_j mu
            for (int j = m; j <= src.max_batch(); ++j) rate += src.pmf[j - 1] * src.mu;
            const std::vector<double> lv = level_pi(m);
            for (int j = 0; j < k; ++j) rhs[j] -= lv[j] * rate;
        }
        out.pi[0] = solve(w0.transpose(), rhs);
    }

    long double total = 0.0L;
    for (const auto& row : out.pi)
        for (double v : row) total += v;
    const double profile_sum = std::accumulate(profile.begin(), profile.end(), 0.0);
    total += profile_sum / (1.0 - gamma);  // levels S+1 and above

    out.tail_profile = profile;
    for (auto& v : out.tail_profile) v = static_cast<double>(v / total);
    for (auto& row : out.pi)
        for (double& v : row) v = static_cast<double>(v / total);
    return out;
}

}  // namespace coxmy
