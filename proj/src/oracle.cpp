#include "coxmy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "coxmy/qsf.hpp"

namespace coxmy {

std::vector<double> gth_stationary_dense(const Matrix& generator) {
    if (!generator.square()) throw DimensionMismatch("generator must be square");
    const std::size_t n = generator.rows();
    Matrix q = generator;
    std::vector<double> denom(n, 0.0);

    for (std::size_t s = n - 1; s > 0; --s) {
        double d = 0.0;
        for (std::size_t j = 0; j < s; ++j) d += q(s, j);
        denom[s] = d;
        if (d <= 0.0) throw SingularMatrix("GTH: reducible generator (no exit below state)");
        for (std::size_t i = 0; i < s; ++i) {
            const double f = q(i, s) / d;
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < s; ++j) q(i, j) += f * q(s, j);
        }
    }

    std::vector<double> pi(n, 0.0);
    pi[0] = 1.0;
    for (std::size_t s = 1; s < n; ++s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < s; ++i) acc += pi[i] * q(i, s);
        pi[s] = acc / denom[s];
    }
    long double total = 0.0L;
    for (double v : pi) total += v;
    for (double& v : pi) v = static_cast<double>(v / total);
    return pi;
}

namespace {

// Band storage: entry (i,j) lives at row i, offset j-i+w, |i-j| <= w.
// GTH eliminates the last state first, which keeps all fill inside the band.
class BandedGth {
  public:
    BandedGth(std::size_t n, std::size_t w) : n_(n), w_(w), data_(n * (2 * w + 1), 0.0) {}

    double& at(std::size_t i, std::size_t j) {
        const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
        if (off < -static_cast<std::ptrdiff_t>(w_) || off > static_cast<std::ptrdiff_t>(w_))
            throw DimensionMismatch("entry outside band");
        return data_[i * (2 * w_ + 1) + static_cast<std::size_t>(off + static_cast<std::ptrdiff_t>(w_))];
    }

    std::vector<double> stationary() {
        std::vector<double> denom(n_, 0.0);
        for (std::size_t s = n_ - 1; s > 0; --s) {
            const std::size_t lo = (s > w_) ? s - w_ : 0;
            double d = 0.0;
            for (std::size_t j = lo; j < s; ++j) d += at(s, j);
            denom[s] = d;
            if (d <= 0.0) throw SingularMatrix("GTH: reducible generator");
            for (std::size_t i = lo; i < s; ++i) {
                const double f = at(i, s) / d;
                if (f == 0.0) continue;
                for (std::size_t j = lo; j < s; ++j) at(i, j) += f * at(s, j);
            }
        }
        std::vector<double> pi(n_, 0.0);
        pi[0] = 1.0;
        for (std::size_t s = 1; s < n_; ++s) {
            const std::size_t lo = (s > w_) ? s - w_ : 0;
            double acc = 0.0;
            for (std::size_t i = lo; i < s; ++i) acc += pi[i] * at(i, s);
            pi[s] = acc / denom[s];
        }
        long double total = 0.0L;
        for (double v : pi) total += v;
        for (double& v : pi) v = static_cast<double>(v / total);
        return pi;
    }

  private:
    std::size_t n_, w_;
    std::vector<double> data_;
};

struct LevelLaw {
    double mu;
    std::vector<double> pmf;
};

// Truncated generator with a per-level service law; blocked upward rates at
// the cap are folded into the diagonal.
std::vector<double> banded_truncated_stationary(const QueueModel& model, int level_cap,
                                                const std::function<LevelLaw(int)>& law,
                                                int max_batch_bound) {
    const int k = model.arrival.order();
    const std::size_t n = static_cast<std::size_t>(level_cap + 1) * k;
    if (n > 50000) throw CapacityExceeded("truncated chain exceeds 50000 states");
    const std::size_t w = static_cast<std::size_t>((max_batch_bound + 1) * k);
    BandedGth g(n, w);
    auto idx = [k](int m, int i) { return static_cast<std::size_t>(m) * k + i; };

    for (int m = 0; m <= level_cap; ++m) {
        const LevelLaw lw = law(m);
        const int b = static_cast<int>(lw.pmf.size());
        for (int i = 0; i < k; ++i) {
            const double lam = model.arrival.lambda(i);
            const double qi = model.arrival.q(i);
            // arrival phase transitions
            if (i + 1 < k) g.at(idx(m, i), idx(m, i + 1)) += qi * lam;
            const double up = (1.0 - qi) * lam;
            if (m < level_cap)
                g.at(idx(m, i), idx(m + 1, 0)) += up;
            // at the cap the upward rate is dropped (folded into the diagonal)
            double out_rate = (m < level_cap) ? lam : lam - up;
            // services
            if (m >= 1) {
                for (int s = 1; s <= b; ++s) {
                    const int dest = std::max(m - s, 0);  // overshoot lands in level 0
                    g.at(idx(m, i), idx(dest, i)) += lw.pmf[s - 1] * lw.mu;
                }
                out_rate += lw.mu;
            }
            g.at(idx(m, i), idx(m, i)) -= out_rate;
        }
    }
    return g.stationary();
}

}  // namespace

std::vector<double> oracle_stationary(const QueueModel& model, int level_cap) {
    if (model.arrival.is_infinite()) throw InvalidBlocks("oracle requires a finite order");
    if (level_cap < model.service.max_batch() + 1)
        throw InvalidBlocks("level_cap must exceed the maximum batch size");
    const LevelLaw lw{model.service.mu(), model.service.pmf()};
    return banded_truncated_stationary(
        model, level_cap, [&](int) { return lw; }, model.service.max_batch());
}

std::vector<double> oracle_stationary_variable(const QueueModel& model, const VariableRatePlan& plan,
                                               int level_cap) {
    if (model.arrival.is_infinite()) throw InvalidBlocks("oracle requires a finite order");
    int max_b = model.service.max_batch();
    for (const auto& pmf : plan.pmfs) max_b = std::max(max_b, static_cast<int>(pmf.size()));
    return banded_truncated_stationary(
        model, level_cap,
        [&](int m) -> LevelLaw {
            if (m <= plan.threshold) return {plan.mus.at(m), plan.pmfs.at(m)};
            return {model.service.mu(), model.service.pmf()};
        },
        max_b);
}

std::vector<double> oracle_finite(const QueueModel& model, int S, BlockingPolicy policy) {
    return gth_stationary_dense(assemble_finite_generator(model, S, policy));
}

OracleReport compare_with_oracle(const StationaryDistribution& dist, int level_cap, int level_limit) {
    const std::vector<double> oracle = oracle_stationary(dist.model(), level_cap);
    const int k = dist.model().arrival.order();
    OracleReport rep;
    rep.level_cap = level_cap;
    const double gamma = dist.solution().gamma;
    rep.tail_mass_bound = std::pow(gamma, level_cap) / (1.0 - gamma);
    for (int m = 0; m <= std::min(level_limit, level_cap); ++m)
        for (int i = 0; i < k; ++i) {
            const double a = dist.prob(m, i);
            const double o = oracle[static_cast<std::size_t>(m) * k + i];
            const double err = std::fabs(a - o);
            rep.max_abs_error = std::max(rep.max_abs_error, err);
            if (a > 1e-12) rep.max_rel_error = std::max(rep.max_rel_error, err / a);
        }
    return rep;
}

namespace {

Matrix censored_generator(const Matrix& q, std::size_t s) {
    const std::size_t n = q.rows();
    Matrix out(n - 1, n - 1);
    const double qs = -q(s, s);
    if (qs <= 0.0) throw NotTransient("censored state has no exit rate");
    std::size_t ri = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == s) continue;
        std::size_t rj = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == s) continue;
            out(ri, rj) = q(i, j) + q(i, s) * q(s, j) / qs;
            ++rj;
        }
        ++ri;
    }
    return out;
}

Matrix neg_inverse_checked(const Matrix& q) {
    Matrix inv;
    try {
        inv = invert(q).scaled(-1.0);
    } catch (const SingularMatrix&) {
        throw NotTransient("generator is not invertible (conservative chain?)");
    }
    for (std::size_t i = 0; i < inv.rows(); ++i)
        if (inv(i, i) <= 0.0) throw NotTransient("-q^{-1} has a nonpositive diagonal entry");
    return inv;
}

}  // namespace

CensoringReport censoring_identity_check(const Matrix& q, std::size_t s) {
    if (!q.square() || q.rows() < 2) throw DimensionMismatch("need a square generator of order >= 2");
    const std::size_t n = q.rows();
    const Matrix tau = neg_inverse_checked(q);              // expected sojourn times
    const Matrix tau_c = neg_inverse_checked(censored_generator(q, s));

    CensoringReport rep;
    std::size_t ri = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == s) continue;
        std::size_t rj = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == s) continue;
            rep.censored_inverse_error =
                std::max(rep.censored_inverse_error, std::fabs(tau_c(ri, rj) - tau(i, j)));
            ++rj;
        }
        ++ri;
    }
    const double qs = -q(s, s);
    std::size_t rj = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == s) continue;
        double acc = 0.0;
        std::size_t rr = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == s) continue;
            acc += q(s, r) / qs * tau_c(rr, rj);
            ++rr;
        }
        rep.exit_row_error = std::max(rep.exit_row_error, std::fabs(tau(s, j) - acc));
        ++rj;
    }
    return rep;
}

SeriesReport sojourn_series_check(const Matrix& q, int n_terms) {
    const std::size_t n = q.rows();
    const Matrix tau = neg_inverse_checked(q);

    // jump chain P^J_{ij} = q_ij / q_i (i != j)
    Matrix jump(n, n);
    std::vector<double> rates(n);
    for (std::size_t i = 0; i < n; ++i) {
        rates[i] = -q(i, i);
        if (rates[i] <= 0.0) throw NotTransient("zero exit rate");
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) jump(i, j) = q(i, j) / rates[i];
    }

    // sum_{m < N} P^{J,m} * diag(1/q_j)
    Matrix acc(n, n);
    Matrix power = Matrix::identity(n);
    for (int m = 0; m < n_terms; ++m) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc(i, j) += power(i, j) / rates[j];
        power = power * jump;
    }

    SeriesReport rep;
    rep.max_error = (tau - acc).max_abs();
    // dropped tail equals P^{J,N} * tau exactly; bound it by row-sum norms
    auto inf_norm = [n](const Matrix& m) {
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += std::fabs(m(i, j));
            best = std::max(best, row);
        }
        return best;
    };
    rep.remainder_bound = inf_norm(power) * inf_norm(tau);
    return rep;
}

Matrix random_transient_generator(std::mt19937& rng, int order) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> leak_dist(0.0, 0.5);
    Matrix q(order, order);
    std::vector<int> leaky;
    while (leaky.empty())
        for (int i = 0; i < order; ++i)
            if (unif(rng) < 0.5) leaky.push_back(i);
    for (int i = 0; i < order; ++i) {
        double row = 0.0;
        for (int j = 0; j < order; ++j) {
            if (i == j) continue;
            q(i, j) = unif(rng);
            row += q(i, j);
        }
        double leak = 0.0;
        if (std::find(leaky.begin(), leaky.end(), i) != leaky.end()) leak = leak_dist(rng) + 1e-3;
        q(i, i) = -(row + leak);
    }
    return q;
}

}  // namespace coxmy
