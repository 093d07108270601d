// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "coxmy/analysis.hpp"
#include "coxmy/finite.hpp"
#include "coxmy/oracle.hpp"
#include "coxmy/qsf.hpp"
#include "coxmy/solver.hpp"

using namespace coxmy;

namespace {

const BatchService kBatch(0.8, {0.25, 0.5, 0.25});

int failures = 0;

void report(int idx, bool ok, const std::string& what) {
    std::printf("criterion %d: %s  %s\n", idx, ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

struct Cell {
    double gamma;
    double alpha;
    bool near_zero = false;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

// Reference values, 4 decimals; near_zero marks cells reported as "about 0".
const std::vector<std::vector<Cell>> kTable1 = {
    // k = 2, 5, 20, 1000, infinity per row; q = 0.1 .. 1.0
    {{0.4168, 0.4414}, {0.4153, 0.4411}, {0.4153, 0.4411}, {0.4153, 0.4411}, {0.4153, 0.4411}},
    {{0.3847, 0.4339}, {0.3788, 0.4325}, {0.3788, 0.4325}, {0.3788, 0.4325}, {0.3788, 0.4325}},
    {{0.3538, 0.4272}, {0.3406, 0.4246}, {0.3406, 0.4246}, {0.3406, 0.4246}, {0.3406, 0.4246}},
    {{0.3239, 0.4214}, {0.3006, 0.4173}, {0.3005, 0.4172}, {0.3005, 0.4172}, {0.3005, 0.4172}},
    {{0.2948, 0.4163}, {0.2585, 0.4105}, {0.2582, 0.4104}, {0.2582, 0.4104}, {0.2582, 0.4104}},
    {{0.2663, 0.4117}, {0.2141, 0.4042}, {0.2134, 0.4042}, {0.2134, 0.4042}, {0.2134, 0.4042}},
    {{0.2385, 0.4076}, {0.1673, 0.3986}, {0.1658, 0.3984}, {0.1658, 0.3984}, {0.1658, 0.3984}},
    {{0.2113, 0.4039}, {0.1176, 0.3935}, {0.1147, 0.3932}, {0.1147, 0.3932}, {0.1147, 0.3932}},
    {{0.1845, 0.4006}, {0.0648, 0.3890}, {0.0598, 0.3886}, {0.0598, 0.3886}, {0.0598, 0.3886}},
    {{0.1581, 0.3976}, {0.0085, 0.3851}, {0.0, 0.3846, true}, {0.0, 0.3846, true},
     {0.0, 0.3846, true}},
};

const std::vector<std::vector<Cell>> kTable2 = {
    // k = 2, 5, 10, 20, 50, 1000 per row; q = 0.1 .. 0.9
    {{0.4485, 0.4734}, {0.4502, 0.4764}, {0.4502, 0.4764}, {0.4502, 0.4764}, {0.4502, 0.4764},
     {0.4502, 0.4764}},
    {{0.4439, 0.4939}, {0.4501, 0.5057}, {0.4502, 0.5058}, {0.4502, 0.5058}, {0.4502, 0.5058},
     {0.4502, 0.5058}},
    {{0.4371, 0.5120}, {0.4494, 0.5383}, {0.4502, 0.5391}, {0.4502, 0.5391}, {0.4502, 0.5391},
     {0.4502, 0.5391}},
    {{0.4286, 0.5283}, {0.4472, 0.5738}, {0.4502, 0.5771}, {0.4502, 0.5771}, {0.4502, 0.5771},
     {0.4502, 0.5771}},
    {{0.4189, 0.5429}, {0.4415, 0.6111}, {0.4499, 0.6206}, {0.4502, 0.6209}, {0.4502, 0.6209},
     {0.4502, 0.6209}},
    // the (k=10, alpha) cell recomputes to 0.66998 at 40-digit precision from
    // the same gamma = 0.4482
    {{0.4082, 0.5563}, {0.4300, 0.6488}, {0.4482, 0.6700}, {0.4502, 0.6718}, {0.4502, 0.6718},
     {0.4502, 0.6718}},
    {{0.3968, 0.5685}, {0.4105, 0.6853}, {0.4413, 0.7243}, {0.4499, 0.7316}, {0.4502, 0.7319},
     {0.4502, 0.7319}},
    {{0.3848, 0.5798}, {0.3811, 0.7197}, {0.4195, 0.7796}, {0.4463, 0.8012}, {0.4502, 0.8037},
     {0.4502, 0.8037}},
    {{0.3725, 0.5902}, {0.3407, 0.7514}, {0.3658, 0.8307}, {0.4139, 0.8738}, {0.4484, 0.8905},
     {0.4502, 0.8912}},
};

void criterion_1() {
    const double t0 = now_seconds();
    bool ok = true;
    std::string detail;
    const std::vector<int> ks{2, 5, 20, 1000};
    for (int qi = 0; qi < 10; ++qi) {
        const double q = (qi + 1) / 10.0;
        for (int col = 0; col < 5; ++col) {
            CoxianArrival arr = (col < 4) ? CoxianArrival::homogeneous(ks[col], 0.5, q)
                                          : CoxianArrival::infinite(0.5, q);
            const SpectralSolution sol =
                solve_gamma({arr, kBatch}, RootMethod::FixedPoint, 0.35);
            const Cell& ref = kTable1[qi][col];
            bool cell_ok = std::fabs(sol.alpha(1) - ref.alpha) < 1e-4;
            cell_ok &= ref.near_zero ? sol.gamma < 5e-5 : std::fabs(sol.gamma - ref.gamma) < 1e-4;
            if (!cell_ok && ok) {
                ok = false;
                detail = " first mismatch at q=" + std::to_string(q) + " col " + std::to_string(col);
            }
        }
    }
    const double dt = now_seconds() - t0;
    ok &= dt < 5.0;
    report(1, ok, "first table: 50 (gamma, alpha) cells to 1e-4, " +
                      std::to_string(dt).substr(0, 5) + "s" + detail);
}

void criterion_2() {
    const double t0 = now_seconds();
    bool ok = true;
    std::string detail;
    const std::vector<int> ks{2, 5, 10, 20, 50, 1000};
    for (int qi = 0; qi < 9; ++qi) {
        const double q = (qi + 1) / 10.0;
        for (int col = 0; col < 6; ++col) {
            const SpectralSolution sol = solve_gamma({calibrate(0.5, q, ks[col]), kBatch},
                                                     RootMethod::FixedPoint, 0.35);
            const Cell& ref = kTable2[qi][col];
            const bool cell_ok = std::fabs(sol.gamma - ref.gamma) < 1e-4 &&
                                 std::fabs(sol.alpha(1) - ref.alpha) < 1e-4;
            if (!cell_ok && ok) {
                ok = false;
                detail = " first mismatch at q=" + std::to_string(q) + " col " + std::to_string(col);
            }
        }
    }
    const double dt = now_seconds() - t0;
    ok &= dt < 5.0;
    report(2, ok, "calibrated table: 54 cells to 1e-4, " + std::to_string(dt).substr(0, 5) + "s" +
                      detail);
}

void criterion_3() {
    bool ok = true;
    int models = 0;
    double worst = 0.0;
    for (int k : {1, 2, 3, 5})
        for (double q : {0.3, 0.7, 1.0})
            for (int b : {1, 3}) {
                if (k == 1 && q != 0.3) continue;  // q is irrelevant at order 1
                const BatchService srv =
                    (b == 1) ? BatchService(0.8, {1.0}) : BatchService(0.8, {0.25, 0.5, 0.25});
                const QueueModel m{CoxianArrival::homogeneous(k, 0.5, q), srv};
                if (!is_ergodic(m)) continue;
                ++models;
                const StationaryDistribution dist(m, solve_gamma(m));
                const OracleReport rep = compare_with_oracle(dist, 300, 100);
                worst = std::max(worst, rep.max_abs_error);
                ok &= rep.max_abs_error < 1e-8;
            }
    ok &= models >= 10;
    report(3, ok, "analytic vs truncated-chain oracle on " + std::to_string(models) +
                      " models, worst abs error " + std::to_string(worst));
}

void criterion_4() {
    bool ok = true;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const int k = 1 + static_cast<int>(u(rng) * 5);
        std::vector<double> lam(k), qs(k);
        for (int i = 0; i < k; ++i) {
            lam[i] = 0.1 + 1.5 * u(rng);
            qs[i] = 0.05 + 0.9 * u(rng);
        }
        qs[k - 1] = 0.0;
        const QueueModel m{CoxianArrival::finite(lam, qs),
                           BatchService(0.2 + u(rng), {0.3, 0.3, 0.4})};
        ok &= std::fabs(fixpoint_F(m, 1.0) - 1.0) < 1e-12;
    }

    const QueueModel hom{CoxianArrival::homogeneous(5, 0.5, 0.5), kBatch};
    const double g1 = solve_gamma(hom, RootMethod::FixedPoint).gamma;
    const double g2 = solve_gamma(hom, RootMethod::Newton).gamma;
    const double g3 = solve_gamma(hom, RootMethod::Bisection).gamma;
    ok &= std::fabs(g1 - g2) < 1e-10 && std::fabs(g1 - g3) < 1e-10;

    for (int k : {2, 4, 7}) {
        const SpectralSolution s = solve_gamma({CoxianArrival::erlang(k, 0.5 * k), kBatch});
        ok &= std::fabs(s.gamma - std::pow(s.alpha(1), k)) < 1e-10;
    }
    {
        const SpectralSolution s = solve_gamma({CoxianArrival::infinite(0.5, 0.6), kBatch});
        const double a = s.alpha(1);
        ok &= std::fabs(s.gamma - a * 0.4 / (1.0 - 0.6 * a)) < 1e-10;
    }
    report(4, ok, "fixpoint identities: F(1)=1, method agreement, closed forms");
}

void criterion_5() {
    bool ok = true;
    double worst_gap = 0.0, worst_res = 0.0;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    while (checked < 15) {
        const int k = 1 + static_cast<int>(u(rng) * 5);
        std::vector<double> lam(k), qs(k);
        for (int i = 0; i < k; ++i) {
            lam[i] = 0.2 + u(rng);
            qs[i] = 0.1 + 0.85 * u(rng);
        }
        qs[k - 1] = 0.0;
        const QueueModel m{CoxianArrival::finite(lam, qs),
                           BatchService(0.9, (checked % 2) ? std::vector<double>{0.25, 0.5, 0.25}
                                                           : std::vector<double>{1.0})};
        if (!is_ergodic(m)) continue;
        ++checked;
        const RateMatrixResult r = rate_matrix(make_blocks(m));
        const double g = solve_gamma(m).gamma;
        worst_gap = std::max(worst_gap, std::fabs(r.gamma - g));
        const std::vector<double> br = vec_mat(r.phase_vector, r.R);
        for (int i = 0; i < k; ++i)
            worst_res = std::max(worst_res, std::fabs(br[i] - r.phase_vector[i] / r.gamma));
    }
    ok = worst_gap < 1e-10 && worst_res < 1e-9;
    report(5, ok, "rate-matrix route vs scalar fixpoint, gap " + std::to_string(worst_gap) +
                      ", eigen residual " + std::to_string(worst_res));
}

void criterion_6() {
    bool ok = true;
    std::vector<int> ks;
    for (int k = 1; k <= 50; ++k) ks.push_back(k);

    const SweepResult batch = monotonicity_sweep(0.5, 1.0, ks, kBatch);
    ok &= batch.verdicts.gamma_strictly_decreasing;
    ok &= batch.verdicts.L_nonincreasing && batch.verdicts.W_nonincreasing &&
          batch.verdicts.V_nonincreasing;

    const SweepResult single = monotonicity_sweep(0.5, 1.0, ks, BatchService(0.8, {1.0}));
    ok &= single.verdicts.gamma_strictly_decreasing && single.verdicts.L_nonincreasing &&
          single.verdicts.W_nonincreasing && single.verdicts.V_nonincreasing;
    ok &= single.verdicts.alpha_strictly_increasing && single.verdicts.tail_dominance;
    for (const MetricsRow& row : single.rows) ok &= std::fabs(row.pi0_bar - 0.375) < 1e-12;
    report(6, ok, "monotone metrics across the fixed-mean family, k = 1..50");
}

void criterion_7() {
    const double rho = 0.625;
    const double sigma = gamma_star(rho, kBatch);
    bool ok = std::fabs(sigma - std::exp(-(1.0 - kBatch.phi(sigma)) / rho)) < 1e-14;

    double g1000 = 0.0;
    for (int k : {1, 2, 5, 10, 50, 200, 1000}) {
        const double g = solve_gamma({calibrate(0.5, 1.0, k), kBatch}).gamma;
        ok &= sigma < g;
        g1000 = g;
    }
    ok &= std::fabs(g1000 - sigma) < 1e-3;
    report(7, ok, "deterministic-arrival limit: sigma residual, ordering, k=1000 gap");
}

void criterion_8() {
    bool ok = true;
    std::mt19937 rng(31);
    double worst = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
        const int order = 2 + seed % 7;
        const Matrix q = random_transient_generator(rng, order);
        const CensoringReport rep = censoring_identity_check(q, seed % order);
        worst = std::max({worst, rep.censored_inverse_error, rep.exit_row_error});
    }
    ok &= worst < 1e-10;

    double series_worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const Matrix q = random_transient_generator(rng, 4);
        SeriesReport rep;
        for (int n = 200; n <= 51200; n *= 2) {
            rep = sojourn_series_check(q, n);
            if (rep.remainder_bound < 1e-12) break;
        }
        series_worst = std::max(series_worst, rep.max_error);
    }
    ok &= series_worst < 1e-10;
    report(8, ok, "censoring identities worst " + std::to_string(worst) + ", series worst " +
                      std::to_string(series_worst));
}

void criterion_9() {
    bool ok = true;
    const QueueModel m{CoxianArrival::homogeneous(3, 0.5, 0.5), kBatch};
    for (int S : {3, 5, 10}) {
        for (BlockingPolicy pol : {BlockingPolicy::PhaseFreeze, BlockingPolicy::LossRestart}) {
            const FiniteSolution sol = solve_finite(m, S, pol);
            std::vector<double> flat;
            for (const auto& row : sol.pi) flat.insert(flat.end(), row.begin(), row.end());
            const std::vector<double> res = vec_mat(flat, assemble_finite_generator(m, S, pol));
            for (double v : res) ok &= std::fabs(v) < 1e-9;
            const std::vector<double> oracle = oracle_finite(m, S, pol);
            for (std::size_t i = 0; i < flat.size(); ++i) ok &= std::fabs(flat[i] - oracle[i]) < 1e-10;
        }
    }
    // top-level matrix semantics: PhaseFreeze keeps the full lambda_i
    // off-diagonal (a blocked arrival waits in its last phase); LossRestart
    // q-weights the advance and restarts at phase 0. Both are exact for their
    // own generator.
    const Matrix frozen = top_level_q_tilde(m, BlockingPolicy::PhaseFreeze);
    ok &= std::fabs(frozen(0, 1) - m.arrival.lambda(0)) < 1e-15;          // full rate, no q weight
    ok &= std::fabs(frozen(2, 2) + m.service.mu()) < 1e-15;               // last phase waits
    const Matrix weighted = top_level_q_tilde(m, BlockingPolicy::LossRestart);
    ok &= std::fabs(weighted(0, 1) - m.arrival.q(0) * m.arrival.lambda(0)) < 1e-15;
    report(9, ok, "finite capacity: balance residual, oracle match, blocking semantics documented");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
