#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coxmy/analysis.hpp"
#include "coxmy/finite.hpp"
#include "coxmy/model.hpp"
#include "coxmy/oracle.hpp"
#include "coxmy/qsf.hpp"
#include "coxmy/solver.hpp"

using nlohmann::json;

namespace {

struct Options {
    std::string model_path;
    std::string format = "json";
    std::string out_path;
    std::string policy = "freeze";
    double tol = 1e-12;
    long max_iter = -1;
    double gamma0 = 0.5;
    int cap = 300;
    double lambda_star = 0.5;
    double q = 0.5;
    std::vector<int> k_list = {1, 2, 4, 8, 16};
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + opt.out_path);
    out << text;
}

std::string f4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

double throughput(const coxmy::QueueModel& model) {
    const double mean = coxmy::mean_interarrival(model.arrival);
    return 1.0 / mean;
}

int cmd_solve(const Options& opt) {
    const coxmy::QueueModel model = coxmy::load_model(opt.model_path);
    const coxmy::SpectralSolution sol =
        coxmy::solve_gamma(model, coxmy::RootMethod::FixedPoint, opt.gamma0, opt.tol, opt.max_iter);
    const coxmy::StationaryDistribution dist(model, sol);
    const coxmy::MetricsRow row = coxmy::metrics(model, sol, throughput(model));

    json out;
    out["gamma"] = sol.gamma;
    out["alphas"] = sol.alphas;
    out["pi00"] = dist.pi00();
    out["iterations"] = sol.iterations;
    out["residual"] = sol.residual;
    if (model.arrival.is_infinite()) {
        std::vector<double> head;
        for (int i = 0; i < 10; ++i) head.push_back(dist.boundary(i));
        out["boundary"] = head;
    } else {
        out["boundary"] = dist.boundary_row();
    }
    out["L"] = row.L;
    out["W"] = row.W;
    out["V"] = row.V;
    out["pi0_bar"] = row.pi0_bar;

    if (opt.format == "csv") {
        std::ostringstream os;
        os << "gamma,pi00,L,W,V\n"
           << f4(sol.gamma) << ',' << f4(dist.pi00()) << ',' << f4(row.L) << ',' << f4(row.W) << ','
           << f4(row.V) << '\n';
        emit(opt, os.str());
    } else {
        emit(opt, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_finite(const Options& opt) {
    const coxmy::QueueModel model = coxmy::load_model(opt.model_path);
    const coxmy::BlockingPolicy policy = (opt.policy == "loss")
                                             ? coxmy::BlockingPolicy::LossRestart
                                             : coxmy::BlockingPolicy::PhaseFreeze;
    const coxmy::FiniteSolution sol = coxmy::solve_finite(model, opt.cap, policy);

    if (opt.format == "csv") {
        std::ostringstream os;
        os << "level,phase,pi\n";
        for (int m = 0; m <= sol.capacity; ++m)
            for (int i = 0; i < sol.phases; ++i)
                os << m << ',' << i << ',' << f4(sol.prob(m, i)) << '\n';
        emit(opt, os.str());
    } else {
        json out;
        out["capacity"] = sol.capacity;
        out["policy"] = (policy == coxmy::BlockingPolicy::PhaseFreeze) ? "freeze" : "loss";
        out["pi"] = sol.pi;
        std::vector<double> marg;
        for (int m = 0; m <= sol.capacity; ++m) marg.push_back(sol.level_marginal(m));
        out["level_marginals"] = marg;
        emit(opt, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_sweep(const Options& opt) {
    coxmy::BatchService service(0.8, {0.25, 0.5, 0.25});
    if (!opt.model_path.empty()) service = coxmy::load_model(opt.model_path).service;
    const coxmy::SweepResult res =
        coxmy::monotonicity_sweep(opt.lambda_star, opt.q, opt.k_list, service);

    json verdicts;
    verdicts["gamma_strictly_decreasing"] = res.verdicts.gamma_strictly_decreasing;
    verdicts["pi0_strictly_decreasing"] = res.verdicts.pi0_strictly_decreasing;
    verdicts["pi0_constant"] = res.verdicts.pi0_constant;
    verdicts["L_nonincreasing"] = res.verdicts.L_nonincreasing;
    verdicts["W_nonincreasing"] = res.verdicts.W_nonincreasing;
    verdicts["V_nonincreasing"] = res.verdicts.V_nonincreasing;
    verdicts["alpha_strictly_increasing"] = res.verdicts.alpha_strictly_increasing;
    verdicts["tail_dominance"] = res.verdicts.tail_dominance;
    verdicts["single_batch"] = res.verdicts.single_batch;

    if (opt.format == "csv") {
        std::ostringstream os;
        os << "k,lambda_k,gamma,alpha,pi0,L,W,V\n";
        for (const auto& r : res.rows)
            os << r.k << ',' << f4(r.lambda_k) << ',' << f4(r.gamma) << ',' << f4(r.alpha) << ','
               << f4(r.pi0_bar) << ',' << f4(r.L) << ',' << f4(r.W) << ',' << f4(r.V) << '\n';
        os << verdicts.dump() << '\n';
        emit(opt, os.str());
    } else {
        json out;
        out["lambda_star"] = res.lambda_star;
        out["q"] = res.q;
        out["rows"] = json::array();
        for (const auto& r : res.rows)
            out["rows"].push_back({{"k", r.k},
                                   {"lambda_k", r.lambda_k},
                                   {"gamma", r.gamma},
                                   {"alpha", r.alpha},
                                   {"pi0", r.pi0_bar},
                                   {"L", r.L},
                                   {"W", r.W},
                                   {"V", r.V}});
        out["verdicts"] = verdicts;
        emit(opt, out.dump(2) + "\n");
    }
    return 0;
}

struct TableCell {
    double gamma = 0.0;
    double alpha = 0.0;
    bool near_zero = false;
};

TableCell solve_cell(const coxmy::CoxianArrival& arrival, const coxmy::BatchService& service) {
    const coxmy::QueueModel model{arrival, service};
    const coxmy::SpectralSolution sol = coxmy::solve_gamma(model, coxmy::RootMethod::FixedPoint, 0.35);
    return {sol.gamma, sol.alpha(1), sol.gamma < 5e-5};
}

std::string table_csv(const std::vector<std::tuple<double, std::string, TableCell>>& cells) {
    std::ostringstream os;
    os << "q,k,gamma,alpha,near_zero\n";
    for (const auto& [q, k, c] : cells)
        os << f4(q) << ',' << k << ',' << f4(c.gamma) << ',' << f4(c.alpha) << ','
           << (c.near_zero ? 1 : 0) << '\n';
    return os.str();
}

json table_json(const std::vector<std::tuple<double, std::string, TableCell>>& cells) {
    json rows = json::array();
    for (const auto& [q, k, c] : cells)
        rows.push_back(
            {{"q", q}, {"k", k}, {"gamma", c.gamma}, {"alpha", c.alpha}, {"near_zero", c.near_zero}});
    return rows;
}

int cmd_table1(const Options& opt) {
    const coxmy::BatchService service(0.8, {0.25, 0.5, 0.25});
    const double lambda = 0.5;
    std::vector<std::tuple<double, std::string, TableCell>> cells;
    for (int qi = 1; qi <= 10; ++qi) {
        const double q = qi / 10.0;
        for (int k : {2, 5, 20, 1000})
            cells.emplace_back(q, std::to_string(k),
                               solve_cell(coxmy::CoxianArrival::homogeneous(k, lambda, q), service));
        cells.emplace_back(q, "inf", solve_cell(coxmy::CoxianArrival::infinite(lambda, q), service));
    }
    if (opt.format == "csv")
        emit(opt, table_csv(cells));
    else
        emit(opt, table_json(cells).dump(2) + "\n");
    return 0;
}

int cmd_table2(const Options& opt) {
    const coxmy::BatchService service(0.8, {0.25, 0.5, 0.25});
    const double lambda_star = 0.5;
    std::vector<std::tuple<double, std::string, TableCell>> cells;
    for (int qi = 1; qi <= 9; ++qi) {
        const double q = qi / 10.0;
        for (int k : {2, 5, 10, 20, 50, 1000})
            cells.emplace_back(q, std::to_string(k),
                               solve_cell(coxmy::calibrate(lambda_star, q, k), service));
    }
    if (opt.format == "csv")
        emit(opt, table_csv(cells));
    else
        emit(opt, table_json(cells).dump(2) + "\n");
    return 0;
}

int cmd_dm1(const Options& opt) {
    coxmy::BatchService service(0.8, {0.25, 0.5, 0.25});
    double lambda_star = opt.lambda_star;
    if (!opt.model_path.empty()) {
        const coxmy::QueueModel model = coxmy::load_model(opt.model_path);
        service = model.service;
        lambda_star = throughput(model);
    }
    const double rho = lambda_star / service.mu();
    const coxmy::Dm1Distribution d = coxmy::dm1_distribution(rho, service);

    if (opt.format == "csv") {
        std::ostringstream os;
        os << "m,pi\n";
        for (int m = 0; m <= 20; ++m) os << m << ',' << f4(d.marginal(m)) << '\n';
        emit(opt, os.str());
    } else {
        json out;
        out["rho"] = rho;
        out["sigma"] = d.sigma;
        std::vector<double> head;
        for (int m = 0; m <= 20; ++m) head.push_back(d.marginal(m));
        out["marginals"] = head;
        emit(opt, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_oracle_check(const Options& opt) {
    const coxmy::QueueModel model = coxmy::load_model(opt.model_path);
    const coxmy::SpectralSolution sol = coxmy::solve_gamma(model);
    const coxmy::StationaryDistribution dist(model, sol);
    const coxmy::OracleReport rep = coxmy::compare_with_oracle(dist, opt.cap, opt.cap / 2);

    std::mt19937 rng(12345);
    const coxmy::Matrix q = coxmy::random_transient_generator(rng, 6);
    const coxmy::CensoringReport cen = coxmy::censoring_identity_check(q, 2);
    const coxmy::SeriesReport ser = coxmy::sojourn_series_check(q, 300);

    json out;
    out["level_cap"] = rep.level_cap;
    out["max_abs_error"] = rep.max_abs_error;
    out["max_rel_error"] = rep.max_rel_error;
    out["tail_mass_bound"] = rep.tail_mass_bound;
    out["censoring"] = {{"censored_inverse_error", cen.censored_inverse_error},
                        {"exit_row_error", cen.exit_row_error}};
    out["sojourn_series"] = {{"max_error", ser.max_error},
                             {"remainder_bound", ser.remainder_bound}};
    emit(opt, out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stationary analysis of the Cox(k)/M^Y/1 batch-service queue"};
    app.require_subcommand(1);

    Options opt;
    std::string command;
    for (const char* name : {"solve", "finite", "sweep", "table1", "table2", "dm1", "oracle-check"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--model", opt.model_path, "model JSON path");
        sub->add_option("--tol", opt.tol, "convergence tolerance");
        sub->add_option("--max-iter", opt.max_iter, "iteration cap");
        sub->add_option("--gamma0", opt.gamma0, "initial guess in (0,1)");
        sub->add_option("--cap", opt.cap, "capacity / truncation level");
        sub->add_option("--format", opt.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", opt.out_path, "output file (default stdout)");
        sub->add_option("--policy", opt.policy, "finite blocking: freeze|loss")
            ->check(CLI::IsMember({"freeze", "loss"}));
        sub->add_option("--lambda-star", opt.lambda_star, "target arrival rate (sweep/dm1)");
        sub->add_option("--q", opt.q, "continuation probability (sweep)");
        sub->add_option("--k", opt.k_list, "orders for the sweep");
        sub->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (command == "solve") return cmd_solve(opt);
        if (command == "finite") return cmd_finite(opt);
        if (command == "sweep") return cmd_sweep(opt);
        if (command == "table1") return cmd_table1(opt);
        if (command == "table2") return cmd_table2(opt);
        if (command == "dm1") return cmd_dm1(opt);
        if (command == "oracle-check") return cmd_oracle_check(opt);
    } catch (const coxmy::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return 2;
    } catch (const coxmy::NotErgodic& e) {
        std::cerr << "not ergodic: " << e.what() << '\n';
        return 3;
    } catch (const coxmy::NoConvergence& e) {
        std::cerr << "no convergence: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
