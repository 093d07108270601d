#pragma once

#include <string>
#include <vector>

#include "coxmy/errors.hpp"

namespace coxmy {

// Coxian inter-arrival distribution: phase i lasts exp(lambda_i); at the end
// of phase i a customer arrives with probability 1-q_i, otherwise phase i+1
// starts. q_{k-1} = 0. The infinite-order variant is homogeneous with a
// single (lambda, q).
class CoxianArrival {
  public:
    static CoxianArrival finite(std::vector<double> lambdas, std::vector<double> qs);
    static CoxianArrival infinite(double lambda, double q);
    static CoxianArrival exponential(double lambda) { return finite({lambda}, {0.0}); }
    static CoxianArrival erlang(int k, double lambda);
    static CoxianArrival homogeneous(int k, double lambda, double q);

    bool is_infinite() const { return infinite_; }
    int order() const { return static_cast<int>(lambdas_.size()); }  // finite only
    double lambda(int i) const { return infinite_ ? lambdas_[0] : lambdas_.at(i); }
    double q(int i) const { return infinite_ ? qs_[0] : qs_.at(i); }
    const std::vector<double>& lambdas() const { return lambdas_; }
    const std::vector<double>& qs() const { return qs_; }

    bool homogeneous_rates() const;
    bool is_erlang() const;  // all q_i = 1 for i < k-1

  private:
    CoxianArrival() = default;
    bool infinite_ = false;
    std::vector<double> lambdas_;
    std::vector<double> qs_;
};

// Exponential service timer with rate mu; each completion removes a batch of
// size Y, P{Y=j} = pmf[j-1], j = 1..b.
class BatchService {
  public:
    BatchService(double mu, std::vector<double> pmf);

    double mu() const { return mu_; }
    int max_batch() const { return static_cast<int>(pmf_.size()); }
    double p(int j) const { return pmf_.at(j - 1); }  // 1-based batch size
    const std::vector<double>& pmf() const { return pmf_; }

    double mean_batch() const;          // E[Y]
    double phi(double x) const;         // pgf: sum_j p_j x^j
    double phi_over_x(double x) const;  // phi(x)/x evaluated stably at x -> 0

  private:
    double mu_;
    std::vector<double> pmf_;
};

struct QueueModel {
    CoxianArrival arrival;
    BatchService service;
};

double phi_Y(const BatchService& service, double x);
double mean_interarrival(const CoxianArrival& arrival);
bool is_ergodic(const QueueModel& model);

// JSON model schema:
//   {"arrival": {"k": int|"inf", "lambda": [..]|number, "q": [..]|number},
//    "service": {"mu": number, "p": [..]}}
// Scalars broadcast to homogeneous vectors. Throws SchemaError naming the
// offending field.
QueueModel model_from_json(const std::string& text);
QueueModel load_model(const std::string& path);
std::string model_to_json(const QueueModel& model);

}  // namespace coxmy
