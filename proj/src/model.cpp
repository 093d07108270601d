#include "coxmy/model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace coxmy {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw SchemaError(msg);
}

}  // namespace

CoxianArrival CoxianArrival::finite(std::vector<double> lambdas, std::vector<double> qs) {
    CoxianArrival a;
    const int k = static_cast<int>(lambdas.size());
    if (k < 1) throw SchemaError("arrival: order must be >= 1");
    if (qs.size() != lambdas.size()) throw SchemaError("arrival: lambda and q lengths differ");
    for (int i = 0; i < k; ++i) {
        if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i]))
            throw SchemaError("arrival: lambda[" + std::to_string(i) + "] must be positive");
        if (!(qs[i] >= 0.0 && qs[i] <= 1.0))
            throw SchemaError("arrival: q[" + std::to_string(i) + "] must lie in [0,1]");
    }
    if (qs[k - 1] != 0.0) throw SchemaError("arrival: q[k-1] must be 0");
    for (int i = 0; i + 1 < k; ++i)
        if (!(qs[i] > 0.0))
            throw SchemaError("arrival: q[" + std::to_string(i) + "] must be positive for i <= k-2");
    a.infinite_ = false;
    a.lambdas_ = std::move(lambdas);
    a.qs_ = std::move(qs);
    return a;
}

CoxianArrival CoxianArrival::infinite(double lambda, double q) {
    CoxianArrival a;
    if (!(lambda > 0.0)) throw SchemaError("arrival: lambda must be positive");
    if (!(q > 0.0 && q <= 1.0)) throw SchemaError("arrival: infinite order requires q in (0,1]");
    a.infinite_ = true;
    a.lambdas_ = {lambda};
    a.qs_ = {q};
    return a;
}

CoxianArrival CoxianArrival::erlang(int k, double lambda) {
    std::vector<double> qs(k, 1.0);
    qs[k - 1] = 0.0;
    return finite(std::vector<double>(k, lambda), std::move(qs));
}

CoxianArrival CoxianArrival::homogeneous(int k, double lambda, double q) {
    std::vector<double> qs(k, q);
    qs[k - 1] = 0.0;
    return finite(std::vector<double>(k, lambda), std::move(qs));
}

bool CoxianArrival::homogeneous_rates() const {
    for (double l : lambdas_)
        if (l != lambdas_[0]) return false;
    return true;
}

bool CoxianArrival::is_erlang() const {
    if (infinite_) return false;
    if (!homogeneous_rates()) return false;
    for (int i = 0; i + 1 < order(); ++i)
        if (qs_[i] != 1.0) return false;
    return true;
}

BatchService::BatchService(double mu, std::vector<double> pmf) : mu_(mu), pmf_(std::move(pmf)) {
    if (!(mu_ > 0.0)) throw SchemaError("service: mu must be positive");
    if (pmf_.empty()) throw SchemaError("service: batch pmf must be nonempty");
    double sum = 0.0;
    for (std::size_t j = 0; j < pmf_.size(); ++j) {
        if (pmf_[j] < 0.0) throw SchemaError("service: p[" + std::to_string(j + 1) + "] negative");
        sum += pmf_[j];
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw SchemaError("service: batch pmf must sum to 1");
}

double BatchService::mean_batch() const {
    double m = 0.0;
    for (std::size_t j = 0; j < pmf_.size(); ++j) m += (j + 1) * pmf_[j];
    return m;
}

double BatchService::phi(double x) const {
    // Horner on sum_j p_j x^j = x * (p_1 + x*(p_2 + ...))
    double acc = 0.0;
    for (std::size_t j = pmf_.size(); j-- > 0;) acc = pmf_[j] + x * acc;
    return x * acc;
}

double BatchService::phi_over_x(double x) const {
    double acc = 0.0;
    for (std::size_t j = pmf_.size(); j-- > 0;) acc = pmf_[j] + x * acc;
    return acc;
}

double phi_Y(const BatchService& service, double x) { return service.phi(x); }

double mean_interarrival(const CoxianArrival& arrival) {
    if (arrival.is_infinite()) {
        const double q = arrival.q(0);
        if (q >= 1.0) return std::numeric_limits<double>::infinity();
        return 1.0 / (arrival.lambda(0) * (1.0 - q));
    }
    // E[C] = sum_i (prob of reaching phase i) / lambda_i
    double mean = 0.0;
    double reach = 1.0;
    for (int i = 0; i < arrival.order(); ++i) {
        mean += reach / arrival.lambda(i);
        reach *= arrival.q(i);
    }
    return mean;
}

bool is_ergodic(const QueueModel& model) {
    const double drain = model.service.mu() * model.service.mean_batch();
    const double mean = mean_interarrival(model.arrival);
    if (std::isinf(mean)) return true;
    return 1.0 / mean < drain;
}

namespace {

std::vector<double> vector_field(const nlohmann::json& j, const std::string& name, int broadcast) {
    if (!j.contains(name)) throw SchemaError("arrival: missing field '" + name + "'");
    const auto& f = j.at(name);
    if (f.is_number()) return std::vector<double>(broadcast, f.get<double>());
    if (f.is_array()) {
        std::vector<double> v = f.get<std::vector<double>>();
        if (broadcast > 0 && static_cast<int>(v.size()) != broadcast)
            throw SchemaError("arrival: '" + name + "' has wrong length");
        return v;
    }
    throw SchemaError("arrival: '" + name + "' must be a number or array");
}

}  // namespace

QueueModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("model: invalid JSON: ") + e.what());
    }
    require(j.contains("arrival"), "model: missing 'arrival'");
    require(j.contains("service"), "model: missing 'service'");
    const auto& ja = j.at("arrival");
    const auto& js = j.at("service");

    require(js.contains("mu") && js.at("mu").is_number(), "service: missing numeric 'mu'");
    require(js.contains("p") && js.at("p").is_array(), "service: missing array 'p'");
    BatchService service(js.at("mu").get<double>(), js.at("p").get<std::vector<double>>());

    require(ja.contains("k"), "arrival: missing 'k'");
    const auto& jk = ja.at("k");
    if (jk.is_string()) {
        require(jk.get<std::string>() == "inf", "arrival: 'k' must be an integer or \"inf\"");
        const std::vector<double> lam = vector_field(ja, "lambda", 1);
        const std::vector<double> qs = vector_field(ja, "q", 1);
        return {CoxianArrival::infinite(lam[0], qs[0]), service};
    }
    require(jk.is_number_integer() && jk.get<int>() >= 1, "arrival: 'k' must be a positive integer");
    const int k = jk.get<int>();
    std::vector<double> lam = vector_field(ja, "lambda", k);
    std::vector<double> qs;
    if (ja.contains("q") && ja.at("q").is_number()) {
        // scalar q broadcasts to q_0..q_{k-2}; q_{k-1} is forced to 0
        qs.assign(k, ja.at("q").get<double>());
        qs[k - 1] = 0.0;
    } else {
        qs = vector_field(ja, "q", k);
    }
    return {CoxianArrival::finite(std::move(lam), std::move(qs)), service};
}

QueueModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("model: cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

std::string model_to_json(const QueueModel& model) {
    nlohmann::json j;
    if (model.arrival.is_infinite()) {
        j["arrival"] = {{"k", "inf"}, {"lambda", model.arrival.lambda(0)}, {"q", model.arrival.q(0)}};
    } else {
        j["arrival"] = {{"k", model.arrival.order()},
                        {"lambda", model.arrival.lambdas()},
                        {"q", model.arrival.qs()}};
    }
    j["service"] = {{"mu", model.service.mu()}, {"p", model.service.pmf()}};
    return j.dump();
}

}  // namespace coxmy
