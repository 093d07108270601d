#include <cmath>

#include "coxmy/model.hpp"
#include "doctest.h"

using namespace coxmy;

TEST_CASE("coxian validation") {
    CHECK_NOTHROW(CoxianArrival::finite({1.0, 2.0}, {0.5, 0.0}));
    CHECK_THROWS_AS(CoxianArrival::finite({1.0, 2.0}, {0.5, 0.1}), SchemaError);  // q_{k-1} != 0
    CHECK_THROWS_AS(CoxianArrival::finite({1.0, 2.0, 3.0}, {0.0, 0.5, 0.0}), SchemaError);  // q_i = 0
    CHECK_THROWS_AS(CoxianArrival::finite({1.0, -2.0}, {0.5, 0.0}), SchemaError);
    CHECK_THROWS_AS(CoxianArrival::infinite(1.0, 0.0), SchemaError);
    CHECK_NOTHROW(CoxianArrival::infinite(1.0, 1.0));  // Erlang limit column
    CHECK(CoxianArrival::erlang(4, 2.0).is_erlang());
    CHECK(CoxianArrival::homogeneous(3, 1.0, 0.5).homogeneous_rates());
}

TEST_CASE("batch service pgf") {
    const BatchService single(1.0, {1.0});
    CHECK(single.phi(0.5) == doctest::Approx(0.5));

    const BatchService b(0.8, {0.25, 0.5, 0.25});
    CHECK(b.phi(1.0) == doctest::Approx(1.0));
    CHECK(b.phi(0.35) == doctest::Approx(0.25 * 0.35 + 0.5 * 0.1225 + 0.25 * 0.042875));
    CHECK(b.mean_batch() == doctest::Approx(2.0));
    CHECK(b.phi_over_x(0.0) == doctest::Approx(0.25));  // limit of phi(x)/x

    CHECK_THROWS_AS(BatchService(1.0, {0.5, 0.4}), SchemaError);  // pmf sum != 1
    CHECK_THROWS_AS(BatchService(-1.0, {1.0}), SchemaError);
}

TEST_CASE("pgf is nondecreasing and convex on [0,1]") {
    const BatchService b(1.0, {0.1, 0.2, 0.3, 0.4});
    double prev = -1.0, prev_d = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        const double v = b.phi(x);
        CHECK(v >= prev - 1e-15);
        if (i > 0) {
            const double d = v - prev;
            CHECK(d >= prev_d - 1e-12);  // increasing increments: convexity
            prev_d = d;
        }
        prev = v;
    }
}

TEST_CASE("mean interarrival time") {
    CHECK(mean_interarrival(CoxianArrival::exponential(2.0)) == doctest::Approx(0.5));
    CHECK(mean_interarrival(CoxianArrival::erlang(4, 2.0)) == doctest::Approx(2.0));
    CHECK(mean_interarrival(CoxianArrival::finite({1.0, 1.0}, {0.5, 0.0})) == doctest::Approx(1.5));
    CHECK(mean_interarrival(CoxianArrival::infinite(2.0, 0.5)) == doctest::Approx(1.0));
    CHECK(std::isinf(mean_interarrival(CoxianArrival::infinite(2.0, 1.0))));
}

TEST_CASE("ergodicity") {
    const BatchService batch(0.8, {0.25, 0.5, 0.25});
    CHECK(is_ergodic({CoxianArrival::homogeneous(5, 0.5, 0.5), batch}));
    CHECK_FALSE(is_ergodic({CoxianArrival::exponential(1.0), BatchService(1.0, {1.0})}));
    CHECK(is_ergodic({CoxianArrival::finite({1.0, 1.0}, {0.5, 0.0}), BatchService(1.0, {1.0})}));

    // agrees with the sign of mu E[Y] E[C] - 1
    const QueueModel m{CoxianArrival::homogeneous(3, 2.0, 0.7), BatchService(0.4, {0.5, 0.5})};
    const double margin =
        m.service.mu() * m.service.mean_batch() * mean_interarrival(m.arrival) - 1.0;
    CHECK(is_ergodic(m) == (margin > 0.0));
}

TEST_CASE("json round trip and broadcast") {
    const QueueModel m = model_from_json(
        R"({"arrival":{"k":3,"lambda":0.5,"q":0.4},"service":{"mu":0.8,"p":[0.25,0.5,0.25]}})");
    CHECK(m.arrival.order() == 3);
    CHECK(m.arrival.lambda(2) == doctest::Approx(0.5));
    CHECK(m.arrival.q(0) == doctest::Approx(0.4));
    CHECK(m.arrival.q(2) == 0.0);  // forced by the schema

    const QueueModel back = model_from_json(model_to_json(m));
    CHECK(back.arrival.order() == 3);
    CHECK(back.service.mu() == doctest::Approx(0.8));

    const QueueModel inf = model_from_json(
        R"({"arrival":{"k":"inf","lambda":0.5,"q":0.6},"service":{"mu":0.8,"p":[1.0]}})");
    CHECK(inf.arrival.is_infinite());
}

TEST_CASE("schema errors name the offending field") {
    CHECK_THROWS_WITH_AS(
        model_from_json(R"({"arrival":{"k":2,"lambda":[1.0],"q":0.5},"service":{"mu":1,"p":[1]}})"),
        doctest::Contains("lambda"), SchemaError);
    CHECK_THROWS_AS(model_from_json("{not json"), SchemaError);
    CHECK_THROWS_WITH_AS(
        model_from_json(R"({"arrival":{"k":2,"lambda":1.0,"q":0.5}})"),
        doctest::Contains("service"), SchemaError);
}
