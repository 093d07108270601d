"""Smoke tests for the python bindings."""

import math

import coxmy as cx


def approx(a, b, tol=1e-9):
    assert abs(a - b) < tol, f"{a} != {b} within {tol}"


def test_mm1():
    m = cx.QueueModel(cx.CoxianArrival.exponential(0.5), cx.BatchService(0.8, [1.0]))
    sol = cx.solve_gamma(m)
    approx(sol.gamma, 0.625)
    dist = cx.StationaryDistribution(m, sol)
    approx(dist.pi00, 0.375)
    approx(dist.total_mass(), 1.0)


def test_json_and_table_cell():
    m = cx.model_from_json(
        '{"arrival":{"k":5,"lambda":0.5,"q":0.5},'
        '"service":{"mu":0.8,"p":[0.25,0.5,0.25]}}'
    )
    assert cx.is_ergodic(m)
    sol = cx.solve_gamma(m)
    approx(sol.gamma, 0.2585, 1e-4)
    approx(sol.alpha(1), 0.4105, 1e-4)
    back = cx.model_from_json(cx.model_to_json(m))
    approx(cx.mean_interarrival(back.arrival), cx.mean_interarrival(m.arrival))


def test_oracle_agreement():
    m = cx.QueueModel(
        cx.CoxianArrival.homogeneous(2, 0.5, 0.5), cx.BatchService(0.8, [0.25, 0.5, 0.25])
    )
    sol = cx.solve_gamma(m)
    dist = cx.StationaryDistribution(m, sol)
    rep = cx.compare_with_oracle(dist, 200, 100)
    assert rep.max_abs_error < 1e-10


def test_finite_and_metrics():
    m = cx.QueueModel(cx.CoxianArrival.exponential(0.5), cx.BatchService(0.8, [1.0]))
    fin = cx.solve_finite(m, 3)
    mass = sum(fin.level_marginal(lvl) for lvl in range(4))
    approx(mass, 1.0)

    row = cx.metrics(m, cx.solve_gamma(m), 0.5)
    approx(row.L, 5.0 / 3.0, 1e-8)

    d = cx.dm1_distribution(0.625, cx.BatchService(1.0, [1.0]))
    approx(d.marginal(0), 0.375, 1e-10)


def test_errors():
    bad = cx.QueueModel(cx.CoxianArrival.exponential(2.0), cx.BatchService(0.8, [1.0]))
    try:
        cx.solve_gamma(bad)
    except cx.NotErgodic:
        pass
    else:
        raise AssertionError("expected NotErgodic")

    try:
        cx.model_from_json("{}")
    except cx.SchemaError:
        pass
    else:
        raise AssertionError("expected SchemaError")


def main():
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"{name}: ok")


if __name__ == "__main__":
    main()
