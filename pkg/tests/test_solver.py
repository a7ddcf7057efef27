import math

import numpy as np
import pytest

from conftest import TOY_CLIQUES, random_small_graph
from hyperlag import (
    LineSearchFailed,
    SolverConfig,
    Status,
    bb_step,
    criticality_residual,
    gen_complete,
    gen_frankl_star,
    line_search,
    multi_start,
    new_hypergraph,
    project_simplex,
    sample_uniform,
    solve,
    value_and_gradient,
    weight_value,
)
from hyperlag.solver import ConfigError, InfeasibleStart, start_points


def check_trace(run, cfg):
    assert run.trace is not None
    fs = [rec.f for rec in run.trace] + [run.lambda_hat]
    assert all(b >= a for a, b in zip(fs, fs[1:]))
    for rec in run.trace:
        assert rec.x_min >= 0
        assert rec.sum_err <= 1e-12
        assert cfg.alpha_min <= rec.alpha <= cfg.alpha_max
        assert rec.rho >= cfg.beta**cfg.max_backtracks
        assert 0 <= rec.backtracks <= cfg.max_backtracks
    assert run.x_final.min() >= 0 and abs(run.x_final.sum() - 1) <= 1e-12


# bb_step


def test_bb_unit_curvature():
    s = np.array([0.3, -0.1, 0.05])
    assert bb_step(s, s, 1e-3, 1e3) == 1.0


def test_bb_formula():
    assert bb_step([0.1, -0.1, 0.0], [0.2, -0.2, 0.0], 1e-3, 1e3) == pytest.approx(0.5, rel=1e-15)
    # negative curvature uses the magnitude
    assert bb_step([0.1, -0.1, 0.0], [-0.2, 0.2, 0.0], 1e-3, 1e3) == pytest.approx(0.5, rel=1e-15)


def test_bb_fallback_and_clamp():
    assert bb_step([1.0, 0.0], [0.0, 1.0], 1e-3, 1e3) == 1e3
    assert bb_step([0.0, 0.0], [0.0, 0.0], 1e-3, 1e3, fallback=2.0) == 2.0
    assert bb_step([1.0, 0.0], [1e-9, 0.0], 1e-3, 1e3) == 1e3
    assert bb_step([1e-9, 0.0], [1.0, 0.0], 1e-3, 1e3) == 1e-3
    assert bb_step([1e-200, 0.0], [1e-200, 0.0], 1e-3, 1e3) == 1e3  # <s,y> underflows to 0
    with pytest.raises(ValueError):
        bb_step([1.0], [1.0, 2.0], 1e-3, 1e3)


# config


@pytest.mark.parametrize(
    "kwargs",
    [
        {"eta": 0.0},
        {"eta": 0.6},
        {"beta": 1.0},
        {"alpha0": 1e4},
        {"alpha_min": 0.0},
        {"alpha_min": 10.0, "alpha0": 5.0},
        {"n_starts": 0},
        {"tol_residual": -1.0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        SolverConfig(**kwargs)


def test_config_defaults():
    c = SolverConfig()
    assert (c.eta, c.beta, c.alpha0, c.alpha_min, c.alpha_max) == (0.01, 0.5, 1.0, 0.001, 1000.0)
    assert (c.tol_residual, c.tol_fstall, c.max_iters, c.n_starts) == (1e-8, 1e-8, 1000, 10)


# line search


def test_line_search_at_critical_point(toy):
    x = TOY_CLIQUES[1]
    f, grad = value_and_gradient(toy, x)
    rho, x_next, f_next, j, _ = line_search(toy, x, np.zeros(12), f, grad, SolverConfig())
    assert (rho, j) == (1.0, 0)
    np.testing.assert_array_equal(x_next, x)
    assert f_next == f


def test_line_search_armijo_recheck(rng):
    cfg = SolverConfig()
    for _ in range(100):
        G = random_small_graph(rng, n_max=10)
        x = sample_uniform(G.n, rng)
        alpha = float(10 ** rng.uniform(-3, 3))
        f, grad = value_and_gradient(G, x)
        g = project_simplex(x + alpha * grad) - x
        rho, x_next, f_next, j, grad_next = line_search(G, x, g, f, grad, cfg)
        assert rho == cfg.beta**j
        assert weight_value(G, x_next) == f_next
        assert f_next - f >= cfg.eta * rho * (g @ grad)
        if j > 0:
            prev = rho / cfg.beta
            assert weight_value(G, x + prev * g) - f < cfg.eta * prev * (g @ grad)
        np.testing.assert_allclose(grad_next, value_and_gradient(G, x_next)[1], rtol=1e-15)


def test_line_search_failure_raised(toy):
    # an inflated gradient makes the sufficient-ascent target unreachable
    x = np.full(12, 1 / 12)
    f, grad = value_and_gradient(toy, x)
    g = project_simplex(x + grad) - x
    with pytest.raises(LineSearchFailed):
        line_search(toy, x, g, f, 1000 * grad, SolverConfig(eta=0.5, max_backtracks=20))


# solve


def test_solve_complete_k10():
    G = gen_complete(10, 3)
    cfg = SolverConfig()
    for seed in range(3):
        x0 = sample_uniform(10, np.random.default_rng(seed))
        run = solve(G, x0, cfg, trace=True)
        assert abs(run.lambda_hat - 0.12) <= 1e-10
        assert np.abs(run.x_final - 0.1).max() <= 1e-7
        check_trace(run, cfg)


def test_solve_k3_from_uniform_is_immediately_critical():
    G = gen_complete(3, 3)
    run = solve(G, np.full(3, 1 / 3), trace=True)
    assert run.iterations == 0
    assert run.status is Status.RESIDUAL_CONVERGED
    assert run.lambda_hat == pytest.approx(1 / 27, rel=1e-15)


def test_solve_empty_graph():
    G = new_hypergraph(3, 6, [])
    run = solve(G, np.full(6, 1 / 6))
    assert run.lambda_hat == 0.0
    assert run.iterations == 0
    assert run.status is Status.RESIDUAL_CONVERGED


def test_solve_toy_single_start_reaches_a_clique(toy):
    cfg = SolverConfig()
    x0 = sample_uniform(12, np.random.default_rng(0))
    run = solve(toy, x0, cfg, trace=True)
    check_trace(run, cfg)
    assert run.lambda_hat == pytest.approx(1 / 16, abs=1e-8)
    assert min(np.abs(run.x_final - c).max() for c in TOY_CLIQUES) <= 1e-6


def test_solve_rejects_infeasible_start(toy):
    with pytest.raises(InfeasibleStart):
        solve(toy, np.full(12, 0.1))
    with pytest.raises(InfeasibleStart):
        solve(toy, np.r_[1.5, -0.5, np.zeros(10)])
    with pytest.raises(InfeasibleStart):
        solve(toy, np.full(11, 1 / 11))


def test_stopping_rules(toy):
    x0 = sample_uniform(12, np.random.default_rng(5))
    run = solve(toy, x0, SolverConfig(max_iters=2, tol_fstall=0.0))
    assert run.status is Status.MAX_ITERS and run.iterations == 2
    run = solve(toy, x0, SolverConfig(max_iters=0))
    assert run.status is Status.MAX_ITERS and run.iterations == 0
    run = solve(toy, x0, SolverConfig(tol_residual=0.0, tol_fstall=1.0))
    assert run.status is Status.FSTALL_CONVERGED and run.iterations == 4


def test_residual_certificate_and_recorded_residual(rng):
    cfg = SolverConfig()
    for _ in range(20):
        G = random_small_graph(rng, n_max=10)
        run = solve(G, sample_uniform(G.n, rng), cfg, trace=True)
        check_trace(run, cfg)
        assert criticality_residual(G, run.x_final) == pytest.approx(run.residual, rel=1e-12, abs=1e-300)
        if run.status is Status.RESIDUAL_CONVERGED:
            assert criticality_residual(G, run.x_final) <= cfg.tol_residual
        assert run.lambda_hat <= math.comb(G.n, G.r) / G.n**G.r + 1e-15


def test_reproducible_traces(toy):
    cfg = SolverConfig(seed=11)
    a, runs_a = multi_start(toy, cfg, trace=True)
    b, runs_b = multi_start(toy, cfg, trace=True)
    for ra, rb in zip(runs_a, runs_b):
        assert ra.trace == rb.trace
        np.testing.assert_array_equal(ra.x_final, rb.x_final)


# multi_start


def test_multi_start_toy(toy):
    best, runs = multi_start(toy, SolverConfig(seed=0))
    assert len(runs) == 10
    assert abs(best.lambda_hat - 0.0625) <= 1e-8
    assert best.lambda_hat == max(r.lambda_hat for r in runs)


def test_multi_start_frankl_star_t1():
    best, _ = multi_start(gen_frankl_star(1), SolverConfig(seed=0))
    assert abs(best.lambda_hat - 30 / 729) <= 1e-6


def test_multi_start_single(toy):
    cfg = SolverConfig(n_starts=1, seed=4)
    best, runs = multi_start(toy, cfg)
    assert len(runs) == 1 and runs[0] is best
    single = solve(toy, start_points(12, cfg)[0], cfg)
    np.testing.assert_array_equal(single.x_final, best.x_final)


def test_start_points_depend_on_seed_and_index_only():
    five = start_points(7, SolverConfig(n_starts=5, seed=3))
    ten = start_points(7, SolverConfig(n_starts=10, seed=3))
    for a, b in zip(five, ten):
        np.testing.assert_array_equal(a, b)
    other = start_points(7, SolverConfig(n_starts=5, seed=4))
    assert not np.array_equal(five[0], other[0])


def test_multi_start_tie_break(toy):
    # every start on the empty graph ties at 0 with residual 0: lowest index wins
    G = new_hypergraph(3, 4, [])
    best, runs = multi_start(G, SolverConfig())
    assert best.start_index == 0


# criticality residual


def test_criticality_examples(toy):
    for n in (4, 7, 10):
        assert criticality_residual(gen_complete(n, 3), np.full(n, 1 / n)) <= 1e-12
    assert criticality_residual(toy, np.eye(12)[0]) == 0.0
    assert criticality_residual(toy, np.full(12, 1 / 12)) > 1e-3
