# Copyright 2026 The dimcert developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import unittest

import numpy as np
from dimcert.bounds.simplex_optimizer import optimize_q_exact, optimize_q_heuristic, optimize_q, simplex_projection, \
    projected_gradient_descent, solve_face
from dimcert.correlations.generators import gen_nonconvexity_pair, mix, gen_rac
from dimcert.bounds.pm_bound import fidelity_matrix, pm_bound
from dimcert.exceptions import TooLargeError
from dimcert.tests.RandomCorrelations import random_fidelity_matrix

GRID_STEP = 0.02


def simplex_grid(n, step=GRID_STEP):
    """all q with entries in multiples of step, built one coordinate at a time"""
    total = int(round(1. / step))
    points = np.zeros((1, 0), dtype=np.int64)
    remaining = np.array([total])
    for _ in range(n - 1):
        counts = remaining + 1
        rows = np.repeat(np.arange(len(remaining)), counts)
        values = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        points = np.hstack([points[rows], values[:, None]])
        remaining = remaining[rows] - values
    points = np.hstack([points, remaining[:, None]])
    return points / float(total)


def quadratic_forms(a, qs):
    return ((qs @ a) * qs).sum(axis=1)


class TestSimplexProjection(unittest.TestCase):
    def setUp(self):
        np.random.seed(1234)

    def test_known_projections(self):
        self.assertTrue(np.allclose(simplex_projection([0.5, 0.5, 0.5]), [1. / 3] * 3))
        self.assertTrue(np.allclose(simplex_projection([2., 0.]), [1., 0.]))
        self.assertTrue(np.allclose(simplex_projection([0.2, 0.3, 0.5]), [0.2, 0.3, 0.5]))

    def test_lands_on_simplex(self):
        for _ in range(100):
            v = np.random.normal(0, 3, size=np.random.randint(1, 10))
            q = simplex_projection(v)
            self.assertAlmostEqual(q.sum(), 1., delta=1e-12)
            self.assertTrue(np.all(q >= 0))

    def test_pgd_reaches_interior_minimum(self):
        value, q = projected_gradient_descent(np.eye(3), [1., 0., 0.])
        self.assertAlmostEqual(value, 1. / 3, delta=1e-9)
        self.assertTrue(np.allclose(q, 1. / 3, atol=1e-6))


class TestSimplexGrid(unittest.TestCase):
    def test_grid_size_and_normalization(self):
        grid = simplex_grid(3)
        self.assertEqual(grid.shape, (1326, 3))
        self.assertTrue(np.allclose(grid.sum(axis=1), 1.))
        self.assertEqual(len(np.unique(grid, axis=0)), 1326)
        self.assertTrue(np.array_equal(simplex_grid(1), [[1.]]))


class TestExactSolver(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(1234)

    def test_identity(self):
        result = optimize_q_exact(np.eye(5))
        self.assertAlmostEqual(result.value, 0.2, delta=1e-12)
        self.assertTrue(np.allclose(result.q_star.weights, 0.2))
        self.assertTrue(result.certified_global)
        self.assertEqual(result.method, "face_enumeration")

    def test_ties_prefer_larger_support(self):
        result = optimize_q_exact(np.ones((3, 3)))
        self.assertAlmostEqual(result.value, 1., delta=1e-12)
        self.assertTrue(np.allclose(result.q_star.weights, 1. / 3))

    def test_face_solution(self):
        a = np.array([[1., 0.5], [0.5, 1.]])
        self.assertTrue(np.allclose(solve_face(a, np.array([0, 1])), [0.5, 0.5]))
        # the unconstrained stationary point of this face has a negative weight
        a = np.array([[1., 2.], [2., 5.]])
        self.assertIsNone(solve_face(a, np.array([0, 1])))

    def test_scale_covariance(self):
        for i in range(100):
            a = random_fidelity_matrix(self.rng, 2 + i % 5).a
            base = optimize_q_exact(a)
            for c in (0.25, 3.):
                scaled = optimize_q_exact(c * a)
                self.assertAlmostEqual(scaled.value, c * base.value, delta=1e-12 * max(1., c))
                self.assertTrue(np.allclose(scaled.q_star.weights, base.q_star.weights, atol=1e-9))

    def test_too_large(self):
        self.assertRaises(TooLargeError, optimize_q_exact, np.eye(21))
        with self.assertRaises(TooLargeError) as cm:
            optimize_q_exact(np.eye(5), max_n=4)
        self.assertEqual(cm.exception.exit_code, 4)

    def test_optimized_q_never_worse_than_uniform(self):
        p = mix(gen_nonconvexity_pair(), [0.5, 0.5])
        fid = fidelity_matrix(p)
        result = optimize_q_exact(fid)
        report = pm_bound(p, result.q_star, fidelity=fid, q_source="optimized", optimizer=result)
        self.assertGreaterEqual(report.raw_bound, 16. / 7. - 1e-9)
        self.assertEqual(report.to_dict()["optimizer"]["method"], "face_enumeration")

    def test_rac_optimum_is_uniform_value(self):
        # the RAC is symmetric under flipping bits, uniform q is optimal
        result = optimize_q_exact(fidelity_matrix(gen_rac(2, 0.85)))
        self.assertAlmostEqual(result.value, fidelity_matrix(gen_rac(2, 0.85)).quadratic_form(np.ones(4) / 4),
                               delta=1e-12)

    def test_grid_oracle(self):
        grids = dict((n, simplex_grid(n)) for n in range(2, 7))
        for i in range(500):
            n = 2 + i % 7
            a = random_fidelity_matrix(self.rng, n).a
            exact = optimize_q_exact(a).value
            if n in grids:
                reference = quadratic_forms(a, grids[n]).min()
            else:
                samples = np.vstack([self.rng.dirichlet(np.ones(n), size=200), np.eye(n), np.ones((1, n)) / n])
                reference = quadratic_forms(a, samples).min()
            self.assertLessEqual(exact, reference + 1e-9, "instance %d with N = %d" % (i, n))
            if i % 5 == 0:
                heuristic = optimize_q_heuristic(a, restarts=4, seed=i, max_iter=2000).value
                self.assertGreaterEqual(heuristic, exact - 1e-9, "instance %d with N = %d" % (i, n))

    def test_thread_count_does_not_change_result(self):
        a = random_fidelity_matrix(self.rng, 13).a
        r1 = optimize_q_exact(a, num_threads=1)
        r2 = optimize_q_exact(a, num_threads=3)
        self.assertEqual(r1.value, r2.value)
        self.assertTrue(np.array_equal(r1.q_star.weights, r2.q_star.weights))
        self.assertEqual(r1.stationary_points_examined, r2.stationary_points_examined)


class TestHeuristicSolver(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(1234)

    def test_deterministic_for_fixed_seed(self):
        a = random_fidelity_matrix(self.rng, 6).a
        r1 = optimize_q_heuristic(a, restarts=8, seed=3, max_iter=5000)
        r2 = optimize_q_heuristic(a, restarts=8, seed=3, max_iter=5000, num_threads=2)
        self.assertEqual(r1.value, r2.value)
        self.assertTrue(np.array_equal(r1.q_star.weights, r2.q_star.weights))
        self.assertFalse(r1.certified_global)
        self.assertEqual(r1.to_dict()["seed"], 3)

    def test_identity(self):
        result = optimize_q_heuristic(np.eye(8), restarts=4, seed=0, max_iter=2000)
        self.assertAlmostEqual(result.value, 1. / 8, delta=1e-9)
        self.assertTrue(np.allclose(result.q_star.weights, 1. / 8, atol=1e-6))

    def test_invalid_restarts(self):
        self.assertRaises(ValueError, optimize_q_heuristic, np.eye(2), 0)

    def test_dispatch(self):
        a = np.eye(5)
        self.assertEqual(optimize_q(a).method, "face_enumeration")
        self.assertEqual(optimize_q(a, exact_threshold=4, restarts=4).method, "multistart_pgd")


if __name__ == '__main__':
    unittest.main()
