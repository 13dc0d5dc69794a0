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


import math
import unittest

import numpy as np
from dimcert.bounds.bell_bounds import bell_bound_eq2
from dimcert.bounds.pm_bound import fidelity_matrix, pm_bound, pm_to_bell, diagonal_sum, check_dominance
from dimcert.correlations.generators import gen_toy, gen_rac, gen_nonconvexity_pair, mix
from dimcert.correlations.manipulations import permute_preparations, relabel_pm_outcomes, delete_measurement
from dimcert.correlations.model import SimplexWeights, validate_pm
from dimcert.tests.RandomCorrelations import RandomCorrelationStream, random_pm, random_q

RAC2_BETA = math.cos(math.pi / 8) ** 2
RAC3_BETA = 0.5 + 1. / (2. * math.sqrt(3.))


class TestFidelityMatrix(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(1234)

    def test_properties(self):
        for _ in range(50):
            p = random_pm(self.rng, 4, 3, 3, sparsity=0.3)
            a = fidelity_matrix(p).a
            self.assertTrue(np.allclose(np.diag(a), 1., atol=1e-12))
            self.assertTrue(np.array_equal(a, a.T))
            self.assertTrue(np.all(a >= 0.) and np.all(a <= 1. + 1e-12))

    def test_argmin_measurement(self):
        # measurement 1 separates the two preparations, measurement 0 does not
        probs = np.array([[[0.5, 0.5], [1., 0.]], [[0.5, 0.5], [0., 1.]]])
        fid = fidelity_matrix(validate_pm(probs))
        self.assertEqual(fid.a[0, 1], 0.)
        self.assertEqual(fid.argmin_y[0, 1], 1)


class TestPMBound(unittest.TestCase):
    def setUp(self):
        np.random.seed(1234)
        self.rng = np.random.default_rng(1234)

    def test_toy_is_exact(self):
        for m in range(1, 11):
            report = pm_bound(gen_toy(m))
            self.assertAlmostEqual(report.raw_bound, 2. ** m, delta=1e-9)
            self.assertEqual(report.dimension_lb, 2 ** m)

    def test_subnormalized_slices_stay_below_n(self):
        p = validate_pm(gen_toy(3).probs * (1. - 0.9e-9))
        report = pm_bound(p)
        self.assertLessEqual(report.raw_bound, 8. + 1e-9)
        self.assertEqual(report.dimension_lb, 8)

        p = validate_pm([[[0.9, 0.]], [[0., 0.9]]], tol=0.1)
        report = pm_bound(p)
        self.assertAlmostEqual(report.raw_bound, 2., delta=1e-12)
        self.assertEqual(report.dimension_lb, 2)

    def test_dimension_lb_between_one_and_n(self):
        for _ in range(200):
            n = int(self.rng.integers(1, 6))
            p = random_pm(self.rng, n, 3, 3, sparsity=0.5)
            p = validate_pm(p.probs * (1. - 0.9e-3 * self.rng.random()), tol=1e-3)
            report = pm_bound(p, random_q(self.rng, n))
            self.assertGreaterEqual(report.dimension_lb, 1)
            self.assertLessEqual(report.dimension_lb, n)
            self.assertEqual(report.q_source, "uniform")

    def test_rac_values(self):
        report = pm_bound(gen_rac(2, RAC2_BETA))
        self.assertAlmostEqual(report.raw_bound, 8. / 5., delta=1e-9)
        self.assertEqual(report.dimension_lb, 2)
        report = pm_bound(gen_rac(3, RAC3_BETA))
        self.assertAlmostEqual(report.raw_bound, 24. / 17., delta=1e-9)
        self.assertEqual(report.dimension_lb, 2)

    def test_nonconvexity(self):
        p1, p2 = gen_nonconvexity_pair()
        report = pm_bound(mix([p1, p2], [0.5, 0.5]))
        self.assertAlmostEqual(report.raw_bound, 16. / 7., delta=1e-9)
        self.assertEqual(report.dimension_lb, 3)
        self.assertLessEqual(pm_bound(p1).dimension_lb, 2)
        self.assertLessEqual(pm_bound(p2).dimension_lb, 2)

    def test_point_mass_gives_one(self):
        p = random_pm(self.rng, 3, 2, 2)
        report = pm_bound(p, SimplexWeights.point_mass(3, 1))
        self.assertAlmostEqual(report.raw_bound, 1., delta=1e-12)
        self.assertEqual(report.q_source, "user")

    def test_range(self):
        for p, q in RandomCorrelationStream(200, seed=7):
            report = pm_bound(p, q)
            self.assertGreaterEqual(report.raw_bound, 1. - 1e-9)
            self.assertLessEqual(report.raw_bound, p.n_preparations + 1e-9)
            self.assertTrue(1 <= report.dimension_lb <= p.n_preparations)

    def test_precomputed_fidelity_is_used(self):
        p = random_pm(self.rng, 4, 2, 3)
        q = random_q(self.rng, 4)
        fid = fidelity_matrix(p)
        self.assertEqual(pm_bound(p, q, fidelity=fid).raw_bound, pm_bound(p, q).raw_bound)

    def test_relabeling_invariance(self):
        for p, q in RandomCorrelationStream(50, seed=3):
            n = p.n_preparations
            perm = self.rng.permutation(n)
            p2, q2 = permute_preparations(p, perm, q)
            self.assertAlmostEqual(pm_bound(p, q).raw_bound, pm_bound(p2, q2).raw_bound, delta=1e-9)
            p3 = relabel_pm_outcomes(p, self.rng.permutation(p.n_outcomes), measurement=0)
            self.assertAlmostEqual(pm_bound(p, q).raw_bound, pm_bound(p3, q).raw_bound, delta=1e-9)

    def test_deleting_a_measurement_never_increases_the_bound(self):
        for p, q in RandomCorrelationStream(50, seed=5):
            if p.n_measurements < 2:
                continue
            self.assertLessEqual(pm_bound(delete_measurement(p, 0), q).raw_bound,
                                 pm_bound(p, q).raw_bound + 1e-9)

    def test_diagonal_sum(self):
        p = random_pm(self.rng, 5, 2, 2)
        self.assertAlmostEqual(diagonal_sum(fidelity_matrix(p)), 1. / 5., delta=1e-12)
        fid = fidelity_matrix(gen_toy(3))
        self.assertAlmostEqual(fid.quadratic_form(np.ones(8) / 8), diagonal_sum(fid), delta=1e-12)


class TestBellCrossCheck(unittest.TestCase):
    def test_transform_shape(self):
        p = gen_rac(2, 0.8)
        r = pm_to_bell(p, [0.1, 0.2, 0.3, 0.4])
        self.assertEqual(r.shape, (1, 2, 4, 2))
        self.assertAlmostEqual(r.probs[0, 1, 3, 0], 0.4 * p.probs[3, 1, 0])
        self.assertTrue(np.allclose(r.probs.sum(axis=(2, 3)), 1.))

    def test_eq2_of_transform_equals_pm_bound(self):
        for p, q in RandomCorrelationStream(1000, seed=1234):
            r = pm_to_bell(p, q)
            raw = pm_bound(p, q).raw_bound
            self.assertLessEqual(abs(bell_bound_eq2(r) - raw), 1e-9)
            # eq1 beating eq2 is logged by check_dominance, never a failure
            check_dominance(p, q)

    def test_check_dominance_on_toy(self):
        dominated, eq1, eq2 = check_dominance(gen_toy(2))
        self.assertTrue(dominated)
        self.assertAlmostEqual(eq2, 4., delta=1e-9)


if __name__ == '__main__':
    unittest.main()
