"""The compiled kernels and their plain-numpy fallbacks must agree bit-for-bit."""
import importlib
import os

import numpy as np
import pytest

from fuzzynet import TrapezoidMF, _kernels, partition, similarity_matrix
from fuzzynet._kernels import (
    _centroid_batch_numpy,
    _pairwise_system_sim_numpy,
    _pairwise_user_sim_numpy,
)

from helpers import random_mf


def random_corner_batch(rng, n):
    return np.sort(rng.uniform(0.0, 1.0, (n, 4)), axis=1)


def random_user_pack(rng, variables=12, procs=5, levels=5):
    cent = np.round(rng.uniform(0.0, 1.0, (variables, procs, levels)), 2)
    mask = rng.uniform(size=(variables, procs, levels)) < 0.6
    cent[~mask] = 0.0
    return cent, mask


class TestCentroidBatch:
    def test_matches_scalar_closed_form(self):
        rng = np.random.default_rng(5)
        mfs = [random_mf(rng) for _ in range(300)]
        corners = np.asarray([mf.corners for mf in mfs])
        batch = _kernels.centroid_batch(corners)
        for mf, value in zip(mfs, batch.tolist()):
            assert value == mf.centroid()

    def test_point_mass_rows_fall_back_to_left_corner(self):
        corners = np.asarray([[0.3, 0.3, 0.3, 0.3], [0.2, 0.4, 0.4, 0.6]])
        batch = _kernels.centroid_batch(corners)
        assert batch[0] == 0.3
        assert batch[1] == TrapezoidMF(0.2, 0.4, 0.4, 0.6).centroid()

    def test_numpy_fallback_matches_active_kernel(self):
        rng = np.random.default_rng(6)
        corners = random_corner_batch(rng, 500)
        np.testing.assert_array_equal(
            _kernels.centroid_batch(corners), _centroid_batch_numpy(corners)
        )


class TestPairwiseParity:
    def test_user_sim_paths_agree_exactly(self):
        rng = np.random.default_rng(8)
        for round_scale in (100.0, 0.0):
            cent, mask = random_user_pack(rng)
            active = _kernels.pairwise_user_sim(cent, mask, round_scale)
            fallback = _pairwise_user_sim_numpy(cent, mask, round_scale)
            np.testing.assert_array_equal(active, fallback)

    def test_system_sim_paths_agree_exactly(self):
        rng = np.random.default_rng(9)
        deg = np.round(rng.uniform(0.0, 1.0, (15, 6)), 3)
        deg[rng.uniform(size=deg.shape) < 0.4] = 0.0
        np.testing.assert_array_equal(
            _kernels.pairwise_system_sim(deg), _pairwise_system_sim_numpy(deg)
        )

    def test_all_zero_rows_get_sentinel(self):
        deg = np.zeros((3, 4))
        out = _kernels.pairwise_system_sim(deg)
        np.testing.assert_array_equal(out, -1.0)

    def test_disjoint_masks_get_sentinel(self):
        cent = np.zeros((2, 1, 2))
        mask = np.zeros((2, 1, 2), dtype=np.bool_)
        mask[0, 0, 0] = True
        mask[1, 0, 1] = True
        out = _kernels.pairwise_user_sim(cent, mask, 100.0)
        assert out[0, 1] == -1.0


class TestEnvironmentSwitch:
    def test_flag_selects_fallback_and_results_match(self, sample_net, monkeypatch):
        if not _kernels.USE_NUMBA:
            pytest.skip("the numpy fallback is already active; nothing to switch from")
        rng = np.random.default_rng(10)
        corners = random_corner_batch(rng, 200)
        cent, mask = random_user_pack(rng)
        deg = np.round(rng.uniform(0.0, 1.0, (10, 5)), 3)

        before = {
            "use_numba": _kernels.USE_NUMBA,
            "centroids": _kernels.centroid_batch(corners),
            "user": _kernels.pairwise_user_sim(cent, mask, 100.0),
            "system": _kernels.pairwise_system_sim(deg),
            "matrix": similarity_matrix(sample_net)[1],
            "groups": partition(sample_net, 0.9).groups,
        }
        monkeypatch.setenv("FUZZYNET_NO_NUMBA", "1")
        importlib.reload(_kernels)
        try:
            assert before["use_numba"] is True
            assert _kernels.USE_NUMBA is False
            np.testing.assert_array_equal(
                before["centroids"], _kernels.centroid_batch(corners)
            )
            np.testing.assert_array_equal(
                before["user"], _kernels.pairwise_user_sim(cent, mask, 100.0)
            )
            np.testing.assert_array_equal(
                before["system"], _kernels.pairwise_system_sim(deg)
            )
            np.testing.assert_array_equal(
                before["matrix"], similarity_matrix(sample_net)[1]
            )
            assert before["groups"] == partition(sample_net, 0.9).groups
        finally:
            monkeypatch.delenv("FUZZYNET_NO_NUMBA")
            importlib.reload(_kernels)
        assert _kernels.USE_NUMBA is True

    def test_flag_spellings(self, monkeypatch):
        for spelling in ("1", "true", "YES", " True "):
            monkeypatch.setenv("FUZZYNET_NO_NUMBA", spelling)
            importlib.reload(_kernels)
            assert _kernels.USE_NUMBA is False
        monkeypatch.setenv("FUZZYNET_NO_NUMBA", "")
        importlib.reload(_kernels)
        assert _kernels.USE_NUMBA is _kernels.HAS_NUMBA
        monkeypatch.delenv("FUZZYNET_NO_NUMBA")
        importlib.reload(_kernels)
