import numpy as np
import pytest

from fuzzynet import (
    DegenerateInputError,
    LevelProfile,
    SemanticNet,
    UserVariable,
    partition,
    sim_objects,
    similarity_matrix,
)
from fuzzynet.network import KIND_SYSTEM, KIND_USER, AttributeRef
from fuzzynet.partition import SENTINEL, object_signature

from helpers import random_profile


class TestSampleGroups:
    def test_tight_threshold(self, sample_net):
        result = partition(sample_net, 0.9)
        assert result.groups == (
            ("gum-action", "rub-action"),
            ("key-erase-goal",),
            ("menu-cut-goal",),
        )

    def test_loose_threshold(self, sample_net):
        result = partition(sample_net, 0.5)
        assert result.groups == (
            ("gum-action", "rub-action"),
            ("key-erase-goal", "menu-cut-goal"),
        )

    def test_zero_threshold_merges_within_signature_only(self, sample_net):
        result = partition(sample_net, 0.0)
        assert result.groups == (
            ("gum-action", "rub-action"),
            ("key-erase-goal", "menu-cut-goal"),
        )

    def test_unit_threshold_gives_singletons(self, sample_net):
        result = partition(sample_net, 1.0)
        assert result.groups == (
            ("gum-action",),
            ("key-erase-goal",),
            ("menu-cut-goal",),
            ("rub-action",),
        )

    def test_jsonable(self, sample_net):
        data = partition(sample_net, 0.9).to_jsonable()
        assert data["theta"] == 0.9
        assert data["groups"][0] == ["gum-action", "rub-action"]


class TestInvariants:
    def test_groups_disjoint_and_exhaustive(self, sample_net):
        for theta in (0.0, 0.3, 0.67, 0.9, 1.0):
            result = partition(sample_net, theta)
            flat = [name for group in result.groups for name in group]
            assert sorted(flat) == sorted(sample_net.objects)
            assert len(flat) == len(set(flat))

    def test_raising_theta_refines(self, sample_net):
        # every group at a higher threshold must sit inside one lower group
        coarse = partition(sample_net, 0.5).groups
        fine = partition(sample_net, 0.95).groups
        containers = {name: group for group in coarse for name in group}
        for group in fine:
            hosts = {containers[name] for name in group}
            assert len(hosts) == 1

    def test_signatures_never_mix(self, sample_net):
        result = partition(sample_net, 0.0)
        for group in result.groups:
            signatures = {object_signature(sample_net, name) for name in group}
            assert len(signatures) == 1

    def test_theta_out_of_range_rejected(self, sample_net):
        with pytest.raises(DegenerateInputError):
            partition(sample_net, -0.1)
        with pytest.raises(DegenerateInputError):
            partition(sample_net, 1.5)


class TestMatrix:
    def test_sample_values(self, sample_net):
        names, matrix = similarity_matrix(sample_net)
        idx = {name: i for i, name in enumerate(names)}
        assert names == sorted(sample_net.objects)
        np.testing.assert_allclose(np.diag(matrix), 1.0)
        gum, rub = idx["gum-action"], idx["rub-action"]
        menu, key = idx["menu-cut-goal"], idx["key-erase-goal"]
        assert matrix[gum, rub] == pytest.approx(0.46 / 0.49, abs=1e-12)
        assert matrix[menu, key] == pytest.approx(0.6 / 0.9, abs=1e-12)
        # user-backed and system-backed objects are structurally incomparable
        assert matrix[gum, menu] == SENTINEL
        assert matrix[rub, key] == SENTINEL
        np.testing.assert_array_equal(matrix, matrix.T)

    def test_matches_scalar_path_on_sample(self, sample_net):
        names, matrix = similarity_matrix(sample_net)
        for i, a in enumerate(names):
            for j, b in enumerate(names):
                if matrix[i, j] == SENTINEL or i == j:
                    continue
                assert matrix[i, j] == sim_objects(sample_net, a, b)

    def test_matches_scalar_path_on_random_networks(self):
        rng = np.random.default_rng(47)
        procs = [f"p{i}" for i in range(4)]
        for trial in range(25):
            terms = {}
            for t in range(6):
                count = int(rng.integers(1, len(procs) + 1))
                chosen = rng.choice(len(procs), size=count, replace=False)
                terms[f"term{t}"] = UserVariable.of(
                    {procs[i]: random_profile(rng) for i in chosen}
                )
            objects = {
                f"obj{t}": (AttributeRef(KIND_USER, "attr", (f"term{t}",)),)
                for t in range(6)
            }
            net = SemanticNet(
                procedures=tuple(procs),
                user_attributes={"attr": terms},
                objects=objects,
            )
            names, matrix = similarity_matrix(net)
            for i, a in enumerate(names):
                assert matrix[i, i] == 1.0
                for j in range(i + 1, len(names)):
                    expected = matrix[i, j]
                    if expected == SENTINEL:
                        continue
                    assert expected == sim_objects(net, a, names[j]), (trial, a, names[j])

    def test_empty_network(self):
        net = SemanticNet(procedures=("p",))
        names, matrix = similarity_matrix(net)
        assert names == []
        assert matrix.shape == (0, 0)
        assert partition(net, 0.5).groups == ()

    def test_full_precision_mode(self, sample_net):
        names, matrix = similarity_matrix(sample_net, decimals=None)
        idx = {name: i for i, name in enumerate(names)}
        exact = sim_objects(sample_net, "gum-action", "rub-action", decimals=None)
        assert matrix[idx["gum-action"], idx["rub-action"]] == exact
