""" Automated tests for the Chebyshev forecaster, Adam and the
    parameter checkpoints.

    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Third party
import numpy as np
import pytest

# Custom
from models import datamodel as dm
from models import forecastmodel as fm
from models import graphmodel as gm

############
# Fixtures #
############
def random_graph(rng, n):
    pos = rng.uniform(0.0, 5000.0, size=(n, 2))
    return gm.build_adjacency(gm.distances_from_positions(pos),
                              kernel_sigma=2000.0, cutoff=3000.0,
                              positions=pos)


def random_batch(rng, n_nodes, B=5, T=4, horizon=3):
    inputs = rng.normal(size=(B, T, n_nodes))
    targets = rng.normal(size=(B, horizon, n_nodes))
    return dm.WindowBatch(
        window_index=0,
        inputs=inputs,
        targets=targets,
        raw_truth=targets,
        t0=np.arange(B),
        nodes=tuple(range(n_nodes))
        )


@pytest.fixture
def small_model():
    rng = np.random.default_rng(1)
    graph = random_graph(rng, 8)
    model, _ = fm.build_model(graph, [0, 1, 2, 3], [5, 6],
                              K=3, T=4, horizon=3)
    return model


def dense_chebyshev(L, k):
    """ T_k(L) evaluated on the eigenvalues of L. """
    w, v = np.linalg.eigh(L)
    coef = np.zeros(k + 1)
    coef[k] = 1.0
    return (v * np.polynomial.chebyshev.chebval(w, coef)) @ v.T

##############
# Unit Tests #
##############
class Test_Chebyshev:
    """ Tests for the scaled Laplacian and the polynomial basis. """
    def test_scaled_spectrum(self):
        for seed in range(50):
            # Arrange
            rng = np.random.default_rng(seed)
            graph = random_graph(rng, int(rng.integers(2, 21)))

            # Act
            L, lam = fm.scaled_laplacian(graph.adjacency)

            # Assert
            eig = np.linalg.eigvalsh(L)
            assert eig.min() >= -1 - 1e-6, seed
            assert eig.max() <= 1 + 1e-6, seed
            expected = np.linalg.eigvalsh(
                fm.normalized_laplacian(graph.adjacency)).max()
            assert lam == pytest.approx(expected, rel=1e-9), seed

    def test_lanczos_on_long_path(self):
        # Arrange
        n = fm.DENSE_LIMIT + 100
        adjacency = np.eye(n, k=1) + np.eye(n, k=-1)

        # Act
        L, lam = fm.scaled_laplacian(adjacency)

        # Assert
        assert lam == pytest.approx(2.0, abs=1e-9)
        assert np.abs(L).sum(axis=1).max() <= 1 + 1e-6

    def test_recursion_matches_dense(self):
        for seed in range(50):
            # Arrange
            rng = np.random.default_rng(seed)
            n = int(rng.integers(2, 21))
            graph = random_graph(rng, n)
            L, _ = fm.scaled_laplacian(graph.adjacency)
            K = int(rng.integers(1, 6))

            # Act
            basis = fm.chebyshev_basis(L, K, np.eye(n))

            # Assert
            for k in range(K):
                err = np.abs(basis[k] - dense_chebyshev(L, k)).max()
                assert err <= 1e-10, (seed, k)

    def test_k_one_is_identity(self):
        L = np.array([[0.0, 0.5], [0.5, 0.0]])
        X = np.array([[1.0], [2.0]])
        basis = fm.chebyshev_basis(L, 1, X)
        assert len(basis) == 1
        assert np.array_equal(basis[0], X)

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            fm.chebyshev_basis(np.eye(2), 0, np.eye(2))

    def test_dimension_mismatch(self):
        with pytest.raises(fm.DimensionMismatch):
            fm.chebyshev_basis(np.eye(3), 2, np.eye(2))


class Test_Predict:
    """ Tests for the forward pass. """
    def test_persistence(self, small_model):
        # Arrange
        params = fm.persistence_params(3, 4, 3)
        x = np.random.default_rng(2).normal(size=(4, small_model.n_nodes))

        # Act
        y = fm.predict(small_model, params, x)

        # Assert
        assert y.shape == (3, small_model.n_nodes)
        assert np.allclose(y, np.repeat(x[-1:], 3, axis=0))

    def test_linearity(self, small_model):
        rng = np.random.default_rng(3)
        params = fm.init_params(3, 4, 3, rng, noise=0.5)
        # Zero bias so the map is linear, not affine
        coef, _ = params.unflatten()
        params = fm.ForecasterParams.flatten(coef, np.zeros(3),
                                             params.shape_tag)
        a = rng.normal(size=(4, small_model.n_nodes))
        b = rng.normal(size=(4, small_model.n_nodes))
        lhs = fm.predict(small_model, params, 2.0 * a - 3.0 * b)
        rhs = (2.0 * fm.predict(small_model, params, a)
               - 3.0 * fm.predict(small_model, params, b))
        assert np.allclose(lhs, rhs)

    def test_shape_tag_mismatch(self, small_model):
        params = fm.persistence_params(2, 4, 3)
        with pytest.raises(fm.IncompatibleModels):
            fm.predict(small_model, params, np.zeros((4, small_model.n_nodes)))

    def test_wrong_input_size(self, small_model):
        params = fm.persistence_params(3, 4, 3)
        with pytest.raises(fm.DimensionMismatch):
            fm.predict(small_model, params, np.zeros((4, 2)))

    def test_params_do_not_depend_on_subgraph(self):
        rng = np.random.default_rng(4)
        graph = random_graph(rng, 10)
        full, _ = fm.build_model(graph, [0, 1, 2], [3, 4, 5, 6])
        pruned, _ = fm.build_model(graph, [0, 1, 2], [])
        assert full.n_params == pruned.n_params
        assert full.shape_tag == pruned.shape_tag


class Test_Gradient:
    """ Analytic gradient against central finite differences. """
    def test_gradient_check(self, small_model):
        rng = np.random.default_rng(5)
        eps = 1e-6
        for _ in range(100):
            # Arrange
            params = fm.init_params(3, 4, 3, rng, noise=1.0)
            batch = random_batch(rng, small_model.n_nodes)
            _, grad = fm.loss_and_grad(small_model, params, batch)
            i = int(rng.integers(params.size))

            # Act
            bump = np.zeros(params.size)
            bump[i] = eps
            up = fm.ForecasterParams(params.theta + bump, params.shape_tag)
            down = fm.ForecasterParams(params.theta - bump, params.shape_tag)
            numeric = (fm.loss_and_grad(small_model, up, batch)[0]
                       - fm.loss_and_grad(small_model, down, batch)[0]) \
                / (2 * eps)

            # Assert
            denom = max(abs(numeric), abs(grad[i]), 1e-4)
            assert abs(numeric - grad[i]) / denom <= 1e-5

    def test_loss_ignores_cross_nodes(self, small_model):
        rng = np.random.default_rng(6)
        params = fm.persistence_params(3, 4, 3)
        batch = random_batch(rng, small_model.n_nodes)
        loss, _ = fm.loss_and_grad(small_model, params, batch)
        moved = dm.WindowBatch(
            window_index=0,
            inputs=batch.inputs,
            targets=batch.targets.copy(),
            raw_truth=batch.raw_truth,
            t0=batch.t0,
            nodes=batch.nodes
            )
        moved.targets[:, :, small_model.local_count:] += 100.0
        assert fm.loss_and_grad(small_model, params, moved)[0] == loss


class Test_Optimizer:
    """ Tests for Adam and the learning-rate schedule. """
    def test_first_step_is_lr_sized(self):
        # Arrange
        params = fm.ForecasterParams(np.zeros(4), fm.make_shape_tag(1, 1, 2))
        state = fm.AdamState.zeros(params)
        grad = np.array([1.0, -2.0, 0.5, 0.0])

        # Act
        new, state = fm.adam_step(params, grad, state, lr=0.1)

        # Assert
        assert state.step == 1
        expected = -0.1 * grad / (np.abs(grad) + fm.EPSILON)
        assert np.allclose(new.theta, expected)

    def test_weight_decay_shrinks(self):
        params = fm.ForecasterParams(np.ones(3), fm.make_shape_tag(1, 1, 1))
        state = fm.AdamState.zeros(params)
        new, _ = fm.adam_step(params, np.zeros(3), state, lr=0.1,
                              weight_decay=0.5)
        assert np.allclose(new.theta, 1.0 - 0.1 * 0.5)

    def test_schedule(self):
        assert fm.scheduled_lr(1e-4, 4) == 1e-4
        assert fm.scheduled_lr(1e-4, 5) == pytest.approx(0.7e-4)
        assert fm.scheduled_lr(1e-4, 10) == pytest.approx(0.49e-4)

    def test_training_reduces_loss(self, small_model):
        # Arrange: targets follow the persistence model exactly
        rng = np.random.default_rng(7)
        truth = fm.persistence_params(3, 4, 3)
        inputs = rng.normal(size=(64, 4, small_model.n_nodes))
        targets = fm.predict(small_model, truth, inputs)
        batch = dm.WindowBatch(0, inputs, targets, targets, np.arange(64),
                               tuple(range(small_model.n_nodes)))
        params = fm.init_params(3, 4, 3, rng, noise=0.3)
        state = fm.AdamState.zeros(params)
        start, _ = fm.loss_and_grad(small_model, params, batch)

        # Act
        for _ in range(20):
            params, state, _ = fm.train_on_window(
                small_model, params, batch, state, rng, lr=0.01)

        # Assert
        assert fm.loss_and_grad(small_model, params, batch)[0] < start


class Test_Aggregation:
    """ Tests for parameter averaging. """
    def test_weighted_blend(self):
        tag = fm.make_shape_tag(1, 1, 1)
        a = fm.ForecasterParams(np.zeros(2), tag)
        b = fm.ForecasterParams(np.full(2, 4.0), tag)
        avg = fm.average_params([a, b], weights=[1, 3])
        assert np.allclose(avg.theta, 3.0)

    def test_identical_is_fixed_point(self):
        tag = fm.make_shape_tag(1, 1, 1)
        a = fm.ForecasterParams(np.array([1.5, -2.0]), tag)
        assert np.allclose(fm.average_params([a, a, a]).theta, a.theta)

    def test_mixed_tags(self):
        a = fm.ForecasterParams(np.zeros(2), fm.make_shape_tag(1, 1, 1))
        b = fm.ForecasterParams(np.zeros(3), fm.make_shape_tag(1, 2, 1))
        with pytest.raises(fm.IncompatibleModels):
            fm.average_params([a, b])


class Test_Checkpoint:
    """ Tests for the params file format. """
    def test_save_and_load(self, tmp_path):
        # Arrange
        params = fm.init_params(3, 12, 6, np.random.default_rng(8))
        path = tmp_path / 'params.bin'

        # Act
        fm.save_params(path, params)
        loaded = fm.load_params(path)

        # Assert
        assert loaded.shape_tag == params.shape_tag
        assert np.array_equal(loaded.theta, params.theta)
        header = path.read_bytes().split(b'\n', 1)[0]
        assert header == b'cheb-linear;K=3;T=12;H=6'

    def test_truncated_file(self, tmp_path):
        path = tmp_path / 'params.bin'
        path.write_bytes(b'cheb-linear;K=3;T=12;H=6\n' + b'\x00' * 16)
        with pytest.raises(fm.DimensionMismatch):
            fm.load_params(path)
