import pytest

from stiff_spectra.util.cluster import cluster_eigenvalues, multiplicities


@pytest.mark.module
@pytest.mark.util
class TestClusterEigenvalues:
    """cluster_eigenvalues. 観点: 正常系・境界"""

    def test_groups_close_values(self) -> None:
        """相対差 rtol 以内の連続値が同じクラスタになる"""
        values = [1.0, 4.0, 4.001, 9.0]
        assert cluster_eigenvalues(values, rtol=1e-3) == [[0], [1, 2], [3]]

    def test_chain_is_maximal(self) -> None:
        """隣接差で連鎖するものはひとつのクラスタ"""
        values = [1.0, 1.0009, 1.0018]
        assert cluster_eigenvalues(values, rtol=1e-3) == [[0, 1, 2]]

    def test_zero_is_singleton_without_atol(self) -> None:
        """0 の近傍は atol がないと閉じない"""
        assert cluster_eigenvalues([0.0, 1e-14], rtol=1e-3) == [[0], [1]]
        assert cluster_eigenvalues([0.0, 1e-14], rtol=1e-3, atol=1e-12) == [[0, 1]]

    def test_empty(self) -> None:
        assert cluster_eigenvalues([], rtol=1e-3) == []


@pytest.mark.module
@pytest.mark.util
class TestMultiplicities:
    """multiplicities. 観点: 正常系"""

    def test_sizes_per_entry(self) -> None:
        assert multiplicities([1.0, 4.0, 4.0, 9.0], rtol=1e-6) == [1, 2, 2, 1]
