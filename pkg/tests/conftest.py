import pytest
import os
import sys
import tempfile

# プロジェクトルートをパスに追加して、planted_labモジュールをインポートできるようにする
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

# ログはテストごとの一時ディレクトリに出す（ロガーはシングルトンなので最初に設定する）
os.environ.setdefault("PLANTED_LAB_LOG_DIR", tempfile.mkdtemp(prefix="planted_lab_logs_"))

from planted_lab.models import Family, ModelSpec, noiseless_instance  # noqa: E402


@pytest.fixture
def prem_spec():
    """M=100, k=1 の P-REM 仕様"""
    return ModelSpec.create(family=Family.PREM, mu_hat=1.5, sigma_hat=1.0, size=100, k=1)


@pytest.fixture
def wsbm_spec():
    """N=10, k=3 の 2-WSBM 仕様"""
    return ModelSpec.create(family=Family.WSBM, mu_hat=1.0, sigma_hat=1.0, size=10, k=3)


@pytest.fixture
def hwsbm_spec():
    """N=9, k=4, h=3 の 2-hWSBM 仕様"""
    return ModelSpec.create(family=Family.HWSBM, mu_hat=1.0, sigma_hat=1.0, size=9, k=4, h=3)


@pytest.fixture
def noiseless():
    """ノイズなしインスタンスを作るファクトリ"""
    def _make(spec, planted):
        return noiseless_instance(spec, planted)
    return _make


@pytest.fixture
def single_worker(monkeypatch):
    """ワーカー数を1に固定する"""
    monkeypatch.setenv("PLANTED_LAB_WORKERS", "1")
