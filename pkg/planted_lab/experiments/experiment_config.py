import hashlib
import json
import os
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from planted_lab.estimators import DEFAULT_ENUMERATION_BUDGET, EstimatorFactory, Method
from planted_lab.models import MAX_SEED, ModelSpec
from planted_lab.utils.errors import ConfigError, IoError


class ExperimentConfig(BaseModel):
    """
    モンテカルロ実験の設定

    spec の mu_hat はテンプレートの値で、各グリッド点では mu_hat = gamma * sigma_hat に置き換える。
    成功は推定集合と planted 集合の完全一致。
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    spec: ModelSpec
    gamma_grid: List[float]
    trials: int = 100
    master_seed: int
    method: Optional[Method] = None
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET

    @field_validator("gamma_grid")
    @classmethod
    def _check_grid(cls, grid: List[float]) -> List[float]:
        if not grid:
            raise ValueError("gamma_grid must not be empty")
        if any(g < 0 for g in grid):
            raise ValueError("gamma_grid values must be non-negative")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("gamma_grid must be strictly ascending")
        return grid

    @field_validator("trials")
    @classmethod
    def _check_trials(cls, trials: int) -> int:
        if trials < 1:
            raise ValueError("trials must be at least 1")
        return trials

    @field_validator("master_seed")
    @classmethod
    def _check_seed(cls, seed: int) -> int:
        if not 0 <= seed <= MAX_SEED:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        return seed

    @classmethod
    def create(cls, **kwargs) -> 'ExperimentConfig':
        """検証エラーを最初のキー名付きの ConfigError に変換して生成する"""
        try:
            return cls(**kwargs)
        except ValidationError as e:
            error = e.errors()[0]
            key = ".".join(str(part) for part in error["loc"]) if error.get("loc") else None
            raise ConfigError(key, error["msg"]) from e

    @property
    def estimator_method(self) -> Method:
        return self.method or EstimatorFactory.default_method(self.spec.family)

    def spec_at(self, gamma: float) -> ModelSpec:
        """
        gamma での仕様を返す

        gamma = 0 はヌルモデル用で、mu_hat = sigma_hat を仮の値として入れる
        （重みにはバイアスを加えない）。
        """
        if gamma == 0:
            return self.spec.with_gamma(1.0)
        return self.spec.with_gamma(gamma)

    def config_hash(self) -> str:
        """正規化した JSON の sha256（出力のメタデータに記録する）"""
        payload = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    @classmethod
    def load(cls, file_path: str) -> 'ExperimentConfig':
        """
        設定ファイルから設定を読み込む

        Args:
            file_path (str): 設定ファイルのパス

        Returns:
            ExperimentConfig: 設定オブジェクト
        """
        if not os.path.exists(file_path):
            raise IoError(f"config file not found: {file_path}")
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                config_data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(None, f"invalid JSON in {file_path}: {e}") from e
        return cls.create(**config_data)

    def save(self, file_path: str) -> bool:
        """
        設定をファイルに保存する

        Args:
            file_path (str): 設定ファイルのパス

        Returns:
            bool: 保存が成功したかどうか
        """
        try:
            with open(file_path, 'w', encoding='utf-8') as f:
                json.dump(self.model_dump(mode="json"), f, ensure_ascii=False, indent=2)
            return True
        except OSError:
            return False
