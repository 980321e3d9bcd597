import hashlib
import json
import os
from typing import Iterable, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from planted_lab.estimators import DEFAULT_ENUMERATION_BUDGET, Method
from planted_lab.experiments import ExperimentConfig
from planted_lab.models import MAX_SEED, Family, ModelSpec
from planted_lab.utils.errors import ConfigError, IoError


CONFIG_ENV = "PLANTED_LAB_CONFIG"


class LabConfig(BaseModel):
    """
    CLI の全サブコマンドが使うフラットな設定

    設定ファイル（JSON の1オブジェクト）と --set key=value の上書きから作る。
    未知のキーは無視せずにエラーにする。
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    family: Optional[Family] = None
    mu_hat: Optional[float] = None
    sigma_hat: float = 1.0
    M: Optional[int] = None
    N: Optional[int] = None
    k: Optional[int] = None
    h: Optional[int] = None
    seed: Optional[int] = None
    trials: int = 100
    gamma: Optional[float] = None
    gamma_min: Optional[float] = None
    gamma_max: Optional[float] = None
    steps: Optional[int] = None
    gamma_grid: Optional[List[float]] = None
    method: Optional[Method] = None
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET
    m: Optional[int] = None
    sizes: Optional[List[int]] = None
    n: Optional[int] = None
    alpha: Optional[float] = None
    c: Optional[float] = None

    @field_validator("seed")
    @classmethod
    def _check_seed(cls, seed: Optional[int]) -> Optional[int]:
        if seed is not None and not 0 <= seed <= MAX_SEED:
            raise ValueError("seed must be a 64-bit unsigned integer")
        return seed

    @classmethod
    def create(cls, **kwargs) -> 'LabConfig':
        """
        検証エラーを最初のキー名付きの ConfigError に変換して生成する

        Returns:
            LabConfig: ファミリーごとの規則まで検証済みの設定
        """
        try:
            config = cls(**kwargs)
        except ValidationError as e:
            error = e.errors()[0]
            key = str(error["loc"][0]) if error.get("loc") else None
            raise ConfigError(key, error["msg"]) from e
        config.check_family()
        return config

    def check_family(self):
        """ファミリーごとに必須・禁止のキーを確認する"""
        if self.family is None:
            return
        if self.family == Family.PREM:
            for key in ("N", "h"):
                if getattr(self, key) is not None:
                    raise ConfigError(key, "not defined for PREM")
            return
        if self.family == Family.WSBM and self.h not in (None, 2):
            raise ConfigError("h", "WSBM has fixed h=2")
        if self.family == Family.HWSBM:
            if self.h is None:
                raise ConfigError("h", "HWSBM requires h")
            if self.k is not None and self.N is not None and not 2 <= self.h <= self.k <= self.N - 1:
                raise ConfigError("h", f"need 2 <= h <= k <= N-1 (N={self.N}, k={self.k}, h={self.h})")
        if self.M is not None:
            raise ConfigError("M", f"not defined for {self.family.value}")

    def require(self, *keys: str):
        for key in keys:
            if getattr(self, key) is None:
                raise ConfigError(key, "required for this command")

    @property
    def size(self) -> Optional[int]:
        """PREM では M、グラフ系では N"""
        return self.M if self.family == Family.PREM else self.N

    @property
    def edge_cardinality(self) -> int:
        if self.family == Family.PREM:
            return 1
        return self.h if self.h is not None else 2

    def model_spec(self, gamma: Optional[float] = None) -> ModelSpec:
        """
        設定から ModelSpec を作る

        Args:
            gamma (float): 指定すると mu_hat = gamma * sigma_hat とする
        """
        self.require("family", "k")
        self.require("M" if self.family == Family.PREM else "N")
        mu_hat = self.mu_hat
        if gamma is not None:
            mu_hat = gamma * self.sigma_hat
        elif mu_hat is None and self.gamma is not None:
            mu_hat = self.gamma * self.sigma_hat
        if mu_hat is None:
            raise ConfigError("mu_hat", "required (or give gamma)")
        h = None if self.family == Family.PREM else self.h
        return ModelSpec.create(family=self.family, mu_hat=mu_hat, sigma_hat=self.sigma_hat,
                                size=self.size, k=self.k, h=h)

    def grid(self) -> List[float]:
        """gamma_grid、なければ gamma_min..gamma_max を steps 点で等分したグリッド"""
        if self.gamma_grid is not None:
            return list(self.gamma_grid)
        self.require("gamma_min", "gamma_max", "steps")
        if self.steps < 1:
            raise ConfigError("steps", "must be at least 1")
        return [float(g) for g in np.linspace(self.gamma_min, self.gamma_max, self.steps)]

    def experiment_config(self, gamma_grid: Optional[Iterable[float]] = None) -> ExperimentConfig:
        """実験設定を作る（mu_hat はグリッド点ごとに置き換えるので仮の値を入れる）"""
        self.require("seed")
        grid = list(gamma_grid) if gamma_grid is not None else self.grid()
        return ExperimentConfig.create(
            spec=self.model_spec(gamma=1.0),
            gamma_grid=grid,
            trials=self.trials,
            master_seed=self.seed,
            method=self.method,
            enumeration_budget=self.enumeration_budget,
        )

    def config_hash(self) -> str:
        payload = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def parse_override(text: str):
    """'key=value' を (key, value) に分ける。値は JSON として読めればその型、読めなければ文字列"""
    if "=" not in text:
        raise ConfigError(None, f"override '{text}' is not key=value")
    key, raw = text.split("=", 1)
    key = key.strip()
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def parse_config(path: Optional[str] = None, overrides: Iterable[str] = ()) -> LabConfig:
    """
    設定ファイルと上書きから検証済みの設定を作る

    Args:
        path (str): 設定ファイルのパス（None の場合は環境変数、なければ空の設定）
        overrides: 'key=value' の並び（後のものが優先）

    Returns:
        LabConfig: 検証済みの設定

    Raises:
        ConfigError: キーの欠落・過剰・型不一致
        IoError: 設定ファイルが読めない場合
    """
    if path is None:
        path = os.environ.get(CONFIG_ENV)

    config_data = {}
    if path:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                config_data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(None, f"invalid JSON in {path}: {e}") from e
        except OSError as e:
            raise IoError(f"cannot read config {path}: {e}") from e
        if not isinstance(config_data, dict):
            raise ConfigError(None, f"{path} must hold one JSON object")

    for text in overrides:
        key, value = parse_override(text)
        if key not in LabConfig.model_fields:
            raise ConfigError(key, "unknown key")
        config_data[key] = value
    return LabConfig.create(**config_data)
