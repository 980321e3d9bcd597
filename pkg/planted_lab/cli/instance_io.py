import hashlib
import json
from typing import Optional

from planted_lab.models import Instance, ModelSpec, sample_instance
from planted_lab.utils.errors import ConfigError, IoError


FORMAT_VERSION = 1
REQUIRED_FIELDS = ("format_version", "family", "mu_hat", "sigma_hat", "size", "k", "h", "seed", "planted")


def spec_hash(instance: Instance) -> str:
    """設定ファイルを経由しないインスタンスの config_hash（仕様とシードから決まる）"""
    payload = json.dumps({**instance.spec.model_dump(mode="json"), "seed": instance.seed},
                         sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def instance_record(instance: Instance, include_weights: bool = True, config_hash: Optional[str] = None) -> dict:
    from planted_lab import __version__
    spec = instance.spec
    record = {
        "format_version": FORMAT_VERSION,
        "version": __version__,
        "config_hash": config_hash or spec_hash(instance),
        "family": spec.family.value,
        "mu_hat": spec.mu_hat,
        "sigma_hat": spec.sigma_hat,
        "size": spec.size,
        "k": spec.k,
        "h": spec.h,
        "seed": instance.seed,
        "planted": list(instance.planted),
    }
    if instance.null_model:
        record["null_model"] = True
    if include_weights:
        record["weights"] = instance.weights.tolist()
    return record


def write_instance(instance: Instance, path: Optional[str] = None, include_weights: bool = True,
                   config_hash: Optional[str] = None) -> str:
    """
    インスタンスを JSON で書き出す

    Args:
        instance (Instance): 書き出すインスタンス
        path (str): 出力先（None の場合は文字列を返すだけ）
        include_weights (bool): False の場合は (spec, seed, planted) だけを書き、読み込み時に再サンプルする
        config_hash (str): 記録する設定ハッシュ（None の場合は spec_hash）

    Returns:
        str: JSON 文字列
    """
    text = json.dumps(instance_record(instance, include_weights, config_hash), indent=2)
    if path is not None:
        try:
            with open(path, 'w', encoding='utf-8') as f:
                f.write(text + "\n")
        except OSError as e:
            raise IoError(f"cannot write {path}: {e}") from e
    return text


def read_instance(path: str) -> Instance:
    """
    JSON からインスタンスを読み込む

    weights がない場合は (spec, seed, planted) から再サンプルする。
    version と config_hash は来歴の記録なので読み込みには使わない。

    Raises:
        IoError: ファイルが読めない・JSON として壊れている場合
        ConfigError: フィールドの欠落・未知の形式バージョン
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            record = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise IoError(f"cannot read instance {path}: {e}") from e

    for key in REQUIRED_FIELDS:
        if key not in record:
            raise ConfigError(key, "missing in instance file")
    if record["format_version"] != FORMAT_VERSION:
        raise ConfigError("format_version", f"unsupported version {record['format_version']}")

    spec = ModelSpec.create(family=record["family"], mu_hat=record["mu_hat"], sigma_hat=record["sigma_hat"],
                            size=record["size"], k=record["k"], h=record["h"])
    null_model = bool(record.get("null_model", False))
    if "weights" in record:
        return Instance(spec=spec, weights=record["weights"], planted=record["planted"],
                        seed=int(record["seed"]), null_model=null_model)
    return sample_instance(spec, int(record["seed"]), planted=record["planted"], null_model=null_model)
