"""結果の書き出し（CSV・整形テキスト・構造化 JSON）と CSV の読み戻し。

どの形式にもメタデータ（バージョン・設定ハッシュ・シード・解決済みの設定）を埋め込む。
CSV とテキストでは先頭の '# key: value' 行、JSON では metadata オブジェクト。
"""
import io
import json
import sys
from enum import Enum
from typing import Dict, List, Optional

import pandas as pd

from planted_lab.experiments import CURVE_COLUMNS, RecoveryCurve
from planted_lab.thresholds import TableRow
from planted_lab.utils.errors import IoError


class OutputFormat(str, Enum):
    CSV = "csv"
    TEXT = "text"
    STRUCTURED = "structured"


METADATA_PREFIX = "# "


def _metadata_lines(metadata: Dict[str, object]) -> str:
    return "".join(f"{METADATA_PREFIX}{key}: {value}\n" for key, value in metadata.items())


def render(frame: pd.DataFrame, fmt: OutputFormat, metadata: Optional[Dict[str, object]] = None) -> str:
    """
    DataFrame を指定形式の文字列にする

    csv と text ではメタデータを "# key: value" の行として表の前に置く。
    CSV は pandas.read_csv(path, comment="#") でそのまま表として読める。

    Args:
        frame (pd.DataFrame): 出力する表（行がなくてもよい）
        fmt (OutputFormat): csv / text / structured
        metadata (dict): 埋め込むメタデータ

    Returns:
        str: 出力文字列
    """
    metadata = metadata or {}
    fmt = OutputFormat(fmt)
    if fmt == OutputFormat.STRUCTURED:
        records = json.loads(frame.to_json(orient="records"))
        return json.dumps({"metadata": metadata, "rows": records}, ensure_ascii=False, indent=2) + "\n"
    if fmt == OutputFormat.CSV:
        return _metadata_lines(metadata) + frame.to_csv(index=False, lineterminator="\n")
    body = frame.to_string(index=False, na_rep="n/a") if len(frame) else "(no rows)"
    return _metadata_lines(metadata) + body + "\n"


def emit(frame: pd.DataFrame, fmt: OutputFormat, path: Optional[str] = None,
         metadata: Optional[Dict[str, object]] = None):
    """
    表を書き出す（path が None の場合は標準出力）

    Raises:
        IoError: 書き込めない場合
    """
    text = render(frame, fmt, metadata)
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, 'w', encoding='utf-8', newline="") as f:
            f.write(text)
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e


def curve_frame(curve: RecoveryCurve) -> pd.DataFrame:
    return curve.to_frame()[CURVE_COLUMNS]


def table_frame(rows: List[TableRow]) -> pd.DataFrame:
    """しきい値一覧（h=1, h=2, 2<h<k, h=k）の表"""
    return pd.DataFrame(
        [{"h": row.h_label, "model": row.model, "gamma_minus": row.gamma_minus, "gamma_plus": row.gamma_plus}
         for row in rows],
        columns=["h", "model", "gamma_minus", "gamma_plus"],
    )


def read_metadata(text: str) -> Dict[str, str]:
    metadata = {}
    for line in text.splitlines():
        if not line.startswith(METADATA_PREFIX):
            break
        key, _, value = line[len(METADATA_PREFIX):].partition(": ")
        metadata[key] = value
    return metadata


def read_curve_csv(path: str) -> RecoveryCurve:
    """
    emit で書いた曲線の CSV を読み戻す

    Args:
        path (str): CSV ファイルのパス

    Returns:
        RecoveryCurve: メタデータの config_hash と seed を持つ曲線
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e
    metadata = read_metadata(text)
    frame = pd.read_csv(io.StringIO(text), comment="#")
    seed = metadata.get("seed", "")
    return RecoveryCurve.from_frame(frame, config_hash=metadata.get("config_hash", ""),
                                    seed=int(seed) if seed.isdigit() else 0)
