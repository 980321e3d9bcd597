import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Tuple

from planted_lab.utils.logger import get_logger


WORKERS_ENV = "PLANTED_LAB_WORKERS"


def worker_count() -> int:
    """環境変数からワーカープロセス数を取得する（未設定・不正値は1）"""
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """[0, total) を最大 parts 個の連続区間に分割する"""
    parts = max(1, min(parts, total)) if total > 0 else 1
    base, extra = divmod(total, parts)
    chunks = []
    start = 0
    for i in range(parts):
        stop = start + base + (1 if i < extra else 0)
        if stop > start:
            chunks.append((start, stop))
        start = stop
    return chunks


def map_chunks(func: Callable[..., int], total: int, *args, workers: int = None) -> int:
    """
    試行区間ごとに func(*args, start, stop) を実行し、整数結果を合計する

    各区間の結果は試行インデックスだけで決まるため、実行順序に依存しない。

    Args:
        func: トップレベル関数（プロセス間でpickle可能であること）
        total (int): 試行総数
        workers (int): ワーカー数（Noneの場合は環境変数）

    Returns:
        int: 各区間の結果の合計
    """
    if workers is None:
        workers = worker_count()
    chunks = split_range(total, workers * 4 if workers > 1 else 1)
    if workers <= 1 or len(chunks) <= 1:
        return sum(func(*args, start, stop) for start, stop in chunks)

    get_logger().debug(f"worker pool start: workers={workers} chunks={len(chunks)}")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(func, *args, start, stop) for start, stop in chunks]
        return sum(future.result() for future in futures)
