"""カウンタベースで分割可能な乱数ストリーム。

stream = f(master_seed, purpose, counters...) の形で生成し、
スレッド数や評価順序に依存せず同じ乱数列を再現する。
"""
from enum import IntEnum

import numpy as np

from planted_lab.utils.errors import SpecError


MAX_SEED = 2 ** 64 - 1


class Purpose(IntEnum):
    SAMPLE = 1
    PLANT = 2
    TRIAL = 3
    FTG = 4
    REDUCTION = 5


def check_seed(seed: int) -> int:
    """64bit 符号なし整数でなければ SpecError（key="seed"）"""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) <= MAX_SEED:
        raise SpecError(f"seed must be an integer in [0, 2**64), got {seed!r}", key="seed")
    return int(seed)


def stream(master_seed: int, purpose: Purpose, *counters: int) -> np.random.Generator:
    """
    (master_seed, purpose, counters) から独立な Philox ストリームを作る

    Args:
        master_seed (int): 64bit 符号なし整数のシード
        purpose (Purpose): 用途タグ
        *counters (int): グリッド番号・試行番号などのカウンタ

    Returns:
        np.random.Generator: 乱数生成器
    """
    sequence = np.random.SeedSequence(
        entropy=int(master_seed), spawn_key=(int(purpose), *(int(c) for c in counters)))
    return np.random.Generator(np.random.Philox(sequence))


def derive_seed(master_seed: int, *counters: int) -> int:
    """試行ごとの 64bit シードを導出する（Instance に記録して単独で再生できるようにする）"""
    sequence = np.random.SeedSequence(
        entropy=int(master_seed), spawn_key=(int(Purpose.TRIAL), *(int(c) for c in counters)))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
