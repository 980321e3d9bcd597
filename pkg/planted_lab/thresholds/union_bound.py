"""有限 N での十分条件と和集合上界。

重なり m ごとの誘導 P-REM に失敗指数を当てはめ、全ての重なりと被覆について
和を取ることで最尤推定の失敗確率を上から抑える。
"""
import math
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from planted_lab.thresholds.asymptotics import failure_exponent
from planted_lab.thresholds.induced_prem import check_overlap, coverage_size, induced_prem, reduced_ell
from planted_lab.thresholds.recovery_thresholds import log_ratio_alpha


class OverlapRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int
    ell_m: int
    M_m: int
    L_m: float
    sufficient_gamma: float


def seed_count_bound(N: int, k: int, m: int) -> float:
    """L_m = C(k,m) C(N-k,k-m) / M_m （重なり m の解を覆うのに必要な被覆数の上界）"""
    return math.comb(k, m) * math.comb(N - k, k - m) / coverage_size(N, k, m)


def sufficient_gamma(N: int, k: int, h: int, m: int, alpha: Optional[float] = None) -> float:
    """
    重なり m に対する有限 N の十分条件

    sqrt( 2/(1-alpha) * ((1 + (1+ln2)/ln N) k - m + alpha) / ell_m * ln M_m / ln N )
    """
    check_overlap(N, k, h, m)
    if alpha is None:
        alpha = log_ratio_alpha(k, N)
    log_n = math.log(N)
    size = coverage_size(N, k, m)
    ell = reduced_ell(k, h, m)
    numerator = (1.0 + (1.0 + math.log(2)) / log_n) * k - m + alpha
    return math.sqrt(2.0 / (1.0 - alpha) * numerator / ell * math.log(size) / log_n)


def finite_size_gamma_plus(N: int, k: int, h: int,
                           alpha: Optional[float] = None) -> Tuple[float, List[OverlapRow]]:
    """
    全ての重なりで十分条件と gamma_m > 2 を同時に満たす最小の gamma

    M_m < 2 の重なりは誘導 P-REM が定義できないので除外する。

    Returns:
        (gamma, 重なりごとの行)
    """
    log_n = math.log(N)
    rows = []
    gamma = 0.0
    for m in range(k):
        size = coverage_size(N, k, m)
        if size < 2:
            continue
        ell = reduced_ell(k, h, m)
        needed = sufficient_gamma(N, k, h, m, alpha)
        rows.append(OverlapRow(m=m, ell_m=ell, M_m=size, L_m=seed_count_bound(N, k, m), sufficient_gamma=needed))
        # gamma_m > 2 を保証する下限
        above_two = 2.0 * math.sqrt(math.log(size) / (ell * log_n))
        gamma = max(gamma, needed, above_two)
    return gamma, rows


def union_bound_failure(N: int, k: int, h: int, gamma: float) -> float:
    """
    失敗確率の主要項の上界 k max_m L_m M_m^{-e(gamma_m)}（[0,1] に丸める）
    """
    worst = 0.0
    for m in range(k):
        if coverage_size(N, k, m) < 2:
            continue
        induced = induced_prem(N, k, h, m, gamma)
        gamma_m = induced.gamma_m
        # 指数が定義されない境界を避ける
        if math.isclose(gamma_m, 1.0, abs_tol=1e-9) or math.isclose(gamma_m, 2.0, abs_tol=1e-9):
            gamma_m += 1e-9
        exponent = failure_exponent(gamma_m)
        worst = max(worst, seed_count_bound(N, k, m) * float(induced.M_m) ** (-exponent))
    return min(1.0, k * worst)
