import math
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict

from planted_lab.utils.errors import AlphaOutOfRange, SpecError


# 有限 N での領域判定の定数
REGIME1_LOG_FRACTION = 10.0
REGIME3_EXPONENT = 0.3


class Regime(str, Enum):
    SMALL_K = "regime1"   # (1/h) C(k-1,h-1) = o(log N)
    LOG_K = "regime2"     # (1/h) C(k-1,h-1) / log N -> c
    POLY_K = "regime3"    # k <~ N^alpha


class ThresholdReport(BaseModel):
    """
    厳密復元のしきい値

    gamma_minus 未満では復元不能、gamma_plus（選択された領域の値）超で復元可能。
    3つの領域の値は常に全て報告するので、領域の選択自体は正しさに影響しない。
    """
    model_config = ConfigDict(frozen=True)

    model: str
    size: int
    k: int
    h: int
    gamma_minus: float
    gamma_plus_by_regime: Dict[Regime, float]
    selected_regime: Regime
    gamma_conjectured: Optional[float] = None
    alpha: float
    c: Optional[float] = None

    @property
    def gamma_plus(self) -> float:
        return self.gamma_plus_by_regime[self.selected_regime]


def log_ratio_alpha(k: int, size: int) -> float:
    """k <= size^alpha を満たす最小の alpha = ln k / ln size"""
    return math.log(k) / math.log(size)


def prem_thresholds(M: int, k: int, alpha: Optional[float] = None) -> ThresholdReport:
    """
    k-P-REM のしきい値: gamma_- = 1、gamma_+ = 1 + sqrt(alpha)

    Args:
        M (int): 非バイアス状態数（>= 2）
        k (int): planted 状態数
        alpha (float): 指定しない場合は ln k / ln M を [0,1) に収めて使う

    Raises:
        AlphaOutOfRange: k >= M、または指定 alpha が [0,1) の外
    """
    if M < 2 or k < 1:
        raise SpecError(f"prem thresholds need M >= 2 and k >= 1 (M={M}, k={k})")
    if k >= M:
        raise AlphaOutOfRange(f"k={k} >= M={M} leaves no alpha < 1")
    if alpha is None:
        alpha = min(max(log_ratio_alpha(k, M), 0.0), math.nextafter(1.0, 0.0))
    elif not 0.0 <= alpha < 1.0:
        raise AlphaOutOfRange(f"alpha={alpha} outside [0, 1)")

    gamma_plus = 1.0 + math.sqrt(alpha)
    return ThresholdReport(
        model="k-P-REM" if k > 1 else "1-P-REM",
        size=M, k=k, h=1,
        gamma_minus=1.0,
        gamma_plus_by_regime={Regime.SMALL_K: 1.0, Regime.LOG_K: 1.0, Regime.POLY_K: gamma_plus},
        selected_regime=Regime.POLY_K if alpha > 0 else Regime.SMALL_K,
        gamma_conjectured=1.0 if k == 1 else None,
        alpha=alpha,
    )


def select_regime(N: int, k: int, h: int) -> Regime:
    """
    有限 N での領域選択（漸近的な領域は有限 N では決められないための便宜的な規則）
    """
    load = math.comb(k - 1, h - 1) / h
    if load <= math.log(N) / REGIME1_LOG_FRACTION:
        return Regime.SMALL_K
    if k >= N ** REGIME3_EXPONENT:
        return Regime.POLY_K
    return Regime.LOG_K


def hwsbm_thresholds(N: int, k: int, h: int,
                     alpha: Optional[float] = None, c: Optional[float] = None) -> ThresholdReport:
    """
    2-hWSBM（h=2 なら 2-WSBM）のしきい値

    gamma_- = sqrt(1 / C(k-1,h-1))
    regime1: 2 sqrt((h/2) / C(k-1,h-1))
    regime2: 2 sqrt((1 + ln2 + 1/c) / ln N)   （c = inf なら 1/c = 0）
    regime3: 2 sqrt((1 + ln2) / ((1-alpha) ln N))
    予想値: sqrt(h / C(k-1,h-1))

    Args:
        alpha (float): 指定しない場合は ln k / ln N
        c (float): 指定しない場合は (1/h) C(k-1,h-1) / ln N

    Raises:
        SpecError: 2 <= h <= k <= N-1 を満たさない場合
    """
    if not 2 <= h <= k:
        raise SpecError(f"h={h} outside [2, k={k}]", key="h")
    if k > N - 1:
        raise SpecError(f"k={k} must be at most N-1={N - 1}", key="k")

    log_n = math.log(N)
    binom = math.comb(k - 1, h - 1)
    if alpha is None:
        alpha = log_ratio_alpha(k, N)
    elif not 0.0 < alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha={alpha} outside (0, 1]")
    if c is None:
        c = binom / h / log_n
    elif not c > 0:
        raise SpecError(f"c={c} must be positive", key="c")

    inverse_c = 0.0 if math.isinf(c) else 1.0 / c
    regime3 = math.inf if alpha >= 1.0 else 2.0 * math.sqrt((1.0 + math.log(2)) / ((1.0 - alpha) * log_n))
    return ThresholdReport(
        model="2-WSBM" if h == 2 else "2-hWSBM",
        size=N, k=k, h=h,
        gamma_minus=math.sqrt(1.0 / binom),
        gamma_plus_by_regime={
            Regime.SMALL_K: 2.0 * math.sqrt((h / 2.0) / binom),
            Regime.LOG_K: 2.0 * math.sqrt((1.0 + math.log(2) + inverse_c) / log_n),
            Regime.POLY_K: regime3,
        },
        selected_regime=select_regime(N, k, h),
        gamma_conjectured=math.sqrt(h / binom),
        alpha=alpha,
        c=c,
    )


def table_thresholds(N: int, k: int, h: int) -> ThresholdReport:
    """
    エッジ濃度 h に応じてしきい値を振り分ける

    h = 1 は状態数 M = N の k-P-REM と等価なので prem_thresholds に回す。
    """
    if h == 1:
        return prem_thresholds(N, k)
    if not 2 <= h <= k:
        raise SpecError(f"h={h} outside [1, k={k}]", key="h")
    return hwsbm_thresholds(N, k, h)


class TableRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    h_label: str
    model: str
    h: Optional[int]
    gamma_minus: Optional[float]
    gamma_plus: Optional[float]


def table_rows(N: int, k: int) -> List[TableRow]:
    """
    k = o(log N) 列でのしきい値一覧（h=1, h=2, 2<h<k, h=k の4行）

    h=1 は alpha -> 0 として gamma_- = gamma_+ = 1。
    h=k は C(N,k) 状態の 1-P-REM として自身の正規化で 1, 1。
    2<h<k の代表は h=3（k <= 3 なら該当なし）。
    """
    if not 2 <= k <= N - 1:
        raise SpecError(f"table needs 2 <= k <= N-1 (N={N}, k={k})", key="k")

    rows = [TableRow(h_label="1", model="k-P-REM", h=1, gamma_minus=1.0, gamma_plus=1.0)]

    pair = hwsbm_thresholds(N, k, 2)
    rows.append(TableRow(h_label="2", model="2-WSBM", h=2, gamma_minus=pair.gamma_minus,
                         gamma_plus=pair.gamma_plus_by_regime[Regime.SMALL_K]))

    if k > 3:
        middle = hwsbm_thresholds(N, k, 3)
        rows.append(TableRow(h_label="2<h<k", model="2-hWSBM", h=3, gamma_minus=middle.gamma_minus,
                             gamma_plus=middle.gamma_plus_by_regime[Regime.SMALL_K]))
    else:
        rows.append(TableRow(h_label="2<h<k", model="2-hWSBM", h=None, gamma_minus=None, gamma_plus=None))

    whole = prem_thresholds(math.comb(N, k), 1)
    rows.append(TableRow(h_label="k", model="1-P-REM", h=k, gamma_minus=whole.gamma_minus,
                         gamma_plus=whole.gamma_plus))
    return rows
