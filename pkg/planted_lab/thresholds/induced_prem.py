import math

from pydantic import BaseModel, ConfigDict

from planted_lab.utils.errors import DegenerateCoverage, SpecError


class InducedPrem(BaseModel):
    """
    重なり m の独立被覆から得られる 1-P-REM

    Attributes:
        ell_m: 1状態あたりのハイパーエッジ数 C(k,h) - C(m,h)
        M_m: 被覆の解の数 floor((N-k)/(k-m))
        gamma_m: 誘導 P-REM の SNR gamma sqrt(ell_m ln N / ln M_m)
        m: planted 解との重なり
    """
    model_config = ConfigDict(frozen=True)

    ell_m: int
    M_m: int
    gamma_m: float
    m: int


def reduced_ell(k: int, h: int, m: int) -> int:
    return math.comb(k, h) - math.comb(m, h)


def coverage_size(N: int, k: int, m: int) -> int:
    return (N - k) // (k - m)


def check_overlap(N: int, k: int, h: int, m: int):
    if not 0 <= m <= k - 1:
        raise SpecError(f"overlap m={m} outside [0, k-1={k - 1}]", key="m")
    if not 1 <= h <= k or k > N - 1:
        raise SpecError(f"need 1 <= h <= k <= N-1 (N={N}, k={k}, h={h})")


def induced_prem(N: int, k: int, h: int, m: int, gamma: float) -> InducedPrem:
    """
    重なり m の被覆が誘導する P-REM のパラメータ

    gamma_m は近似 gamma sqrt(ell_m) ではなく ln N / ln M_m を含む厳密な形。

    Raises:
        DegenerateCoverage: M_m < 2 の場合
    """
    check_overlap(N, k, h, m)
    ell = reduced_ell(k, h, m)
    size = coverage_size(N, k, m)
    if size < 2:
        raise DegenerateCoverage(f"M_m={size} < 2 for N={N}, k={k}, m={m}")
    gamma_m = gamma * math.sqrt(ell * math.log(N) / math.log(size))
    return InducedPrem(ell_m=ell, M_m=size, gamma_m=gamma_m, m=m)
