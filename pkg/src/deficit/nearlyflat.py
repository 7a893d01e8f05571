"""Nearly-flat ensemble: state count, expected action and the emergent
cosmological constant.

Cosmological magnitudes are assembled from base-10 logarithms so every
intermediate stays comfortably inside double range.
"""
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidC

ASYMPTOTIC = "asymptotic"
EXACT = "exact"

# Stated order of magnitude for the present-day value, kept for comparison only.
STATED_LAMBDA_LOG10 = -123.0


def _positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


def natural_volume_log10(volume_m3, planck_length_m):
    _positive("volume", volume_m3)
    _positive("planck length", planck_length_m)
    return math.log10(volume_m3) - 3.0 * math.log10(planck_length_m)


def state_count(volume, planck_length_m=None):
    """Number of action levels, the cube root of the volume in Planck cells.

    With ``planck_length_m`` the volume is taken in cubic metres.
    """
    if planck_length_m is None:
        _positive("volume", volume)
        return volume ** (1.0 / 3.0)
    return 10.0 ** (natural_volume_log10(volume, planck_length_m) / 3.0)


def geometric_lemma_lhs(r, N):
    """r**N * sum(n * r**n for n in -N..N), summed directly.

    Rewritten as sum((m - N) * r**m for m in 0..2N) so no power of r exceeds 1.
    """
    if not 0 < r < 1:
        raise ValueError(f"r must lie in (0, 1), got {r!r}")
    N = int(N)
    if N < 0:
        raise ValueError("N must be nonnegative")
    m = np.arange(2 * N + 1, dtype=np.float64)
    terms = (m - N) * np.exp(m * math.log(r))
    return math.fsum(terms.tolist())


def _mean_index(M, L):
    """Mean of m under weights exp(m L), m = 0..M, for L < 0."""
    n = M + 1
    if abs(n * L) < 1e-3:
        # cumulant series of the discrete uniform distribution
        k2 = (n * n - 1) / 12.0
        k4 = -(n ** 4 - 1) / 120.0
        return M / 2.0 + k2 * L + k4 * L ** 3 / 6.0
    # written with exp of nonpositive arguments only, so nothing overflows
    return math.exp(L) / -math.expm1(L) - n * math.exp(n * L) / -math.expm1(n * L)


def expected_action_exact(N, delta_A, C):
    """Weighted mean of n * delta_A over n = -N..N with weights C**n."""
    if not 0 < C < 1:
        raise InvalidC(f"C must lie in (0, 1), got {C!r}")
    N = int(N)
    if N < 1:
        raise ValueError("N must be at least 1")
    mean = _mean_index(2 * N, math.log(C))
    return delta_A * (mean - N)


def expected_action_asymptotic(N, delta_A):
    if N < 1:
        raise ValueError("N must be at least 1")
    return -N * delta_A


@dataclass(frozen=True)
class CosmologyResult:
    planck_length_m: float
    volume_m3: float
    volume_natural: float
    N: float
    delta_A: float
    expected_action: float
    lambda_: float
    lambda_log10: float
    alpha_G: float
    model: str = ASYMPTOTIC
    C: float = None

    def mantissa_exponent(self):
        e = math.floor(self.lambda_log10)
        return 10.0 ** (self.lambda_log10 - e), e

    def report(self):
        """Dictionary in the published JSON layout."""
        d = asdict(self)
        d["lambda"] = d.pop("lambda_")
        if self.C is None:
            d.pop("C")
        mant, exp = self.mantissa_exponent()
        d["lambda_mantissa"] = mant
        d["lambda_exponent"] = exp
        d["stated_lambda_log10"] = STATED_LAMBDA_LOG10
        d["orders_below_stated"] = STATED_LAMBDA_LOG10 - self.lambda_log10
        keys = ["planck_length_m", "volume_m3", "volume_natural", "N", "delta_A",
                "expected_action", "lambda", "lambda_log10", "alpha_G", "model"]
        if "C" in d:
            keys.append("C")
        keys += ["lambda_mantissa", "lambda_exponent", "stated_lambda_log10", "orders_below_stated"]
        return {k: d[k] for k in keys}


def cosmological_constant(planck_length_m, volume_m3, model=ASYMPTOTIC, C=None, N=None):
    """Emergent cosmological constant for a universe of the given size.

    The asymptotic model uses <A> = -N dA; the exact model sums the finite
    ensemble with degeneracy ratio ``C`` and an integer ``N`` (by default the
    state count rounded to the nearest integer).
    """
    lv = natural_volume_log10(volume_m3, planck_length_m)
    log_N = lv / 3.0
    log_dA = -lv - math.log10(8.0)
    n_real = 10.0 ** log_N
    delta_A = 10.0 ** log_dA
    if model == ASYMPTOTIC:
        if C is not None or N is not None:
            raise ValueError("C and N are only used by the exact model")
        expected = -(10.0 ** (log_N + log_dA))
        n_out = n_real
    elif model == EXACT:
        if C is None:
            raise InvalidC("the exact model needs C")
        n_int = round(n_real) if N is None else int(N)
        expected = expected_action_exact(n_int, delta_A, C)
        n_out = float(n_int)
    else:
        raise ValueError(f"unknown model {model!r}")
    lam = -expected / 2.0
    lam_log10 = math.log10(lam) if lam > 0 else float("nan")
    alpha = 10.0 ** (2.0 * lv / 3.0 + lam_log10) if lam > 0 else lam * 10.0 ** (2.0 * lv / 3.0)
    return CosmologyResult(
        planck_length_m=float(planck_length_m), volume_m3=float(volume_m3),
        volume_natural=10.0 ** lv, N=n_out, delta_A=delta_A, expected_action=expected,
        lambda_=lam, lambda_log10=lam_log10, alpha_G=alpha, model=model,
        C=None if C is None else float(C))


def lambda_history(volumes, planck_length_m=1.0):
    """Cosmological constant for each volume in a sequence (asymptotic model)."""
    return [cosmological_constant(planck_length_m, v).lambda_ for v in volumes]
