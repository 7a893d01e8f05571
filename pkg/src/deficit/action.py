"""Combinatorial Regge action of equilateral 3-dimensional triangulations.

All values are in natural units.  The mean edge degree is carried as an
exact :class:`fractions.Fraction` and only converted to float at the end.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidPair, NonPositiveMu
from .triangulation import FVector

THETA3 = math.acos(1.0 / 3.0)
MU_STAR = 2.0 * math.pi / THETA3
INV_MU_STAR = THETA3 / (2.0 * math.pi)


def simplex_volume(k, edge_length=1.0):
    """Volume of the regular k-simplex with the given side length."""
    return edge_length ** k * math.sqrt(k + 1) / (math.factorial(k) * 2 ** (k / 2))


def tet_volume(edge_length=1.0):
    return edge_length ** 3 / (6.0 * math.sqrt(2.0))


@dataclass(frozen=True)
class GeometryConstants:
    edge_length: float = 1.0

    @property
    def dihedral_angle(self):
        return THETA3

    @property
    def flat_degree(self):
        return MU_STAR

    @property
    def triangle_area(self):
        return simplex_volume(2, self.edge_length)

    @property
    def tet_volume(self):
        return tet_volume(self.edge_length)


@dataclass(frozen=True)
class ActionValue:
    total: float
    per_volume: float
    volume: float


def _check_length(edge_length):
    if not edge_length > 0:
        raise ValueError(f"edge length must be positive, got {edge_length!r}")


def _as_mu(mu):
    if isinstance(mu, float):
        if not mu > 0:
            raise NonPositiveMu(f"mean edge degree must be positive, got {mu!r}")
        return mu
    mu = Fraction(mu)
    if mu <= 0:
        raise NonPositiveMu(f"mean edge degree must be positive, got {mu}")
    return mu


def _inv(mu):
    return 1.0 / mu if isinstance(mu, float) else float(1 / mu)


def regge_action_direct(T, edge_length=1.0):
    """Sum of deficit angles over edges, times l/(16 pi)."""
    _check_length(edge_length)
    deficits = [2.0 * math.pi - THETA3 * int(d) for d in T.skeleton.edge_degree]
    total = edge_length / (16.0 * math.pi) * math.fsum(deficits)
    volume = tet_volume(edge_length) * T.size
    return ActionValue(total=total, per_volume=total / volume, volume=volume)


def regge_action_mu(K, mu, edge_length=1.0):
    """(3l/4) K (1/mu - 1/mu*)."""
    _check_length(edge_length)
    if K < 1:
        raise ValueError("K must be at least 1")
    mu = _as_mu(mu)
    return 0.75 * edge_length * K * (_inv(mu) - INV_MU_STAR)


def normalized_action(mu, edge_length=1.0):
    """Action per PL volume; independent of the number of tetrahedra."""
    _check_length(edge_length)
    mu = _as_mu(mu)
    return 0.75 * edge_length * (_inv(mu) - INV_MU_STAR) / tet_volume(edge_length)


def f_vector_from_K_mu(K, mu):
    mu = Fraction(mu)
    if K < 1 or mu <= 0:
        raise InvalidPair(f"need K >= 1 and mu > 0, got K={K}, mu={mu}")
    n1 = 6 * K / mu
    if n1.denominator != 1 or n1 <= 0:
        raise InvalidPair(f"6K/mu = {n1} is not a positive integer")
    n1 = int(n1)
    return FVector(n1 - K, n1, 2 * K, K)


def action_gap(K, edge_length=1.0):
    """Spacing of adjacent normalized action levels at fixed K."""
    _check_length(edge_length)
    if K < 1:
        raise ValueError("K must be at least 1")
    return 0.75 * math.sqrt(2.0) / (edge_length ** 2 * K)


def mu_for_action(x, edge_length=1.0):
    """Mean edge degree (as float) at which the normalized action equals x."""
    inv = x * tet_volume(edge_length) / (0.75 * edge_length) + INV_MU_STAR
    if inv <= 0:
        raise NonPositiveMu(f"no positive mean edge degree has normalized action {x}")
    return 1.0 / inv
