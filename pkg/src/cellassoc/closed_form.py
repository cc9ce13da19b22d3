"""Closed-form zero-forcing puDoF values, as exact rationals."""

from __future__ import annotations

from fractions import Fraction

PuDoF = Fraction

# Interference-alignment uplink value for the small-budget range; annotation only.
IA_UPLINK_PUDOF = Fraction(1, 2)


class DomainError(ValueError):
    pass


def _half_up(n: int) -> int:
    return (n + 1) // 2


def _check(L: int, Nc: int) -> None:
    if L < 1 or Nc < 1:
        raise DomainError(f"need L >= 1 and Nc >= 1, got L={L}, Nc={Nc}")


def fmt(x: Fraction | int) -> str:
    """Render as ``"p/q"``, keeping the denominator even when it is 1."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    p, _, q = text.partition("/")
    return Fraction(int(p), int(q) if q else 1)


def pudof_downlink_zf(L: int, Nc: int) -> Fraction:
    _check(L, Nc)
    return Fraction(2 * Nc, 2 * Nc + L)


def uplink_regime(L: int, Nc: int) -> str:
    """Which uplink construction applies: ``full``, ``block``, ``split`` or ``gap``.

    ``block`` is the (L+2)-wide subnetwork scheme, ``split`` the
    (2Nc+L)-wide two-group scheme. ``gap`` covers odd L with Nc = (L-1)/2,
    where neither stated range holds.
    """
    _check(L, Nc)
    if Nc >= L + 1:
        return "full"
    if 2 * Nc >= L:
        return "block"
    if 2 * Nc <= L - 2:
        return "split"
    return "gap"


def pudof_uplink_zf_inner(L: int, Nc: int) -> Fraction:
    block = Fraction(Nc + 1, L + 2)
    split = Fraction(2 * Nc, 2 * Nc + L)
    regime = uplink_regime(L, Nc)
    if regime == "full":
        return Fraction(1)
    if regime == "block":
        return block
    if regime == "split":
        return split
    return max(block, split)


def pudof_uplink_zf_exact(L: int, Nc: int) -> Fraction:
    """Optimal zero-forcing uplink puDoF; only defined for ceil(L/2) <= Nc <= L."""
    _check(L, Nc)
    if not _half_up(L) <= Nc <= L:
        raise DomainError(f"exact uplink value only known for ceil(L/2) <= Nc <= L, got L={L}, Nc={Nc}")
    return Fraction(Nc + 1, L + 2)


def gamma_d(L: int, Nc: int) -> Fraction:
    """Downlink share of the joint scheme when Nc >= L+1."""
    _check(L, Nc)
    if Nc <= L:
        raise DomainError(f"gamma_d needs Nc >= L+1, got L={L}, Nc={Nc}")
    if Nc < 2 * L:
        delta = (L + 1) % 2
        return Fraction(_half_up(L) + delta + Nc - (L + 1), Nc)
    reduced = Nc - L
    return Fraction(2 * reduced, 2 * reduced + L)


def pudof_joint_zf_inner(L: int, Nc: int) -> Fraction:
    _check(L, Nc)
    if Nc >= L + 1:
        return (1 + gamma_d(L, Nc)) / 2
    return Fraction(2 * Nc, 2 * Nc + L)


def formula(mode: str, L: int, Nc: int) -> Fraction:
    return {
        "down": pudof_downlink_zf,
        "up": pudof_uplink_zf_inner,
        "joint": pudof_joint_zf_inner,
    }[mode](L, Nc)
