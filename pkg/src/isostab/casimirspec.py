"""Composite Casimir eigenvalue of the Gauss-image metric.

The four-case composition lemma fixes the coefficients applied to the stage
Casimirs C_{K/K0}, C_{K1/K0}, C_{K2/K0} (all relative to the pair's
Ad-invariant inner product); each family also carries the same formula
re-expressed against its per-stage inner products, as printed in the
corresponding section.  Both routes must agree, and both must agree with the
spectrum of the explicitly assembled operator."""

from fractions import Fraction

# coefficients (a, a1, a2) with C_L = (a C - a1 C1 - a2 C2) / gamma0^2
COMPOSITION = {
    "A1": (Fraction(1), Fraction(0), Fraction(0)),
    "A1xA1": (Fraction(1), Fraction(0), Fraction(0)),
    "A2": (Fraction(1), Fraction(0), Fraction(0)),
    "G2": (Fraction(3), Fraction(2), Fraction(0)),
    "B2": (Fraction(2), Fraction(1), Fraction(0)),
    "BC2": (Fraction(4), Fraction(1), Fraction(2)),
}


class CompositionRule:
    """Composition coefficients for one restricted-root type."""

    def __init__(self, pair_type, gamma0_sq):
        if pair_type not in COMPOSITION:
            raise ValueError("unknown pair type %r" % pair_type)
        self.pair_type = pair_type
        self.gamma0_sq = Fraction(gamma0_sq)
        self.coefficients = COMPOSITION[pair_type]


class ChainEigenvalues:
    """Stage eigenvalues -c >= 0 relative to the pair inner product;
    stages absent from the chain stay None."""

    def __init__(self, c_K, c_K1=None, c_K2=None):
        self.c_K = Fraction(c_K)
        self.c_K1 = None if c_K1 is None else Fraction(c_K1)
        self.c_K2 = None if c_K2 is None else Fraction(c_K2)


def compose_cL(rule, chain):
    """-c_L from the composition lemma; raises on chain-shape mismatch."""
    a, a1, a2 = rule.coefficients
    needs_k1 = a1 != 0
    needs_k2 = a2 != 0
    if needs_k1 != (chain.c_K1 is not None):
        raise ValueError("chain shape does not match rule (K1 stage)")
    if needs_k2 != (chain.c_K2 is not None):
        raise ValueError("chain shape does not match rule (K2 stage)")
    val = a * chain.c_K
    if needs_k1:
        val -= a1 * chain.c_K1
    if needs_k2:
        val -= a2 * chain.c_K2
    return val / rule.gamma0_sq


def stage_coefficients(rule, stage_scales):
    """K-level coefficients (b, b1, b2) for stage eigenvalues measured
    against per-stage forms with <,>_u = s_i * form_i:
        -c_L = b (-c_K) - b1 (-c_{K1}) - b2 (-c_{K2}).
    """
    a, a1, a2 = rule.coefficients
    sK, sK1, sK2 = stage_scales
    b = a / (Fraction(sK) * rule.gamma0_sq)
    b1 = a1 / (Fraction(sK1) * rule.gamma0_sq) if a1 else Fraction(0)
    b2 = a2 / (Fraction(sK2) * rule.gamma0_sq) if a2 else Fraction(0)
    return b, b1, b2


def family_cL(b_coeffs, cK, cK1=None, cK2=None):
    """-c_L from the family-level closed form with K-level coefficients."""
    b, b1, b2 = b_coeffs
    val = b * Fraction(cK)
    if b1:
        if cK1 is None:
            raise ValueError("missing K1 stage eigenvalue")
        val -= b1 * Fraction(cK1)
    if b2:
        if cK2 is None:
            raise ValueError("missing K2 stage eigenvalue")
        val -= b2 * Fraction(cK2)
    return val


def enumeration_prune_factor(rule, sK):
    """alpha with -c_{K-level}(Lambda) <= alpha * n for every eigenvalue
    -c_L <= n, from C_L >= ((a - a1 - a2)/gamma0^2) C_{K/K0,u}."""
    a, a1, a2 = rule.coefficients
    gap = a - a1 - a2
    if gap <= 0:
        raise ValueError("composition coefficients give no prune")
    return rule.gamma0_sq * Fraction(sK) / gap
