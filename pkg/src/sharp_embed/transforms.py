"""Numerical verification of the substitution chain as norm identities.

Each reduction step used to evaluate the sharp constants -- the power
substitution u = r^a f, the rescale s = r^k, the inversion
g(r) = r^{-2} h(1/r), and the logarithmic change to the line -- is checked
here as an exact identity between two independently computed integrals.
The composed chain (``proof_replay``) maps a weighted-quotient trial
function all the way to a one-dimensional quotient trial function and
verifies that the product of the two quotients equals the closed-form
factor connecting them; it is the strongest end-to-end consistency test
the construction affords.

Transformed profiles are ``CallableProfile`` wrappers whose tail exponents
are propagated analytically, so the quadrature layer keeps exact
singularity information through the whole chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import hardy_coefficient
from .errors import DomainError
from .functionals import (
    _log_abs,
    _power_integrand,
    _radial_weighted_integral,
    _TailedPrimitive,
    bliss_quotient,
    ckn_quotient,
    weighted_grad_energy,
)
from .profiles import CallableProfile, PowerCKN, RadialProfile
from .quad import (
    CumulativePrimitive,
    DecayHint,
    QuadratureSpec,
    integrate_halfline,
    integrate_interval,
    integrate_line,
)
from .specfn import surface_area

__all__ = [
    "TransformCheck",
    "power_shifted",
    "rescaled",
    "deriv_profile",
    "inverted",
    "line_profile_from_halfline",
    "check_power_substitution",
    "check_rescale",
    "check_inversion",
    "check_young_chain",
    "proof_replay",
]


@dataclass(frozen=True)
class TransformCheck:
    lhs: float
    rhs: float
    identity_name: str
    rel_gap: float
    applicable: bool = True
    note: str = ""

    def to_json(self) -> dict:
        return {
            "identity": self.identity_name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "rel_gap": self.rel_gap,
            "applicable": self.applicable,
            "note": self.note,
        }


def _gap(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(abs(lhs), 1e-300)


# --------------------------------------------------------------------------
# Profile wrappers with analytic tail propagation
# --------------------------------------------------------------------------


def power_shifted(f: RadialProfile, a: float) -> CallableProfile:
    """u with u(r) = r^a f(r)."""
    zp = a + f.zero_power
    ip = None if f.inf_power is None else a + f.inf_power
    if isinstance(f, PowerCKN) and zp == 0.0:
        dzp = f.k - 1.0
    elif zp == 0.0:
        dzp = 0.0
    else:
        dzp = zp - 1.0

    def value_fn(r):
        return np.exp(a * np.log(r) + _log_abs(f.eval(r))) * np.sign(f.eval(r))

    def deriv_fn(r):
        return a * r ** (a - 1.0) * f.eval(r) + r**a * f.deriv(r)

    return CallableProfile(
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        zero_power_=zp,
        inf_power_=ip,
        inf_exp_rate_=f.inf_exp_rate,
        deriv_zero_power_=dzp,
        deriv_inf_power_=None if ip is None else ip - 1.0,
        breakpoints=f.quad_breakpoints(),
        label=f"r^{a:g} * {type(f).__name__}",
    )


def rescaled(u: RadialProfile, k: float) -> CallableProfile:
    """u-tilde with u-tilde(s) = u(s^{1/k})."""
    if not (k > 0.0):
        raise DomainError(f"rescale exponent must be positive, got {k!r}")
    inv_k = 1.0 / k
    zp = u.zero_power * inv_k
    ip = None if u.inf_power is None else u.inf_power * inv_k
    d0 = u.deriv_zero_power

    def value_fn(s):
        return u.eval(np.exp(inv_k * np.log(s)))

    def deriv_fn(s):
        r = np.exp(inv_k * np.log(s))
        return u.deriv(r) * inv_k * r / s

    dip = None
    if u.deriv_inf_power is not None:
        dip = (u.deriv_inf_power + 1.0) * inv_k - 1.0
    return CallableProfile(
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        zero_power_=zp,
        inf_power_=ip,
        deriv_zero_power_=(d0 + 1.0) * inv_k - 1.0,
        deriv_inf_power_=dip,
        breakpoints=tuple(b**k for b in u.quad_breakpoints()),
        label=f"rescale[{k:g}]",
    )


def deriv_profile(u: RadialProfile) -> CallableProfile:
    """The derivative of u as a profile in its own right."""
    return CallableProfile(
        value_fn=u.deriv,
        zero_power_=u.deriv_zero_power,
        inf_power_=u.deriv_inf_power,
        inf_exp_rate_=u.inf_exp_rate,
        breakpoints=u.quad_breakpoints(),
        label="deriv",
    )


def inverted(h: RadialProfile) -> CallableProfile:
    """g with g(r) = r^{-2} h(1/r); an exact involution."""
    if h.inf_power is None:
        raise DomainError("inversion needs algebraic tails")

    def value_fn(r):
        return h.eval(1.0 / r) / r**2

    def deriv_fn(r):
        rr = 1.0 / r
        return -2.0 * h.eval(rr) / r**3 - h.deriv(rr) / r**4

    return CallableProfile(
        value_fn=value_fn,
        deriv_fn=deriv_fn if _has_deriv(h) else None,
        zero_power_=-(h.inf_power + 2.0),
        inf_power_=-(h.zero_power + 2.0),
        breakpoints=tuple(
            sorted(1.0 / b for b in h.quad_breakpoints() if b > 0.0)
        ),
        label="inverted",
    )


def _has_deriv(p: RadialProfile) -> bool:
    if isinstance(p, CallableProfile):
        return p.deriv_fn is not None
    return True


def line_profile_from_halfline(g: RadialProfile, p: float) -> CallableProfile:
    """h-tilde(x) = g(e^x) e^{x/p}: the measure-preserving move to the line.

    || h-tilde ||_{L^p(R)} = || g ||_{L^p(0, inf)} exactly.
    """
    e0 = g.zero_power
    einf = g.inf_power
    if einf is None:
        raise DomainError("line substitution needs algebraic tails")
    rate = min(e0 + 1.0 / p, -(einf + 1.0 / p))
    if rate <= 0.0:
        raise DomainError("profile leaves the line representative non-decaying")

    def value_fn(x):
        t = np.exp(x)
        return g.eval(t) * np.exp(x / p)

    return CallableProfile(
        value_fn=value_fn,
        inf_exp_rate_=rate,
        line=True,
        breakpoints=tuple(
            math.log(b) for b in g.quad_breakpoints() if b > 0.0
        ),
        label="line-rep",
    )


# --------------------------------------------------------------------------
# Identity checks
# --------------------------------------------------------------------------


def check_power_substitution(
    f: RadialProfile, n: int, a: float, q: float, *, rel_tol: float = 1e-11
) -> TransformCheck:
    """E(f) - a(n-2-a) H(f) against omega int r^{n-1-2a} (u')^2, u = r^a f.

    Admissibility (the boundary term of the integration by parts) is probed
    numerically: u(r)^2 r^{n-2-2a} must decrease towards 0 over
    r = 1e-4 -> 1e-6; profiles failing it are reported non-applicable.
    """
    name = "power-substitution"
    u = power_shifted(f, a)
    b1, b2 = (
        float(u.eval(1e-4) ** 2 * 1e-4 ** (n - 2.0 - 2.0 * a)),
        float(u.eval(1e-6) ** 2 * 1e-6 ** (n - 2.0 - 2.0 * a)),
    )
    if b2 > 0.9 * b1 + 1e-280:
        return TransformCheck(
            lhs=math.nan,
            rhs=math.nan,
            identity_name=name,
            rel_gap=math.inf,
            applicable=False,
            note=f"boundary term u^2 r^(n-2-2a) not vanishing: {b1:g} -> {b2:g}",
        )
    omega = surface_area(n)
    grad = _radial_weighted_integral(
        f, n - 1.0, 2.0, use_deriv=True, rel_tol=rel_tol, name="grad"
    )
    hardy = _radial_weighted_integral(f, n - 3.0, 2.0, rel_tol=rel_tol, name="hardy")
    lhs = omega * (grad.value - hardy_coefficient(n, a) * hardy.value)
    rhs = weighted_grad_energy(u, n, 2.0, a, rel_tol=rel_tol)
    return TransformCheck(lhs, rhs, name, _gap(lhs, rhs))


def check_rescale(
    u: RadialProfile, k: float, q: float, *, rel_tol: float = 1e-11
) -> TransformCheck:
    """int r^{k+1} (u')^2 dr = k int s^2 (du/ds)^2 ds under s = r^k, plus the
    companion norm identity int u^q r^{(q/2)k - 1} dr = (1/k) int u^q
    s^{q/2 - 1} ds; the reported gap is the worse of the two."""
    ut = rescaled(u, k)
    lhs_e = _radial_weighted_integral(
        u, k + 1.0, 2.0, use_deriv=True, rel_tol=rel_tol, name="energy(r)"
    ).value
    rhs_e = k * _radial_weighted_integral(
        ut, 2.0, 2.0, use_deriv=True, rel_tol=rel_tol, name="energy(s)"
    ).value
    lhs_n = _radial_weighted_integral(
        u, (q / 2.0) * k - 1.0, q, rel_tol=rel_tol, name="norm(r)"
    ).value
    rhs_n = (1.0 / k) * _radial_weighted_integral(
        ut, q / 2.0 - 1.0, q, rel_tol=rel_tol, name="norm(s)"
    ).value
    gap = max(_gap(lhs_e, rhs_e), _gap(lhs_n, rhs_n))
    return TransformCheck(
        lhs_e,
        rhs_e,
        "rescale",
        gap,
        note=f"norm identity: {lhs_n:.15g} vs {rhs_n:.15g}",
    )


def check_inversion(h: RadialProfile, *, rel_tol: float = 1e-12) -> TransformCheck:
    """int r^2 h^2 = int g^2 for g = r^{-2} h(1/r), plus the running-integral
    correspondence int_r^inf h = int_0^{1/r} g at sample radii."""
    g = inverted(h)
    lhs = _radial_weighted_integral(
        h, 2.0, 2.0, rel_tol=rel_tol, name="r^2 h^2"
    ).value
    rhs = _radial_weighted_integral(g, 0.0, 2.0, rel_tol=rel_tol, name="g^2").value
    gap = _gap(lhs, rhs)
    # companion: running integrals agree at a few radii
    prim_g = _TailedPrimitive(
        g.eval, g.zero_power, g.inf_power, rel_tol=1e-12,
        breakpoints=g.quad_breakpoints(),
    )
    notes = []
    for r0 in (0.5, 1.0, 2.0):
        tail_h = integrate_halfline(
            lambda t: h.eval(r0 + t),
            QuadratureSpec(
                rel_tol=1e-12,
                decay_hint=DecayHint.algebraic(-h.inf_power)
                if h.inf_power is not None
                else DecayHint.exponential(),
            ),
        ).value
        head_g = prim_g(1.0 / r0)
        gap = max(gap, _gap(tail_h, head_g))
        notes.append(f"{tail_h:.12g}~{head_g:.12g}")
    return TransformCheck(
        lhs, rhs, "inversion", gap, note="running integrals " + ", ".join(notes)
    )


def check_young_chain(
    g: RadialProfile, p: float, *, rel_tol: float = 1e-10
) -> TransformCheck:
    """The logarithmic substitution chain for the one-dimensional q = 2 case.

    Verifies (i) int_0^inf |g|^p dt = int_R |h|^p dx for the line
    representative h(x) = g(e^x) e^{x/p}, and (ii) the weighted running
    integral int_0^inf |int_0^s g|^2 s^{r-2} ds equals the one-sided
    convolution square int_R |int_{-inf}^x h(y) e^{-(x-y)/p'} dy|^2 dx.
    """
    if not (1.0 < p < 2.0):
        raise DomainError(f"need 1 < p < 2, got {p!r}")
    pp = p / (p - 1.0)
    r_exp = 2.0 / p - 1.0
    h = line_profile_from_halfline(g, p)

    lhs_p = _radial_weighted_integral(g, 0.0, p, rel_tol=rel_tol, name="|g|^p").value
    rhs_p = integrate_line(
        _power_integrand(h.eval, 0.0, p),
        QuadratureSpec(rel_tol=rel_tol, breakpoints=h.quad_breakpoints()),
    ).value
    gap = _gap(lhs_p, rhs_p)

    prim = _TailedPrimitive(
        g.eval, g.zero_power, g.inf_power, rel_tol=1e-12,
        breakpoints=g.quad_breakpoints(),
    )
    sigma_out = 2.0 * (g.zero_power + 1.0) + r_exp - 2.0
    g_growth = g.inf_power + 1.0 if g.inf_power > -1.0 else 0.0
    rate_out = -(2.0 * g_growth + r_exp - 2.0)
    lhs_w = integrate_halfline(
        _power_integrand(prim, r_exp - 2.0, 2.0),
        QuadratureSpec(
            rel_tol=rel_tol,
            singularity_exponent_at_zero=sigma_out,
            decay_hint=DecayHint.algebraic(rate_out),
            breakpoints=g.quad_breakpoints(),
        ),
    ).value

    # W(x) = int_{-inf}^x h(y) e^{-(x-y)/p'} dy = e^{-x/p'} C(x) with C the
    # running integral of n(y) = h(y) e^{y/p'}; |W|^2 decays like
    # e^{2x(e0 + 1/p)} at -inf; at +inf like e^{-2x/p'} when C converges,
    # e^{2x(einf + 1/p)} when it keeps growing.
    e0, einf = g.zero_power, g.inf_power
    rate_minus = 2.0 * (e0 + 1.0 / p)
    rate_plus = 2.0 * min(1.0 / pp, -(einf + 1.0 / p))
    window = 38.0 / min(rate_minus, rate_plus, 1.0) + max(
        (abs(b) for b in h.quad_breakpoints()), default=0.0
    )

    def n_int(y):
        return h.eval(y) * np.exp(y / pp)

    head = integrate_halfline(
        lambda t: n_int(-window - t),
        QuadratureSpec(rel_tol=1e-11, abs_tol=1e-280),
    ).value
    cum = CumulativePrimitive(
        n_int,
        -window,
        window,
        QuadratureSpec(
            rel_tol=1e-11,
            abs_tol=1e-280,
            breakpoints=tuple(
                b for b in h.quad_breakpoints() if -window < b < window
            ),
        ),
        offset=head,
    )

    def w_sq(x):
        return (np.exp(-np.asarray(x) / pp) * cum(x)) ** 2

    rhs_w = integrate_interval(
        w_sq,
        -window,
        window,
        QuadratureSpec(
            rel_tol=max(rel_tol, 1e-10),
            breakpoints=(*h.quad_breakpoints(), 0.0),
        ),
    ).value
    gap = max(gap, _gap(lhs_w, rhs_w))
    return TransformCheck(
        lhs_w,
        rhs_w,
        "young-chain",
        gap,
        note=f"measure identity: {lhs_p:.15g} vs {rhs_p:.15g}",
    )


# --------------------------------------------------------------------------
# End-to-end replay
# --------------------------------------------------------------------------


def proof_replay(
    f: RadialProfile, n: int, q: float, a: float, *, rel_tol: float = 1e-10
) -> TransformCheck:
    """Map a weighted-quotient trial function down to a one-dimensional
    trial function and verify Q(f) * B(g) = omega^{1-2/q} k^{1+2/q}.

    Q is the weighted interpolation quotient of f, B the one-dimensional
    quotient of the fully transformed profile, k = n - 2 - 2a.  The identity
    holds exactly for every admissible profile, so the gap measures nothing
    but accumulated numerical error through the four substitutions.
    """
    k = n - 2.0 - 2.0 * a
    if k <= 0.0:
        raise DomainError("need a < (n-2)/2 for the replay")
    quotient = ckn_quotient(f, n, q, a, rel_tol=rel_tol).quotient
    u = power_shifted(f, a)
    ut = rescaled(u, k)
    h = deriv_profile(ut)
    g = inverted(h)
    b = bliss_quotient(g, 2.0, q, rel_tol=rel_tol)
    omega = surface_area(n)
    expected = omega ** (1.0 - 2.0 / q) * k ** (1.0 + 2.0 / q)
    lhs = quotient * b
    return TransformCheck(
        lhs,
        expected,
        "proof-replay",
        _gap(lhs, expected),
        note=f"quotient {quotient:.12g}, one-dimensional quotient {b:.12g}",
    )
