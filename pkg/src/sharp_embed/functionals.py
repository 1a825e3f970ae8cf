"""Quadrature-backed evaluation of the variational functionals.

Every functional reduces to one-dimensional integrals of the form
r^w |f(r)|^e with f a profile (or its derivative).  Integrands are
assembled in log space so that probing radii like 1e80 (which the
tail substitutions of the quadrature layer do routinely) cannot
overflow, and each integral's endpoint exponents are derived
analytically from the profile's tail metadata before integrating --
divergent weights are rejected up front, never discovered by a
wandering quadrature.

The three functionals built on running primitives (the one-dimensional
quotient, the convolution ratio, and the radial bilinear form) share the
``_TailedPrimitive`` helper: one adaptive partition of the integrand,
queried at arbitrary points, with exact power-law continuation outside
the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .constants import (
    d_pqa,
    d_qa,
    hardy_coefficient,
    stein_weiss_a,
    stein_weiss_alpha,
)
from .errors import DomainError
from .profiles import RadialProfile, profile_to_json
from .quad import (
    CumulativePrimitive,
    DecayHint,
    QuadratureSpec,
    integrate_halfline,
    integrate_interval,
    integrate_line,
    integrate_triangle_symmetric,
)
from .specfn import surface_area

__all__ = [
    "QuotientReport",
    "weighted_grad_energy",
    "hardy_term",
    "weighted_lq_norm",
    "ckn_quotient",
    "lp_quotient",
    "bliss_quotient",
    "young_ratio",
    "stein_weiss_radial_ratio",
    "ckn_weight_power",
]

_DEFAULT_REL_TOL = 1e-10


@dataclass(frozen=True)
class QuotientReport:
    """Both sides of one inequality instance evaluated on one profile."""

    lhs_energy: float
    hardy_value: float
    weighted_norm: float
    quotient: float
    sharp_constant: float
    relative_deficit: float
    quad_error: float

    def to_json(self, case: dict | None = None, profile: RadialProfile | None = None):
        out = {
            "lhs_energy": self.lhs_energy,
            "hardy_value": self.hardy_value,
            "weighted_norm": self.weighted_norm,
            "quotient": self.quotient,
            "sharp_constant": self.sharp_constant,
            "relative_deficit": self.relative_deficit,
            "quad_error": self.quad_error,
        }
        if case is not None:
            out["case"] = case
        if profile is not None:
            out["profile"] = profile_to_json(profile)
        return out


def _log_abs(values):
    v = np.abs(np.asarray(values, dtype=float))
    out = np.full(v.shape, -np.inf)
    pos = v > 0.0
    out[pos] = np.log(v[pos])
    return out


def _power_integrand(evaluate: Callable, weight_power: float, p_exp: float):
    """r -> r^{weight_power} |evaluate(r)|^{p_exp}, safely in log space.

    With weight_power = 0 the radius never enters, so the integrand is also
    valid on the line (negative arguments).
    """

    if weight_power == 0.0:

        def f0(r):
            return np.exp(p_exp * _log_abs(evaluate(r)))

        return f0

    def f(r):
        lv = _log_abs(evaluate(r))
        expo = weight_power * np.log(r) + p_exp * lv
        return np.exp(expo)

    return f


def _radial_weighted_integral(
    prof: RadialProfile,
    weight_power: float,
    p_exp: float,
    *,
    use_deriv: bool = False,
    rel_tol: float = _DEFAULT_REL_TOL,
    name: str = "integral",
):
    """omega-free integral over (0, inf) of r^{weight_power} |f or f'|^{p_exp}."""
    if prof.is_line:
        raise DomainError(f"{name}: expects a radial profile")
    if use_deriv:
        e0 = prof.deriv_zero_power
        einf = None if prof.inf_power is None else prof.deriv_inf_power
        evaluate = prof.deriv
    else:
        e0 = prof.zero_power
        einf = prof.inf_power
        evaluate = prof.eval
    sigma = weight_power + p_exp * e0
    if sigma <= -1.0:
        raise DomainError(
            f"{name}: integrand ~ r^{sigma:g} at zero diverges"
        )
    if einf is None:
        hint = DecayHint.exponential()
    else:
        rate = -(weight_power + p_exp * einf)
        if rate <= 1.0:
            raise DomainError(
                f"{name}: integrand ~ r^{-rate:g} at infinity diverges"
            )
        hint = DecayHint.algebraic(rate)
    spec = QuadratureSpec(
        rel_tol=rel_tol,
        singularity_exponent_at_zero=sigma,
        decay_hint=hint,
        breakpoints=prof.quad_breakpoints(),
    )
    return integrate_halfline(_power_integrand(evaluate, weight_power, p_exp), spec)


def weighted_grad_energy(
    u: RadialProfile, n: int, p: float, a: float, *, rel_tol: float = _DEFAULT_REL_TOL
) -> float:
    """omega_{n-1} * int_0^inf r^{n-1-pa} |u'(r)|^p dr."""
    res = _radial_weighted_integral(
        u, n - 1.0 - p * a, p, use_deriv=True, rel_tol=rel_tol, name="grad energy"
    )
    return surface_area(n) * res.value


def hardy_term(f: RadialProfile, n: int, *, rel_tol: float = _DEFAULT_REL_TOL) -> float:
    """omega_{n-1} * int_0^inf r^{n-3} f(r)^2 dr."""
    res = _radial_weighted_integral(
        f, n - 3.0, 2.0, rel_tol=rel_tol, name="hardy term"
    )
    return surface_area(n) * res.value


def weighted_lq_norm(
    f: RadialProfile, n: int, q: float, w: float, *, rel_tol: float = _DEFAULT_REL_TOL
) -> float:
    """[omega_{n-1} * int_0^inf r^{n-1-w} |f|^q dr]^{1/q}."""
    res = _radial_weighted_integral(
        f, n - 1.0 - w, q, rel_tol=rel_tol, name="weighted norm"
    )
    return (surface_area(n) * res.value) ** (1.0 / q)


def ckn_weight_power(n: int, q: float) -> float:
    """Norm weight power n (q_* - q) / q_* with q_* = 2n/(n-2)."""
    return n - q * (n - 2.0) / 2.0


def ckn_quotient(
    f: RadialProfile,
    n: int,
    q: float,
    a: float,
    *,
    rel_tol: float = _DEFAULT_REL_TOL,
    sharp: float | None = None,
) -> QuotientReport:
    """[E(f) - a(n-2-a) H(f)] / ||f||^2 against the sharp constant.

    With a = (n-3)/2 the Hardy coefficient becomes (n-1)(n-3)/4 and this is
    the first theorem's quotient.
    """
    if not (0.0 <= a < (n - 2.0) / 2.0) and not a < 0.0:
        raise DomainError(f"need a < (n-2)/2 = {(n - 2) / 2}, got {a!r}")
    grad = _radial_weighted_integral(
        f, n - 1.0, 2.0, use_deriv=True, rel_tol=rel_tol, name="grad energy"
    )
    hardy = _radial_weighted_integral(f, n - 3.0, 2.0, rel_tol=rel_tol, name="hardy")
    norm_int = _radial_weighted_integral(
        f, n - 1.0 - ckn_weight_power(n, q), q, rel_tol=rel_tol, name="weighted norm"
    )
    omega = surface_area(n)
    energy = omega * grad.value
    hardy_val = omega * hardy.value
    coeff = hardy_coefficient(n, a)
    numerator = energy - coeff * hardy_val
    denom_q = omega * norm_int.value
    if denom_q <= 0.0:
        raise DomainError("weighted norm vanishes; quotient undefined")
    norm = denom_q ** (1.0 / q)
    quotient = numerator / norm**2
    sharp_val = d_qa(n, q, a) if sharp is None else sharp
    err = (
        omega * (grad.error_estimate + abs(coeff) * hardy.error_estimate)
        / max(abs(numerator), 1e-300)
        + (2.0 / q) * norm_int.error_estimate / norm_int.value
    )
    return QuotientReport(
        lhs_energy=energy,
        hardy_value=hardy_val,
        weighted_norm=norm,
        quotient=quotient,
        sharp_constant=sharp_val,
        relative_deficit=quotient / sharp_val - 1.0 if sharp_val > 0 else math.inf,
        quad_error=err,
    )


def lp_quotient(
    u: RadialProfile,
    n: int,
    p: float,
    q: float,
    a: float,
    *,
    rel_tol: float = _DEFAULT_REL_TOL,
    sharp: float | None = None,
) -> QuotientReport:
    """int r^{n-1-pa}|u'|^p over [int r^{q(n/q_*-a)-1}|u|^q]^{p/q} (radial form
    of the L^p inequality), against d_pqa."""
    if not (1.0 < p < q) or n <= p:
        raise DomainError(f"need 1 < p < q and n > p, got p={p!r}, q={q!r}, n={n!r}")
    grad = _radial_weighted_integral(
        u, n - 1.0 - p * a, p, use_deriv=True, rel_tol=rel_tol, name="grad energy"
    )
    q_star = p * n / (n - p)
    w4 = q * (n / q - n / q_star + a)
    norm_int = _radial_weighted_integral(
        u, n - 1.0 - w4, q, rel_tol=rel_tol, name="weighted norm"
    )
    omega = surface_area(n)
    energy = omega * grad.value
    denom_q = omega * norm_int.value
    if denom_q <= 0.0:
        raise DomainError("weighted norm vanishes; quotient undefined")
    norm = denom_q ** (1.0 / q)
    quotient = energy / norm**p
    sharp_val = d_pqa(n, p, q, a) if sharp is None else sharp
    err = grad.error_estimate / grad.value + (
        p / q
    ) * norm_int.error_estimate / norm_int.value
    return QuotientReport(
        lhs_energy=energy,
        hardy_value=0.0,
        weighted_norm=norm,
        quotient=quotient,
        sharp_constant=sharp_val,
        relative_deficit=quotient / sharp_val - 1.0,
        quad_error=err,
    )


class _TailedPrimitive:
    """G(x) = int_0^x g for a half-line integrand with power-law ends.

    The window [r_lo, r_hi] is resolved by one adaptive partition; queries
    below the window use the endpoint power model, queries above it use the
    declared tail power continuation (exact for grid profiles, whose tails
    are literal power laws).
    """

    def __init__(
        self,
        g: Callable,
        sigma0: float,
        inf_power: float | None,
        *,
        r_lo: float = 1e-8,
        r_hi: float = 1e8,
        rel_tol: float = 1e-11,
        breakpoints: tuple = (),
    ):
        self.r_lo = r_lo
        self.r_hi = r_hi
        self.sigma0 = sigma0
        head = integrate_interval(
            g,
            0.0,
            r_lo,
            QuadratureSpec(
                rel_tol=rel_tol, singularity_exponent_at_zero=sigma0,
                abs_tol=1e-300,
            ),
        )
        self.head = head.value
        spec = QuadratureSpec(
            rel_tol=rel_tol,
            abs_tol=1e-300,
            breakpoints=tuple(b for b in breakpoints if r_lo < b < r_hi),
        )
        self._cum = CumulativePrimitive(g, r_lo, r_hi, spec, offset=self.head)
        self.total = self._cum.total
        self._g_hi = float(np.atleast_1d(g(np.array([r_hi])))[0])
        self.inf_power = inf_power
        self.error_estimate = head.error_estimate + self._cum.error_estimate

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        scalar = s.ndim == 0
        ss = np.atleast_1d(s)
        out = np.empty_like(ss)
        low = ss < self.r_lo
        high = ss > self.r_hi
        mid = ~(low | high)
        if np.any(mid):
            out[mid] = self._cum(ss[mid])
        if np.any(low):
            out[low] = self.head * (ss[low] / self.r_lo) ** (self.sigma0 + 1.0)
        if np.any(high):
            if self.inf_power is None:
                out[high] = self.total
            else:
                e1 = self.inf_power + 1.0
                cont = (
                    self._g_hi
                    * self.r_hi
                    * ((ss[high] / self.r_hi) ** e1 - 1.0)
                    / e1
                )
                out[high] = self.total + cont
        return float(out[0]) if scalar else out


def _outer_windows(sigma_out: float, rate_out: float, bps: tuple) -> tuple[float, float]:
    """Primitive window sized so the regions where the running integral is
    modelled by its endpoint power law carry < ~1e-14 of the outer mass."""
    r_lo = min(1e-6, 10.0 ** (-14.0 / (sigma_out + 1.0)))
    r_hi = max(1e6, 10.0 ** (14.0 / (rate_out - 1.0)))
    if bps:
        r_lo = min(r_lo, min(bps) / 10.0)
        r_hi = max(r_hi, max(bps) * 10.0)
    return max(r_lo, 1e-60), min(r_hi, 1e60)


def bliss_quotient(
    g: RadialProfile, p: float, q: float, *, rel_tol: float = _DEFAULT_REL_TOL
) -> float:
    """[int |int_0^s g|^q s^{r-q} ds]^{p/q} / int |g|^p ds, r = q/p - 1.

    Restricted to nonnegative profiles, where the running integral of g and
    of |g| coincide.
    """
    if not (q > p > 1.0):
        raise DomainError(f"need q > p > 1, got p={p!r}, q={q!r}")
    r_exp = q / p - 1.0
    e0 = g.zero_power
    einf = g.inf_power
    if einf is None:
        raise DomainError("bliss_quotient expects an algebraic-tail profile")
    if p * e0 <= -1.0 or p * einf >= -1.0:
        raise DomainError(
            f"g ~ s^{e0:g} at 0 / s^{einf:g} at infinity leaves ||g||_p infinite"
        )
    denom = _radial_weighted_integral(g, 0.0, p, rel_tol=rel_tol, name="bliss denom")
    if denom.value <= 0.0:
        raise DomainError("zero denominator in the one-dimensional quotient")
    # Running integral grows like s^{e0+1} at zero; like s^{einf+1} (or is
    # constant) at infinity.
    g_inf_exp = einf + 1.0 if einf > -1.0 else 0.0
    sigma_out = q * (e0 + 1.0) + r_exp - q
    rate_out = -(q * g_inf_exp + r_exp - q)
    if sigma_out <= -1.0 or rate_out <= 1.0:
        raise DomainError("one-dimensional numerator diverges for this profile")
    r_lo, r_hi = _outer_windows(sigma_out, rate_out, g.quad_breakpoints())
    prim = _TailedPrimitive(
        lambda s: g.eval(s),
        e0,
        einf,
        r_lo=r_lo,
        r_hi=r_hi,
        rel_tol=min(rel_tol, 1e-11),
        breakpoints=g.quad_breakpoints(),
    )
    numer_integrand = _power_integrand(prim, r_exp - q, q)
    spec = QuadratureSpec(
        rel_tol=rel_tol,
        singularity_exponent_at_zero=sigma_out,
        decay_hint=DecayHint.algebraic(rate_out),
        breakpoints=g.quad_breakpoints(),
    )
    numer = integrate_halfline(numer_integrand, spec)
    return numer.value ** (p / q) / denom.value


def _line_decay_rate(f: RadialProfile) -> float:
    rate = f.inf_exp_rate
    if rate is None or rate <= 0.05:
        raise DomainError(
            "convolution functional needs an exponentially decaying line "
            f"profile (decay rate {rate!r})"
        )
    return rate


def young_ratio(
    f: RadialProfile, p: float, *, rel_tol: float = _DEFAULT_REL_TOL
) -> float:
    """|| k * f ||_{p'} / || f ||_p with kernel k(x) = e^{-|x|}.

    The convolution is evaluated through the two running integrals
    P(x) = int_{-inf}^x e^y f(y) dy and Q(x) = int_x^inf e^{-y} f(y) dy,
    so (k*f)(x) = e^{-x} P(x) + e^x Q(x); Q is accumulated from above
    (as a reflected forward primitive) to avoid cancellation.
    """
    if not f.is_line:
        raise DomainError("young_ratio expects a line profile")
    if not (1.0 < p < 2.0):
        raise DomainError(f"need 1 < p < 2, got {p!r}")
    pp = p / (p - 1.0)
    mu = _line_decay_rate(f)
    bps = f.quad_breakpoints()
    x0 = max((abs(b) for b in bps), default=0.0) + 1.0 / min(mu, 1.0)
    window = min(x0 + 36.0 * max(1.0, 1.0 / mu), 650.0)

    def fwd(y):
        return np.exp(y - window) * f.eval(y)

    def rev(z):
        return np.exp(z - window) * f.eval(-z)

    # Primitives of e^{y - window} f(y) and its reflection; the e^{-window}
    # normalization keeps magnitudes around unity near the window edge.
    cum_spec = QuadratureSpec(
        rel_tol=min(rel_tol, 1e-11),
        abs_tol=1e-300,
        breakpoints=tuple(b for b in bps if -window < b < window),
    )
    head_spec = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-300)
    head_fwd = integrate_halfline(
        lambda t: fwd(-window - t), replace(head_spec, breakpoints=())
    ).value
    head_rev = integrate_halfline(
        lambda t: rev(-window - t), replace(head_spec, breakpoints=())
    ).value
    neg_bps = tuple(-b for b in cum_spec.breakpoints)
    P = CumulativePrimitive(fwd, -window, window, cum_spec, offset=head_fwd)
    Q = CumulativePrimitive(
        rev, -window, window, replace(cum_spec, breakpoints=neg_bps),
        offset=head_rev,
    )

    def conv(x):
        x = np.asarray(x, dtype=float)
        # e^{-x} P(x) + e^{x} Q(-x), with the window normalization undone.
        return np.exp(window - x) * P(x) + np.exp(window + x) * Q(-x)

    conv_int = integrate_interval(
        lambda x: conv(x) ** pp,
        -window,
        window,
        QuadratureSpec(rel_tol=rel_tol, breakpoints=(*cum_spec.breakpoints, 0.0)),
    )
    norm_f = integrate_line(
        _power_integrand(f.eval, 0.0, p),
        QuadratureSpec(rel_tol=rel_tol, breakpoints=bps),
    )
    if norm_f.value <= 0.0:
        raise DomainError("zero profile in convolution ratio")
    return conv_int.value ** (1.0 / pp) / norm_f.value ** (1.0 / p)


def stein_weiss_radial_ratio(
    h: RadialProfile,
    n: int,
    p: float,
    *,
    rel_tol: float = 1e-9,
    via_triangle: bool = False,
) -> float:
    """Radial bilinear form over ||h||_p^2 for the Newtonian-kernel weights.

    The spherical mean of |x-y|^{-(n-2)} over |y| = t at |x| = s is
    max(s,t)^{-(n-2)}, so with phi(s) = h(s) s^{n-1-alpha} the form is
    omega^2 * iint phi(s) phi(t) max(s,t)^{-(n-2)} ds dt
    = 2 omega^2 * int phi(t) t^{2-n} [int_0^t phi] dt.
    The running-primitive evaluation is the default; ``via_triangle``
    routes through the generic triangular integrator instead (slower,
    used as a cross-check).
    """
    alpha = stein_weiss_alpha(n, p)
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"weight exponent alpha = {alpha:g} outside (0, 1)")
    if h.is_line:
        raise DomainError("stein_weiss_radial_ratio expects a radial profile")
    e0 = h.zero_power
    einf = h.inf_power
    if einf is None:
        raise DomainError("expects an algebraic-tail profile")
    w_phi = n - 1.0 - alpha
    sig_phi0 = w_phi + e0
    sig_phi_inf = w_phi + einf
    # ||h||_p finiteness and bilinear convergence.
    if n - 1.0 + p * e0 <= -1.0 or n - 1.0 + p * einf >= -1.0:
        raise DomainError("||h||_p diverges for this profile")
    if 2.0 * sig_phi0 + 3.0 - n <= -1.0:
        raise DomainError("bilinear form diverges at the origin")
    phi_inf_growth = sig_phi_inf + 1.0 if sig_phi_inf > -1.0 else 0.0
    rate_out = -(sig_phi_inf + 2.0 - n + phi_inf_growth)
    if rate_out <= 1.0:
        raise DomainError("bilinear form diverges at infinity")

    omega = surface_area(n)
    phi = _power_integrand(h.eval, w_phi, 1.0)
    norm_int = _radial_weighted_integral(
        h, n - 1.0, p, rel_tol=min(rel_tol, 1e-10), name="||h||_p"
    )
    if norm_int.value <= 0.0:
        raise DomainError("zero profile in bilinear ratio")
    norm_sq = (omega * norm_int.value) ** (2.0 / p)

    if via_triangle:
        kernel_pow = -(n - 2.0)

        def kern(s, t):
            s = np.asarray(s, dtype=float)
            m = np.maximum(s, t)
            return phi(s) * phi(np.asarray([t]))[0] * m**kernel_pow

        spec = QuadratureSpec(
            rel_tol=rel_tol,
            singularity_exponent_at_zero=sig_phi0,
            decay_hint=DecayHint.algebraic(rate_out),
            breakpoints=h.quad_breakpoints(),
        )
        outer_spec = replace(
            spec, singularity_exponent_at_zero=2.0 * sig_phi0 + 3.0 - n
        )
        form = omega**2 * integrate_triangle_symmetric(kern, spec, outer_spec).value
        return form / norm_sq

    r_lo, r_hi = _outer_windows(
        2.0 * sig_phi0 + 3.0 - n, rate_out, h.quad_breakpoints()
    )
    prim = _TailedPrimitive(
        phi,
        sig_phi0,
        sig_phi_inf,
        r_lo=r_lo,
        r_hi=r_hi,
        rel_tol=min(rel_tol / 10.0, 1e-11),
        breakpoints=h.quad_breakpoints(),
    )

    def outer(t):
        return np.exp((2.0 - n) * np.log(t) + _log_abs(phi(t))) * prim(t)

    spec = QuadratureSpec(
        rel_tol=rel_tol,
        singularity_exponent_at_zero=2.0 * sig_phi0 + 3.0 - n,
        decay_hint=DecayHint.algebraic(rate_out),
        breakpoints=h.quad_breakpoints(),
    )
    form = 2.0 * omega**2 * integrate_halfline(outer, spec).value
    return form / norm_sq


def stein_weiss_candidate_ratio(
    n: int, p: float, *, rel_tol: float = 1e-9
) -> tuple[float, float]:
    """Ratio attained by the duality candidate h = (|x|^{-alpha} phi)^{p'-1},
    phi the pure-embedding extremal; returns (ratio, derived constant)."""
    from .profiles import CallableProfile, extremal_ckn

    pp = p / (p - 1.0)
    alpha = stein_weiss_alpha(n, p)
    phi = extremal_ckn(n, pp, 0.0)

    def value_fn(r):
        return np.exp((pp - 1.0) * (_log_abs(phi.eval(r)) - alpha * np.log(r)))

    h = CallableProfile(
        value_fn=value_fn,
        zero_power_=-alpha * (pp - 1.0),
        inf_power_=-(alpha + n - 2.0) * (pp - 1.0),
        label=f"sw_candidate_n{n}_p{p:g}",
    )
    return (
        stein_weiss_radial_ratio(h, n, p, rel_tol=rel_tol),
        stein_weiss_a(n, p),
    )
