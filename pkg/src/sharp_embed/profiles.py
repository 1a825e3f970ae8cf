"""Radial trial functions and the closed-form extremal families.

Profiles are immutable.  A profile carries two modifiers, an amplitude
``scale`` and a ``dilation`` lam with ``eval(dilate(p, lam), r) =
eval(p, lam * r)`` -- dilation composes into the argument, it never
resamples.  Evaluation is vectorized (numpy arrays in, arrays out) and
works in log space where naive powers would overflow: quadrature maps
routinely probe r ~ 1e80.

Tail metadata (``zero_power``, ``inf_power`` / ``inf_exp_rate``) feeds the
quadrature layer, which must know singularity exponents analytically before
integrating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError

__all__ = [
    "RadialProfile",
    "PowerCKN",
    "BlissFamily",
    "CoshPower",
    "GridSpline",
    "CallableProfile",
    "dilate",
    "scale",
    "extremal_ckn",
    "extremal_bliss",
    "extremal_radial_p",
    "extremal_young",
    "random_profile",
    "random_line_profile",
    "profile_to_json",
    "profile_from_json",
]


def _softplus(u):
    return np.logaddexp(0.0, u)


def _sigmoid(u):
    out = np.empty_like(u, dtype=float)
    pos = u >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-u[pos]))
    eu = np.exp(u[~pos])
    out[~pos] = eu / (1.0 + eu)
    return out


@dataclass(frozen=True)
class RadialProfile:
    """Base class; concrete variants implement _value/_deriv on the bare
    (unscaled, undilated) profile."""

    scale: float = field(default=1.0, kw_only=True)
    dilation: float = field(default=1.0, kw_only=True)

    is_line = False

    def __post_init__(self):
        if not (self.dilation > 0.0 and math.isfinite(self.dilation)):
            raise DomainError(f"dilation must be positive, got {self.dilation!r}")

    def _check_arg(self, r):
        r = np.asarray(r, dtype=float)
        if not self.is_line and np.any(r <= 0.0):
            raise DomainError("radial profiles are defined for r > 0 only")
        return r

    def eval(self, r):
        r = self._check_arg(r)
        scalar = r.ndim == 0
        out = self.scale * self._value(self.dilation * np.atleast_1d(r))
        return float(out[0]) if scalar else out

    def deriv(self, r):
        r = self._check_arg(r)
        scalar = r.ndim == 0
        out = (
            self.scale
            * self.dilation
            * self._deriv(self.dilation * np.atleast_1d(r))
        )
        return float(out[0]) if scalar else out

    def dilated(self, lam: float) -> "RadialProfile":
        if not (lam > 0.0 and math.isfinite(lam)):
            raise DomainError(f"dilation factor must be positive, got {lam!r}")
        return replace(self, dilation=self.dilation * lam)

    def scaled(self, c: float) -> "RadialProfile":
        return replace(self, scale=self.scale * c)

    # --- tail metadata (bare profile; modifiers do not change exponents) ---

    @property
    def zero_power(self) -> float:
        """Exponent e with f ~ C r^e as r -> 0."""
        raise NotImplementedError

    @property
    def inf_power(self) -> float | None:
        """Exponent e with f ~ C r^e as r -> inf (None if exponential)."""
        raise NotImplementedError

    @property
    def inf_exp_rate(self) -> float | None:
        """Decay rate c with f ~ C e^{-c r} at infinity (None if algebraic)."""
        return None

    @property
    def deriv_zero_power(self) -> float:
        """Exponent e with f' ~ C r^e as r -> 0."""
        return self.zero_power - 1.0

    @property
    def deriv_inf_power(self) -> float | None:
        return None if self.inf_power is None else self.inf_power - 1.0

    def quad_breakpoints(self) -> tuple:
        """Physical radii where the profile is less than C^2-smooth."""
        return ()

    def descriptor(self) -> dict:
        return profile_to_json(self)


def dilate(p: RadialProfile, lam: float) -> RadialProfile:
    return p.dilated(lam)


def scale(p: RadialProfile, c: float) -> RadialProfile:
    return p.scaled(c)


@dataclass(frozen=True)
class PowerCKN(RadialProfile):
    """r^{-a} (1 + r^k)^{-1/beta}: the weighted-embedding extremal shape."""

    a: float
    k: float
    beta: float

    def __post_init__(self):
        super().__post_init__()
        if not (self.k > 0.0 and self.beta > 0.0):
            raise DomainError("PowerCKN requires k > 0 and beta > 0")

    def _value(self, r):
        L = np.log(r)
        return np.exp(-self.a * L - _softplus(self.k * L) / self.beta)

    def _deriv(self, r):
        L = np.log(r)
        t = _sigmoid(self.k * L)  # r^k / (1 + r^k)
        return -self._value(r) * (self.a + (self.k / self.beta) * t) / r

    @property
    def zero_power(self) -> float:
        return -self.a

    @property
    def inf_power(self) -> float:
        return -self.a - self.k / self.beta

    @property
    def deriv_zero_power(self) -> float:
        # For a = 0 the leading term of f' comes from the (1 + r^k) factor.
        return -self.a - 1.0 if self.a > 0.0 else self.k - 1.0


@dataclass(frozen=True)
class BlissFamily(RadialProfile):
    """A (c s^r + 1)^{-(r+1)/r}: the one-dimensional equality family."""

    amplitude: float
    c: float
    r_exp: float

    def __post_init__(self):
        super().__post_init__()
        if not (self.c > 0.0 and self.r_exp > 0.0):
            raise DomainError("BlissFamily requires c > 0 and r_exp > 0")

    def _value(self, s):
        L = np.log(s)
        expo = (self.r_exp + 1.0) / self.r_exp
        return self.amplitude * np.exp(
            -expo * _softplus(math.log(self.c) + self.r_exp * L)
        )

    def _deriv(self, s):
        t = _sigmoid(math.log(self.c) + self.r_exp * np.log(s))
        return -self._value(s) * (self.r_exp + 1.0) * t / s

    @property
    def zero_power(self) -> float:
        return 0.0

    @property
    def inf_power(self) -> float:
        return -(self.r_exp + 1.0)

    @property
    def deriv_zero_power(self) -> float:
        return self.r_exp - 1.0


@dataclass(frozen=True)
class CoshPower(RadialProfile):
    """cosh(gamma x)^{-delta} on the full line."""

    gamma: float
    delta: float

    is_line = True

    def __post_init__(self):
        super().__post_init__()
        if not (self.delta > 0.0 and self.gamma > 0.0):
            raise DomainError("CoshPower requires gamma > 0 and delta > 0")

    def _value(self, x):
        u = np.abs(self.gamma * x)
        logcosh = u + np.log1p(np.exp(-2.0 * u)) - math.log(2.0)
        return np.exp(-self.delta * logcosh)

    def _deriv(self, x):
        return -self.delta * self.gamma * np.tanh(self.gamma * x) * self._value(x)

    @property
    def zero_power(self) -> float:
        return 0.0

    @property
    def inf_power(self) -> None:
        return None

    @property
    def inf_exp_rate(self) -> float:
        return self.delta * self.gamma


@dataclass(frozen=True)
class GridSpline(RadialProfile):
    """Monotone cubic interpolation through (nodes, values) in log-radius,
    with declared power-law behavior outside the node range."""

    nodes: tuple
    values: tuple
    left_exponent: float
    right_exponent: float

    def __post_init__(self):
        super().__post_init__()
        nodes = tuple(float(v) for v in self.nodes)
        values = tuple(float(v) for v in self.values)
        if len(nodes) < 8:
            raise DomainError("GridSpline needs at least 8 nodes")
        if len(values) != len(nodes):
            raise DomainError("GridSpline nodes/values length mismatch")
        arr = np.asarray(nodes)
        if arr[0] <= 0.0 or np.any(np.diff(arr) <= 0.0):
            raise DomainError("GridSpline nodes must be positive and increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    @cached_property
    def _interp(self):
        return PchipInterpolator(np.log(self.nodes), np.asarray(self.values))

    @cached_property
    def _interp_deriv(self):
        return self._interp.derivative()

    def _value(self, r):
        L = np.log(r)
        lo, hi = self.nodes[0], self.nodes[-1]
        out = np.empty_like(L)
        left = r < lo
        right = r > hi
        mid = ~(left | right)
        out[mid] = self._interp(L[mid])
        out[left] = self.values[0] * np.exp(
            self.left_exponent * (L[left] - math.log(lo))
        )
        out[right] = self.values[-1] * np.exp(
            self.right_exponent * (L[right] - math.log(hi))
        )
        return out

    def _deriv(self, r):
        L = np.log(r)
        lo, hi = self.nodes[0], self.nodes[-1]
        out = np.empty_like(L)
        left = r < lo
        right = r > hi
        mid = ~(left | right)
        out[mid] = self._interp_deriv(L[mid]) / r[mid]
        out[left] = (
            self.left_exponent
            * self.values[0]
            * np.exp(self.left_exponent * (L[left] - math.log(lo)))
            / r[left]
        )
        out[right] = (
            self.right_exponent
            * self.values[-1]
            * np.exp(self.right_exponent * (L[right] - math.log(hi)))
            / r[right]
        )
        return out

    @property
    def zero_power(self) -> float:
        return self.left_exponent

    @property
    def inf_power(self) -> float:
        return self.right_exponent

    @property
    def deriv_zero_power(self) -> float:
        # A flat left tail has identically zero derivative below the first
        # node; the energy integrand is then regular there.
        if self.left_exponent == 0.0:
            return 0.0
        return self.left_exponent - 1.0

    def quad_breakpoints(self) -> tuple:
        return tuple(x / self.dilation for x in self.nodes)


@dataclass(frozen=True)
class CallableProfile(RadialProfile):
    """Profile backed by explicit value / derivative callables.

    Used for transformed profiles in the proof-replay machinery and for
    composite trial functions; not JSON-serializable.
    """

    value_fn: Callable
    deriv_fn: Callable | None = None
    zero_power_: float = 0.0
    inf_power_: float | None = None
    inf_exp_rate_: float | None = None
    deriv_zero_power_: float | None = None
    deriv_inf_power_: float | None = None
    line: bool = False
    breakpoints: tuple = ()
    label: str = "callable"

    @property
    def is_line(self):  # type: ignore[override]
        return self.line

    def _value(self, r):
        return np.asarray(self.value_fn(r), dtype=float)

    def _deriv(self, r):
        if self.deriv_fn is None:
            raise DomainError(f"profile {self.label!r} has no derivative")
        return np.asarray(self.deriv_fn(r), dtype=float)

    @property
    def zero_power(self) -> float:
        return self.zero_power_

    @property
    def inf_power(self) -> float | None:
        return self.inf_power_

    @property
    def inf_exp_rate(self) -> float | None:
        return self.inf_exp_rate_

    @property
    def deriv_zero_power(self) -> float:
        if self.deriv_zero_power_ is not None:
            return self.deriv_zero_power_
        return self.zero_power_ - 1.0

    @property
    def deriv_inf_power(self) -> float | None:
        if self.deriv_inf_power_ is not None:
            return self.deriv_inf_power_
        return None if self.inf_power_ is None else self.inf_power_ - 1.0

    def quad_breakpoints(self) -> tuple:
        return tuple(x / self.dilation for x in self.breakpoints)

    def descriptor(self) -> dict:
        return {"variant": "callable", "label": self.label}


# --------------------------------------------------------------------------
# Extremal families
# --------------------------------------------------------------------------


def extremal_ckn(n: int, q: float, a: float) -> PowerCKN:
    """Extremal |x|^{-a} (1 + |x|^{beta(n-2-2a)})^{-1/beta}, beta = q/2 - 1.

    Attains the weighted interpolation constant for radial functions.  The
    non-radial statement additionally needs q <= 2n/(n-2); radially any
    q > 2 is admissible, so only the structural bounds are enforced here.
    """
    if int(n) != n or n < 3:
        raise DomainError(f"need integer n >= 3, got {n!r}")
    if not q > 2.0:
        raise DomainError(f"need q > 2, got {q!r}")
    if not (0.0 <= a < (n - 2.0) / 2.0):
        raise DomainError(f"need 0 <= a < (n-2)/2 = {(n-2)/2}, got {a!r}")
    beta = q / 2.0 - 1.0
    return PowerCKN(a=float(a), k=beta * (n - 2.0 - 2.0 * a), beta=beta)


def extremal_bliss(p: float, q: float, c: float) -> BlissFamily:
    """Equality family (c s^r + 1)^{-(r+1)/r}, r = q/p - 1, any c > 0."""
    if not (q > p > 1.0):
        raise DomainError(f"need q > p > 1, got p={p!r}, q={q!r}")
    if not c > 0.0:
        raise DomainError(f"need c > 0, got {c!r}")
    return BlissFamily(amplitude=1.0, c=float(c), r_exp=q / p - 1.0)


def extremal_radial_p(n: int, p: float, q: float, a: float) -> PowerCKN:
    """Extremal [1 + |x|^{beta (n-p(a+1))/(p-1)}]^{-1/beta}, beta = q/p - 1."""
    if int(n) != n or n <= p:
        raise DomainError(f"need integer n > p, got n={n!r}, p={p!r}")
    if not (1.0 < p < q):
        raise DomainError(f"need 1 < p < q, got p={p!r}, q={q!r}")
    if not (0.0 <= a < (n - p) / p):
        raise DomainError(f"need 0 <= a < (n-p)/p = {(n - p) / p}, got {a!r}")
    beta = q / p - 1.0
    return PowerCKN(a=0.0, k=beta * (n - p * (a + 1.0)) / (p - 1.0), beta=beta)


def extremal_young(p: float) -> CoshPower:
    """cosh(gamma x)^{-delta} with the printed argument gamma = p'/(4 p delta).

    The printed gamma is *not* taken as ground truth: the optimizer
    re-derives the maximizing rate numerically, and reports compare the two
    (see ``constants.young_gamma_derived`` for the chain-derived value).
    """
    if not (1.0 < p < 2.0):
        raise DomainError(f"need 1 < p < 2, got {p!r}")
    pp = p / (p - 1.0)
    delta = 2.0 / (2.0 - p)
    return CoshPower(gamma=pp / (4.0 * p * delta), delta=delta)


# --------------------------------------------------------------------------
# Random trial profiles
# --------------------------------------------------------------------------

_N_NODES = 33
_NODE_LO = 1e-4
_NODE_HI = 1e4


def random_profile(
    seed: int, left_exponent: float, right_exponent: float
) -> GridSpline:
    """Deterministic random radial trial function.

    Power law r^{left_exponent} near zero, r^{right_exponent} at infinity
    (caller chooses the exponents so the functionals of interest converge),
    with smooth random log-amplitude bumps in between.  Positive and
    eventually decreasing.
    """
    if right_exponent >= 0.0:
        raise DomainError("right_exponent must be negative for decay")
    rng = np.random.default_rng(np.random.PCG64(int(seed)))
    nodes = np.exp(
        np.linspace(math.log(_NODE_LO), math.log(_NODE_HI), _N_NODES)
    )
    L = np.log(nodes)
    pivot = rng.uniform(-1.5, 1.5)  # log of the transition radius
    # Smooth power-to-power envelope.
    t = _softplus((left_exponent - right_exponent) * (L - pivot))
    log_env = left_exponent * (L - pivot) - t
    # Interior bumps; zero near the edge nodes so the tails stay clean powers.
    n_bumps = int(rng.integers(2, 5))
    bump = np.zeros_like(L)
    for _ in range(n_bumps):
        amp = rng.uniform(-0.4, 0.4)
        mu = rng.uniform(L[3], L[-4])
        width = rng.uniform(0.4, 1.6)
        bump += amp * np.exp(-0.5 * ((L - mu) / width) ** 2)
    log_amp = rng.uniform(-1.0, 1.0)
    values = np.exp(log_env + bump + log_amp)
    return GridSpline(
        nodes=tuple(nodes),
        values=tuple(values),
        left_exponent=float(left_exponent),
        right_exponent=float(right_exponent),
    )


def random_line_profile(seed: int) -> CallableProfile:
    """Deterministic random trial function on the line for the convolution
    inequality: a cosh-power envelope times a smooth positive modulation."""
    rng = np.random.default_rng(np.random.PCG64(int(seed)))
    gamma = float(rng.uniform(0.3, 2.5))
    delta = float(rng.uniform(1.0, 5.0))
    env = CoshPower(gamma=gamma, delta=delta)
    xs = np.linspace(-6.0 / gamma, 6.0 / gamma, 15)
    mod_vals = np.exp(rng.uniform(-0.7, 0.7, xs.shape))
    mod = PchipInterpolator(xs, mod_vals)
    lo, hi = xs[0], xs[-1]

    def value_fn(x):
        inner = np.clip(x, lo, hi)
        return env._value(x) * mod(inner)

    return CallableProfile(
        value_fn=value_fn,
        zero_power_=0.0,
        inf_exp_rate_=env.inf_exp_rate,
        line=True,
        breakpoints=tuple(xs),
        label=f"random_line_{seed}",
    )


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------

_VARIANTS = {
    "power_ckn": PowerCKN,
    "bliss": BlissFamily,
    "cosh_power": CoshPower,
    "grid_spline": GridSpline,
}


def profile_to_json(p: RadialProfile) -> dict:
    common = {"scale": p.scale, "dilation": p.dilation}
    if isinstance(p, PowerCKN):
        return {
            "variant": "power_ckn",
            "params": {"a": p.a, "k": p.k, "beta": p.beta},
            **common,
        }
    if isinstance(p, BlissFamily):
        return {
            "variant": "bliss",
            "params": {"amplitude": p.amplitude, "c": p.c, "r_exp": p.r_exp},
            **common,
        }
    if isinstance(p, CoshPower):
        return {
            "variant": "cosh_power",
            "params": {"gamma": p.gamma, "delta": p.delta},
            **common,
        }
    if isinstance(p, GridSpline):
        return {
            "variant": "grid_spline",
            "params": {
                "left_exponent": p.left_exponent,
                "right_exponent": p.right_exponent,
            },
            "nodes": list(p.nodes),
            "values": list(p.values),
            **common,
        }
    raise DomainError(f"profile {type(p).__name__} is not serializable")


def profile_from_json(obj: dict) -> RadialProfile:
    variant = obj["variant"]
    if variant not in _VARIANTS:
        raise DomainError(f"unknown profile variant {variant!r}")
    cls = _VARIANTS[variant]
    kwargs = dict(obj.get("params", {}))
    if variant == "grid_spline":
        kwargs["nodes"] = tuple(obj["nodes"])
        kwargs["values"] = tuple(obj["values"])
    return cls(scale=obj.get("scale", 1.0), dilation=obj.get("dilation", 1.0), **kwargs)
