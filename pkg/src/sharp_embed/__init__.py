"""Numerical verification toolkit for sharp Hardy-Sobolev interpolation
constants: closed-form evaluation, quadrature-backed variational quotients,
extremal-family attainment checks, and derivative-free re-derivation of every
constant by direct minimization.

Submodules (import explicitly):

* ``specfn``      -- log-gamma, gamma ratios, sphere areas
* ``quad``        -- adaptive Gauss-Kronrod quadrature on (0,inf) and R
* ``profiles``    -- radial/line trial functions and extremal families
* ``constants``   -- every closed-form sharp constant
* ``functionals`` -- quadrature-backed variational quotients
* ``transforms``  -- numerical verification of the reduction identities
* ``optimizer``   -- Nelder-Mead re-derivation of the constants
* ``reports``     -- verification report assembly (JSON)
* ``cli``         -- the ``sharp-embed`` command line tool
"""

__version__ = "0.1.0"

from .errors import ConvergenceError, DomainError

__all__ = ["__version__", "ConvergenceError", "DomainError"]
