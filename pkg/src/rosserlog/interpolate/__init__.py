"""Lyndon/Craig interpolation and bounded uniform interpolation."""
from .enumeration import Enumerator, normalize
from .lyndon import InterpolantReport, Obligation, PreconditionError, lyndon_interpolant
from .pool import ModelPool, pool_for, random_pool
from .uniform import (
    Evidence, UniformReport, gl_uniform, gr_uniform, grcirc_uniform, grminus_uniform, uniform,
    verify_uniform,
)
