"""Verified countermodels for GL, GR-circ and GR."""
from ..semantics.certificate import Certificate, CertificateError, certify, recheck
from .api import PreconditionError, gl_countermodel, gr_countermodel, gro_countermodel
from .search import Unresolved, search_countermodel, theoretical_bound
