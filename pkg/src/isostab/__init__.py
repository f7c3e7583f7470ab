"""Exact verification engine for Casimir spectra of Gauss images of
homogeneous isoparametric hypersurfaces."""

__version__ = "0.1.0"
