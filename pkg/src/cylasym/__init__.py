"""Transition-region asymptotics for cylinder functions of nearly equal
order and argument: exact expansion coefficients, reference quadrature
oracles, remainder integrals with computable bounds, terminants and Stokes
smoothing, and level-one hyperasymptotic re-expansion."""

__version__ = "0.1.0"
