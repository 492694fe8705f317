"""
Exact elastic matching of piecewise-linear curves under the SRVF metric
"""
__version__ = "1.0.0"
