"""
Core Package
Exact arithmetic kernel: exponents, coefficients, truncated series
"""
