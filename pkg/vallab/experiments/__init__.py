"""
Experiments Package
"""
