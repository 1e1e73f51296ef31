"""
Modules Package
"""
