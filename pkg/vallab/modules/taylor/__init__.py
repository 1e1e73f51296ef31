"""
Taylor Module
Hasse derivatives, slope analysis and truncation stabilization
"""
