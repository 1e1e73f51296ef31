"""
CLI Package
Command groups registered by vallab.main
"""
