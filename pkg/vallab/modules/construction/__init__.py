"""
Construction Module
The series w, s, x, y, quasi-finite elements and Hensel lifting
"""
