"""
Defectlab Module
p-th power subtraction, Artin-Schreier reduction and e, f, d bookkeeping
"""
