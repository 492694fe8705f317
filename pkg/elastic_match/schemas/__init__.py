"""
Schemas package
"""
