"""
Pipeline package
"""
