"""
Scripts package
"""
