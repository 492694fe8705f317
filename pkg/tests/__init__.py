"""
Tests package
"""
