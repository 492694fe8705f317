"""
Matching package: curves, L2 geometry, grid, exact matcher and DP baseline
"""
