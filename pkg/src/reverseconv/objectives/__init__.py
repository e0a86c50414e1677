"""
Self-supervised loss formulas for feature upsampling.
"""
