"""
Block-circulant (BCCB) structure analysis of square attention matrices.
"""
