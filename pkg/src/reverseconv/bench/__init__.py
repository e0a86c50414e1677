"""
Timing and scaling measurements for the FFT and dense solve paths.
"""
