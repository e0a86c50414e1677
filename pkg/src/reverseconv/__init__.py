"""
Weighted reverse convolution.

Closed-form FFT inversion of strided circular convolution with spatially
weighted data fidelity and Tikhonov prior, its Converse2D and Wiener
reductions, a dense least-squares oracle, the feature-upsampling losses and
a BCCB attention-structure analyzer.
"""

__version__ = "0.1.0"
