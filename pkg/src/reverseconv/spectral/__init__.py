"""
FFT primitives and the strided circular convolution forward model.
"""
