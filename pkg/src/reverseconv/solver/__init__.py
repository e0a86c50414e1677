"""
Closed-form weighted reverse convolution solvers.

This package contains the weight parameterizations and predictors, the
prior initialization, and the FFT solvers for the general weighted case,
its s=1 reduction and the Converse2D special case.
"""
