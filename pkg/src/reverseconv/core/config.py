"""
Constants for the core tensor types and the WRCT file format.
"""

from enum import Enum

import numpy as np

DTYPE = np.float64
COMPLEX_DTYPE = np.complex128

# WRCT format
MAGIC = b'WRCT'
VERSION = 0x01
HEADER_DTYPE = np.dtype('<u4')
PAYLOAD_DTYPE = np.dtype('<f8')

# Absolute tolerance on the imaginary residue of an inverse FFT declared real
REAL_RESIDUE_TOLERANCE = 1e-8


class TensorRole(Enum):
    """Role byte stored in the WRCT header."""
    TENSOR = 0x00
    WEIGHT_FIELD = 0x01
    KERNEL = 0x02


class WeightRole(Enum):
    """Which term of the objective a weight field scales."""
    DATA_FIDELITY = 'data'
    REGULARIZER = 'reg'
