"""
Reading and writing WRCT tensor files.

Layout: magic `WRCT`, version byte, role byte, three little-endian uint32
dims (C, H, W), two extra uint32 origin values (oy, ox) for kernels, then
C*H*W little-endian float64 values in (c, y, x) order.
"""

import os
from typing import Optional, Tuple

import numpy as np

from reverseconv.core.config import (
    HEADER_DTYPE, MAGIC, PAYLOAD_DTYPE, VERSION, TensorRole, WeightRole
)
from reverseconv.core.errors import FormatError, TruncatedPayloadError
from reverseconv.core.models import FeatureMap, Kernel, WeightField


_PREFIX_SIZE = len(MAGIC) + 2


def encode(array: np.ndarray, role: TensorRole, origin: Optional[Tuple[int, int]] = None) -> bytes:
    """
    Serialize a (C, H, W) array into WRCT bytes.

    Args:
        array: Real array of shape (C, H, W)
        role: Role byte to store
        origin: Kernel origin, required for kernels and rejected otherwise

    Returns:
        Encoded bytes
    """
    if (role is TensorRole.KERNEL) != (origin is not None):
        raise FormatError(f"Origin must be given exactly for kernels (role={role.name})")
    header = [MAGIC, bytes([VERSION, role.value]), np.asarray(array.shape, dtype=HEADER_DTYPE).tobytes()]
    if origin is not None:
        header.append(np.asarray(origin, dtype=HEADER_DTYPE).tobytes())
    payload = np.ascontiguousarray(array, dtype=PAYLOAD_DTYPE).tobytes()
    return b''.join(header) + payload


def decode(raw: bytes) -> Tuple[TensorRole, np.ndarray, Optional[Tuple[int, int]]]:
    """
    Parse WRCT bytes.

    Args:
        raw: File contents

    Returns:
        Tuple of (role, array of shape (C, H, W), origin or None)
    """
    if len(raw) < _PREFIX_SIZE or raw[:len(MAGIC)] != MAGIC:
        raise FormatError("Missing WRCT magic bytes")
    version, role_byte = raw[len(MAGIC)], raw[len(MAGIC) + 1]
    if version != VERSION:
        raise FormatError(f"Unsupported WRCT version: {version}")
    try:
        role = TensorRole(role_byte)
    except ValueError:
        raise FormatError(f"Unknown WRCT role byte: {role_byte:#04x}") from None

    n_header = 5 if role is TensorRole.KERNEL else 3
    header_end = _PREFIX_SIZE + n_header * HEADER_DTYPE.itemsize
    if len(raw) < header_end:
        raise FormatError(f"WRCT header truncated: {len(raw)} bytes")
    header = np.frombuffer(raw, dtype=HEADER_DTYPE, count=n_header, offset=_PREFIX_SIZE)
    dims = tuple(int(v) for v in header[:3])
    origin = (int(header[3]), int(header[4])) if role is TensorRole.KERNEL else None

    expected = int(np.prod(dims, dtype=np.int64)) * PAYLOAD_DTYPE.itemsize
    payload = len(raw) - header_end
    if payload < expected:
        raise TruncatedPayloadError(f"WRCT payload truncated: expected {expected} bytes, found {payload}")
    if payload > expected:
        raise FormatError(f"WRCT payload has {payload - expected} trailing bytes")
    array = np.frombuffer(raw, dtype=PAYLOAD_DTYPE, offset=header_end).reshape(dims)
    return role, array.astype(np.float64), origin


def _read(path: str, role: TensorRole):
    with open(path, 'rb') as f:
        raw = f.read()
    found, array, origin = decode(raw)
    if found is not role:
        raise FormatError(f"{path} holds a {found.name} record, expected {role.name}")
    return array, origin


def _write(path: str, raw: bytes):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'wb') as f:
        f.write(raw)


def read_tensor(path: str) -> FeatureMap:
    """
    Load a feature tensor from a WRCT file.

    Args:
        path: File path

    Returns:
        Decoded FeatureMap (NaN/Inf payloads raise ValidationError)
    """
    array, _ = _read(path, TensorRole.TENSOR)
    return FeatureMap(array)


def write_tensor(t: FeatureMap, path: str):
    """
    Save a feature tensor as a WRCT file.

    Args:
        t: Tensor to save
        path: Destination path; parent directories are created
    """
    _write(path, encode(t.data, TensorRole.TENSOR))


def read_kernel(path: str) -> Kernel:
    """
    Load a depthwise kernel and its origin from a WRCT file.

    Args:
        path: File path

    Returns:
        Kernel with the stored origin
    """
    array, origin = _read(path, TensorRole.KERNEL)
    return Kernel(array, origin)


def write_kernel(k: Kernel, path: str):
    """
    Save a kernel, origin included, as a WRCT file.

    Args:
        k: Kernel to save
        path: Destination path; parent directories are created
    """
    _write(path, encode(k.taps, TensorRole.KERNEL, k.origin))


def read_weight_field(path: str, role: WeightRole) -> WeightField:
    """
    Load a weight field from a WRCT file.

    Args:
        path: File path
        role: Objective role; it is not stored in the file

    Returns:
        WeightField with the given role (negative entries raise ValidationError)
    """
    array, _ = _read(path, TensorRole.WEIGHT_FIELD)
    return WeightField(array, role)


def write_weight_field(w: WeightField, path: str):
    """
    Save a weight field as a WRCT file. The role is not written.

    Args:
        w: Weight field to save
        path: Destination path; parent directories are created
    """
    _write(path, encode(w.data, TensorRole.WEIGHT_FIELD))
