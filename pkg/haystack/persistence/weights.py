"""
Weight snapshots - binary persistence for network parameters.

Format (little-endian):
    Header:    [4B magic "HSWT"] [2B version] [1B arch tag] [4B d] [4B alpha] [1B array count]
    Per array: [1B name_len] [name] [1B ndim] [4B dim]*ndim [float64 payload, row-major]
    Footer:    [4B CRC32 of everything above]

Payloads are raw IEEE-754 doubles, so a save/load round trip is bit-exact.
Writes go through a temporary file and an atomic rename.
"""

import binascii
import logging
import os
import struct

import numpy as np

from haystack.core.constants import WEIGHTS_MAGIC, WEIGHTS_VERSION
from haystack.network.params import ArchKind, Architecture, Params, PARAM_KEYS
from haystack.exceptions import WeightsFormatError

logger = logging.getLogger(__name__)


HEADER_FORMAT = '<4sHBIIB'
HEADER_SIZE = struct.calcsize(HEADER_FORMAT)
FOOTER_SIZE = 4

ARCH_TAGS = {ArchKind.GLOBAL: 0, ArchKind.LCN: 1, ArchKind.LOCAL: 2}
ARCH_FROM_TAG = {v: k for k, v in ARCH_TAGS.items()}


def calculate_crc32(data):
    """CRC32 checksum as an unsigned 32-bit int."""
    return binascii.crc32(data) & 0xFFFFFFFF


def encode_params(params):
    """
    Serialize params into the snapshot format.

    Args:
        params: Params - Parameters to encode

    Returns:
        bytes
    """
    arch = params.arch
    parts = [struct.pack(HEADER_FORMAT, WEIGHTS_MAGIC, WEIGHTS_VERSION,
                         ARCH_TAGS[arch.kind], arch.d, arch.alpha, len(PARAM_KEYS))]
    for key, arr in params.items():
        name = key.encode('ascii')
        parts.append(struct.pack('<B', len(name)))
        parts.append(name)
        parts.append(struct.pack('<B', arr.ndim))
        parts.append(struct.pack(f'<{arr.ndim}I', *arr.shape))
        parts.append(np.ascontiguousarray(arr, dtype='<f8').tobytes())

    data = b''.join(parts)
    return data + struct.pack('<I', calculate_crc32(data))


def decode_params(blob):
    """
    Parse a snapshot produced by encode_params().

    Args:
        blob: bytes - Snapshot contents

    Returns:
        Params
    """
    if len(blob) < HEADER_SIZE + FOOTER_SIZE:
        raise WeightsFormatError('snapshot too small')

    data = blob[:-FOOTER_SIZE]
    stored_crc = struct.unpack('<I', blob[-FOOTER_SIZE:])[0]
    calculated_crc = calculate_crc32(data)
    if stored_crc != calculated_crc:
        raise WeightsFormatError(f'CRC mismatch: {stored_crc:08x} != {calculated_crc:08x}')

    magic, version, tag, d, alpha, count = struct.unpack(HEADER_FORMAT, data[:HEADER_SIZE])
    if magic != WEIGHTS_MAGIC:
        raise WeightsFormatError(f'invalid magic: {magic!r}')
    if version != WEIGHTS_VERSION:
        raise WeightsFormatError(f'unsupported version: {version}')
    if tag not in ARCH_FROM_TAG:
        raise WeightsFormatError(f'unknown architecture tag: {tag}')

    arch = Architecture(ARCH_FROM_TAG[tag], d, alpha)
    offset = HEADER_SIZE
    tensors = {}
    try:
        for _ in range(count):
            name_len = data[offset]
            offset += 1
            name = data[offset:offset + name_len].decode('ascii')
            offset += name_len
            ndim = data[offset]
            offset += 1
            shape = struct.unpack(f'<{ndim}I', data[offset:offset + 4 * ndim])
            offset += 4 * ndim
            nbytes = 8 * int(np.prod(shape, dtype=np.int64))
            payload = data[offset:offset + nbytes]
            if len(payload) != nbytes:
                raise WeightsFormatError(f'truncated payload for {name}')
            offset += nbytes
            tensors[name] = np.frombuffer(payload, dtype='<f8').reshape(shape).astype(np.float64)
    except (IndexError, struct.error, UnicodeDecodeError) as e:
        raise WeightsFormatError(f'corrupt array record: {e}') from None

    if offset != len(data):
        raise WeightsFormatError(f'{len(data) - offset} trailing bytes after last array')
    try:
        return Params(arch, tensors)
    except Exception as e:
        raise WeightsFormatError(str(e)) from None


def save_params(params, filepath):
    """
    Atomically write a weight snapshot.

    Args:
        params: Params - Parameters to save
        filepath: str - Destination path

    Returns:
        int: Bytes written
    """
    snapshot = encode_params(params)
    tmp_path = f'{filepath}.tmp'
    with open(tmp_path, 'wb') as f:
        f.write(snapshot)
    os.replace(tmp_path, filepath)
    logger.info('[Snapshot] Saved %s weights to %s (%d bytes)',
                params.arch.kind.value, filepath, len(snapshot))
    return len(snapshot)


def load_params(filepath):
    """
    Read a weight snapshot.

    Args:
        filepath: str - Snapshot path

    Returns:
        Params
    """
    try:
        with open(filepath, 'rb') as f:
            blob = f.read()
    except OSError as e:
        raise WeightsFormatError(f'cannot read {filepath}: {e.strerror}') from None
    params = decode_params(blob)
    logger.debug('[Snapshot] Loaded %r from %s', params, filepath)
    return params
