"""Isomorphism signatures.

The signature is the canonical breadth-first gluing table (see
``_kernels.canonical_codes``) written out as printable ASCII:
``<K>.<entry><entry>...`` with one entry per face position.  An entry is the
partner tetrahedron in base 62 (fixed width), the partner face digit, and the
permutation as a letter ``a``..``x`` (lexicographic index).  Two connected
triangulations have equal signatures iff they are combinatorially isomorphic.
"""
import numpy as np

from . import _kernels
from .errors import ParseError
from .triangulation import LENIENT, Triangulation

ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
_DIGIT = {c: i for i, c in enumerate(ALPHABET)}
PERM_LETTERS = "abcdefghijklmnopqrstuvwx"


def _base62(n, width):
    out = []
    for _ in range(width):
        out.append(ALPHABET[n % 62])
        n //= 62
    return "".join(reversed(out))


def _width(K):
    w = 1
    while 62 ** w < K:
        w += 1
    return w


def flat_arrays(T):
    return (np.ascontiguousarray(T.tet.ravel()), np.ascontiguousarray(T.face.ravel()),
            np.ascontiguousarray(T.perm.ravel()))


def canonical_codes(T):
    gt, gf, gp = flat_arrays(T)
    return _kernels.canonical_codes(gt, gf, gp, T.size)


def codes_to_signature(codes, K):
    w = _width(K)
    parts = [str(K), "."]
    for c in codes:
        c = int(c)
        parts.append(_base62(c // 96, w))
        parts.append(str((c // 24) % 4))
        parts.append(PERM_LETTERS[c % 24])
    return "".join(parts)


def isomorphism_signature(T):
    return codes_to_signature(canonical_codes(T), T.size)


def signature_codes(sig):
    try:
        head, body = sig.split(".", 1)
        K = int(head)
    except ValueError:
        raise ParseError(f"malformed signature {sig!r}") from None
    w = _width(K)
    step = w + 2
    if K < 1 or len(body) != 4 * K * step:
        raise ParseError(f"malformed signature {sig!r}")
    codes = np.empty(4 * K, dtype=np.int64)
    try:
        for q in range(4 * K):
            chunk = body[q * step:(q + 1) * step]
            t = 0
            for ch in chunk[:w]:
                t = 62 * t + _DIGIT[ch]
            codes[q] = t * 96 + int(chunk[w]) * 24 + PERM_LETTERS.index(chunk[w + 1])
    except (KeyError, ValueError):
        raise ParseError(f"malformed signature {sig!r}") from None
    return K, codes


def codes_to_triangulation(codes, K, mode=LENIENT, check=True):
    codes = np.asarray(codes, dtype=np.int64).reshape(K, 4)
    return Triangulation(codes // 96, (codes // 24) % 4, codes % 24, mode=mode, check=check)


def from_signature(sig, mode=LENIENT, check=True):
    K, codes = signature_codes(sig)
    return codes_to_triangulation(codes, K, mode=mode, check=check)


def automorphism_count(T):
    gt, gf, gp = flat_arrays(T)
    ref = _kernels.canonical_codes(gt, gf, gp, T.size)
    return int(_kernels.automorphism_count(gt, gf, gp, T.size, ref))
