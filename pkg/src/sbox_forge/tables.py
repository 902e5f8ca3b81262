"""Immutable 256-entry octet tables."""

import numpy as np

from .errors import InvalidTableError

SIZE = 256


class RawTable:
    """A read-only table of 256 octets; duplicates are allowed."""

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.asarray(values)
        if arr.ndim != 1 or arr.shape[0] != SIZE:
            raise InvalidTableError(f"expected {SIZE} entries, got shape {arr.shape}")
        if arr.dtype.kind not in "iu":
            if arr.dtype.kind == "f" and np.all(arr == np.floor(arr)):
                arr = arr.astype(np.int64)
            else:
                raise InvalidTableError(f"table entries must be integers, got dtype {arr.dtype}")
        if arr.min() < 0 or arr.max() > 255:
            raise InvalidTableError("table entries must lie in 0..255")
        values = arr.astype(np.uint8)
        values.flags.writeable = False
        self._values = values
        self._check()

    def _check(self):
        pass

    @property
    def values(self):
        """The table as a read-only ``uint8`` array."""
        return self._values

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._values.copy()
        return self._values.astype(dtype)

    def __len__(self):
        return SIZE

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [int(v) for v in self._values[i]]
        return int(self._values[i])

    def __iter__(self):
        return (int(v) for v in self._values)

    def __eq__(self, other):
        if not isinstance(other, RawTable):
            return NotImplemented
        return bool(np.array_equal(self._values, other._values))

    def __hash__(self):
        return hash(self._values.tobytes())

    def __repr__(self):
        head = " ".join(str(v) for v in self._values[:8])
        return f"{type(self).__name__}([{head} ...])"

    def tolist(self):
        return [int(v) for v in self._values]

    def tobytes(self):
        return self._values.tobytes()

    @property
    def is_bijective(self):
        return bool(np.unique(self._values).size == SIZE)


class SBox(RawTable):
    """A bijective 8-bit substitution table."""

    __slots__ = ()

    def _check(self):
        if not self.is_bijective:
            missing = sorted(set(range(SIZE)) - set(self._values.tolist()))
            raise InvalidTableError(f"table is not a permutation; missing values {missing[:8]}")

    def inverse(self):
        return SBox(np.argsort(self._values))
