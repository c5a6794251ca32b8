"""Online Kraft-Chaitin code allocation and synthesis of a universal
dispatcher that realizes a given mixture as a Solomonoff prior.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dyadic import ONE, ZERO, Dyadic, NonDyadicError
from .enumeration import PrefixDispatcher
from .mixture import WeightScheme

__all__ = [
    "KraftExhausted",
    "NonDyadicWeight",
    "KraftAllocator",
    "decompose_weights",
    "SynthesizedUniversal",
    "synthesize_universal",
    "is_prefix_free",
]


class KraftExhausted(Exception):
    """No free interval can hold the requested codeword."""


class NonDyadicWeight(NonDyadicError):
    pass


class KraftAllocator:
    """Hands out prefix-free codewords of requested lengths, online.

    The free set is a list of aligned dyadic intervals ``(start, k)``
    covering ``[start * 2**-k, (start + 1) * 2**-k)``.  A request takes
    the leftmost free interval that is large enough and returns its
    leftmost ``2**-k`` piece; the rest goes back as buddies of doubling
    size.  Starting from ``[0, 1)`` this keeps the free list sorted by
    strictly increasing size, so the leftmost fit is also the best fit
    and a request fails only when the free mass is below ``2**-k``.
    """

    def __init__(self):
        self.free: list[tuple[int, int]] = [(0, 0)]
        self.issued: list[tuple[str, int]] = []

    def request(self, k: int) -> str:
        if k < 0:
            raise ValueError("codeword length must be non-negative")
        for pos, (start, size) in enumerate(self.free):
            if size <= k:
                break
        else:
            raise KraftExhausted(f"no free interval of size 2^-{k} (free mass {self.free_mass()})")
        del self.free[pos]
        start <<= k - size
        self.free[pos:pos] = [((start >> (k - j)) + 1, j) for j in range(k, size, -1)]
        word = format(start, f"0{k}b") if k else ""
        self.issued.append((word, k))
        return word

    def free_mass(self) -> Dyadic:
        return sum((Dyadic.pow2(k) for _, k in self.free), ZERO)

    def issued_mass(self) -> Dyadic:
        return sum((Dyadic.pow2(k) for _, k in self.issued), ZERO)

    def check_conservation(self) -> bool:
        return self.issued_mass() + self.free_mass() == ONE


def is_prefix_free(words) -> bool:
    words = sorted(words)
    return all(not b.startswith(a) for a, b in zip(words, words[1:]))


def decompose_weights(scheme) -> list[list[int]]:
    """Codeword lengths per machine: the set bits of each weight's binary expansion."""
    weights = scheme.weights if isinstance(scheme, WeightScheme) else scheme
    out = []
    for w in weights:
        if not isinstance(w, Dyadic):
            try:
                w = Dyadic.from_fraction(w)
            except (NonDyadicError, TypeError, ValueError) as exc:
                raise NonDyadicWeight(f"weight {w!r} is not dyadic") from exc
        out.append(w.binary_expansion())
    return out


@dataclass
class SynthesizedUniversal(PrefixDispatcher):
    """Dispatcher ``U'(sigma_ij p) = T_i(p)`` over an allocated codeword table."""

    table: dict[str, int]

    tag = "U'"

    def __post_init__(self):
        self._prefixes = {w[:m] for w in self.table for m in range(len(w))}

    def lookup(self, bits):
        if bits in self.table:
            return self.table[bits]
        if bits in self._prefixes:
            return None
        raise LookupError(bits)

    def to_json(self) -> str:
        return json.dumps({"dispatch": dict(sorted(self.table.items(), key=lambda kv: (len(kv[0]), kv[0])))}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> SynthesizedUniversal:
        data = json.loads(text)
        return cls({w: int(i) for w, i in data["dispatch"].items()})


def synthesize_universal(scheme: WeightScheme) -> SynthesizedUniversal:
    """Request one codeword per dyadic term of each weight, machine by machine."""
    alloc = KraftAllocator()
    table = {}
    for i, lengths in enumerate(decompose_weights(scheme)):
        for k in lengths:
            table[alloc.request(k)] = i
    return SynthesizedUniversal(table)
