"""Monomial orders on exponent vectors.

Monomials are bare tuples of non-negative ints (one entry per ring variable);
all order semantics live here.  Each order induces a sort key: comparing two
monomials under an order is exactly comparing their key tuples, so Python's
tuple comparison does the work and the keys are usable with ``sorted``.

Supported orders:

* ``lex``             -- pure lexicographic; global (1 is smallest).
* ``degrevlex``       -- total degree first, ties by reverse lexicographic
                         comparison; global.  Also the canonical storage
                         order for polynomial terms.
* ``local_degrevlex`` -- anti-graded degrevlex: *lower* total degree compares
                         greater (so 1 is the largest monomial), ties broken
                         like degrevlex.  This is the local order carrying
                         "at the origin" semantics.
* ``block(k)``        -- degrevlex on the first k variables, then degrevlex
                         on the rest; an elimination order for the front
                         block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

from .errors import PreconditionError

Exponents = Tuple[int, ...]

LEX_KIND = "lex"
DEGREVLEX_KIND = "degrevlex"
LOCAL_KIND = "local_degrevlex"
BLOCK_KIND = "block"

_KINDS = (LEX_KIND, DEGREVLEX_KIND, LOCAL_KIND, BLOCK_KIND)


def mono_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exponents, b: Exponents) -> Exponents:
    """Exponent-wise difference a - b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Exponents, b: Exponents) -> bool:
    """True iff the monomial with exponents ``a`` divides the one with ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


def _grevlex_tail(e: Exponents) -> Tuple[int, ...]:
    # Reverse-lex tie break: the monomial with the smaller exponent on the
    # *last* differing variable is the larger one.
    return tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """A term order, identified by kind plus (for block orders) the split.

    ``split`` is the number of variables in the front (eliminated) block and
    is ignored for non-block kinds.
    """

    kind: str
    split: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise PreconditionError(f"unknown order kind {self.kind!r}")
        if self.kind == BLOCK_KIND and self.split < 1:
            raise PreconditionError("block order needs a positive split")

    @property
    def is_local(self) -> bool:
        return self.kind == LOCAL_KIND

    @property
    def is_global(self) -> bool:
        return not self.is_local

    @property
    def cache_key(self) -> Tuple[str, int]:
        return (self.kind, self.split if self.kind == BLOCK_KIND else 0)

    def key(self, e: Exponents) -> Tuple[int, ...]:
        """Sort key: e1 > e2 under the order iff key(e1) > key(e2)."""
        kind = self.kind
        if kind == DEGREVLEX_KIND:
            return (sum(e),) + _grevlex_tail(e)
        if kind == LEX_KIND:
            return e
        if kind == LOCAL_KIND:
            return (-sum(e),) + _grevlex_tail(e)
        front, back = e[: self.split], e[self.split :]
        return (sum(front),) + _grevlex_tail(front) + (sum(back),) + _grevlex_tail(back)

    def __str__(self) -> str:
        if self.kind == BLOCK_KIND:
            return f"block({self.split})"
        return self.kind


LEX = MonomialOrder(LEX_KIND)
DEGREVLEX = MonomialOrder(DEGREVLEX_KIND)
LOCAL_DEGREVLEX = MonomialOrder(LOCAL_KIND)


def block_order(split: int) -> MonomialOrder:
    """Elimination order for the first ``split`` variables."""
    return MonomialOrder(BLOCK_KIND, split)


def compare_monomials(a: Exponents, b: Exponents, order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as ``a`` is smaller, equal or greater under ``order``."""
    if len(a) != len(b):
        raise PreconditionError(f"monomial arity mismatch: {len(a)} vs {len(b)}")
    if order.kind == BLOCK_KIND and order.split >= len(a):
        raise PreconditionError("block split must be smaller than the arity")
    ka, kb = order.key(a), order.key(b)
    if ka < kb:
        return -1
    return 1 if ka > kb else 0


def order_from_name(name: str) -> MonomialOrder:
    """Parse an order name as used by the CLI (lex, degrevlex, local, block:k)."""
    name = name.strip().lower()
    if name in ("lex",):
        return LEX
    if name in ("degrevlex", "grevlex"):
        return DEGREVLEX
    if name in ("local", "local_degrevlex", "ds"):
        return LOCAL_DEGREVLEX
    if name.startswith("block:"):
        return block_order(int(name.split(":", 1)[1]))
    raise PreconditionError(f"unknown monomial order {name!r}")


def iter_monomials(arity: int, max_degree: int) -> Iterable[Exponents]:
    """All exponent tuples with total degree <= max_degree (brute-force tool)."""
    if arity == 0:
        yield ()
        return

    def rec(prefix, remaining, slots):
        if slots == 1:
            for d in range(remaining + 1):
                yield prefix + (d,)
            return
        for d in range(remaining + 1):
            yield from rec(prefix + (d,), remaining - d, slots - 1)

    yield from rec((), max_degree, arity)
