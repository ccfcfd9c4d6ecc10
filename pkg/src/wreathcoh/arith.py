"""Exponent and variety-dimension arithmetic for iterated wreath products.

Groups are never built here.  A group is represented by its exponent pair
``(e, ee)`` (exponent of positive-degree cohomology, and the exponent that
recurs in infinitely many degrees) and by the dimension vector of the
varieties ``W_0 ⊇ W_1 ⊇ ...``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .equivariant import require_prime
from .exactlin import PreconditionError, lcm
from .graded import GradedAbelianGroup, is_power_of


@dataclass(frozen=True)
class ExponentPair:
    e: int
    ee: int
    p2_caveat: bool = False
    e_choices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.e < 0 or self.ee < 0:
            raise PreconditionError("exponents are nonnegative")
        if self.e and self.ee and self.e % self.ee:
            raise PreconditionError(f"ee = {self.ee} does not divide e = {self.e}")

    def to_dict(self) -> dict:
        out = {"e": self.e, "ee": self.ee}
        if self.p2_caveat:
            out["p2_caveat"] = True
            out["e_choices"] = list(self.e_choices)
        return out


def exponents_of_graded(H: GradedAbelianGroup, p: Optional[int] = None) -> ExponentPair:
    """``(e, ee)`` of the positive-degree part of ``H``.

    With ``p = 2`` the caveat flag is raised when every summand of the
    maximal order lies in a finite family and in odd degree.
    """
    pos = []
    for fam in H.families:
        if fam.count is None:
            pos.append(fam)
        elif fam.last_degree > 0:
            pos.append(fam.restrict(1, fam.last_degree))
    e = lcm(f.order for f in pos)
    ee = lcm(f.order for f in pos if f.count is None)
    caveat = False
    if p == 2 and e > 1:
        top = [f for f in pos if f.order == e]
        caveat = bool(top) and all(
            f.count is not None and all(d % 2 for d in f.degrees()) for f in top
        )
    return ExponentPair(e, ee, caveat, (e,) if caveat else ())


def wreath_exponents(base: ExponentPair, p: int) -> ExponentPair:
    """Exponents after one wreath step with ``C_p``, for a ``p``-group."""
    require_prime(p)
    for name, v in (("e", base.e), ("ee", base.ee)):
        if not is_power_of(v, p):
            raise PreconditionError(f"{name} = {v} is not a power of p = {p}")
    e, ee = p * base.e, p * base.ee
    if p == 2 and base.p2_caveat:
        return ExponentPair(e, ee, True, (base.e, e))
    return ExponentPair(e, ee)


@dataclass(frozen=True)
class DimensionVector:
    dims: tuple[int, ...] = ()

    def __post_init__(self):
        d = list(self.dims)
        while d and d[-1] == 0:
            d.pop()
        if any(x < 0 for x in d):
            raise PreconditionError("dimensions are nonnegative")
        if any(d[k] < d[k + 1] for k in range(len(d) - 1)):
            raise PreconditionError(f"dimension vector {tuple(d)} is not weakly decreasing")
        object.__setattr__(self, "dims", tuple(d))

    def __getitem__(self, i: int) -> int:
        return self.dims[i] if 0 <= i < len(self.dims) else 0


def dim_w_wreath(base: DimensionVector, p: int) -> DimensionVector:
    require_prime(p)
    d = base.dims
    out = [max(p * base[0], 1)]
    for i in range(1, len(d) + 1):
        out.append(max(p * base[i], base[i - 1]))
    return DimensionVector(tuple(out))


def dim_w_symmetric(m: int, p: int, i: int) -> int:
    """``dim W_i`` of the symmetric group of degree ``m``, from the base-``p`` digits of ``m``."""
    require_prime(p)
    if m < 1 or i < 0:
        raise PreconditionError("need m >= 1 and i >= 0")
    digits = []
    while m:
        digits.append(m % p)
        m //= p
    return sum(digits[j] * p ** (j - i - 1) for j in range(i + 1, len(digits)))


def nu_p_che(dims: DimensionVector) -> int:
    return sum(dims.dims)


# ---------------------------------------------------------------------------
# tower descriptions


@dataclass(frozen=True)
class TowerReport:
    p: int
    exponents: ExponentPair
    dims: DimensionVector
    steps: int
    stages: list = field(default_factory=list, compare=False)

    def to_dict(self) -> dict:
        out = self.exponents.to_dict()
        out.update({"p": self.p, "steps": self.steps, "dims": list(self.dims.dims),
                    "nu_p_che": nu_p_che(self.dims)})
        return out


_BASE = re.compile(r"^\s*(C|E)\s*:\s*(\d+)(?:\s*\^\s*(\d+))?\s*")
_STEP = re.compile(r"\s*wr\s+C_?(\d+)\s*")


def parse_tower(text: str) -> tuple[str, int, int, list[int]]:
    """``"C:9 wr C_3"`` -> ``("C", 3, 2, [3])``; ``"E:2^3"`` -> ``("E", 2, 3, [])``."""
    m = _BASE.match(text)
    if not m:
        raise PreconditionError(f"tower must start with 'C:<p^r>' or 'E:<p>^<n>', got {text!r}")
    kind, a, b = m.group(1), int(m.group(2)), m.group(3)
    if kind == "C":
        if b is not None:
            a = a ** int(b)
        p = _prime_of(a)
        r = 0
        while a > 1:
            a //= p
            r += 1
    else:
        if b is None:
            raise PreconditionError("elementary abelian base is written 'E:<p>^<n>'")
        p, r = a, int(b)
        require_prime(p)
    steps = []
    pos = m.end()
    while pos < len(text):
        s = _STEP.match(text, pos)
        if not s or s.end() == pos:
            raise PreconditionError(f"cannot parse tower step at {text[pos:]!r}")
        steps.append(int(s.group(1)))
        pos = s.end()
    for q in steps:
        require_prime(q)
        if p is None:
            p = q
        elif q != p:
            raise PreconditionError(f"every step must use the same prime as the base ({p}), got C_{q}")
    if p is None:
        raise PreconditionError("trivial base with no wreath steps has no prime")
    return kind, p, r, steps


def _prime_of(n: int) -> Optional[int]:
    if n == 1:
        return None
    q = 2
    while n % q:
        q += 1
    if not is_power_of(n, q):
        raise PreconditionError(f"cyclic base order {n} is not a prime power")
    return q


def tower(text: str) -> TowerReport:
    kind, p, r, steps = parse_tower(text)
    if kind == "C":
        ex = ExponentPair(p ** r, p ** r)
        dims = DimensionVector((1,) * r)
    else:
        ex = ExponentPair(p if r else 1, p if r else 1)
        dims = DimensionVector((r,))
    stages = [(ex, dims)]
    for q in steps:
        ex = wreath_exponents(ex, q)
        dims = dim_w_wreath(dims, q)
        stages.append((ex, dims))
    return TowerReport(p, ex, dims, len(steps), stages)
