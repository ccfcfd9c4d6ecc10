"""Cross-checks between the brute-force engine and the closed forms."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .complexes import (ChainMap, Cocycle, build_cyclic_complex, cocycle_order, cohomology_subquotient,
                        complex_from_graded, induced_map_on_cohomology)
from .equivariant import (column_zero_projection, cyclic_power, hom_double_complex, required_last_column,
                          total_cohomology, totalize, wreath_class_cocycle)
from .exactlin import PreconditionError, cyclic_map_kernel
from .formulas import coprime_witness, predict_wreath_cohomology, primary
from .graded import GradedAbelianGroup


@dataclass
class VerifyEntry:
    parameters: dict
    window: tuple[int, int]
    brute: GradedAbelianGroup
    predicted: GradedAbelianGroup
    status: str
    diffs: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "parameters": self.parameters,
            "window": list(self.window),
            "brute": self.brute.to_dict(),
            "predicted": self.predicted.to_dict(),
            "status": self.status,
            "diffs": self.diffs,
        }


@dataclass
class VerifyReport:
    entries: list

    @property
    def ok(self) -> bool:
        return all(e.status == "match" for e in self.entries)

    def counts(self) -> dict:
        out = {"match": 0, "mismatch": 0, "inconclusive": 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    def to_dict(self) -> dict:
        return {"summary": self.counts(), "entries": [e.to_dict() for e in self.entries]}


def default_window(p: int, d: int) -> tuple[int, int]:
    return (p * (d - 1) - 1, p * d + 6)


def brute_force(p: int, n: int, d: int, window: tuple[int, int]) -> GradedAbelianGroup:
    """Cohomology of ``Tot Hom_{C_p}(W, D(n, d))`` on the window."""
    return total_cohomology(cyclic_power(build_cyclic_complex(n, d), p), window)


def _compare(params: dict, window, brute: GradedAbelianGroup, pred: GradedAbelianGroup) -> VerifyEntry:
    lo, hi = window
    diffs = brute.window_diff(pred, lo, hi)
    return VerifyEntry(params, tuple(window), brute.restrict(lo, hi),
                       pred.without_provenance().restrict(lo, hi),
                       "match" if not diffs else "mismatch", diffs)


def verify_single(p: int, n: int, d: int, window: Optional[tuple[int, int]] = None) -> VerifyEntry:
    """Compare one diagonal cube ``D(n, d)`` with the prediction for ``Z/n`` in degree ``d``."""
    if window is None:
        window = default_window(p, d)
    params = {"p": p, "n": n, "d": d}
    try:
        brute = brute_force(p, n, d, window)
    except PreconditionError as exc:
        empty = GradedAbelianGroup()
        return VerifyEntry(params, tuple(window), empty, empty, "inconclusive", [{"reason": str(exc)}])
    H = GradedAbelianGroup.from_table({d: [n]})
    pred = predict_wreath_cohomology(H, p, window[1]).result
    return _compare(params, window, brute, pred)


def _single_job(args):
    return verify_single(*args)


def corpus(primes=(2, 3, 5), degrees=(1, 2, 3)) -> list[tuple[int, int, int, tuple[int, int]]]:
    out = []
    for p in primes:
        for n in (1, p, p * p, coprime_witness(p)):
            for d in degrees:
                out.append((p, n, d, default_window(p, d)))
    return out


def thread_count() -> int:
    raw = os.environ.get("WREATHCOH_THREADS", "0").strip() or "0"
    try:
        return max(0, int(raw))
    except ValueError:
        raise PreconditionError(f"WREATHCOH_THREADS must be an integer, got {raw!r}") from None


def run_corpus(jobs=None, threads: Optional[int] = None) -> VerifyReport:
    """Run the sweep; entries come back in corpus order regardless of parallelism."""
    if jobs is None:
        jobs = corpus()
    if threads is None:
        threads = thread_count()
    if threads <= 1:
        return VerifyReport([verify_single(*j) for j in jobs])
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return VerifyReport(list(pool.map(_single_job, jobs)))


def verify_input(H: GradedAbelianGroup, p: int, window: tuple[int, int]) -> VerifyEntry:
    """Build the split model of ``H``, take its full cyclic power and compare with the prediction."""
    lo, hi = window
    low = H.min_degree()
    if low is None:
        empty = GradedAbelianGroup()
        return VerifyEntry({"p": p}, tuple(window), empty, empty, "match")
    # summands above this degree cannot reach the window
    bound = hi + (p - 1) * (1 - min(low, 0))
    C = complex_from_graded(H, bound)
    brute = total_cohomology(cyclic_power(C, p), window)
    pred = predict_wreath_cohomology(H, p, hi).result
    return _compare({"p": p, "input": H.to_dict()}, window, brute, pred)


# ---------------------------------------------------------------------------
# spectral pages against tables


def engine_entries(page) -> dict:
    """Nonzero entries of a computed page in primary form."""
    return {k: primary(v) for k, v in page.nonzero().items() if primary(v)}


def compare_entries(table_entries: dict, computed: dict) -> list[dict]:
    out = []
    for k in sorted(set(table_entries) | set(computed)):
        a, b = table_entries.get(k, ()), computed.get(k, ())
        if a != b:
            out.append({"bidegree": list(k), "table": list(a), "computed": list(b)})
    return out


# ---------------------------------------------------------------------------
# classes and restriction


def wreath_class_order(p: int, n: int, degree: int = 0) -> int:
    """Order of the class of ``w -> ε(w) c⊗…⊗c`` for the generator ``c`` of ``C(n, degree)``."""
    C = build_cyclic_complex(n, degree)
    E = cyclic_power(C, p)
    m = p * degree
    D = hom_double_complex(E, required_last_column(E.underlying.lo, m))
    c = Cocycle(degree, (1,))
    z = wreath_class_cocycle(c, D)
    T = totalize(D, (m, m))
    return cocycle_order(T, z)


@dataclass
class RestrictionKernel:
    degree: int
    factors: tuple[int, ...]
    in_p_multiples: bool


def restriction_kernels(p: int, n: int, i: int, degrees) -> list[RestrictionKernel]:
    """Kernel of ``H^m(Tot) -> H^m(D(n, i))`` induced by the column-0 projection."""
    E = cyclic_power(build_cyclic_complex(n, i), p)
    hi = max(degrees)
    D = hom_double_complex(E, required_last_column(E.underlying.lo, hi))
    T = totalize(D, (min(degrees), hi))
    U = E.underlying
    maps = {m: column_zero_projection(D, m) for m in T.degrees() if U.rank(m) and T.rank(m)}
    f = ChainMap(T, U, maps)
    out = []
    for m in degrees:
        M = induced_map_on_cohomology(f, m)
        src = cohomology_subquotient(T, m).factors
        tgt = cohomology_subquotient(U, m).factors if U.rank(m) else ()
        K = cyclic_map_kernel(M, src, tgt)
        inside = True
        for k in range(len(K.factors)):
            x = K.generator(k)
            for xc, fac in zip(x, src):
                if (fac == 0 or fac % p == 0) and xc % p:
                    inside = False
        out.append(RestrictionKernel(m, K.factors, inside))
    return out
