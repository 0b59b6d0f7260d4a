"""Desk-scale census of cubic function fields and binary cubic form orbits.

Module Information:
    - Filename: census.py
    - Module: census
    - Location: src/cubic_census/

Key Concepts:
    - Every cubic field over F_q(T) (2, 3 ∤ q) has a depressed generator
      x³ + Ax + B. Each generator in a degree box is maximalized, classified
      at infinity and kept when its global discriminant exponent is M.
    - Two generators give the same field exactly when their fingerprints
      (M, σ, low-degree splitting types, L-polynomial) agree.
    - Work is split by the A coefficient. Partitions are mapped with the
      caller's ``mapper`` and merged in partition order, so the result does not
      depend on scheduling.
    - Finished partitions are appended to a candidate log. A rerun with the
      same parameters resumes from it.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field, replace
from functools import lru_cache
import itertools
import json
from pathlib import Path

import numpy as np

from .errors import BudgetExceededError, DomainError
from .ffpoly import FqField, PolyFq, gcd, get_field, is_irreducible, monic_polys, poly_factor, poly_sqrt, polys_up_to_degree, primes_of_degree, primes_up_to_degree, xgcd
from .forms import NONZERO_TYPES, CubicForm, GL2Elem, SplittingType, classify_mod_P, discriminant, gl2_act, is_irreducible_form, maximalize
from .infinity import SigmaClass, classify_at_infinity
from .utils_logger import get_logger
from .zeta import l_polynomial

LOGGER = get_logger(__name__)

FINGERPRINT_DEGREE = 3
DEFAULT_BUDGET = 10**6

Mapper = Callable[[Callable[["PartitionTask"], dict], Iterable["PartitionTask"]], Iterable[dict]]

#####################################
# Records
#####################################


@dataclass(frozen=True)
class FieldRecord:
    """A cubic field given by a maximal irreducible form, with its invariants."""

    q: int
    form: CubicForm
    M: int
    sigma: SigmaClass
    galois: bool
    fingerprint: tuple = ()
    _splitting: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def splitting_at(self, P: PolyFq) -> SplittingType:  # noqa: N803
        """Splitting type of P in the field, read off the maximal form mod P."""
        if P not in self._splitting:
            self._splitting[P] = classify_mod_P(self.form, P)
        return self._splitting[P]

    def to_json(self) -> dict[str, object]:
        M, sigma, splits, e = self.fingerprint  # noqa: N806
        return {
            "q": self.q,
            "M": self.M,
            "sigma": self.sigma.label,
            "galois": self.galois,
            "form": self.form.to_json(),
            "fingerprint": {"M": M, "sigma": sigma, "splitting": list(splits), "e": list(e)},
        }

    @classmethod
    def from_json(cls, data: dict) -> FieldRecord:
        fq = get_field(data["q"])
        fp = data["fingerprint"]
        record = cls(
            q=data["q"],
            form=CubicForm.from_json(fq, data["form"]),
            M=data["M"],
            sigma=SigmaClass.parse(data["sigma"]),
            galois=data["galois"],
            fingerprint=(fp["M"], fp["sigma"], tuple(fp["splitting"]), tuple(fp["e"])),
        )
        degree = _fingerprint_degree(len(fp["splitting"]), record.q)
        for P, s in zip(primes_up_to_degree(record.q, degree), fp["splitting"], strict=True):
            record._splitting[P] = SplittingType.parse(s)
        return record


def _fingerprint_degree(n_primes: int, q: int) -> int:
    d, total = 0, 0
    while total < n_primes:
        d += 1
        total += len(primes_of_degree(q, d))
    if total != n_primes:
        raise DomainError(f"{n_primes} splitting entries do not fill whole prime degrees for q={q}")
    return d


def fingerprint(record: FieldRecord, degree: int = FINGERPRINT_DEGREE) -> tuple:
    """(M, σ, splitting types at primes of degree ≤ degree, L-polynomial coefficients)."""
    splits = tuple(record.splitting_at(P).value for P in primes_up_to_degree(record.q, degree))
    return (record.M, record.sigma.label, splits, l_polynomial(record).e)


@dataclass(frozen=True)
class EnumBounds:
    """Generator box deg A ≤ deg_a, deg B ≤ deg_b, widened by margin for the stability check."""

    deg_a: int
    deg_b: int
    margin: int = 1
    budget: int = DEFAULT_BUDGET

    @classmethod
    def for_exponent(cls, M: int, margin: int = 1, budget: int = DEFAULT_BUDGET) -> EnumBounds:  # noqa: N803
        return cls(deg_a=(M + 2) // 3, deg_b=M // 2, margin=margin, budget=budget)


@dataclass(frozen=True)
class CensusResult:
    """Distinct S₃ fields of discriminant exponent M, with the census bookkeeping."""

    q: int
    M: int
    bounds: EnumBounds
    fields: tuple[FieldRecord, ...]
    galois_count: int
    stable: bool
    partial: bool
    fingerprint_conflicts: int
    generators_scanned: int
    bookkeeping_failures: int = 0

    @property
    def count(self) -> int:
        return len(self.fields)

    def summary(self) -> dict[str, object]:
        return {
            "q": self.q,
            "M": self.M,
            "count": self.count,
            "galois_count": self.galois_count,
            "stable": self.stable,
            "partial": self.partial,
            "fingerprint_conflicts": self.fingerprint_conflicts,
            "generators_scanned": self.generators_scanned,
            "bookkeeping_failures": self.bookkeeping_failures,
            "box": [self.bounds.deg_a, self.bounds.deg_b, self.bounds.margin],
        }


#####################################
# Generators
#####################################


def _unit_images(A: PolyFq, B: PolyFq) -> Iterator[tuple[PolyFq, PolyFq]]:  # noqa: N803
    fq = A.field
    for u in range(1, fq.q):
        u2 = fq.mul(u, u)
        yield A.scale(u2), B.scale(fq.mul(u2, u))


def _generator_key(A: PolyFq, B: PolyFq) -> tuple:  # noqa: N803
    return (A.sort_key(), B.sort_key())


def is_reduced_generator(A: PolyFq, B: PolyFq, seed: int = 0) -> bool:  # noqa: N803
    """Lex-minimal under (A, B) ↦ (u²A, u³B) and free of h with h² | A, h³ | B."""
    if A.is_zero and B.is_zero:
        return False
    key = _generator_key(A, B)
    if any(_generator_key(a, b) < key for a, b in _unit_images(A, B)):
        return False
    common = gcd(A, B)
    if common.deg < 1:
        return True
    for P, _ in poly_factor(common, seed).factors:
        if (P * P).divides(A) and (P * P * P).divides(B):
            return False
    return True


def generator_form(A: PolyFq, B: PolyFq) -> CubicForm:  # noqa: N803
    """x³ + A x y² + B y³."""
    fq = A.field
    return CubicForm(PolyFq.one(fq), PolyFq.zero(fq), A, B)


@dataclass(frozen=True)
class PartitionTask:
    """All generators with a fixed A coefficient."""

    q: int
    M: int
    a_coeffs: tuple[int, ...]
    deg_b: int
    fingerprint_degree: int = FINGERPRINT_DEGREE
    seed: int = 0


def _candidate(fq: FqField, A: PolyFq, B: PolyFq, M: int, fp_degree: int, seed: int = 0) -> dict | None:  # noqa: N803
    gen = generator_form(A, B)
    disc = discriminant(gen)
    if disc.is_zero or disc.deg + 2 < M:
        return None
    if not is_irreducible_form(gen):
        return None
    form, index = maximalize(gen, seed)
    max_disc = discriminant(form)
    info = classify_at_infinity(form)
    if max_disc.deg + info.gamma != M:
        return None
    record = FieldRecord(q=fq.q, form=form, M=M, sigma=info.sigma, galois=poly_sqrt(max_disc) is not None)
    fp = fingerprint(record, fp_degree)
    return {
        "generator": [list(A.coeffs), list(B.coeffs)],
        "record": replace(record, fingerprint=fp).to_json(),
        "bookkeeping_ok": disc == index * index * max_disc,
    }


def scan_partition(task: PartitionTask) -> dict:
    """Candidates of one A-partition, as JSON-ready data."""
    fq = get_field(task.q)
    A = PolyFq(fq, task.a_coeffs)  # noqa: N806
    candidates, scanned = [], 0
    for B in polys_up_to_degree(fq, task.deg_b):
        if not is_reduced_generator(A, B, task.seed):
            continue
        scanned += 1
        found = _candidate(fq, A, B, task.M, task.fingerprint_degree, task.seed)
        if found is not None:
            candidates.append(found)
    return {"A": list(task.a_coeffs), "scanned": scanned, "candidates": candidates}


#####################################
# Candidate log
#####################################


def _log_header(q: int, M: int, bounds: EnumBounds, fp_degree: int) -> dict:  # noqa: N803
    return {"kind": "header", "q": q, "M": M, "deg_a": bounds.deg_a, "deg_b": bounds.deg_b, "fingerprint_degree": fp_degree}


def read_candidate_log(path: Path, header: dict) -> dict[tuple[int, ...], dict]:
    """Finished partitions keyed by A, or nothing when the log belongs to another run."""
    if not path.exists():
        return {}
    lines = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
    if not lines or lines[0] != header:
        LOGGER.warning(f"Candidate log {path} belongs to another run; starting over.")
        path.unlink()
        return {}
    done = {tuple(entry["A"]): entry for entry in lines[1:] if entry.get("kind") == "partition"}
    LOGGER.info(f"Resuming from {path}: {len(done)} partitions already finished.")
    return done


def _append_log(path: Path, entry: dict) -> None:
    with path.open("a", encoding="utf-8") as fh:
        fh.write(json.dumps(entry, sort_keys=True) + "\n")


#####################################
# Enumeration
#####################################


def _merge(q: int, M: int, bounds: EnumBounds, partitions: Sequence[dict], partial: bool) -> CensusResult:  # noqa: N803
    inner = EnumBounds(bounds.deg_a - bounds.margin, bounds.deg_b - bounds.margin)
    groups: dict[tuple, list[tuple[list, FieldRecord, bool]]] = {}
    failures = 0
    for part in partitions:
        for cand in part["candidates"]:
            record = FieldRecord.from_json(cand["record"])
            a_deg, b_deg = (len(c) - 1 for c in cand["generator"])
            in_inner = a_deg <= inner.deg_a and b_deg <= inner.deg_b
            groups.setdefault(record.fingerprint, []).append((cand["generator"], record, in_inner))
            failures += not cand["bookkeeping_ok"]
    fields, galois, conflicts, inner_found = [], 0, 0, 0
    for fp in sorted(groups, key=repr):
        members = sorted(groups[fp], key=lambda m: m[0])
        conflicts += _conflicts([m[1] for m in members])
        inner_found += any(m[2] for m in members)
        representative = members[0][1]
        if representative.galois:
            galois += 1
        else:
            fields.append(representative)
    stable = inner_found == len(groups) and not partial
    return CensusResult(
        q=q,
        M=M,
        bounds=bounds,
        fields=tuple(fields),
        galois_count=galois,
        stable=stable,
        partial=partial,
        fingerprint_conflicts=conflicts,
        generators_scanned=sum(p["scanned"] for p in partitions),
        bookkeeping_failures=failures,
    )


def _conflicts(members: Sequence[FieldRecord], degree: int = FINGERPRINT_DEGREE + 1) -> int:
    """Members sharing a fingerprint but splitting differently at some prime of the next degree."""
    if len(members) < 2:
        return 0
    first = members[0]
    return sum(
        any(other.splitting_at(P) != first.splitting_at(P) for P in primes_of_degree(first.q, degree))
        for other in members[1:]
    )


def enumerate_fields(
    q: int,
    M: int,  # noqa: N803
    bounds: EnumBounds | None = None,
    *,
    mapper: Mapper = map,
    log_path: Path | None = None,
    fingerprint_degree: int = FINGERPRINT_DEGREE,
    seed: int = 0,
) -> CensusResult:
    """S₃ cubic fields with global discriminant exponent M found in the widened generator box.

    The stability flag is set when every field found in the widened box
    already has a generator inside the base box.

    Raises:
        DomainError: if M is odd.
        BudgetExceededError: if the box holds more generators than the budget;
            ``partial`` carries the census of the partitions that fit.
    """
    if M % 2:
        raise DomainError(f"global discriminant exponents are even, got M={M}")
    fq = get_field(q)
    bounds = bounds or EnumBounds.for_exponent(M)
    box = EnumBounds(bounds.deg_a + bounds.margin, bounds.deg_b + bounds.margin, bounds.margin, bounds.budget)
    per_partition = q ** (box.deg_b + 1)
    all_a = list(polys_up_to_degree(fq, box.deg_a))
    fits = max(0, min(len(all_a), bounds.budget // per_partition))
    partial = fits < len(all_a)
    header = _log_header(q, M, box, fingerprint_degree)
    done = read_candidate_log(log_path, header) if log_path else {}
    if log_path and not done:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        log_path.write_text(json.dumps(header, sort_keys=True) + "\n", encoding="utf-8")
    tasks = [
        PartitionTask(q, M, A.coeffs, box.deg_b, fingerprint_degree, seed) for A in all_a[:fits] if A.coeffs not in done
    ]
    LOGGER.info(f"Census q={q}, M={M}: {len(all_a[:fits])} A-partitions ({len(done)} resumed), box {box.deg_a}/{box.deg_b}.")
    fresh = {}
    for entry in mapper(scan_partition, tasks):
        fresh[tuple(entry["A"])] = entry
        if log_path:
            _append_log(log_path, {"kind": "partition", **entry})
    ordered = [fresh.get(A.coeffs) or done[A.coeffs] for A in all_a[:fits]]
    result = _merge(q, M, box, ordered, partial)
    LOGGER.info(
        f"Census q={q}, M={M}: {result.count} fields, {result.galois_count} Galois, "
        f"stable={result.stable}, conflicts={result.fingerprint_conflicts}"
    )
    if partial:
        raise BudgetExceededError(f"generator box needs {len(all_a) * per_partition} nodes, budget {bounds.budget}", result)
    return result


#####################################
# Counting with splitting conditions
#####################################


def _validate_conditions(conditions: Sequence[tuple[PolyFq, SplittingType]]) -> None:
    primes = [P for P, _ in conditions]
    for P in primes:
        if not P.is_monic or not is_irreducible(P):
            raise DomainError(f"{P} is not a monic prime")
    if len(set(primes)) != len(primes):
        raise DomainError("condition primes must be distinct")


def count_fields_split(result: CensusResult, conditions: Sequence[tuple[PolyFq, SplittingType]] = ()) -> int:
    """Number of census fields with the prescribed splitting type at every listed prime."""
    _validate_conditions(conditions)
    return sum(all(rec.splitting_at(P) is stype for P, stype in conditions) for rec in result.fields)


def field_counts_by_type(result: CensusResult, P: PolyFq) -> dict[SplittingType, int]:  # noqa: N803
    counts = dict.fromkeys(NONZERO_TYPES, 0)
    for rec in result.fields:
        counts[rec.splitting_at(P)] += 1
    return counts


#####################################
# Canonical forms and orbit counts
#####################################


def _degree_key(f: CubicForm) -> tuple:
    return tuple(x.deg for x in f.coeffs) + tuple(x.coeffs for x in f.coeffs)


def _normalize(f: CubicForm) -> CubicForm:
    """Least representative of f under lower-triangular base changes.

    Requires a ≠ 0. The result has a monic and deg b < deg a, which fixes it
    up to the scalings (a, ub, u²c, u³d); the least of those is returned.
    """
    fq = f.a.field
    lc = f.a.lc
    a, b = f.a.monic(), f.b
    c, d = f.c.scale(lc), f.d.scale(fq.mul(lc, lc))
    r = -(b // (a * 3))
    if not r.is_zero:
        a, b, c, d = gl2_act(GL2Elem.lower_shear(r), CubicForm(a, b, c, d)).coeffs
    images = (
        CubicForm(a, b.scale(u), c.scale(fq.mul(u, u)), d.scale(fq.pow(u, 3)))
        for u in range(1, fq.q)
    )
    return min(images, key=_degree_key)


def _base_change(v: tuple[PolyFq, PolyFq]) -> GL2Elem:
    """A matrix in GL₂(R) with first row v (v primitive)."""
    x0, y0 = v
    _, s, t = xgcd(x0, y0)
    return GL2Elem(x0, y0, -t, s)


def _translate(f: CubicForm, v: tuple[PolyFq, PolyFq], max_deg: int | None = None) -> CubicForm | None:
    """Normalized form whose leading coefficient is f(v); None if f(v) = 0 or deg f(v) > max_deg."""
    value = f.evaluate(*v)
    if value.is_zero or (max_deg is not None and value.deg > max_deg):
        return None
    return _normalize(gl2_act(_base_change(v), f))


@lru_cache(maxsize=None)
def _primitive_vectors(q: int, reach: int) -> tuple[tuple[PolyFq, PolyFq], ...]:
    """Primitive (x, y) with deg ≤ reach, one per F_q*-line (larger-degree entry monic)."""
    fq = get_field(q)
    polys = list(polys_up_to_degree(fq, reach))
    out = []
    for x, y in itertools.product(polys, repeat=2):
        lead = x if x.deg >= y.deg else y
        if lead.is_monic and gcd(x, y).deg == 0:
            out.append((x, y))
    return tuple(out)


@lru_cache(maxsize=None)
def _orbit_vectors(q: int, max_deg: int) -> tuple[tuple[PolyFq, PolyFq], ...]:
    """P¹(F_q) plus the first rows of the shears by c·T^k, 1 ≤ k ≤ max_deg."""
    fq = get_field(q)
    one = PolyFq.one(fq)
    shears = [
        pair
        for k in range(1, max_deg + 1)
        for c in range(1, q)
        for pair in ((one, PolyFq.monomial(fq, c, k)), (PolyFq.monomial(fq, c, k), one))
    ]
    return _primitive_vectors(q, 0) + tuple(shears)


def _best_translate(f: CubicForm, vectors: Iterable[tuple[PolyFq, PolyFq]]) -> CubicForm:
    images = (g for v in vectors if (g := _translate(f, v)) is not None)
    return min(images, key=_degree_key)


def canonicalize(f: CubicForm, reach: int | None = None) -> CubicForm:
    """Fixpoint of descent on (degrees, coefficients) over base changes.

    One step replaces f by the least normalized form f(v) can lead, over all
    primitive v of degree ≤ ``reach`` (default min(max coefficient degree, 1)).
    This move set contains the swap, the shears by F_q·T^k and all of
    GL₂(F_q), so f and g·f give the same result for every g ∈ GL₂(F_q).
    """
    if discriminant(f).is_zero:
        raise DomainError(f"{f} has zero discriminant")
    reach = min(f.max_degree(), 1) if reach is None else reach
    vectors = _primitive_vectors(f.a.field.q, reach)
    current = _best_translate(f, vectors)
    while True:
        best = _best_translate(current, vectors)
        if _degree_key(best) >= _degree_key(current):
            return current
        current = best


@dataclass(frozen=True)
class OrbitCount:
    """GL₂(R)-orbits of forms of |Disc| = q^ℓ in one σ-class.

    ``stable`` compares the count with one taken at margin + 1; it is None
    when that wider pass does not fit the budget.
    """

    ell: int
    sigma: str
    orbits: int
    irreducible: int
    galois: int
    reducible: int
    weighted: int
    forms_scanned: int
    stable: bool | None = None


def stabilizer_weight(f: CubicForm) -> int:
    """3 for Galois irreducible forms, 1 otherwise."""
    if is_irreducible_form(f) and poly_sqrt(discriminant(f)) is not None:
        return 3
    return 1


def _poly_rows(fq: FqField, max_deg: int) -> np.ndarray:
    """Coefficient rows of every polynomial of degree ≤ max_deg; the first q^(k+1) have degree ≤ k."""
    idx = np.arange(fq.q ** (max_deg + 1))
    return np.stack([(idx // fq.q**i) % fq.q for i in range(max_deg + 1)], axis=1)


def _rows_plus(fq: FqField, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    width = max(x.shape[1], y.shape[1])
    x = np.pad(x, ((0, 0), (0, width - x.shape[1])))
    y = np.pad(y, ((0, 0), (0, width - y.shape[1])))
    return fq.add_table[x, y]


def _rows_times(fq: FqField, p: PolyFq, rows: np.ndarray) -> np.ndarray:
    n, width = rows.shape
    out = np.zeros((n, width + max(len(p.coeffs), 1) - 1), dtype=np.int64)
    for i, c in enumerate(p.coeffs):
        if c:
            out[:, i : i + width] = fq.add_table[out[:, i : i + width], fq.mul_table[c][rows]]
    return out


def _rows_square(fq: FqField, rows: np.ndarray) -> np.ndarray:
    n, width = rows.shape
    out = np.zeros((n, 2 * width - 1), dtype=np.int64)
    for i, j in itertools.product(range(width), repeat=2):
        out[:, i + j] = fq.add_table[out[:, i + j], fq.mul_table[rows[:, i], rows[:, j]]]
    return out


def _rows_degree(rows: np.ndarray) -> np.ndarray:
    nonzero = rows != 0
    last = rows.shape[1] - 1 - np.argmax(nonzero[:, ::-1], axis=1)
    return np.where(nonzero.any(axis=1), last, -1)


def _orbit_prefixes(fq: FqField, max_deg: int) -> Iterator[tuple[PolyFq, PolyFq, PolyFq]]:
    """(a, b, c) with a monic, deg b < deg a and deg c ≤ max_deg."""
    cs = list(polys_up_to_degree(fq, max_deg))
    for alpha in range(max_deg + 1):
        bs = list(polys_up_to_degree(fq, alpha - 1)) if alpha else [PolyFq.zero(fq)]
        for a in monic_polys(fq, alpha):
            for b, c in itertools.product(bs, cs):
                yield a, b, c


def _orbit_survivors(
    fq: FqField, ell: int, sigma: SigmaClass | SplittingType, max_deg: int
) -> tuple[list[CubicForm], int]:
    """Normalized-shape forms in the box with deg Disc = ℓ and the given σ, and the number scanned.

    Disc = K + L·d − 27a²d² with K, L fixed by (a, b, c). Once deg d exceeds
    (ℓ − 2α)/2, deg L − 2α and deg K/2 − α the d² term alone sets the degree,
    so d stops there; the remaining d are swept as one array.
    """
    d_rows = _poly_rows(fq, max_deg)
    survivors: list[CubicForm] = []
    scanned = 0
    for a, b, c in _orbit_prefixes(fq, max_deg):
        alpha = a.deg
        const = b * b * c * c - a * c * c * c * 4
        lin = a * b * c * 18 - b * b * b * 4
        caps = [(ell - 2 * alpha) // 2]
        if not lin.is_zero:
            caps.append(lin.deg - 2 * alpha)
        if not const.is_zero:
            caps.append(const.deg // 2 - alpha)
        cap = max(min(max(caps), max_deg), -1)
        rows = d_rows[: fq.q ** (cap + 1)]
        scanned += len(rows)
        total = np.tile(np.array(const.coeffs or (0,), dtype=np.int64), (len(rows), 1))
        total = _rows_plus(fq, total, _rows_times(fq, lin, rows))
        total = _rows_plus(fq, total, _rows_times(fq, -(a * a * 27), _rows_square(fq, rows)))
        for idx in np.flatnonzero(_rows_degree(total) == ell):
            f = CubicForm(a, b, c, PolyFq(fq, tuple(int(x) for x in rows[idx])))
            found = classify_at_infinity(f).sigma
            if (found if isinstance(sigma, SigmaClass) else found.coarse) == sigma:
                survivors.append(f)
    return survivors, scanned


def _orbit_classes(survivors: Sequence[CubicForm], max_deg: int) -> list[list[CubicForm]]:
    """Connected components of the survivors under base changes by P¹(F_q) and shears."""
    if not survivors:
        return []
    members = set(survivors)
    vectors = _orbit_vectors(survivors[0].a.field.q, max_deg)
    neighbours: dict[CubicForm, set[CubicForm]] = {f: set() for f in survivors}
    for f in survivors:
        for v in vectors:
            g = _translate(f, v, max_deg)
            if g is not None and g in members and g != f:
                neighbours[f].add(g)
                neighbours[g].add(f)
    seen: set[CubicForm] = set()
    classes = []
    for start in survivors:
        if start in seen:
            continue
        component = {start}
        queue = deque([start])
        while queue:
            for g in neighbours[queue.popleft()]:
                if g not in component:
                    component.add(g)
                    queue.append(g)
        seen |= component
        classes.append(sorted(component, key=_degree_key))
    return classes


def _count_orbits(q: int, ell: int, sigma: SigmaClass | SplittingType, max_deg: int, budget: int) -> OrbitCount:
    fq = get_field(q)
    prefixes = q ** (max_deg + 1) * sum(q ** (2 * alpha) for alpha in range(max_deg + 1))
    if prefixes > budget:
        raise BudgetExceededError(f"{prefixes} (a, b, c) prefixes exceed the budget {budget}")
    survivors, scanned = _orbit_survivors(fq, ell, sigma, max_deg)
    representatives = [cls[0] for cls in _orbit_classes(survivors, max_deg)]
    irreducible = [f for f in representatives if is_irreducible_form(f)]
    return OrbitCount(
        ell=ell,
        sigma=sigma.label if isinstance(sigma, SigmaClass) else sigma.value,
        orbits=len(representatives),
        irreducible=len(irreducible),
        galois=sum(stabilizer_weight(f) == 3 for f in irreducible),
        reducible=len(representatives) - len(irreducible),
        weighted=sum(stabilizer_weight(f) for f in irreducible),
        forms_scanned=scanned,
    )


def enumerate_form_orbits(
    q: int,
    ell: int,
    sigma: SigmaClass | SplittingType,
    bounds: EnumBounds | None = None,
) -> OrbitCount:
    """Orbits of forms with coefficient degrees ≤ ℓ/4 + margin, deg Disc = ℓ and the given σ.

    Each orbit is met through its normalized members (a monic, deg b < deg a):
    a is fixed up to scaling and deg d is cut by the degree Disc must have.
    Members joined by a base change are one orbit. ``weighted`` counts
    irreducible orbits with their stabilizer weight; reducible orbits are
    reported separately. The ``budget`` caps the (a, b, c) prefixes, each of
    which is one array sweep over d.
    """
    margin = bounds.margin if bounds else 1
    budget = bounds.budget if bounds else DEFAULT_BUDGET
    max_deg = ell // 4 + margin
    result = _count_orbits(q, ell, sigma, max_deg, budget)
    try:
        wider = _count_orbits(q, ell, sigma, max_deg + 1, budget)
        result = replace(result, stable=wider.orbits == result.orbits)
    except BudgetExceededError as exc:
        LOGGER.warning(f"Stability pass at margin {margin + 1} skipped: {exc}")
    LOGGER.info(f"Form orbits q={q}, ell={ell}, sigma={result.sigma}: {result.orbits} orbits (stable={result.stable})")
    return result


#####################################
# List all exports
#####################################

__all__ = [
    "FINGERPRINT_DEGREE",
    "FieldRecord",
    "fingerprint",
    "EnumBounds",
    "CensusResult",
    "PartitionTask",
    "is_reduced_generator",
    "generator_form",
    "scan_partition",
    "read_candidate_log",
    "enumerate_fields",
    "count_fields_split",
    "field_counts_by_type",
    "canonicalize",
    "OrbitCount",
    "stabilizer_weight",
    "enumerate_form_orbits",
]
