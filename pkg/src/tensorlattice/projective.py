"""The projective Riesz seminorm on the tensor model, as certified intervals.

For Riesz seminorms p on Q^n and q on Q^m, the projective seminorm of a
tensor element u is

    (p (x) q)(u) = inf { sum_k p(x_k) q(y_k) : x_k, y_k >= 0,
                         |u| <= sum_k x_k (x) y_k  entrywise }.

The infimum is a bilinear optimization problem, so this module never returns
a bare number for it. The contract is a `SeminormCertificate`: an interval
[lower, upper] where

* the upper bound carries a `Decomposition` witness (explicit feasible
  x_k, y_k), and
* the lower bound carries a `DualCertificate` witness: an entrywise
  nonnegative matrix M with B(x, y) = sum M_ij x_i y_j dominated by
  p(x) q(y) on the positive cone, whence sum M_ij |u_ij| <= (p (x) q)(u).

Both witnesses re-verify exactly in rational arithmetic. For the pure kind
pairs (weighted l1 both sides, weighted order-unit both sides) closed forms
exist and the certificates close to gap 0; the weighted mixed pairs also
close in practice through row/column decompositions matched by per-row or
per-column dual mass, but no closed-form claim is exported for them
(`seminorm_closed_form` returns None).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .elements import (
    WEIGHTED_L1,
    WEIGHTED_ORDER_UNIT,
    DimensionMismatch,
    LatticeElement,
    RieszSeminorm,
    SeminormFamily,
    UnsupportedSeminormKind,
)
from .jsonio import FormatError, as_fraction, fraction_str, require_key
from .rng import SplitStream
from .simplex import InfeasibleLP, LinearProgram, UnboundedLP
from .tensor import (
    Membership,
    TensorElement,
    TensorNbhd,
    dominating_rank_one,
    matrix_unit,
    nbhd_member,
    rank_one,
    sample_tensor_box,
)

_WEIGHTED = (WEIGHTED_L1, WEIGHTED_ORDER_UNIT)


def _require_weighted(p: RieszSeminorm, q: RieszSeminorm):
    for name, s in (("p", p), ("q", q)):
        if s.kind not in _WEIGHTED:
            raise UnsupportedSeminormKind(
                f"{name} has kind {s.kind!r}; certificates need weighted l1 or "
                f"weighted order-unit seminorms"
            )


def _check_shapes(p: RieszSeminorm, q: RieszSeminorm, u: TensorElement):
    if (p.dim, q.dim) != u.shape:
        raise DimensionMismatch(
            f"seminorms over dims ({p.dim},{q.dim}) applied to tensor of shape {u.shape}"
        )


@dataclass(frozen=True)
class Budget:
    """Search effort knobs for `seminorm_certify`.

    k_max bounds the number of decomposition terms (default: the entrywise
    count n*m, which is always sufficient for feasibility); restarts is the
    number of random alternating-minimization starts per term count.
    """

    k_max: int | None = None
    restarts: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.k_max is not None and self.k_max < 1:
            raise ValueError(f"k_max must be at least 1, got {self.k_max}")
        if self.restarts < 0:
            raise ValueError(f"restarts must be nonnegative, got {self.restarts}")

    def resolve_k(self, shape: tuple[int, int]) -> int:
        return self.k_max if self.k_max is not None else shape[0] * shape[1]


@dataclass(frozen=True)
class Decomposition:
    """Feasible terms witnessing an upper bound: |u| <= sum x_k (x) y_k."""

    shape: tuple[int, int]
    terms: tuple[tuple[LatticeElement, LatticeElement], ...]

    def __post_init__(self):
        n, m = self.shape
        for k, (x, y) in enumerate(self.terms):
            if x.dim != n or y.dim != m:
                raise DimensionMismatch(f"term {k} has dims ({x.dim},{y.dim}), expected ({n},{m})")
            for name, v in (("x", x), ("y", y)):
                if any(c < 0 for c in v.coords):
                    raise ValueError(f"term {k} has a negative {name} coordinate")

    def bound(self) -> TensorElement:
        total = TensorElement.zero(*self.shape)
        for x, y in self.terms:
            total = total + rank_one(x, y)
        return total

    def dominates(self, u: TensorElement) -> bool:
        return abs(u).le(self.bound())

    def value(self, p: RieszSeminorm, q: RieszSeminorm) -> Fraction:
        return sum((p(x) * q(y) for x, y in self.terms), Fraction(0))

    def verify(self, p: RieszSeminorm, q: RieszSeminorm, u: TensorElement,
               claimed_value=None) -> bool:
        if not self.dominates(u):
            return False
        return claimed_value is None or self.value(p, q) == as_fraction(claimed_value)

    def concat(self, other: "Decomposition") -> "Decomposition":
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} vs {other.shape}")
        return Decomposition(self.shape, self.terms + other.terms)

    def scaled(self, alpha) -> "Decomposition":
        alpha = abs(as_fraction(alpha))
        return Decomposition(
            self.shape, tuple((x.scale(alpha), y) for x, y in self.terms)
        )

    def to_json(self) -> list:
        return [{"x": x.to_json(), "y": y.to_json()} for x, y in self.terms]

    @staticmethod
    def from_json(data, shape: tuple[int, int], field_: str = "decomposition") -> "Decomposition":
        if not isinstance(data, list):
            raise FormatError(field_, "expected a list of terms")
        terms = []
        for k, item in enumerate(data):
            x = LatticeElement.from_json(require_key(item, "x", f"{field_}[{k}]"), f"{field_}[{k}].x")
            y = LatticeElement.from_json(require_key(item, "y", f"{field_}[{k}]"), f"{field_}[{k}].y")
            terms.append((x, y))
        return Decomposition(shape, tuple(terms))


@dataclass(frozen=True)
class DualCertificate:
    """An entrywise nonnegative bilinear form dominated by p(x)q(y) on x,y >= 0.

    The domination check is a finite criterion per kind pair; evaluating the
    form at |u| yields the certified lower bound.
    """

    matrix: TensorElement

    def __post_init__(self):
        bad = self.matrix.first_negative_entry()
        if bad is not None:
            raise ValueError(f"dual matrix entry {bad} is negative")

    def value(self, u: TensorElement) -> Fraction:
        self.matrix._check(u)
        return sum(
            (m * abs(c) for mr, ur in zip(self.matrix.entries, u.entries)
             for m, c in zip(mr, ur)),
            Fraction(0),
        )

    def dominates(self, p: RieszSeminorm, q: RieszSeminorm) -> bool:
        """B(x,y) <= p(x)q(y) for all x,y >= 0, by the kind-pair criterion.

        l1 weights act as per-coordinate budgets; order-unit weights enter
        through the extreme rays of the unit ball's positive face:

        * (l1, l1): M_ij <= w_i v_j everywhere;
        * (ou, ou): sum_ij M_ij w_i v_j <= 1;
        * (l1, ou): sum_j M_ij v_j <= w_i for every row i;
        * (ou, l1): sum_i M_ij w_i <= v_j for every column j.
        """
        _require_weighted(p, q)
        n, m = self.matrix.shape
        if (p.dim, q.dim) != (n, m):
            raise DimensionMismatch(f"dual matrix {self.matrix.shape} vs seminorm dims ({p.dim},{q.dim})")
        w, v = p.weights, q.weights
        M = self.matrix.entries
        if p.kind == WEIGHTED_L1 and q.kind == WEIGHTED_L1:
            return all(M[i][j] <= w[i] * v[j] for i in range(n) for j in range(m))
        if p.kind == WEIGHTED_ORDER_UNIT and q.kind == WEIGHTED_ORDER_UNIT:
            total = sum(
                (M[i][j] * w[i] * v[j] for i in range(n) for j in range(m)),
                Fraction(0),
            )
            return total <= 1
        if p.kind == WEIGHTED_L1:
            return all(
                sum((M[i][j] * v[j] for j in range(m)), Fraction(0)) <= w[i]
                for i in range(n)
            )
        return all(
            sum((M[i][j] * w[i] for i in range(n)), Fraction(0)) <= v[j]
            for j in range(m)
        )

    def to_json(self) -> dict:
        return {"M": self.matrix.to_json()["entries"]}

    @staticmethod
    def from_json(data, field_: str = "dual") -> "DualCertificate":
        entries = require_key(data, "M", field_)
        return DualCertificate(TensorElement.from_json({"entries": entries}, f"{field_}.M"))


@dataclass(frozen=True)
class SeminormCertificate:
    """A certified interval for (p (x) q)(u), with both witnesses attached."""

    lower: Fraction
    upper: Fraction
    dual: DualCertificate
    decomposition: Decomposition

    @property
    def gap(self) -> Fraction:
        return self.upper - self.lower

    def verify(self, p: RieszSeminorm, q: RieszSeminorm, u: TensorElement) -> bool:
        return (
            self.lower <= self.upper
            and self.dual.dominates(p, q)
            and self.dual.value(u) == self.lower
            and self.decomposition.verify(p, q, u, self.upper)
        )

    def to_json(self) -> dict:
        return {
            "lower": fraction_str(self.lower),
            "upper": fraction_str(self.upper),
            "gap": fraction_str(self.gap),
            "dual": self.dual.to_json(),
            "decomposition": self.decomposition.to_json(),
        }

    @staticmethod
    def from_json(data, shape: tuple[int, int], field_: str = "certificate") -> "SeminormCertificate":
        lower = as_fraction(require_key(data, "lower", field_), f"{field_}.lower")
        upper = as_fraction(require_key(data, "upper", field_), f"{field_}.upper")
        dual = DualCertificate.from_json(require_key(data, "dual", field_), f"{field_}.dual")
        dec = Decomposition.from_json(
            require_key(data, "decomposition", field_), shape, f"{field_}.decomposition"
        )
        return SeminormCertificate(lower, upper, dual, dec)


# ---------------------------------------------------------------------------
# Closed forms and dual lower bounds
# ---------------------------------------------------------------------------


def seminorm_closed_form(p: RieszSeminorm, q: RieszSeminorm, u: TensorElement):
    """Exact value for the pure kind pairs; None when no closed form is exported.

    * weighted l1 both sides: sum_ij w_i v_j |u_ij| (entrywise decomposition
      meets the product-weight dual);
    * weighted order-unit both sides: max_ij |u_ij| / (w_i v_j) (a scaled
      rank-one of the unit vectors meets the point-mass dual).
    """
    _check_shapes(p, q, u)
    if p.kind == WEIGHTED_L1 and q.kind == WEIGHTED_L1:
        return sum(
            (p.weights[i] * q.weights[j] * abs(c)
             for i, row in enumerate(u.entries) for j, c in enumerate(row)),
            Fraction(0),
        )
    if p.kind == WEIGHTED_ORDER_UNIT and q.kind == WEIGHTED_ORDER_UNIT:
        return max(
            abs(c) / (p.weights[i] * q.weights[j])
            for i, row in enumerate(u.entries)
            for j, c in enumerate(row)
        )
    return None


def _argmax(pairs):
    """Index of the largest value, first occurrence (deterministic)."""
    best_i, best = None, None
    for i, val in pairs:
        if best is None or val > best:
            best_i, best = i, val
    return best_i, best


def dual_lower_bound(p: RieszSeminorm, q: RieszSeminorm, u: TensorElement) -> DualCertificate:
    """The optimal entrywise-nonnegative dual form, built in closed form.

    Each kind pair's domination criterion is a transportation-style budget;
    the optimum loads the budget greedily on the largest |u| ratios:

    * (l1, l1): the full product matrix w (x) v;
    * (ou, ou): all mass on one entry maximizing |u_ij| / (w_i v_j);
    * (l1, ou): each row's budget w_i on a column maximizing |u_ij| / v_j;
    * (ou, l1): symmetrically per column.

    The construction is re-verified against the criterion before returning.
    """
    _require_weighted(p, q)
    _check_shapes(p, q, u)
    n, m = u.shape
    w, v = p.weights, q.weights
    M = [[Fraction(0)] * m for _ in range(n)]
    if p.kind == WEIGHTED_L1 and q.kind == WEIGHTED_L1:
        for i in range(n):
            for j in range(m):
                M[i][j] = w[i] * v[j]
    elif p.kind == WEIGHTED_ORDER_UNIT and q.kind == WEIGHTED_ORDER_UNIT:
        (i, j), _ = _argmax(
            (((i, j), abs(u.entries[i][j]) / (w[i] * v[j]))
             for i in range(n) for j in range(m))
        )
        M[i][j] = 1 / (w[i] * v[j])
    elif p.kind == WEIGHTED_L1:
        for i in range(n):
            j, _ = _argmax(((j, abs(u.entries[i][j]) / v[j]) for j in range(m)))
            M[i][j] = w[i] / v[j]
    else:
        for j in range(m):
            i, _ = _argmax(((i, abs(u.entries[i][j]) / w[i]) for i in range(n)))
            M[i][j] = v[j] / w[i]
    cert = DualCertificate(TensorElement(tuple(tuple(row) for row in M)))
    if not cert.dominates(p, q):  # pragma: no cover - construction is tight
        raise RuntimeError("dual construction violated its own criterion")
    return cert


def dual_lower_bound_lp(p: RieszSeminorm, q: RieszSeminorm, u: TensorElement) -> Fraction:
    """The same dual optimum via a generic linear program.

    Kept as an independent cross-check of the closed-form construction; the
    production path never calls it.
    """
    _require_weighted(p, q)
    _check_shapes(p, q, u)
    n, m = u.shape
    w, v = p.weights, q.weights
    lp = LinearProgram()
    M = [[lp.var(cost=-abs(u.entries[i][j])) for j in range(m)] for i in range(n)]
    if p.kind == WEIGHTED_L1 and q.kind == WEIGHTED_L1:
        for i in range(n):
            for j in range(m):
                lp.add({M[i][j]: 1}, "<=", w[i] * v[j])
    elif p.kind == WEIGHTED_ORDER_UNIT and q.kind == WEIGHTED_ORDER_UNIT:
        lp.add({M[i][j]: w[i] * v[j] for i in range(n) for j in range(m)}, "<=", 1)
    elif p.kind == WEIGHTED_L1:
        for i in range(n):
            lp.add({M[i][j]: v[j] for j in range(m)}, "<=", w[i])
    else:
        for j in range(m):
            lp.add({M[i][j]: w[i] for i in range(n)}, "<=", v[j])
    value, _ = lp.minimize()
    return -value


# ---------------------------------------------------------------------------
# Upper bounds: decomposition candidates and alternating minimization
# ---------------------------------------------------------------------------


def _entrywise_candidate(u: TensorElement) -> Decomposition:
    n, m = u.shape
    terms = [
        (LatticeElement.unit(n, i, abs(c)), LatticeElement.unit(m, j))
        for i, row in enumerate(u.entries)
        for j, c in enumerate(row)
        if c != 0
    ]
    return Decomposition(u.shape, tuple(terms))


def _dominating_candidate(u: TensorElement) -> Decomposition:
    a, b = dominating_rank_one(abs(u))
    return Decomposition(u.shape, ((a, b),))


def _scaled_unit_candidate(p: RieszSeminorm, q: RieszSeminorm, u: TensorElement) -> Decomposition:
    c = Fraction(0)
    for i, row in enumerate(u.entries):
        for j, e in enumerate(row):
            if e == 0:
                continue
            denom = p.weights[i] * q.weights[j]
            if denom == 0:
                return Decomposition(u.shape, ())  # no multiple of w (x) v covers this entry
            c = max(c, abs(e) / denom)
    if c == 0:
        return Decomposition(u.shape, ())
    w = LatticeElement(tuple(p.weights))
    v = LatticeElement(tuple(q.weights))
    return Decomposition(u.shape, ((w.scale(c), v),))


def _row_candidate(u: TensorElement) -> Decomposition:
    n, m = u.shape
    terms = []
    for i, row in enumerate(u.entries):
        if any(c != 0 for c in row):
            terms.append((LatticeElement.unit(n, i), LatticeElement(tuple(abs(c) for c in row))))
    return Decomposition(u.shape, tuple(terms))


def _col_candidate(u: TensorElement) -> Decomposition:
    n, m = u.shape
    terms = []
    for j in range(m):
        col = [abs(u.entries[i][j]) for i in range(n)]
        if any(c != 0 for c in col):
            terms.append((LatticeElement(tuple(col)), LatticeElement.unit(m, j)))
    return Decomposition(u.shape, tuple(terms))


def _half_step(p: RieszSeminorm, fixed, u: TensorElement, left: bool):
    """Optimal x-side (or y-side) given the other side, as one exact LP.

    Minimizes sum_k p(x_k) * coeff_k subject to sum_k x_k (x) y_k >= |u| and
    x_k >= 0, where coeff_k is the fixed side's seminorm value. For weighted
    l1 the objective is already linear; weighted order-unit goes through one
    epigraph variable per term.
    """
    n, m = u.shape
    dim = n if left else m
    k = len(fixed)
    lp = LinearProgram()
    xs = []
    for t in range(k):
        coeff = fixed[t][1]
        if p.kind == WEIGHTED_L1:
            xs.append([lp.var(cost=p.weights[i] * coeff) for i in range(dim)])
        else:
            tv = lp.var(cost=coeff)
            xs.append([lp.var() for _ in range(dim)])
            for i in range(dim):
                # epigraph of max_i x_i / w_i: x_{t,i} <= w_i * tv
                lp.add({xs[t][i]: 1, tv: -p.weights[i]}, "<=", 0)
    au = abs(u)
    for i in range(n):
        for j in range(m):
            coeffs = {}
            for t in range(k):
                other = fixed[t][0]
                c = other.coords[j] if left else other.coords[i]
                if c != 0:
                    var = xs[t][i] if left else xs[t][j]
                    coeffs[var] = coeffs.get(var, Fraction(0)) + c
            lp.add(coeffs, ">=", au.entries[i][j])
    value, assignment = lp.minimize()
    sides = [
        LatticeElement(tuple(assignment[xs[t][i]] for i in range(dim)))
        for t in range(k)
    ]
    return value, sides


def _alternating_minimization(p, q, u, k: int, rng: SplitStream, iterations: int = 8):
    """Exact alternating LP descent over k-term decompositions."""
    n, m = u.shape
    ys = []
    for t in range(k):
        ys.append(LatticeElement(
            tuple(rng.fraction(0, 2, 4) + Fraction(1, 8) for _ in range(m))
        ))
    best = None
    for _ in range(iterations):
        try:
            fixed_y = [(y, q(y)) for y in ys]
            _, xs = _half_step(p, fixed_y, u, left=True)
            fixed_x = [(x, p(x)) for x in xs]
            _, ys = _half_step(q, fixed_x, u, left=False)
        except (InfeasibleLP, UnboundedLP):
            return None  # a fixed side with zero rows can strand the LP
        dec = Decomposition(u.shape, tuple(zip(xs, ys)))
        if not dec.dominates(u):  # pragma: no cover - LP feasibility guarantees this
            return None
        value = dec.value(p, q)
        if best is not None and value >= best[0]:
            return best
        best = (value, dec)
    return best


def seminorm_certify(p: RieszSeminorm, q: RieszSeminorm, u: TensorElement,
                     budget: Budget | None = None) -> SeminormCertificate:
    """A certified interval for (p (x) q)(u).

    The lower bound is the closed-form optimal dual. The upper bound is the
    best feasible decomposition among structural candidates (entrywise,
    dominating rank-one, scaled unit rank-one, rows, columns, filtered by
    the term budget) refined by exact alternating minimization when a gap
    remains. Every bound re-verifies exactly before the certificate is
    returned.
    """
    budget = budget or Budget()
    _require_weighted(p, q)
    _check_shapes(p, q, u)
    if u.is_zero():
        zero = Decomposition(u.shape, ())
        dual = DualCertificate(TensorElement.zero(*u.shape))
        return SeminormCertificate(Fraction(0), Fraction(0), dual, zero)

    dual = dual_lower_bound(p, q, u)
    lower = dual.value(u)

    k_max = budget.resolve_k(u.shape)
    candidates = [
        _dominating_candidate(u),
        _scaled_unit_candidate(p, q, u),
        _row_candidate(u),
        _col_candidate(u),
        _entrywise_candidate(u),
    ]
    # The dominating rank-one always survives the filter (one term, u != 0),
    # so best is never left unset.
    best: tuple[Fraction, Decomposition] | None = None
    for dec in candidates:
        if not dec.terms or len(dec.terms) > k_max:
            continue
        value = dec.value(p, q)
        if best is None or value < best[0]:
            best = (value, dec)

    if best[0] > lower and budget.restarts > 0:
        rng = SplitStream(budget.seed).split("altmin")
        for k in range(1, k_max + 1):
            for start in range(budget.restarts):
                found = _alternating_minimization(p, q, u, k, rng.split(k, start))
                if found is not None and found[0] < best[0]:
                    best = found
                if best[0] <= lower:
                    break
            if best[0] <= lower:
                break

    upper, dec = best
    cert = SeminormCertificate(lower, upper, dual, dec)
    if not cert.verify(p, q, u):  # pragma: no cover - all witnesses re-check
        raise RuntimeError("certificate failed exact re-verification")
    return cert


# ---------------------------------------------------------------------------
# Property checks
# ---------------------------------------------------------------------------


def _report(samples):
    return {"samples": samples, "violations": 0, "witnesses": []}


def _violation(rep, index, payload=None):
    rep["violations"] += 1
    if len(rep["witnesses"]) < 3:
        entry = {"index": index}
        if payload:
            entry.update(payload)
        rep["witnesses"].append(entry)


def _random_element(rng: SplitStream, dim: int, lo=-3, hi=3, denominator=4) -> LatticeElement:
    return LatticeElement(tuple(rng.fraction(lo, hi, denominator) for _ in range(dim)))


def cross_property_check(p: RieszSeminorm, q: RieszSeminorm, *, samples: int, seed: int,
                         budget: Budget | None = None) -> dict:
    """On rank-one elements the projective seminorm is the product seminorm.

    For every sampled pair the certificate must satisfy
    lower = p(x0) q(y0) = upper exactly when both kinds are pure, and
    lower = p(x0) q(y0) exactly (via the coordinate-evaluation dual) in the
    mixed cases; in this model the row/column decompositions close the upper
    bound to the same value, and the check records that too.
    """
    _require_weighted(p, q)
    rng = SplitStream(seed).split("cross-property")
    rep = _report(samples)
    pure = p.kind == q.kind
    for s in range(samples):
        srng = rng.split(s)
        x0 = _random_element(srng.split("x"), p.dim)
        y0 = _random_element(srng.split("y"), q.dim)
        if s == 0:
            x0 = LatticeElement.zero(p.dim)  # pin the trivial case
        u = rank_one(x0, y0)
        expected = p(x0) * q(y0)
        cert = seminorm_certify(p, q, u, budget)
        ok = cert.lower == expected and cert.upper == expected
        if not ok:
            _violation(rep, s, {
                "x0": x0.to_json(), "y0": y0.to_json(),
                "expected": fraction_str(expected),
                "lower": fraction_str(cert.lower),
                "upper": fraction_str(cert.upper),
            })
    rep["id"] = "cross-seminorm-identity"
    rep["statement"] = (
        "the projective seminorm of a rank-one element is the product of the "
        "factor seminorms" + ("" if pure else " (mixed kinds: dual meets it exactly)")
    )
    rep["ok"] = rep["violations"] == 0
    return rep


def gauge_equivalence_check(W: TensorNbhd, p: RieszSeminorm, q: RieszSeminorm,
                            u: TensorElement, *, seed: int,
                            budget: Budget | None = None) -> dict:
    """Tri-state membership in r*W never contradicts the certificate.

    Probes radii strictly below the certified lower bound (expect
    non-member), between the bounds (any answer is consistent; undecided is
    expected when a genuine gap remains), at the upper bound and above
    (expect member). Also checks the tri-state is monotone along increasing
    radii.
    """
    if W.p != p or W.q != q:
        raise ValueError("neighborhood was not built from the given seminorms")
    cert = seminorm_certify(p, q, u, budget)
    probes = []
    if cert.lower > 0:
        probes.append((cert.lower * Fraction(7, 8), Membership.NON_MEMBER))
        probes.append((cert.lower * Fraction(1, 2), Membership.NON_MEMBER))
    if cert.gap > 0:
        probes.append(((cert.lower + cert.upper) / 2, None))
    if cert.upper > 0:
        probes.append((cert.upper, Membership.MEMBER))
    probes.append((cert.upper + 1, Membership.MEMBER))

    contradictions = []
    answers = []
    for r, expected in probes:
        got = nbhd_member(W, u, radius=r, budget=budget)
        answers.append((r, got))
        if got is Membership.MEMBER and cert.lower > r:
            contradictions.append({"radius": fraction_str(r), "got": got.value,
                                   "reason": "member below certified lower bound"})
        if got is Membership.NON_MEMBER and cert.upper <= r:
            contradictions.append({"radius": fraction_str(r), "got": got.value,
                                   "reason": "non-member above certified upper bound"})
        if expected is not None and got is not expected:
            contradictions.append({"radius": fraction_str(r), "got": got.value,
                                   "expected": expected.value})
    order = {Membership.NON_MEMBER: 0, Membership.UNDECIDED: 1, Membership.MEMBER: 2}
    ranks = [order[a] for _, a in sorted(answers, key=lambda t: t[0])]
    if ranks != sorted(ranks):
        contradictions.append({"reason": "tri-state not monotone in the radius"})
    return {
        "id": "gauge-seminorm-consistency",
        "statement": "membership of u in r*W agrees with the certified interval for (p (x) q)(u)",
        "certificate": {"lower": fraction_str(cert.lower), "upper": fraction_str(cert.upper)},
        "probes": [[fraction_str(r), a.value] for r, a in answers],
        "contradictions": contradictions,
        "ok": not contradictions,
    }


def certificate_axiom_check(p: RieszSeminorm, q: RieszSeminorm, *, samples: int, seed: int,
                            budget: Budget | None = None) -> dict:
    """Seminorm axioms hold at the certificate level, witness by witness.

    * subadditivity: concatenated witnesses dominate u + v with value
      upper(u) + upper(v);
    * balanced homogeneity: scaled witnesses give upper(lam u) = |lam| upper(u),
      and the dual value scales the same way;
    * solidity/monotonicity: |v| <= |u| implies lower(v) <= upper(u).
    """
    _require_weighted(p, q)
    rng = SplitStream(seed).split("certificate-axioms")
    rep = _report(samples)
    n, m = p.dim, q.dim
    for s in range(samples):
        srng = rng.split(s)
        u = TensorElement(tuple(
            tuple(srng.fraction(-3, 3, 4) for _ in range(m)) for _ in range(n)
        ))
        v = TensorElement(tuple(
            tuple(srng.fraction(-3, 3, 4) for _ in range(m)) for _ in range(n)
        ))
        cu = seminorm_certify(p, q, u, budget)
        cv = seminorm_certify(p, q, v, budget)
        lam = srng.fraction(-2, 2, 8)
        problems = []
        joined = cu.decomposition.concat(cv.decomposition)
        if not joined.dominates(u + v):
            problems.append("concatenated witness fails to dominate the sum")
        if joined.value(p, q) != cu.upper + cv.upper:
            problems.append("concatenated witness value is not the sum of uppers")
        scaled = cu.decomposition.scaled(lam)
        if not scaled.dominates(u.scale(lam)):
            problems.append("scaled witness fails to dominate the scaled element")
        if scaled.value(p, q) != abs(lam) * cu.upper:
            problems.append("scaled witness value is not |lam| * upper")
        if cu.dual.value(u.scale(lam)) != abs(lam) * cu.lower:
            problems.append("dual value is not absolutely homogeneous")
        dominated = sample_tensor_box(srng.split("dominated"), u)
        if seminorm_certify(p, q, dominated, budget).lower > cu.upper:
            problems.append("dominated element certified above the dominating upper bound")
        if problems:
            _violation(rep, s, {"problems": problems})
    rep["id"] = "certificate-axioms"
    rep["statement"] = "subadditivity, balanced homogeneity, and solidity hold at certificate level"
    rep["ok"] = rep["violations"] == 0
    return rep


def hausdorff_check(P: SeminormFamily, Q: SeminormFamily, *, samples: int, seed: int) -> dict:
    """Separating factor families separate the tensor model.

    For nonzero u, pick an entry (i, j) with the largest |u_ij|; the
    rank-one witness pair x0 = |u_ij| e_i, y0 = e_j must have positive
    product seminorm under some pair of family members, and the dual lower
    bound for u itself must reach at least that product. Non-separating
    families are reported with the direction that kills every member, not
    raised.
    """
    dead_left = P.separation_failures()
    dead_right = Q.separation_failures()
    rep = _report(samples)
    rep["separating"] = {"left": P.separating, "right": Q.separating}
    rep["separation_failures"] = {
        "left": [f"coordinate {i}" for i in dead_left],
        "right": [f"coordinate {j}" for j in dead_right],
    }
    rng = SplitStream(seed).split("hausdorff")
    weighted = [
        (pp, qq) for pp in P.members for qq in Q.members
        if pp.kind in _WEIGHTED and qq.kind in _WEIGHTED
    ]
    if not weighted:
        raise UnsupportedSeminormKind(
            "separation certificates need at least one weighted member on each side"
        )
    n, m = P.dim, Q.dim
    for s in range(samples):
        srng = rng.split(s)
        u = TensorElement(tuple(
            tuple(srng.fraction(-3, 3, 4) for _ in range(m)) for _ in range(n)
        ))
        if s == 0 and dead_left:
            u = matrix_unit(n, m, dead_left[0], 0)  # forced failure witness
        elif s == 0 and dead_right:
            u = matrix_unit(n, m, 0, dead_right[0])
        elif u.is_zero():
            u = TensorElement.make([[1] + [0] * (m - 1)] + [[0] * m] * (n - 1))
        (i, j), _ = _argmax(
            (((i, j), abs(c)) for i, row in enumerate(u.entries) for j, c in enumerate(row))
        )
        x0 = LatticeElement.unit(n, i, abs(u.entries[i][j]))
        y0 = LatticeElement.unit(m, j)
        separated = False
        for pp, qq in weighted:
            target = pp(x0) * qq(y0)
            if target > 0 and dual_lower_bound(pp, qq, u).value(u) >= target:
                separated = True
                break
        if not separated:
            _violation(rep, s, {"u": u.to_json(), "entry": [i, j]})
    rep["id"] = "separation"
    rep["statement"] = (
        "separating factor families certify a positive lower bound for every nonzero tensor"
    )
    expected_ok = P.separating and Q.separating
    rep["ok"] = (rep["violations"] == 0) if expected_ok else (rep["violations"] > 0)
    rep["expected_separation"] = expected_ok
    return rep
