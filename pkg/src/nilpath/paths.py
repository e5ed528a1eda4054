"""Explicit paths inside the set of p-th roots of a nilpotent matrix.

Two segment kinds compose into a root-connecting path:

* centralizer segments conjugate a root by ``(1-z)I + zQ`` along a complex
  detour on which the determinant is certified nonvanishing, keeping the
  p-th power literally fixed;
* adjacency segments deform a trailing pair of Jordan cells (k, l) toward
  (k+1, l-1) through the one-parameter family ``U_t``, conjugating back by
  an exactly-lifted family q(t) so that ``gamma(t)^p`` is constant.

The lift is realized piecewise: marching intervals compose the local
cross-section around the power matrix with the accumulated conjugator and
are bisected adaptively whenever the section leaves its validity
neighborhood (or, in certified mode, whenever a Sturm certificate of the
governing determinant polynomials fails).  The final interval instead
anchors at the deformation endpoint, where the left-anchored chart always
degenerates, and glues on through an exact centralizer correction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (
    DegenerateParameterError,
    DetourSearchExhaustedError,
    InputFormatError,
    LiftDepthExceededError,
    MissingCellsError,
    OutsideNeighborhoodError,
    PowerMismatchError,
    WindowViolationError,
)
from .graph import profile_chain
from .jordan import jordan_basis, nilpotent_profile, similarity_witness
from .matrix import (
    Matrix,
    det,
    direct_sum,
    inverse,
    jordan_cell,
    matrix_from_json_obj,
    matrix_mul,
    matrix_pow,
    matrix_to_json_obj,
    rank,
    solve,
    unvec,
)
from .polynomials import (
    RatPoly,
    certify_nonvanishing_segment,
    poly_interpolate_entries,
    poly_matrix_det,
    sturm_root_count,
)
from .errors import SizeCapExceededError
from .profiles import AdjacencyMove, Profile, apply_move, enumerate_preimages, profile_power
from .scalar import ONE, ZERO, Scalar, format_rational, format_scalar, parse_scalar
from .sections import ConjugationSection, ad_operator, conjugation_section

LIFT_DEPTH_CAP = 32
INITIAL_LIFT_INTERVALS = 4
DETOUR_BUDGET = 32

ParamLike = Union[Fraction, int]


def _as_fraction(t: ParamLike) -> Fraction:
    return t if isinstance(t, Fraction) else Fraction(t)


# -- the basic two-cell deformation family ----------------------------------


def basic_family(k: int, l: int, t: ParamLike) -> Matrix:
    """The deformation U_t of the two-cell matrix, of dimension k + l.

    In the basis (x_k..x_1, y_l..y_1) every vector maps as in the direct
    sum of cells except y_1, which maps to ``(1-t) y_2 + t x_1`` (terms with
    out-of-range indices drop, covering k = 0).  U_0 is the plain two-cell
    direct sum.
    """
    if k < 0 or l < 1 or k >= l:
        raise ValueError("need 0 <= k < l")
    t = _as_fraction(t)
    m = direct_sum([jordan_cell(k), jordan_cell(l)])
    n = k + l
    if l >= 2:
        m.data[n - 2][n - 1] = Scalar(1 - t)
    if k >= 1:
        m.data[k - 1][n - 1] = Scalar(t)
    return m


def basic_family_similarity(k: int, l: int, t: ParamLike) -> Matrix:
    """Invertible R(t) with ``U_t = R(t) (J_k + J_l) R(t)^-1`` for t in (0,1).

    Columns are x_k..x_1, then ``(1-t) y_j + t x_(j-1)`` for j = l..2, then
    y_1; the arrangement degenerates at the parameter endpoints.
    """
    if k < 0 or l < 1 or k >= l:
        raise ValueError("need 0 <= k < l")
    t = _as_fraction(t)
    if t <= 0 or t >= 1:
        raise DegenerateParameterError("similarity basis requires 0 < t < 1")
    n = k + l
    one_minus = Scalar(1 - t)
    t_s = Scalar(t)
    cols: list[list[Scalar]] = []
    for i in range(k):  # x_k .. x_1 sit at standard positions
        e = [ZERO] * n
        e[i] = ONE
        cols.append(e)
    for j in range(l, 1, -1):
        v = [ZERO] * n
        v[k + l - j] = one_minus  # y_j
        if 1 <= j - 1 <= k:
            v[k - (j - 1)] = t_s  # x_(j-1)
        cols.append(v)
    e = [ZERO] * n
    e[n - 1] = ONE  # y_1
    cols.append(e)
    return Matrix(n, n, [list(row) for row in zip(*cols)])


# -- lifted deformation with constant p-th power ------------------------------


@dataclass(frozen=True)
class LiftInterval:
    """One lift interval with its anchoring rule.

    On [left, right] the lift is ``q(t) = anchor @ g(anchor^-1 U_t^p anchor)
    @ correction``.  Marching intervals anchor at their left endpoint with
    the identity correction; the final interval must anchor at t = 1 (the
    left-anchored chart always degenerates exactly there), and its
    correction is the centralizer element gluing it continuously onto the
    previous interval.
    """

    left: Fraction
    right: Fraction
    anchor: Matrix
    anchor_inv: Matrix
    correction: Matrix


@dataclass(frozen=True)
class LiftCore:
    """Partitioned lift data: q(t_i) conjugators locking U_t^p onto A0."""

    k: int
    l: int
    p: int
    base_power: Matrix  # A0 = U_0^p
    section: ConjugationSection
    partition: tuple[Fraction, ...]
    conjugators: tuple[Matrix, ...]
    conjugator_invs: tuple[Matrix, ...]
    intervals: tuple[LiftInterval, ...]
    certifications: Optional[tuple[dict, ...]]

    @property
    def dim(self) -> int:
        return self.k + self.l

    def family_matrix(self, t: ParamLike) -> Matrix:
        return basic_family(self.k, self.l, t)

    def _interval_index(self, t: Fraction) -> int:
        pts = self.partition
        lo, hi = 0, len(pts) - 2
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if pts[mid] <= t:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def q_at(self, t: ParamLike) -> Matrix:
        """Lift conjugator q(t); exact at partition points by construction."""
        t = _as_fraction(t)
        if t < 0 or t > 1:
            raise ValueError("lift parameter must lie in [0, 1]")
        i = self._interval_index(t)
        if t == self.partition[i]:
            return self.conjugators[i]
        if t == self.partition[i + 1]:
            return self.conjugators[i + 1]
        iv = self.intervals[i]
        u_p = matrix_pow(self.family_matrix(t), self.p)
        try:
            g = self.section.conjugator_at(
                matrix_mul(iv.anchor_inv, matrix_mul(u_p, iv.anchor))
            )
            return matrix_mul(matrix_mul(iv.anchor, g), iv.correction)
        except OutsideNeighborhoodError:
            return self._ladder(i, t)

    def _ladder(self, i: int, t: Fraction) -> Matrix:
        """Deterministic step-halving walk from the interval's left end."""
        cur_t = self.partition[i]
        cur_q = self.conjugators[i]
        cur_q_inv = self.conjugator_invs[i]
        depth = 0
        while cur_t < t:
            step = t - cur_t
            while True:
                nt = cur_t + step
                u_p = matrix_pow(self.family_matrix(nt), self.p)
                b = matrix_mul(cur_q_inv, matrix_mul(u_p, cur_q))
                try:
                    g = self.section.conjugator_at(b)
                    break
                except OutsideNeighborhoodError:
                    step = step / 2
                    depth += 1
                    if depth > LIFT_DEPTH_CAP:
                        raise LiftDepthExceededError(
                            f"lift refinement beyond depth {LIFT_DEPTH_CAP}"
                        ) from None
            cur_q = matrix_mul(cur_q, g)
            cur_q_inv = inverse(cur_q)
            cur_t = nt
        return cur_q

    def gamma(self, t: ParamLike) -> Matrix:
        """The deformed root: q(t)^-1 U_t q(t), with gamma(t)^p = A0."""
        t = _as_fraction(t)
        q = self.q_at(t)
        return matrix_mul(inverse(q), matrix_mul(self.family_matrix(t), q))

    def gamma_samples(self) -> list[tuple[Fraction, Matrix]]:
        """gamma at the partition points (cheap: conjugators are stored)."""
        out = []
        for t, q, q_inv in zip(self.partition, self.conjugators, self.conjugator_invs):
            out.append((t, matrix_mul(q_inv, matrix_mul(self.family_matrix(t), q))))
        return out


def _admissible_window(k: int, l: int, p: int) -> Optional[int]:
    a = -(-l // p) - 1
    if a < 0:
        a = 0
    if p * a <= k < l <= p * (a + 1):
        return a
    return None


def lift_family(k: int, l: int, p: int, mode: str = "sampled") -> LiftCore:
    """Adaptive lift of the two-cell deformation with exact power lock.

    Marching from the left, each candidate interval anchors at its left
    endpoint and is accepted once the cross-section around A0 evaluates at
    its midpoint and right end (the left end pulls back to A0 exactly); in
    certified mode a Sturm certificate for the interval's validity
    determinants is also required, and failures bisect the interval.

    The left-anchored rule provably cannot close the deformation: pulling
    the family back by the accumulated conjugator rescales it so that t = 1
    always sits exactly on the section's singular locus.  The final
    interval therefore anchors at t = 1 instead, through an exact
    similarity of U_1^p onto A0, and is glued continuously onto the march
    by a centralizer correction.
    """
    if mode not in ("sampled", "certified"):
        raise ValueError("mode must be 'sampled' or 'certified'")
    if _admissible_window(k, l, p) is None:
        raise WindowViolationError(f"no window index a with {p}a <= {k} < {l} <= {p}(a+1)")
    u0 = basic_family(k, l, 0)
    a0 = matrix_pow(u0, p)
    section = conjugation_section(a0)
    n = k + l
    end = Fraction(1)

    def family_power(t: Fraction) -> Matrix:
        return matrix_pow(basic_family(k, l, t), p)

    right_anchor = None  # lazily built exact similarity U_1^p = Q1 A0 Q1^-1

    def get_right_anchor() -> tuple[Matrix, Matrix]:
        nonlocal right_anchor
        if right_anchor is None:
            q1 = similarity_witness(a0, family_power(end))
            right_anchor = (q1, inverse(q1))
        return right_anchor

    points = [Fraction(0)]
    qs = [Matrix.identity(n)]
    q_invs = [Matrix.identity(n)]
    intervals: list[LiftInterval] = []
    certs: list[dict] = []
    pending = [Fraction(i, INITIAL_LIFT_INTERVALS) for i in range(1, INITIAL_LIFT_INTERVALS + 1)]
    min_len = Fraction(1, INITIAL_LIFT_INTERVALS) / (2**LIFT_DEPTH_CAP)
    identity = Matrix.identity(n)

    def probe(anchor: Matrix, anchor_inv: Matrix, ts: Sequence[Fraction]) -> Optional[Matrix]:
        """Section conjugator at the last parameter, or None on any failure."""
        g = None
        try:
            for t in ts:
                b = matrix_mul(anchor_inv, matrix_mul(family_power(t), anchor))
                g = section.conjugator_at(b)
        except OutsideNeighborhoodError:
            return None
        return g

    while pending:
        left = points[-1]
        right = pending[0]
        q_left, q_left_inv = qs[-1], q_invs[-1]
        mid = (left + right) / 2

        g_right = probe(q_left, q_left_inv, (mid, right))
        cert = None
        if g_right is not None and mode == "certified":
            cert = certify_lift_interval(
                section, family_power, p, q_left, q_left_inv, left, right
            )
            if not cert["ok"]:
                g_right = None
        if g_right is not None:
            pending.pop(0)
            q_right = matrix_mul(q_left, g_right)
            points.append(right)
            qs.append(q_right)
            q_invs.append(inverse(q_right))
            intervals.append(LiftInterval(left, right, q_left, q_left_inv, identity))
            if cert is not None:
                certs.append(cert)
            continue

        if right == end:
            anchor, anchor_inv = get_right_anchor()
            g_left = probe(anchor, anchor_inv, (mid, left))
            cert = None
            if g_left is not None and mode == "certified":
                cert = certify_lift_interval(
                    section, family_power, p, anchor, anchor_inv, left, right
                )
                if not cert["ok"]:
                    g_left = None
            if g_left is not None:
                # glue: correction S with anchor g_left S = q_left, S in C(A0)
                correction = matrix_mul(
                    inverse(matrix_mul(anchor, g_left)), q_left
                )
                if matrix_mul(correction, a0) != matrix_mul(a0, correction):
                    raise AssertionError("glue correction must centralize the base power")
                q_end = matrix_mul(anchor, correction)
                pending.pop(0)
                points.append(end)
                qs.append(q_end)
                q_invs.append(inverse(q_end))
                intervals.append(LiftInterval(left, end, anchor, anchor_inv, correction))
                if cert is not None:
                    certs.append(cert)
                continue

        if right - left < min_len:
            raise LiftDepthExceededError("lift interval bisected below depth cap")
        pending.insert(0, mid)

    core = LiftCore(
        k,
        l,
        p,
        a0,
        section,
        tuple(points),
        tuple(qs),
        tuple(q_invs),
        tuple(intervals),
        tuple(certs) if mode == "certified" else None,
    )
    # Exact invariant at every partition point: U_t^p = q(t) A0 q(t)^-1.
    for t, q, q_inv in zip(core.partition, core.conjugators, core.conjugator_invs):
        if family_power(t) != matrix_mul(q, matrix_mul(a0, q_inv)):
            raise AssertionError("lift invariant failed at a partition point")
    return core


def certify_lift_interval(
    section: ConjugationSection,
    family_power,
    p: int,
    anchor: Matrix,
    anchor_inv: Matrix,
    left: Fraction,
    right: Fraction,
) -> dict:
    """Sturm-certify section validity across one whole lift interval.

    U_t is affine in t, so the anchored power curve B(t) has polynomial
    entries of degree at most p.  The section's leading-block determinant
    d1(t) and the cleared-denominator conjugator ``ghat(t) = d1(t) g(B(t))``
    are then polynomials of degree at most rank*p, recovered exactly by
    interpolation; nonvanishing of d1 and det(ghat) on [left, right] makes
    the interval's lift formula valid everywhere on it.
    """
    rho = section.rank
    node_count = max(rho, 1) * p + 1
    nodes = [
        left + (right - left) * Fraction(i, node_count - 1) for i in range(node_count)
    ] if node_count > 1 else [left]

    d1_samples: list[tuple[Fraction, Matrix]] = []
    ghat_samples: list[tuple[Fraction, Matrix]] = []
    try:
        for t in nodes:
            b = matrix_mul(anchor_inv, matrix_mul(family_power(t), anchor))
            d_val, g = _section_det_and_conjugator(section, b)
            d1_samples.append((t, Matrix(1, 1, [[d_val]])))
            ghat_samples.append((t, g.scale(d_val)))
    except OutsideNeighborhoodError:
        return {
            "interval": [format_rational(left), format_rational(right)],
            "ok": False,
            "reason": "section invalid at a certification node",
        }

    d1 = poly_interpolate_entries(d1_samples, node_count - 1)[0][0]
    ghat = poly_interpolate_entries(ghat_samples, node_count - 1)
    det_ghat = poly_matrix_det(ghat)

    record = {
        "interval": [format_rational(left), format_rational(right)],
        "sectionDetDegree": d1.degree(),
        "conjugatorDetDegree": det_ghat.degree(),
    }
    if d1.eval(Scalar(left)).is_zero() or d1.eval(Scalar(right)).is_zero():
        record.update(ok=False, reason="leading-block determinant vanishes at an endpoint")
        return record
    if det_ghat.eval(Scalar(left)).is_zero() or det_ghat.eval(Scalar(right)).is_zero():
        record.update(ok=False, reason="conjugator determinant vanishes at an endpoint")
        return record
    roots_d1 = sturm_root_count(d1, left, right)
    roots_g = sturm_root_count(det_ghat, left, right)
    record["sectionDetRoots"] = roots_d1
    record["conjugatorDetRoots"] = roots_g
    record["ok"] = roots_d1 == 0 and roots_g == 0
    return record


def _section_det_and_conjugator(section: ConjugationSection, b: Matrix) -> tuple[Scalar, Matrix]:
    """Leading-block determinant and g(B) in one pass (validity enforced)."""
    sd = section.section
    n_op = sd.dimension
    rho = sd.rank
    op = ad_operator(b, section.base)
    if rank(op) != rho:
        raise OutsideNeighborhoodError("displacement rank differs from base point")
    if rho == 0:
        g = unvec(
            Matrix(n_op, 1, [[row[n_op - 1]] for row in sd.basis_domain.data]),
            section.base.rows,
        )
        return ONE, g
    top = matrix_mul(matrix_mul(sd.codomain_inv_top, op), sd.basis_domain)
    a_block = Matrix(rho, rho, [row[:rho] for row in top.data])
    d_val = det(a_block)
    if d_val.is_zero():
        raise OutsideNeighborhoodError("leading block singular at this operator")
    c_last = Matrix(rho, 1, [[row[n_op - 1]] for row in top.data])
    correction = solve(a_block, c_last)
    coords = [-correction.data[i][0] for i in range(rho)] + [ZERO] * (n_op - rho - 1) + [ONE]
    out = [ZERO] * n_op
    for j, coeff in enumerate(coords):
        if coeff.is_zero():
            continue
        for i in range(n_op):
            e = sd.basis_domain.data[i][j]
            if not e.is_zero():
                out[i] = out[i] + coeff * e
    g = unvec(Matrix.column(out), section.base.rows)
    if det(g).is_zero():
        raise OutsideNeighborhoodError("section conjugator is singular")
    return d_val, g


# -- centralizer segments -----------------------------------------------------


@dataclass(frozen=True)
class CentralizerSegment:
    """Conjugation by (1-z)I + zQ along a determinant-certified detour."""

    base_root: Matrix  # X
    conjugator: Matrix  # Q, commuting with the common power
    waypoints: tuple[Scalar, ...]  # complex detour from 0 to 1
    certifications: tuple[dict, ...]

    kind = "centralizer"

    def _omega(self, s: Fraction) -> Scalar:
        pieces = len(self.waypoints) - 1
        if pieces == 0:
            return self.waypoints[0]
        v = s * pieces
        j = min(int(v), pieces - 1)
        r = Scalar(v - j)
        w0, w1 = self.waypoints[j], self.waypoints[j + 1]
        return w0 + (w1 - w0) * r

    def _blend(self, z: Scalar) -> Matrix:
        n = self.base_root.rows
        out = self.conjugator.scale(z)
        one_minus = ONE - z
        for i in range(n):
            out.data[i][i] = out.data[i][i] + one_minus
        return out

    def evaluate(self, s: ParamLike) -> Matrix:
        s = _as_fraction(s)
        qz = self._blend(self._omega(s))
        return matrix_mul(qz, matrix_mul(self.base_root, inverse(qz)))

    @property
    def start(self) -> Matrix:
        return self.base_root

    @property
    def end(self) -> Matrix:
        return matrix_mul(
            self.conjugator, matrix_mul(self.base_root, inverse(self.conjugator))
        )

    def to_json_obj(self) -> dict:
        return {
            "kind": "centralizer",
            "baseRoot": matrix_to_json_obj(self.base_root),
            "conjugator": matrix_to_json_obj(self.conjugator),
            "waypoints": [format_scalar(w) for w in self.waypoints],
            "certifications": list(self.certifications),
        }


def _blend_determinant(q: Matrix) -> RatPoly:
    """det((1-z)I + zQ) as an exact polynomial in z."""
    n = q.rows
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            const = ONE if i == j else ZERO
            slope = q.data[i][j] - const
            row.append(RatPoly((const, slope)))
        entries.append(row)
    return poly_matrix_det(entries, degree_bound=n)


def centralizer_segment(
    a: Matrix, p: int, x: Matrix, y: Matrix, detour_budget: int = DETOUR_BUDGET
) -> CentralizerSegment:
    """Certified path from x to y through conjugates sharing the power a.

    The direct segment 0 -> 1 is tried first; if the blend determinant has
    a root on it, three-piece detours through i*eps and 1 + i*eps are
    searched over eps = 1/2, 1/3, ...  A valid detour always exists since
    the determinant has finitely many roots and is 1 at z = 0; running out
    of budget therefore signals a fault rather than a negative result.
    """
    if matrix_pow(x, p) != a or matrix_pow(y, p) != a:
        raise PowerMismatchError("segment endpoints must both power to the target")
    q = similarity_witness(x, y)
    if matrix_mul(q, a) != matrix_mul(a, q):
        raise AssertionError("similarity witness must commute with the power")
    d = _blend_determinant(q)

    zero = Scalar(0)
    one = Scalar(1)
    if certify_nonvanishing_segment(d, zero, one):
        waypoints = (zero, one)
        certs = ({"from": "0/1", "to": "1/1", "ok": True},)
        return CentralizerSegment(x, q, waypoints, certs)

    for denom in range(2, 2 + detour_budget):
        eps = Fraction(1, denom)
        corner0 = Scalar(0, eps)
        corner1 = Scalar(1, eps)
        pieces = [(zero, corner0), (corner0, corner1), (corner1, one)]
        if all(certify_nonvanishing_segment(d, w0, w1) for w0, w1 in pieces):
            waypoints = (zero, corner0, corner1, one)
            certs = tuple(
                {"from": format_scalar(w0), "to": format_scalar(w1), "ok": True}
                for w0, w1 in pieces
            )
            return CentralizerSegment(x, q, waypoints, certs)
    raise DetourSearchExhaustedError("no certified detour within the epsilon budget")


# -- adjacency segments --------------------------------------------------------


@dataclass(frozen=True)
class AdjacencySegment:
    """Deformation of one trailing cell pair, conjugated into position."""

    outer: Matrix  # P'
    outer_inv: Matrix
    bystander: Matrix  # untouched Jordan block sum
    lift: LiftCore
    reversed_time: bool
    move: AdjacencyMove

    kind = "adjacency"

    def evaluate(self, s: ParamLike) -> Matrix:
        s = _as_fraction(s)
        t = 1 - s if self.reversed_time else s
        g = self.lift.gamma(t)
        inner = direct_sum([self.bystander, g])
        return matrix_mul(self.outer, matrix_mul(inner, self.outer_inv))

    @property
    def start(self) -> Matrix:
        return self.evaluate(Fraction(0))

    @property
    def end(self) -> Matrix:
        return self.evaluate(Fraction(1))

    def to_json_obj(self) -> dict:
        return {
            "kind": "adjacency",
            "move": self.move.to_json_obj(),
            "outerConjugator": matrix_to_json_obj(self.outer),
            "bystander": matrix_to_json_obj(self.bystander),
            "k": self.lift.k,
            "l": self.lift.l,
            "p": self.lift.p,
            "reversedTime": self.reversed_time,
            "partition": [format_rational(t) for t in self.lift.partition],
            "liftConjugators": [matrix_to_json_obj(q) for q in self.lift.conjugators],
            "liftIntervals": [
                {
                    "left": format_rational(iv.left),
                    "right": format_rational(iv.right),
                    "anchor": matrix_to_json_obj(iv.anchor),
                    "correction": matrix_to_json_obj(iv.correction),
                }
                for iv in self.lift.intervals
            ],
            "certifications": list(self.lift.certifications)
            if self.lift.certifications is not None
            else None,
        }


def _reorder_cells_trailing(
    dec_sizes: Sequence[int], trailing: Sequence[int]
) -> tuple[list[int], list[int]]:
    """Indices of cells with the requested trailing sizes moved to the end.

    The last cell of each requested size is taken (later requests may not
    reuse an index), keeping everything deterministic.
    """
    chosen: list[int] = []
    used: set[int] = set()
    for size in reversed(trailing):
        found = None
        for i in range(len(dec_sizes) - 1, -1, -1):
            if i not in used and dec_sizes[i] == size:
                found = i
                break
        if found is None:
            raise MissingCellsError(f"no unused Jordan cell of size {size}")
        used.add(found)
        chosen.append(found)
    chosen.reverse()
    others = [i for i in range(len(dec_sizes)) if i not in used]
    return others, chosen


def adjacency_segment(
    a: Matrix, p: int, n: Matrix, move: AdjacencyMove, mode: str = "sampled"
) -> AdjacencySegment:
    """Path from the root n across one adjacency move, power held at a.

    A Jordan decomposition of n is reordered so the move's cells sit last;
    the two-cell deformation runs forward for a forward move and in
    reversed time (aligned through an exact similarity of the deformed
    endpoint) for a backward one.
    """
    if matrix_pow(n, p) != a:
        raise PowerMismatchError("root does not power to the target")
    if move.p != p:
        raise ValueError("move was built for a different power")
    prof = nilpotent_profile(n)
    k, l = move.k, move.l
    forward = move.direction == "forward"
    if forward:
        needed = [s for s in (k, l) if s > 0]
    else:
        needed = [k + 1, l - 1]
    counts: dict[int, int] = {}
    for s in needed:
        counts[s] = counts.get(s, 0) + 1
    for s, c in counts.items():
        if prof.get(s) < c:
            raise MissingCellsError(f"profile {prof.to_text()!r} lacks {c} cell(s) of size {s}")

    dec = jordan_basis(n)
    others, chosen = _reorder_cells_trailing(dec.cell_sizes, needed)
    order = others + chosen
    # regroup the conjugator's columns cell by cell in the new order
    offsets = []
    pos = 0
    for s in dec.cell_sizes:
        offsets.append((pos, s))
        pos += s
    cols: list[list[Scalar]] = []
    for idx in order:
        start, s = offsets[idx]
        for c in range(start, start + s):
            cols.append([dec.conjugator.data[r][c] for r in range(n.rows)])
    p1 = Matrix(n.rows, n.rows, [list(row) for row in zip(*cols)]) if n.rows else Matrix.identity(0)

    bystander = direct_sum([jordan_cell(dec.cell_sizes[i]) for i in others])
    lift = lift_family(k, l, p, mode=mode)

    if forward:
        outer = p1
    else:
        gamma1 = lift.gamma(Fraction(1))
        model = direct_sum([jordan_cell(k + 1), jordan_cell(l - 1)])
        w = similarity_witness(model, gamma1)  # gamma1 = w model w^-1
        outer = matrix_mul(p1, direct_sum([Matrix.identity(bystander.rows), inverse(w)]))

    seg = AdjacencySegment(outer, inverse(outer), bystander, lift, not forward, move)
    if seg.start != n:
        raise AssertionError("adjacency segment must start exactly at the given root")
    if matrix_pow(seg.end, p) != a:
        raise AssertionError("adjacency segment endpoint lost the power identity")
    if nilpotent_profile(seg.end) != apply_move(prof, move):
        raise AssertionError("adjacency segment endpoint has the wrong profile")
    return seg


# -- assembled root paths -------------------------------------------------------


@dataclass(frozen=True)
class RootPath:
    """Piecewise path of exact p-th roots, uniformly parametrized on [0,1]."""

    target: Matrix
    power: int
    segments: tuple

    def __post_init__(self):
        if not self.segments:
            raise ValueError("a path needs at least one segment")
        for s0, s1 in zip(self.segments, self.segments[1:]):
            if s0.end != s1.start:
                raise ValueError("segments do not stitch exactly")

    @property
    def start(self) -> Matrix:
        return self.segments[0].start

    @property
    def end(self) -> Matrix:
        return self.segments[-1].end

    def evaluate(self, t: ParamLike) -> Matrix:
        t = _as_fraction(t)
        if t < 0 or t > 1:
            raise ValueError("path parameter must lie in [0, 1]")
        count = len(self.segments)
        scaled = t * count
        idx = min(int(scaled), count - 1)
        local = scaled - idx
        return self.segments[idx].evaluate(local)

    def to_json_obj(self) -> dict:
        return {
            "A": matrix_to_json_obj(self.target),
            "p": self.power,
            "endpoints": {
                "X": matrix_to_json_obj(self.start),
                "Y": matrix_to_json_obj(self.end),
            },
            "segments": [seg.to_json_obj() for seg in self.segments],
        }


@dataclass(frozen=True)
class Certificate:
    """Record of exact residual checks plus per-segment certifications."""

    mode: str
    samples: tuple[tuple[Fraction, bool, Profile], ...]
    segment_certifications: tuple
    ok: bool

    def to_json_obj(self) -> dict:
        return {
            "mode": self.mode,
            "samples": [
                {
                    "t": format_rational(t),
                    "residualZero": res,
                    "profile": prof.to_text(),
                }
                for t, res, prof in self.samples
            ],
            "segmentCertifications": list(self.segment_certifications),
            "ok": self.ok,
        }


def connect_roots(a: Matrix, p: int, x: Matrix, y: Matrix, mode: str = "sampled") -> RootPath:
    """Explicit path from x to y inside the p-th roots of a.

    The profile chain between the two root profiles drives one adjacency
    segment per move (each starting exactly where the previous ended); a
    closing centralizer segment lands exactly on y.
    """
    if matrix_pow(x, p) != a:
        raise PowerMismatchError("x^p differs from the target")
    if matrix_pow(y, p) != a:
        raise PowerMismatchError("y^p differs from the target")
    nilpotent_profile(a)  # raises NotNilpotentError otherwise

    mx = nilpotent_profile(x)
    my = nilpotent_profile(y)
    chain = profile_chain(mx, my, p)

    segments = []
    current = x
    for mv in chain.moves:
        seg = adjacency_segment(a, p, current, mv, mode=mode)
        segments.append(seg)
        current = seg.end
    segments.append(centralizer_segment(a, p, current, y))
    return RootPath(a, p, tuple(segments))


def evaluate(path: RootPath, t: ParamLike) -> Matrix:
    """Exact value of the path at a rational parameter in [0, 1]."""
    return path.evaluate(t)


def _certify_segment(seg, mode: str) -> dict:
    if seg.kind == "centralizer":
        d = _blend_determinant(seg.conjugator)
        pieces = []
        for w0, w1 in zip(seg.waypoints, seg.waypoints[1:]):
            pieces.append(
                {
                    "from": format_scalar(w0),
                    "to": format_scalar(w1),
                    "ok": certify_nonvanishing_segment(d, w0, w1),
                }
            )
        return {"kind": "centralizer", "pieces": pieces, "ok": all(p["ok"] for p in pieces)}
    # adjacency
    lift = seg.lift
    if mode != "certified":
        return {
            "kind": "adjacency",
            "intervals": [
                {
                    "interval": [format_rational(t0), format_rational(t1)],
                    "certified": False,
                }
                for t0, t1 in zip(lift.partition, lift.partition[1:])
            ],
            "ok": True,
        }
    if lift.certifications is not None:
        intervals = list(lift.certifications)
    else:
        def fam_power(t: Fraction) -> Matrix:
            return matrix_pow(lift.family_matrix(t), lift.p)

        intervals = []
        for iv in lift.intervals:
            intervals.append(
                certify_lift_interval(
                    lift.section,
                    fam_power,
                    lift.p,
                    iv.anchor,
                    iv.anchor_inv,
                    iv.left,
                    iv.right,
                )
            )
    return {
        "kind": "adjacency",
        "intervals": intervals,
        "ok": all(rec.get("ok", False) for rec in intervals),
    }


def verify(path: RootPath, sample_count: int, mode: str = "sampled") -> Certificate:
    """Exact residual checks on a uniform grid plus segment certifications.

    Every sampled point must power exactly to the target and carry a
    profile from the preimage set of the target's profile.  Certified mode
    additionally requires every segment certification to pass.
    """
    if sample_count < 1:
        raise ValueError("need at least one sample interval")
    if mode not in ("sampled", "certified"):
        raise ValueError("mode must be 'sampled' or 'certified'")
    target_profile = nilpotent_profile(path.target)
    try:
        preimages = enumerate_preimages(target_profile, path.power)
    except SizeCapExceededError:
        preimages = None  # cap exceeded: fall back to the power-map check

    samples = []
    all_ok = True
    for i in range(sample_count + 1):
        t = Fraction(i, sample_count)
        m = path.evaluate(t)
        residual_zero = matrix_pow(m, path.power) == path.target
        prof = nilpotent_profile(m)
        in_family = (
            prof in preimages
            if preimages is not None
            else profile_power(prof, path.power) == target_profile
        )
        all_ok = all_ok and residual_zero and in_family
        samples.append((t, residual_zero, prof))

    seg_certs = tuple(_certify_segment(seg, mode) for seg in path.segments)
    if mode == "certified":
        all_ok = all_ok and all(c["ok"] for c in seg_certs)
    else:
        all_ok = all_ok and all(
            c["ok"] for c in seg_certs if c["kind"] == "centralizer"
        )
    return Certificate(mode, tuple(samples), seg_certs, all_ok)


# -- path JSON ---------------------------------------------------------------


def path_to_json_obj(path: RootPath) -> dict:
    return path.to_json_obj()


def _segment_from_json_obj(obj) -> object:
    kind = obj.get("kind")
    if kind == "centralizer":
        return CentralizerSegment(
            matrix_from_json_obj(obj["baseRoot"]),
            matrix_from_json_obj(obj["conjugator"]),
            tuple(parse_scalar(w) for w in obj["waypoints"]),
            tuple(obj.get("certifications", ())),
        )
    if kind == "adjacency":
        move = AdjacencyMove.from_json_obj(obj["move"])
        k = int(obj["k"])
        l = int(obj["l"])
        p = int(obj["p"])
        partition = tuple(Fraction(t) for t in obj["partition"])
        conjugators = tuple(matrix_from_json_obj(m) for m in obj["liftConjugators"])
        u0 = basic_family(k, l, 0)
        a0 = matrix_pow(u0, p)
        section = conjugation_section(a0)
        conj_invs = tuple(inverse(q) for q in conjugators)
        intervals = []
        for iv, left, right in zip(obj["liftIntervals"], partition, partition[1:]):
            anchor = matrix_from_json_obj(iv["anchor"])
            if (Fraction(iv["left"]), Fraction(iv["right"])) != (left, right):
                raise InputFormatError("lift intervals do not match the partition")
            intervals.append(
                LiftInterval(
                    left,
                    right,
                    anchor,
                    inverse(anchor),
                    matrix_from_json_obj(iv["correction"]),
                )
            )
        certs = obj.get("certifications")
        lift = LiftCore(
            k,
            l,
            p,
            a0,
            section,
            partition,
            conjugators,
            conj_invs,
            tuple(intervals),
            tuple(certs) if certs is not None else None,
        )
        if lift.conjugators[0] != Matrix.identity(k + l):
            raise InputFormatError("lift conjugator at t=0 must be the identity")
        for t, q, q_inv in zip(partition, conjugators, conj_invs):
            if matrix_pow(basic_family(k, l, t), p) != matrix_mul(q, matrix_mul(a0, q_inv)):
                raise InputFormatError("lift conjugators violate the power identity")
        outer = matrix_from_json_obj(obj["outerConjugator"])
        return AdjacencySegment(
            outer,
            inverse(outer),
            matrix_from_json_obj(obj["bystander"]),
            lift,
            bool(obj["reversedTime"]),
            move,
        )
    raise InputFormatError(f"unknown segment kind {kind!r}")


def path_from_json_obj(obj) -> RootPath:
    if isinstance(obj, dict) and "path" in obj:
        obj = obj["path"]
    try:
        target = matrix_from_json_obj(obj["A"])
        power = int(obj["p"])
        segments = tuple(_segment_from_json_obj(s) for s in obj["segments"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad path JSON: {exc}") from None
    return RootPath(target, power, segments)
