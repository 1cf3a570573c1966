"""Step graphons, a parametric analytic family, and their structural analysis.

A step graphon is a symmetric block-density kernel: block masses summing to
one plus a symmetric density matrix, all exact rationals.  The analyzers
decide connectivity, the low-degree tail behaviour, existence of peninsulae
(density-zero traps A, B with kernel 0 on A x (A u B)), and the exact balanced
bipartite split, each with an independently re-validatable certificate.

All verdicts are equality-sensitive (is this density exactly zero? does this
mass equal exactly 1/2?), hence exact rational arithmetic everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import EnumerationCapExceeded, FormatError

HALF = Fraction(1, 2)

#: Cap on exact 2^k subset enumeration; beyond this the operation errors out.
ENUMERATION_CAP = 24


def _frac(value, position: str) -> Fraction:
    try:
        if isinstance(value, float):
            raise FormatError("floats are not accepted, use fraction or decimal strings", position)
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"cannot parse {value!r} as a rational", position) from None


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class StepGraphon:
    """Block masses (positive rationals summing to 1) + symmetric densities."""

    block_masses: tuple[Fraction, ...]
    densities: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.block_masses)
        if k < 1:
            raise FormatError("need at least one block", "masses")
        for i, m in enumerate(self.block_masses):
            if m <= 0:
                raise FormatError("block masses must be strictly positive", f"masses[{i}]")
        if sum(self.block_masses, Fraction(0)) != 1:
            raise FormatError("block masses must sum exactly to 1", "masses")
        if len(self.densities) != k:
            raise FormatError(f"density matrix must be {k}x{k}", "densities")
        for i, row in enumerate(self.densities):
            if len(row) != k:
                raise FormatError(f"row has {len(row)} entries, expected {k}", f"densities[{i}]")
            for j, d in enumerate(row):
                if not 0 <= d <= 1:
                    raise FormatError("densities must lie in [0,1]", f"densities[{i}][{j}]")
        for i in range(k):
            for j in range(i + 1, k):
                if self.densities[i][j] != self.densities[j][i]:
                    raise FormatError(
                        "density matrix must be symmetric", f"densities[{i}][{j}]"
                    )

    @property
    def k(self) -> int:
        return len(self.block_masses)

    @staticmethod
    def build(masses, densities) -> "StepGraphon":
        ms = tuple(_frac(m, f"masses[{i}]") for i, m in enumerate(masses))
        ds = tuple(
            tuple(_frac(d, f"densities[{i}][{j}]") for j, d in enumerate(row))
            for i, row in enumerate(densities)
        )
        return StepGraphon(ms, ds)

    @staticmethod
    def constant(p) -> "StepGraphon":
        return StepGraphon.build(["1"], [[p]])

    def block_degrees(self) -> tuple[Fraction, ...]:
        return tuple(
            sum((self.block_masses[j] * self.densities[i][j] for j in range(self.k)), Fraction(0))
            for i in range(self.k)
        )

    def positivity_masks(self) -> list[int]:
        """Bitmask per block of blocks with strictly positive shared density."""
        masks = []
        for i in range(self.k):
            m = 0
            for j in range(self.k):
                if self.densities[i][j] > 0:
                    m |= 1 << j
            masks.append(m)
        return masks

    def to_dict(self) -> dict:
        return {
            "kind": "step",
            "masses": [str(m) for m in self.block_masses],
            "densities": [[str(d) for d in row] for row in self.densities],
        }


@dataclass(frozen=True)
class PowerFamilyGraphon:
    """The kernel (x*y)**beta on [0,1]^2, beta a positive rational.

    Its degree function is x**beta / (beta + 1), so the low-degree tail
    sharpens or fattens with beta; it straddles the tail-condition boundary
    at beta = 1.
    """

    beta: Fraction

    def __post_init__(self):
        if self.beta <= 0:
            raise FormatError("beta must be positive", "beta")

    @staticmethod
    def build(beta) -> "PowerFamilyGraphon":
        return PowerFamilyGraphon(_frac(beta, "beta"))

    def degree_at(self, x: float) -> float:
        return x ** float(self.beta) / (float(self.beta) + 1.0)

    def to_dict(self) -> dict:
        return {"kind": "power", "beta": str(self.beta)}


Graphon = Union[StepGraphon, PowerFamilyGraphon]


def load_graphon(payload: Union[dict, str]) -> Graphon:
    """Parse a graphon description payload (dict) or JSON text."""
    if isinstance(payload, str):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from None
    if not isinstance(payload, dict):
        raise FormatError("graphon description must be an object", "$")
    kind = payload.get("kind")
    if kind == "step":
        if "masses" not in payload or "densities" not in payload:
            raise FormatError("step graphon needs 'masses' and 'densities'", "$")
        return StepGraphon.build(payload["masses"], payload["densities"])
    if kind == "power":
        if "beta" not in payload:
            raise FormatError("power graphon needs 'beta'", "$")
        return PowerFamilyGraphon.build(payload["beta"])
    raise FormatError(f"unknown kind {kind!r}, expected 'step' or 'power'", "kind")


def load_graphon_file(path) -> Graphon:
    with open(path, "r", encoding="utf-8") as fh:
        return load_graphon(fh.read())


# ---------------------------------------------------------------------------
# degree profile


@dataclass(frozen=True)
class DegreeProfile:
    """Degrees of a model: per-block values (step) or closed form (power)."""

    kind: str
    block_degrees: Optional[tuple[Fraction, ...]] = None
    beta: Optional[Fraction] = None

    def validate(self) -> None:
        if self.kind == "step":
            assert self.block_degrees is not None
            for d in self.block_degrees:
                assert 0 <= d <= 1
        else:
            assert self.beta is not None and self.beta > 0


def degree_profile(g: Graphon) -> DegreeProfile:
    if isinstance(g, StepGraphon):
        prof = DegreeProfile("step", block_degrees=g.block_degrees())
    else:
        prof = DegreeProfile("power", beta=g.beta)
    prof.validate()
    return prof


# ---------------------------------------------------------------------------
# connectivity


@dataclass(frozen=True)
class ConnectivityVerdict:
    connected: bool
    # Disconnected witness: block index lists with zero cross-density.  For a
    # single all-zero block the split is inside the block (split_block set).
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    split_block: Optional[int] = None


def check_connected(g: Graphon) -> ConnectivityVerdict:
    """Connectivity of the block positivity graph (self-loops ignored).

    A lone block of density zero is the everywhere-zero kernel; that one is
    reported as disconnected with the split placed inside the block.
    """
    if isinstance(g, PowerFamilyGraphon):
        return ConnectivityVerdict(True)
    k = g.k
    if k == 1:
        if g.densities[0][0] == 0:
            return ConnectivityVerdict(False, witness=((0,), (0,)), split_block=0)
        return ConnectivityVerdict(True)
    masks = g.positivity_masks()
    seen = 1
    stack = [0]
    while stack:
        i = stack.pop()
        # self-loop bit is irrelevant for cross-block reachability
        for j in range(k):
            if j != i and (masks[i] >> j) & 1 and not (seen >> j) & 1:
                seen |= 1 << j
                stack.append(j)
    if seen == (1 << k) - 1:
        return ConnectivityVerdict(True)
    s = tuple(i for i in range(k) if (seen >> i) & 1)
    t = tuple(i for i in range(k) if not (seen >> i) & 1)
    return ConnectivityVerdict(False, witness=(s, t))


# ---------------------------------------------------------------------------
# degree tail


def _int_nth_root(m: int, p: int) -> int:
    """floor(m ** (1/p)) for nonnegative integers, exact (Newton on ints)."""
    if m < 0:
        raise ValueError("negative radicand")
    if m == 0:
        return 0
    if p == 1:
        return m
    r = 1 << -(-m.bit_length() // p)  # 2**ceil(bits/p) >= m**(1/p)
    while True:
        nr = ((p - 1) * r + m // r ** (p - 1)) // p
        if nr >= r:
            break
        r = nr
    while r**p > m:
        r -= 1
    while (r + 1) ** p <= m:
        r += 1
    return r


_ROOT_SCALE_BITS = 64


def _rational_root(x: Fraction, p: int, q: int) -> Fraction:
    """Approximation of x ** (q/p), exact on perfect powers, error < 2**-64."""
    if x <= 0:
        return Fraction(0)
    y = x**q
    scale = 1 << _ROOT_SCALE_BITS
    num = _int_nth_root(y.numerator * scale**p // y.denominator, p)
    return Fraction(num, scale)


def degree_tail_ratio(g: Graphon, alpha: Fraction) -> Fraction:
    """mass of {degree <= alpha} divided by alpha.

    Exact for step graphons.  For the power family the closed form
    ((beta+1) * alpha) ** (1/beta) is evaluated as a rational with absolute
    error below 2**-64 (exact whenever the root is rational).
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise FormatError("alpha must be positive", "alpha")
    if isinstance(g, StepGraphon):
        degs = g.block_degrees()
        mass = sum(
            (g.block_masses[i] for i in range(g.k) if degs[i] <= alpha), Fraction(0)
        )
        return mass / alpha
    b = g.beta
    root = _rational_root((b + 1) * alpha, b.numerator, b.denominator)
    return min(root, Fraction(1)) / alpha


TAIL_HOLDS = "holds"
TAIL_FAILS_LIMINF = "fails_liminf_positive"
TAIL_FAILS_INFINITE = "fails_limit_infinite"


def check_degree_tail(g: Graphon) -> str:
    """Limit behaviour of mass{degree <= alpha}/alpha as alpha -> 0.

    Step degrees take finitely many values, so the verdict reduces to whether
    any positive-mass block has degree exactly zero.  For the power family the
    ratio is alpha**((1-beta)/beta) * (beta+1)**(1/beta), so beta = 1 is the
    bounded-positive boundary.
    """
    if isinstance(g, StepGraphon):
        degs = g.block_degrees()
        if any(d == 0 for d in degs):
            return TAIL_FAILS_INFINITE
        return TAIL_HOLDS
    if g.beta < 1:
        return TAIL_HOLDS
    if g.beta == 1:
        return TAIL_FAILS_LIMINF
    return TAIL_FAILS_INFINITE


# ---------------------------------------------------------------------------
# peninsulae


@dataclass(frozen=True)
class PeninsulaCertificate:
    """Mass placement witnessing a density-zero trap in a step graphon.

    a is the trap parameter in (0, 1/2]; A gets total mass exactly a
    (kind="peninsula") or strictly more (kind="narrow"); B gets 1 - 2a; and
    the kernel is exactly zero on every block pair carrying A x (A u B).
    """

    a: Fraction
    A_fractions: tuple[Fraction, ...]
    B_fractions: tuple[Fraction, ...]
    kind: str  # "peninsula" | "narrow"

    def mass_A(self) -> Fraction:
        return sum(self.A_fractions, Fraction(0))

    def mass_B(self) -> Fraction:
        return sum(self.B_fractions, Fraction(0))

    def validate(self, g: StepGraphon) -> None:
        k = g.k
        if len(self.A_fractions) != k or len(self.B_fractions) != k:
            raise AssertionError("fraction vectors must have one entry per block")
        if not 0 < self.a <= HALF:
            raise AssertionError("a must lie in (0, 1/2]")
        for i in range(k):
            if self.A_fractions[i] < 0 or self.B_fractions[i] < 0:
                raise AssertionError("fractions must be nonnegative")
            if self.A_fractions[i] + self.B_fractions[i] > g.block_masses[i]:
                raise AssertionError(f"block {i} over-allocated")
        ma, mb = self.mass_A(), self.mass_B()
        if self.kind == "peninsula":
            if ma != self.a:
                raise AssertionError("peninsula requires mass(A) == a")
        elif self.kind == "narrow":
            if not ma > self.a:
                raise AssertionError("narrow requires mass(A) > a")
        else:
            raise AssertionError(f"unknown kind {self.kind!r}")
        if mb != 1 - 2 * self.a:
            raise AssertionError("mass(B) must equal 1 - 2a")
        for i in range(k):
            if self.A_fractions[i] > 0:
                if g.densities[i][i] != 0:
                    raise AssertionError(f"block {i} carries A but has positive diagonal")
                for j in range(k):
                    if (self.A_fractions[j] > 0 or self.B_fractions[j] > 0) and g.densities[i][j] != 0:
                        raise AssertionError(f"blocks ({i},{j}) violate the zero condition")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "a": str(self.a),
            "A_fractions": [str(x) for x in self.A_fractions],
            "B_fractions": [str(x) for x in self.B_fractions],
        }

    @staticmethod
    def from_dict(d: dict) -> "PeninsulaCertificate":
        return PeninsulaCertificate(
            a=_frac(d["a"], "a"),
            A_fractions=tuple(_frac(x, f"A_fractions[{i}]") for i, x in enumerate(d["A_fractions"])),
            B_fractions=tuple(_frac(x, f"B_fractions[{i}]") for i, x in enumerate(d["B_fractions"])),
            kind=d["kind"],
        )


def _independent_loopless_sets(g: StepGraphon, cap: int):
    """Yield (Zmask, mass(Z), mass(N(Z))) over nonempty candidate supports."""
    k = g.k
    if k > cap:
        raise EnumerationCapExceeded(f"k={k} exceeds enumeration cap {cap}")
    masks = g.positivity_masks()
    masses = g.block_masses
    for zmask in range(1, 1 << k):
        bits = [i for i in range(k) if (zmask >> i) & 1]
        # Z must be independent in the positivity graph, diagonal included.
        if any(masks[i] & zmask for i in bits):
            continue
        nmask = 0
        for i in bits:
            nmask |= masks[i]
        nmask &= ~zmask
        mz = sum((masses[i] for i in bits), Fraction(0))
        mn = sum((masses[j] for j in range(k) if (nmask >> j) & 1), Fraction(0))
        yield zmask, nmask, mz, mn


def _fill_blocks(g: StepGraphon, allowed: list[int], amount: Fraction,
                 reserved: dict[int, Fraction]) -> list[Fraction]:
    """Greedy deterministic mass placement into `allowed` blocks, index order."""
    out = [Fraction(0)] * g.k
    left = amount
    for i in allowed:
        if left == 0:
            break
        room = g.block_masses[i] - reserved.get(i, Fraction(0))
        take = min(room, left)
        if take > 0:
            out[i] = take
            left -= take
    if left != 0:
        raise AssertionError("internal: not enough room for mass placement")
    return out


def build_certificate(g: StepGraphon, zmask: int, kind: str) -> PeninsulaCertificate:
    """Deterministic certificate for a given support Z of A.

    kind="peninsula" needs mass(Z) >= mass(N(Z)); kind="narrow" needs strict
    inequality.  A is packed into Z in index order, B into everything outside
    N(Z) that A did not use.
    """
    k = g.k
    masks = g.positivity_masks()
    zbits = [i for i in range(k) if (zmask >> i) & 1]
    nmask = 0
    for i in zbits:
        nmask |= masks[i]
    nmask &= ~zmask
    mz = sum((g.block_masses[i] for i in zbits), Fraction(0))
    mn = sum((g.block_masses[j] for j in range(k) if (nmask >> j) & 1), Fraction(0))

    if kind == "narrow":
        if not mz > mn:
            raise AssertionError("narrow certificate needs mass(Z) > mass(N(Z))")
        a_hi = min(mz, HALF)
        a = (mn + a_hi) / 2
        upper = min(mz, 2 * a - mn)
        mass_a = (a + upper) / 2
    elif kind == "peninsula":
        if not mz >= mn:
            raise AssertionError("certificate needs mass(Z) >= mass(N(Z))")
        if mn > 0:
            a = mn
        else:
            # Z sees nothing: pad with half the leftover space, or split the
            # whole space in two when Z is everything.
            eps = min(mz, 1 - mz) / 2
            a = eps if eps > 0 else HALF
        mass_a = a
    else:
        raise AssertionError(f"unknown kind {kind!r}")

    a_fr = _fill_blocks(g, zbits, mass_a, {})
    allowed_b = [i for i in range(k) if not (nmask >> i) & 1]
    b_fr = _fill_blocks(g, allowed_b, 1 - 2 * a, {i: a_fr[i] for i in range(k)})
    cert = PeninsulaCertificate(a, tuple(a_fr), tuple(b_fr), kind)
    cert.validate(g)
    return cert


def find_peninsula(g: Graphon, cap: int = ENUMERATION_CAP) -> Optional[PeninsulaCertificate]:
    """Search all block supports for a trap; prefers a narrow certificate.

    A support Z works iff it is independent (diagonal included) in the block
    positivity graph and mass(Z) >= mass(N(Z)); strict inequality gives the
    narrow kind.  Deterministic: the narrow support maximizes the mass margin
    (ties to the smallest bitmask), the non-strict one is the smallest mask.
    """
    if isinstance(g, PowerFamilyGraphon):
        return None  # kernel positive almost everywhere
    best_narrow = None  # (margin, zmask)
    best_flat = None  # zmask
    for zmask, _nmask, mz, mn in _independent_loopless_sets(g, cap):
        if mz > mn:
            margin = mz - mn
            if best_narrow is None or margin > best_narrow[0]:
                best_narrow = (margin, zmask)
        elif mz == mn and best_flat is None:
            best_flat = zmask
    if best_narrow is not None:
        return build_certificate(g, best_narrow[1], "narrow")
    if best_flat is not None:
        return build_certificate(g, best_flat, "peninsula")
    return None


def block_positivity_graph(g: StepGraphon):
    """The weighted finite graph of the block structure.

    Vertices are blocks carrying their masses as weights; edges join distinct
    blocks of positive density; a positive diagonal becomes a self-loop.
    """
    from .fracmatch import FiniteGraph

    k = g.k
    edges = [
        (i, j) for i in range(k) for j in range(i + 1, k) if g.densities[i][j] > 0
    ]
    loops = [i for i in range(k) if g.densities[i][i] > 0]
    return FiniteGraph.build(k, edges, weights=list(g.block_masses), loops=loops)


def peninsula_kind_via_cover(g: StepGraphon) -> Optional[str]:
    """Trap verdict through half-integral covers of the weighted block graph.

    A trap corresponds to a non-constant half-integral cover of total weight
    at most 1/2; the narrow kind to weight strictly below 1/2.  The constant
    half function always covers, so the optimal weight never exceeds 1/2, and
    a non-constant cover of weight at most 1/2 must zero out some loop-free
    block, whose positive-density neighbors are then forced to one.

    An independent route through the min-cut machinery; `find_peninsula`
    stays the certificate-producing detector.
    """
    from .fracmatch import fvcn_half

    bg = block_positivity_graph(g)
    if fvcn_half(bg).weight < HALF:
        return "narrow"
    masks = g.positivity_masks()
    for i in range(g.k):
        if g.densities[i][i] != 0:
            continue
        removed = {i} | {j for j in range(g.k) if (masks[i] >> j) & 1}
        keep = [j for j in range(g.k) if j not in removed]
        neigh_mass = sum(
            (g.block_masses[j] for j in removed if j != i), Fraction(0)
        )
        if neigh_mass > HALF:
            continue
        sub = _induced_block_graph(g, keep)
        if neigh_mass + fvcn_half(sub).weight <= HALF:
            return "peninsula"
    return None


def _induced_block_graph(g: StepGraphon, keep: list[int]):
    from .fracmatch import FiniteGraph

    remap = {b: i for i, b in enumerate(keep)}
    edges = [
        (remap[a], remap[b])
        for a in keep
        for b in keep
        if a < b and g.densities[a][b] > 0
    ]
    loops = [remap[b] for b in keep if g.densities[b][b] > 0]
    weights = [g.block_masses[b] for b in keep]
    return FiniteGraph.build(len(keep), edges, weights=weights, loops=loops)


# ---------------------------------------------------------------------------
# exact balanced bipartite split


@dataclass(frozen=True)
class BipartiteSplitVerdict:
    possible: bool
    S_blocks: tuple[int, ...] = ()
    T_blocks: tuple[int, ...] = ()
    # (block index, mass of its S-part) when one fully isolated block must be
    # divided to hit mass exactly 1/2
    split_block: Optional[tuple[int, Fraction]] = None

    def validate(self, g: StepGraphon) -> None:
        if not self.possible:
            return
        s, t = set(self.S_blocks), set(self.T_blocks)
        if s & t:
            raise AssertionError("sides must be disjoint")
        split_mass = Fraction(0)
        if self.split_block is not None:
            b, sm = self.split_block
            if b in s or b in t:
                raise AssertionError("split block cannot also be wholly assigned")
            if not 0 < sm < g.block_masses[b]:
                raise AssertionError("split mass must be strictly inside the block")
            if any(g.densities[b][j] != 0 for j in range(g.k)):
                raise AssertionError("a split block must have zero density everywhere")
            split_mass = sm
        if s | t | ({self.split_block[0]} if self.split_block else set()) != set(range(g.k)):
            raise AssertionError("every block must be assigned")
        m_s = sum((g.block_masses[i] for i in s), Fraction(0)) + split_mass
        if m_s != HALF:
            raise AssertionError("side S must have mass exactly 1/2")
        for side in (s, t):
            for i in side:
                for j in side:
                    if g.densities[i][j] != 0:
                        raise AssertionError(f"within-side density ({i},{j}) nonzero")


def check_exact_bipartite_split(g: Graphon, cap: int = ENUMERATION_CAP) -> BipartiteSplitVerdict:
    """Can the blocks be 2-sided with mass exactly 1/2 each and zero inside?

    Only a fully isolated block (zero density to every block, itself included)
    can be divided between the sides, since both of its parts would carry
    positive mass on each side.  Isolated mass is therefore freely packable
    and a single boundary block suffices.
    """
    if isinstance(g, PowerFamilyGraphon):
        return BipartiteSplitVerdict(False)
    k = g.k
    if k > cap:
        raise EnumerationCapExceeded(f"k={k} exceeds enumeration cap {cap}")
    isolated = [i for i in range(k) if all(g.densities[i][j] == 0 for j in range(k))]
    others = [i for i in range(k) if i not in isolated]
    iso_mass = sum((g.block_masses[i] for i in isolated), Fraction(0))
    dens = g.densities
    for assign in range(1 << len(others)):
        s_blocks = [others[p] for p in range(len(others)) if (assign >> p) & 1]
        t_blocks = [others[p] for p in range(len(others)) if not (assign >> p) & 1]
        if any(dens[i][j] != 0 for i in s_blocks for j in s_blocks):
            continue
        if any(dens[i][j] != 0 for i in t_blocks for j in t_blocks):
            continue
        m_s = sum((g.block_masses[i] for i in s_blocks), Fraction(0))
        if not (m_s <= HALF <= m_s + iso_mass):
            continue
        # pack isolated blocks into S in index order until mass 1/2
        need = HALF - m_s
        s_full, split = list(s_blocks), None
        t_full = list(t_blocks)
        for i in isolated:
            if need == 0:
                t_full.append(i)
            elif g.block_masses[i] <= need:
                s_full.append(i)
                need -= g.block_masses[i]
            else:
                split = (i, need)
                need = Fraction(0)
        verdict = BipartiteSplitVerdict(True, tuple(sorted(s_full)), tuple(sorted(t_full)), split)
        verdict.validate(g)
        return verdict
    return BipartiteSplitVerdict(False)


# ---------------------------------------------------------------------------
# aggregate report


REGIME_HAMILTONIAN = "aas_hamiltonian"
REGIME_BOUNDED_HALF = "probability_bounded_half"
REGIME_NOT_HAMILTONIAN = "aas_not_hamiltonian"
REGIME_INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ConditionReport:
    connectivity: ConnectivityVerdict
    degree_tail: str
    peninsula: Optional[PeninsulaCertificate]
    bipartite_split: BipartiteSplitVerdict
    regime: str

    def to_dict(self) -> dict:
        conn = {"connected": self.connectivity.connected}
        if self.connectivity.witness is not None:
            conn["witness"] = [list(side) for side in self.connectivity.witness]
        if self.connectivity.split_block is not None:
            conn["split_block"] = self.connectivity.split_block
        out = {
            "connectivity": conn,
            "degree_tail": self.degree_tail,
            "peninsula": self.peninsula.to_dict() if self.peninsula else None,
            "exact_bipartite_split": {
                "possible": self.bipartite_split.possible,
                "S_blocks": list(self.bipartite_split.S_blocks),
                "T_blocks": list(self.bipartite_split.T_blocks),
            },
            "regime": self.regime,
        }
        if self.bipartite_split.split_block is not None:
            b, m = self.bipartite_split.split_block
            out["exact_bipartite_split"]["split_block"] = [b, str(m)]
        return out


def analyze(g: Graphon, cap: int = ENUMERATION_CAP) -> ConditionReport:
    """Bundle all condition checks and predict the Hamiltonicity regime.

    Strongly negative signals (disconnected kernel, infinite low-degree tail
    ratio, narrow trap, exact balanced split) dominate; otherwise all three
    positive conditions give the almost-sure regime, a non-narrow trap caps
    the probability at one half, and a merely bounded-positive tail leaves
    the verdict open.
    """
    conn = check_connected(g)
    tail = check_degree_tail(g)
    pen = find_peninsula(g, cap=cap)
    split = check_exact_bipartite_split(g, cap=cap)
    strongly_negative = (
        not conn.connected
        or tail == TAIL_FAILS_INFINITE
        or (pen is not None and pen.kind == "narrow")
        or split.possible
    )
    if strongly_negative:
        regime = REGIME_NOT_HAMILTONIAN
    elif conn.connected and tail == TAIL_HOLDS and pen is None:
        regime = REGIME_HAMILTONIAN
    elif pen is not None:
        regime = REGIME_BOUNDED_HALF
    else:
        regime = REGIME_INDETERMINATE
    return ConditionReport(conn, tail, pen, split, regime)
