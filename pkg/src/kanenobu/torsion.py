"""
Fox calculus and Reidemeister-Turaev torsion of branched double covers with cyclic H_1.

For a presentation with one relator per generator, A[i][j] is the abelianised
Fox derivative d b_j / d e_i in Q[H].  For a character phi into Q(zeta_d),

    tau^phi = phi(Delta^{r,s}) / (phi(h_s - 1) phi(g_r - 1))      (up to sign)

where Delta^{r,s} deletes row s and column r of A, h_s = [e_s], and g_r is
the class of the loop dual to the r-th 2-cell.  Gluing tau^phi over every
divisor d of N = |H| (with 0 at d = 1) recovers the maximal abelian torsion.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import (
    CyclotomicNumber,
    GroupRingElement,
    assemble_from_characters,
    character_map,
    divisors,
)
from .diagrams import KanenobuParams
from .intmatrix import smith_normal_form
from .presentations import (
    EmptyFamily,
    FreeWord,
    GroupPresentation,
    abelianize,
    enumerate_family,
    kanenobu_presentation,
)


class HypothesisViolation(ArithmeticError):
    """A denominator or the chosen minor vanishes under a character."""

    def __init__(self, message, d=None):
        super().__init__(message)
        self.d = d


class NonCyclicHomology(ValueError):
    """H_1 is not cyclic, so there is no single generator to twist by."""


def fox_derivative(word: FreeWord, g: int) -> dict[FreeWord, int]:
    """d word / d e_g as a formal Z-combination of free group elements."""
    out: dict[FreeWord, int] = defaultdict(int)
    prefix = FreeWord()
    for h, e in word.unit_letters():
        if e > 0:
            if h == g:
                out[prefix] += 1
            prefix = prefix * FreeWord.gen(h)
        else:
            prefix = prefix * FreeWord.gen(h, -1)
            if h == g:
                out[prefix] -= 1
    return {w: c for w, c in out.items() if c}


def abelian_fox_derivative(word: FreeWord, g: int, images, N: int) -> GroupRingElement:
    """Image of d word / d e_g in Q[Z/N], generator e_h going to images[h]."""
    coeffs = [0] * N
    c = 0
    for h, e in word.unit_letters():
        if e > 0:
            if h == g:
                coeffs[c] += 1
            c = (c + images[h]) % N
        else:
            c = (c - images[h]) % N
            if h == g:
                coeffs[c] -= 1
    return GroupRingElement(N, tuple(Fraction(x) for x in coeffs))


def homology_generator_images(pres: GroupPresentation, anchor: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Order N of a cyclic H_1 and the class of each generator in Z/N.

    Classes are normalised so that generator ``anchor`` maps to 1 (it must
    generate H_1); by default the first generator that does is used.
    """
    snf = smith_normal_form(abelianize(pres))
    st = snf.structure
    if not st.is_cyclic:
        raise NonCyclicHomology(f"H_1 has invariant factors {st.invariant_factors}, free rank {st.free_rank}")
    N = st.order
    w = pres.generator_count
    raw = [snf.U[w - 1, j] % N for j in range(w)]
    if N == 1:
        return 1, tuple(0 for _ in raw)
    candidates = [anchor] if anchor is not None else range(w)
    for a in candidates:
        try:
            unit = pow(raw[a], -1, N)
        except ValueError:
            continue
        return N, tuple(x * unit % N for x in raw)
    raise ValueError(f"generator {anchor} does not generate H_1")


@dataclass(frozen=True)
class FoxMatrix:
    """entries[i][j] = abelianised d b_j / d e_i in Q[Z/N]."""

    entries: tuple[tuple[GroupRingElement, ...], ...]
    generator_images: tuple[int, ...]
    N: int

    @property
    def size(self) -> int:
        return len(self.entries)

    def under(self, d: int) -> list[list[CyclotomicNumber]]:
        """The matrix pushed through the character with [generator of Z/N] -> zeta_d."""
        return [[character_map(x, d) for x in row] for row in self.entries]

    def augmented(self) -> list[list[Fraction]]:
        return [[x.augmentation() for x in row] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "generator_images": list(self.generator_images),
            "entries": [[x.to_json()["coeffs"] for x in row] for row in self.entries],
        }


def abelian_fox_matrix(pres: GroupPresentation, images, N: int) -> FoxMatrix:
    """Fox matrix for any homomorphism of the free group to Z/N given on generators."""
    w = pres.generator_count
    entries = tuple(
        tuple(abelian_fox_derivative(pres.relators[j], i, images, N) for j in range(w))
        for i in range(w)
    )
    return FoxMatrix(entries, tuple(images), N)


def fox_matrix(pres: GroupPresentation, anchor: int | None = None) -> FoxMatrix:
    """Fox matrix over Q[H_1] for a presentation with cyclic H_1."""
    N, images = homology_generator_images(pres, anchor)
    return abelian_fox_matrix(pres, images, N)


def cyclo_determinant(m: list[list[CyclotomicNumber]], modulus: int) -> CyclotomicNumber:
    """Determinant over Q(zeta_modulus) by Gaussian elimination."""
    a = [list(r) for r in m]
    n = len(a)
    det = CyclotomicNumber.from_int(modulus, 1)
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return CyclotomicNumber.from_int(modulus, 0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = a[col][col].inverse()
        for r in range(col + 1, n):
            if not a[r][col].is_zero():
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def minor_under(fm: FoxMatrix, d: int, r: int, s: int) -> CyclotomicNumber:
    """phi_d(Delta^{r,s}): delete row s and column r (1-based)."""
    m = fm.under(d)
    sub = [[x for j, x in enumerate(row) if j != r - 1] for i, row in enumerate(m) if i != s - 1]
    return cyclo_determinant(sub, d)


def twisted_torsion(fm: FoxMatrix, d: int, r: int = 4, s: int = 4, g_r: int | None = None) -> CyclotomicNumber:
    """phi_d(Delta^{r,s}) / (phi_d(h_s - 1) phi_d(g_r - 1)) with the sign of the raw formula.

    ``g_r`` is the class of the loop dual to the r-th 2-cell; by default the
    inverse of [e_r], which is the right choice for r = 4 on the presentations
    built here.
    """
    if d <= 1 or fm.N % d:
        raise ValueError(f"d must be a divisor of {fm.N} greater than 1")
    if g_r is None:
        g_r = -fm.generator_images[r - 1]
    one = CyclotomicNumber.from_int(d, 1)
    hs = CyclotomicNumber.zeta(d, fm.generator_images[s - 1]) - one
    gr = CyclotomicNumber.zeta(d, g_r) - one
    if hs.is_zero() or gr.is_zero():
        raise HypothesisViolation(f"phi_{d}(h_{s} - 1) or phi_{d}(g_{r} - 1) vanishes", d)
    delta = minor_under(fm, d, r, s)
    if delta.is_zero():
        raise HypothesisViolation(f"phi_{d}(Delta^{r},{s}) vanishes", d)
    return delta / (hs * gr)


# Only the dual loop of the last 2-cell is known, so fallbacks keep r = w (the
# last column) and move s; the Fox fundamental formula makes
# (-1)^(s+w) Delta^{w,s}/(h_s - 1) independent of s.


def fallback_rows(w: int) -> tuple[int, ...]:
    return tuple(range(w, 0, -1))


def torsion_component(fm: FoxMatrix, d: int) -> tuple[CyclotomicNumber, int]:
    """tau^phi_d, and the row s actually used."""
    w = len(fm.generator_images)
    last = None
    for s in fallback_rows(w):
        try:
            t = twisted_torsion(fm, d, w, s)
        except HypothesisViolation as exc:
            last = exc
            continue
        return (t if (s + w) % 2 == 0 else -t), s
    raise HypothesisViolation(f"every minor Delta^({w},s) vanishes under phi_{d}: {last}", d)


@dataclass(frozen=True)
class TorsionVector:
    """Coefficients of the maximal abelian torsion, indexed by k <-> [e_4]^k.

    Defined only up to a global sign and a cyclic translation; ``coeffs`` is
    the lexicographically least cyclic translate of the raw-sign vector.
    """

    N: int
    coeffs: tuple[Fraction, ...]
    sign_resolved: bool = False
    translation_resolved: bool = False
    rows_used: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.coeffs) != self.N:
            raise ValueError("need N coefficients")

    def candidates(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        """The two sign candidates +v and -v."""
        return self.coeffs, tuple(-c for c in self.coeffs)

    def total(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def has_reversal_symmetry(self) -> bool:
        """True when v(k) = v(c - k) for some c, i.e. v is a translate of its reversal."""
        N = self.N
        rev = [self.coeffs[-k % N] for k in range(N)]
        return any(tuple(rev[(k - c) % N] for k in range(N)) == self.coeffs for c in range(N))

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "coeffs": [str(c) for c in self.coeffs],
            "sign_resolved": self.sign_resolved,
            "translation_resolved": self.translation_resolved,
        }


def least_translate(v) -> tuple:
    v = tuple(v)
    return min(v[k:] + v[:k] for k in range(len(v)))


def maximal_torsion(pres: GroupPresentation, anchor: int | None = None) -> TorsionVector:
    """Maximal abelian torsion of a presentation of a rational homology sphere with cyclic H_1.

    The dual loop of the last 2-cell is taken to be the inverse of the last
    generator, as for the presentations built from white graphs here.
    """
    fm = fox_matrix(pres, anchor)
    N = fm.N
    comps = {}
    rows = {}
    for d in divisors(N):
        if d == 1:
            comps[d] = CyclotomicNumber.from_int(1, 0)
            continue
        try:
            comps[d], rows[d] = torsion_component(fm, d)
        except HypothesisViolation as exc:
            raise HypothesisViolation(f"divisor {d}: {exc}", d) from exc
    e = assemble_from_characters(N, comps)
    return TorsionVector(N, least_translate(e.coeffs), rows_used=rows)


def torsion_vector(params: KanenobuParams) -> TorsionVector:
    """Maximal abelian torsion of the branched double cover of K(n, p, q), [e_4] as generator."""
    return maximal_torsion(kanenobu_presentation(params), anchor=3)


def linear_coefficient(n: int) -> CyclotomicNumber:
    """-(zeta^(n+1) + zeta + 1) in Q(zeta_{2n+1})."""
    m = 2 * n + 1
    return -(CyclotomicNumber.zeta(m, n + 1) + CyclotomicNumber.zeta(m, 1) + CyclotomicNumber.from_int(m, 1))


def delta44(params: KanenobuParams) -> CyclotomicNumber:
    """phi(Delta^{4,4}) for the character [e_4] -> zeta_{2n+1}."""
    fm = fox_matrix(kanenobu_presentation(params), anchor=3)
    return minor_under(fm, 2 * params.n + 1, 4, 4)


@dataclass(frozen=True)
class GrowthReport:
    n: int
    p0: int
    q0: int
    p_values: tuple[int, ...]
    deltas: tuple[CyclotomicNumber, ...]
    slope: CyclotomicNumber
    constant: CyclotomicNumber
    affine: bool
    slope_matches: bool
    max_coeff: tuple[Fraction, ...]
    min_coeff: tuple[Fraction, ...]
    threshold: int | None

    def to_json(self) -> dict:
        return {
            "n": self.n, "p0": self.p0, "q0": self.q0,
            "p_values": list(self.p_values),
            "slope": self.slope.to_json(),
            "constant": self.constant.to_json(),
            "affine": self.affine,
            "slope_matches": self.slope_matches,
            "max_coeff": [str(x) for x in self.max_coeff],
            "min_coeff": [str(x) for x in self.min_coeff],
            "threshold": self.threshold,
        }


def monotone_threshold(ps, highs, lows) -> int | None:
    """Least sampled p from which highs strictly increase and lows strictly decrease to the end."""
    k = len(ps) - 1
    while k > 0 and highs[k] > highs[k - 1] and lows[k] < lows[k - 1]:
        k -= 1
    return ps[k] if k < len(ps) - 1 else None


def growth_analysis(n: int, p0: int, q0: int, p_range, with_torsion: bool = True) -> GrowthReport:
    """Exact affine law of phi(Delta^{4,4}) in p along the family, and extremal torsion coefficients."""
    _, members = enumerate_family(n, p0, q0, p_range)
    if len(members) < 2:
        raise EmptyFamily("need at least two admissible members")
    ps = tuple(k.p for k in members)
    ys = tuple(delta44(k) for k in members)
    slope = (ys[1] - ys[0]) / CyclotomicNumber.from_int(2 * n + 1, ps[1] - ps[0])
    const = ys[0] - slope * CyclotomicNumber.from_int(2 * n + 1, ps[0])
    affine = all(y == slope * CyclotomicNumber.from_int(2 * n + 1, p) + const for p, y in zip(ps, ys))
    highs, lows = [], []
    if with_torsion:
        for k in members:
            v = torsion_vector(k).coeffs
            highs.append(max(v))
            lows.append(min(v))
    threshold = monotone_threshold(ps, highs, lows) if with_torsion else None
    return GrowthReport(
        n, p0, q0, ps, ys, slope, const, affine, slope == linear_coefficient(n),
        tuple(highs), tuple(lows), threshold,
    )
