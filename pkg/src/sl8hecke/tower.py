"""Truncated Laurent-series model of the ramified local-field tower.

The base field is F = F_q((t)) in equal characteristic.  On top of it sit
two totally ramified extensions, each a Laurent-series field in its own
uniformizer:

    E2 = F_q((pi2))  with  pi2**2 = -t,
    E4 = F_q((pi4))  with  pi4**4 = -zeta*t,

where zeta is the canonical primitive root of F_q.  E2 and E4 are separate
towers over F; no embedding between them is needed (and none exists, since
zeta is a non-square).

Every element carries exactly N coefficients from its leading exponent,
where N is the session-wide relative precision.  Arithmetic is exact on
exponents; addition renormalises after cancellation.  If a sum cancels its
entire retained window the element is indistinguishable from zero at this
precision and the operation raises :class:`PrecisionExhausted` -- a hard
error, never a silent zero.  All quantities produced by the verification
runs are Laurent polynomials of tiny support, for which the window model
is exact; window tails created by division are correct to relative
precision N.

Galois actions are coefficientwise: the generator of Gal(E2/F) sends
pi2 -> -pi2, the chosen generator of Gal(E4/F) sends pi4 -> i4*pi4 with
i4 = zeta**((q-1)/4) a fixed fourth root of unity in F_q.  Norms and
traces to F multiply/sum the conjugates and re-read the result in t.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .residue import DomainError, ResidueField, UnitI, eta_residue

F = "F"
E2 = "E2"
E4 = "E4"

RAMIFICATION = {F: 1, E2: 2, E4: 4}


class PrecisionExhausted(ArithmeticError):
    """Every retained coefficient cancelled; the value cannot be told from 0."""


class TagMismatch(ValueError):
    """Operands live in different fields of the tower."""


class Tower:
    """A session: the residue field plus the three Laurent-series fields.

    Immutable after construction.  ``cache`` is a scratch dict used by
    higher layers to memoise lifts and transversals per session.
    """

    def __init__(self, field: ResidueField, precision: int = 40):
        if precision < 16:
            raise ValueError(f"precision {precision} too small (need >= 16)")
        self.field = field
        self.N = precision
        self.q = field.q
        # Fourth root of unity fixing the E4 Galois generator.
        self.i4 = field.pow(field.zeta, (field.q - 1) // 4)
        # t = u_e * pi_e**e in each upper field.
        self.t_unit = {
            F: 1,
            E2: field.neg(1),
            E4: field.mul(field.neg(1), field.inv(field.zeta)),
        }
        self.cache: dict = {}
        self._zeros: dict = {}
        self._galois_patterns: dict = {}
        self._base_patterns: dict = {}
        self._constants: dict = {}

    # -- constructors -------------------------------------------------------

    def zero(self, tag: str) -> "LaurentElem":
        got = self._zeros.get(tag)
        if got is None:
            got = LaurentElem(self, tag, 0, np.zeros(self.N, dtype=np.int64), is_zero=True)
            self._zeros[tag] = got
        return got

    def from_coeffs(self, tag: str, lead: int, coeffs) -> "LaurentElem":
        vals = list(coeffs)
        arr = np.zeros(self.N, dtype=np.int64)
        arr[: min(len(vals), self.N)] = vals[: self.N]
        k = _first_nonzero(arr)
        if k is None:
            return self.zero(tag)
        # exact unless the given support was truncated away
        exact = all(v == 0 for v in vals[self.N :]) if len(vals) > self.N else True
        return LaurentElem(self, tag, lead + k, _shift(arr, k), exact=exact)

    def constant(self, tag: str, enc: int) -> "LaurentElem":
        if enc == 0:
            return self.zero(tag)
        got = self._constants.get((tag, enc, 0))
        if got is None:
            arr = np.zeros(self.N, dtype=np.int64)
            arr[0] = enc
            got = LaurentElem(self, tag, 0, arr, supp=1)
            self._constants[(tag, enc, 0)] = got
        return got

    def one(self, tag: str) -> "LaurentElem":
        return self.constant(tag, 1)

    def integer(self, tag: str, n: int) -> "LaurentElem":
        return self.constant(tag, self.field.from_int(n))

    def uniformizer(self, tag: str) -> "LaurentElem":
        got = self._constants.get((tag, 1, 1))
        if got is None:
            arr = np.zeros(self.N, dtype=np.int64)
            arr[0] = 1
            got = LaurentElem(self, tag, 1, arr, supp=1)
            self._constants[(tag, 1, 1)] = got
        return got

    def t(self, tag: str) -> "LaurentElem":
        """The base uniformizer t viewed inside the field `tag`."""
        # t = t_unit[tag] * pi_e**e in every field of the tower.
        return self.from_coeffs(tag, RAMIFICATION[tag], [self.t_unit[tag]])

    def embed(self, x: "LaurentElem", tag: str) -> "LaurentElem":
        """View an F-element inside E2 or E4 (identity for tag F)."""
        if x.tag != F:
            raise TagMismatch(f"can only embed F-elements, got {x.tag}")
        if tag == F or x.is_zero:
            return x if tag == F else self.zero(tag)
        e = RAMIFICATION[tag]
        u = self.t_unit[tag]
        fld = self.field
        arr = np.zeros(self.N, dtype=np.int64)
        scale = fld.pow(u, x.lead) if x.lead != 0 else 1
        for j in range(self.N):
            pos = e * j
            if pos >= self.N:
                break
            if x.coeffs[j] != 0:
                arr[pos] = fld.mul(int(x.coeffs[j]), scale)
            scale = fld.mul(scale, u)
        if arr[0] == 0:
            raise AssertionError("embedding lost the leading term")
        exact = x.exact and e * (x.supp - 1) < self.N
        return LaurentElem(self, tag, e * x.lead, arr, exact=exact)

    def __repr__(self) -> str:
        return f"Tower(q={self.q}, N={self.N})"


def _first_nonzero(arr: np.ndarray):
    idx = np.flatnonzero(arr)
    return int(idx[0]) if len(idx) else None


def _shift(arr: np.ndarray, k: int) -> np.ndarray:
    """Drop the first k entries and zero-pad the tail back to full length."""
    if k == 0:
        return arr
    out = np.zeros(len(arr), dtype=np.int64)
    out[: len(arr) - k] = arr[k:]
    return out


class LaurentElem:
    """pi**lead * (c0 + c1*pi + ... + c_{N-1}*pi**(N-1)) in one tower field.

    Immutable value; c0 != 0 unless the element is exactly zero.  ``exact``
    records that the retained window is the complete value (a Laurent
    polynomial), which is what licenses recognising a full-window
    cancellation as a genuine zero; division and window overflow clear it.
    """

    __slots__ = ("tower", "tag", "lead", "coeffs", "is_zero", "exact", "_supp")

    def __init__(
        self,
        tower: Tower,
        tag: str,
        lead: int,
        coeffs: np.ndarray,
        is_zero: bool = False,
        exact: bool = True,
        supp: int | None = None,
    ):
        self.tower = tower
        self.tag = tag
        self.lead = 0 if is_zero else lead
        self.coeffs = coeffs
        self.is_zero = is_zero
        self.exact = True if is_zero else exact
        self._supp = 0 if is_zero else supp
        coeffs.flags.writeable = False

    @property
    def supp(self) -> int:
        """Index of the last nonzero retained coefficient, plus one."""
        s = self._supp
        if s is None:
            nz = np.flatnonzero(self.coeffs)
            s = int(nz[-1]) + 1 if len(nz) else 0
            self._supp = s
        return s

    # -- valuations ---------------------------------------------------------

    def ord(self) -> Fraction:
        """Valuation normalised so that ord(t) = 1."""
        if self.is_zero:
            raise DomainError("ord of zero")
        return Fraction(self.lead, RAMIFICATION[self.tag])

    def ord_norm(self) -> int:
        """Valuation normalised so that the field's own uniformizer has ord 1."""
        if self.is_zero:
            raise DomainError("ord of zero")
        return self.lead

    def unit_residue(self) -> int:
        """Leading coefficient; for a unit this is its residue in F_q."""
        if self.is_zero:
            raise DomainError("residue of zero")
        return int(self.coeffs[0])

    def is_integral(self) -> bool:
        return self.is_zero or self.lead >= 0

    def is_unit(self) -> bool:
        return not self.is_zero and self.lead == 0

    def in_maximal_ideal(self) -> bool:
        return self.is_zero or self.lead >= 1

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "LaurentElem") -> None:
        if self.tag != other.tag:
            raise TagMismatch(f"{self.tag} vs {other.tag}")

    def __add__(self, other: "LaurentElem") -> "LaurentElem":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        tw = self.tower
        lead = min(self.lead, other.lead)
        arr = np.zeros(tw.N, dtype=np.int64)
        off_a = self.lead - lead
        off_b = other.lead - lead
        if off_a < tw.N:
            arr[off_a:] = self.coeffs[: tw.N - off_a]
        if off_b < tw.N:
            arr[off_b:] = tw.field.vadd(arr[off_b:], other.coeffs[: tw.N - off_b])
        retained = (
            self.exact
            and other.exact
            and off_a + self.supp <= tw.N
            and off_b + other.supp <= tw.N
        )
        k = _first_nonzero(arr)
        if k is None:
            if retained:
                return tw.zero(self.tag)  # certified genuine cancellation
            raise PrecisionExhausted(
                f"all {tw.N} retained coefficients cancelled in {self.tag}"
            )
        return LaurentElem(tw, self.tag, lead + k, _shift(arr, k), exact=retained)

    def __neg__(self) -> "LaurentElem":
        if self.is_zero:
            return self
        return LaurentElem(
            self.tower,
            self.tag,
            self.lead,
            self.tower.field.vneg(self.coeffs),
            exact=self.exact,
            supp=self._supp,
        )

    def __sub__(self, other: "LaurentElem") -> "LaurentElem":
        return self + (-other)

    def __mul__(self, other: "LaurentElem") -> "LaurentElem":
        self._check(other)
        tw = self.tower
        if self.is_zero or other.is_zero:
            return tw.zero(self.tag)
        sa, sb = self.supp, other.supp
        fld = tw.field
        arr = np.zeros(tw.N, dtype=np.int64)
        if sb == 1:
            arr[:sa] = fld.vscale(int(other.coeffs[0]), self.coeffs[:sa])
            supp = sa
        elif sa == 1:
            arr[:sb] = fld.vscale(int(self.coeffs[0]), other.coeffs[:sb])
            supp = sb
        else:
            conv = fld.convolve(self.coeffs[:sa], other.coeffs[:sb])
            if len(conv) > tw.N:
                conv = conv[: tw.N]
                supp = None  # truncated; trailing zeros possible
            else:
                supp = len(conv)  # trailing coefficient is a product of units
            arr[: len(conv)] = conv
        exact = self.exact and other.exact and sa + sb - 1 <= tw.N
        return LaurentElem(tw, self.tag, self.lead + other.lead, arr, exact=exact, supp=supp)

    def inverse(self) -> "LaurentElem":
        tw = self.tower
        if self.is_zero:
            raise ZeroDivisionError(f"division by zero in {self.tag}")
        if self.supp == 1:  # monomial: exact O(1) inversion
            arr = np.zeros(tw.N, dtype=np.int64)
            arr[0] = tw.field.inv(int(self.coeffs[0]))
            return LaurentElem(tw, self.tag, -self.lead, arr, exact=self.exact, supp=1)
        return LaurentElem(
            tw, self.tag, -self.lead, tw.field.series_inverse(self.coeffs, tw.N), exact=False
        )

    def __truediv__(self, other: "LaurentElem") -> "LaurentElem":
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "LaurentElem":
        base = self if n >= 0 else self.inverse()
        m = abs(n)
        out = self.tower.one(self.tag)
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentElem):
            return NotImplemented
        if self.tag != other.tag:
            return False
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.lead == other.lead and bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None  # mutable-array payload; not hashable

    # -- Galois, norm, trace --------------------------------------------------

    def galois(self, k: int) -> "LaurentElem":
        """Apply the k-th power of the chosen Galois generator of this field."""
        tw = self.tower
        e = RAMIFICATION[self.tag]
        k %= e
        if k == 0 or self.is_zero:
            return self
        fld = tw.field
        # multiplier at position j is (generator image unit)**(k*(lead+j)),
        # a periodic pattern cached per (tag, k, lead mod period)
        key = (self.tag, k, self.lead % e)
        pattern = tw._galois_patterns.get(key)
        if pattern is None:
            if self.tag == E2:
                unit = fld.neg(1)  # pi2 -> -pi2
            else:
                unit = fld.pow(tw.i4, k)  # pi4 -> i4**k * pi4
            vals = []
            acc = fld.pow(unit, self.lead % e) if self.lead % e else 1
            for _ in range(tw.N):
                vals.append(acc)
                acc = fld.mul(acc, unit)
            pattern = np.array(vals, dtype=np.int64)
            pattern.flags.writeable = False
            tw._galois_patterns[key] = pattern
        return LaurentElem(
            tw,
            self.tag,
            self.lead,
            fld.vmul(self.coeffs, pattern),
            exact=self.exact,
            supp=self._supp,
        )

    def _to_base(self, lead: int, arr: np.ndarray, exact: bool) -> "LaurentElem":
        """Re-read an E-element supported on exponents divisible by e as an F-element."""
        tw = self.tower
        e = RAMIFICATION[self.tag]
        fld = tw.field
        if lead % e != 0:
            raise AssertionError("Galois-symmetric element has non-divisible lead")
        stray = np.flatnonzero(arr)
        if len(stray) and ((lead + stray) % e).any():
            raise AssertionError("Galois-symmetric element has stray coefficients")
        # base digit w picks up t_unit**(-w); the w-independent pattern is cached
        pattern = tw._base_patterns.get(self.tag)
        if pattern is None:
            u_inv = fld.inv(tw.t_unit[self.tag])
            vals = []
            acc = 1
            for _ in range(tw.N):
                vals.append(acc)
                acc = fld.mul(acc, u_inv)
            pattern = np.array(vals, dtype=np.int64)
            pattern.flags.writeable = False
            tw._base_patterns[self.tag] = pattern
        w0 = lead // e
        picked = arr[::e]
        m = len(picked)
        scaled = fld.vmul(picked, pattern[:m])
        head_scale = fld.pow(fld.inv(tw.t_unit[self.tag]), w0)
        if head_scale != 1:
            scaled = fld.vscale(head_scale, scaled)
        out = np.zeros(tw.N, dtype=np.int64)
        out[:m] = scaled
        # Window tails beyond N/e base digits are exact only for polynomial
        # support, signalled by the exact flag.
        k = _first_nonzero(out)
        if k is None:
            raise AssertionError("empty base-field reading of a nonzero element")
        return LaurentElem(tw, F, w0 + k, _shift(out, k), exact=exact)

    def norm_to_F(self) -> "LaurentElem":
        """Product of all Galois conjugates, read in F."""
        if self.tag == F:
            return self
        if self.is_zero:
            return self.tower.zero(F)
        tw = self.tower
        fld = tw.field
        if self.supp == 1:
            # monomial c * pi**m: the conjugate product collapses to
            # c**2 * t**m over the quadratic field, c**4 * zeta**m * t**m
            # over the quartic one
            c = int(self.coeffs[0])
            if self.tag == E2:
                value = fld.pow(c, 2)
            else:
                value = fld.mul(fld.pow(c, 4), fld.pow(fld.zeta, self.lead))
            arr = np.zeros(tw.N, dtype=np.int64)
            arr[0] = value
            return LaurentElem(tw, F, self.lead, arr, exact=self.exact, supp=1)
        e = RAMIFICATION[self.tag]
        prod = self
        for k in range(1, e):
            prod = prod * self.galois(k)
        return prod._to_base(prod.lead, prod.coeffs, prod.exact)

    def trace_to_F(self) -> "LaurentElem":
        """Sum of all Galois conjugates, read in F."""
        if self.tag == F:
            return self
        if self.is_zero:
            return self.tower.zero(F)
        tw = self.tower
        e = RAMIFICATION[self.tag]
        # All conjugates share the window [lead, lead+N); sum positionally in
        # one pass so intermediate partial sums cannot masquerade as zero.
        acc = self.coeffs
        for k in range(1, e):
            acc = tw.field.vadd(acc, self.galois(k).coeffs)
        j = _first_nonzero(acc)
        if j is None:
            if self.exact:
                return tw.zero(F)  # genuinely trace-free (all conjugates cancel)
            raise PrecisionExhausted(
                f"trace cancelled every retained coefficient in {self.tag}"
            )
        return self._to_base(self.lead + j, _shift(acc, j), self.exact)

    def eta(self) -> UnitI:
        """The character of F^x that is trivial on t and 1 + tF_q[[t]] and
        sends zeta to i; reads only the unit-part residue."""
        if self.tag != F:
            raise TagMismatch("eta is a character of F^x")
        if self.is_zero:
            raise DomainError("eta of zero")
        return eta_residue(self.tower.field, int(self.coeffs[0]))

    # -- display --------------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_zero:
            return f"{self.tag}:0"
        terms = []
        for j in range(self.tower.N):
            c = int(self.coeffs[j])
            if c == 0:
                continue
            if len(terms) >= 6:
                terms.append("...")
                break
            if j == 0:
                terms.append(str(c))
            elif j == 1:
                terms.append(f"{c}*pi" if c != 1 else "pi")
            else:
                terms.append(f"{c}*pi^{j}" if c != 1 else f"pi^{j}")
        body = " + ".join(terms)
        if self.lead == 0:
            return f"{self.tag}:({body})"
        return f"{self.tag}:pi^{self.lead}*({body})"


# ---------------------------------------------------------------------------
# module-level operations


def galois(k: int, x: LaurentElem) -> LaurentElem:
    return x.galois(k)


def norm_to_F(x: LaurentElem) -> LaurentElem:
    return x.norm_to_F()


def trace_to_F(x: LaurentElem) -> LaurentElem:
    return x.trace_to_F()


def eta_F(x: LaurentElem) -> UnitI:
    return x.eta()


def norm_unit_image_check(tower: Tower, tag: str, rng=None, samples: int = 100) -> bool:
    """Check that eta**2 (for E2) resp. eta (for E4) kills all unit norms.

    Exhausts the residue classes of the unit group and samples `samples`
    units with random higher-order terms.
    """
    if tag not in (E2, E4):
        raise ValueError("unit-norm image check applies to E2 or E4")
    power = 2 if tag == E2 else 1
    units = [tower.constant(tag, u) for u in tower.field.units()]
    if rng is not None:
        units += [random_unit(tower, tag, rng) for _ in range(samples)]
    for u in units:
        value = u.norm_to_F().eta() ** power
        if value.exp != 0:
            return False
    return True


def random_unit(tower: Tower, tag: str, rng, depth: int = 6) -> LaurentElem:
    """A random unit with polynomial support (exact under norms and traces)."""
    coeffs = [rng.randrange(1, tower.q)]
    coeffs += [rng.randrange(tower.q) for _ in range(depth)]
    return tower.from_coeffs(tag, 0, coeffs)


def random_element(tower: Tower, tag: str, rng, depth: int = 6, val_range: int = 4) -> LaurentElem:
    return tower.from_coeffs(
        tag,
        rng.randrange(-val_range, val_range + 1),
        [rng.randrange(1, tower.q)] + [rng.randrange(tower.q) for _ in range(depth)],
    )


