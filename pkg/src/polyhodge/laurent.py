"""Exact multivariate Laurent polynomials with integer coefficients.

A polynomial is a map from exponent vectors to nonzero integer coefficients.
Exponent vectors are tuples of length 5 over the fixed variable list
(u, v, w, t, L); exponents may be negative.  Two polynomials are equal iff
their coefficient maps are equal, and the zero polynomial is the empty map.

Values are immutable after construction and all operations are pure, so they
are safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

VARS = ("u", "v", "w", "t", "L")
NVARS = len(VARS)
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}

#: Sentinel returned by degree_in() on the zero polynomial.
NEG_INF = float("-inf")

Exponent = tuple[int, int, int, int, int]

_ZERO_EXP: Exponent = (0,) * NVARS


def _unit_exp(name: str) -> Exponent:
    e = [0] * NVARS
    e[_VAR_INDEX[name]] = 1
    return tuple(e)


class LaurentPoly:
    """Immutable Laurent polynomial over Z in the variables u, v, w, t, L."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean: dict[Exponent, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    clean[tuple(exp)] = int(coeff)
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def const(n: int) -> "LaurentPoly":
        return LaurentPoly({_ZERO_EXP: n})

    @staticmethod
    def var(name: str, power: int = 1) -> "LaurentPoly":
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}; expected one of {VARS}")
        e = [0] * NVARS
        e[_VAR_INDEX[name]] = power
        return LaurentPoly({tuple(e): 1})

    @staticmethod
    def monomial(coeff: int, exps: Mapping[str, int]) -> "LaurentPoly":
        e = [0] * NVARS
        for name, k in exps.items():
            e[_VAR_INDEX[name]] = k
        return LaurentPoly({tuple(e): coeff})

    # -- basic protocol ----------------------------------------------------

    def terms(self) -> Iterable[tuple[Exponent, int]]:
        """Iterate (exponent, coefficient) pairs in lexicographic order."""
        return iter(sorted(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) == 1:
                exp, c = next(iter(self._terms.items()))
                if c in (1, -1):
                    e = tuple(n * a for a in exp)
                    return LaurentPoly({e: -1 if (c == -1 and n % 2) else 1})
            raise ValueError("negative powers only defined for unit monomials")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- queries -----------------------------------------------------------

    def coeff(self, exps: Mapping[str, int] | tuple) -> int:
        """Coefficient of the given monomial (0 if absent)."""
        if isinstance(exps, tuple):
            return self._terms.get(exps, 0)
        e = [0] * NVARS
        for name, k in exps.items():
            e[_VAR_INDEX[name]] = k
        return self._terms.get(tuple(e), 0)

    def degree_in(self, name: str):
        """Max exponent of a variable; NEG_INF for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        i = _VAR_INDEX[name]
        return max(e[i] for e in self._terms)

    def min_degree_in(self, name: str):
        if not self._terms:
            return NEG_INF
        i = _VAR_INDEX[name]
        return min(e[i] for e in self._terms)

    def is_polynomial(self) -> bool:
        """True if no exponent is negative."""
        return all(min(e) >= 0 for e in self._terms) if self._terms else True

    def variables(self) -> tuple[str, ...]:
        """Variables that actually occur."""
        used = [False] * NVARS
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, f in zip(VARS, used) if f)

    def coeff_in(self, name: str, k: int) -> "LaurentPoly":
        """Coefficient of name**k, as a polynomial in the other variables."""
        i = _VAR_INDEX[name]
        out = {}
        for e, c in self._terms.items():
            if e[i] == k:
                reduced = list(e)
                reduced[i] = 0
                out[tuple(reduced)] = c
        return LaurentPoly(out)

    @staticmethod
    def assemble_in(name: str, parts: Mapping[int, "LaurentPoly"]) -> "LaurentPoly":
        """Inverse of coeff_in: sum of parts[k] * name**k."""
        acc = _ZERO
        for k, p in parts.items():
            acc = acc + p * LaurentPoly.var(name, k)
        return acc

    # -- substitution ------------------------------------------------------

    def substitute(self, sub: Mapping[str, "LaurentPoly | int"]) -> "LaurentPoly":
        """Substitute variables by Laurent monomials or integer constants.

        Each target must be a single-term Laurent monomial or an integer, so
        the substitution acts as a monoid homomorphism on exponents.  Raises
        ValueError when a substitution would require dividing polynomials
        (a negative power of a constant target other than +-1).
        """
        targets: list[tuple[Exponent, int] | None] = [None] * NVARS
        for name, value in sub.items():
            i = _VAR_INDEX[name]
            if isinstance(value, int):
                targets[i] = (_ZERO_EXP, value)
            else:
                if len(value._terms) != 1:
                    raise ValueError(
                        f"substitution target for {name} must be a monomial or constant"
                    )
                targets[i] = next(iter(value._terms.items()))
        out: dict[Exponent, int] = {}
        for e, c in self._terms.items():
            new_exp = [0] * NVARS
            coeff = c
            for i, k in enumerate(e):
                if k == 0:
                    continue
                tgt = targets[i]
                if tgt is None:
                    new_exp[i] += k
                    continue
                texp, tc = tgt
                if tc == 1:
                    pass
                elif tc == -1:
                    if k % 2:
                        coeff = -coeff
                elif k >= 0:
                    coeff *= tc**k
                else:
                    raise ValueError(
                        "substitution would require division of polynomials"
                    )
                for j in range(NVARS):
                    new_exp[j] += k * texp[j]
            key = tuple(new_exp)
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly(out)

    def eval_int(self, values: Mapping[str, int]) -> int:
        """Evaluate at integer values given for every occurring variable."""
        total = 0
        for e, c in self._terms.items():
            term = c
            for i, k in enumerate(e):
                if k == 0:
                    continue
                name = VARS[i]
                if name not in values:
                    raise ValueError(f"no value supplied for variable {name}")
                x = values[name]
                if k < 0:
                    f = Fraction(x) ** k
                    if f.denominator != 1:
                        raise ValueError("non-integer evaluation")
                    term *= int(f)
                else:
                    term *= x**k
            total += term
        return total

    # -- exact division ----------------------------------------------------

    def div_exact_monomial(self, exps: Mapping[str, int]) -> "LaurentPoly":
        """Laurent-shift by a monomial (always exact in the Laurent ring)."""
        shift = [0] * NVARS
        for name, k in exps.items():
            shift[_VAR_INDEX[name]] = k
        return LaurentPoly(
            {tuple(a - b for a, b in zip(e, shift)): c for e, c in self._terms.items()}
        )

    def div_exact_poly_monomial(self, exps: Mapping[str, int]) -> "LaurentPoly":
        """Divide by a monomial, requiring a polynomial quotient."""
        q = self.div_exact_monomial(exps)
        if not q.is_polynomial():
            raise ValueError("inexact division: quotient has negative exponents")
        return q

    # -- rendering ---------------------------------------------------------

    def to_json_obj(self) -> list[dict]:
        """Canonical serialization: terms sorted lexicographically by exponent."""
        return [
            {"exponents": list(e), "coeff": str(c)} for e, c in sorted(self._terms.items())
        ]

    @staticmethod
    def from_json_obj(obj: Iterable[dict]) -> "LaurentPoly":
        terms = {}
        for entry in obj:
            exps = tuple(int(x) for x in entry["exponents"])
            if len(exps) != NVARS:
                raise ValueError(f"exponent vector must have length {NVARS}")
            terms[exps] = int(entry["coeff"])
        return LaurentPoly(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items()):
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(VARS[i])
                elif k != 0:
                    factors.append(f"{VARS[i]}^{k}")
            if not factors:
                body = str(abs(c))
            else:
                body = "*".join(factors)
                if abs(c) != 1:
                    body = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


_ZERO = LaurentPoly()
_ONE = LaurentPoly({_ZERO_EXP: 1})

U = LaurentPoly.var("u")
V = LaurentPoly.var("v")
W = LaurentPoly.var("w")
T = LaurentPoly.var("t")
L = LaurentPoly.var("L")
ONE = _ONE
ZERO = _ZERO


def univariate(p: LaurentPoly, name: str) -> dict[int, int]:
    """Coefficient map of a polynomial that uses only one variable."""
    i = _VAR_INDEX[name]
    out = {}
    for e, c in p._terms.items():
        if any(k != 0 for j, k in enumerate(e) if j != i):
            raise ValueError(f"polynomial is not univariate in {name}: {p}")
        out[e[i]] = c
    return out


def from_univariate(coeffs: Mapping[int, int], name: str) -> LaurentPoly:
    i = _VAR_INDEX[name]
    terms = {}
    for k, c in coeffs.items():
        if c:
            e = [0] * NVARS
            e[i] = k
            terms[tuple(e)] = c
    return LaurentPoly(terms)


def div_exact_t_minus_one(p: LaurentPoly, name: str = "t") -> LaurentPoly:
    """Exact division of a univariate polynomial by (name - 1).

    Raises ValueError when the division leaves a remainder; used where a
    vanishing remainder is a structural guarantee and a nonzero one signals
    an upstream bug.
    """
    coeffs = univariate(p, name)
    if not coeffs:
        return ZERO
    lo, hi = min(coeffs), max(coeffs)
    if lo < 0:
        raise ValueError("expected a polynomial, got negative exponents")
    # Synthetic division from the top: p = (x-1) q + r with r = p(1).
    q: dict[int, int] = {}
    carry = 0
    for k in range(hi, 0, -1):
        carry += coeffs.get(k, 0)
        q[k - 1] = carry
    remainder = carry + coeffs.get(0, 0)
    if remainder != 0:
        raise ValueError(f"inexact division by ({name} - 1): remainder {remainder}")
    return from_univariate(q, name)
