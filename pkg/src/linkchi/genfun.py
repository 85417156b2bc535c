"""Admissible generating series in the two noncommuting letters x and z.

These bivariate series are the recipe parameter of the trace invariants:
each one is stored as a finite map from words over {x, z} to rationals,
together with a declared bound ``xtrunc`` on the x-degree.  Admissibility
(finitely many terms of each x-degree) is enforced structurally: a series
is always a finite object and the caller asserts per-degree completeness
up to ``xtrunc``.

Built-ins: ``delta_series`` is log(xz + 1) and ``phi_series`` is
(xz + 1)^-1 x.  Transforms: word reversal (tilde), the substitution
x -> -x(1+x)^-1 (hat), their composite (bar), and z -> 1 - z.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import groupby
from typing import Iterable, Mapping

BiWord = str  # a word over the alphabet "xz", e.g. "xzzx"
TriWord = str  # a word over "xyz", used by the monomial reduction


def xdegree(word: BiWord) -> int:
    return word.count("x")


def parse_word(text: str) -> BiWord:
    """Parse the dotted CLI syntax, e.g. ``x.z.z.x`` -> ``xzzx``.

    The single token ``1`` denotes the empty word.
    """
    text = text.strip()
    if text == "1":
        return ""
    letters = text.split(".")
    for tok in letters:
        if tok not in ("x", "z"):
            raise ValueError("bad monomial token %r (expected x or z)" % tok)
    return "".join(letters)


def format_bi_word(word: BiWord) -> str:
    return ".".join(word) if word else "1"


def word_runs(word: BiWord) -> tuple[int, list[tuple[int, int]]]:
    """Split a word into x^f0 z^e1 x^f1 ... z^ek x^fk run lengths.

    Returns (f0, [(e1, f1), ..., (ek, fk)]); inner z-runs have e > 0 and the
    trailing f may be zero.
    """
    runs = [(ch, sum(1 for _ in grp)) for ch, grp in groupby(word)]
    f0 = 0
    start = 0
    if runs and runs[0][0] == "x":
        f0 = runs[0][1]
        start = 1
    pairs = []
    for idx in range(start, len(runs), 2):
        e = runs[idx][1]
        f = runs[idx + 1][1] if idx + 1 < len(runs) else 0
        pairs.append((e, f))
    return f0, pairs


class BiSeries:
    """Finite truncated series in the noncommuting letters x and z."""

    __slots__ = ("xtrunc", "terms", "provenance")

    def __init__(
        self,
        xtrunc: int,
        terms: Mapping[BiWord, Fraction] | None = None,
        provenance: str = "user-list",
    ):
        if xtrunc < 0:
            raise ValueError("xtrunc must be >= 0")
        self.xtrunc = xtrunc
        self.provenance = provenance
        clean: dict[BiWord, Fraction] = {}
        for word, coeff in (terms or {}).items():
            if set(word) - {"x", "z"}:
                raise ValueError("bad letters in word %r" % word)
            if xdegree(word) > xtrunc:
                continue
            coeff = Fraction(coeff)
            if coeff:
                prev = clean.get(word)
                coeff = coeff if prev is None else prev + coeff
                if coeff:
                    clean[word] = coeff
                elif prev is not None:
                    del clean[word]
        self.terms = clean

    @classmethod
    def zero(cls, xtrunc: int) -> "BiSeries":
        return cls(xtrunc)

    @classmethod
    def one(cls, xtrunc: int) -> "BiSeries":
        return cls(xtrunc, {"": Fraction(1)})

    def coefficient(self, word: BiWord) -> Fraction:
        return self.terms.get(word, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def x_degree_part(self, d: int) -> dict[BiWord, Fraction]:
        return {w: c for w, c in self.terms.items() if xdegree(w) == d}

    def sorted_terms(self) -> list[tuple[BiWord, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        t = min(self.xtrunc, other.xtrunc)
        a = {w: c for w, c in self.terms.items() if xdegree(w) <= t}
        b = {w: c for w, c in other.terms.items() if xdegree(w) <= t}
        return a == b

    def __add__(self, other: "BiSeries") -> "BiSeries":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return BiSeries(min(self.xtrunc, other.xtrunc), terms, "transformed")

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __neg__(self) -> "BiSeries":
        return BiSeries(
            self.xtrunc, {w: -c for w, c in self.terms.items()}, self.provenance
        )

    def scale(self, scalar) -> "BiSeries":
        scalar = Fraction(scalar)
        return BiSeries(
            self.xtrunc, {w: c * scalar for w, c in self.terms.items()}, "transformed"
        )

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return self.scale(other)
        xtrunc = min(self.xtrunc, other.xtrunc)
        terms: dict[BiWord, Fraction] = {}
        for wa, ca in self.terms.items():
            da = xdegree(wa)
            if da > xtrunc:
                continue
            for wb, cb in other.terms.items():
                if da + xdegree(wb) > xtrunc:
                    continue
                w = wa + wb
                terms[w] = terms.get(w, Fraction(0)) + ca * cb
        return BiSeries(xtrunc, terms, "transformed")

    def __rmul__(self, scalar) -> "BiSeries":
        return self.scale(scalar)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            "%s * %s"
            % (
                str(c) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator),
                format_bi_word(w),
            )
            for w, c in self.sorted_terms()
        )

    def __repr__(self) -> str:
        return "BiSeries(xtrunc=%d, <%s>)" % (self.xtrunc, self)


def monomial(word: BiWord, xtrunc: int, coeff=1) -> BiSeries:
    return BiSeries(xtrunc, {word: Fraction(coeff)})


def delta_series(xtrunc: int) -> BiSeries:
    """log(xz + 1) up to x-degree xtrunc."""
    terms = {
        "xz" * k: Fraction((-1) ** (k + 1), k) for k in range(1, xtrunc + 1)
    }
    return BiSeries(xtrunc, terms, "builtin-delta")


def phi_series(xtrunc: int) -> BiSeries:
    """(xz + 1)^-1 x up to x-degree xtrunc."""
    terms = {"xz" * k + "x": Fraction((-1) ** k) for k in range(xtrunc)}
    return BiSeries(xtrunc, terms, "builtin-phi")


def builtin_series(name: str, xtrunc: int) -> BiSeries:
    if name == "delta":
        return delta_series(xtrunc)
    if name == "phi":
        return phi_series(xtrunc)
    raise ValueError("unknown builtin series %r" % name)


def from_univariate(coeffs: Iterable, xtrunc: int) -> BiSeries:
    """Series G(xz) for G given by its coefficient list [G0, G1, ...]."""
    terms = {}
    for k, c in enumerate(coeffs):
        if k > xtrunc:
            break
        c = Fraction(c)
        if c:
            terms["xz" * k] = c
    return BiSeries(xtrunc, terms, "from-G")


def _hat_word(word: BiWord, xtrunc: int) -> dict[BiWord, Fraction]:
    """Expand one word under x -> -x + x^2 - x^3 + ..., z fixed."""
    out = {"": Fraction(1)}
    for letter in word:
        new: dict[BiWord, Fraction] = {}
        if letter == "z":
            for frag, c in out.items():
                new[frag + "z"] = c
        else:
            for frag, c in out.items():
                room = xtrunc - xdegree(frag)
                for j in range(1, room + 1):
                    w = frag + "x" * j
                    coeff = c * (-1) ** j
                    new[w] = new.get(w, Fraction(0)) + coeff
        out = new
    return out


def _one_minus_z_word(word: BiWord) -> dict[BiWord, Fraction]:
    """Expand each maximal z-run z^e into (1 - z)^e binomially."""
    out = {"": Fraction(1)}
    for ch, grp in groupby(word):
        run = sum(1 for _ in grp)
        if ch == "x":
            out = {frag + "x" * run: c for frag, c in out.items()}
            continue
        binom = 1
        expanded: dict[BiWord, Fraction] = {}
        for j in range(run + 1):
            sign = (-1) ** j
            for frag, c in out.items():
                w = frag + "z" * j
                expanded[w] = expanded.get(w, Fraction(0)) + c * sign * binom
            binom = binom * (run - j) // (j + 1)
        out = expanded
    return out


def transform(f: BiSeries, kind: str) -> BiSeries:
    """Apply tilde, hat, bar or z_to_one_minus_z to a series."""
    if kind == "tilde":
        terms = {w[::-1]: c for w, c in f.terms.items()}
        return BiSeries(f.xtrunc, terms, "transformed")
    if kind == "hat":
        terms: dict[BiWord, Fraction] = {}
        for word, coeff in f.terms.items():
            for w, c in _hat_word(word, f.xtrunc).items():
                terms[w] = terms.get(w, Fraction(0)) + coeff * c
        return BiSeries(f.xtrunc, terms, "transformed")
    if kind == "bar":
        return transform(transform(f, "hat"), "tilde")
    if kind == "z_to_one_minus_z":
        terms = {}
        for word, coeff in f.terms.items():
            for w, c in _one_minus_z_word(word).items():
                terms[w] = terms.get(w, Fraction(0)) + coeff * c
        return BiSeries(f.xtrunc, terms, "transformed")
    raise ValueError("unknown transform %r" % kind)


def inverse_extra_special(f: BiSeries) -> BiSeries:
    """Inverse of an extra-special series: x-degree-0 part exactly 1.

    Since 1 - f has positive x-degree everywhere, the geometric series
    terminates at xtrunc and the inverse is again admissible.
    """
    zero_part = f.x_degree_part(0)
    if zero_part != {"": Fraction(1)}:
        raise ValueError("series is not extra-special (x-degree-0 part != 1)")
    u = BiSeries.one(f.xtrunc) - f
    out = BiSeries.one(f.xtrunc)
    power = BiSeries.one(f.xtrunc)
    for _ in range(f.xtrunc):
        power = power * u
        if power.is_zero():
            break
        out = out + power
    return out


def prime_word(word: BiWord) -> TriWord:
    """Monomial reduction into three letters.

    Each z-run z^e becomes (zy)^(e-1) z and every x-run collapses to a
    single x, including the possibly empty runs at the two ends.  A pure-x
    word therefore maps to the single letter x.
    """
    _, pairs = word_runs(word)
    pieces = ["x"]
    for e, _ in pairs:
        pieces.append("zy" * (e - 1) + "z")
        pieces.append("x")
    return "".join(pieces)
