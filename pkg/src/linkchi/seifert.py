"""Seifert matrices: validation, derived matrices, moves and file format.

A Seifert matrix is an integer matrix partitioned into blocks, one per link
component, subject to two axioms: the (i,j) and (j,i) blocks are transposes
of each other for i != j, and each diagonal block B satisfies
det(B - B') = 1.  The second axiom forces every block size to be even
(an odd skew-symmetric matrix is singular).

Derived data: the intersection form S = A - A' (block diagonal, det 1, so
its inverse is integral), the transition matrix Z = A S^-1, and the
half-ones diagonal matrix used to normalize the trace invariants.  The two
matrix moves generating S-equivalence are block congruence (s1) and the
bordered two-row stabilization (s2).
"""

from __future__ import annotations

import functools
import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .ncalg import NCSeries

IntMatrix = tuple[tuple[int, ...], ...]


def _as_int_matrix(rows) -> IntMatrix:
    out = []
    for row in rows:
        row = tuple(row)
        for entry in row:
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise ValueError("matrix entries must be integers")
        out.append(row)
    return tuple(out)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    size = len(rows)
    if size == 0:
        return 1
    work = [list(row) for row in rows]
    sign = 1
    prev = 1
    for c in range(size - 1):
        if work[c][c] == 0:
            for r in range(c + 1, size):
                if work[r][c]:
                    work[c], work[r] = work[r], work[c]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(c + 1, size):
            for k in range(c + 1, size):
                work[r][k] = (work[r][k] * work[c][c] - work[r][c] * work[c][k]) // prev
            work[r][c] = 0
        prev = work[c][c]
    return sign * work[size - 1][size - 1]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a
    )


def mat_transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*a)) if a else ()


@dataclass(frozen=True)
class BlockStructure:
    """Component count and per-component block sizes."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if any(s < 0 for s in self.sizes):
            raise ValueError("block sizes must be >= 0")

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def offset(self, i: int) -> int:
        """Start index of block i (1-based component index)."""
        return sum(self.sizes[: i - 1])

    def block_range(self, i: int) -> range:
        lo = self.offset(i)
        return range(lo, lo + self.sizes[i - 1])

    def genus(self, i: int) -> int:
        return self.sizes[i - 1] // 2

    def component_of(self, index: int) -> int:
        """Component (1-based) owning a 0-based row/column index."""
        upto = 0
        for i, s in enumerate(self.sizes, start=1):
            upto += s
            if index < upto:
                return i
        raise IndexError(index)


@dataclass(frozen=True)
class SeifertMatrix:
    """An integer matrix with a block partition; axioms checked by validate."""

    structure: BlockStructure
    entries: IntMatrix

    def __post_init__(self):
        entries = _as_int_matrix(self.entries)
        object.__setattr__(self, "entries", entries)
        total = self.structure.total
        if len(entries) != total or any(len(row) != total for row in entries):
            raise ValueError(
                "entries are %dx? but structure totals %d"
                % (len(entries), total)
            )

    @property
    def n(self) -> int:
        return self.structure.n

    @property
    def size(self) -> int:
        return self.structure.total

    def block(self, i: int, j: int) -> IntMatrix:
        rows = self.structure.block_range(i)
        cols = self.structure.block_range(j)
        return tuple(
            tuple(self.entries[r][c] for c in cols) for r in rows
        )

    def transpose(self) -> "SeifertMatrix":
        return SeifertMatrix(self.structure, mat_transpose(self.entries))


def seifert_matrix(block_sizes: Iterable[int], entries) -> SeifertMatrix:
    return SeifertMatrix(BlockStructure(tuple(block_sizes)), _as_int_matrix(entries))


def validate(A: SeifertMatrix) -> list[str]:
    """Return the list of violated Seifert axioms (empty means valid)."""
    problems = []
    st = A.structure
    for i in range(1, st.n + 1):
        if st.sizes[i - 1] % 2:
            problems.append(
                "component %d: block size %d is odd" % (i, st.sizes[i - 1])
            )
    for i in range(1, st.n + 1):
        blk = A.block(i, i)
        skew = tuple(
            tuple(blk[r][c] - blk[c][r] for c in range(len(blk)))
            for r in range(len(blk))
        )
        d = int_det(skew)
        if d != 1:
            problems.append(
                "component %d: det(A_%d%d - A_%d%d') = %d, expected 1"
                % (i, i, i, i, i, d)
            )
    for i in range(1, st.n + 1):
        for j in range(i + 1, st.n + 1):
            bij = A.block(i, j)
            bji = A.block(j, i)
            symmetric = all(
                bij[r][c] == bji[c][r]
                for r in range(len(bij))
                for c in range(len(bij[r]))
            )
            if not symmetric:
                problems.append(
                    "blocks (%d,%d) and (%d,%d) are not transposes" % (i, j, j, i)
                )
    return problems


def require_valid(A: SeifertMatrix) -> None:
    problems = validate(A)
    if problems:
        raise ValueError("invalid Seifert matrix: " + "; ".join(problems))


def intersection_form(A: SeifertMatrix) -> IntMatrix:
    """S = A - A', block diagonal with per-block determinant 1."""
    e = A.entries
    size = A.size
    return tuple(
        tuple(e[r][c] - e[c][r] for c in range(size)) for r in range(size)
    )


def _invert_unimodular_block(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of an integer matrix with determinant 1 (exact, integral)."""
    size = len(rows)
    work = [[Fraction(v) for v in row] + [Fraction(int(r == c)) for c in range(size)]
            for r, row in enumerate(rows)]
    for c in range(size):
        if work[c][c] == 0:
            for r in range(c + 1, size):
                if work[r][c]:
                    work[c], work[r] = work[r], work[c]
                    break
        piv = work[c][c]
        work[c] = [v / piv for v in work[c]]
        for r in range(size):
            if r != c and work[r][c]:
                factor = work[r][c]
                work[r] = [a - factor * b for a, b in zip(work[r], work[c])]
    inv = []
    for r in range(size):
        row = []
        for v in work[r][size:]:
            if v.denominator != 1:
                raise ValueError("block inverse is not integral")
            row.append(v.numerator)
        inv.append(row)
    return inv


@functools.lru_cache(maxsize=256)
def z_matrix(A: SeifertMatrix) -> IntMatrix:
    """Z = A (A - A')^-1; integral because det(A - A') = 1.

    Satisfies Z + S Z' S^-1 = I with S the intersection form.
    """
    require_valid(A)
    st = A.structure
    size = A.size
    s = intersection_form(A)
    s_inv = [[0] * size for _ in range(size)]
    for i in range(1, st.n + 1):
        rng = st.block_range(i)
        blk = [[s[r][c] for c in rng] for r in rng]
        inv = _invert_unimodular_block(blk)
        for a, r in enumerate(rng):
            for b, c in enumerate(rng):
                s_inv[r][c] = inv[a][b]
    return mat_mul(A.entries, s_inv)


def default_half_pattern(structure: BlockStructure) -> tuple[int, ...]:
    """Per block: first half zeros, last half ones."""
    bits: list[int] = []
    for s in structure.sizes:
        if s % 2:
            raise ValueError("half pattern needs even block sizes")
        bits.extend([0] * (s // 2) + [1] * (s // 2))
    return tuple(bits)


def check_half_pattern(structure: BlockStructure, pattern: Sequence[int]) -> tuple[int, ...]:
    pattern = tuple(int(b) for b in pattern)
    if len(pattern) != structure.total:
        raise ValueError("pattern length != matrix size")
    if any(b not in (0, 1) for b in pattern):
        raise ValueError("pattern bits must be 0 or 1")
    for i in range(1, structure.n + 1):
        rng = structure.block_range(i)
        ones = sum(pattern[r] for r in rng)
        if 2 * ones != len(rng):
            raise ValueError(
                "pattern unbalanced on component %d: %d ones in size %d"
                % (i, ones, len(rng))
            )
    return pattern


def i_half(structure: BlockStructure, pattern: Sequence[int] | None = None) -> IntMatrix:
    """Diagonal 0/1 matrix with half ones per block."""
    if pattern is None:
        pattern = default_half_pattern(structure)
    else:
        pattern = check_half_pattern(structure, pattern)
    size = structure.total
    return tuple(
        tuple(pattern[r] if r == c else 0 for c in range(size)) for r in range(size)
    )


def balanced_patterns(structure: BlockStructure) -> Iterator[tuple[int, ...]]:
    """All balanced half patterns (intended for small block sizes)."""
    per_block = []
    for s in structure.sizes:
        g = s // 2
        block_choices = []
        for ones in itertools.combinations(range(s), g):
            bits = [0] * s
            for k in ones:
                bits[k] = 1
            block_choices.append(tuple(bits))
        per_block.append(block_choices)
    for combo in itertools.product(*per_block):
        yield tuple(itertools.chain.from_iterable(combo))


def move_s1(A: SeifertMatrix, P: Sequence[Sequence[int]]) -> SeifertMatrix:
    """Congruence B = P A P' for a block-diagonal unimodular integer P."""
    P = _as_int_matrix(P)
    st = A.structure
    if len(P) != A.size or any(len(row) != A.size for row in P):
        raise ValueError("P has the wrong shape")
    for r in range(A.size):
        for c in range(A.size):
            if st.component_of(r) != st.component_of(c) and P[r][c]:
                raise ValueError("P is not block diagonal")
    for i in range(1, st.n + 1):
        rng = st.block_range(i)
        blk = [[P[r][c] for c in rng] for r in rng]
        if int_det(blk) not in (1, -1):
            raise ValueError("P block %d is not unimodular" % i)
    return SeifertMatrix(st, mat_mul(mat_mul(P, A.entries), mat_transpose(P)))


def move_s2(
    A: SeifertMatrix, component: int, variant: str, rho: Sequence[int]
) -> SeifertMatrix:
    """Bordered stabilization: grow one component block by two.

    The two new rows and columns are inserted at the end of the chosen
    component's index range.  The new 2x2 corner is [[0,1],[0,0]] for
    variant "a" and [[0,0],[1,0]] for variant "b"; the old rows see the
    bordering column rho and a zero column.
    """
    st = A.structure
    if not 1 <= component <= st.n:
        raise ValueError("component %d out of range 1..%d" % (component, st.n))
    if variant not in ("a", "b"):
        raise ValueError("variant must be 'a' or 'b'")
    rho = [int(v) for v in rho]
    if len(rho) != A.size:
        raise ValueError("rho must have length %d" % A.size)
    corner = ((0, 1), (0, 0)) if variant == "a" else ((0, 0), (1, 0))

    insert_at = st.offset(component) + st.sizes[component - 1]
    old_positions = list(range(A.size))
    new_sizes = list(st.sizes)
    new_sizes[component - 1] += 2
    new_total = A.size + 2

    # position map: old index -> new index
    remap = [p if p < insert_at else p + 2 for p in old_positions]
    new1, new2 = insert_at, insert_at + 1

    entries = [[0] * new_total for _ in range(new_total)]
    for r in old_positions:
        for c in old_positions:
            entries[remap[r]][remap[c]] = A.entries[r][c]
    for r in old_positions:
        entries[remap[r]][new1] = rho[r]
    for c in old_positions:
        entries[new1][remap[c]] = rho[c]
    entries[new1][new1] = corner[0][0]
    entries[new1][new2] = corner[0][1]
    entries[new2][new1] = corner[1][0]
    entries[new2][new2] = corner[1][1]
    return SeifertMatrix(BlockStructure(tuple(new_sizes)), tuple(map(tuple, entries)))


def reflect(A: SeifertMatrix) -> SeifertMatrix:
    """Transpose, the Seifert matrix of the mirror-image link."""
    return A.transpose()


def direct_sum(A: SeifertMatrix, B: SeifertMatrix) -> SeifertMatrix:
    """Block-diagonal sum on the concatenated component structure."""
    sizes = A.structure.sizes + B.structure.sizes
    total = A.size + B.size
    entries = [[0] * total for _ in range(total)]
    for r in range(A.size):
        for c in range(A.size):
            entries[r][c] = A.entries[r][c]
    for r in range(B.size):
        for c in range(B.size):
            entries[A.size + r][A.size + c] = B.entries[r][c]
    return SeifertMatrix(BlockStructure(sizes), tuple(map(tuple, entries)))


def _symplectic_seed(genus: int) -> list[list[int]]:
    size = 2 * genus
    out = [[0] * size for _ in range(size)]
    for g in range(genus):
        out[2 * g][2 * g + 1] = 1
    return out


def random_seifert_rng(rng: random.Random, genera: Sequence[int], bound: int) -> SeifertMatrix:
    """Random valid matrix: diagonal blocks Q + Q' + J, symmetric off-diagonal."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    sizes = [2 * g for g in genera]
    st = BlockStructure(tuple(sizes))
    total = st.total
    entries = [[0] * total for _ in range(total)]
    for i in range(1, st.n + 1):
        rng_i = st.block_range(i)
        s = len(rng_i)
        q = [[rng.randint(-bound, bound) for _ in range(s)] for _ in range(s)]
        j = _symplectic_seed(s // 2)
        for a, r in enumerate(rng_i):
            for b, c in enumerate(rng_i):
                entries[r][c] = q[a][b] + q[b][a] + j[a][b]
    for i in range(1, st.n + 1):
        for jj in range(i + 1, st.n + 1):
            rows = st.block_range(i)
            cols = st.block_range(jj)
            for r in rows:
                for c in cols:
                    v = rng.randint(-bound, bound)
                    entries[r][c] = v
                    entries[c][r] = v
    return SeifertMatrix(st, tuple(map(tuple, entries)))


def random_seifert(seed: int, genera: Sequence[int], bound: int) -> SeifertMatrix:
    return random_seifert_rng(random.Random(seed), genera, bound)


def random_block_unimodular(rng: random.Random, structure: BlockStructure) -> IntMatrix:
    """Block-diagonal unimodular matrix from a few elementary operations."""
    total = structure.total
    P = [[int(r == c) for c in range(total)] for r in range(total)]
    for i in range(1, structure.n + 1):
        idx = list(structure.block_range(i))
        if len(idx) < 1:
            continue
        for _ in range(rng.randint(1, 3)):
            kind = rng.randrange(3)
            r = rng.choice(idx)
            if kind == 0 and len(idx) > 1:
                c = rng.choice([k for k in idx if k != r])
                coeff = rng.choice([-2, -1, 1, 2])
                for k in range(total):
                    P[r][k] += coeff * P[c][k]
            elif kind == 1:
                for k in range(total):
                    P[r][k] = -P[r][k]
            elif kind == 2 and len(idx) > 1:
                c = rng.choice([k for k in idx if k != r])
                P[r], P[c] = P[c], P[r]
    return tuple(map(tuple, P))


def random_move_rng(rng: random.Random, A: SeifertMatrix, bound: int = 2) -> SeifertMatrix:
    """One random s1 or s2 move; identity on component-free matrices."""
    if A.n == 0:
        return A
    if rng.random() < 0.5:
        return move_s1(A, random_block_unimodular(rng, A.structure))
    component = rng.randint(1, A.n)
    variant = rng.choice("ab")
    rho = [rng.randint(-bound, bound) for _ in range(A.size)]
    return move_s2(A, component, variant, rho)


def apply_random_moves(A: SeifertMatrix, seed: int, count: int) -> SeifertMatrix:
    rng = random.Random(seed)
    for _ in range(count):
        A = random_move_rng(rng, A)
    return A


def presentation_matrix(A: SeifertMatrix, trunc: int) -> list[list[NCSeries]]:
    """The matrix X Z + I over noncommutative series.

    X is block scalar (variable x_i on block i), so row r of X Z is row r
    of Z scaled on the left by the variable of r's component.
    """
    require_valid(A)
    st = A.structure
    n = st.n
    z = z_matrix(A)
    size = A.size
    out = []
    for r in range(size):
        var = st.component_of(r)
        row = []
        for c in range(size):
            terms = {}
            if z[r][c]:
                terms[(var,)] = Fraction(z[r][c])
            if r == c:
                terms[()] = Fraction(1)
            row.append(NCSeries(n, trunc, terms))
        out.append(row)
    return out


# -- file format ---------------------------------------------------------


class MatrixFormatError(ValueError):
    """Raised when a matrix file does not parse."""


def serialize(A: SeifertMatrix) -> str:
    doc = {
        "components": A.n,
        "block_sizes": list(A.structure.sizes),
        "entries": [list(row) for row in A.entries],
    }
    return json.dumps(doc, indent=1) + "\n"


def parse(text: str) -> SeifertMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(
            "line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)
        ) from None
    if not isinstance(doc, dict):
        raise MatrixFormatError("top level must be an object")
    for field in ("components", "block_sizes", "entries"):
        if field not in doc:
            raise MatrixFormatError("missing field %r" % field)
    components = doc["components"]
    sizes = doc["block_sizes"]
    entries = doc["entries"]
    if not isinstance(components, int):
        raise MatrixFormatError("components must be an integer")
    if not isinstance(sizes, list) or any(
        not isinstance(s, int) or s < 0 for s in sizes
    ):
        raise MatrixFormatError("block_sizes must be a list of non-negative integers")
    if len(sizes) != components:
        raise MatrixFormatError(
            "components=%d but block_sizes has %d entries" % (components, len(sizes))
        )
    total = sum(sizes)
    if not isinstance(entries, list) or len(entries) != total:
        raise MatrixFormatError("entries must be a %dx%d integer matrix" % (total, total))
    for row in entries:
        if (
            not isinstance(row, list)
            or len(row) != total
            or any(not isinstance(v, int) or isinstance(v, bool) for v in row)
        ):
            raise MatrixFormatError(
                "entries must be a %dx%d integer matrix" % (total, total)
            )
    return SeifertMatrix(
        BlockStructure(tuple(sizes)), tuple(tuple(row) for row in entries)
    )
