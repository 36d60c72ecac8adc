"""Root data over a symmetrizable generalized Cartan matrix.

The module builds finite and untwisted-affine root data (character and
cocharacter lattices with embedded simple roots and coroots), and provides
the Weyl group machinery everything downstream relies on: canonical reduced
words, inversion sets, Bruhat order, reflections attached to arbitrary
positive real roots, and the action on characters.

Weyl group elements are identified by their integer matrix on the root
lattice (s_i: alpha_j -> alpha_j - a_ij alpha_i), which is faithful for the
finite and untwisted-affine kinds supported here.  The canonical reduced
word picks the smallest left descent at each step, so equal elements always
carry the same word.

Generator labels are 1..n for finite data and 0..n (node 0 affine) for
affine data, matching the usual numbering of the extended diagram.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "CartanMatrixError",
    "RootDatumError",
    "CartanMatrix",
    "Root",
    "WeylElt",
    "AffineData",
    "RootDatum",
    "classify_cartan",
    "build_datum",
    "preset_datum",
    "PRESET_MATRICES",
    "canonicalize_word",
    "multiply_elts",
    "inverse_elt",
    "inversion_set",
    "left_descents",
    "bruhat_leq",
    "real_roots_up_to_height",
    "positive_real_roots_up_to_height",
    "all_positive_roots",
    "highest_root",
    "act_on_character",
    "char_matrix",
    "reflection_of_root",
    "coroot_of_root",
    "weyl_ball",
    "reduced_words",
]


class CartanMatrixError(ValueError):
    pass


class RootDatumError(ValueError):
    pass


Mat = tuple[tuple[int, ...], ...]
Vec = tuple[int, ...]


def _mat_id(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def _dot(a: Vec, b: Vec) -> int:
    return sum(x * y for x, y in zip(a, b))


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    rows = [row[:] for row in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            det = -det
        det *= rows[k][k]
        for i in range(k + 1, n):
            f = rows[i][k] / rows[k][k]
            if f:
                for j in range(k, n):
                    rows[i][j] -= f * rows[k][j]
    return det


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [row[:] for row in rows]
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                for j in range(col, n):
                    rows[i][j] -= f * rows[r][j]
        r += 1
        if r == m:
            break
    return r


class CartanMatrix:
    """A symmetrizable generalized Cartan matrix a_ij = <coroot_i, root_j>."""

    __slots__ = ("entries", "n", "symmetrizer")

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise CartanMatrixError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if rows[i][i] != 2:
                raise CartanMatrixError(f"diagonal entry a_{i}{i} != 2")
            for j in range(n):
                if i != j:
                    if rows[i][j] > 0:
                        raise CartanMatrixError(f"positive off-diagonal a_{i}{j}")
                    if (rows[i][j] == 0) != (rows[j][i] == 0):
                        raise CartanMatrixError(
                            f"zero pattern not symmetric at ({i},{j})"
                        )
        self.entries = rows
        self.n = n
        self.symmetrizer = self._symmetrize()

    def _symmetrize(self) -> tuple[Fraction, ...]:
        """Positive d_i with d_i a_ij = d_j a_ji, found by graph propagation."""
        n = self.n
        a = self.entries
        d: list[Fraction | None] = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if i == j or a[i][j] == 0:
                        continue
                    val = d[i] * Fraction(a[i][j], a[j][i])
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise CartanMatrixError("matrix is not symmetrizable")
        return tuple(d)  # type: ignore[arg-type]

    def submatrix(self, keep: list[int]) -> "CartanMatrix":
        return CartanMatrix(
            [[self.entries[i][j] for j in keep] for i in keep]
        )

    def is_connected(self) -> bool:
        n = self.n
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j not in seen and self.entries[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == n

    def __eq__(self, other):
        return isinstance(other, CartanMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"CartanMatrix({[list(r) for r in self.entries]})"


def _leading_minors_positive(A: CartanMatrix) -> bool:
    # With B = diag(d) A symmetric and d > 0, A's leading minors carry the
    # same signs as B's, so this is Sylvester's criterion for the
    # symmetrized form.
    for k in range(1, A.n + 1):
        rows = [[Fraction(A.entries[i][j]) for j in range(k)] for i in range(k)]
        if _det(rows) <= 0:
            return False
    return True


def _null_vector(rows: list[list[Fraction]]) -> list[Fraction] | None:
    """A nonzero kernel vector of a square matrix with 1-dim kernel, or None."""
    n = len(rows)
    rows = [row[:] for row in rows]
    pivots = {}
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(n):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                for j in range(n):
                    rows[i][j] -= f * rows[r][j]
        pivots[col] = r
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    c0 = free[0]
    v = [Fraction(0)] * n
    v[c0] = Fraction(1)
    for col, r_idx in pivots.items():
        v[col] = -rows[r_idx][c0] / rows[r_idx][col]
    return v


def _primitive_int_vector(v: list[Fraction]) -> list[int]:
    from math import gcd, lcm

    den = 1
    for f in v:
        den = lcm(den, f.denominator)
    ints = [int(f * den) for f in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    if sum(ints) < 0 or (sum(ints) == 0 and ints[0] < 0):
        ints = [-x for x in ints]
    return ints


def classify_cartan(A: CartanMatrix) -> str:
    """Return 'finite', 'affine' (untwisted), or raise for anything else."""
    if _leading_minors_positive(A):
        return "finite"
    rows = [[Fraction(x) for x in row] for row in A.entries]
    if _det(rows) != 0:
        raise CartanMatrixError("matrix is neither finite nor affine untwisted")
    if A.n < 2 or not A.is_connected():
        raise CartanMatrixError("affine input must be connected of size >= 2")
    finite_part = A.submatrix(list(range(1, A.n)))
    if not _leading_minors_positive(finite_part):
        raise CartanMatrixError(
            "removing node 0 does not leave a finite Cartan matrix"
        )
    # Standard affinization check: the border of A must be the pairing of the
    # finite part's highest root against the finite simple roots/coroots.
    fin = build_datum(finite_part, "default")
    theta = highest_root(fin)
    theta_covec = coroot_of_root(fin, theta)
    for j in range(1, A.n):
        want_0j = -_dot(theta_covec, fin.simple_roots[j - 1])
        want_j0 = -sum(
            finite_part.entries[j - 1][k] * theta.coords[k]
            for k in range(finite_part.n)
        )
        if A.entries[0][j] != want_0j or A.entries[j][0] != want_j0:
            raise CartanMatrixError(
                "affine matrix is not a standard (untwisted) affinization"
            )
    return "affine"


class Root:
    """A real root: simple-root coordinates plus its vector in the character lattice."""

    __slots__ = ("coords", "char")

    def __init__(self, coords: Vec, char: Vec):
        self.coords = coords
        self.char = char

    @property
    def positive(self) -> bool:
        return all(c >= 0 for c in self.coords) and any(self.coords)

    @property
    def height(self) -> int:
        return sum(self.coords)

    def negate(self) -> "Root":
        return Root(tuple(-c for c in self.coords), tuple(-c for c in self.char))

    def __eq__(self, other):
        return isinstance(other, Root) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Root({self.coords})"


class WeylElt:
    """A Weyl group element: canonical reduced word plus root-lattice matrices."""

    __slots__ = ("word", "mat", "matinv")

    def __init__(self, word: Vec, mat: Mat, matinv: Mat):
        self.word = word
        self.mat = mat
        self.matinv = matinv

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"WeylElt({list(self.word)})"


class AffineData:
    """Affine extras: marks, comarks, highest finite root, null root, central cocharacter."""

    __slots__ = ("marks", "comarks", "theta", "theta_coroot", "delta_char", "c_cochar")

    def __init__(self, marks, comarks, theta, theta_coroot, delta_char, c_cochar):
        self.marks = marks
        self.comarks = comarks
        self.theta = theta
        self.theta_coroot = theta_coroot
        self.delta_char = delta_char
        self.c_cochar = c_cochar


class RootDatum:
    """Character/cocharacter lattices Z^r with embedded simple roots and coroots.

    Immutable after construction.  Internal memo tables (element
    interning, Bruhat answers, matrix caches) are only ever appended to,
    which is safe under CPython's execution model.
    """

    def __init__(self, cartan: CartanMatrix, kind: str,
                 simple_roots: tuple[Vec, ...], simple_coroots: tuple[Vec, ...],
                 affine: AffineData | None, relaxed: bool = False):
        self.cartan = cartan
        self.kind = kind
        self.simple_roots = simple_roots
        self.simple_coroots = simple_coroots
        self.affine = affine
        self.relaxed = relaxed
        self.n = cartan.n
        self.rank = len(simple_roots[0]) if simple_roots else 0
        self.labels = tuple(range(self.n)) if kind == "affine" else tuple(
            range(1, self.n + 1)
        )
        self._label_to_pos = {lab: i for i, lab in enumerate(self.labels)}
        self._validate()
        # reflection matrices per generator position
        n = self.n
        a = cartan.entries
        self.refl_root = tuple(
            tuple(
                tuple(
                    (1 if k == j else 0) - (a[i][j] if k == i else 0)
                    for j in range(n)
                )
                for k in range(n)
            )
            for i in range(n)
        )
        r = self.rank
        self.refl_char = tuple(
            tuple(
                tuple(
                    (1 if k == j else 0)
                    - simple_roots[i][k] * simple_coroots[i][j]
                    for j in range(r)
                )
                for k in range(r)
            )
            for i in range(n)
        )
        # caches
        self._elts: dict[Mat, WeylElt] = {}
        self._mul: dict[tuple[Mat, Mat], WeylElt] = {}
        self._charmat: dict[Mat, Mat] = {}
        self._bruhat: dict[tuple[Mat, Mat], bool] = {}
        self._invset: dict[Mat, tuple[Root, ...]] = {}
        self._refl: dict[Vec, tuple[WeylElt, Vec]] = {}
        self._posroots: tuple[Root, ...] | None = None
        self.extra: dict = {}  # scratch space for downstream modules
        ident = _mat_id(n)
        self.identity = WeylElt((), ident, ident)
        self._elts[ident] = self.identity

    def _validate(self):
        n, r = self.n, self.rank
        if len(self.simple_roots) != n or len(self.simple_coroots) != n:
            raise RootDatumError("need one root and one coroot per matrix row")
        if any(len(v) != r for v in self.simple_roots) or any(
            len(v) != r for v in self.simple_coroots
        ):
            raise RootDatumError("root and coroot vectors must share one rank")
        for i in range(n):
            for j in range(n):
                if _dot(self.simple_coroots[i], self.simple_roots[j]) != self.cartan.entries[i][j]:
                    raise RootDatumError(
                        f"pairing <coroot_{i}, root_{j}> does not match the Cartan matrix"
                    )
        if not self.relaxed:
            rows = [[Fraction(x) for x in v] for v in self.simple_roots]
            if _rank(rows) != n:
                raise RootDatumError("simple roots are not Z-independent")
            crows = [[Fraction(x) for x in v] for v in self.simple_coroots]
            if _rank(crows) != n:
                raise RootDatumError("simple coroots are not Z-independent")
            arows = [[Fraction(x) for x in row] for row in self.cartan.entries]
            if r + _rank(arows) != 2 * n:
                raise RootDatumError(
                    f"lattice rank {r} violates rank(X) + rank(A) = 2n"
                )

    # -- small helpers -------------------------------------------------

    def pos(self, label: int) -> int:
        try:
            return self._label_to_pos[label]
        except KeyError:
            raise RootDatumError(f"no generator labelled {label}") from None

    def simple_root_obj(self, label: int) -> Root:
        i = self.pos(label)
        coords = tuple(1 if k == i else 0 for k in range(self.n))
        return Root(coords, self.simple_roots[i])

    def char_of_coords(self, coords: Vec) -> Vec:
        return tuple(
            sum(c * v[k] for c, v in zip(coords, self.simple_roots))
            for k in range(self.rank)
        )

    def root_from_coords(self, coords) -> Root:
        coords = tuple(int(c) for c in coords)
        return Root(coords, self.char_of_coords(coords))

    def pairing(self, cochar: Vec, char: Vec) -> int:
        return _dot(cochar, char)

    def _intern(self, mat: Mat, matinv: Mat) -> WeylElt:
        elt = self._elts.get(mat)
        if elt is None:
            elt = _extract_canonical(self, mat, matinv)
            self._elts[mat] = elt
        return elt

    def apply_root_matrix(self, elt: WeylElt, root: Root) -> Root:
        coords = _mat_vec(elt.mat, root.coords)
        return Root(coords, self.char_of_coords(coords))

    def __repr__(self):
        return f"RootDatum(kind={self.kind!r}, n={self.n}, rank={self.rank})"


def _extract_canonical(datum: RootDatum, mat: Mat, matinv: Mat) -> WeylElt:
    """Recover the canonical word (smallest left descent first) from matrices."""
    n = datum.n
    ident = _mat_id(n)
    word = []
    m, mi = mat, matinv
    while m != ident:
        for p in range(n):
            col = tuple(mi[k][p] for k in range(n))
            if all(c <= 0 for c in col):
                break
        else:  # pragma: no cover - impossible for genuine Weyl matrices
            raise RootDatumError("matrix is not a Weyl group element")
        word.append(datum.labels[p])
        m = _mat_mul(datum.refl_root[p], m)
        mi = _mat_mul(mi, datum.refl_root[p])
    return WeylElt(tuple(word), mat, matinv)


# -- datum construction ---------------------------------------------------

PRESET_MATRICES = {
    "A1": ([[2]], "finite"),
    "A2": ([[2, -1], [-1, 2]], "finite"),
    "B2": ([[2, -1], [-2, 2]], "finite"),
    "G2": ([[2, -3], [-1, 2]], "finite"),
    "A1aff": ([[2, -2], [-2, 2]], "affine"),
    "A2aff": ([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], "affine"),
}


def _affine_invariants(A: CartanMatrix) -> tuple[list[int], list[int]]:
    rows = [[Fraction(x) for x in row] for row in A.entries]
    marks = _null_vector(rows)
    cols = [[Fraction(A.entries[j][i]) for j in range(A.n)] for i in range(A.n)]
    comarks = _null_vector(cols)
    if marks is None or comarks is None:
        raise CartanMatrixError("affine matrix must have a one-dimensional kernel")
    marks_i = _primitive_int_vector(marks)
    comarks_i = _primitive_int_vector(comarks)
    if any(m <= 0 for m in marks_i) or any(m <= 0 for m in comarks_i):
        raise CartanMatrixError("affine null vectors are not positive")
    if marks_i[0] != 1 or comarks_i[0] != 1:
        raise CartanMatrixError("node 0 is not the affine node of an untwisted matrix")
    return marks_i, comarks_i


def build_datum(A: CartanMatrix, choice="default") -> RootDatum:
    """Build a root datum for A.

    choice: "default" (finite: weight-lattice realization; affine: full
    realization with a scaling cocharacter), "derived" (affine only: the
    degenerate realization spanned by the coroots, in which the null root
    becomes the zero character -- rank axioms are relaxed and the
    verification suites do not support it), or an explicit
    {"roots": [...], "coroots": [...]} pair.
    """
    kind = classify_cartan(A)
    n = A.n
    if choice == "default":
        if kind == "finite":
            roots = tuple(
                tuple(A.entries[i][j] for i in range(n)) for j in range(n)
            )
            coroots = tuple(
                tuple(1 if k == i else 0 for k in range(n)) for i in range(n)
            )
            return RootDatum(A, kind, roots, coroots, None)
        marks, comarks = _affine_invariants(A)
        r = n + 1  # n simple coroots plus the scaling cocharacter
        roots = tuple(
            tuple(A.entries[i][j] for i in range(n)) + ((1,) if j == 0 else (0,))
            for j in range(n)
        )
        coroots = tuple(
            tuple(1 if k == i else 0 for k in range(r)) for i in range(n)
        )
        datum = RootDatum(A, kind, roots, coroots, None)
        datum.affine = _make_affine_data(datum, marks, comarks)
        return datum
    if choice == "derived":
        if kind != "affine":
            raise RootDatumError("the derived realization only exists for affine kind")
        marks, comarks = _affine_invariants(A)
        roots = tuple(
            tuple(A.entries[i][j] for i in range(n)) for j in range(n)
        )
        coroots = tuple(
            tuple(1 if k == i else 0 for k in range(n)) for i in range(n)
        )
        datum = RootDatum(A, kind, roots, coroots, None, relaxed=True)
        datum.affine = _make_affine_data(datum, marks, comarks)
        return datum
    if isinstance(choice, dict):
        roots = tuple(tuple(int(x) for x in v) for v in choice["roots"])
        coroots = tuple(tuple(int(x) for x in v) for v in choice["coroots"])
        datum = RootDatum(A, kind, roots, coroots, None)
        if kind == "affine":
            marks, comarks = _affine_invariants(A)
            datum.affine = _make_affine_data(datum, marks, comarks)
        return datum
    raise RootDatumError(f"unknown lattice choice {choice!r}")


def _make_affine_data(datum: RootDatum, marks, comarks) -> AffineData:
    n = datum.n
    theta_coords = tuple([0] + list(marks[1:]))
    theta = datum.root_from_coords(theta_coords)
    theta_coroot = tuple(
        sum(comarks[i] * datum.simple_coroots[i][k] for i in range(1, n))
        for k in range(datum.rank)
    )
    delta_char = tuple(
        sum(marks[i] * datum.simple_roots[i][k] for i in range(n))
        for k in range(datum.rank)
    )
    c_cochar = tuple(
        sum(comarks[i] * datum.simple_coroots[i][k] for i in range(n))
        for k in range(datum.rank)
    )
    if not datum.relaxed and not any(delta_char):
        raise RootDatumError("null root is the zero character in a full realization")
    for j in range(n):
        if _dot(c_cochar, datum.simple_roots[j]) != 0:
            raise RootDatumError("central cocharacter pairs nontrivially with a root")
    return AffineData(tuple(marks), tuple(comarks), theta, theta_coroot,
                      delta_char, c_cochar)


def preset_datum(name: str) -> RootDatum:
    """Named data: A1, A2, B2, G2, A1aff, A2aff (+ '-der' derived variants)."""
    base, _, variant = name.partition("-")
    if base not in PRESET_MATRICES:
        raise RootDatumError(f"unknown preset {name!r}")
    entries, _kind = PRESET_MATRICES[base]
    choice = "default"
    if variant:
        if variant != "der":
            raise RootDatumError(f"unknown preset variant {name!r}")
        choice = "derived"
    return build_datum(CartanMatrix(entries), choice)


# -- Weyl group operations -------------------------------------------------


def canonicalize_word(datum: RootDatum, word) -> WeylElt:
    """The Weyl element of an arbitrary word in generator labels."""
    mat = _mat_id(datum.n)
    matinv = mat
    for lab in word:
        m = datum.refl_root[datum.pos(lab)]
        mat = _mat_mul(mat, m)
        matinv = _mat_mul(m, matinv)
    return datum._intern(mat, matinv)


def multiply_elts(datum: RootDatum, w: WeylElt, y: WeylElt) -> WeylElt:
    key = (w.mat, y.mat)
    out = datum._mul.get(key)
    if out is None:
        out = datum._intern(_mat_mul(w.mat, y.mat), _mat_mul(y.matinv, w.matinv))
        datum._mul[key] = out
    return out


def inverse_elt(datum: RootDatum, w: WeylElt) -> WeylElt:
    return datum._intern(w.matinv, w.mat)


def left_descents(datum: RootDatum, w: WeylElt) -> list[int]:
    """Labels i with l(s_i w) < l(w), i.e. w^{-1}(alpha_i) negative."""
    out = []
    for p in range(datum.n):
        if all(w.matinv[k][p] <= 0 for k in range(datum.n)):
            out.append(datum.labels[p])
    return out


def inversion_set(datum: RootDatum, w: WeylElt) -> tuple[Root, ...]:
    """D(w): the positive real roots sent negative by w^{-1}.

    Computed cumulatively along the canonical word: the j-th inversion is
    s_{i_1}...s_{i_{j-1}} applied to alpha_{i_j}.
    """
    cached = datum._invset.get(w.mat)
    if cached is not None:
        return cached
    prefix = _mat_id(datum.n)
    roots = []
    for lab in w.word:
        p = datum.pos(lab)
        coords = tuple(prefix[k][p] for k in range(datum.n))
        roots.append(datum.root_from_coords(coords))
        prefix = _mat_mul(prefix, datum.refl_root[p])
    out = tuple(roots)
    datum._invset[w.mat] = out
    return out


def bruhat_leq(datum: RootDatum, y: WeylElt, w: WeylElt) -> bool:
    """Bruhat order via the descent recursion, memoized on the datum."""
    if y == w:
        return True
    if y.length >= w.length:
        return False
    key = (y.mat, w.mat)
    known = datum._bruhat.get(key)
    if known is not None:
        return known
    lab = left_descents(datum, w)[0]
    s = canonicalize_word(datum, (lab,))
    sw = multiply_elts(datum, s, w)
    sy = multiply_elts(datum, s, y)
    if sy.length < y.length:
        out = bruhat_leq(datum, sy, sw)
    else:
        out = bruhat_leq(datum, y, sw)
    datum._bruhat[key] = out
    return out


def positive_real_roots_up_to_height(datum: RootDatum, h: int) -> list[Root]:
    """Positive real roots of height <= h by orbit closure from the simples."""
    seen: set[Vec] = set()
    frontier: list[Vec] = []
    for p in range(datum.n):
        coords = tuple(1 if k == p else 0 for k in range(datum.n))
        if h >= 1:
            seen.add(coords)
            frontier.append(coords)
    while frontier:
        nxt = []
        for v in frontier:
            for p in range(datum.n):
                u = _mat_vec(datum.refl_root[p], v)
                if all(c >= 0 for c in u) and sum(u) <= h and u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    out = [datum.root_from_coords(v) for v in sorted(seen, key=lambda v: (sum(v), v))]
    return out


def real_roots_up_to_height(datum: RootDatum, h: int) -> list[Root]:
    """All real roots with |height| <= h (positives then their negatives)."""
    pos = positive_real_roots_up_to_height(datum, h)
    return pos + [r.negate() for r in pos]


def all_positive_roots(datum: RootDatum) -> tuple[Root, ...]:
    """Every positive root of a finite datum (cached)."""
    if datum.kind != "finite":
        raise RootDatumError("full positive-root enumeration needs finite kind")
    if datum._posroots is None:
        h = 1
        prev = -1
        roots: list[Root] = []
        while True:
            roots = positive_real_roots_up_to_height(datum, h)
            if len(roots) == prev:
                break
            prev = len(roots)
            h += 1
        datum._posroots = tuple(roots)
    return datum._posroots


def highest_root(datum: RootDatum) -> Root:
    roots = all_positive_roots(datum)
    return max(roots, key=lambda r: (r.height, r.coords))


def char_matrix(datum: RootDatum, w: WeylElt) -> Mat:
    """Matrix of w on the character lattice (s_i: x -> x - <coroot_i, x> root_i)."""
    cached = datum._charmat.get(w.mat)
    if cached is not None:
        return cached
    # w = s_{i_1} ... s_{i_k} acts on column vectors as S_{i_1} @ ... @ S_{i_k}
    m = _mat_id(datum.rank)
    for lab in w.word:
        m = _mat_mul(m, datum.refl_char[datum.pos(lab)])
    datum._charmat[w.mat] = m
    return m


def act_on_character(datum: RootDatum, w: WeylElt, lam) -> Vec:
    return _mat_vec(char_matrix(datum, w), tuple(lam))


def coroot_of_root(datum: RootDatum, root: Root) -> Vec:
    """The coroot (cocharacter vector) attached to a positive real root."""
    return _reflection_data(datum, root)[1]


def reflection_of_root(datum: RootDatum, root: Root) -> WeylElt:
    """The reflection s_alpha as a Weyl element, for alpha positive real."""
    return _reflection_data(datum, root)[0]


def _reflection_data(datum: RootDatum, root: Root) -> tuple[WeylElt, Vec]:
    if not root.positive:
        raise RootDatumError("reflection data wants a positive root")
    cached = datum._refl.get(root.coords)
    if cached is not None:
        return cached
    word = []
    v = root.coords
    while True:
        live = [k for k, c in enumerate(v) if c]
        if len(live) == 1 and v[live[0]] == 1:
            simple_pos = live[0]
            break
        for p in range(datum.n):
            pair = sum(datum.cartan.entries[p][j] * v[j] for j in range(datum.n))
            if pair > 0:
                u = _mat_vec(datum.refl_root[p], v)
                if all(c >= 0 for c in u):
                    word.append(p)
                    v = u
                    break
        else:
            raise RootDatumError(f"{root!r} is not a positive real root")
    covec = datum.simple_coroots[simple_pos]
    for p in reversed(word):
        # s_p on cocharacters: x -> x - <x, root_p> coroot_p
        pair = _dot(covec, datum.simple_roots[p])
        covec = tuple(
            covec[k] - pair * datum.simple_coroots[p][k] for k in range(datum.rank)
        )
    labels = [datum.labels[p] for p in word]
    refl_word = labels + [datum.labels[simple_pos]] + labels[::-1]
    elt = canonicalize_word(datum, refl_word)
    out = (elt, covec)
    datum._refl[root.coords] = out
    return out


def weyl_ball(datum: RootDatum, max_length: int) -> list[WeylElt]:
    """All elements of length <= max_length, sorted by (length, word)."""
    seen = {datum.identity.mat: datum.identity}
    frontier = [datum.identity]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for lab in datum.labels:
                s = canonicalize_word(datum, (lab,))
                u = multiply_elts(datum, w, s)
                if u.length == w.length + 1 and u.mat not in seen:
                    seen[u.mat] = u
                    nxt.append(u)
        frontier = nxt
        if not frontier:
            break
    return sorted(seen.values(), key=lambda w: (w.length, w.word))


def reduced_words(datum: RootDatum, w: WeylElt) -> list[tuple[int, ...]]:
    """Every reduced word for w, by recursion over left descents."""
    if w.length == 0:
        return [()]
    out = []
    for lab in left_descents(datum, w):
        s = canonicalize_word(datum, (lab,))
        rest = multiply_elts(datum, s, w)
        out.extend((lab,) + tail for tail in reduced_words(datum, rest))
    return out
