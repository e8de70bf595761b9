"""Free Lie algebras on Lyndon bases, and the braid-style derivation action.

Words are tuples over the alphabet 1..n.  A Lie element is stored as a map
from Lyndon words to rational coefficients; brackets are computed by
expanding into the free associative algebra and re-expressing the commutator
in the Lyndon basis through the triangular relationship between a Lyndon
word and the expansion of its standard bracketing.

Degree caps (n <= 6, total degree <= 8) keep everything at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalInvariantError, PreconditionError
from .exactcore import ExactMatrix, rat, rat_str, solve_right

MAX_GENERATORS = 6
MAX_DEGREE = 8


class DegreeCapError(PreconditionError):
    """Lyndon bases grow exponentially; computations are capped."""


def _check_caps(n: int, degree: int):
    if not 1 <= n <= MAX_GENERATORS:
        raise DegreeCapError(f"generator count {n} outside 1..{MAX_GENERATORS}")
    if degree > MAX_DEGREE:
        raise DegreeCapError(f"degree {degree} exceeds cap {MAX_DEGREE}")


# ---------------------------------------------------------------------------
# Lyndon words


def is_lyndon(word) -> bool:
    """A nonempty word is Lyndon iff it is strictly smaller than every
    proper suffix."""
    w = tuple(word)
    if not w:
        return False
    return all(w < w[k:] for k in range(1, len(w)))


def lyndon_basis(n: int, degree: int) -> list:
    """All Lyndon words of the given length over 1..n, lexicographically
    sorted (Duval's generation)."""
    if degree < 1:
        raise PreconditionError("degree must be >= 1")
    _check_caps(n, degree)
    out = []
    w = [1]
    while w:
        if len(w) == degree:
            out.append(tuple(w))
        # extend periodically to full length, then increment
        ext = [w[i % len(w)] for i in range(degree)]
        while ext and ext[-1] == n:
            ext.pop()
        if not ext:
            break
        ext[-1] += 1
        w = ext
    return out


def standard_factorization(word):
    """Split a Lyndon word of length >= 2 as u·v with v the lexicographically
    least (equivalently longest Lyndon) proper suffix; both parts are Lyndon."""
    w = tuple(word)
    if len(w) < 2:
        raise PreconditionError("standard factorization needs length >= 2")
    split = min(range(1, len(w)), key=lambda k: w[k:])
    return w[:split], w[split:]


_EXPANSION_CACHE: dict = {}


def _expand_bracketing(word) -> dict:
    """Associative expansion of the standard bracketing of a Lyndon word:
    a map word -> coefficient whose lexicographically least term is the word
    itself with coefficient 1."""
    w = tuple(word)
    cached = _EXPANSION_CACHE.get(w)
    if cached is not None:
        return cached
    if len(w) == 1:
        out = {w: Fraction(1)}
    else:
        u, v = standard_factorization(w)
        pu, pv = _expand_bracketing(u), _expand_bracketing(v)
        out = {}
        for a, ca in pu.items():
            for b, cb in pv.items():
                c = ca * cb
                _bump(out, a + b, c)
                _bump(out, b + a, -c)
    _EXPANSION_CACHE[w] = out
    return out


def _bump(d: dict, key, val):
    new = d.get(key, 0) + val
    if new:
        d[key] = new
    else:
        d.pop(key, None)


def _lie_from_associative(poly: dict) -> dict:
    """Rewrite a Lie element given in associative word coordinates into
    Lyndon coordinates, degree by degree.  The input must actually lie in
    the free Lie algebra; anything else is an internal error."""
    by_deg: dict = {}
    for w, c in poly.items():
        by_deg.setdefault(len(w), {})[w] = c
    terms = {}
    for deg, p in by_deg.items():
        p = dict(p)
        while p:
            w = min(p)
            if not is_lyndon(w):
                raise InternalInvariantError(
                    f"associative polynomial is not a Lie element near {w}"
                )
            c = p[w]
            terms[w] = c
            for a, ca in _expand_bracketing(w).items():
                _bump(p, a, -c * ca)
    return terms


# ---------------------------------------------------------------------------
# Lie elements


class LieElement:
    """Element of the free Lie algebra on n generators in Lyndon coordinates."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        _check_caps(n, 1)
        self.n = n
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            c = rat(c)
            if not c:
                continue
            if not is_lyndon(w) or any(not 1 <= x <= n for x in w):
                raise InputError(f"not a Lyndon word over 1..{n}: {w}")
            if len(w) > MAX_DEGREE:
                raise DegreeCapError(f"term degree {len(w)} exceeds cap")
            clean[w] = c
        self.terms = clean

    @staticmethod
    def zero(n: int) -> "LieElement":
        return LieElement(n)

    @staticmethod
    def generator(n: int, i: int) -> "LieElement":
        if not 1 <= i <= n:
            raise InputError(f"generator index {i} outside 1..{n}")
        return LieElement(n, {(i,): 1})

    @staticmethod
    def basis_term(n: int, word, coeff=1) -> "LieElement":
        return LieElement(n, {tuple(word): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def support_letters(self):
        return {x for w in self.terms for x in w}

    def __add__(self, other: "LieElement") -> "LieElement":
        self._match(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _bump(out, w, c)
        return LieElement(self.n, out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + other.scale(-1)

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def scale(self, a) -> "LieElement":
        a = rat(a)
        return LieElement(self.n, {w: a * c for w, c in self.terms.items()})

    def _match(self, other: "LieElement"):
        if self.n != other.n:
            raise PreconditionError("generator counts differ")

    def to_associative(self) -> dict:
        poly: dict = {}
        for w, c in self.terms.items():
            for a, ca in _expand_bracketing(w).items():
                _bump(poly, a, c * ca)
        return poly

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "LieElement(0)"
        body = " + ".join(
            f"{rat_str(c)}*[{''.join(map(str, w))}]"
            for w, c in sorted(self.terms.items())
        )
        return f"LieElement({body})"

    def to_json(self):
        return {
            "n": self.n,
            "terms": {
                "".join(map(str, w)): rat_str(c)
                for w, c in sorted(self.terms.items())
            },
        }

    @staticmethod
    def from_json(data) -> "LieElement":
        try:
            n = int(data["n"])
            terms = {
                tuple(int(ch) for ch in word): rat(c)
                for word, c in data.get("terms", {}).items()
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed Lie element JSON: {exc}") from exc
        return LieElement(n, terms)


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Lie bracket, computed as the associative commutator re-expressed in
    the Lyndon basis."""
    a._match(b)
    if a.is_zero() or b.is_zero():
        return LieElement.zero(a.n)
    if a.max_degree() + b.max_degree() > MAX_DEGREE:
        raise DegreeCapError("bracket result would exceed the degree cap")
    pa, pb = a.to_associative(), b.to_associative()
    comm: dict = {}
    for u, cu in pa.items():
        for v, cv in pb.items():
            c = cu * cv
            _bump(comm, u + v, c)
            _bump(comm, v + u, -c)
    return LieElement(a.n, _lie_from_associative(comm))


# ---------------------------------------------------------------------------
# Derivations and the braid action


class Derivation:
    """Derivation of the free Lie algebra, determined by generator images;
    application extends by linearity and the Leibniz rule."""

    __slots__ = ("n", "images", "_cache")

    def __init__(self, n: int, images: dict):
        _check_caps(n, 1)
        self.n = n
        self.images = {}
        for i, e in images.items():
            if not 1 <= i <= n:
                raise InputError(f"generator index {i} outside 1..{n}")
            if e.n != n:
                raise PreconditionError("image has wrong generator count")
            if not e.is_zero():
                self.images[i] = e
        self._cache: dict = {}

    def image(self, i: int) -> LieElement:
        return self.images.get(i, LieElement.zero(self.n))

    def _apply_word(self, w) -> LieElement:
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        if len(w) == 1:
            out = self.image(w[0])
        else:
            u, v = standard_factorization(w)
            bu = LieElement.basis_term(self.n, u)
            bv = LieElement.basis_term(self.n, v)
            out = bracket(self._apply_word(u), bv) + bracket(bu, self._apply_word(v))
        self._cache[w] = out
        return out

    def apply(self, e: LieElement) -> LieElement:
        if e.n != self.n:
            raise PreconditionError("generator counts differ")
        out = LieElement.zero(self.n)
        for w, c in e.terms.items():
            out = out + self._apply_word(w).scale(c)
        return out

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.n != other.n:
            raise PreconditionError("generator counts differ")
        return Derivation(
            self.n,
            {i: self.image(i) + other.image(i) for i in range(1, self.n + 1)},
        )

    def commutator(self, other: "Derivation") -> "Derivation":
        """[self, other] as a derivation, with generator images recomputed."""
        if self.n != other.n:
            raise PreconditionError("generator counts differ")
        images = {}
        for i in range(1, self.n + 1):
            gen = LieElement.generator(self.n, i)
            images[i] = self.apply(other.apply(gen)) - other.apply(self.apply(gen))
        return Derivation(self.n, images)


def theta(i: int, j: int, n: int) -> Derivation:
    """The derivation sending x_i to [x_i, x_j], x_j to [x_j, x_i] and every
    other generator to 0."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise InputError(f"bad generator pair ({i}, {j}) for n = {n}")
    xi = LieElement.generator(n, i)
    xj = LieElement.generator(n, j)
    return Derivation(n, {i: bracket(xi, xj), j: bracket(xj, xi)})


def apply_derivation(d: Derivation, e: LieElement) -> LieElement:
    return d.apply(e)


# ---------------------------------------------------------------------------
# Bracket words in the A_{i,j} generators


@dataclass(frozen=True)
class DKWord:
    """Bracket expression over the generators A_{i,j}: either a leaf (i, j)
    or a bracket of two subtrees."""

    i: int = 0
    j: int = 0
    left: "DKWord" = None
    right: "DKWord" = None

    @staticmethod
    def gen(i: int, j: int) -> "DKWord":
        if i == j or i < 1 or j < 1:
            raise InputError(f"bad generator pair ({i}, {j})")
        return DKWord(i=i, j=j)

    @staticmethod
    def of(left: "DKWord", right: "DKWord") -> "DKWord":
        return DKWord(left=left, right=right)

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def leaves(self) -> int:
        if self.is_leaf:
            return 1
        return self.left.leaves() + self.right.leaves()

    def max_index(self) -> int:
        if self.is_leaf:
            return max(self.i, self.j)
        return max(self.left.max_index(), self.right.max_index())

    def __repr__(self):
        if self.is_leaf:
            return f"A({self.i},{self.j})"
        return f"[{self.left!r},{self.right!r}]"


def theta_of_dkword(word: DKWord, n: int) -> Derivation:
    """The derivation attached to a bracket word, built as nested
    commutators of the generator derivations."""
    if word.max_index() > n:
        raise InputError("bracket word uses generators beyond n")
    if word.is_leaf:
        return theta(word.i, word.j, n)
    return theta_of_dkword(word.left, n).commutator(theta_of_dkword(word.right, n))


# ---------------------------------------------------------------------------
# Relation verification and the adjoint witness


@dataclass(frozen=True)
class RelationViolation:
    relation: str
    word: tuple
    value: LieElement


def verify_braid_relations(n: int, max_degree: int) -> list:
    """Check the defining relation scheme of the braid-style action on every
    Lyndon basis element of degree <= max_degree.  Returns violations
    (expected empty): symmetry in the two indices, the triple relation
    commutator, disjoint-pair commutativity, and the vanishing of the action
    on x_1 + ... + x_n."""
    if n < 2:
        raise PreconditionError("need at least two generators")
    _check_caps(n, max_degree)
    basis = [
        w for d in range(1, max_degree + 1) for w in lyndon_basis(n, d)
    ]
    violations = []

    def check(deriv, label):
        for w in basis:
            value = deriv.apply(LieElement.basis_term(n, w))
            if not value.is_zero():
                violations.append(RelationViolation(label, w, value))

    thetas = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                thetas[i, j] = theta(i, j, n)

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            diff = Derivation(
                n,
                {
                    k: thetas[i, j].image(k) - thetas[j, i].image(k)
                    for k in range(1, n + 1)
                },
            )
            check(diff, f"A({i},{j}) = A({j},{i})")

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if len({i, j, k}) < 3:
                    continue
                rel = thetas[i, k].commutator(thetas[i, j] + thetas[j, k])
                check(rel, f"[A({i},{k}), A({i},{j}) + A({j},{k})] = 0")

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                for l in range(k + 1, n + 1):
                    if {i, j} & {k, l} or (k, l) < (i, j):
                        continue
                    rel = thetas[i, j].commutator(thetas[k, l])
                    check(rel, f"[A({i},{j}), A({k},{l})] = 0")

    total = LieElement(n, {(i,): 1 for i in range(1, n + 1)})
    for (i, j), d in thetas.items():
        value = d.apply(total)
        if not value.is_zero():
            violations.append(
                RelationViolation(f"A({i},{j}) kills x_1 + ... + x_n", (), value)
            )
    return violations


def adjoint_witness(word: DKWord, i: int, n: int) -> LieElement:
    """A v with [x_i, v] equal to the action of the given bracket word on
    x_i.  The action is homogeneous of degree (leaves + 1); v is found by an
    exact linear solve in Lyndon coordinates and double-checked by
    re-bracketing.  No solution would contradict the adjoint form of the
    action and is escalated."""
    if not 1 <= i <= n:
        raise InputError(f"generator index {i} outside 1..{n}")
    target = theta_of_dkword(word, n).apply(LieElement.generator(n, i))
    if target.is_zero():
        return LieElement.zero(n)
    k = word.leaves()
    _check_caps(n, k + 1)
    dom = lyndon_basis(n, k)
    cod = lyndon_basis(n, k + 1)
    cod_index = {w: r for r, w in enumerate(cod)}
    xi = LieElement.generator(n, i)
    cols = []
    for w in dom:
        img = bracket(xi, LieElement.basis_term(n, w))
        col = [Fraction(0)] * len(cod)
        for ww, c in img.terms.items():
            col[cod_index[ww]] = c
        cols.append(col)
    mat = ExactMatrix.from_cols(cols, len(cod))
    rhs_col = [Fraction(0)] * len(cod)
    for ww, c in target.terms.items():
        rhs_col[cod_index[ww]] = c
    rhs = ExactMatrix.from_cols([rhs_col], len(cod))
    sol = solve_right(mat, rhs)
    if sol is None:
        raise InternalInvariantError(
            "no adjoint witness exists; the action lost its adjoint form"
        )
    v = LieElement(n, {w: sol.data[r][0] for r, w in enumerate(dom)})
    if bracket(xi, v) != target:
        raise InternalInvariantError("adjoint witness failed re-bracketing")
    return v
