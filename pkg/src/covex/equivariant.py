"""Double Schubert polynomials, torus-fixed-point localization on the
Grassmannian, and the multidegree comparison between the two.

Polynomials are exact dense-in-monomials dictionaries over a named variable
tuple, so equality is literal.  The localization of an equivariant Schubert
class at a fixed point is computed by the reduced-subword sum over a fixed
reduced word of the point, with the class and the point both translated by
the longest element so that the sum runs in the codimension convention.

The variable dictionary relating the two sides of the multidegree identity
is calibrated once on the small fixtures and frozen below: after mapping
torus characters through the embedding's weight dictionary, exchange the x
and y alphabets, reverse the index order of the (new) x alphabet, and
negate each homogeneous component by its degree.  The n = 2 fixtures leave
a two-element ambiguity which the n = 3 fixtures resolve uniquely; any
residual mismatch after this transform is a genuine failure, not a
convention artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError
from .permcore import PartialPermutation
from .varieties import GrassIndex

# Frozen convention constants for the multidegree comparison; the unique
# survivor of calibrate_convention over the n = 2 and n = 3 fixtures.
CONVENTION_SWAP_XY = True
CONVENTION_REVERSE_X = True
CONVENTION_REVERSE_Y = False
CONVENTION_SIGN_BY_DEGREE = True


@dataclass(frozen=True)
class MultivariatePolynomial:
    """Exact integer polynomial over a fixed, ordered variable tuple."""

    variables: tuple[str, ...]
    terms: tuple[tuple[tuple[int, ...], int], ...]  # sorted (exponents, coeff)

    @staticmethod
    def make(variables: tuple[str, ...], data: dict[tuple[int, ...], int]) -> "MultivariatePolynomial":
        cleaned = {k: v for k, v in data.items() if v}
        return MultivariatePolynomial(variables, tuple(sorted(cleaned.items())))

    @staticmethod
    def zero(variables: tuple[str, ...]) -> "MultivariatePolynomial":
        return MultivariatePolynomial(variables, ())

    @staticmethod
    def constant(variables: tuple[str, ...], c: int) -> "MultivariatePolynomial":
        return MultivariatePolynomial.make(variables, {(0,) * len(variables): c})

    @staticmethod
    def variable(variables: tuple[str, ...], name: str) -> "MultivariatePolynomial":
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return MultivariatePolynomial.make(variables, {tuple(exps): 1})

    @staticmethod
    def linear(variables: tuple[str, ...], coeffs: dict[str, int]) -> "MultivariatePolynomial":
        data: dict[tuple[int, ...], int] = {}
        for name, c in coeffs.items():
            exps = [0] * len(variables)
            exps[variables.index(name)] = 1
            data[tuple(exps)] = data.get(tuple(exps), 0) + c
        return MultivariatePolynomial.make(variables, data)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    def __add__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        self._check(other)
        data = self._dict()
        for exps, c in other.terms:
            data[exps] = data.get(exps, 0) + c
        return MultivariatePolynomial.make(self.variables, data)

    def __sub__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        return self + other.scale(-1)

    def scale(self, c: int) -> "MultivariatePolynomial":
        return MultivariatePolynomial.make(
            self.variables, {exps: c * v for exps, v in self.terms}
        )

    def __mul__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        self._check(other)
        data: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                key = tuple(a + b for a, b in zip(e1, e2))
                data[key] = data.get(key, 0) + c1 * c2
        return MultivariatePolynomial.make(self.variables, data)

    def substitute(
        self,
        target_variables: tuple[str, ...],
        mapping: dict[str, "MultivariatePolynomial"],
    ) -> "MultivariatePolynomial":
        """Ring map sending each variable to a polynomial in the target ring."""
        result = MultivariatePolynomial.zero(target_variables)
        for exps, c in self.terms:
            term = MultivariatePolynomial.constant(target_variables, c)
            for name, e in zip(self.variables, exps):
                if e:
                    img = mapping.get(name)
                    if img is None:
                        raise InputError(f"no image for variable {name}")
                    for _ in range(e):
                        term = term * img
            result = result + term
        return result

    def rename(self, permutation: dict[str, str]) -> "MultivariatePolynomial":
        """Relabel variables bijectively within the same ring."""
        mapping = {
            old: MultivariatePolynomial.variable(self.variables, new)
            for old, new in permutation.items()
        }
        for name in self.variables:
            mapping.setdefault(name, MultivariatePolynomial.variable(self.variables, name))
        return self.substitute(self.variables, mapping)

    def sign_by_degree(self) -> "MultivariatePolynomial":
        return MultivariatePolynomial.make(
            self.variables,
            {exps: (-1) ** sum(exps) * c for exps, c in self.terms},
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for exps, c in self.terms:
            mono = "*".join(
                (name if e == 1 else f"{name}^{e}")
                for name, e in zip(self.variables, exps)
                if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def _check(self, other: "MultivariatePolynomial") -> None:
        if self.variables != other.variables:
            raise InputError("polynomials live in different rings")


def xy_ring(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1)) + tuple(
        f"y{i}" for i in range(1, n + 1)
    )


def t_ring(N: int) -> tuple[str, ...]:
    return tuple(f"t{i}" for i in range(1, N + 1))


def _swap_positions(exps: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    out = list(exps)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def transpose_x(f: MultivariatePolynomial, n: int, i: int) -> MultivariatePolynomial:
    """Apply the simple transposition s_i to the x-variables."""
    a, b = i - 1, i  # positions of x_i, x_{i+1} in the xy ring
    return MultivariatePolynomial.make(
        f.variables, {_swap_positions(exps, a, b): c for exps, c in f.terms}
    )


def divided_difference(f: MultivariatePolynomial, n: int, i: int) -> MultivariatePolynomial:
    """(f - s_i f) / (x_i - x_{i+1}), exact; the difference is always divisible."""
    g = f - transpose_x(f, n, i)
    return _divide_linear_difference(g, i - 1, i)


def _divide_linear_difference(
    g: MultivariatePolynomial, pos_a: int, pos_b: int
) -> MultivariatePolynomial:
    """Exact division by (v_a - v_b), raising if a remainder is left."""
    data = g._dict()
    quotient: dict[tuple[int, ...], int] = {}

    def lead_key(exps: tuple[int, ...]) -> tuple:
        return (exps[pos_a], exps)

    while data:
        exps = max(data, key=lead_key)
        c = data.pop(exps)
        if c == 0:
            continue
        if exps[pos_a] == 0:
            raise ArithmeticError("polynomial is not divisible by the linear difference")
        qexps = list(exps)
        qexps[pos_a] -= 1
        qexps = tuple(qexps)
        quotient[qexps] = quotient.get(qexps, 0) + c
        # subtract (v_a - v_b) * c * monomial(qexps)
        data[exps] = data.get(exps, 0)  # the v_a part cancels by construction
        bexps = list(qexps)
        bexps[pos_b] += 1
        bexps = tuple(bexps)
        data[bexps] = data.get(bexps, 0) + c
        if data.get(exps) == 0:
            data.pop(exps)
        if data.get(bexps) == 0:
            data.pop(bexps)
    return MultivariatePolynomial.make(g.variables, quotient)


@lru_cache(maxsize=None)
def _double_schubert_cached(image: tuple[int, ...]) -> MultivariatePolynomial:
    n = len(image)
    ring = xy_ring(n)
    w0 = tuple(range(n, 0, -1))
    if image == w0:
        result = MultivariatePolynomial.constant(ring, 1)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i + j <= n:
                    result = result * MultivariatePolynomial.linear(
                        ring, {f"x{i}": 1, f"y{j}": -1}
                    )
        return result
    i = next(k for k in range(1, n) if image[k - 1] < image[k])
    longer = list(image)
    longer[i - 1], longer[i] = longer[i], longer[i - 1]
    return divided_difference(_double_schubert_cached(tuple(longer)), n, i)


def double_schubert(w: PartialPermutation) -> MultivariatePolynomial:
    """The double Schubert polynomial of w in x_1..x_n, y_1..y_n.

    Defined by the product formula at the longest element and descending
    divided differences in the x alphabet.
    """
    if not w.is_full_rank:
        raise InputError("double Schubert polynomials need full permutations")
    return _double_schubert_cached(w.image)


def _perm_length(p: tuple[int, ...]) -> int:
    return sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )


def _reduced_word(p: tuple[int, ...]) -> list[int]:
    """A reduced word (letters are 1-based adjacent transposition indices)."""
    word: list[int] = []
    cur = list(p)
    while True:
        i = next((k for k in range(len(cur) - 1) if cur[k] > cur[k + 1]), None)
        if i is None:
            break
        cur[i], cur[i + 1] = cur[i + 1], cur[i]
        word.append(i + 1)
    return list(reversed(word))


def schubert_class_restriction(
    N: int, class_perm: tuple[int, ...], point_perm: tuple[int, ...]
) -> MultivariatePolynomial:
    """Restriction of the codimension-convention class of class_perm at point_perm.

    The reduced-subword sum: fix a reduced word of the point; every reduced
    subword multiplying to the class permutation contributes the product of
    the root at each chosen letter, the root being the prefix image of the
    simple root there.  All contributions are products of positive roots.
    """
    ring = t_ring(N)
    word = _reduced_word(point_perm)
    target_len = _perm_length(class_perm)
    # prefix permutations before each letter, and the root at each letter
    roots: list[tuple[int, int]] = []
    prefix = list(range(1, N + 1))
    for letter in word:
        roots.append((prefix[letter - 1], prefix[letter]))
        prefix[letter - 1], prefix[letter] = prefix[letter], prefix[letter - 1]
    total = MultivariatePolynomial.zero(ring)
    L = len(word)
    one = MultivariatePolynomial.constant(ring, 1)
    identity = tuple(range(1, N + 1))

    def dfs(pos: int, current: tuple[int, ...], count: int, acc: MultivariatePolynomial):
        nonlocal total
        if count == target_len:
            if current == class_perm:
                total = total + acc
            return
        if L - pos < target_len - count:
            return
        if pos == L:
            return
        # skip letter pos
        dfs(pos + 1, current, count, acc)
        # take letter pos when it lengthens the partial product
        letter = word[pos]
        nxt = list(current)
        nxt[letter - 1], nxt[letter] = nxt[letter], nxt[letter - 1]
        nxt_t = tuple(nxt)
        if _perm_length(nxt_t) > _perm_length(current):
            a, b = roots[pos]
            root = MultivariatePolynomial.linear(ring, {f"t{a}": 1, f"t{b}": -1})
            dfs(pos + 1, nxt_t, count + 1, acc * root)

    dfs(0, identity, 0, one)
    return total


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[v - 1] for v in b)


def _coset_min_rep(idx: GrassIndex) -> tuple[int, ...]:
    chosen = list(idx.positions)
    complement = [v for v in range(1, idx.N + 1) if v not in set(chosen)]
    return tuple(chosen + complement)


def _coset_max_rep(idx: GrassIndex) -> tuple[int, ...]:
    chosen = list(idx.positions)
    complement = [v for v in range(1, idx.N + 1) if v not in set(chosen)]
    return tuple(chosen[::-1] + complement[::-1])


def grass_restriction(
    v_idx: GrassIndex, point: GrassIndex, point_rep: str = "min"
) -> MultivariatePolynomial:
    """Localization of the class of the Schubert variety Gr_v at a fixed point.

    Both data are pulled back to the full flag variety (maximal coset
    representative for the variety, any representative for the point) and
    translated by the longest element into the codimension convention; the
    result is relabeled back, so it is a polynomial in t_1..t_N.
    """
    if (v_idx.d, v_idx.N) != (point.d, point.N):
        raise InputError("variety and point live in different Grassmannians")
    N = v_idx.N
    w0 = tuple(range(N, 0, -1))
    class_perm = _compose(w0, _coset_max_rep(v_idx))
    rep = _coset_min_rep(point) if point_rep == "min" else _coset_max_rep(point)
    point_perm = _compose(w0, rep)
    raw = schubert_class_restriction(N, class_perm, point_perm)
    reverse = {f"t{i}": f"t{N + 1 - i}" for i in range(1, N + 1)}
    return raw.rename(reverse)


def localize_grass_class(
    v_idx: GrassIndex, fixed_point: GrassIndex
) -> MultivariatePolynomial:
    """Equivariant restriction [Gr_v]|_point in t variables; 0 off the variety."""
    return grass_restriction(v_idx, fixed_point)


def apply_weight_map(
    poly_t: MultivariatePolynomial, mapping: dict[int, tuple[str, int]], n: int
) -> MultivariatePolynomial:
    """Substitute t_k by the x/y variable given by the embedding's dictionary."""
    ring = xy_ring(n)
    sub = {
        f"t{k}": MultivariatePolynomial.variable(ring, f"{sym}{idx}")
        for k, (sym, idx) in mapping.items()
    }
    return poly_t.substitute(ring, sub)


def _convention_transform(poly: MultivariatePolynomial, n: int) -> MultivariatePolynomial:
    renames: dict[str, str] = {}
    for i in range(1, n + 1):
        xs, ys = f"x{i}", f"y{i}"
        xt = ys if CONVENTION_SWAP_XY else xs
        yt = xs if CONVENTION_SWAP_XY else ys
        if CONVENTION_REVERSE_X:
            # reversal applies to the target alphabet of x_i
            xt = xt[0] + str(n + 1 - int(xt[1:]))
        if CONVENTION_REVERSE_Y:
            yt = yt[0] + str(n + 1 - int(yt[1:]))
        renames[xs] = xt
        renames[ys] = yt
    out = poly.rename(renames)
    if CONVENTION_SIGN_BY_DEGREE:
        out = out.sign_by_degree()
    return out


def _transform_with(
    poly: MultivariatePolynomial,
    n: int,
    swap: bool,
    revx: bool,
    revy: bool,
    sign_by_degree: bool,
) -> MultivariatePolynomial:
    renames: dict[str, str] = {}
    for i in range(1, n + 1):
        xt = (f"y{i}" if swap else f"x{i}")
        yt = (f"x{i}" if swap else f"y{i}")
        if revx:
            xt = xt[0] + str(n + 1 - int(xt[1:]))
        if revy:
            yt = yt[0] + str(n + 1 - int(yt[1:]))
        renames[f"x{i}"] = xt
        renames[f"y{i}"] = yt
    out = poly.rename(renames)
    return out.sign_by_degree() if sign_by_degree else out


def calibrate_convention(n_values: tuple[int, ...] = (2, 3)) -> list[tuple[bool, bool, bool, bool]]:
    """Enumerate the 16 candidate variable conventions against small fixtures.

    Returns the (swap, revx, revy, sign) tuples under which every covexillary
    permutation of the given sizes satisfies the multidegree identity.  Used
    by the test suite to pin the frozen constants as the unique survivor.
    """
    from .embedding import embedding_target, target_grass_index, tau_permutation, weight_map
    from .permcore import all_permutations, covexillary_data, is_covexillary

    fixtures = []
    for n in n_values:
        for w in all_permutations(n):
            if not is_covexillary(w):
                continue
            data = covexillary_data(w)
            tau = tau_permutation(data)
            v_hat = target_grass_index(embedding_target(data))
            origin = GrassIndex(n, 2 * n, tuple(sorted(tau(j) for j in range(1, n + 1))))
            in_xy = apply_weight_map(grass_restriction(v_hat, origin), weight_map(data), n)
            lhs = double_schubert(PartialPermutation.longest(n).compose(w))
            fixtures.append((n, in_xy, lhs))
    survivors = []
    for swap in (False, True):
        for revx in (False, True):
            for revy in (False, True):
                for sign in (False, True):
                    if all(
                        _transform_with(rhs, n, swap, revx, revy, sign) == lhs
                        for n, rhs, lhs in fixtures
                    ):
                        survivors.append((swap, revx, revy, sign))
    return survivors


@dataclass(frozen=True)
class MultidegreeReport:
    w: PartialPermutation
    schubert_side: MultivariatePolynomial
    localization_side: MultivariatePolynomial

    @property
    def matched(self) -> bool:
        return self.schubert_side == self.localization_side


def verify_multidegree(w: PartialPermutation) -> MultidegreeReport:
    """Compare the double Schubert polynomial of w0 w with the localization.

    The right side is the restriction of the target Schubert class at the
    image of the origin, pushed through the torus-weight dictionary and the
    frozen variable convention.
    """
    from .embedding import embedding_target, target_grass_index, tau_permutation, weight_map
    from .permcore import covexillary_data

    data = covexillary_data(w)
    if not w.is_full_rank:
        raise InputError("the multidegree identity is stated for permutations")
    n = w.n
    target = embedding_target(data)
    tau = tau_permutation(data)
    v_hat = target_grass_index(target)
    origin_image = GrassIndex(n, 2 * n, tuple(sorted(tau(j) for j in range(1, n + 1))))
    localized = grass_restriction(v_hat, origin_image)
    in_xy = apply_weight_map(localized, weight_map(data), n)
    rhs = _convention_transform(in_xy, n)
    w0 = PartialPermutation.longest(n)
    lhs = double_schubert(w0.compose(w))
    return MultidegreeReport(w, lhs, rhs)
