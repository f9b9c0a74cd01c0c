"""Exact arithmetic in Sp_2g(Z/2^e) and finite checks of the congruence filtration.

Matrices act on column vectors in the basis (a_1..a_g, b_1..b_g). The Gram
matrix J has J[a_i, b_i] = -1 and J[b_i, a_i] = +1, so <u, v> = u^T J v and
M is symplectic iff M^T J M = J.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from galois2 import gf2
from galois2.homology import HomClassF2, c_class

MAX_LEVEL = 12
DEFAULT_CAP = 1 << 22
_CHUNK = 1 << 16


class CapExceeded(RuntimeError):
    def __init__(self, size: int, cap: int, what: str = "subgroup"):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} size {size} exceeds enumeration cap {cap}")


def _check_level(e: int) -> None:
    if not 1 <= e <= MAX_LEVEL:
        raise ValueError(f"level e={e} outside 1..{MAX_LEVEL}")


def gram(g: int) -> np.ndarray:
    n = 2 * g
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(g):
        J[i, g + i] = -1
        J[g + i, i] = 1
    return J


def sp_order_layer(g: int) -> int:
    return 2 * g * g + g


class SpMatrix:
    """A 2g x 2g symplectic matrix with entries in Z/2^e."""

    __slots__ = ("g", "e", "entries")

    def __init__(self, entries, e: int, check: bool = True):
        _check_level(e)
        a = np.array(entries, dtype=np.int64) % (1 << e)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2:
            raise ValueError(f"expected a square matrix of even size, got shape {a.shape}")
        a.setflags(write=False)
        self.g = a.shape[0] // 2
        self.e = e
        self.entries = a
        if check and not is_symplectic(a, e):
            raise ValueError("matrix does not preserve the symplectic form")

    @property
    def modulus(self) -> int:
        return 1 << self.e

    @classmethod
    def identity(cls, g: int, e: int) -> SpMatrix:
        return cls(np.eye(2 * g, dtype=np.int64), e, check=False)

    def _same(self, other: SpMatrix) -> None:
        if (self.g, self.e) != (other.g, other.e):
            raise ValueError("genus or level mismatch")

    def __matmul__(self, other: SpMatrix) -> SpMatrix:
        self._same(other)
        return SpMatrix(self.entries @ other.entries, self.e, check=False)

    __mul__ = __matmul__

    def inverse(self) -> SpMatrix:
        J = gram(self.g)
        return SpMatrix(-J @ self.entries.T @ J, self.e, check=False)

    def __pow__(self, k: int) -> SpMatrix:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = SpMatrix.identity(self.g, self.e)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def reduce(self, e: int) -> SpMatrix:
        if e > self.e:
            raise ValueError("cannot lift to a finer level")
        return SpMatrix(self.entries, e, check=False)

    def key(self) -> bytes:
        return self.entries.astype(np.uint16).tobytes()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.entries, np.eye(2 * self.g, dtype=np.int64)))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpMatrix):
            return NotImplemented
        return self.e == other.e and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.e, self.key()))

    def __repr__(self) -> str:
        return f"SpMatrix(e={self.e}, {self.tolist()})"


def is_symplectic(a: np.ndarray, e: int) -> bool:
    J = gram(a.shape[0] // 2)
    return bool(np.all((a.T @ J @ a - J) % (1 << e) == 0))


def _as_vector(c, g: int | None) -> np.ndarray:
    if isinstance(c, HomClassF2):
        c = c.coords
    v = np.array(c, dtype=np.int64)
    if v.ndim != 1 or v.size % 2 or (g is not None and v.size != 2 * g):
        raise ValueError("transvection vector must have length 2g")
    return v


def transvection_matrix(c, k: int = 1) -> np.ndarray:
    """Integer matrix of v -> v + k<v, c>c, i.e. I + k c (Jc)^T."""
    v = _as_vector(c, None)
    J = gram(v.size // 2)
    return np.eye(v.size, dtype=np.int64) + k * np.outer(v, J @ v)


def transvection(c, e: int, g: int | None = None, power: int = 1) -> SpMatrix:
    """T_c^power mod 2^e; the power is folded in exactly since (T_c - 1)^2 = 0."""
    v = _as_vector(c, g)
    return SpMatrix(transvection_matrix(v, power), e, check=False)


def t_matrix(c) -> np.ndarray:
    """Integer nilpotent part t_c = T_c - 1."""
    v = _as_vector(c, None)
    return np.outer(v, gram(v.size // 2) @ v)


def congruence_level(M: SpMatrix) -> int:
    """Largest k <= e with M = 1 mod 2^k."""
    d = (M.entries - np.eye(2 * M.g, dtype=np.int64)) % M.modulus
    nz = d[d != 0]
    if nz.size == 0:
        return M.e
    return int(min((int(x) & -int(x)).bit_length() - 1 for x in nz))


@dataclass(frozen=True)
class SpAlgElemF2:
    """Element of sp_2g(F_2): X with X^T J + J X = 0 mod 2."""

    g: int
    entries: tuple[tuple[int, ...], ...]

    def __init__(self, entries, g: int | None = None, check: bool = True):
        a = np.array(entries, dtype=np.int64) % 2
        gg = a.shape[0] // 2 if g is None else g
        if a.shape != (2 * gg, 2 * gg):
            raise ValueError("shape mismatch")
        if check and not in_sp_f2(a):
            raise ValueError("matrix is not in sp_2g(F_2)")
        object.__setattr__(self, "g", gg)
        object.__setattr__(self, "entries", tuple(tuple(int(x) for x in row) for row in a))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def __add__(self, other: SpAlgElemF2) -> SpAlgElemF2:
        return SpAlgElemF2(self.array + other.array, self.g, check=False)

    def bracket(self, other: SpAlgElemF2) -> SpAlgElemF2:
        x, y = self.array, other.array
        return SpAlgElemF2(x @ y - y @ x, self.g, check=False)

    def bits(self) -> int:
        return gf2.bits_to_int(self.array.ravel().tolist())

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)


def in_sp_f2(x: np.ndarray) -> bool:
    J = gram(x.shape[0] // 2)
    return bool(np.all((x.T @ J + J @ x) % 2 == 0))


def layer_log(M: SpMatrix, k: int | None = None) -> SpAlgElemF2:
    """(M - 1)/2^k mod 2 for M in Gamma(2^k) mod 2^e with e >= k + 1."""
    k = congruence_level(M) if k is None else k
    if k < 1 or M.e < k + 1:
        raise ValueError(f"layer_log needs 1 <= k < e, got k={k}, e={M.e}")
    d = (M.entries - np.eye(2 * M.g, dtype=np.int64)) % M.modulus
    if np.any(d % (1 << k)):
        raise ValueError(f"matrix is not congruent to 1 mod 2^{k}")
    return SpAlgElemF2((d >> k) % 2, M.g)


def sp_dimension_f2(g: int) -> int:
    """Dimension of sp_2g(F_2) as the kernel of X -> X^T J + J X, by elimination."""
    n = 2 * g
    J = gram(g)
    images = []
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=np.int64)
            E[i, j] = 1
            images.append(gf2.bits_to_int(((E.T @ J + J @ E) % 2).ravel().tolist()))
    return n * n - gf2.rank(images)


# ---- subgroup enumeration -------------------------------------------------


def _keys(mats: np.ndarray) -> np.ndarray:
    """Row-major uint16 entries viewed as one opaque key per matrix."""
    flat = np.ascontiguousarray(mats.reshape(mats.shape[0], -1).astype(np.uint16))
    return flat.view(np.dtype((np.void, flat.shape[1] * 2))).ravel()


@dataclass
class SubgroupTable:
    g: int
    e: int
    gens: list[SpMatrix]
    elements: np.ndarray  # (order, 2g, 2g), sorted by key
    keys: np.ndarray
    _lookup: set | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return int(self.keys.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, M: SpMatrix) -> bool:
        if (M.g, M.e) != (self.g, self.e):
            return False
        if self._lookup is None:
            self._lookup = {k.tobytes() for k in self.keys}
        return M.key() in self._lookup

    def contains_all(self, mats: np.ndarray) -> bool:
        if mats.shape[0] == 0:
            return True
        return bool(np.all(np.isin(_keys(mats % (1 << self.e)), self.keys)))

    def __iter__(self):
        for a in self.elements:
            yield SpMatrix(a, self.e, check=False)


def generate_subgroup(
    gens: Sequence[SpMatrix], e: int | None = None, cap: int = DEFAULT_CAP
) -> SubgroupTable:
    """Closure of gens under multiplication by breadth-first search over gens and their inverses."""
    if not gens:
        raise ValueError("need at least one generator (use the identity for the trivial group)")
    g = gens[0].g
    e = gens[0].e if e is None else e
    _check_level(e)
    if any(m.g != g for m in gens):
        raise ValueError("generators must share the genus")
    gens = [m if m.e == e else m.reduce(e) for m in gens]
    mod = 1 << e
    steps = np.stack([m.entries for m in gens] + [m.inverse().entries for m in gens])
    steps = steps[np.unique(_keys(steps), return_index=True)[1]]

    ident = np.eye(2 * g, dtype=np.int64)[None]
    frontier = ident
    visited = _keys(ident)
    found = [ident]
    while frontier.shape[0]:
        fresh = []
        for s in range(0, frontier.shape[0], _CHUNK):
            block = frontier[s : s + _CHUNK]
            cand = (block[:, None] @ steps[None]) % mod
            fresh.append(cand.reshape(-1, 2 * g, 2 * g))
        cand = np.concatenate(fresh)
        ck, idx = np.unique(_keys(cand), return_index=True)
        new = ~np.isin(ck, visited)
        frontier = cand[idx[new]]
        if frontier.shape[0]:
            visited = np.sort(np.concatenate([visited, ck[new]]))
            found.append(frontier)
            if visited.size > cap:
                raise CapExceeded(int(visited.size), cap)
    elements = np.concatenate(found)
    order = np.argsort(_keys(elements))
    elements = elements[order]
    return SubgroupTable(g, e, list(gens), elements, _keys(elements))


# ---- congruence subgroup reference sets ------------------------------------


def layer_vectors(g: int) -> list[np.ndarray]:
    """e_i and e_i + e_j (i < j); their t_c form a basis of sp_2g(F_2)."""
    n = 2 * g
    eye = np.eye(n, dtype=np.int64)
    return [eye[i] for i in range(n)] + [eye[i] + eye[j] for i, j in combinations(range(n), 2)]


def layer_representatives(g: int, j: int, e: int) -> np.ndarray:
    """Exact symplectic T_c^(2^j) mod 2^e over the layer vectors."""
    return np.stack([transvection_matrix(c, 1 << j) % (1 << e) for c in layer_vectors(g)])


def congruence_subgroup_elements(g: int, N: int, e: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All of Gamma(2^N) mod 2^e as ordered products over layers N..e-1."""
    _check_level(e)
    if not 0 <= N <= e:
        raise ValueError("need 0 <= N <= e")
    if N == 0:
        raise ValueError("Gamma(1) is the whole group; enumerate it with generate_subgroup")
    size = 1 << ((e - N) * sp_order_layer(g))
    if size > cap:
        raise CapExceeded(size, cap, "congruence subgroup")
    mod = 1 << e
    out = np.eye(2 * g, dtype=np.int64)[None]
    for j in range(N, e):
        for r in layer_representatives(g, j, e):
            out = np.concatenate([out, (out @ r) % mod])
    return out


def brute_force_congruence(g: int, N: int, e: int, limit: int = 1 << 20) -> np.ndarray:
    """Gamma(2^N) mod 2^e by filtering every 1 + 2^N Y for symplecticity."""
    n = 2 * g
    span = 1 << (e - N)
    total = span ** (n * n)
    if total > limit:
        raise CapExceeded(total, limit, "brute-force candidate set")
    mod = 1 << e
    J = gram(g)
    digits = np.indices((span,) * (n * n)).reshape(n * n, -1).T
    Y = digits.reshape(-1, n, n)
    M = (np.eye(n, dtype=np.int64) + (Y << N)) % mod
    ok = np.all(((np.transpose(M, (0, 2, 1)) @ J @ M) - J) % mod == 0, axis=(1, 2))
    return M[ok]


def same_set(a: np.ndarray, b: np.ndarray) -> bool:
    ka, kb = np.unique(_keys(a)), np.unique(_keys(b))
    return ka.size == a.shape[0] and kb.size == b.shape[0] and np.array_equal(ka, kb)


# ---- layer structure -------------------------------------------------------


@dataclass
class LayerReport:
    g: int
    k: int
    order: int
    expected_order: int
    matches_product_construction: bool
    closed: bool
    exponent_two: bool
    abelian: bool
    log_is_homomorphism: bool
    squaring_bijective: bool
    squaring_counterexample: dict | None = None

    @property
    def elementary_abelian(self) -> bool:
        return self.closed and self.exponent_two and self.abelian

    @property
    def passed(self) -> bool:
        return (
            self.order == self.expected_order
            and self.matches_product_construction
            and self.elementary_abelian
            and self.log_is_homomorphism
            and self.squaring_bijective
        )

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "k": self.k,
            "order": self.order,
            "expected_order": self.expected_order,
            "matches_product_construction": self.matches_product_construction,
            "elementary_abelian": self.elementary_abelian,
            "log_is_homomorphism": self.log_is_homomorphism,
            "squaring_bijective": self.squaring_bijective,
            "squaring_counterexample": self.squaring_counterexample,
            "pass": self.passed,
        }


def layer_structure_report(g: int, k: int) -> LayerReport:
    """Enumerate Gamma(2^k)/Gamma(2^(k+1)) by brute force and test its group structure."""
    if k < 1:
        raise ValueError("layers start at k = 1")
    n = 2 * g
    mod = 1 << (k + 1)
    I = np.eye(n, dtype=np.int64)
    L = brute_force_congruence(g, k, k + 1)
    keys = _keys(L)
    logs = ((L - I) >> k) % 2

    closed = exponent_two = abelian = hom = True
    for a, la in zip(L, logs):
        prod = (a @ L) % mod
        closed &= bool(np.all(np.isin(_keys(prod), keys)))
        abelian &= bool(np.array_equal(prod, (L @ a) % mod))
        hom &= bool(np.array_equal(((prod - I) >> k) % 2, (la + logs) % 2))
    exponent_two = bool(np.all((L @ L) % mod == I))

    # squares of exact lifts, read in the next layer
    lifts = _exact_layer_lifts(g, k, k + 2)
    sq = (lifts @ lifts) % (1 << (k + 2))
    in_next = np.all((sq - I) % (1 << (k + 1)) == 0, axis=(1, 2))
    sq_logs = ((sq - I) >> (k + 1)) % 2
    uniq, first, inv = np.unique(_keys(sq_logs), return_index=True, return_inverse=True)
    bijective = bool(np.all(in_next)) and uniq.size == lifts.shape[0]
    counter = None
    if not bijective:
        inv = inv.ravel()
        for idx in range(lifts.shape[0]):
            j = first[inv[idx]]
            if j != idx:
                counter = {
                    "lift_a": (lifts[j] % mod).tolist(),
                    "lift_b": (lifts[idx] % mod).tolist(),
                    "square_layer_log": sq_logs[idx].tolist(),
                }
                break
    return LayerReport(
        g,
        k,
        int(L.shape[0]),
        1 << sp_order_layer(g),
        same_set(L, congruence_subgroup_elements(g, k, k + 1)),
        closed,
        exponent_two,
        abelian,
        hom,
        bijective,
        counter,
    )


def _exact_layer_lifts(g: int, k: int, e: int) -> np.ndarray:
    """One exact symplectic lift mod 2^e of every class in Gamma(2^k)/Gamma(2^(k+1))."""
    mod = 1 << e
    out = np.eye(2 * g, dtype=np.int64)[None]
    for r in layer_representatives(g, k, e):
        out = np.concatenate([out, (out @ r) % mod])
    return out


# ---- Lie algebra basis -----------------------------------------------------


def _f2_t(c: HomClassF2) -> np.ndarray:
    return t_matrix(c.coords) % 2


def sp_basis_certify(g: int, classes: Sequence[HomClassF2] | None = None) -> dict:
    """Rank of the t_i and their brackets [t_i, t_j] inside sp_2g(F_2)."""
    classes = list(classes) if classes is not None else [c_class(i, g) for i in range(1, 2 * g + 1)]
    if len(classes) != 2 * g:
        raise ValueError(f"expected {2 * g} classes")
    J = gram(g)
    ts = [_f2_t(c) for c in classes]
    brackets = {}
    action_ok = True
    for i, j in combinations(range(2 * g), 2):
        b = (ts[i] @ ts[j] - ts[j] @ ts[i]) % 2
        brackets[(i, j)] = b
        ci, cj = (np.array(classes[i].coords), np.array(classes[j].coords))
        # v -> <v, c_i> c_j + <v, c_j> c_i
        action = (np.outer(cj, J @ ci) + np.outer(ci, J @ cj)) % 2
        action_ok &= bool(np.array_equal(b, action))
    elems = ts + list(brackets.values())
    in_sp = all(in_sp_f2(x) for x in elems)
    rank = gf2.rank([gf2.bits_to_int(x.ravel().tolist()) for x in elems])
    dim = sp_dimension_f2(g)
    report = {
        "g": g,
        "elements": len(elems),
        "rank": rank,
        "dimension": dim,
        "expected_dimension": sp_order_layer(g),
        "all_in_sp": in_sp,
        "bracket_action_formula": action_ok,
        "pass": rank == dim == sp_order_layer(g) and in_sp and action_ok,
    }
    if g == 1:
        report["base_case"] = _in_c_coordinates(classes, [ts[0], ts[1], brackets[(0, 1)]])
    return report


def _in_c_coordinates(classes: Sequence[HomClassF2], mats: Iterable[np.ndarray]) -> list:
    P = np.array([c.coords for c in classes], dtype=np.int64).T
    Pinv = np.array(gf2.inverse(P.tolist()), dtype=np.int64)
    return [((Pinv @ m @ P) % 2).tolist() for m in mats]


# ---- congruences used in the containment argument --------------------------


def proof_congruence_report(g_max: int = 3, exps: Sequence[int] = (1, 2)) -> dict:
    """t_i^2 = 0, the power congruence and the commutator congruence for all c-classes."""
    checks = {"t_squared_zero": 0, "power": 0, "commutator": 0}
    failures = []
    for g in range(1, g_max + 1):
        n_ = 2 * g
        I = np.eye(n_, dtype=np.int64)
        ts = [t_matrix(c_class(i, g).coords) for i in range(1, n_ + 1)]
        for i, t in enumerate(ts):
            checks["t_squared_zero"] += 1
            if np.any(t @ t):
                failures.append({"check": "t_squared_zero", "g": g, "i": i + 1})
        for n, n2 in ((a, b) for a in exps for b in exps):
            mod = 1 << (n + n2 + 1)
            for i, t in enumerate(ts):
                checks["power"] += 1
                A = SpMatrix(I + (t << n), n + n2 + 1, check=False)
                lhs = (A ** (1 << n2)).entries
                rhs = (I + (t << (n + n2))) % mod
                if not np.array_equal(lhs, rhs):
                    failures.append({"check": "power", "g": g, "i": i + 1, "n": n, "n2": n2})
            for i, j in combinations(range(n_), 2):
                checks["commutator"] += 1
                ti, tj = ts[i], ts[j]
                A, Ai = I + (ti << n), I - (ti << n)
                B, Bi = I + (tj << n2), I - (tj << n2)
                lhs = (A @ B @ Ai @ Bi) % mod
                rhs = (I + ((ti @ tj - tj @ ti) << (n + n2))) % mod
                if not np.array_equal(lhs, rhs):
                    failures.append({"check": "commutator", "g": g, "i": i + 1, "j": j + 1, "n": n, "n2": n2})
    return {"checks": checks, "failures": failures, "pass": not failures}


# ---- subgroup certificates -------------------------------------------------


def c_generators(g: int, exponents: Sequence[int], e: int) -> list[SpMatrix]:
    """T_{c_i}^(2^exponents[i-1]) mod 2^e."""
    return [
        transvection(c_class(i + 1, g).coords, e, g, power=1 << k) for i, k in enumerate(exponents)
    ]


def prop32_certify(g: int, n: int, nprime: int, layers: int = 1, cap: int = DEFAULT_CAP) -> dict:
    """Check that <T_{c_i}^(2^n) (i < 2g), T_{c_2g}^(2^n')> contains Gamma(2^N) mod 2^(N+layers)."""
    if g < 1 or n < 0 or nprime < 0 or layers < 1:
        raise ValueError("need g >= 1, n, n' >= 0 and layers >= 1")
    N = n + max(n, nprime)
    e = N + layers
    _check_level(e)
    # G lies in Gamma(2^min(n, n')), which bounds its size
    bound = 1 << ((e - min(n, nprime)) * sp_order_layer(g))
    if min(n, nprime) == 0 or bound > cap:
        raise CapExceeded(bound, cap, "ambient congruence subgroup")
    gens = c_generators(g, [n] * (2 * g - 1) + [nprime], e)
    table = generate_subgroup(gens, e, cap)
    ref = congruence_subgroup_elements(g, N, e, cap)
    contained = table.contains_all(ref)
    levels = [congruence_level(m) for m in gens]
    strict = any(lv < N for lv in levels)
    return {
        "g": g,
        "n": n,
        "nprime": nprime,
        "N": N,
        "e": e,
        "subgroup_order": table.order,
        "reference_order": int(ref.shape[0]),
        "generator_levels": levels,
        "contained": contained,
        "strict": strict,
        "pass": contained and strict,
    }


def prop34_certify(n: int, layers: int = 1, cap: int = DEFAULT_CAP) -> dict:
    """g = 1: check <T_{c_1}^(2^n), T_{c_2}^(2^n), T_{a_1}^(2^n)> = Gamma(2^n) mod 2^(n+layers)."""
    if n < 1 or layers < 1:
        raise ValueError("need n >= 1 and layers >= 1")
    e = n + layers
    _check_level(e)
    c3 = HomClassF2.basis("a", 1, 1)
    gens = c_generators(1, [n, n], e) + [transvection(c3.coords, e, 1, power=1 << n)]
    table = generate_subgroup(gens, e, cap)
    ref = congruence_subgroup_elements(1, n, e, cap)
    expected = 1 << (3 * layers)
    equal = table.order == ref.shape[0] == expected and table.contains_all(ref)
    return {
        "n": n,
        "layers": layers,
        "e": e,
        "subgroup_order": table.order,
        "expected_order": expected,
        "equal": equal,
        "pass": equal,
    }


def enumerated_index(g: int, n: int, e: int = 3, cap: int = DEFAULT_CAP) -> dict:
    """[Gamma(2) : G] mod 2^e for G generated by T_{c_i}^(2^(n+1)), i = 1..2g (n = n')."""
    gens = c_generators(g, [n + 1] * (2 * g), e)
    table = generate_subgroup(gens, e, cap)
    gamma2 = congruence_subgroup_elements(g, 1, e, cap).shape[0]
    return {
        "g": g,
        "n": n,
        "e": e,
        "gamma2_order": int(gamma2),
        "subgroup_order": table.order,
        "index": int(gamma2) // table.order,
    }
