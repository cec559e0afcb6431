"""Graded nilpotent Lie algebra arithmetic in exponential coordinates.

Elements of a simply connected graded nilpotent Lie group are identified
with their Lie algebra via the exponential map, so group multiplication is
the truncated Baker-Campbell-Hausdorff series, inversion is coordinate
negation, and dilations scale layer k by lambda**k.  Everything here is a
pure function of immutable data; the array-level helpers on
:class:`GradedLieAlgebra` broadcast over leading axes so bulk sampling
stays in numpy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "GradedLieAlgebra",
    "GroupElement",
    "HorizontalVector",
    "ValidationReport",
    "bracket",
    "bch_multiply",
    "inverse",
    "dilate",
    "horizontal_project",
    "validate_algebra",
    "get_algebra",
    "load_algebra_json",
    "dynkin_terms",
]


def dynkin_terms(step: int) -> list[tuple[tuple[int, ...], float]]:
    """Words and coefficients of the BCH series truncated at nilpotency `step`.

    Each term is ``(word, coeff)`` where ``word`` is a tuple over {0, 1}
    (0 = first argument, 1 = second) evaluated as the right-nested bracket
    ``[w0, [w1, ... [w_{m-2}, w_{m-1}] ...]]``; length-1 words stand for the
    bare vector.  Coefficients come from Dynkin's explicit double sum; words
    whose two innermost letters coincide are dropped since their bracket
    vanishes identically.
    """
    coeffs: dict[tuple[int, ...], float] = {}

    def extend(seq: tuple[tuple[int, int], ...], degree: int) -> None:
        for total in range(1, step - degree + 1):
            for r in range(total + 1):
                s = total - r
                new = seq + ((r, s),)
                _accumulate(new, degree + total)
                extend(new, degree + total)

    def _accumulate(seq: tuple[tuple[int, int], ...], degree: int) -> None:
        k = len(seq)
        denom = degree * k
        for r, s in seq:
            denom *= factorial(r) * factorial(s)
        coeff = (-1.0) ** (k - 1) / denom
        word: list[int] = []
        for r, s in seq:
            word.extend([0] * r)
            word.extend([1] * s)
        key = tuple(word)
        coeffs[key] = coeffs.get(key, 0.0) + coeff

    extend((), 0)
    terms = []
    for word, coeff in sorted(coeffs.items(), key=lambda kv: (len(kv[0]), kv[0])):
        if len(word) >= 2 and word[-1] == word[-2]:
            continue  # innermost bracket [x, x] = 0
        if abs(coeff) < 1e-300:
            continue
        terms.append((word, coeff))
    return terms


class GradedLieAlgebra:
    """Structure-constant description of a stratified nilpotent Lie algebra.

    Parameters
    ----------
    layer_dims:
        Dimensions of the layers V_1, ..., V_r.
    entries:
        Sparse structure tensor as ``(i, j, k, value)`` tuples over the total
        basis, meaning ``[e_i, e_j] = sum_k value * e_k``.  Entries are stored
        exactly as given; use :meth:`from_brackets` to have the antisymmetric
        counterparts filled in automatically.
    name:
        Optional registry name for reports.
    """

    def __init__(
        self,
        layer_dims: Sequence[int],
        entries: Iterable[tuple[int, int, int, float]] = (),
        name: str = "",
    ):
        self.layer_dims = tuple(int(d) for d in layer_dims)
        if not self.layer_dims or any(d <= 0 for d in self.layer_dims):
            raise ValueError("layer_dims must be positive integers")
        self.step = len(self.layer_dims)
        self.total_dim = sum(self.layer_dims)
        self.name = name or f"graded{self.layer_dims}"
        self.structure = tuple((int(i), int(j), int(k), float(v)) for i, j, k, v in entries)
        n = self.total_dim
        for i, j, k, _ in self.structure:
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise ValueError(f"structure index out of range: {(i, j, k)}")
        self.homogeneous_dim = sum((k + 1) * d for k, d in enumerate(self.layer_dims))

        # layer bookkeeping over the total basis
        self.layer_of = np.repeat(np.arange(1, self.step + 1), self.layer_dims)
        offs = np.concatenate([[0], np.cumsum(self.layer_dims)])
        self.layer_slices = tuple(slice(int(offs[k]), int(offs[k + 1])) for k in range(self.step))

        tensor = np.zeros((n, n, n))
        for i, j, k, v in self.structure:
            tensor[i, j, k] += v
        self._tensor = tensor
        self._dynkin = dynkin_terms(self.step)

    @classmethod
    def from_brackets(
        cls,
        layer_dims: Sequence[int],
        brackets: Iterable[tuple[int, int, int, float]],
        name: str = "",
    ) -> "GradedLieAlgebra":
        """Build from entries given for i < j only; mirrors antisymmetrically."""
        entries = []
        for i, j, k, v in brackets:
            entries.append((i, j, k, float(v)))
            entries.append((j, i, k, -float(v)))
        return cls(layer_dims, entries, name=name)

    # ---- array-level operations (broadcast over leading axes) ----

    def zero(self) -> np.ndarray:
        return np.zeros(self.total_dim)

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """[u, v] via the structure tensor; inputs shaped (..., n)."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if u.shape[-1] != self.total_dim or v.shape[-1] != self.total_dim:
            raise ValueError("dimension mismatch with algebra basis")
        return np.einsum("...i,...j,ijk->...k", u, v, self._tensor)

    def bch(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Exponential coordinates of the product exp(x) exp(y)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.shape[-1] != self.total_dim or y.shape[-1] != self.total_dim:
            raise ValueError("dimension mismatch with algebra basis")
        x, y = np.broadcast_arrays(x, y)
        letters = (x, y)
        out = np.zeros_like(x)
        suffix_vals: dict[tuple[int, ...], np.ndarray] = {}
        for word, coeff in self._dynkin:
            val = suffix_vals.get(word)
            if val is None:
                val = letters[word[-1]]
                for pos in range(len(word) - 2, -1, -1):
                    suffix = word[pos:]
                    cached = suffix_vals.get(suffix)
                    if cached is None:
                        cached = self.bracket(letters[word[pos]], val)
                        suffix_vals[suffix] = cached
                    val = cached
                suffix_vals[word] = val
            out = out + coeff * val
        return out

    def inv(self, x: np.ndarray) -> np.ndarray:
        """exp(x)^{-1} = exp(-x)."""
        return -np.asarray(x, dtype=float)

    def dilate(self, lam, x: np.ndarray) -> np.ndarray:
        """Dilation automorphism: layer k scaled by lam**k.

        `lam` may broadcast against the leading axes of `x`.
        """
        x = np.asarray(x, dtype=float)
        lam = np.asarray(lam, dtype=float)
        if np.any(lam < 0):
            raise ValueError("dilation factor must be nonnegative")
        scale = lam[..., None] ** self.layer_of
        return x * scale

    def project(self, x: np.ndarray) -> np.ndarray:
        """Horizontal projection: the V_1 block of the coordinates."""
        x = np.asarray(x, dtype=float)
        return x[..., self.layer_slices[0]]

    def embed_horizontal(self, v: np.ndarray) -> np.ndarray:
        """Group element exp(v) for a horizontal vector v (V_1 coordinates)."""
        v = np.asarray(v, dtype=float)
        if v.shape[-1] != self.layer_dims[0]:
            raise ValueError("horizontal vector has wrong dimension")
        out = np.zeros(v.shape[:-1] + (self.total_dim,))
        out[..., self.layer_slices[0]] = v
        return out

    def layer_norms(self, x: np.ndarray) -> np.ndarray:
        """Euclidean norm of each layer block, shaped (..., step)."""
        x = np.asarray(x, dtype=float)
        cols = [np.linalg.norm(x[..., sl], axis=-1) for sl in self.layer_slices]
        return np.stack(cols, axis=-1)

    def horizontal_zeroed(self, x: np.ndarray) -> np.ndarray:
        """(x_1, 0, ..., 0): all non-horizontal layers zeroed."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        out[..., self.layer_slices[0]] = x[..., self.layer_slices[0]]
        return out

    def __repr__(self):
        return f"GradedLieAlgebra({self.name}, layers={self.layer_dims})"


@dataclass(frozen=True)
class GroupElement:
    """A group element in exponential coordinates (g_1, ..., g_r)."""

    algebra: GradedLieAlgebra
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        if coords.shape != (self.algebra.total_dim,):
            raise ValueError(
                f"expected {self.algebra.total_dim} coordinates, got shape {coords.shape}"
            )
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")
        coords = coords.copy()
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    def layer(self, k: int) -> np.ndarray:
        """Coordinates of layer k (1-based)."""
        return self.coords[self.algebra.layer_slices[k - 1]]


@dataclass(frozen=True)
class HorizontalVector:
    """A vector in the horizontal layer V_1."""

    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        if coords.ndim != 1:
            raise ValueError("horizontal vector must be one dimensional")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")
        coords = coords.copy()
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    @property
    def euclid_norm(self) -> float:
        return float(np.linalg.norm(self.coords))


def _same_algebra(g: GroupElement, h: GroupElement) -> GradedLieAlgebra:
    if g.algebra is not h.algebra and g.algebra.structure != h.algebra.structure:
        raise ValueError("elements belong to different algebras")
    return g.algebra


def bracket(alg: GradedLieAlgebra, u, v) -> np.ndarray:
    """Lie bracket of algebra vectors over the total basis."""
    return alg.bracket(np.asarray(u, dtype=float), np.asarray(v, dtype=float))


def bch_multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """Group product in exponential coordinates."""
    alg = _same_algebra(g, h)
    return GroupElement(alg, alg.bch(g.coords, h.coords))


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.algebra, g.algebra.inv(g.coords))


def dilate(lam: float, g: GroupElement) -> GroupElement:
    return GroupElement(g.algebra, g.algebra.dilate(float(lam), g.coords))


def horizontal_project(g: GroupElement) -> HorizontalVector:
    """The horizontal coordinate block; a group homomorphism onto R^n."""
    return HorizontalVector(g.algebra.project(g.coords))


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    max_violation: float
    witness: tuple = ()


@dataclass
class ValidationReport:
    algebra: str
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary(self) -> str:
        lines = [f"validation of {self.algebra}:"]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            lines.append(f"  {c.name}: {status} (max violation {c.max_violation:.3e})")
        return "\n".join(lines)


def validate_algebra(alg: GradedLieAlgebra, tol: float = 1e-12) -> ValidationReport:
    """Check antisymmetry, grading, Jacobi, and stratification axioms.

    Failures are reported as data with the worst offending basis indices;
    nothing raises.
    """
    n = alg.total_dim
    t = alg._tensor
    report = ValidationReport(alg.name)

    anti = t + np.swapaxes(t, 0, 1)
    worst = float(np.max(np.abs(anti))) if n else 0.0
    idx = np.unravel_index(np.argmax(np.abs(anti)), anti.shape) if worst > tol else ()
    report.checks.append(AxiomCheck("antisymmetry", worst <= tol, worst, tuple(int(x) for x in idx)))

    layer = alg.layer_of
    target_layer = layer[:, None] + layer[None, :]  # (i, j) -> layer of [e_i, e_j]
    bad = np.abs(t) * (layer[None, None, :] != target_layer[:, :, None])
    worst = float(np.max(bad))
    idx = np.unravel_index(np.argmax(bad), bad.shape) if worst > tol else ()
    report.checks.append(AxiomCheck("grading", worst <= tol, worst, tuple(int(x) for x in idx)))

    # jacobi: [e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]] = 0
    comp = np.einsum("jlk,ikm->ijlm", t, t)
    jac = comp + np.einsum("ijlm->jlim", comp) + np.einsum("ijlm->lijm", comp)
    worst = float(np.max(np.abs(jac)))
    idx = np.unravel_index(np.argmax(np.abs(jac)), jac.shape) if worst > tol else ()
    report.checks.append(AxiomCheck("jacobi", worst <= tol, worst, tuple(int(x) for x in idx)))

    # stratification: brackets of V_1 with V_{k-1} span V_k
    strat_ok, strat_worst, strat_witness = True, 0.0, ()
    prev = np.eye(n)[alg.layer_slices[0]]  # basis of V_1 as rows
    for k in range(2, alg.step + 1):
        horiz = np.eye(n)[alg.layer_slices[0]]
        prods = alg.bracket(horiz[:, None, :], prev[None, :, :]).reshape(-1, n)
        block = prods[:, alg.layer_slices[k - 1]]
        rank = np.linalg.matrix_rank(block, tol=1e-10) if block.size else 0
        need = alg.layer_dims[k - 1]
        if rank < need:
            strat_ok = False
            strat_worst = float(need - rank)
            strat_witness = (k,)
        prev = prods
    report.checks.append(AxiomCheck("stratification", strat_ok, strat_worst, strat_witness))

    hd = sum((k + 1) * d for k, d in enumerate(alg.layer_dims))
    ok = alg.homogeneous_dim == hd
    report.checks.append(AxiomCheck("homogeneous_dim", ok, 0.0 if ok else float(abs(alg.homogeneous_dim - hd))))
    return report


# ---- built-in registry ----


def _abelian(n: int) -> GradedLieAlgebra:
    return GradedLieAlgebra([n], [], name=f"abelian{n}")


def _heisenberg(n: int) -> GradedLieAlgebra:
    """H^n: dims (2n, 1) with [X_i, Y_i] = Z."""
    brackets = [(i, n + i, 2 * n, 1.0) for i in range(n)]
    return GradedLieAlgebra.from_brackets([2 * n, 1], brackets, name=f"heisenberg{n}")


def _engel() -> GradedLieAlgebra:
    # dims (2, 1, 1): [X1, X2] = X3, [X1, X3] = X4
    brackets = [(0, 1, 2, 1.0), (0, 2, 3, 1.0)]
    return GradedLieAlgebra.from_brackets([2, 1, 1], brackets, name="engel")


_REGISTRY = {
    "abelian1": lambda: _abelian(1),
    "abelian2": lambda: _abelian(2),
    "abelian3": lambda: _abelian(3),
    "heisenberg1": lambda: _heisenberg(1),
    "heisenberg2": lambda: _heisenberg(2),
    "engel": _engel,
}

_CACHE: dict[str, GradedLieAlgebra] = {}


def get_algebra(name: str) -> GradedLieAlgebra:
    """Fetch a built-in algebra by registry name."""
    if name not in _REGISTRY:
        raise KeyError(f"unknown algebra {name!r}; known: {sorted(_REGISTRY)}")
    if name not in _CACHE:
        _CACHE[name] = _REGISTRY[name]()
    return _CACHE[name]


def builtin_algebras() -> list[str]:
    return sorted(_REGISTRY)


def load_algebra_json(source) -> GradedLieAlgebra:
    """Load an algebra description from a JSON file path or mapping.

    Schema: ``{"layer_dims": [...], "entries": [[i, j, k, value], ...],
    "mirror": true, "name": "..."}``.  With ``mirror`` (default) entries are
    interpreted as brackets for i < j and antisymmetric counterparts are
    filled in; otherwise the tensor is taken verbatim.
    """
    if isinstance(source, Mapping):
        data = source
    else:
        with open(source) as fh:
            data = json.load(fh)
    layer_dims = data["layer_dims"]
    entries = [tuple(e) for e in data.get("entries", [])]
    name = data.get("name", "")
    if data.get("mirror", True):
        return GradedLieAlgebra.from_brackets(layer_dims, entries, name=name)
    return GradedLieAlgebra(layer_dims, entries, name=name)
