"""Second-quantized operator algebra and the Jordan-Wigner map to Pauli strings.

Pauli strings are stored in a packed symplectic form: each string is a pair of
bit masks ``(x, z)`` where bit ``q`` of ``x`` marks an X or Y on qubit ``q``
and bit ``q`` of ``z`` marks a Z or Y.  The coefficient always refers to the
I/X/Y/Z letter string (Y carries its own phase), so Hermitian operators have
all-real coefficients and anti-Hermitian ones all-imaginary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

COEFF_CUTOFF = 1e-14

# exact integer powers of i, indexed mod 4
_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)

_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def _mul_keys(x1: int, z1: int, x2: int, z2: int) -> tuple[int, int, complex]:
    """Multiply two letter strings; returns (x, z, phase) with phase in {1,i,-1,-i}."""
    x3 = x1 ^ x2
    z3 = z1 ^ z2
    k = (
        (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        + 2 * (z1 & x2).bit_count()
        - (x3 & z3).bit_count()
    )
    return x3, z3, _I_POW[k & 3]


class PauliOperator:
    """Complex-weighted sum of n-qubit Pauli strings."""

    __slots__ = ("n_qubits", "terms", "_compiled")

    def __init__(self, n_qubits: int, terms: dict[tuple[int, int], complex] | None = None):
        if n_qubits < 0:
            raise ValueError("n_qubits must be non-negative")
        self.n_qubits = n_qubits
        self.terms: dict[tuple[int, int], complex] = {}
        if terms:
            lim = 1 << n_qubits
            for (x, z), c in terms.items():
                if x >= lim or z >= lim:
                    raise ValueError(f"Pauli mask ({x},{z}) outside {n_qubits} qubits")
                if abs(c) >= COEFF_CUTOFF:
                    self.terms[(x, z)] = complex(c)
        self._compiled = None  # set lazily by statesim

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliOperator":
        return cls(n_qubits, {(0, 0): coeff})

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliOperator":
        return cls(n_qubits, {})

    @classmethod
    def from_string(cls, letters: str, coeff: complex = 1.0) -> "PauliOperator":
        """Build a single-string operator from letters with qubit 0 first."""
        x = z = 0
        for q, ch in enumerate(letters):
            try:
                bx, bz = _BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {ch!r}") from None
            x |= bx << q
            z |= bz << q
        return cls(len(letters), {(x, z): coeff})

    # -- algebra -----------------------------------------------------------

    def _check_compatible(self, other: "PauliOperator") -> None:
        if self.n_qubits != other.n_qubits:
            raise ValueError(
                f"qubit-count mismatch: {self.n_qubits} vs {other.n_qubits}"
            )

    def __add__(self, other: "PauliOperator") -> "PauliOperator":
        self._check_compatible(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0.0) + c
        return PauliOperator(self.n_qubits, terms)

    def __sub__(self, other: "PauliOperator") -> "PauliOperator":
        return self + (-1.0) * other

    def __neg__(self) -> "PauliOperator":
        return (-1.0) * self

    def __rmul__(self, scalar: complex) -> "PauliOperator":
        return PauliOperator(
            self.n_qubits, {key: scalar * c for key, c in self.terms.items()}
        )

    def __mul__(self, other: "PauliOperator | complex") -> "PauliOperator":
        if not isinstance(other, PauliOperator):
            return PauliOperator(
                self.n_qubits, {key: c * other for key, c in self.terms.items()}
            )
        self._check_compatible(other)
        out: dict[tuple[int, int], complex] = {}
        for (x1, z1), c1 in self.terms.items():
            for (x2, z2), c2 in other.terms.items():
                x3, z3, ph = _mul_keys(x1, z1, x2, z2)
                key = (x3, z3)
                out[key] = out.get(key, 0.0) + c1 * c2 * ph
        return PauliOperator(self.n_qubits, out)

    def dagger(self) -> "PauliOperator":
        return PauliOperator(
            self.n_qubits, {key: c.conjugate() for key, c in self.terms.items()}
        )

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= tol for c in self.terms.values())

    def is_anti_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(c.real) <= tol for c in self.terms.values())

    def norm(self) -> float:
        """Coefficient 2-norm (Frobenius norm up to a 2^n/2 factor)."""
        return float(np.sqrt(sum(abs(c) ** 2 for c in self.terms.values())))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self.n_qubits == other.n_qubits and (self - other).norm() < 1e-12

    def __hash__(self):
        raise TypeError("PauliOperator is not hashable")

    # -- text form ---------------------------------------------------------

    def string_of(self, key: tuple[int, int]) -> str:
        x, z = key
        return "".join(
            _LETTER[((x >> q) & 1, (z >> q) & 1)] for q in range(self.n_qubits)
        )

    def to_text(self) -> str:
        """One term per line, ``coeff PAULISTRING``, qubit 0 leftmost."""
        lines = []
        for key in sorted(self.terms):
            c = self.terms[key]
            if abs(c.imag) < COEFF_CUTOFF:
                coeff = f"{c.real:.15g}"
            elif abs(c.real) < COEFF_CUTOFF:
                coeff = f"{c.imag:.15g}j"
            else:
                coeff = f"({c.real:.15g}{c.imag:+.15g}j)"
            lines.append(f"{coeff} {self.string_of(key)}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "PauliOperator":
        terms: dict[tuple[int, int], complex] = {}
        n_qubits = 0
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            coeff_str, letters = line.split()
            op = cls.from_string(letters, complex(coeff_str))
            n_qubits = max(n_qubits, op.n_qubits)
            for key, c in op.terms.items():
                terms[key] = terms.get(key, 0.0) + c
        return cls(n_qubits, terms)

    def __repr__(self) -> str:
        return f"PauliOperator(n_qubits={self.n_qubits}, n_terms={len(self.terms)})"

    def __getstate__(self):
        return (self.n_qubits, self.terms)

    def __setstate__(self, state):
        self.n_qubits, self.terms = state
        self._compiled = None


@dataclass(frozen=True)
class FermionTerm:
    """A scalar times an ordered product of ladder operators.

    ``ladder_ops`` entries are (spin-orbital index, is_creation).
    """

    coefficient: complex
    ladder_ops: tuple[tuple[int, bool], ...]

    def dagger(self) -> "FermionTerm":
        ops = tuple((p, not create) for p, create in reversed(self.ladder_ops))
        return FermionTerm(self.coefficient.conjugate(), ops)

    def __mul__(self, scalar: complex) -> "FermionTerm":
        return FermionTerm(self.coefficient * scalar, self.ladder_ops)

    __rmul__ = __mul__


def normal_order(terms: Iterable[FermionTerm]) -> list[FermionTerm]:
    """Rewrite a sum of ladder products in normal order.

    Creations left of annihilations, each group sorted by descending index;
    terms that vanish by nilpotency are dropped and like terms combined.
    """
    out: dict[tuple[tuple[int, bool], ...], complex] = {}
    stack = [(t.coefficient, list(t.ladder_ops)) for t in terms]
    while stack:
        coeff, ops = stack.pop()
        if abs(coeff) < COEFF_CUTOFF:
            continue
        done = True
        for i in range(len(ops) - 1):
            (p, cp), (q, cq) = ops[i], ops[i + 1]
            if not cp and cq:
                # a_p a†_q = δ_pq − a†_q a_p
                rest = ops[:i] + ops[i + 2 :]
                if p == q:
                    stack.append((coeff, rest))
                stack.append((-coeff, ops[:i] + [ops[i + 1], ops[i]] + ops[i + 2 :]))
                done = False
                break
            if cp == cq:
                if p == q:
                    done = True
                    coeff = 0.0
                    break
                if p < q:
                    # sort descending within a like group
                    stack.append(
                        (-coeff, ops[:i] + [ops[i + 1], ops[i]] + ops[i + 2 :])
                    )
                    done = False
                    break
        if done and abs(coeff) >= COEFF_CUTOFF:
            key = tuple(ops)
            out[key] = out.get(key, 0.0) + coeff
    return [
        FermionTerm(c, ops)
        for ops, c in sorted(out.items())
        if abs(c) >= COEFF_CUTOFF
    ]


def fermion_terms_equal(
    a: Iterable[FermionTerm], b: Iterable[FermionTerm], tol: float = 1e-12
) -> bool:
    """Equality of two ladder-operator sums, compared after normal ordering."""
    diff: dict[tuple[tuple[int, bool], ...], complex] = {}
    for t in normal_order(a):
        diff[t.ladder_ops] = diff.get(t.ladder_ops, 0.0) + t.coefficient
    for t in normal_order(b):
        diff[t.ladder_ops] = diff.get(t.ladder_ops, 0.0) - t.coefficient
    return all(abs(c) <= tol for c in diff.values())


def _ladder_terms(index: int, create: bool) -> dict[tuple[int, int], complex]:
    # a†_p = (X_p − iY_p)/2 ⊗ Z_{p−1}…Z_0,  a_p = (X_p + iY_p)/2 ⊗ Z_{p−1}…Z_0
    x = 1 << index
    z_below = x - 1
    y_coeff = -0.5j if create else 0.5j
    return {(x, z_below): 0.5, (x, z_below | x): y_coeff}


def jw_ladder_product(
    ladder_ops: Iterable[tuple[int, bool]], n_qubits: int, coeff: complex = 1.0
) -> dict[tuple[int, int], complex]:
    """Jordan-Wigner image of a product of ladder operators, as a term dict."""
    acc: dict[tuple[int, int], complex] = {(0, 0): complex(coeff)}
    for index, create in ladder_ops:
        if index >= n_qubits or index < 0:
            raise ValueError(f"orbital index {index} outside {n_qubits} qubits")
        factor = _ladder_terms(index, create)
        nxt: dict[tuple[int, int], complex] = {}
        for (x1, z1), c1 in acc.items():
            for (x2, z2), c2 in factor.items():
                x3, z3, ph = _mul_keys(x1, z1, x2, z2)
                key = (x3, z3)
                nxt[key] = nxt.get(key, 0.0) + c1 * c2 * ph
        acc = nxt
    return acc


def jordan_wigner(term: FermionTerm, n_qubits: int) -> PauliOperator:
    """Map a single FermionTerm onto qubits."""
    return PauliOperator(
        n_qubits, jw_ladder_product(term.ladder_ops, n_qubits, term.coefficient)
    )


def jordan_wigner_sum(terms: Iterable[FermionTerm], n_qubits: int) -> PauliOperator:
    acc: dict[tuple[int, int], complex] = {}
    for term in terms:
        for key, c in jw_ladder_product(
            term.ladder_ops, n_qubits, term.coefficient
        ).items():
            acc[key] = acc.get(key, 0.0) + c
    return PauliOperator(n_qubits, acc)


def commutator(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """ab − ba with exact phase tracking."""
    a._check_compatible(b)
    return a * b - b * a


def hamiltonian_to_qubits(soh) -> PauliOperator:
    """Jordan-Wigner image of a spin-orbital Hamiltonian.

    The two-body part uses the antisymmetrized tensor restricted to ordered
    index pairs, so each unique quadruple is mapped once.
    """
    n = soh.n_so
    acc: dict[tuple[int, int], complex] = {(0, 0): complex(soh.e_nuc)}

    def add(prod: dict[tuple[int, int], complex], weight: float) -> None:
        for key, c in prod.items():
            acc[key] = acc.get(key, 0.0) + weight * c

    h = soh.h
    for p in range(n):
        for q in range(n):
            if abs(h[p, q]) < COEFF_CUTOFF:
                continue
            add(jw_ladder_product(((p, True), (q, False)), n), h[p, q])

    g = soh.g
    for p in range(n):
        for q in range(p + 1, n):
            for r in range(n):
                for s in range(r + 1, n):
                    val = g[p, q, r, s]
                    if abs(val) < COEFF_CUTOFF:
                        continue
                    # ¼ Σ g a†a†aa collapses to ordered pairs by antisymmetry
                    add(
                        jw_ladder_product(
                            ((p, True), (q, True), (s, False), (r, False)), n
                        ),
                        val,
                    )

    out = PauliOperator(n, acc)
    bad = max((abs(c.imag) for c in out.terms.values()), default=0.0)
    if bad > 1e-12:
        raise ValueError(f"qubit Hamiltonian not Hermitian (max imag {bad:.3e})")
    for key in out.terms:
        out.terms[key] = complex(out.terms[key].real)
    return out


def number_operator(n_qubits: int) -> PauliOperator:
    """JW particle-number operator Σ_p a†_p a_p."""
    acc: dict[tuple[int, int], complex] = {}
    for p in range(n_qubits):
        for key, c in jw_ladder_product(((p, True), (p, False)), n_qubits).items():
            acc[key] = acc.get(key, 0.0) + c
    return PauliOperator(n_qubits, acc)


def sz_operator(n_qubits: int) -> PauliOperator:
    """JW S_z operator, ½(N_alpha − N_beta) with alpha on even indices."""
    acc: dict[tuple[int, int], complex] = {}
    for p in range(n_qubits):
        w = 0.5 if p % 2 == 0 else -0.5
        for key, c in jw_ladder_product(((p, True), (p, False)), n_qubits).items():
            acc[key] = acc.get(key, 0.0) + w * c
    return PauliOperator(n_qubits, acc)


def pauli_iter(op: PauliOperator) -> Iterator[tuple[str, complex]]:
    """Iterate (letter string, coefficient) in deterministic order."""
    for key in sorted(op.terms):
        yield op.string_of(key), op.terms[key]
