"""Satisfaction for coded bounded formulas, checked via annotated runs.

A run for a formula building sequence s is a sequence t of triples
<i, z, w> = 2^i * 3^z * 5^w recording that entry i of s gets truth value
w under the valuation code z.  A triple must be justified by the clause
matching the entry's shape: atoms by term values under z (within the
stated witness cap), connectives by earlier triples for the children at
the same z, and a bounded quantifier by a complete family of earlier
body triples at z[r/v] for every r up to the bound's value.

The diagonal falsifier turns any claimed truth definition into a test
point on which it must disagree with actual satisfaction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coding import (
    COMPACT,
    Coding,
    CodingError,
    _build_entries_ok,
    _short,
    _strip_prime,
    canonical_formula_seq,
    val,
)
from .formulas import (
    BForall,
    Eq,
    Formula,
    Implies,
    Le,
    Not,
    UForall,
    Var,
    desugar,
    free_vars,
    fresh_index,
    is_delta0,
    substitute,
)
from .numbers import LazyPow, magnitude_ge
from .primrec import FeasibilityError
from .semantics import Verdict, eval_delta0, eval_delta0_verdict

_SWEEP_CAP = 10 ** 6


class SatError(ValueError):
    """The input does not denote a satisfaction instance."""


# ---------------------------------------------------------------------------
# direct evaluation of coded formulas


def sat_direct(x: int, a: int, scheme: Coding = COMPACT) -> bool:
    """Truth of the coded formula with a substituted for every free variable."""
    phi = scheme.decode(x)
    rho = {i: a for i in free_vars(phi)}
    return eval_delta0(phi, rho)


def sat_valuation(x: int, y: int, scheme: Coding = COMPACT) -> bool:
    """Truth of the coded formula under the valuation sequence y."""
    phi = scheme.decode(x)
    rho = {i: scheme.val_get(y, i) for i in free_vars(phi)}
    return eval_delta0(phi, rho)


# ---------------------------------------------------------------------------
# annotation triples


def triple_encode(i: int, z: int, w: int) -> int:
    if min(i, z, w) < 0:
        raise ValueError("triple parts must be naturals")
    return 2 ** i * 3 ** z * 5 ** w


def triple_decode(tau: int) -> tuple[int, int, int] | None:
    """(i, z, w) when tau = 2^i * 3^z * 5^w exactly, else None."""
    if tau < 1:
        return None
    i, rest = _strip_prime(tau, 2)
    z, rest = _strip_prime(rest, 3)
    w, rest = _strip_prime(rest, 5)
    return (i, z, w) if rest == 1 else None


@dataclass(frozen=True, repr=False)
class SatInstance:
    """An annotated run: building-sequence code, triple-sequence code, verdict."""

    s: int
    t: int
    value: bool

    def __repr__(self):
        return (f"SatInstance(s={_short(self.s)}, t={_short(self.t)}, "
                f"value={self.value})")


def sat_witness(phi: Formula | int, y: int | None = None,
                scheme: Coding = COMPACT) -> SatInstance:
    """The annotated run certifying the truth value of phi under y."""
    if isinstance(phi, int):
        phi = scheme.decode(phi)
    phi = desugar(phi)
    if not is_delta0(phi):
        raise SatError("runs cover bounded formulas only")
    if y is None:
        y = scheme.seq_encode([])
    entries = canonical_formula_seq(scheme, phi)
    index = {code: i for i, code in enumerate(entries)}
    codes: dict[Formula, int] = {}
    triples: list[int] = []
    seen: set[tuple[int, int, int]] = set()

    def code_of(node: Formula) -> int:
        if node not in codes:
            codes[node] = scheme.encode(node)
        return codes[node]

    def visit(node: Formula, z: int) -> int:
        match node:
            case Eq(left=l, right=r) | Le(left=l, right=r):
                a = val(scheme, scheme.encode_term(l), z, strict=False)
                b = val(scheme, scheme.encode_term(r), z, strict=False)
                w = int(a == b if isinstance(node, Eq) else a <= b)
            case Not(body=b):
                w = 1 - visit(b, z)
            case Implies(left=l, right=r):
                wl, wr = visit(l, z), visit(r, z)
                w = int(wl == 0 or wr == 1)
            case BForall(var=v, bound=u, body=b):
                top = val(scheme, scheme.encode_term(u), z, strict=False)
                ws = [visit(b, scheme.val_with(z, v, r)) for r in range(top + 1)]
                w = int(all(ws))
            case _:
                raise SatError(f"not a core bounded formula: {node!r}")
        key = (index[code_of(node)], z, w)
        if key not in seen:
            seen.add(key)
            triples.append(triple_encode(*key))
        return w

    value = visit(phi, y)
    return SatInstance(s=scheme.seq_encode(entries),
                       t=scheme.seq_encode(triples), value=bool(value))


# ---------------------------------------------------------------------------
# the run checker


def satseq_check(s: int, t: int, budget: int | None = None,
                 scheme: Coding = COMPACT) -> Verdict:
    """Do the triples in t certify a run over the building sequence s?"""
    try:
        entries = scheme.seq_decode(s)
    except CodingError:
        return Verdict.FALSE
    if not _build_entries_ok(scheme, "delta0", entries):
        return Verdict.FALSE
    try:
        taus = scheme.seq_decode(t)
    except CodingError:
        return Verdict.FALSE
    earlier: list[tuple[int, int, int]] = []
    out = Verdict.TRUE
    for tau in taus:
        parts = triple_decode(tau)
        if parts is None:
            return Verdict.FALSE
        got = _triple_justified(scheme, entries, earlier, parts, budget)
        if got is Verdict.FALSE:
            return Verdict.FALSE
        if got is Verdict.UNKNOWN:
            out = Verdict.UNKNOWN
        earlier.append(parts)
    return out


def _triple_justified(scheme: Coding, entries: list[int],
                      earlier: list[tuple[int, int, int]],
                      parts: tuple[int, int, int],
                      budget: int | None) -> Verdict:
    i, z, w = parts
    if w > 1 or i >= len(entries):
        return Verdict.FALSE
    best = Verdict.FALSE
    for shape in scheme.formula_shapes(entries[i]):
        match shape:
            case ("eq", u, v) | ("le", u, v):
                got = _atom_clause(scheme, shape[0], u, v, z, w)
            case ("not", child):
                got = _not_clause(entries, earlier, i, child, z, w)
            case ("implies", left, right):
                got = _implies_clause(entries, earlier, i, left, right, z, w)
            case ("bforall", vidx, u, body):
                got = _forall_clause(scheme, entries, earlier, i, vidx, u,
                                     body, z, w, budget)
            case _:
                got = Verdict.FALSE
        if got is Verdict.TRUE:
            return Verdict.TRUE
        if got is Verdict.UNKNOWN:
            best = Verdict.UNKNOWN
    return best


def _atom_cap(u: int, v: int, z: int) -> LazyPow:
    """p_(u+v) ** ((z^(u+v) + 1)^2), the stated cap for atom value witnesses.

    When z^(u+v) cannot be materialized the exponent falls back to the
    lazy power z^(u+v); lower-bound queries stay sound.
    """
    n = u + v
    if z <= 1:
        zn = 1 if (z == 1 or n == 0) else 0
        return LazyPow(prime_index=n, exp=(zn + 1) ** 2)
    if n * z.bit_length() <= 200_000:
        return LazyPow(prime_index=n, exp=(z ** n + 1) ** 2)
    return LazyPow(prime_index=n, exp=LazyPow(base=z, exp=n))


def _atom_clause(scheme: Coding, op: str, u: int, v: int,
                 z: int, w: int) -> Verdict:
    if not (scheme.is_term_code(u) and scheme.is_term_code(v)):
        return Verdict.FALSE
    try:
        a = val(scheme, u, z, strict=False)
        b = val(scheme, v, z, strict=False)
    except CodingError:
        # z is not a sequence, so no value witness exists at all
        return Verdict.of(w == 0)
    if (a != b) if op == "eq" else (a > b):
        return Verdict.of(w == 0)
    fit = magnitude_ge(_atom_cap(u, v, z), max(a, b))
    if fit is None:
        return Verdict.UNKNOWN
    return Verdict.of((w == 1) == fit)


def _not_clause(entries: list[int], earlier: list[tuple[int, int, int]],
                i: int, child: int, z: int, w: int) -> Verdict:
    js = {j for j in range(i) if entries[j] == child}
    if not js:
        return Verdict.FALSE
    for j, zj, wj in earlier:
        if j in js and zj == z and (w == 1) == (wj == 0):
            return Verdict.TRUE
    return Verdict.FALSE


def _implies_clause(entries: list[int], earlier: list[tuple[int, int, int]],
                    i: int, left: int, right: int, z: int, w: int) -> Verdict:
    js = {j for j in range(i) if entries[j] == left}
    ks = {k for k in range(i) if entries[k] == right}
    if not js or not ks:
        return Verdict.FALSE
    for j, zj, wj in earlier:
        if j not in js or zj != z:
            continue
        for k, zk, wk in earlier:
            if k in ks and zk == z and (w == 1) == (wj == 0 or wk == 1):
                return Verdict.TRUE
    return Verdict.FALSE


def _forall_clause(scheme: Coding, entries: list[int],
                   earlier: list[tuple[int, int, int]], i: int, vidx: int,
                   u: int, body: int, z: int, w: int,
                   budget: int | None) -> Verdict:
    js = {j for j in range(i) if entries[j] == body}
    if not js or not scheme.is_term_code(u):
        return Verdict.FALSE
    try:
        top = val(scheme, u, z, strict=False)
    except CodingError:
        # no value witness for the bound under a non-sequence z
        return Verdict.FALSE
    fit = magnitude_ge(scheme.termval_bound(u, z), top)
    if fit is False:
        return Verdict.FALSE
    limit = min(top if budget is None else min(top, budget), _SWEEP_CAP)
    all_true = True
    try:
        for r in range(limit + 1):
            zr = scheme.val_with(z, vidx, r)
            found = found_true = False
            for j, zj, wj in earlier:
                if j in js and zj == zr:
                    found = True
                    found_true = found_true or wj == 1
            if not found:
                return Verdict.FALSE
            all_true = all_true and found_true
    except FeasibilityError:
        return Verdict.UNKNOWN
    if limit < top:
        if w == 1 and not all_true:
            return Verdict.FALSE
        return Verdict.UNKNOWN
    if (w == 1) != all_true:
        return Verdict.FALSE
    return Verdict.UNKNOWN if fit is None else Verdict.TRUE


# ---------------------------------------------------------------------------
# the diagonal falsifier


@dataclass(frozen=True, repr=False)
class Counterexample:
    """The diagonal test point for a claimed truth definition."""

    candidate: Formula
    diagonal_formula: Formula
    m: int
    point: tuple[int, int]
    candidate_value: Verdict
    sat_value: Verdict

    def __repr__(self):
        return (f"Counterexample(diagonal={self.diagonal_formula!r}, "
                f"m={_short(self.m)}, "
                f"candidate_value={self.candidate_value.value}, "
                f"sat_value={self.sat_value.value})")

    @property
    def refuted(self) -> bool | None:
        """True when both verdicts are decided and differ, None while unknown."""
        if not (self.candidate_value.decided and self.sat_value.decided):
            return None
        return self.candidate_value is not self.sat_value


def _rename_low_bound_vars(phi: Formula) -> Formula:
    """Rename bound v0/v1 so the diagonal substitution cannot capture."""
    counter = [max(2, fresh_index(phi))]

    def walk(node: Formula) -> Formula:
        match node:
            case Eq() | Le():
                return node
            case Not(body=b):
                return Not(walk(b))
            case Implies(left=l, right=r):
                return Implies(walk(l), walk(r))
            case BForall(var=v, bound=u, body=b):
                b = walk(b)
                if v <= 1:
                    fresh = counter[0]
                    counter[0] += 1
                    return BForall(fresh, u, substitute(b, v, Var(fresh)))
                return BForall(v, u, b)
            case UForall(var=v, body=b):
                b = walk(b)
                if v <= 1:
                    fresh = counter[0]
                    counter[0] += 1
                    return UForall(fresh, substitute(b, v, Var(fresh)))
                return UForall(v, b)
        raise SatError(f"not a core formula: {node!r}")

    return walk(phi)


def falsify(candidate: Formula, scheme: Coding = COMPACT,
            budget: int = 10 ** 6) -> Counterexample:
    """Diagonal counterexample point for a claimed truth definition s(x, y).

    With theta(x) = ~s(x, x) and m its code, the candidate's verdict at
    (m, m) and the actual satisfaction verdict of the formula coded m at
    m must differ whenever both are decided.
    """
    core = desugar(candidate)
    if not is_delta0(core):
        raise SatError("candidate must be a bounded formula")
    if not free_vars(core) <= {0, 1}:
        raise SatError("candidate may use only v0 and v1 free")
    theta = Not(substitute(_rename_low_bound_vars(core), 1, Var(0)))
    m = scheme.encode(theta)
    candidate_value = eval_delta0_verdict(core, {0: m, 1: m}, budget)
    sat_value = eval_delta0_verdict(theta, {0: m}, budget)
    return Counterexample(candidate=core, diagonal_formula=theta, m=m,
                          point=(m, m), candidate_value=candidate_value,
                          sat_value=sat_value)
