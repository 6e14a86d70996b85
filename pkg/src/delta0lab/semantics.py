"""Evaluation of terms and formulas over the standard naturals.

eval_delta0 decides bounded formulas exactly.  eval_fo handles unbounded
quantifiers by bounded search and reports three-valued verdicts: an
existential witness or universal counterexample decides the formula, an
exhausted search leaves it UNKNOWN.  Universal truth over the naturals is
never certified by a finite search.
"""

from __future__ import annotations

import enum
from typing import Mapping

from .formulas import (
    Add, And, BExists, BForall, ConstOne, ConstZero, Eq, Formula, FormulaError,
    Implies, Le, Mul, Not, Or, Term, UExists, UForall, Var, is_delta0,
)


class EvalError(ValueError):
    pass


class UnboundVariableError(EvalError):
    pass


class NotDelta0Error(EvalError):
    pass


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @property
    def decided(self) -> bool:
        return self is not Verdict.UNKNOWN

    @staticmethod
    def of(b: bool) -> "Verdict":
        return Verdict.TRUE if b else Verdict.FALSE


def v_not(a: Verdict) -> Verdict:
    if a is Verdict.UNKNOWN:
        return a
    return Verdict.of(a is Verdict.FALSE)


def v_and(a: Verdict, b: Verdict) -> Verdict:
    if a is Verdict.FALSE or b is Verdict.FALSE:
        return Verdict.FALSE
    if a is Verdict.TRUE and b is Verdict.TRUE:
        return Verdict.TRUE
    return Verdict.UNKNOWN


def v_or(a: Verdict, b: Verdict) -> Verdict:
    if a is Verdict.TRUE or b is Verdict.TRUE:
        return Verdict.TRUE
    if a is Verdict.FALSE and b is Verdict.FALSE:
        return Verdict.FALSE
    return Verdict.UNKNOWN


def v_implies(a: Verdict, b: Verdict) -> Verdict:
    return v_or(v_not(a), b)


Valuation = Mapping[int, int]


def eval_term(t: Term, rho: Valuation) -> int:
    match t:
        case ConstZero():
            return 0
        case ConstOne():
            return 1
        case Var(i):
            try:
                return rho[i]
            except KeyError:
                raise UnboundVariableError(f"v{i} has no value") from None
        case Add(l, r):
            return eval_term(l, rho) + eval_term(r, rho)
        case Mul(l, r):
            return eval_term(l, rho) * eval_term(r, rho)
    raise EvalError(f"not a term: {t!r}")


def eval_delta0(phi: Formula, rho: Valuation) -> bool:
    """Exact truth value of a bounded formula.  Quantifier ranges are
    0..bound inclusive; the bound term is evaluated in the current valuation."""
    match phi:
        case Eq(l, r):
            return eval_term(l, rho) == eval_term(r, rho)
        case Le(l, r):
            return eval_term(l, rho) <= eval_term(r, rho)
        case Not(b):
            return not eval_delta0(b, rho)
        case Implies(l, r):
            return (not eval_delta0(l, rho)) or eval_delta0(r, rho)
        case And(l, r):
            return eval_delta0(l, rho) and eval_delta0(r, rho)
        case Or(l, r):
            return eval_delta0(l, rho) or eval_delta0(r, rho)
        case BForall(v, t, b):
            top = eval_term(t, rho)
            inner = dict(rho)
            for a in range(top + 1):
                inner[v] = a
                if not eval_delta0(b, inner):
                    return False
            return True
        case BExists(v, t, b):
            top = eval_term(t, rho)
            inner = dict(rho)
            for a in range(top + 1):
                inner[v] = a
                if eval_delta0(b, inner):
                    return True
            return False
        case UForall() | UExists():
            raise NotDelta0Error("formula contains an unbounded quantifier")
    raise EvalError(f"not a formula: {phi!r}")


def eval_fo(phi: Formula, rho: Valuation, budget: int) -> Verdict:
    """Three-valued budgeted evaluation.

    Unbounded quantifiers search values 0..budget.  Bounded quantifiers
    whose range fits in the budget are decided exactly; larger ranges are
    searched up to the budget and yield UNKNOWN if inconclusive.  Verdicts
    are monotone in the budget: a decided answer never flips.
    """
    if budget < 0:
        raise EvalError("budget must be a natural number")
    match phi:
        case Eq() | Le():
            return Verdict.of(eval_delta0(phi, rho))
        case Not(b):
            return v_not(eval_fo(b, rho, budget))
        case Implies(l, r):
            return v_implies(eval_fo(l, rho, budget), eval_fo(r, rho, budget))
        case And(l, r):
            return v_and(eval_fo(l, rho, budget), eval_fo(r, rho, budget))
        case Or(l, r):
            return v_or(eval_fo(l, rho, budget), eval_fo(r, rho, budget))
        case BForall(v, t, b) | BExists(v, t, b):
            top = eval_term(t, rho)
            exhaustive = top <= budget
            last = min(top, budget)
            is_forall = isinstance(phi, BForall)
            inner = dict(rho)
            pending = False
            for a in range(last + 1):
                inner[v] = a
                sub = eval_fo(b, inner, budget)
                if is_forall and sub is Verdict.FALSE:
                    return Verdict.FALSE
                if not is_forall and sub is Verdict.TRUE:
                    return Verdict.TRUE
                if sub is Verdict.UNKNOWN:
                    pending = True
            if exhaustive and not pending:
                return Verdict.of(is_forall)
            return Verdict.UNKNOWN
        case UForall(v, b):
            inner = dict(rho)
            for a in range(budget + 1):
                inner[v] = a
                if eval_fo(b, inner, budget) is Verdict.FALSE:
                    return Verdict.FALSE
            return Verdict.UNKNOWN
        case UExists(v, b):
            inner = dict(rho)
            for a in range(budget + 1):
                inner[v] = a
                if eval_fo(b, inner, budget) is Verdict.TRUE:
                    return Verdict.TRUE
            return Verdict.UNKNOWN
    raise EvalError(f"not a formula: {phi!r}")


def eval_delta0_verdict(phi: Formula, rho: Valuation, budget: int | None = None) -> Verdict:
    """eval_delta0 with an optional range budget.

    With budget=None this is exact.  Otherwise bounded quantifier ranges
    larger than the budget are only partially searched, so the verdict can
    be UNKNOWN; this keeps evaluation safe on formulas whose bound terms
    evaluate to astronomically large values.
    """
    if not is_delta0(phi):
        raise NotDelta0Error("formula contains an unbounded quantifier")
    if budget is None:
        return Verdict.of(eval_delta0(phi, rho))
    return eval_fo(phi, rho, budget)


def parse_valuation(text: str) -> dict[int, int]:
    """Parse "v0=4,v1=7" into {0: 4, 1: 7}.  Empty string means empty."""
    rho: dict[int, int] = {}
    text = text.strip()
    if not text:
        return rho
    for part in text.split(","):
        part = part.strip()
        if "=" not in part:
            raise EvalError(f"bad valuation entry {part!r}")
        name, _, value = part.partition("=")
        name = name.strip()
        if not name.startswith("v") or not name[1:].isdigit():
            raise EvalError(f"bad variable name {name!r}")
        index = int(name[1:])
        if index in rho:
            raise EvalError(f"duplicate assignment for {name}")
        try:
            rho[index] = int(value.strip())
        except ValueError:
            raise EvalError(f"bad value {value.strip()!r} for {name}") from None
        if rho[index] < 0:
            raise EvalError(f"negative value for {name}")
    return rho
