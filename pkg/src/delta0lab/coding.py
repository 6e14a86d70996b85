"""Two interchangeable Godel numberings for terms and formulas.

Prime-power scheme ("paper"): a sequence <a_0, ..., a_k> is coded as
prod_i p_i^(a_i + 1) with the empty sequence coded 1.  Symbols get odd
codes (0:1, 1:3, +:5, *:7, =:9, <=:11, ~:13, ->:15, A:17), variable v_i
gets 2i + 2, and a composite node is the sequence <opcode, children...>.
A bounded quantifier has length 4 (<17, var, bound, body>), an unbounded
one length 3.  Variable codes overlap composite codes; decoding prefers
the composite reading, which only matters for astronomically large
variable indices.

Bit scheme ("compact"): a code is int("1" + bits, 2) for a bit string
produced by a prefix-free tag grammar; sequences concatenate the Elias
gamma codes of entry + 1, with the empty sequence again coded 1.  Codes
stay within a constant factor of the formula size, so deeply nested
formulas remain materializable.

Only the core connectives (=, <=, ~, ->, bounded/unbounded A) are coded;
encode() desugars first and decode() returns core formulas.
"""

from __future__ import annotations

import math
from collections.abc import Mapping

from .formulas import (
    Add,
    BForall,
    ConstOne,
    ConstZero,
    Eq,
    Formula,
    Implies,
    Le,
    Mul,
    Not,
    Term,
    UForall,
    Var,
    desugar,
    is_delta0,
    term_vars,
)
from .numbers import LazyPow, magnitude_ge, magnitude_to_int, nthprime
from .primrec import FeasibilityError
from .semantics import Verdict, eval_term

KINDS = ("term", "formula", "delta0")


class CodingError(ValueError):
    """The integer does not code an object of the requested kind."""


def _short(x: int) -> str:
    """Digit-safe rendering of possibly huge codes."""
    if isinstance(x, int) and x.bit_length() > 64:
        return f"<{x.bit_length()}-bit code>"
    return str(x)


# ---------------------------------------------------------------------------
# shared scheme interface


class Coding:
    """Common encode/decode layer; subclasses supply codes and shapes.

    A "shape" is a one-level reading of a code: ("const0",), ("const1",),
    ("var", i), ("add", a, b), ("mul", a, b) for terms and ("eq", a, b),
    ("le", a, b), ("not", b), ("implies", a, b), ("bforall", i, t, b),
    ("uforall", i, b) for formulas, with child codes unvalidated.  A code
    may admit several readings (prime-power variables); decoding tries
    them in order.
    """

    name: str

    # -- subclass obligations -----------------------------------------

    def seq_encode(self, entries: list[int]) -> int:
        raise NotImplementedError

    def seq_decode(self, code: int) -> list[int]:
        raise NotImplementedError

    def term_shapes(self, code: int) -> list[tuple]:
        raise NotImplementedError

    def formula_shapes(self, code: int) -> list[tuple]:
        raise NotImplementedError

    def mk_zero(self) -> int:
        raise NotImplementedError

    def mk_one(self) -> int:
        raise NotImplementedError

    def mk_var(self, i: int) -> int:
        raise NotImplementedError

    def mk_add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mk_mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mk_eq(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mk_le(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mk_not(self, a: int) -> int:
        raise NotImplementedError

    def mk_implies(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mk_bforall(self, i: int, t: int, b: int) -> int:
        raise NotImplementedError

    def mk_uforall(self, i: int, b: int) -> int:
        raise NotImplementedError

    def buildseq_bound(self, x: int) -> int | LazyPow:
        raise NotImplementedError

    # -- encoding -------------------------------------------------------

    def encode_term(self, t: Term) -> int:
        match t:
            case ConstZero():
                return self.mk_zero()
            case ConstOne():
                return self.mk_one()
            case Var(index=i):
                return self.mk_var(i)
            case Add(left=l, right=r):
                return self.mk_add(self.encode_term(l), self.encode_term(r))
            case Mul(left=l, right=r):
                return self.mk_mul(self.encode_term(l), self.encode_term(r))
        raise CodingError(f"not a term: {t!r}")

    def encode(self, phi: Formula) -> int:
        return self._encode_core(desugar(phi))

    def _encode_core(self, phi: Formula) -> int:
        match phi:
            case Eq(left=l, right=r):
                return self.mk_eq(self.encode_term(l), self.encode_term(r))
            case Le(left=l, right=r):
                return self.mk_le(self.encode_term(l), self.encode_term(r))
            case Not(body=b):
                return self.mk_not(self._encode_core(b))
            case Implies(left=l, right=r):
                return self.mk_implies(self._encode_core(l), self._encode_core(r))
            case BForall(var=v, bound=t, body=b):
                return self.mk_bforall(v, self.encode_term(t), self._encode_core(b))
            case UForall(var=v, body=b):
                return self.mk_uforall(v, self._encode_core(b))
        raise CodingError(f"not a core formula: {phi!r}")

    # -- decoding -------------------------------------------------------

    def decode_term(self, code: int) -> Term:
        for shape in self.term_shapes(code):
            try:
                match shape:
                    case ("const0",):
                        return ConstZero()
                    case ("const1",):
                        return ConstOne()
                    case ("var", i):
                        return Var(i)
                    case ("add", a, b):
                        return Add(self.decode_term(a), self.decode_term(b))
                    case ("mul", a, b):
                        return Mul(self.decode_term(a), self.decode_term(b))
            except CodingError:
                continue
        raise CodingError(f"{_short(code)} is not a term code")

    def decode(self, code: int) -> Formula:
        for shape in self.formula_shapes(code):
            try:
                match shape:
                    case ("eq", a, b):
                        return Eq(self.decode_term(a), self.decode_term(b))
                    case ("le", a, b):
                        return Le(self.decode_term(a), self.decode_term(b))
                    case ("not", b):
                        return Not(self.decode(b))
                    case ("implies", a, b):
                        return Implies(self.decode(a), self.decode(b))
                    case ("bforall", i, t, b):
                        return BForall(i, self.decode_term(t), self.decode(b))
                    case ("uforall", i, b):
                        return UForall(i, self.decode(b))
            except CodingError:
                continue
        raise CodingError(f"{_short(code)} is not a formula code")

    # -- recognizers ------------------------------------------------------

    def is_seq(self, code: int) -> bool:
        try:
            self.seq_decode(code)
            return True
        except CodingError:
            return False

    def seq_len(self, code: int) -> int:
        return len(self.seq_decode(code))

    def seq_idx(self, code: int, i: int) -> int:
        """Entry i, with 0 past the end (absent-variable convention)."""
        if i < 0:
            raise ValueError("index must be a natural")
        entries = self.seq_decode(code)
        return entries[i] if i < len(entries) else 0

    def is_term_code(self, code: int) -> bool:
        try:
            self.decode_term(code)
            return True
        except CodingError:
            return False

    def var_index(self, code: int) -> int | None:
        """Index i when code is a variable code v_i, else None.

        Under the prime-power scheme every even code >= 2 counts as a
        variable, per the stated convention, even when it also reads as a
        composite.
        """
        for shape in self.term_shapes(code):
            if shape[0] == "var":
                return shape[1]
        return None

    def is_formula_code(self, code: int) -> bool:
        try:
            self.decode(code)
            return True
        except CodingError:
            return False

    def is_delta0_code(self, code: int) -> bool:
        try:
            return is_delta0(self.decode(code))
        except CodingError:
            return False

    # -- valuations -------------------------------------------------------

    def val_encode(self, rho: Mapping[int, int]) -> int:
        """Valuation code: entry i is the value of v_i, absent means 0."""
        for k, v in rho.items():
            if not isinstance(k, int) or not isinstance(v, int) or k < 0 or v < 0:
                raise CodingError("valuation entries must map naturals to naturals")
        if not rho:
            return self.seq_encode([])
        top = max(rho)
        return self.seq_encode([rho.get(i, 0) for i in range(top + 1)])

    def val_get(self, y: int, i: int) -> int:
        return self.seq_idx(y, i)

    def val_with(self, y: int, i: int, v: int) -> int:
        """The valuation y updated to send v_i to v, padding with zeros."""
        if i < 0 or v < 0:
            raise ValueError("indices and values must be naturals")
        entries = self.seq_decode(y)
        if i >= len(entries):
            entries = entries + [0] * (i + 1 - len(entries))
        entries[i] = v
        return self.seq_encode(entries)

    # -- magnitude bounds ---------------------------------------------------

    def termval_bound(self, u: int, z: int) -> int | LazyPow:
        """Upper bound p_u^(z^u + 1) for the value of term u under z.

        When z^u cannot be materialized the exponent is kept as the lazy
        power z^u, off by one; lower-bound queries stay sound.
        """
        if u < 0 or z < 0:
            raise ValueError("term code and valuation must be naturals")
        if z <= 1:
            zu = 1 if (z == 1 or u == 0) else 0
            return LazyPow(prime_index=u, exp=zu + 1)
        if u * z.bit_length() <= 200_000:
            return LazyPow(prime_index=u, exp=z ** u + 1)
        return LazyPow(prime_index=u, exp=LazyPow(base=z, exp=u))


# ---------------------------------------------------------------------------
# prime-power scheme


_P_SYM = {"zero": 1, "one": 3, "add": 5, "mul": 7, "eq": 9, "le": 11,
          "not": 13, "implies": 15, "forall": 17}


def _strip_prime(x: int, p: int) -> tuple[int, int]:
    """(e, x / p^e) for the exact power of p in x, by repeated squaring."""
    if x % p:
        return 0, x
    pows = [(p, 1)]
    while x % (pows[-1][0] ** 2) == 0:
        pows.append((pows[-1][0] ** 2, pows[-1][1] * 2))
    e = 0
    for pw, k in reversed(pows):
        q, r = divmod(x, pw)
        if r == 0:
            x, e = q, e + k
    return e, x


class PaperCoding(Coding):
    name = "paper"

    def seq_encode(self, entries: list[int]) -> int:
        code = 1
        for i, e in enumerate(entries):
            if not isinstance(e, int) or e < 0:
                raise CodingError("sequence entries must be naturals")
            p = nthprime(i)
            if e.bit_length() > 63 or (e + 1) * math.log2(p) > 1e8:
                raise FeasibilityError(
                    f"sequence entry at index {i} exceeds the bit budget")
            code *= p ** (e + 1)
        return code

    def seq_decode(self, code: int) -> list[int]:
        if not isinstance(code, int) or code < 1:
            raise CodingError("sequence codes are positive")
        entries = []
        i = 0
        x = code
        while x > 1:
            if i == 0:
                e = (x & -x).bit_length() - 1
                x >>= e
            else:
                e, x = _strip_prime(x, nthprime(i))
            if e == 0:
                raise CodingError(f"{_short(code)} skips prime index {i}")
            entries.append(e - 1)
            i += 1
        return entries

    def term_shapes(self, code: int) -> list[tuple]:
        shapes: list[tuple] = []
        entries = self._seq_or_none(code)
        if entries is not None and len(entries) == 3:
            if entries[0] == _P_SYM["add"]:
                shapes.append(("add", entries[1], entries[2]))
            elif entries[0] == _P_SYM["mul"]:
                shapes.append(("mul", entries[1], entries[2]))
        if code == _P_SYM["zero"]:
            shapes.append(("const0",))
        elif code == _P_SYM["one"]:
            shapes.append(("const1",))
        elif isinstance(code, int) and code >= 2 and code % 2 == 0:
            shapes.append(("var", (code - 2) // 2))
        return shapes

    def formula_shapes(self, code: int) -> list[tuple]:
        entries = self._seq_or_none(code)
        if entries is None or not entries:
            return []
        op, rest = entries[0], entries[1:]
        if op == _P_SYM["eq"] and len(rest) == 2:
            return [("eq", rest[0], rest[1])]
        if op == _P_SYM["le"] and len(rest) == 2:
            return [("le", rest[0], rest[1])]
        if op == _P_SYM["not"] and len(rest) == 1:
            return [("not", rest[0])]
        if op == _P_SYM["implies"] and len(rest) == 2:
            return [("implies", rest[0], rest[1])]
        if op == _P_SYM["forall"] and len(rest) in (2, 3):
            v = rest[0]
            if v < 2 or v % 2:
                return []
            i = (v - 2) // 2
            if len(rest) == 3:
                return [("bforall", i, rest[1], rest[2])]
            return [("uforall", i, rest[1])]
        return []

    def _seq_or_none(self, code: int) -> list[int] | None:
        try:
            return self.seq_decode(code)
        except CodingError:
            return None

    def mk_zero(self) -> int:
        return _P_SYM["zero"]

    def mk_one(self) -> int:
        return _P_SYM["one"]

    def mk_var(self, i: int) -> int:
        if i < 0:
            raise CodingError("variable index must be a natural")
        return 2 * i + 2

    def mk_add(self, a: int, b: int) -> int:
        return self.seq_encode([_P_SYM["add"], a, b])

    def mk_mul(self, a: int, b: int) -> int:
        return self.seq_encode([_P_SYM["mul"], a, b])

    def mk_eq(self, a: int, b: int) -> int:
        return self.seq_encode([_P_SYM["eq"], a, b])

    def mk_le(self, a: int, b: int) -> int:
        return self.seq_encode([_P_SYM["le"], a, b])

    def mk_not(self, a: int) -> int:
        return self.seq_encode([_P_SYM["not"], a])

    def mk_implies(self, a: int, b: int) -> int:
        return self.seq_encode([_P_SYM["implies"], a, b])

    def mk_bforall(self, i: int, t: int, b: int) -> int:
        return self.seq_encode([_P_SYM["forall"], self.mk_var(i), t, b])

    def mk_uforall(self, i: int, b: int) -> int:
        return self.seq_encode([_P_SYM["forall"], self.mk_var(i), b])

    def buildseq_bound(self, x: int) -> int | LazyPow:
        """p_x^((x+1)^2), the stated budget for a building sequence of x."""
        if x < 0:
            raise ValueError("codes are naturals")
        return LazyPow(prime_index=x, exp=(x + 1) ** 2)


# ---------------------------------------------------------------------------
# bit scheme


def gamma_bits(m: int) -> str:
    """Elias gamma code of m >= 1."""
    if m < 1:
        raise CodingError("gamma codes positives only")
    b = bin(m)[2:]
    return "0" * (len(b) - 1) + b


def bits_to_code(bits: str) -> int:
    """Guarded value of a bit string; the empty string codes as 1."""
    return int("1" + bits, 2)


def code_to_bits(code: int) -> str:
    if not isinstance(code, int) or code < 1:
        raise CodingError("bit codes are positive")
    return bin(code)[3:]


def _take(bits: str, pos: int, n: int) -> str:
    if pos + n > len(bits):
        raise CodingError("truncated code")
    return bits[pos:pos + n]


def _tag(bits: str, pos: int, max_ones: int) -> tuple[int, int]:
    """Count leading ones up to max_ones, consuming the terminating zero."""
    k = 0
    while k < max_ones and _take(bits, pos, 1) == "1":
        k += 1
        pos += 1
    if k < max_ones:
        pos += 1
    return k, pos


def _gamma_parse(bits: str, pos: int) -> tuple[int, int]:
    z = 0
    while _take(bits, pos + z, 1) == "0":
        z += 1
    num = _take(bits, pos + z, z + 1)
    return int(num, 2), pos + 2 * z + 1


class CompactCoding(Coding):
    name = "compact"

    # term tags: 0 | 10 | 110 g(i+1) | 1110 T T | 1111 T T
    # formula tags: 0 T T | 10 T T | 110 F | 1110 F F | 1111 g(i+1) d ...

    def seq_encode(self, entries: list[int]) -> int:
        for e in entries:
            if not isinstance(e, int) or e < 0:
                raise CodingError("sequence entries must be naturals")
            if e.bit_length() > 50_000_000:
                raise FeasibilityError("sequence entry exceeds the bit budget")
        return bits_to_code("".join(gamma_bits(e + 1) for e in entries))

    def seq_decode(self, code: int) -> list[int]:
        bits = code_to_bits(code)
        entries = []
        pos = 0
        while pos < len(bits):
            m, pos = _gamma_parse(bits, pos)
            entries.append(m - 1)
        return entries

    def _term_end(self, bits: str, pos: int) -> int:
        k, pos = _tag(bits, pos, 4)
        if k <= 1:
            return pos
        if k == 2:
            _, pos = _gamma_parse(bits, pos)
            return pos
        pos = self._term_end(bits, pos)
        return self._term_end(bits, pos)

    def _formula_end(self, bits: str, pos: int) -> int:
        k, pos = _tag(bits, pos, 4)
        if k <= 1:
            pos = self._term_end(bits, pos)
            return self._term_end(bits, pos)
        if k == 2:
            return self._formula_end(bits, pos)
        if k == 3:
            pos = self._formula_end(bits, pos)
            return self._formula_end(bits, pos)
        _, pos = _gamma_parse(bits, pos)
        d = _take(bits, pos, 1)
        pos += 1
        if d == "0":
            pos = self._term_end(bits, pos)
        return self._formula_end(bits, pos)

    def term_shapes(self, code: int) -> list[tuple]:
        try:
            bits = code_to_bits(code)
            k, pos = _tag(bits, 0, 4)
            if k == 0:
                shape: tuple = ("const0",)
            elif k == 1:
                shape = ("const1",)
            elif k == 2:
                m, pos = _gamma_parse(bits, pos)
                shape = ("var", m - 1)
            else:
                split = self._term_end(bits, pos)
                end = self._term_end(bits, split)
                shape = ("add" if k == 3 else "mul",
                         bits_to_code(bits[pos:split]), bits_to_code(bits[split:end]))
                pos = end
            if pos != len(bits):
                return []
            return [shape]
        except CodingError:
            return []

    def formula_shapes(self, code: int) -> list[tuple]:
        try:
            bits = code_to_bits(code)
            k, pos = _tag(bits, 0, 4)
            if k <= 1:
                split = self._term_end(bits, pos)
                end = self._term_end(bits, split)
                shape: tuple = ("eq" if k == 0 else "le",
                                bits_to_code(bits[pos:split]), bits_to_code(bits[split:end]))
                pos = end
            elif k == 2:
                end = self._formula_end(bits, pos)
                shape = ("not", bits_to_code(bits[pos:end]))
                pos = end
            elif k == 3:
                split = self._formula_end(bits, pos)
                end = self._formula_end(bits, split)
                shape = ("implies", bits_to_code(bits[pos:split]), bits_to_code(bits[split:end]))
                pos = end
            else:
                m, pos = _gamma_parse(bits, pos)
                d = _take(bits, pos, 1)
                pos += 1
                if d == "0":
                    split = self._term_end(bits, pos)
                    end = self._formula_end(bits, split)
                    shape = ("bforall", m - 1,
                             bits_to_code(bits[pos:split]), bits_to_code(bits[split:end]))
                else:
                    end = self._formula_end(bits, pos)
                    shape = ("uforall", m - 1, bits_to_code(bits[pos:end]))
                pos = end
            if pos != len(bits):
                return []
            return [shape]
        except CodingError:
            return []

    def mk_zero(self) -> int:
        return bits_to_code("0")

    def mk_one(self) -> int:
        return bits_to_code("10")

    def mk_var(self, i: int) -> int:
        if i < 0:
            raise CodingError("variable index must be a natural")
        return bits_to_code("110" + gamma_bits(i + 1))

    def mk_add(self, a: int, b: int) -> int:
        return bits_to_code("1110" + code_to_bits(a) + code_to_bits(b))

    def mk_mul(self, a: int, b: int) -> int:
        return bits_to_code("1111" + code_to_bits(a) + code_to_bits(b))

    def mk_eq(self, a: int, b: int) -> int:
        return bits_to_code("0" + code_to_bits(a) + code_to_bits(b))

    def mk_le(self, a: int, b: int) -> int:
        return bits_to_code("10" + code_to_bits(a) + code_to_bits(b))

    def mk_not(self, a: int) -> int:
        return bits_to_code("110" + code_to_bits(a))

    def mk_implies(self, a: int, b: int) -> int:
        return bits_to_code("1110" + code_to_bits(a) + code_to_bits(b))

    def mk_bforall(self, i: int, t: int, b: int) -> int:
        if i < 0:
            raise CodingError("variable index must be a natural")
        return bits_to_code("1111" + gamma_bits(i + 1) + "0"
                            + code_to_bits(t) + code_to_bits(b))

    def mk_uforall(self, i: int, b: int) -> int:
        if i < 0:
            raise CodingError("variable index must be a natural")
        return bits_to_code("1111" + gamma_bits(i + 1) + "1" + code_to_bits(b))

    def buildseq_bound(self, x: int) -> int | LazyPow:
        """2^((s+1)(2s+3)+1) for s = bitlen(x) - 1.

        A building sequence holds at most s + 1 distinct subcodes, each
        gamma entry at most 2s + 3 bits.
        """
        if x < 0:
            raise ValueError("codes are naturals")
        s = max(x.bit_length() - 1, 0)
        exp = (s + 1) * (2 * s + 3) + 1
        if exp <= 4_000_000:
            return 1 << exp
        return LazyPow(base=2, exp=exp)


PAPER = PaperCoding()
COMPACT = CompactCoding()
SCHEMES: dict[str, Coding] = {"paper": PAPER, "compact": COMPACT}


def get_scheme(name: str) -> Coding:
    try:
        return SCHEMES[name]
    except KeyError:
        raise CodingError(f"unknown coding scheme {name!r}") from None


# ---------------------------------------------------------------------------
# building sequences


def canonical_term_seq(scheme: Coding, t: Term) -> list[int]:
    """Deduplicated postorder of subterm codes, ending at the code of t."""
    order: list[int] = []
    seen: set[int] = set()

    def walk(u: Term) -> int:
        match u:
            case Add(left=l, right=r) | Mul(left=l, right=r):
                walk(l)
                walk(r)
        c = scheme.encode_term(u)
        if c not in seen:
            seen.add(c)
            order.append(c)
        return c

    walk(t)
    return order


def canonical_formula_seq(scheme: Coding, phi: Formula) -> list[int]:
    """Deduplicated postorder of subformula codes; atoms are leaves."""
    phi = desugar(phi)
    order: list[int] = []
    seen: set[int] = set()

    def walk(psi: Formula) -> int:
        match psi:
            case Not(body=b) | UForall(body=b) | BForall(body=b):
                walk(b)
            case Implies(left=l, right=r):
                walk(l)
                walk(r)
        c = scheme._encode_core(psi)
        if c not in seen:
            seen.add(c)
            order.append(c)
        return c

    walk(phi)
    return order


def _term_entry_ok(scheme: Coding, e: int, earlier: set[int]) -> bool:
    for shape in scheme.term_shapes(e):
        match shape:
            case ("const0",) | ("const1",) | ("var", _):
                return True
            case ("add", a, b) | ("mul", a, b):
                if a in earlier and b in earlier:
                    return True
    return False


def _formula_entry_ok(scheme: Coding, e: int, earlier: set[int],
                      allow_unbounded: bool) -> bool:
    for shape in scheme.formula_shapes(e):
        match shape:
            case ("eq", a, b) | ("le", a, b):
                if scheme.is_term_code(a) and scheme.is_term_code(b):
                    return True
            case ("not", b):
                if b in earlier:
                    return True
            case ("implies", a, b):
                if a in earlier and b in earlier:
                    return True
            case ("bforall", _, t, b):
                if scheme.is_term_code(t) and b in earlier:
                    return True
            case ("uforall", _, b):
                if allow_unbounded and b in earlier:
                    return True
    return False


def _build_entries_ok(scheme: Coding, kind: str, entries: list[int]) -> bool:
    earlier: set[int] = set()
    for e in entries:
        if kind == "term":
            ok = _term_entry_ok(scheme, e, earlier)
        else:
            ok = _formula_entry_ok(scheme, e, earlier, allow_unbounded=(kind == "formula"))
        if not ok:
            return False
        earlier.add(e)
    return True


def check_build_seq(scheme: Coding, kind: str, s: int, x: int) -> bool:
    """Does s code a building sequence for x of the given kind?

    Every entry must be atomic or assembled from strictly earlier
    entries, and the final entry must equal x.  Exact: never guesses.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    try:
        entries = scheme.seq_decode(s)
    except CodingError:
        return False
    if not entries or entries[-1] != x:
        return False
    return _build_entries_ok(scheme, kind, entries)


def _decode_kind(scheme: Coding, kind: str, x: int):
    if kind == "term":
        return scheme.decode_term(x)
    phi = scheme.decode(x)
    if kind == "delta0" and not is_delta0(phi):
        raise CodingError(
            f"{_short(x)} codes a formula with an unbounded quantifier")
    return phi


def canonical_build_code(scheme: Coding, kind: str, x: int) -> int:
    """Sequence code of the canonical building sequence for x."""
    obj = _decode_kind(scheme, kind, x)
    if kind == "term":
        entries = canonical_term_seq(scheme, obj)
    else:
        entries = canonical_formula_seq(scheme, obj)
    return scheme.seq_encode(entries)


def syn_search(scheme: Coding, kind: str, x: int, budget: int | None = None) -> Verdict:
    """Is there a building sequence for x below the stated bound?

    Decodable codes are certified by the canonical sequence; failure to
    decode refutes every candidate, because each scheme's decoder accepts
    exactly the codes its entry checker can assemble.  The exhaustive
    sweep only runs when the bound fits the budget.  A witness too large
    to materialize (deep prime-power codes) yields UNKNOWN.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    try:
        s = canonical_build_code(scheme, kind, x)
    except CodingError:
        return Verdict.FALSE
    except FeasibilityError:
        return Verdict.UNKNOWN
    bound = scheme.buildseq_bound(x)
    fits = magnitude_ge(bound, s)
    if fits is True:
        return Verdict.TRUE
    limit = magnitude_to_int(bound, max_bits=64)
    if budget is not None and limit is not None and limit <= budget:
        for cand in range(limit + 1):
            if check_build_seq(scheme, kind, cand, x):
                return Verdict.TRUE
        return Verdict.FALSE
    return Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# the named syntactic predicates


SYN_PREDS = ("var", "trm", "atm", "fml_delta0")
SEQDEF_PREDS = ("trmseq", "fml_delta0_seq", "valseq",
                "var", "trm", "atm", "fml_delta0", "val")


def syn(scheme: Coding, pred: str, x: int) -> bool:
    """Structural oracle for the syntactic classes: is x a valid code?"""
    if not isinstance(x, int) or x < 0:
        raise ValueError("codes are naturals")
    if pred == "var":
        return scheme.var_index(x) is not None
    if pred == "trm":
        return scheme.is_term_code(x)
    if pred == "atm":
        try:
            return isinstance(scheme.decode(x), (Eq, Le))
        except CodingError:
            return False
    if pred == "fml_delta0":
        return scheme.is_delta0_code(x)
    raise ValueError(f"pred must be one of {SYN_PREDS}")


def val(scheme: Coding, x: int, y: int, *, strict: bool = True) -> int:
    """Value of the coded term x under the valuation sequence y.

    Entry i of y interprets v_i; past-the-end entries read as 0, but with
    strict=True a variable beyond the end of y is an error instead.
    """
    t = scheme.decode_term(x)
    entries = scheme.seq_decode(y)
    rho: dict[int, int] = {}
    for i in term_vars(t):
        if i < len(entries):
            rho[i] = entries[i]
        elif strict:
            raise CodingError(
                f"valuation of length {len(entries)} does not cover v{i}")
        else:
            rho[i] = 0
    return eval_term(t, rho)


def _valseq_holds(scheme: Coding, y: int, s: int, t: int) -> bool:
    """The literal value-annotation clauses.

    s must be a term building sequence and t the entrywise values under
    the valuation y.  The printed variable clause reads the valuation at
    the sequence position; implemented at the variable's own index, which
    is what the val relation and the prose ("substituting the variables
    with the corresponding elements") require.
    """
    for c in (y, s, t):
        if not scheme.is_seq(c):
            return False
    es = scheme.seq_decode(s)
    et = scheme.seq_decode(t)
    if len(et) != len(es):
        return False
    for i in range(len(es)):
        si, ti = es[i], et[i]
        if si == scheme.mk_zero() and ti == 0:
            continue
        if si == scheme.mk_one() and ti == 1:
            continue
        vi = scheme.var_index(si)
        if vi is not None and ti == scheme.val_get(y, vi):
            continue
        if _composite_value_ok(scheme, si, ti, es[:i], et[:i]):
            continue
        return False
    return True


def _composite_value_ok(scheme: Coding, si: int, ti: int,
                        es: list[int], et: list[int]) -> bool:
    for shape in scheme.term_shapes(si):
        match shape:
            case ("add", a, b) | ("mul", a, b):
                va = [et[j] for j in range(len(es)) if es[j] == a]
                vb = [et[k] for k in range(len(es)) if es[k] == b]
                if shape[0] == "add":
                    if any(ti == p + q for p in va for q in vb):
                        return True
                elif any(ti == p * q for p in va for q in vb):
                    return True
    return False


def _val_search(scheme: Coding, x: int, y: int, z: int) -> Verdict:
    """The wrapped val relation: do bounded witness sequences exist?"""
    if not scheme.is_seq(y):
        return Verdict.FALSE
    try:
        tm = scheme.decode_term(x)
    except CodingError:
        return Verdict.FALSE
    if val(scheme, x, y, strict=False) != z:
        return Verdict.FALSE
    try:
        entries = canonical_term_seq(scheme, tm)
        s = scheme.seq_encode(entries)
        values = [val(scheme, e, y, strict=False) for e in entries]
        t = scheme.seq_encode(values)
    except FeasibilityError:
        return Verdict.UNKNOWN
    fits_s = magnitude_ge(scheme.buildseq_bound(x), s)
    fits_t = magnitude_ge(scheme.buildseq_bound(z), t)
    if fits_s is True and fits_t is True:
        return Verdict.TRUE
    return Verdict.UNKNOWN


def seqdef(scheme: Coding, pred: str, args: tuple[int, ...],
           budget: int | None = None) -> Verdict:
    """Literal sequence-style definitions of the syntactic predicates.

    The *seq forms check the given sequence codes directly and always
    decide.  The wrapped forms (trm, fml_delta0, val) search for witness
    sequences under the stated bounds and may return UNKNOWN when a
    witness cannot be materialized or the budget truncates a sweep.
    """
    args = tuple(args)
    if any(not isinstance(a, int) or a < 0 for a in args):
        raise ValueError("codes are naturals")
    match pred:
        case "trmseq" | "fml_delta0_seq":
            (s,) = args
            kind = "term" if pred == "trmseq" else "delta0"
            try:
                entries = scheme.seq_decode(s)
            except CodingError:
                return Verdict.FALSE
            return Verdict.of(_build_entries_ok(scheme, kind, entries))
        case "valseq":
            y, s, t = args
            return Verdict.of(_valseq_holds(scheme, y, s, t))
        case "var" | "atm":
            (x,) = args
            return Verdict.of(syn(scheme, pred, x))
        case "trm":
            (x,) = args
            return syn_search(scheme, "term", x, budget)
        case "fml_delta0":
            (x,) = args
            return syn_search(scheme, "delta0", x, budget)
        case "val":
            x, y, z = args
            return _val_search(scheme, x, y, z)
    raise ValueError(f"pred must be one of {SEQDEF_PREDS}")


def paper_bound(kind: str, *args: int) -> int | LazyPow:
    """The cited bound expressions, exact (symbolic only when unwritable)."""
    if kind == "buildseq":
        (x,) = args
        b = PAPER.buildseq_bound(x)
    elif kind == "termval":
        u, z = args
        b = PAPER.termval_bound(u, z)
    else:
        raise ValueError("kind must be 'buildseq' or 'termval'")
    exact = magnitude_to_int(b)
    return b if exact is None else exact
