"""Godel numbering tests: frozen codes, round trips, building sequences."""

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from delta0lab.coding import (
    COMPACT,
    PAPER,
    CodingError,
    bits_to_code,
    canonical_build_code,
    canonical_formula_seq,
    canonical_term_seq,
    check_build_seq,
    code_to_bits,
    gamma_bits,
    get_scheme,
    paper_bound,
    seqdef,
    syn,
    syn_search,
)
from delta0lab.coding import val as term_value
from delta0lab.formulas import (
    Add,
    BForall,
    Eq,
    Implies,
    Le,
    Mul,
    Not,
    ONE,
    UForall,
    Var,
    ZERO,
    desugar,
    parse,
    parse_term,
)
from delta0lab.numbers import LazyPow, magnitude_ge, nthprime
from delta0lab.primrec import FeasibilityError
from delta0lab.semantics import Verdict


# -- independent oracles ----------------------------------------------------

def g(m):
    b = bin(m)[2:]
    return "0" * (len(b) - 1) + b


def val(bits):
    return int("1" + bits, 2)


def pseq(entries):
    return sympy.prod(sympy.prime(i + 1) ** (e + 1) for i, e in enumerate(entries))


# -- bit helpers --------------------------------------------------------------

def test_gamma_table():
    assert [g(m) for m in range(1, 6)] == ["1", "010", "011", "00100", "00101"]
    assert [gamma_bits(m) for m in range(1, 6)] == ["1", "010", "011", "00100", "00101"]
    with pytest.raises(CodingError):
        gamma_bits(0)


def test_bits_value_round_trip():
    assert bits_to_code("") == 1
    assert bits_to_code("000") == 8
    assert code_to_bits(8) == "000"
    assert code_to_bits(1) == ""
    for bits in ["", "0", "1", "0010", "11111"]:
        assert code_to_bits(bits_to_code(bits)) == bits
    with pytest.raises(CodingError):
        code_to_bits(0)


# -- sequence codecs -----------------------------------------------------------

SEQ_CASES = [
    ([], 1, 1),
    ([0], 2, 3),
    ([1, 0], 12, val(g(2) + g(1))),
    ([1, 2], 108, 83),
    ([1, 1, 1], 900, val(g(2) * 3)),
    ([0, 3, 1], 4050, val(g(1) + g(4) + g(2))),
    ([8], 512, 137),
]


@pytest.mark.parametrize("entries,paper_code,compact_code", SEQ_CASES)
def test_seq_frozen(entries, paper_code, compact_code):
    assert PAPER.seq_encode(entries) == paper_code == pseq(entries)
    assert COMPACT.seq_encode(entries) == compact_code
    assert PAPER.seq_decode(paper_code) == entries
    assert COMPACT.seq_decode(compact_code) == entries


def test_seq_errors():
    for scheme in (PAPER, COMPACT):
        with pytest.raises(CodingError):
            scheme.seq_decode(0)
        with pytest.raises(CodingError):
            scheme.seq_encode([-1])
    with pytest.raises(CodingError):
        PAPER.seq_decode(5)      # skips the prime 2
    with pytest.raises(CodingError):
        PAPER.seq_decode(10)     # skips the prime 3
    with pytest.raises(CodingError):
        COMPACT.seq_decode(4)    # "00" is a truncated gamma code


def test_seq_idx_and_len():
    for scheme in (PAPER, COMPACT):
        code = scheme.seq_encode([1, 0, 4])
        assert scheme.seq_len(code) == 3
        assert [scheme.seq_idx(code, i) for i in range(5)] == [1, 0, 4, 0, 0]
        assert scheme.seq_len(scheme.seq_encode([])) == 0
        assert scheme.is_seq(code) and scheme.is_seq(1)
        with pytest.raises(ValueError):
            scheme.seq_idx(code, -1)
    assert not PAPER.is_seq(5)
    assert not COMPACT.is_seq(4)


@given(st.lists(st.integers(0, 6), max_size=5))
def test_seq_round_trip(entries):
    for scheme in (PAPER, COMPACT):
        assert scheme.seq_decode(scheme.seq_encode(entries)) == entries


# -- frozen term and formula codes ---------------------------------------------

TERM_CASES = [
    ("0", 1, 2),
    ("1", 3, 6),
    ("v0", 2, 29),
    ("v1", 4, 114),
    ("v3", 8, val("110" + g(4))),
    ("(v0 + 1)", 1080000, 1974),
    ("(v0 * v0)", pseq([7, 2, 2]), 8157),
]


@pytest.mark.parametrize("src,paper_code,compact_code", TERM_CASES)
def test_term_codes_frozen(src, paper_code, compact_code):
    t = parse_term(src)
    assert PAPER.encode_term(t) == paper_code
    assert COMPACT.encode_term(t) == compact_code
    assert PAPER.decode_term(paper_code) == t
    assert COMPACT.decode_term(compact_code) == t


FORMULA_CASES = [
    ("(0 = 0)", 230400, 8),
    ("(0 <= 1)", pseq([11, 1, 3]), 50),
    ("(v0 = v0)", pseq([9, 2, 2]), 733),
    ("~(0 = 0)", 2 ** 14 * 3 ** 230401, 112),
    ("((0 = 0) -> (0 = 0))", pseq([15, 230400, 230400]), 1920),
    ("(A v0 <= 1)(0 = 0)", pseq([17, 2, 3, 230400]), 4048),
]


def test_compact_bounded_forall_frozen():
    assert COMPACT.encode(parse("(A v0 <= 1)(v0 = v0)")) == 259293


@pytest.mark.parametrize("src,paper_code,compact_code", FORMULA_CASES,
                         ids=[c[0] for c in FORMULA_CASES])
def test_formula_codes_frozen(src, paper_code, compact_code):
    phi = parse(src)
    assert PAPER.encode(phi) == paper_code
    assert COMPACT.encode(phi) == compact_code
    assert PAPER.decode(paper_code) == phi
    assert COMPACT.decode(compact_code) == phi


def test_encode_desugars_sugar():
    phi = parse("((0 = 0) & (E v0 <= 1)(v0 = 1))")
    core = desugar(phi)
    assert COMPACT.encode(phi) == COMPACT.encode(core)
    assert COMPACT.decode(COMPACT.encode(phi)) == core
    # prime-power codes of nested connectives exceed any bit budget
    with pytest.raises(FeasibilityError):
        PAPER.encode(parse("((0 = 0) & (0 = 0))"))


def test_unbounded_forall_codes():
    phi = UForall(0, parse("(0 = 0)"))
    pcode = PAPER.encode(phi)
    assert pcode == pseq([17, 2, 230400])
    assert PAPER.decode(pcode) == phi
    rich = UForall(0, Eq(Var(0), Var(0)))
    ccode = COMPACT.encode(rich)
    assert ccode == val("1111" + g(1) + "1" + "0" + "110" + g(1) + "110" + g(1))
    assert COMPACT.decode(ccode) == rich
    for scheme, target in [(PAPER, phi), (COMPACT, rich)]:
        code = scheme.encode(target)
        assert scheme.is_formula_code(code)
        assert not scheme.is_delta0_code(code)
    bounded = parse("(A v0 <= 1)(0 = 0)")
    for scheme in (PAPER, COMPACT):
        assert scheme.is_delta0_code(scheme.encode(bounded))


def test_mk_builders_match_encoding():
    for scheme in (PAPER, COMPACT):
        z, o, v2 = scheme.mk_zero(), scheme.mk_one(), scheme.mk_var(2)
        assert z == scheme.encode_term(ZERO)
        assert o == scheme.encode_term(ONE)
        assert v2 == scheme.encode_term(Var(2))
        assert scheme.mk_add(v2, o) == scheme.encode_term(Add(Var(2), ONE))
        assert scheme.mk_mul(z, v2) == scheme.encode_term(Mul(ZERO, Var(2)))
        atom = scheme.mk_eq(v2, z)
        assert atom == scheme.encode(Eq(Var(2), ZERO))
        assert scheme.mk_le(z, o) == scheme.encode(parse("(0 <= 1)"))
        # connectives over a cheap atom: prime-power codes grow as
        # exponents, so keep the nested formula small
        small = atom if scheme is COMPACT else scheme.mk_eq(z, z)
        inner = Eq(Var(2), ZERO) if scheme is COMPACT else Eq(ZERO, ZERO)
        assert scheme.mk_not(small) == scheme.encode(Not(inner))
        assert scheme.mk_implies(small, small) == scheme.encode(
            Implies(inner, inner))
        assert scheme.mk_bforall(2, o, small) == scheme.encode(
            BForall(2, ONE, inner))
        assert scheme.mk_uforall(2, small) == scheme.encode(
            UForall(2, inner))
        with pytest.raises(CodingError):
            scheme.mk_var(-1)


def test_paper_variable_composite_overlap():
    # 12 = <1, 0> has no composite reading, so the variable one wins
    assert PAPER.decode_term(12) == Var(5)
    # a well-formed composite is preferred over its variable reading
    assert PAPER.decode_term(1080000) == parse_term("(v0 + 1)")
    assert PAPER.term_shapes(1080000)[0] == ("add", 2, 3)
    assert ("var", (1080000 - 2) // 2) in PAPER.term_shapes(1080000)


def test_decode_failures():
    for scheme, bad_terms, bad_formulas in [
        (PAPER, [0, 5, 9], [0, 1, 2, 3, 12]),
        (COMPACT, [0, 1, 4], [0, 1, 4, 29]),
    ]:
        for x in bad_terms:
            assert not scheme.is_term_code(x)
            with pytest.raises(CodingError):
                scheme.decode_term(x)
        for x in bad_formulas:
            assert not scheme.is_formula_code(x)
            with pytest.raises(CodingError):
                scheme.decode(x)


def test_get_scheme():
    assert get_scheme("paper") is PAPER
    assert get_scheme("compact") is COMPACT
    with pytest.raises(CodingError):
        get_scheme("dense")


# -- valuations ---------------------------------------------------------------

def test_val_codes():
    assert PAPER.val_encode({0: 1, 2: 2}) == 1500 == pseq([1, 0, 2])
    assert COMPACT.val_encode({0: 1, 2: 2}) == 171 == val(g(2) + g(1) + g(3))
    for scheme in (PAPER, COMPACT):
        assert scheme.val_encode({}) == 1
        y = scheme.val_encode({0: 1, 2: 2})
        assert [scheme.val_get(y, i) for i in range(4)] == [1, 0, 2, 0]
        assert scheme.val_with(y, 1, 7) == scheme.val_encode({0: 1, 1: 7, 2: 2})
        with pytest.raises(CodingError):
            scheme.val_encode({-1: 0})
        with pytest.raises(CodingError):
            scheme.val_encode({0: -1})
    assert PAPER.val_with(12, 1, 2) == 108
    assert PAPER.val_with(1, 1, 5) == 1458


# -- building sequences ---------------------------------------------------------

def test_canonical_term_seq_dedups():
    t = parse_term("((v0 + 1) * v0)")
    for scheme in (PAPER, COMPACT):
        seq = canonical_term_seq(scheme, t)
        assert seq == [
            scheme.encode_term(Var(0)),
            scheme.encode_term(ONE),
            scheme.encode_term(parse_term("(v0 + 1)")),
            scheme.encode_term(t),
        ]
        assert len(set(seq)) == len(seq)


def test_canonical_formula_seq_atoms_are_leaves():
    atom = parse("(0 = 0)")
    phi = parse("((0 = 0) -> ~(0 = 0))")
    a = COMPACT.encode(atom)
    assert canonical_formula_seq(COMPACT, phi) == [
        a, COMPACT.mk_not(a), COMPACT.encode(phi)]
    # prime-power formula codes blow up as exponents, so stay shallow
    a = PAPER.encode(atom)
    assert canonical_formula_seq(PAPER, Not(atom)) == [a, PAPER.mk_not(a)]


def test_check_build_seq_accepts_canonical():
    phi = parse("(A v0 <= 1)((v0 + 0) = v0)")
    t = parse_term("((v0 + 1) * v0)")
    s = COMPACT.seq_encode(canonical_formula_seq(COMPACT, phi))
    assert check_build_seq(COMPACT, "formula", s, COMPACT.encode(phi))
    assert check_build_seq(COMPACT, "delta0", s, COMPACT.encode(phi))
    st_ = COMPACT.seq_encode(canonical_term_seq(COMPACT, t))
    assert check_build_seq(COMPACT, "term", st_, COMPACT.encode_term(t))
    # paper scheme: single-atom formula sequences and shallow term
    # sequences are the only materializable ones
    atom = PAPER.encode(parse("(v0 = 1)"))
    assert check_build_seq(PAPER, "formula", PAPER.seq_encode([atom]), atom)
    assert check_build_seq(PAPER, "delta0", PAPER.seq_encode([atom]), atom)
    tp = parse_term("(v0 + 1)")
    sp = PAPER.seq_encode(canonical_term_seq(PAPER, tp))
    assert check_build_seq(PAPER, "term", sp, PAPER.encode_term(tp))


def test_check_build_seq_rejections():
    atom = COMPACT.encode(parse("(0 = 0)"))
    neg = COMPACT.mk_not(atom)
    # child missing: ~(0=0) cannot come first
    assert not check_build_seq(COMPACT, "formula", COMPACT.seq_encode([neg, atom, neg]), neg)
    assert check_build_seq(COMPACT, "formula", COMPACT.seq_encode([atom, neg]), neg)
    # last entry must be the target
    assert not check_build_seq(COMPACT, "formula", COMPACT.seq_encode([atom, neg]), atom)
    for scheme in (PAPER, COMPACT):
        a = scheme.encode(parse("(0 = 0)"))
        # empty sequence certifies nothing
        assert not check_build_seq(scheme, "formula", scheme.seq_encode([]), a)
        # a term code is not a formula entry
        tcode = scheme.encode_term(ONE)
        assert not check_build_seq(scheme, "formula", scheme.seq_encode([tcode]), tcode)
        # non-sequence codes certify nothing
        assert not check_build_seq(scheme, "term", 0, 1)
        # the target must close the sequence even when valid alone
        assert not check_build_seq(scheme, "formula", scheme.seq_encode([a]), a + 1)
    with pytest.raises(ValueError):
        check_build_seq(PAPER, "sentence", 1, 1)


def test_check_build_seq_delta0_rejects_unbounded():
    phi = UForall(0, Eq(Var(0), Var(0)))
    inner = COMPACT.encode(Eq(Var(0), Var(0)))
    code = COMPACT.encode(phi)
    s = COMPACT.seq_encode([inner, code])
    assert check_build_seq(COMPACT, "formula", s, code)
    assert not check_build_seq(COMPACT, "delta0", s, code)


def test_canonical_build_code_frozen():
    assert canonical_build_code(COMPACT, "formula", 8) == 137
    assert canonical_build_code(PAPER, "formula", 230400) == 2 ** 230401
    assert canonical_build_code(PAPER, "term", 2) == 8
    with pytest.raises(CodingError):
        canonical_build_code(PAPER, "formula", 5)


# -- syn search ------------------------------------------------------------------

def test_syn_search_verdicts():
    assert syn_search(COMPACT, "formula", 8) is Verdict.TRUE
    assert syn_search(COMPACT, "delta0", 8) is Verdict.TRUE
    assert syn_search(COMPACT, "formula", 4) is Verdict.FALSE
    assert syn_search(COMPACT, "term", 29) is Verdict.TRUE
    ufa_c = COMPACT.encode(UForall(0, Eq(Var(0), Var(0))))
    assert syn_search(COMPACT, "formula", ufa_c) is Verdict.TRUE
    assert syn_search(COMPACT, "delta0", ufa_c) is Verdict.FALSE
    assert syn_search(PAPER, "formula", 230400) is Verdict.TRUE
    assert syn_search(PAPER, "term", 5) is Verdict.FALSE
    assert syn_search(PAPER, "term", 1080000) is Verdict.TRUE
    ufa_p = PAPER.encode(UForall(0, parse("(0 = 0)")))
    assert syn_search(PAPER, "delta0", ufa_p) is Verdict.FALSE
    # the canonical witness for a composite prime-power code cannot be
    # materialized, so the search honestly reports UNKNOWN
    assert syn_search(PAPER, "formula", ufa_p) is Verdict.UNKNOWN
    with pytest.raises(ValueError):
        syn_search(PAPER, "sentence", 1)


# -- magnitude bounds -------------------------------------------------------------

def test_nthprime_against_sympy():
    for i in range(200):
        assert nthprime(i) == sympy.prime(i + 1)
    with pytest.raises(ValueError):
        nthprime(-1)


def test_lazy_pow_exact_and_certified():
    assert LazyPow(base=3, exp=4).try_int() == 81
    assert LazyPow(prime_index=4, exp=2).try_int() == 121
    assert LazyPow(base=2, exp=10 ** 9).try_int() is None
    big = LazyPow(prime_index=10 ** 12, exp=10 ** 12)
    assert big.ge_int(2 ** 100) is True
    assert LazyPow(base=2, exp=3).ge_int(9) is False
    assert LazyPow(base=2, exp=3).ge_int(8) is True
    nested = LazyPow(prime_index=7, exp=LazyPow(base=10, exp=10 ** 6))
    assert nested.ge_int(2 ** 64) is True
    assert magnitude_ge(100, 99) is True
    assert magnitude_ge(LazyPow(base=2, exp=5), 33) is False
    with pytest.raises(ValueError):
        LazyPow(base=1, exp=2)
    with pytest.raises(ValueError):
        LazyPow()


def test_buildseq_bounds_frozen():
    assert PAPER.buildseq_bound(0).try_int() == 2
    assert PAPER.buildseq_bound(2).try_int() == 5 ** 9
    assert COMPACT.buildseq_bound(8) == 2 ** ((3 + 1) * (2 * 3 + 3) + 1)
    assert magnitude_ge(COMPACT.buildseq_bound(8), 137) is True


def test_termval_bound_frozen():
    assert PAPER.termval_bound(1, 1).try_int() == 9
    assert PAPER.termval_bound(0, 0).try_int() == 4
    assert PAPER.termval_bound(2, 0).try_int() == 5
    assert PAPER.termval_bound(2, 3).try_int() == 5 ** 10
    huge = PAPER.termval_bound(10 ** 9, 10 ** 9)
    assert huge.ge_int(2 ** 128) is True


# -- named syntactic predicates ------------------------------------------------

def test_syn_var_examples():
    assert syn(PAPER, "var", 2) is True
    assert syn(PAPER, "var", 3) is False
    assert syn(PAPER, "var", 104) is True
    assert syn(COMPACT, "var", COMPACT.encode_term(Var(3))) is True
    assert syn(COMPACT, "var", COMPACT.encode_term(parse_term("(v0 + 1)"))) is False


def test_syn_trm_atm_examples():
    # paper codes blow up under nesting, so its negation gets a small child
    for scheme, neg in ((PAPER, "~(0 = 0)"), (COMPACT, "~(v0 = v0)")):
        assert syn(scheme, "trm", scheme.encode_term(parse_term("(v0 + 1)"))) is True
        assert syn(scheme, "atm", scheme.encode(parse("(v0 = v0)"))) is True
        assert syn(scheme, "atm", scheme.encode(parse(neg))) is False
        assert syn(scheme, "fml_delta0", scheme.encode(parse(neg))) is True
    assert syn(COMPACT, "trm", COMPACT.encode(parse("(0 = 0)"))) is False
    assert syn(COMPACT, "fml_delta0",
               COMPACT.encode(parse("(A v0)(v0 = v0)"))) is False


def test_syn_input_checks():
    with pytest.raises(ValueError):
        syn(PAPER, "term", 2)
    with pytest.raises(ValueError):
        syn(PAPER, "var", -1)


def test_seqdef_trmseq_examples():
    v0 = PAPER.encode_term(Var(0))
    assert seqdef(PAPER, "trmseq", (PAPER.seq_encode([v0]),)) is Verdict.TRUE
    dangling = COMPACT.seq_encode([COMPACT.encode_term(parse_term("(v0 + 1)"))])
    assert seqdef(COMPACT, "trmseq", (dangling,)) is Verdict.FALSE
    full = COMPACT.seq_encode(
        canonical_term_seq(COMPACT, parse_term("(v0 + 1)")))
    assert seqdef(COMPACT, "trmseq", (full,)) is Verdict.TRUE
    assert seqdef(COMPACT, "trmseq", (0,)) is Verdict.FALSE


def test_seqdef_formula_seq():
    phi = parse("((A v0 <= 1)(v0 = v0) -> (0 = 1))")
    s = COMPACT.seq_encode(canonical_formula_seq(COMPACT, phi))
    assert seqdef(COMPACT, "fml_delta0_seq", (s,)) is Verdict.TRUE
    alone = COMPACT.seq_encode([COMPACT.encode(phi)])
    assert seqdef(COMPACT, "fml_delta0_seq", (alone,)) is Verdict.FALSE


def test_seqdef_valseq_examples():
    for scheme in (PAPER, COMPACT):
        y = scheme.seq_encode([3])
        s = scheme.seq_encode([scheme.encode_term(Var(0))])
        assert seqdef(scheme, "valseq",
                      (y, s, scheme.seq_encode([3]))) is Verdict.TRUE
        assert seqdef(scheme, "valseq",
                      (y, s, scheme.seq_encode([4]))) is Verdict.FALSE


def test_valseq_composites_and_constants():
    t = parse_term("((v0 + 1) * v0)")
    entries = canonical_term_seq(COMPACT, t)
    s = COMPACT.seq_encode(entries)
    y = COMPACT.val_encode({0: 3})
    values = [term_value(COMPACT, e, y) for e in entries]
    good = COMPACT.seq_encode(values)
    assert values == [3, 1, 4, 12]
    assert seqdef(COMPACT, "valseq", (y, s, good)) is Verdict.TRUE
    for pos in range(len(values)):
        bad = values.copy()
        bad[pos] += 1
        assert seqdef(COMPACT, "valseq",
                      (y, s, COMPACT.seq_encode(bad))) is Verdict.FALSE
    assert seqdef(COMPACT, "valseq",
                  (y, s, COMPACT.seq_encode(values[:-1]))) is Verdict.FALSE
    assert seqdef(COMPACT, "valseq", (0, s, good)) is Verdict.FALSE


def test_valseq_reads_valuation_at_variable_index():
    # entry v1 sits at sequence position 0; its value is y's entry 1
    for scheme in (PAPER, COMPACT):
        y = scheme.seq_encode([9, 4])
        s = scheme.seq_encode([scheme.encode_term(Var(1))])
        assert seqdef(scheme, "valseq",
                      (y, s, scheme.seq_encode([4]))) is Verdict.TRUE
        assert seqdef(scheme, "valseq",
                      (y, s, scheme.seq_encode([9]))) is Verdict.FALSE


def test_seqdef_wrapped_predicates():
    x = COMPACT.encode_term(parse_term("((1 + 1) * v2)"))
    assert seqdef(COMPACT, "trm", (x,)) is Verdict.TRUE
    assert seqdef(COMPACT, "trm",
                  (COMPACT.encode(parse("(0 = 0)")),)) is Verdict.FALSE
    phi = COMPACT.encode(parse("(A v0 <= 1)(0 = 0)"))
    assert seqdef(COMPACT, "fml_delta0", (phi,)) is Verdict.TRUE
    assert seqdef(COMPACT, "fml_delta0", (x,)) is Verdict.FALSE
    assert seqdef(PAPER, "var", (6,)) is Verdict.TRUE
    assert seqdef(PAPER, "atm",
                  (PAPER.encode(parse("(0 <= v0)")),)) is Verdict.TRUE


def test_seqdef_val_examples():
    x = COMPACT.encode_term(parse_term("(v0 * v1)"))
    y = COMPACT.seq_encode([2, 5])
    assert seqdef(COMPACT, "val", (x, y, 10)) is Verdict.TRUE
    assert seqdef(COMPACT, "val", (x, y, 11)) is Verdict.FALSE
    assert seqdef(COMPACT, "val",
                  (COMPACT.encode(parse("(0 = 0)")), y, 0)) is Verdict.FALSE
    assert seqdef(COMPACT, "val", (x, 0, 10)) is Verdict.FALSE


def test_seqdef_val_paper_witness_sizes():
    # materializable witness, certified against the stated bounds
    x = PAPER.encode_term(parse_term("(v0 * v0)"))
    y = PAPER.seq_encode([3])
    assert seqdef(PAPER, "val", (x, y, 9)) is Verdict.TRUE
    # a subterm code past 63 bits makes the witness sequence unwritable
    wide = PAPER.encode_term(parse_term("(v0 + v31)"))
    assert seqdef(PAPER, "val", (wide, y, 3)) is Verdict.UNKNOWN


def test_seqdef_input_checks():
    with pytest.raises(ValueError):
        seqdef(PAPER, "nope", (2,))
    with pytest.raises(ValueError):
        seqdef(PAPER, "trmseq", (-1,))


def test_val_examples():
    assert term_value(PAPER, PAPER.encode_term(parse_term("(v0 + v0)")),
                      PAPER.seq_encode([3])) == 6
    assert term_value(PAPER, PAPER.encode_term(parse_term("1")), 1) == 1
    assert term_value(COMPACT, COMPACT.encode_term(parse_term("(v0 * v1)")),
                      COMPACT.seq_encode([2, 5])) == 10


def test_val_errors():
    with pytest.raises(CodingError, match="not a term"):
        term_value(COMPACT, COMPACT.encode(parse("(0 = 0)")), 1)
    with pytest.raises(CodingError, match="does not cover"):
        term_value(PAPER, PAPER.encode_term(parse_term("(v0 * v1)")),
                   PAPER.seq_encode([2]))
    assert term_value(PAPER, PAPER.encode_term(parse_term("(v0 * v1)")),
                      PAPER.seq_encode([2]), strict=False) == 0


def test_paper_bound_examples():
    assert paper_bound("buildseq", 2) == 5 ** 9 == 1953125
    assert paper_bound("buildseq", 0) == 2
    assert paper_bound("termval", 1, 1) == 9
    huge = paper_bound("buildseq", 10 ** 9)
    assert isinstance(huge, LazyPow)
    assert huge.ge_int(2 ** 256) is True
    with pytest.raises(ValueError):
        paper_bound("valseq", 1)


def test_syn_agrees_with_wrapped_seqdef_small_codes():
    for scheme in (PAPER, COMPACT):
        for x in range(200):
            for pred in ("trm", "fml_delta0"):
                v = seqdef(scheme, pred, (x,), budget=5000)
                assert v is not Verdict.UNKNOWN
                assert (v is Verdict.TRUE) == syn(scheme, pred, x), (pred, x)


# -- properties --------------------------------------------------------------------

_tiny_terms = st.sampled_from([ZERO, ONE, Var(0), Var(1)])
_paper_atoms = st.builds(
    lambda op, l, r: op(l, r), st.sampled_from([Eq, Le]), _tiny_terms, _tiny_terms)


def _deep_terms(depth):
    return st.recursive(_tiny_terms, lambda kids: st.builds(Add, kids, kids)
                        | st.builds(Mul, kids, kids), max_leaves=depth + 1)


def _formulas():
    atoms = (st.builds(Eq, _deep_terms(2), _deep_terms(2))
             | st.builds(Le, _deep_terms(2), _deep_terms(2)))
    return st.recursive(
        atoms,
        lambda kids: st.builds(Not, kids)
        | st.builds(Implies, kids, kids)
        | st.builds(lambda b: BForall(0, ONE, b), kids)
        | st.builds(lambda b: UForall(1, b), kids),
        max_leaves=4)


@given(_formulas())
@settings(max_examples=80)
def test_compact_round_trip_property(phi):
    code = COMPACT.encode(phi)
    assert COMPACT.decode(code) == desugar(phi)
    assert COMPACT.is_formula_code(code)


@given(_paper_atoms)
@settings(max_examples=40)
def test_paper_round_trip_atoms(phi):
    code = PAPER.encode(phi)
    assert PAPER.decode(code) == phi


@given(_formulas())
@settings(max_examples=40)
def test_compact_canonical_seq_checks_and_fits(phi):
    x = COMPACT.encode(phi)
    s = canonical_build_code(COMPACT, "formula", x)
    assert check_build_seq(COMPACT, "formula", s, x)
    assert magnitude_ge(COMPACT.buildseq_bound(x), s) is True
    assert syn_search(COMPACT, "formula", x) is Verdict.TRUE


@given(_deep_terms(3))
@settings(max_examples=40)
def test_compact_term_seq_checks(t):
    x = COMPACT.encode_term(t)
    s = COMPACT.seq_encode(canonical_term_seq(COMPACT, t))
    assert check_build_seq(COMPACT, "term", s, x)
    assert COMPACT.decode_term(x) == t
