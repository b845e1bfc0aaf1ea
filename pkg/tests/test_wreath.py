import pytest

from smgrow.errors import DataError
from smgrow.wreath import (
    WreathSystem,
    bsv,
    exponential_weakly_branch_pair,
    format_formal,
    parse_formal,
    winv,
    wmul,
)


def test_formal_word_algebra():
    w = parse_formal("t m' t")
    assert format_formal(w) == "t m' t"
    assert wmul(parse_formal("t"), parse_formal("t'")) == ()
    assert winv(w) == parse_formal("t' m t'")
    assert parse_formal("1") == ()


def test_bsv_action():
    system = bsv()
    t = parse_formal("t")
    # t = [1, t](1,2): the root swaps, the right subtree recurses
    assert system.act(t, (0,)) == (1,)
    assert system.act(t, (0, 0)) == (1, 0)
    assert system.act(t, (1, 0)) == (0, 1)


def test_bsv_tm_inverse_trivial_to_depth_then_not():
    system = bsv()
    w = wmul(parse_formal("t"), winv(parse_formal("m")))
    ok1, _ = system.is_trivial_bounded(w, 1)
    assert ok1
    ok2, _ = system.is_trivial_bounded(w, 2)
    assert ok2
    ok3, witness = system.is_trivial_bounded(w, 3)
    assert not ok3
    assert witness is not None and len(witness) == 3
    assert system.act(w, witness) != witness


def test_trivial_word_any_depth():
    system = bsv()
    ok, witness = system.is_trivial_bounded((), 8)
    assert ok and witness is None
    tt = wmul(parse_formal("t"), parse_formal("t'"))
    assert system.is_trivial_bounded(tt, 8)[0]


def test_closure_check():
    system = bsv()
    assert system.is_trivial_closure(()) is True
    w = wmul(parse_formal("t"), winv(parse_formal("m")))
    assert system.is_trivial_closure(w, budget=50) in (False, None)
    # t m' is nontrivial; with enough budget the closure finds the witness
    assert system.is_trivial_closure(w, budget=2000) is False


def test_exact_wrapper_raises_beyond_budget():
    from smgrow.errors import ExactnessError

    system = bsv()
    assert system.is_trivial(()) is True
    # (t)^(2^k) sections keep growing; a tiny budget cannot close them
    t = parse_formal("t")
    big = t
    for _ in range(6):
        big = wmul(big, big)
    with pytest.raises(ExactnessError):
        system.is_trivial(big, budget=3)


def test_exponential_pair_sections():
    system = exponential_weakly_branch_pair()
    a = parse_formal("a")
    assert system.root_of(a) == (1, 0)
    assert system.section_of(a, 1) == parse_formal("b")
    b = parse_formal("b")
    assert system.root_of(b) == (0, 1)
    assert system.section_of(b, 1) == parse_formal("a")
    # a^2 = [b, b]: nontrivial at depth 2
    ok, witness = system.is_trivial_bounded(wmul(a, a), 4)
    assert not ok


def test_unknown_state_rejected():
    with pytest.raises(DataError):
        WreathSystem.from_dict(2, {"a": ("(1,2)", ["1", "zz"])})
