import random

import pytest

from redproof.constructions import dp_resolution_oracle
from redproof.core import Clause, Formula
from redproof.errors import ParseError
from redproof.generators import gen_bphp
from redproof.proofs import (
    AddBC,
    AddRAT,
    AddSBC,
    GerCertificate,
    Proof,
    Resolve,
    System,
    Weaken,
    check,
    check_ger,
    dumps_ger,
    dumps_proof,
    parse_ger,
    parse_proof,
    proof_size,
)

from instances import random_sbc_proof, tiny_unsat

BOT = Clause()


def test_trivial_refutation():
    r = check(System.RES, Formula([[1], [-1]]), Proof([Resolve(1, 2, 1, BOT)]))
    assert r.accepted and r.size == 2
    assert r.summary() == "accepted size 2"


def test_bc_prefix_accepted():
    g = Formula([[-9, -1], [9], [1]])
    pf = Proof([AddBC(9, Clause([9, 1]))])
    assert check(System.BC, g, pf, require_refutation=False)
    assert not check(System.BC, g, pf)


def test_new_variable_rejected():
    g = Formula([[1], [-1]])
    pf = Proof([Weaken(1, Clause([1, 2])), Resolve(1, 2, 1, BOT)])
    r = check(System.RES, g, pf)
    assert not r and r.step == 1 and "new variable" in r.reason
    assert check(System.RES, g, pf, new_variables=True)


def test_missing_bottom_is_whole_proof_failure():
    r = check(System.RES, Formula([[1, 2], [-1]]), Proof([Resolve(1, 2, 1, Clause([2]))]))
    assert not r and r.step == 0


def test_wrong_resolvent_rejected():
    r = check(System.RES, Formula([[1, 2], [-1]]), Proof([Resolve(1, 2, 1, BOT)]))
    assert not r and r.step == 1 and "wrong resolvent" in r.reason


def test_forward_reference_rejected():
    r = check(System.RES, Formula([[1], [-1]]), Proof([Resolve(1, 3, 1, BOT)]))
    assert not r and "bad premise id" in r.reason


def test_kind_not_permitted():
    g = Formula([[1], [-1]])
    r = check(System.RES, g, Proof([AddBC(1, Clause([1])), Resolve(1, 2, 1, BOT)]))
    assert not r and "not permitted" in r.reason
    r = check(System.BC, g, Proof([AddRAT(1, Clause([1])), Resolve(1, 2, 1, BOT)]))
    assert not r


def test_blocked_additions_admitted_by_rat_and_sbc():
    # BC steps are RATs and singleton SBCs
    g = Formula([[-9, -1], [9], [1]])
    pf = Proof([AddBC(9, Clause([9, 1]))])
    for s in (System.BC, System.RAT, System.SBC):
        assert check(s, g, pf, require_refutation=False)


def test_rat_failure_identifies_clause():
    g = Formula([[-9], [1]])
    r = check(System.RAT, g, Proof([AddRAT(9, Clause([9]))]))
    assert not r and r.failing_clause == Clause([-9])


def test_sbc_witness_must_be_subset():
    g = Formula([[1], [-1]])
    r = check(System.SBC, g, Proof([AddSBC(frozenset({2}), Clause([1]))]), new_variables=True)
    assert not r


def test_checker_is_total_on_garbage():
    g = Formula([[1], [-1]])
    for junk in ([object()], [Resolve("a", 2, 1, BOT)], [Resolve(1, 2, 0, BOT)]):
        r = check(System.RES, g, junk)
        assert not r and r.step == 1


def test_permissive_mode_finds_premises():
    g = Formula([[1, 2], [-1, 2], [-2]])
    pf = Proof([Resolve(0, 0, 0, Clause([2])), Resolve(0, 0, 0, BOT)])
    assert not check(System.RES, g, pf)
    assert check(System.RES, g, pf, permissive=True)


def test_dp_proofs_are_accepted_everywhere():
    for g in tiny_unsat().values():
        pf = dp_resolution_oracle(g).proof
        for s in System:
            assert check(s, g, pf)


def test_sbc_interleaved_proofs_accepted():
    rng = random.Random(9)
    for _ in range(10):
        g, pf = random_sbc_proof(rng, 5)
        assert check(System.SBC, g, pf)


def test_stats_count_kinds():
    g = Formula([[1], [-1]])
    r = check(System.RES, g, Proof([Weaken(1, Clause([1])), Resolve(3, 2, 1, BOT)]))
    assert r.stats == {"w": 1, "r": 1}


def test_ger_degenerates_to_res():
    g = Formula([[1, 2], [-1, 2], [-2]])
    pf = dp_resolution_oracle(g).proof
    cert = GerCertificate(range(1, g.num_entries + 1), [], pf)
    r = check_ger(g, cert)
    assert r and r.size == pf.size == proof_size(cert, g)


def test_ger_coverage_enforced():
    g = Formula([[1, 2], [-1, 2], [-2]])
    cert = GerCertificate([1, 3], [], Proof())
    r = check_ger(g, cert)
    assert not r and r.phase == "ext" and "coverage" in r.reason
    twice = GerCertificate([1, 3], [(-1, Clause([-1, 2])), (-1, Clause([-1, 2]))], Proof())
    assert "2 times" in check_ger(g, twice).reason


def test_ger_removed_clause_counts_against_kept_only():
    # -1 2 against the kept 1 2 resolves to 2, which is not tautological
    g = Formula([[1, 2], [-1, 2], [-2]])
    cert = GerCertificate([1, 3], [(-1, Clause([-1, 2]))], dp_resolution_oracle(g).proof)
    r = check_ger(g, cert)
    assert not r and r.phase == "ext" and r.step == 1


def test_ger_bad_kept_id():
    g = Formula([[1], [-1]])
    r = check_ger(g, GerCertificate([1, 7], [], Proof()))
    assert not r and r.phase == "keep"


def test_ger_resolution_phase_reported():
    g = Formula([[1], [-1]])
    r = check_ger(g, GerCertificate([1, 2], [], Proof([Resolve(1, 1, 1, BOT)])))
    assert not r and r.phase == "res"


def test_ger_blocked_extension_new_variable():
    g = Formula([[1], [-1]])
    cert = GerCertificate([1, 2], [(5, Clause([5]))], Proof([Resolve(1, 2, 1, BOT)]))
    assert not check_ger(g, cert)
    r = check_ger(g, cert, new_variables=True)
    assert r and r.size == 1 + 2 and r.stats["x"] == 1


# formats


def test_wer_round_trip():
    pf = Proof(
        [
            Resolve(1, 2, 3, Clause([1, -2])),
            Weaken(4, Clause([1, -2, 5])),
            AddBC(-3, Clause([-3, 1])),
            AddRAT(2, Clause([2])),
            AddSBC(frozenset({1, -2}), Clause([1, -2, 3])),
            Resolve(5, 6, 1, BOT),
        ]
    )
    text = dumps_proof(pf, ["note"])
    assert text.startswith("c note\n")
    back = parse_proof(text)
    assert back == pf
    assert dumps_proof(back, ["note"]) == text


def test_wer_witness_may_repeat():
    assert parse_proof("b 3 3 1 0\n").steps[0] == AddBC(3, Clause([3, 1]))
    assert parse_proof("s 1 2 2 4 0\n").steps[0] == AddSBC(frozenset({2}), Clause([2, 4]))


@pytest.mark.parametrize(
    "text",
    ["r 1 2 0\n", "r 1 2 1 3\n", "q 1 0\n", "w 1 3 -3 0\n", "s 0 1 0\n", "s 3 1 0\n", "b 0\n", "r 1 x 1 0\n"],
)
def test_wer_rejects(text):
    with pytest.raises(ParseError):
        parse_proof(text)


def test_ger_round_trip():
    cert = GerCertificate([1, 3, 4], [(2, Clause([2, -1])), (-5, Clause([-5, 1, 2]))], Proof([Resolve(1, 5, 2, BOT)]))
    text = dumps_ger(cert, ["hi"])
    back = parse_ger(text)
    assert back == cert
    assert dumps_ger(back, ["hi"]) == text


def test_ger_keep_may_span_lines():
    cert = parse_ger("keep\n1 2\n3 0\next\nres\n")
    assert list(cert.kept) == [1, 2, 3]


@pytest.mark.parametrize(
    "text",
    [
        "ext\nkeep\n0\nres\n",
        "keep\n1 2\next\nres\n",
        "keep\n0\next\ny 1 0\nres\n",
        "keep\n0\next\nres\nb 1 0\n",
        "keep\n0\next\n",
        "keep\n0 1\next\nres\n",
        "1 0\nkeep\n0\next\nres\n",
    ],
)
def test_ger_rejects(text):
    with pytest.raises(ParseError):
        parse_ger(text)


def test_bphp_dp_proof_round_trip():
    g, _ = gen_bphp(2)
    pf = dp_resolution_oracle(g).proof
    assert check(System.RES, g, parse_proof(dumps_proof(pf)))


def test_wer_zero_hints_parse_for_permissive_mode():
    pf = parse_proof("r 0 0 0 2 0\nw 0 1 2 0\nr 0 0 0 0\n")
    assert pf.steps[0] == Resolve(0, 0, 0, Clause([2]))
    assert pf.steps[1] == Weaken(0, Clause([1, 2]))
    assert pf.steps[2].result == BOT
