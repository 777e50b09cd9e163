import random

import pytest

from redproof import dimacs
from redproof.core import Formula
from redproof.errors import ParseError
from redproof.generators import gen_bphp

from instances import random_formula, tiny_unsat


def test_parse_basic():
    cnf = dimacs.parse("c hello\np cnf 3 2\n1 -2 0\n3 0\n")
    assert cnf.formula == Formula([[1, -2], [3]])
    assert cnf.comments == ["hello"]
    assert cnf.formula.num_vars == 3


def test_clause_may_span_lines():
    cnf = dimacs.parse("p cnf 2 1\n1\n-2 0\n")
    assert cnf.formula == Formula([[1, -2]])


def test_percent_end_marker():
    cnf = dimacs.parse("p cnf 1 1\n1 0\n%\n0\n")
    assert cnf.formula == Formula([[1]])


@pytest.mark.parametrize(
    "text",
    [
        "1 0\n",  # missing header
        "p cnf 1 1\np cnf 1 1\n1 0\n",
        "p cnf 1 1\n2 0\n",
        "p cnf 2 1\n1 2\n",
        "p cnf 2 2\n1 0\n",
        "p cnf 2 1\n1 x 0\n",
        "p dnf 2 1\n1 0\n",
        "p cnf 2 1\n1 -1 0\n",
    ],
)
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        dimacs.parse(text)


def test_round_trip_is_bit_stable():
    rng = random.Random(7)
    formulas = list(tiny_unsat().values()) + [random_formula(rng, 6, 9) for _ in range(20)]
    for g in formulas:
        text = dimacs.dumps(g, ["x"])
        back = dimacs.parse(text)
        assert back.formula == g
        assert list(back.formula.entries) == list(g.entries)
        assert dimacs.dumps(back.formula, ["x"]) == text


def test_duplicates_survive_round_trip():
    g = Formula([[1], [1, 2], [1]])
    back = dimacs.parse(dimacs.dumps(g)).formula
    assert back.num_entries == 3


def test_file_io(tmp_path):
    g, layout = gen_bphp(2)
    path = tmp_path / "b.cnf"
    dimacs.write(path, g, layout.comments())
    cnf = dimacs.read(path)
    assert cnf.formula == g
    assert cnf.comments[: len(layout.comments())] == list(layout.comments())
