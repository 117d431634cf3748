import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbadhm import serialize as ser
from hilbadhm.adhm import datum_to_ideal
from hilbadhm.corpus import random_stable_datum
from hilbadhm.cycle import hilbert_chow_approx, hilbert_chow_exact
from hilbadhm.errors import ParseError
from hilbadhm.monad import build_monad

seeds = st.integers(0, 10**6)


@given(seeds, st.integers(1, 3), st.integers(1, 4))
def test_datum_roundtrip_byte_identical(seed, n, c):
    x = random_stable_datum(n, c, random.Random(seed))
    text = ser.dump_datum(x)
    y = ser.load_datum(text)
    assert y == x and ser.dump_datum(y) == text


@given(seeds, st.integers(2, 3), st.integers(1, 3))
def test_monad_roundtrip(seed, n, c):
    m = build_monad(random_stable_datum(n, c, random.Random(seed)))
    text = ser.dump_monad(m)
    assert ser.dump_monad(ser.load_monad(text)) == text
    assert ser.load_monad(text).alphas == m.alphas


@given(seeds, st.integers(1, 3), st.integers(1, 4))
def test_ideal_doc_roundtrip(seed, n, c):
    j = datum_to_ideal(random_stable_datum(n, c, random.Random(seed)))
    back = ser.ideal_from_doc(ser.loads(ser.dumps(ser.ideal_to_doc(j))))
    assert back.reduced_gb == j.reduced_gb and back.std_monomials == j.std_monomials


@given(seeds, st.integers(1, 3), st.integers(1, 4))
def test_exact_cycle_text_roundtrip(seed, n, c):
    x = random_stable_datum(n, c, random.Random(seed))
    cyc = hilbert_chow_exact(x)
    assert ser.cycle_from_text(ser.cycle_to_text(cyc, n)) == cyc


def test_cycle_text_format(jordan):
    text = ser.cycle_to_text(hilbert_chow_exact(jordan), 2)
    assert text == "# c=2 n=2 partition=(2) field=exact\n(0, 0) x2\n"
    approx = ser.cycle_from_text(ser.cycle_to_text(hilbert_chow_approx(jordan, 1e-8), 2))
    assert approx.tolerance == 1e-8 and approx.partition == (2,)


def test_rationals_are_strings(jordan):
    doc = ser.datum_to_doc(jordan)
    assert doc["B"][0] == [["0", "0"], ["1", "0"]] and doc["I"] == ["1", "0"]


@pytest.mark.parametrize(
    "text",
    [
        '{"n": 2',
        '{"n": 1, "c": 1, "B": [[["1"]]]}',
        '{"n": 1, "c": 1, "B": [[["x"]]], "I": ["1"]}',
        '{"n": 1, "c": 1, "B": [[[0.5]]], "I": ["1"]}',
        '{"n": 1, "c": 2, "B": [[["1"]]], "I": ["1", "0"]}',
        '{"n": 2, "c": 1, "B": [[["1"]]], "I": ["1"]}',
        "[1, 2]",
    ],
)
def test_malformed_datum_documents(text):
    with pytest.raises(ParseError) as e:
        ser.load_datum(text)
    assert e.value.exit_code == 1


def test_ideal_file_variable_count():
    assert ser.load_ideal_text("x0\n")[0].nvars == 2
    assert ser.load_ideal_text("x0 - x3 # four variables\n")[0].nvars == 4
    assert ser.load_ideal_text("x0\n", nvars=1)[0].nvars == 1
