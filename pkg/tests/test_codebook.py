import random
from itertools import permutations

import pytest

from conftest import dfs_words
from sigtime.ballot import s_count
from sigtime.codebook import (
    BUILD_MAX_N,
    FlowViolationError,
    PathCountTable,
    build_codebook,
    check_unique_decodability,
    rank,
    simulate_flow,
    unrank,
    validate,
)


def test_validate_basic_cases():
    assert validate("")
    assert validate("10")
    assert validate("1100")
    assert validate("1010")
    assert not validate("01")  # surplus dips below zero
    assert not validate("1001")
    assert not validate("110")  # odd length
    assert not validate("1110")  # unbalanced
    with pytest.raises(ValueError):
        validate("10x0")


def test_build_small_books_exactly():
    assert build_codebook(0).words == ("",)
    assert build_codebook(1).words == ("10",)
    assert build_codebook(2).words == ("1100", "1010")
    assert build_codebook(3).words == (
        "111000",
        "110100",
        "110010",
        "101100",
        "101010",
    )


def test_build_matches_enumeration():
    for n in range(0, 9):
        book = build_codebook(n)
        assert len(book) == s_count(n)
        assert len(set(book.words)) == len(book.words)
        assert set(book.words) == set(dfs_words(n))
        # canonical order: '1' sorts before '0'
        assert list(book.words) == sorted(book.words, reverse=True)


def test_build_respects_bound():
    with pytest.raises(ValueError):
        build_codebook(BUILD_MAX_N + 1)
    with pytest.raises(ValueError):
        build_codebook(-1)


def test_book_index_lookup():
    book = build_codebook(5)
    for i, w in enumerate(book.words):
        assert book.index(w) == i
    with pytest.raises(ValueError):
        book.index("1100")  # word of another length is never in the book


def test_check_unique_decodability_small():
    for n in range(0, 9):
        assert check_unique_decodability(build_codebook(n))


def test_path_count_table_totals():
    for n in (0, 1, 2, 5, 9, 30):
        table = PathCountTable.build(n)
        assert table.completions(0, 0) == s_count(n)
        assert table.completions(2 * n, 0) == 1


def test_rank_matches_book_order():
    for n in range(0, 9):
        book = build_codebook(n)
        table = PathCountTable.build(n)
        for i, w in enumerate(book.words):
            assert rank(w, table) == i
            assert unrank(i, table) == w


def test_random_round_trips_long_words():
    rng = random.Random(7)
    for n in (50, 100):
        table = PathCountTable.build(n)
        total = table.completions(0, 0)
        for _ in range(1000):
            i = rng.randrange(total)
            w = unrank(i, table)
            assert len(w) == 2 * n
            assert validate(w)
            assert rank(w, table) == i


def test_rank_rejects_invalid_words():
    table = PathCountTable.build(2)
    with pytest.raises(ValueError):
        rank("1001", table)
    with pytest.raises(ValueError):
        rank("10", table)  # wrong length for the table


def test_unrank_rejects_out_of_range():
    table = PathCountTable.build(3)
    with pytest.raises(ValueError):
        unrank(5, table)
    with pytest.raises(ValueError):
        unrank(-1, table)


def test_simulate_flow_two_slot_example():
    trace = simulate_flow("10", 2.0, 1.0, 3.0)
    assert trace.dt_in == pytest.approx(1.0)
    assert trace.dt_out == pytest.approx(2.0)
    assert trace.delivered_bits == pytest.approx(2.0)
    assert [s.link for s in trace.slots] == ["in", "out"]
    assert trace.slots[-1].buffer_after == pytest.approx(0.0)


def test_simulate_flow_delivers_harmonic_share():
    # delivered bits equal c1*c2*T/(c1+c2) for every valid schedule
    rng = random.Random(3)
    for n in range(1, 6):
        for w in dfs_words(n):
            c1 = rng.uniform(0.2, 5.0)
            c2 = rng.uniform(0.2, 5.0)
            total_time = rng.uniform(0.5, 4.0)
            trace = simulate_flow(w, c1, c2, total_time)
            assert trace.delivered_bits == pytest.approx(
                c1 * c2 * total_time / (c1 + c2)
            )
            assert min(s.buffer_after for s in trace.slots) >= -1e-9


def test_simulate_flow_rejects_bad_schedules():
    # every balanced-but-invalid arrangement must trip the buffer rule
    for n in (2, 3, 4):
        for p in set(permutations("1" * n + "0" * n)):
            w = "".join(p)
            if validate(w):
                continue
            with pytest.raises(FlowViolationError):
                simulate_flow(w, 3.0, 2.0, 1.0)
    with pytest.raises(FlowViolationError):
        simulate_flow("1110", 1.0, 1.0, 1.0)  # unbalanced


def test_simulate_flow_rejects_bad_parameters():
    with pytest.raises(ValueError):
        simulate_flow("10", 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        simulate_flow("10", 1.0, 1.0, -2.0)
