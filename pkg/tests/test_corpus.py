from __future__ import annotations

from taccat.algebra import GF
from taccat.complexes import check_totally_acyclic
from taccat.corpus import generate, generate_pairs


def _fingerprint(items):
    return [(str(it.ring.f), it.complex.ranks, [str(it.complex.d(n).entries()) for n in range(it.complex.period)]) for it in items]


def test_generation_is_deterministic():
    assert _fingerprint(generate(11, 12)) == _fingerprint(generate(11, 12))
    assert _fingerprint(generate(11, 12)) != _fingerprint(generate(12, 12))


def test_items_are_valid_and_bounded():
    items = generate(3, 40)
    kinds = set()
    for it in items:
        C = it.complex
        R = it.ring
        assert 1 <= R.c <= 3 and R.artinian
        assert max(C.ranks) <= 4
        for n in range(C.period):
            assert R.is_zero_matrix(C.d(n - 1) @ C.d(n))
        assert check_totally_acyclic(C).totally_acyclic
        kinds.add(it.kind.split("+")[0])
    assert kinds == {"mf", "koszul", "sum"}
    assert any("+conj" in it.kind for it in items)


def test_pairs_share_a_ring():
    for C, D in generate_pairs(5, 8):
        assert C.ring is D.ring


def test_other_field():
    for it in generate(1, 5, field=GF(7)):
        assert it.ring.field.p == 7
