import random

from omegasem import (BuchiAutomaton, PairSet, Recognizer, UPWord,
                      buchi_accepts_lasso, buchi_to_strong,
                      is_conjugation_closed, is_strong, member, minimize,
                      morphism_to_buchi, weak_to_strong)

from conftest import random_recognizer, random_upword, section5_morphism


def random_buchi(rng, *, max_states=4, alphabet=("a", "b")):
    n = rng.randint(1, max_states)
    triples = []
    for p in range(n):
        for a in alphabet:
            for q in range(n):
                if rng.random() < 0.35:
                    triples.append((p, a, q))
    initial = [q for q in range(n) if rng.random() < 0.5] or [0]
    final = [q for q in range(n) if rng.random() < 0.5]
    return BuchiAutomaton.from_triples(n, alphabet, triples, initial, final)


def ab_infinitely_often_b():
    # accepts words over {a, b} with infinitely many b
    return BuchiAutomaton.from_triples(
        2, ("a", "b"),
        [(0, "a", 0), (0, "b", 1), (1, "a", 0), (1, "b", 1)],
        [0], [1])


def test_lasso_oracle_on_known_automaton():
    aut = ab_infinitely_often_b()
    assert buchi_accepts_lasso(aut, UPWord((), ("b",)))
    assert buchi_accepts_lasso(aut, UPWord(("a",), ("a", "b")))
    assert not buchi_accepts_lasso(aut, UPWord(("b", "b"), ("a",)))
    assert not buchi_accepts_lasso(aut, UPWord((), ("a",)))


def test_buchi_to_strong_known_language():
    rec = buchi_to_strong(ab_infinitely_often_b())
    assert rec.mode == "strong"
    assert member(rec, UPWord((), ("a", "b")))
    assert not member(rec, UPWord(("b",), ("a",)))
    assert is_strong(rec.morphism, rec.accepting).included


def test_buchi_to_strong_is_conjugation_closed(rng):
    for _ in range(25):
        aut = random_buchi(rng)
        rec = buchi_to_strong(aut)
        assert is_conjugation_closed(rec.morphism, rec.accepting)
        assert is_strong(rec.morphism, rec.accepting).included


def test_buchi_to_strong_agrees_with_lasso_simulation(rng):
    for _ in range(30):
        aut = random_buchi(rng)
        rec = buchi_to_strong(aut)
        for _ in range(40):
            w = random_upword(rng, aut.alphabet)
            assert member(rec, w) == buchi_accepts_lasso(aut, w), str(w)


def test_literal_accepting_rule_is_larger(rng):
    # without the initial-state restriction the accepting set recognizes a
    # superset language (runs may start anywhere)
    from omegasem import inclusion_test
    for _ in range(20):
        aut = random_buchi(rng)
        restricted = buchi_to_strong(aut)
        literal = buchi_to_strong(aut, restrict_initial=False)
        assert restricted.accepting.issubset(literal.accepting)
        assert inclusion_test(restricted.morphism, restricted.accepting,
                              literal.accepting).included


def test_morphism_to_buchi_roundtrip(rng):
    for _ in range(15):
        rec = random_recognizer(rng, max_size=8)
        aut = morphism_to_buchi(rec)
        for _ in range(40):
            w = random_upword(rng, rec.alphabet)
            assert buchi_accepts_lasso(aut, w) == member(rec, w), str(w)


def test_weak_to_strong_preserves_language(rng):
    for _ in range(10):
        rec = random_recognizer(rng, max_size=6)
        strong = weak_to_strong(rec)
        assert strong.mode == "strong"
        for _ in range(40):
            w = random_upword(rng, rec.alphabet)
            assert member(strong, w) == member(rec, w), str(w)


def test_band_language_via_buchi():
    h = section5_morphism()
    rec = Recognizer(h, PairSet.from_pairs(4, [(0, 0)]), "weak")
    aut = morphism_to_buchi(rec)
    assert buchi_accepts_lasso(aut, UPWord((), ("a", "b")))
    assert not buchi_accepts_lasso(aut, UPWord((), ("a",)))
    small = minimize(buchi_to_strong(aut))
    for _ in range(30):
        w = random_upword(random.Random(7), ("a", "b"))
        assert member(small, w) == member(rec, w)
