import random

import pytest

from flatstring import GaussCode, Passage


def random_code(rng: random.Random, max_components: int = 4,
                max_crossings: int = 8, allow_empty: bool = True) -> GaussCode:
    """Uniform-ish valid code: place both passages of each crossing at
    random gaps of random components, with a random orientation role."""
    n = rng.randint(1, max_components)
    words: list[list[Passage]] = [[] for _ in range(n)]
    low = 0 if allow_empty else 1
    k = rng.randint(low, max_crossings)
    for i in range(k):
        lab = f"c{i}"
        first_is_source = rng.random() < 0.5
        for role in (first_is_source, not first_is_source):
            ci = rng.randrange(n)
            gap = rng.randint(0, len(words[ci]))
            words[ci].insert(gap, Passage(lab, role))
    return GaussCode(tuple(tuple(w) for w in words))


def random_symmetry(rng: random.Random, code: GaussCode) -> GaussCode:
    """A random composite of rotations, relabeling and component
    reordering; canonical forms must not see the difference."""
    from flatstring import permute, relabel, rotate

    out = code
    for ci in range(out.n_components):
        if out.components[ci]:
            out = rotate(out, ci, rng.randrange(len(out.components[ci])))
    labels = sorted({p.label for c in out.components for p in c})
    shuffled = labels[:]
    rng.shuffle(shuffled)
    out = relabel(out, {a: f"tmp_{b}" for a, b in zip(labels, shuffled)})
    out = relabel(out, {f"tmp_{b}": b for b in shuffled})
    order = list(range(out.n_components))
    rng.shuffle(order)
    return permute(out, order)


@pytest.fixture
def rng():
    return random.Random(20260810)
