"""Walkthrough: testing a DFA with the W-method.

A coffee machine sells coffee for one coin and espresso for two. It
breaks if asked for a drink it cannot afford, or if a third coin goes
in. We model the unbroken interaction sequences as a DFA, derive a
complete test suite for it, and watch the suite catch two subtly faulty
builds that agree with the specification on almost every short input.
"""

from pathlib import Path

from wmethod import (
    Suite,
    agree_on,
    char_set,
    equiv,
    is_char_set,
    parse_machine,
    state_cover,
    w_suite,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return parse_machine((FIXTURES / name).read_text(), name)


spec = load("coffee.aut")
ab = spec.alphabet
print(f"specification: {spec.n_states} states over {ab.symbols}")

# Shortest access sequences, one per state. The empty word is always in.
p = state_cover(spec)
print("state cover P:", [w.render(ab) for w in p])

# {eps, c, 1} separates every pair of states; the library can also
# compute a characterization set on its own.
w = Suite.from_names(ab, [[], ["c"], ["1"]])
assert is_char_set(spec, w)
print("characterization set W:", [x.render(ab) for x in w])
print("computed alternative:", [x.render(ab) for x in char_set(spec)])

# The W suite of order 0 is complete for every implementation with at
# most as many states as the specification.
suite = w_suite(p, ab, 0, w)
print(f"W0(P,W) has {len(suite)} words")

for name in ("coffee_i1.aut", "coffee_i2.aut"):
    impl = load(name)
    failures = [v for v in agree_on(spec, impl, suite) if not v.passed]
    print(f"{name}: {len(failures)} failing test(s):",
          [v.word.render(ab) for v in failures])
    res = equiv(spec, impl)
    print(f"  oracle counterexample: {res.counterexample.render(ab)}")

# Completeness is relative to a fault domain. An implementation with
# more states can pass every test and still be wrong: this 24-state
# build misbehaves only after five steps, beyond every suite word.
big = load("coffee_boundary.aut")
assert all(v.passed for v in agree_on(spec, big, suite))
assert not equiv(spec, big).equivalent
print(f"boundary build: {big.n_states} states, passes all {len(suite)} tests, "
      f"yet differs, e.g. on {equiv(spec, big).counterexample.render(ab)}")
