"""Walkthrough: Moore and Mealy machines under the same W-method.

The coffee machine again, but now with observable outputs: a Moore
machine reports the coins stored in each state, a Mealy machine reports
what each button press did. Richer outputs can shrink the
characterization set; Mealy language values are the output row of the
state a word reaches (the last transition of each one-symbol
extension), and prefix-closing a suite recovers full output words.
"""

from pathlib import Path

from wmethod import (
    Suite,
    agree_on,
    is_char_set,
    lambda_star,
    lang_value,
    parse_machine,
    prefix_close,
    state_cover,
    w_suite,
)
from wmethod.faultsim import redirect_transition

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return parse_machine((FIXTURES / name).read_text(), name)


moore = load("coffee_moore.aut")
ab = moore.alphabet
print("Moore outputs per state:", moore.output)
print("value of '1 1':", lang_value(moore, ab.word("1", "1")))

# With four distinct state outputs, a single coin press already tells
# states apart; two words suffice where the DFA needed three.
w_small = Suite.from_names(ab, [[], ["1"]])
assert is_char_set(moore, w_small)
suite = w_suite(state_cover(moore), ab, 0, w_small)
print(f"Moore W0 with W'={{eps,1}} has {len(suite)} words")

for q, sym, tgt in ((2, "c", 2), (2, "e", 1)):
    mut = redirect_transition(moore, q, ab.index(sym), tgt)
    kills = [v.word.render(ab) for v in agree_on(moore, mut, suite) if not v.passed]
    print(f"redirect {q}-{sym}->{tgt}: killed by {kills}")

mealy = load("coffee_mealy.aut")
print("\nMealy value of 'eps':", lang_value(mealy, ab.word()))
print("Mealy value of '1':", lang_value(mealy, ab.word("1")))

# Agreement on a prefix-closed suite pins down the whole output word
# of every suite member, not only the final outputs.
suite = prefix_close(w_suite(state_cover(mealy), ab, 0, Suite.from_names(ab, [[]])))
assert all(v.passed for v in agree_on(mealy, mealy, suite))
word = ab.word("1", "1", "c", "1")
print("output word along '1 1 c 1':", lambda_star(mealy, word))
