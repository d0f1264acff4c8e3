"""Tour of reset words: the three classic extremal automata.

Run with:  python demos/reset_words.py
"""

from syncword import (builtin_automaton, image, is_irreducible,
                      is_strongly_connected, matrix_of_word, render,
                      serialize_dfa, shortest_reset_word, word_to_str)

# Three families sit exactly at the (n-1)^2 frontier: the cyclic-shift
# construction for every n, a 6-state binary example, and a 5-state
# ternary one.  Each is built in; dump a table to see the format.
for name in ("cerny:4", "cerny:6", "kari", "roman"):
    dfa = builtin_automaton(name)
    print(f"--- {name}: n={dfa.n}, k={dfa.k}, "
          f"strongly connected: {is_strongly_connected(dfa)}")
    result = shortest_reset_word(dfa)
    print(f"shortest reset word ({result.length} letters, "
          f"= (n-1)^2 is {result.length == (dfa.n - 1) ** 2}):")
    print(f"  {word_to_str(result.word, group=5)}  -> state {result.target}")
    # a reset word's matrix collapses to a single column of units
    print("its matrix has one nonzero column:")
    print(render(matrix_of_word(dfa, result.word)))
    # minimal words carry no removable infix
    print("irreducible:", is_irreducible(dfa, result.word, result.target))
    print()

# The word acts on state sets; watch the full set shrink step by step.
dfa = builtin_automaton("cerny:4")
result = shortest_reset_word(dfa)
current = dfa.full_set
print("subset trajectory of the full set under the word:")
for i, letter in enumerate(result.word):
    current = image(dfa, current, (letter,))
    print(f"  after {word_to_str(result.word[:i + 1]):<10} "
          f"{bin(current)[2:].zfill(dfa.n)}")

print()
print("the table behind cerny:4:")
print(serialize_dfa(dfa))
