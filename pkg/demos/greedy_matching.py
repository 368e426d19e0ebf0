"""The greedy constrained matcher is a heuristic: it can miss the best total score."""

import itertools

from polywn.align import greedy_match

sims = [[0.9, 0.2],
        [0.8, 0.7]]
m = greedy_match(["a1", "a2"], ["b1", "b2"], sims, threshold=0.0)
print(m.links, round(m.score, 3))  # here greedy is optimal, 1.6

sims = [[0.9, 0.8],
        [0.85, 0.1]]
m = greedy_match(["a1", "a2"], ["b1", "b2"], sims, threshold=0.0)
best = max(sum(sims[i][p[i]] for i in range(2)) for p in itertools.permutations(range(2)))
print(m.links, round(m.score, 3), "vs optimal", round(best, 3))  # .9 first forces the .1 pair

# with the default threshold the weak pair is never linked
m = greedy_match(["a1", "a2"], ["b1", "b2"], sims)
print(m.links, round(m.score, 3))
