"""BLEU-1, METEOR (exact matching) and chrF3 on single lexicon entries."""

from polywn.metrics import bleu1, chrf, meteor_lite

print(bleu1(["gato"], [["gato"], ["felino"]]))   # 100, any reference may match
print(bleu1(["el", "gato"], [["gato"]]))          # 50, half the candidate is unmatched
print(bleu1(["gato"], [["el", "gato"]]))          # brevity penalty exp(1 - 2/1)
print(bleu1(["gato"], [["el", "gato"]], brevity_penalty=False))

print(meteor_lite(["gato"], ["gato"]))              # 50: penalty 0.5 * (1/1)^3
print(meteor_lite(["el", "gato"], ["el", "gato"]))  # 93.75: one chunk over two matches
print(meteor_lite(["gato", "el"], ["el", "gato"]))  # only one token can align in order

for hyp, ref in (("gato", "gato"), ("gata", "gato"), ("cat", "cats"), ("ribera", "orilla"), ("el gato", "elgato")):
    print(f"chrF({hyp!r}, {ref!r}) = {chrf(hyp, ref):.2f}")  # whitespace never counts
