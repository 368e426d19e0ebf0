"""Regenerate the fixture files shipped in src/polywn/fixtures/.

    python scripts/make_fixtures.py

Output is fully determined by this file.
"""

import json
import os
import random

ROOT = os.path.join(os.path.dirname(__file__), os.pardir, "src", "polywn", "fixtures")

# --- translation fixture ---------------------------------------------------

SYNSETS = [
    # id, en, fr, de, gold es (first = most frequent), definition
    ("02084071-n", "dog", "chien", "Hund", ["perro", "can"], "a domesticated carnivorous mammal"),
    ("02121620-n", "cat", "chat", "Katze", ["gato"], "a small domesticated feline"),
    ("08420278-n", "bank", "banque", "Bank", ["banco"], "a financial institution that accepts deposits"),
    ("09213565-n", "bank", "rive", "Ufer", ["orilla", "ribera"], "sloping land beside a body of water"),
    ("04379243-n", "table", "table", "Tisch", ["mesa"], "a piece of furniture with a flat top"),
    ("03001627-n", "chair", "chaise", "Stuhl", ["silla"], "a seat for one person, with a back"),
    ("07739125-n", "apple", "pomme", "Apfel", ["manzana"], "fruit with red or yellow or green skin"),
    ("09411430-n", "river", "rivière", "Fluss", ["río"], "a large natural stream of water"),
    ("03544360-n", "house", "maison", "Haus", ["casa", "hogar"], "a dwelling that serves as living quarters"),
    ("06410904-n", "book", "livre", "Buch", ["libro"], "a written work or composition"),
]

# five tuples per synset: three witnessed in fr and de, two in only one language or none
SENTENCES = [
    ("the dog sleeps in the garden", "le chien dort dans le jardin", "der Hund schläft im Garten"),
    ("my dog likes long walks", "mon chien aime les longues promenades", "mein Hund mag lange Spaziergänge"),
    ("a dog barked at night", "un chien a aboyé la nuit", "ein Hund bellte in der Nacht"),
    ("the dog is hungry", "le toutou a faim", "der Hund hat Hunger"),
    ("we saw a dog", "nous avons vu un chien", "wir sahen einen Köter"),
    ("the cat sleeps on the sofa", "le chat dort sur le canapé", "die Katze schläft auf dem Sofa"),
    ("her cat is black", "son chat est noir", "ihre Katze ist schwarz"),
    ("a cat caught a mouse", "un chat a attrapé une souris", "eine Katze fing eine Maus"),
    ("the cat is old", "le matou est vieux", "die Katze ist alt"),
    ("the cat drinks milk", "le chat boit du lait", "der Kater trinkt Milch"),
    ("the bank approved the loan", "la banque a approuvé le prêt", "die Bank hat den Kredit genehmigt"),
    ("she works at a bank in the city", "elle travaille dans une banque en ville", "sie arbeitet bei einer Bank in der Stadt"),
    ("the bank raised its interest rates", "la banque a augmenté ses taux", "die Bank hat ihre Zinsen erhöht"),
    ("i went to the bank", "je suis allé à la banque", "ich ging zum Geldinstitut"),
    ("the bank closed early", "l'agence a fermé tôt", "die Bank schloss früh"),
    ("we walked along the bank of the river", "nous avons marché sur la rive de la rivière", "wir gingen am Ufer am Fluss entlang"),
    ("the boat reached the bank of the river", "le bateau a atteint la rive de la rivière", "das Boot erreichte das Ufer am Fluss"),
    ("children played on the bank of the river", "les enfants jouaient sur la rive de la rivière", "die Kinder spielten am Ufer am Fluss"),
    ("the grass on the bank of the river was green", "l'herbe au bord de la rivière était verte", "das Gras am Ufer am Fluss war grün"),
    ("a heron stood on the bank of the river", "un héron se tenait sur la berge de la rivière", "ein Reiher stand am Flussufer"),
    ("put the plates on the table", "mets les assiettes sur la table", "stell die Teller auf den Tisch"),
    ("the table is made of wood", "la table est en bois", "der Tisch ist aus Holz"),
    ("we sat around the table", "nous étions assis autour de la table", "wir saßen um den Tisch"),
    ("a small table", "une petite table", "ein kleiner Beistelltisch"),
    ("clean the table please", "nettoie le plateau s'il te plaît", "mach bitte den Tisch sauber"),
    ("this chair is comfortable", "cette chaise est confortable", "dieser Stuhl ist bequem"),
    ("he broke the chair", "il a cassé la chaise", "er hat den Stuhl zerbrochen"),
    ("take a chair and sit", "prends une chaise et assieds-toi", "nimm einen Stuhl und setz dich"),
    ("the chair is red", "le siège est rouge", "der Stuhl ist rot"),
    ("a wooden chair", "une chaise en bois", "ein hölzerner Sessel"),
    ("she ate an apple", "elle a mangé une pomme", "sie aß einen Apfel"),
    ("the apple is red", "la pomme est rouge", "der Apfel ist rot"),
    ("an apple a day", "une pomme par jour", "ein Apfel am Tag"),
    ("apple juice is sweet", "le jus de pomme est sucré", "Apfelsaft ist süß"),
    ("cut the apple", "coupe le fruit", "schneide den Apfel"),
    ("the river is wide", "la rivière est large", "der Fluss ist breit"),
    ("they swam in the river", "ils ont nagé dans la rivière", "sie schwammen im Fluss"),
    ("the river flows to the sea", "la rivière coule vers la mer", "der Fluss fließt ins Meer"),
    ("a cold river", "un cours d'eau froid", "ein kalter Fluss"),
    ("the river froze", "la rivière a gelé", "der Strom fror"),
    ("their house is big", "leur maison est grande", "ihr Haus ist groß"),
    ("we bought a house", "nous avons acheté une maison", "wir haben ein Haus gekauft"),
    ("the house has a garden", "la maison a un jardin", "das Haus hat einen Garten"),
    ("my house", "mon domicile", "mein Haus"),
    ("the old house", "la vieille maison", "das alte Gebäude"),
    ("i read a book", "j'ai lu un livre", "ich las ein Buch"),
    ("the book is long", "le livre est long", "das Buch ist lang"),
    ("this book was a gift", "ce livre était un cadeau", "dieses Buch war ein Geschenk"),
    ("a good book", "un bon bouquin", "ein gutes Buch"),
    ("open your book", "ouvre ton livre", "öffne dein Heft"),
]

PHRASE_TABLE = [
    ("dog", "perro", 0.7), ("dog", "can", 0.2),
    ("cat", "gato", 0.8), ("cat", "felino", 0.1),
    ("bank", "banco", 0.6), ("bank", "orilla", 0.3),
    ("[bank] of the river", "orilla", 0.8), ("[bank] of the river", "ribera", 0.15),
    ("table", "mesa", 0.7), ("table", "tabla", 0.25),
    ("chair", "silla", 0.8), ("chair", "presidente", 0.1),
    ("apple", "manzana", 0.9),
    ("river", "río", 0.9),
    ("house", "casa", 0.8), ("house", "cámara", 0.1),
    ("book", "libro", 0.85), ("book", "reservar", 0.1),
]

TRANSLATION_CONFIG = """\
# Translate the ten-synset fixture wordnet into Spanish and evaluate it.
wordnet.lemmas = lemmas.tsv
wordnet.definitions = definitions.tsv
corpus.dir = .
corpus.languages = en,fr,de
index.max_n = 4
disambig.n_min = 2
disambig.m = 10
translate.phrase_table = phrase_table.en-es.txt
translate.language = es
translate.t = 5
evaluate.gold = gold.es.tsv
seed = 13
"""


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def translation_fixture():
    out = os.path.join(ROOT, "translation")
    lemmas, defs, gold = [], [], []
    for sid, en, fr, de, es, gloss in SYNSETS:
        lemmas += [f"{sid}\ten\t{en}", f"{sid}\tfr\t{fr}", f"{sid}\tde\t{de}"]
        defs.append(f"{sid}\ten\t{gloss}")
        gold += [f"{sid}\tes\t{lemma}" for lemma in es]
    write(os.path.join(out, "lemmas.tsv"), "# ten synsets; English with French and German witnesses\n" + "\n".join(lemmas) + "\n")
    write(os.path.join(out, "definitions.tsv"), "\n".join(defs) + "\n")
    write(os.path.join(out, "gold.es.tsv"), "\n".join(gold) + "\n")
    for i, lang in enumerate(("en", "fr", "de")):
        write(os.path.join(out, f"corpus.{lang}.txt"), "\n".join(s[i] for s in SENTENCES) + "\n")
    write(os.path.join(out, "phrase_table.en-es.txt"), "".join(f"{s} ||| {t} ||| {p}\n" for s, t, p in PHRASE_TABLE))
    write(os.path.join(out, "config.ini"), TRANSLATION_CONFIG)


# --- alignment fixture -----------------------------------------------------

SYLLABLES = ["ka", "lo", "mi", "re", "su", "ta", "ne", "vo", "pi", "du", "ra", "ze", "fo", "li", "ba", "go"]
FILLERS = ["a", "the", "of", "that", "which", "or", "in", "with", "for", "and"]
DOMAINS = ["zoology", "finance", "geography", "music", "cooking"]
DIM = 16

ALIGNMENT_CONFIG = """\
# Cross-validate and run the alignment on the synthetic 60-link fixture.
align.left = wordnet.jsonl
align.right = wiki.jsonl
align.gold = gold.tsv
align.embeddings = embeddings.txt
align.setting = 4
align.threshold = 0.5
align.alpha = 1.0
cv.k = 10
seed = 7
"""


def alignment_fixture():
    rng = random.Random(20170501)
    used = set()

    def pseudo_word(n_syl):
        while True:
            w = "".join(rng.choice(SYLLABLES) for _ in range(n_syl))
            if w not in used:
                used.add(w)
                return w

    # 15 unambiguous concepts, 15 labels shared by three concepts each
    groups = [1] * 15 + [3] * 15
    rng.shuffle(groups)
    left, right, gold = [], [], []
    vectors = {}

    def vec_near(center, scale):
        return [c + rng.gauss(0.0, scale) for c in center]

    for w in FILLERS:
        vectors[w] = [rng.gauss(0.0, 1.0) for _ in range(DIM)]
    for d in DOMAINS:
        vectors[d] = [rng.gauss(0.0, 1.0) for _ in range(DIM)]

    for g, size in enumerate(groups):
        label = pseudo_word(2)
        vectors[label] = [rng.gauss(0.0, 1.0) for _ in range(DIM)]
        domains = rng.sample(DOMAINS, size)
        for k in range(size):
            center = [rng.gauss(0.0, 1.0) for _ in range(DIM)]
            topic = [pseudo_word(3) for _ in range(10)]
            for w in topic:
                vectors[w] = vec_near(center, 0.3)

            def describe():
                words = rng.sample(topic, 6) + rng.sample(FILLERS, 3)
                rng.shuffle(words)
                return " ".join(words)

            lid = f"wn:{g:02d}.{k}"
            rid = f"wp:{g:02d}.{(k + 1) % size}"
            labels = [label]
            if rng.random() < 0.3:
                extra = pseudo_word(3)
                vectors[extra] = vec_near(center, 0.3)
                labels.append(extra)
            left.append({
                "id": lid,
                "labels": {"en": labels},
                "descriptions": {"en": [describe()]},
                "relations": [["hypernym", domains[k]]],
                "type": "n",
            })
            right.append({
                "id": rid,
                "labels": {"en": [label.capitalize()]},
                "descriptions": {"en": [describe().capitalize() + "."]},
                "relations": [["hypernym", domains[k].capitalize()]],
                "type": None,
            })
            gold.append((lid, rid))

    right.sort(key=lambda e: e["id"])
    out = os.path.join(ROOT, "alignment")
    write(os.path.join(out, "wordnet.jsonl"), "".join(json.dumps(e, sort_keys=True) + "\n" for e in left))
    write(os.path.join(out, "wiki.jsonl"), "".join(json.dumps(e, sort_keys=True) + "\n" for e in right))
    write(os.path.join(out, "gold.tsv"), "".join(f"{a}\t{b}\n" for a, b in gold))
    write(os.path.join(out, "embeddings.txt"),
          "".join(w + " " + " ".join(f"{x:.5f}" for x in v) + "\n" for w, v in sorted(vectors.items())))
    write(os.path.join(out, "config.ini"), ALIGNMENT_CONFIG)


if __name__ == "__main__":
    translation_fixture()
    alignment_fixture()
