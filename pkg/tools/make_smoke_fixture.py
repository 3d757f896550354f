#!/usr/bin/env python3
"""Regenerate the bundled smoke fixture under tests/data/smoke/.

Deterministic: fixed seeds, sorted iteration.  The fixture models a small
maintenance-log corpus from a production plant: eight term families with
dictionary-backed heads, a hypernym ladder above them, a handful of
off-domain distractor pages that area pruning must reject, and a few terms
that intentionally resolve nowhere (they exercise the exclusion report).

Run from the repository root:

    python3 tools/make_smoke_fixture.py
"""

from __future__ import annotations

import json
import math
import random
import zlib
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "data" / "smoke"

DIM = 50

# topic -> (head, compounds)
FAMILIES = {
    "motor": ("Motor", ["Dieselmotor", "Elektromotor", "Benzinmotor", "Hauptmotor", "Hilfsmotor", "Bootsmotor", "Austauschmotor", "Sechszylindermotor", "Gasmotor", "Startmotor", "Nebenmotor", "Reservemotor"]),
    "pumpe": ("Pumpe", ["Wasserpumpe", "Ölpumpe", "Kreiselpumpe", "Handpumpe", "Dosierpumpe", "Membranpumpe", "Vakuumpumpe", "Förderpumpe", "Saugpumpe", "Spülpumpe", "Umwälzpumpe"]),
    "hammer": ("Hammer", ["Vorschlaghammer", "Gummihammer", "Schmiedehammer", "Spitzhammer", "Brechhammer"]),
    "bohrer": ("Bohrer", ["Steinbohrer", "Holzbohrer", "Metallbohrer", "Spiralbohrer", "Gesteinsbohrer"]),
    "saege": ("Säge", ["Handsäge", "Kreissäge", "Bandsäge", "Stichsäge", "Gattersäge"]),
    "tank": ("Tank", ["Drucktank", "Lagertank", "Kraftstofftank", "Wassertank", "Öltank", "Vorratstank"]),
    "kessel": ("Kessel", ["Dampfkessel", "Heizkessel", "Druckkessel", "Wasserkessel", "Reservekessel"]),
    "saeure": ("Säure", ["Schwefelsäure", "Salzsäure", "Essigsäure", "Zitronensäure", "Ameisensäure", "Batteriesäure", "Milchsäure", "Gerbsäure"]),
    "ventil": ("Ventil", ["Sicherheitsventil", "Magnetventil", "Rückschlagventil", "Drosselventil", "Absperrventil", "Regelventil", "Entlüftungsventil"]),
    "sensor": ("Sensor", ["Drucksensor", "Temperatursensor", "Füllstandsensor", "Drehzahlsensor", "Gassensor", "Neigungssensor"]),
    "rohr": ("Rohr", ["Stahlrohr", "Kupferrohr", "Abflussrohr", "Steigrohr", "Fallrohr", "Ablaufrohr", "Messingrohr", "Glasrohr"]),
}

# Families sharing a super topic stay semantically related, which lets the
# generalizing labels above them survive the coherence gates.
SUPER_TOPIC = {
    "motor": "maschinen",
    "pumpe": "maschinen",
    "hammer": "werkzeuge",
    "bohrer": "werkzeuge",
    "saege": "werkzeuge",
    "tank": "gefaesse",
    "kessel": "gefaesse",
    "saeure": "chemie",
    "ventil": "armaturen",
    "rohr": "armaturen",
    "sensor": "messtechnik",
}

# label -> (super topic, family topic or None): where the label vector sits.
LABEL_PLACEMENT = {
    "Maschine": ("maschinen", None),
    "Werkzeug": ("werkzeuge", None),
    "Gerät": ("geraete", None),
    "Behälter": ("gefaesse", None),
    "Chemikalie": ("chemie", "saeure"),
    "Stoff": ("chemie", None),
    "Bauteil": ("armaturen", None),
    "Messgerät": ("messtechnik", "sensor"),
    "Gegenstand": ("dinge", None),
}

HEAD_PAGES = {
    # head -> (areas, definition, section hypernyms)
    "Motor": (["Technik", "Mechanik"], "Technik: Maschine, die Energie in Bewegung umsetzt.", ["Maschine"]),
    "Pumpe": (["Technik", "Mechanik"], "Maschine zum Fördern von Flüssigkeiten.", ["Maschine"]),
    "Hammer": (["Technik", "Sport"], "Werkzeug zum Schlagen; auch ein Wurfgerät.", ["Werkzeug"]),
    "Bohrer": (["Technik"], "Werkzeug zum Herstellen von Bohrungen.", ["Werkzeug"]),
    "Säge": (["Technik", "Musik"], "Werkzeug mit gezahntem Blatt.", ["Werkzeug"]),
    "Tank": (["Technik", "Militär"], "Behälter für Flüssigkeiten oder Gase.", ["Behälter"]),
    "Kessel": (["Technik", "Kochen"], "Behälter zum Erhitzen von Wasser.", ["Behälter"]),
    "Säure": (["Chemie"], "Chemikalie mit niedrigem pH-Wert.", ["Chemikalie"]),
    "Ventil": (["Technik", "Mechanik"], "Bauteil zum Absperren einer Leitung.", ["Bauteil"]),
    "Sensor": (["Technik", "Elektronik"], "Messgerät, das physikalische Größen erfasst.", ["Messgerät"]),
    # in-text hypernym only: the definition names a resolvable page
    "Rohr": (["Technik"], "länglicher Hohlkörper, als Bauteil von Leitungen verwendet.", []),
}

UPPER_PAGES = {
    "Maschine": (["Technik"], "mechanische Vorrichtung, ein Gerät für Arbeit.", ["Gerät"]),
    "Werkzeug": (["Technik"], "Gerät, das Arbeiten von Hand unterstützt.", ["Gerät"]),
    "Gerät": ([], "ein Gegenstand von praktischem Nutzen.", ["Gegenstand"]),
    "Behälter": (["Technik"], "Gegenstand zum Aufnehmen von Stoffen.", ["Gegenstand"]),
    "Chemikalie": (["Chemie"], "industriell verwendeter Stoff.", ["Stoff"]),
    "Stoff": (["Chemie"], "Materie mit bestimmten Eigenschaften.", []),
    "Bauteil": (["Technik"], "einzelnes Element eines Gegenstands.", ["Gegenstand"]),
    "Messgerät": (["Technik"], "Gerät zum Messen physikalischer Größen.", ["Gerät"]),
    "Gegenstand": ([], "körperliches Ding.", []),
}

# Words needed so compound segmentation and head resolution can work.
MODIFIER_PAGES = [
    "Diesel", "Benzin", "Wasser", "Öl", "Hand", "Dampf", "Druck", "Stein",
    "Holz", "Metall", "Stahl", "Kupfer", "Gummi", "Band", "Kraftstoff",
    "Lager", "Magnet", "Salz", "Essig", "Zitrone", "Ameise", "Schwefel",
    "Membran", "Vakuum", "Kreisel", "Boot", "Haupt", "Austausch", "Schmiede",
    "Drehzahl", "Füllstand", "Gas", "Start", "Neben", "Reserve", "Förder",
    "Saug", "Spül", "Umwälz", "Spitz", "Brech", "Spiral", "Gestein", "Stich",
    "Gatter", "Vorrat", "Batterie", "Milch", "Gerb", "Absperr", "Regel",
    "Entlüftung", "Neigung", "Fall", "Ablauf", "Messing", "Glas",
]

# Plant vocabulary with pages of its own: becomes small head groups.
NOISE_PAGES = {
    "Temperatur": ([], "Maß für die Wärme eines Körpers.", []),
    "Betrieb": ([], "das Laufen einer technischen Anlage.", []),
    "Wartung": (["Technik"], "planmäßige Instandhaltung.", []),
    "Störung": (["Technik"], "Abweichung vom Normalbetrieb.", []),
    "Leitung": (["Technik"], "Rohr oder Kabel zum Transport.", []),
    "Schicht": ([], "Arbeitsabschnitt eines Tages.", []),
    "Anlage": (["Technik"], "Gesamtheit technischer Einrichtungen.", []),
    "Dampfmaschine": (["Technik"], "Maschine, die mit Dampf arbeitet.", ["Maschine"]),
    "Prüfstand": (["Technik"], "Einrichtung zum Prüfen von Geräten.", []),
    "Flansch": (["Technik"], "Verbindungselement an Rohren.", []),
    "Dichtung": (["Technik"], "Element gegen das Austreten von Stoffen.", []),
    "Kupplung": (["Technik"], "Verbindung zweier Wellen.", []),
    "Getriebe": (["Technik"], "Einheit zur Übertragung von Kräften.", []),
    "Welle": (["Technik"], "rotierendes Maschinenelement.", []),
    "Kompressor": (["Technik"], "Verdichter für Gase.", []),
    "Turbine": (["Technik"], "Strömungsmaschine.", []),
    "Generator": (["Technik"], "Erzeuger elektrischer Energie.", []),
    "Werkbank": (["Technik"], "Arbeitstisch einer Werkstatt.", []),
    "Messung": ([], "das Erfassen einer Größe.", []),
    "Inspektion": ([], "prüfende Durchsicht.", []),
    "Reinigung": ([], "das Entfernen von Verschmutzungen.", []),
    "Freigabe": ([], "Erlaubnis zur Nutzung.", []),
    "Ausfall": ([], "plötzliches Versagen.", []),
    "Ersatzteil": (["Technik"], "Teil zum Austausch.", []),
}

# Distractor pages: their only sense areas lie outside the domain, so graph
# growing must refuse to materialize them.
DISTRACTOR_PAGES = {
    "Wurfgerät": (["Sport"], "Sportgerät zum Werfen.", []),
    "Notenblatt": (["Musik"], "Blatt mit Noten.", []),
    "Gericht": (["Recht", "Kochen"], "Institution der Rechtsprechung.", []),
    "Panzer": (["Militär"], "gepanzertes Fahrzeug.", []),
}

AREA_TITLES = ["Technik", "Mechanik", "Elektronik", "Chemie", "Sport", "Musik", "Kochen", "Militär", "Recht"]
TECH_AREAS = {"Technik", "Mechanik", "Elektronik", "Chemie"}

# Capitalized corpus words that deliberately resolve nowhere.
UNMAPPABLE = ["Quorbtex", "Fendrizit", "Blorzheit", "Knaprium", "Vompel", "Drelling", "Sprunk", "Quillex"]

SENTENCE_TEMPLATES = [
    "Die {a} wurde heute geprüft und läuft wieder ohne Störung.",
    "Der {a} zeigt erhöhte Temperatur, die Wartung ist eingeplant.",
    "Am Prüfstand wurde der {a} mit dem {b} verglichen.",
    "Nach der Schicht meldete das Team ein Leck an der {a}.",
    "Der {a} und die {b} wurden im Betrieb getauscht.",
    "Die Leitung zur {a} ist dicht, der {b} bleibt in Wartung.",
    "Im Lager steht ein neuer {a} für die Anlage bereit.",
    "Die {a} fördert wieder, nachdem das {b} gereinigt wurde.",
    "Wegen der Störung am {a} wurde die {b} abgeschaltet.",
    "Der Techniker hat den {a} mit einem {b} geöffnet.",
]


def word_rng(word: str) -> random.Random:
    return random.Random(zlib.crc32(word.encode("utf-8")))


def unit(vec: list[float]) -> list[float]:
    norm = math.sqrt(sum(x * x for x in vec))
    return [x / norm for x in vec]


def noise(word: str) -> list[float]:
    rng = word_rng(word)
    return [rng.uniform(-1.0, 1.0) for _ in range(DIM)]


def super_base(name: str) -> list[float]:
    return unit(noise("super::" + name))


def family_base(topic: str) -> list[float]:
    base = super_base(SUPER_TOPIC[topic])
    n = unit(noise("family::" + topic))
    return unit([0.72 * b + 0.28 * x for b, x in zip(base, n)])


def blended(base: list[float], word: str, weight: float = 0.92) -> list[float]:
    n = unit(noise("word::" + word))
    return unit([weight * b + (1.0 - weight) * x for b, x in zip(base, n)])


def build_vectors() -> dict[str, list[float]]:
    vectors: dict[str, list[float]] = {}
    for topic, (head, compounds) in FAMILIES.items():
        vectors[head] = blended(family_base(topic), head, weight=0.95)
        for compound in compounds:
            vectors[compound] = blended(family_base(topic), compound)
    for label, (super_name, fam) in LABEL_PLACEMENT.items():
        base = family_base(fam) if fam else super_base(super_name)
        vectors[label] = blended(base, label, weight=0.9)
    for word in MODIFIER_PAGES:
        vectors[word] = blended(super_base("modifier"), word, weight=0.3)
    for word in list(NOISE_PAGES) + UNMAPPABLE:
        vectors[word] = blended(super_base("noise"), word, weight=0.4)
    # Area titles: the technical ones huddle together, distractors scatter.
    for title in AREA_TITLES:
        if title in TECH_AREAS:
            vectors[title] = blended(super_base("areas-tech"), title, weight=0.93)
        else:
            vectors[title] = blended(super_base("areas-" + title), title, weight=0.98)
    # A few compounds stay out of the vector file on purpose: their vectors
    # must come from the segmentation fallback.
    for missing in ("Sechszylindermotor", "Rückschlagventil", "Füllstandsensor"):
        vectors.pop(missing, None)
    return vectors


def build_kb() -> list[dict]:
    records = []

    def page(headword, areas, definition, hypernyms, hyponyms=()):
        records.append(
            {
                "headword": headword,
                "senses": [{"areas": list(areas), "definition": definition}],
                "hypernyms": list(hypernyms),
                "hyponyms": list(hyponyms),
            }
        )

    for head, (areas, definition, hypernyms) in sorted(HEAD_PAGES.items()):
        page(head, areas, definition, hypernyms)
    for label, (areas, definition, hypernyms) in sorted(UPPER_PAGES.items()):
        hyponyms = sorted(h for h, (_, _, hs) in HEAD_PAGES.items() if label in hs)
        page(label, areas, definition, hypernyms, hyponyms)
    for word in sorted(MODIFIER_PAGES):
        page(word, [], f"{word}: Grundwort des Anlagenalltags.", [])
    for word, (areas, definition, hypernyms) in sorted(NOISE_PAGES.items()):
        page(word, areas, definition, hypernyms)
    for word, (areas, definition, hypernyms) in sorted(DISTRACTOR_PAGES.items()):
        page(word, areas, definition, hypernyms)

    # Filler pages pad the dump to a realistic size.  Synthetic headwords
    # never collide with corpus suffixes.
    rng = random.Random(58231)
    syllables = ["ba", "do", "fi", "gu", "ka", "lo", "mi", "nu", "po", "ra", "se", "tu", "wa", "xe", "zo"]
    seen = set()
    while len(seen) < 170:
        word = "".join(rng.choice(syllables) for _ in range(3)).capitalize() + "ix"
        if word in seen:
            continue
        seen.add(word)
        area = rng.choice(["Sport", "Musik", "Kochen", "Recht", "Militär", ""])
        page(word, [area] if area else [], f"{word}: seltenes Fachwort.", [])
    records.sort(key=lambda r: r["headword"])
    return records


def build_corpus(rng: random.Random) -> list[str]:
    mentions: list[str] = []
    for topic, (head, compounds) in sorted(FAMILIES.items()):
        # Core terms repeat more often than rare ones.
        for i, compound in enumerate(compounds):
            mentions.extend([compound] * (3 if i < 2 else 1))
        mentions.extend([head] * 2)
    mentions.extend(["Dampfmaschine", "Prüfstand"] * 2)
    mentions.extend(sorted(NOISE_PAGES))
    mentions.extend(UNMAPPABLE)
    rng.shuffle(mentions)

    documents = []
    while mentions:
        sentences = []
        for _ in range(rng.randint(2, 4)):
            template = rng.choice(SENTENCE_TEMPLATES)
            a = mentions.pop() if mentions else "Anlage"
            b = mentions.pop() if ("{b}" in template and mentions) else "Betrieb"
            sentences.append(template.format(a=a, b=b))
        documents.append(" ".join(sentences))
    # A record with digits: the extractor must drop the token.
    documents.append("Der Bericht B2B Nummer 42 nennt die Wasserpumpe im Betrieb.")
    while len(documents) < 50:
        template = rng.choice(SENTENCE_TEMPLATES)
        documents.append(template.format(a="Anlage", b="Betrieb"))
    return documents


def main() -> None:
    corpus_dir = OUT / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    for old in corpus_dir.glob("*.txt"):
        old.unlink()

    rng = random.Random(97513)
    for i, doc in enumerate(build_corpus(rng)):
        (corpus_dir / f"log{i:03d}.txt").write_text(doc + "\n", encoding="utf-8")

    records = build_kb()
    with open(OUT / "kb.jsonl", "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    vectors = build_vectors()
    with open(OUT / "vectors.txt", "w", encoding="utf-8") as fh:
        fh.write(f"{len(vectors)} {DIM}\n")
        for word in sorted(vectors):
            fh.write(word + " " + " ".join(f"{x:.6f}" for x in vectors[word]) + "\n")

    print(f"corpus: {len(list(corpus_dir.glob('*.txt')))} docs")
    print(f"kb: {len(records)} records")
    print(f"vectors: {len(vectors)} words, dim {DIM}")


if __name__ == "__main__":
    main()
