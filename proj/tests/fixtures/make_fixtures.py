#!/usr/bin/env python3
# Copyright 2026 The journalmap Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the synthetic test fixtures. Output is deterministic.

    python3 tests/fixtures/make_fixtures.py
"""

import csv
import difflib
import io
import json
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent


def issn(serial):
    digits = f"{serial:07d}"
    total = sum(int(d) * w for d, w in zip(digits, range(8, 1, -1)))
    check = (11 - total % 11) % 11
    return f"{digits[:4]}-{digits[4:]}{'X' if check == 10 else check}"


def gestalt(a, b):
    return difflib.SequenceMatcher(None, a, b, autojunk=False).ratio()


def write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(buf.getvalue())


def journal_rows(journals):
    return [[j["id"], j["title"], j.get("abbrev", ""), ";".join(j.get("issns", []))] for j in journals]


# --- 30-journal matching fixture -------------------------------------------

def match30():
    out = ROOT / "match30"
    issn_pairs = [
        ("JOURNAL OF APPLIED ECOLOGY", "J APPLIED ECOLOGY"),
        ("SCIENTOMETRICS", "SCIENTOMETRICS"),
        ("RESEARCH POLICY", "RES POLICY"),
        ("JOURNAL OF DOCUMENTATION", "JOURNAL OF DOCUMENTATION (LONDON)"),
        ("NATURE", "NATURE (LONDON)"),
        ("PHYSICAL REVIEW LETTERS", "PHYS REV LETT"),
        ("CELL", "CELL PRESS JOURNAL"),
        ("LANCET", "THE LANCET"),
        ("ANNALS OF MATHEMATICS", "ANN MATH"),
        ("ECOLOGY LETTERS", "ECOL LETT"),
    ]
    title_pairs = [
        ("Journal of Informetrics", "JOURNAL OF INFORMETRICS"),
        ("Minerva", "MINERVA"),
        ("Science & Public Policy", "SCIENCE AND PUBLIC POLICY"),
        ("The Information Society", "INFORMATION SOCIETY"),
        ("Social Studies of Science.", "SOCIAL STUDIES OF SCIENCE"),
    ]
    fuzzy_pairs = [
        ("JOURNAL OF MARINE BIOLOGICAL RESEARCH", "JOURNAL OF MARINE BIOLOGY RESEARCH"),
        ("INTERNATIONAL JOURNAL OF HEAT AND MASS TRANSFER", "INTERNATIONAL JOURNAL OF HEAT & MASS TRANSFERS"),
        ("JOURNAL OF THE AMERICAN CERAMICS SOCIETY", "JOURNAL OF THE AMERICAN CERAMIC SOCIETY"),
    ]
    unique_a = [
        "ARCHIVES OF ANCIENT METALLURGY", "BULLETIN OF POLAR GLACIOLOGY", "REVIEW OF MEDIEVAL ECONOMICS",
        "QUARTERLY JOURNAL OF APICULTURE", "NORDIC JOURNAL OF FOLKLORE", "TRANSACTIONS IN VOLCANIC ACOUSTICS",
        "STUDIES IN BRONZE AGE TRADE", "ANNALS OF CAVE ARCHAEOLOGY", "JOURNAL OF LICHEN TAXONOMY",
        "MEMOIRS OF THE ALPINE CLUB", "CHRONICLE OF DESERT HYDROLOGY", "LETTERS IN STELLAR SPECTROSCOPY",
    ]
    for a, b in fuzzy_pairs:
        assert 0.9 <= gestalt(a.replace("&", "AND"), b.replace("&", "AND")) < 1.0, (a, b)

    A, B, variants, truth = [], [], [], []
    serial = 1000
    for k, (ta, tb) in enumerate(issn_pairs):
        s = issn(serial := serial + 7)
        A.append({"id": 1 + k, "title": ta, "issns": [s]})
        extra = [issn(serial + 3)] if k % 3 == 0 else []
        B.append({"id": 101 + k, "title": tb, "issns": [s] + extra})
        truth.append((1 + k, 101 + k, "issn"))
    for k, (ta, tb) in enumerate(title_pairs):
        A.append({"id": 11 + k, "title": ta, "issns": [issn(serial := serial + 7)]})
        B.append({"id": 111 + k, "title": tb, "issns": [issn(serial := serial + 7)]})
        truth.append((11 + k, 111 + k, "exact_title"))
    for k, (ta, tb) in enumerate(fuzzy_pairs):
        p, e = issn(serial := serial + 7), issn(serial := serial + 7)
        A.append({"id": 16 + k, "title": ta, "issns": [p]})
        B.append({"id": 116 + k, "title": tb, "issns": [e]})
        variants.append((p, e))
        truth.append((16 + k, 116 + k, "fuzzy_confirmed"))
    for k, t in enumerate(unique_a):
        A.append({"id": 19 + k, "title": t, "issns": [issn(serial := serial + 7)]})

    # Distractors on side B.
    B.append({"id": 119, "title": "RESEARCH POLICY", "issns": [issn(serial := serial + 7)]})  # A3 matched by ISSN
    near = "ARCHIVES OF ANCIENT METALLURGIES"
    assert gestalt(near, unique_a[0]) >= 0.9
    B.append({"id": 120, "title": near, "issns": [issn(serial := serial + 7)]})  # fuzzy but unlinked
    B.append({"id": 121, "title": "Bulletin of Polar Glaciology", "issns": [issn(serial := serial + 7)]})
    B.append({"id": 122, "title": "BULLETIN OF POLAR GLACIOLOGY.", "issns": [issn(serial := serial + 7)]})
    far = "REVIEW OF MODERN ECONOMIC HISTORY"
    assert gestalt(far, unique_a[2]) < 0.9
    B.append({"id": 123, "title": far, "issns": [issn(serial := serial + 7)]})
    B.append({"id": 124, "title": "JOURNAL OF URBAN CARTOGRAPHY", "issns": [issn(serial := serial + 7)]})

    write_csv(out / "journals_a.csv", ["id", "title", "abbrev", "issns"], journal_rows(A))
    write_csv(out / "journals_b.csv", ["id", "title", "abbrev", "issns"], journal_rows(B))
    write_csv(out / "issn_variants.csv", ["issn_1", "issn_2"], variants)
    write_csv(out / "expected_matches.csv", ["id_a", "id_b", "method"], truth)


# --- 12-node two-community network -----------------------------------------

def community12():
    out = ROOT / "community12"
    rng = random.Random(12)
    names = ["ALPHA", "BETA", "GAMMA", "DELTA", "EPSILON", "ZETA",
             "ETA", "THETA", "IOTA", "KAPPA", "LAMBDA", "MU"]
    journals = [{"id": i + 1, "title": f"JOURNAL OF {n} STUDIES", "abbrev": f"J {n} STUD",
                 "issns": [issn(2000 + 11 * i)]} for i, n in enumerate(names)]
    rows = []
    for i in range(12):
        for j in range(12):
            same = (i < 6) == (j < 6)
            if i == j:
                rows.append((i + 1, j + 1, rng.randint(20, 40)))
            elif same:
                rows.append((i + 1, j + 1, rng.randint(5, 20)))
            elif rng.random() < 0.15:
                rows.append((i + 1, j + 1, 2))
    write_csv(out / "journals.csv", ["id", "title", "abbrev", "issns"], journal_rows(journals))
    write_csv(out / "network.csv", ["citing", "cited", "count"], rows)

    # Five documents over two mapped journals, one from each community.
    ris = []
    for title, tag in [("JOURNAL OF ALPHA STUDIES", "T2"), ("Journal of Alpha Studies", "JF"),
                       ("J ALPHA STUD", "JO"), ("JOURNAL OF ETA STUDIES", "T2"), ("JOURNAL OF ETA STUDIES", "JO")]:
        ris.append(f"TY  - JOUR\nTI  - A paper\n{tag}  - {title}\nER  - \n")
    (out / "documents.ris").write_text("\n".join(ris))
    (out / "unresolved.csv").write_text("journal,count\nJOURNAL OF NOWHERE,2\nANNALS OF NOTHING,1\n")

    # Hand-placed three-journal map with its similarity file.
    (out / "basemap.txt").write_text(
        "id\tlabel\tx\ty\tcluster\tweight\n"
        "1\tJOURNAL OF ALPHA STUDIES\t-0.500000\t0.000000\t1\t1.000000\n"
        "2\tJOURNAL OF BETA STUDIES\t-0.250000\t0.100000\t1\t1.000000\n"
        "7\tJOURNAL OF ETA STUDIES\t0.750000\t-0.100000\t2\t1.000000\n")
    (out / "cosine.csv").write_text("source,target,cosine\n1,2,0.8\n2,7,0.1\n")


# --- document formats ------------------------------------------------------

def formats():
    out = ROOT / "formats"
    out.mkdir(parents=True, exist_ok=True)
    tagged = (
        "FN Clarivate Analytics Web of Science\n"
        "VR 1.0\n"
        "PT J\nAU Smith, J\nTI First paper\nSO JOURNAL OF INFORMETRICS\nPY 2012\nER\n\n"
        "PT J\nAU Jones, K\nTI Second paper\n   with a wrapped title\nSO JOURNAL OF THE AMERICAN SOCIETY FOR\n"
        "   INFORMATION SCIENCE AND TECHNOLOGY\nPY 2012\nER\n\n"
        "PT J\nAU Brown, L\nTI Third paper\nSO JOURNAL OF INFORMETRICS\nER\n\n"
        "PT J\nAU Green, M\nTI Fourth paper without source\nPY 2013\nER\n\n"
        "PT J\nTI Fifth paper\nSO SCIENTOMETRICS\nER\n"
        "EF\n"
    )
    (out / "savedrecs.txt").write_text(tagged)
    analyze = (
        "Source Titles\trecords\t% of 5\tBar Chart\n"
        "JOURNAL OF INFORMETRICS\t2\t40.000 %\t\n"
        "JOURNAL OF THE AMERICAN SOCIETY FOR INFORMATION SCIENCE AND TECHNOLOGY\t1\t20.000 %\t\n"
        "SCIENTOMETRICS\t1\t20.000 %\t\n"
        "\n"
        "(1 Source Titles value(s) outside display options.)\n"
        "(1 records (20.000%) do not contain data in the field being analyzed.)\n"
    )
    (out / "analyze.txt").write_text(analyze)
    ris = (
        "TY  - JOUR\nTI  - First paper\nT2  - Journal of Informetrics\nJO  - J INFORMETR\nER  - \n\n"
        "TY  - JOUR\nTI  - Second paper\nJF  - Journal of the American Society for Information Science and Technology\n"
        "JO  - JASIST\nER  - \n\n"
        "TY  - JOUR\nTI  - Third paper\nJO  - Journal of Informetrics\nER  - \n\n"
        "TY  - JOUR\nTI  - Fourth paper without source\nPY  - 2013\nER  - \n\n"
        "TY  - JOUR\nTI  - Fifth paper\nJF  - Scientometrics\nJO  - SCIENTOMETRICS\nER  - \n"
    )
    (out / "scopus.ris").write_text(ris)
    expected = {
        "savedrecs.txt": {"entries": {"JOURNAL OF INFORMETRICS": 2,
                                      "JOURNAL OF THE AMERICAN SOCIETY FOR INFORMATION SCIENCE AND TECHNOLOGY": 1,
                                      "SCIENTOMETRICS": 1},
                          "records": 5, "missing_title": 1},
        "analyze.txt": {"entries": {"JOURNAL OF INFORMETRICS": 2,
                                    "JOURNAL OF THE AMERICAN SOCIETY FOR INFORMATION SCIENCE AND TECHNOLOGY": 1,
                                    "SCIENTOMETRICS": 1},
                        "records": 4, "missing_title": 0},
        "scopus.ris": {"entries": {"Journal of Informetrics": 2,
                                   "Journal of the American Society for Information Science and Technology": 1,
                                   "Scientometrics": 1},
                       "records": 5, "missing_title": 1},
    }
    (out / "expected_documents.json").write_text(json.dumps(expected, indent=2, sort_keys=True) + "\n")


# --- 40-journal two-database fixture ---------------------------------------

FIELDS = {
    "ECOLOGY": ["FOREST", "MARINE", "INSECT", "SOIL", "WETLAND", "DESERT", "ALPINE", "RIVER", "CORAL", "GRASSLAND"],
    "PHYSICS": ["PLASMA", "OPTICS", "NUCLEAR", "ACOUSTICS", "PARTICLE", "FLUID", "LASER", "QUANTUM", "CRYSTAL",
                "SURFACE"],
    "ECONOMICS": ["LABOR", "MONETARY", "TRADE", "PUBLIC", "HEALTH", "URBAN", "AGRICULTURAL", "ENERGY", "FINANCIAL",
                  "REGIONAL"],
    "LINGUISTICS": ["SYNTAX", "PHONETICS", "SEMANTICS", "DIALECT", "LEXICAL", "PRAGMATICS", "DISCOURSE",
                    "MORPHOLOGY", "TYPOLOGY", "CORPUS"],
}


def db40():
    out = ROOT / "db40"
    rng = random.Random(40)
    pool = []
    for field, topics in FIELDS.items():
        for t in topics:
            pool.append((field, f"JOURNAL OF {t} {field}", f"J {t[:4]} {field[:4]}"))
    # 11 journals per field: 8 shared, 2 unique to A, 1..3 unique to B.
    shared, unique_a, unique_b = [], [], []
    for f_index, field in enumerate(FIELDS):
        items = [p for p in pool if p[0] == field]
        shared += items[:8]
        unique_a += items[8:10]
        unique_b += [(field, f"ANNALS OF {field} {k}", f"ANN {field[:4]} {k}") for k in range(1, 4)]
    rng.shuffle(shared)

    A, B, truth = [], [], []
    serial = 5000
    for k, (field, title, abbrev) in enumerate(shared):
        ia, ib = 1 + k, 501 + k
        if k < 28:
            s = issn(serial := serial + 13)
            A.append({"id": ia, "title": title, "abbrev": abbrev, "issns": [s], "field": field, "key": k})
            B.append({"id": ib, "title": title.title() if k % 4 == 0 else title, "abbrev": abbrev, "issns": [s],
                      "field": field, "key": k})
            truth.append((ia, ib, "issn"))
        else:
            A.append({"id": ia, "title": title, "abbrev": abbrev, "issns": [issn(serial := serial + 13)],
                      "field": field, "key": k})
            B.append({"id": ib, "title": "The " + title.lower(), "abbrev": abbrev,
                      "issns": [issn(serial := serial + 13)], "field": field, "key": k})
            truth.append((ia, ib, "exact_title"))
    for k, (field, title, abbrev) in enumerate(unique_a):
        A.append({"id": 33 + k, "title": title, "abbrev": abbrev, "issns": [issn(serial := serial + 13)],
                  "field": field})
    for k, (field, title, abbrev) in enumerate(unique_b):
        B.append({"id": 533 + k, "title": title, "abbrev": abbrev, "issns": [issn(serial := serial + 13)],
                  "field": field})
    # A duplicate record in A that shares journal 5's ISSN (continued title).
    dup = dict(A[4])
    dup = {"id": 41, "title": A[4]["title"] + " (NEW SERIES)", "abbrev": "", "issns": list(A[4]["issns"]),
           "field": A[4]["field"]}
    A.append(dup)

    # Citations among shared journals are drawn once; each database sees them
    # with its own noise, so the two rankings agree closely but not exactly.
    core = {}
    for x in shared:
        for y in shared:
            if x is y:
                continue
            p = 0.85 if x[0] == y[0] else 0.08
            core[(x[1], y[1])] = rng.randint(1, 40) if rng.random() < p else 0

    def network(journals, scale, unique_ids):
        rows = []
        for x in journals:
            for y in journals:
                same = x["field"] == y["field"]
                peripheral = x["id"] in unique_ids or y["id"] in unique_ids
                if x is y:
                    rows.append([x["id"], y["id"], rng.randint(10, 60)])
                    continue
                if "key" in x and "key" in y:
                    c = core[(shared[x["key"]][1], shared[y["key"]][1])]
                    if c:
                        rows.append([x["id"], y["id"], max(1, round(c * scale + rng.randint(-2, 2)))])
                    continue
                p = (0.45 if peripheral else 0.85) if same else (0.03 if peripheral else 0.08)
                if rng.random() < p:
                    hi = 8 if peripheral else 40
                    c = max(1, round(rng.randint(1, hi) * scale))
                    rows.append([x["id"], y["id"], c])
        return rows

    rows_a = network(A, 1.0, {j["id"] for j in A[32:]})
    # Plumbing rows: a duplicate cell, a cited title, "All others", an unknown id.
    rows_a.append([A[0]["id"], A[1]["id"], 3])
    rows_a.append([A[2]["id"], A[3]["title"], 4])
    rows_a.append(["All others", A[0]["id"], 57])
    rows_a.append([A[1]["id"], 999, 5])
    rows_b = network(B, 0.9, {j["id"] for j in B[32:]})

    write_csv(out / "journals_a.csv", ["id", "title", "abbrev", "issns"], journal_rows(A))
    write_csv(out / "journals_b.csv", ["id", "title", "abbrev", "issns"], journal_rows(B))
    write_csv(out / "network_a.csv", ["citing", "cited", "count"], rows_a)

    # Database B ships as Pajek, vertices in journal-list order.
    index = {j["id"]: n + 1 for n, j in enumerate(B)}
    lines = [f"*Vertices {len(B)}"] + [f'{n + 1} "{j["title"]}"' for n, j in enumerate(B)] + ["*Arcs"]
    agg = {}
    for s, t, c in rows_b:
        agg[(index[s], index[t])] = agg.get((index[s], index[t]), 0) + c
    lines += [f"{s} {t} {c}" for (s, t), c in sorted(agg.items())]
    (out / "network_b.net").write_text("\n".join(lines) + "\n")
    write_csv(out / "expected_matches.csv", ["id_a", "id_b", "method"], truth)

    # Documents of one research group, spread over A's journals.
    docs = []
    picks = [A[0], A[0], A[0], A[1], A[2], A[2], A[9], A[12], A[12], A[20], A[33], A[33]]
    for n, j in enumerate(picks):
        title = j["abbrev"] if n % 5 == 4 and j["abbrev"] else j["title"]
        docs.append(f"TY  - JOUR\nTI  - Paper {n + 1}\nT2  - {title}\nER  - \n")
    docs.append("TY  - JOUR\nTI  - Paper in an unmapped venue\nT2  - PROCEEDINGS OF A LOCAL WORKSHOP\nER  - \n")
    (out / "documents.ris").write_text("\n".join(docs))


if __name__ == "__main__":
    match30()
    community12()
    formats()
    db40()
