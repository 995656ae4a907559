"""Regenerates the reference fixtures under tests/data/ with PARI/GP (cypari2).

Development-time only: the committed fixture files are the output and the C++
test suites never call PARI. Run from the repository root:

    python3 tools/reference/make_reference_data.py
"""
import random
import sys
from pathlib import Path

import cypari2

sys.path.insert(0, str(Path(__file__).parent))
from projective_image import projective_image_order  # noqa: E402

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)
OUT = Path("tests/data")


def kodaira(code):
    code = int(code)
    if code == 1:
        return "I0"
    if code in (2, 3, 4):
        return {2: "II", 3: "III", 4: "IV"}[code]
    if code > 4:
        return f"I{code - 4}"
    if code == -1:
        return "I0*"
    if code in (-2, -3, -4):
        return {-2: "II*", -3: "III*", -4: "IV*"}[code]
    return f"I{-code - 4}*"


def local_rows(ainvs):
    E = pari.ellinit(ainvs)
    g = pari.ellglobalred(E)
    rows = []
    for prime in [int(q) for q in pari.factor(abs(int(E[11])))[0]]:
        f, kod, _, c = pari.elllocalred(E, prime)
        if int(f) == 0:
            continue
        rows.append((prime, kodaira(kod), int(c), int(f)))
    return int(g[0]), rows


HAND = [
    [0, -1, 1, -10, -20], [0, 0, 1, -1, 0], [1, 0, 1, 4, -6], [1, 1, 1, -10, -10],
    [1, -1, 0, -332311, -73733731], [1, 0, 1, 0, 2],
    [0, 0, 1, -17034726259173, -27061436852750306309],
    [0, 0, 0, 0, 5], [0, 0, 0, 5, 0], [0, 0, 0, 0, 25], [0, 0, 0, 0, 125],
    [0, 0, 0, 0, 625], [0, 0, 0, 125, 0], [0, 0, 0, 0, 3125], [0, 0, 0, -1, 0],
    [0, 0, 1, -7, 6], [0, 1, 1, -2, 0], [0, 0, 1, 0, -7], [0, 0, 0, 0, 1],
    [0, 0, 0, -11 * 11, 0], [0, 0, 0, 0, 7**5], [0, 0, 0, 7**3, 0],
    [1, -1, 1, -1, 0], [0, 1, 0, -1, 0],
]


def fibre_kind(symbol):
    if symbol in ("I0*", "II", "III", "IV", "IV*", "III*", "II*"):
        return symbol
    return "In*" if symbol.endswith("*") else "In"


def nonsingular(a):
    return len(pari.ellinit(a)) > 0


def tate_corpus():
    rng = random.Random(20240501)
    chosen = [list(a) for a in HAND if nonsingular(a)]
    seen = {}
    for a in chosen:
        for r in local_rows(a)[1]:
            seen[fibre_kind(r[1])] = seen.get(fibre_kind(r[1]), 0) + 1
    tries = 0
    while tries < 4000 and len(chosen) < 60:
        tries += 1
        k = rng.choice([1, 2, 3, 4, 6, 9, 12])
        if k == 1:
            a = [rng.randint(0, 1), rng.randint(-1, 1), rng.randint(0, 1),
                 rng.randint(-200, 200), rng.randint(-2000, 2000)]
        else:
            # scaled short models force additive fibres at 2 and 3
            a = [0, 0, 0, rng.randint(-30, 30) * k**2, rng.randint(-90, 90) * k**3]
        if not nonsingular(a):
            continue
        kinds = {fibre_kind(r[1]) for r in local_rows(a)[1]}
        if any(seen.get(k_, 0) < 4 for k_ in kinds):
            chosen.append(a)
            for k_ in kinds:
                seen[k_] = seen.get(k_, 0) + 1
    return chosen, seen


def write_tate(chosen):
    lines = ["# Local reduction reference data from PARI/GP elllocalred.",
             "# a1 a2 a3 a4 a6 ; conductor ; prime:kodaira:c:f ...",
             "# The model may be non-minimal; PARI reduces it first."]
    for a in chosen:
        N, rows = local_rows(a)
        lines.append(" ".join(map(str, a)) + " ; " + str(N) + " ; " +
                     " ".join(f"{p}:{k}:{c}:{f}" for p, k, c, f in rows))
    (OUT / "tate_corpus.txt").write_text("\n".join(lines) + "\n")


def write_minimal(chosen):
    lines = ["# Input model ; globally minimal reduced model from PARI ellminimalmodel",
             "# ; minimal discriminant ; j-invariant"]
    rng = random.Random(7)
    for a in chosen[:30]:
        E = pari.ellinit(a)
        M = pari.ellminimalmodel(E)
        m = [int(M[i]) for i in range(5)]
        # a scaled (u, r, s, t) image of the minimal model, still integral
        u = rng.choice([1, 2, 3, 6])
        r, s, t = rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)
        S = pari.ellchangecurve(pari.ellinit(m), [pari(1) / u, r, s, t])
        scaled = [S[i] for i in range(5)]
        if any(pari.denominator(x) != 1 for x in scaled):
            scaled = m
        lines.append(" ".join(str(int(x)) for x in scaled) + " ; " +
                     " ".join(map(str, m)) + " ; " + str(int(M[11])) + " ; " + str(M[12]))
    (OUT / "minimal_models.txt").write_text("\n".join(lines) + "\n")


def image_corpus():
    rng = random.Random(99)
    rows = []
    # 5-torsion (Tate normal form) and 3-torsion families: proper images
    for t in (2, 3, 4, -2, 5):
        a = [1 - t, -t, -t, 0, 0]
        if pari.ellinit(a)[11] != 0:
            rows.append((a, 5))
    for a1, a3 in ((1, 1), (0, 1), (1, 2), (2, 3)):
        rows.append(([a1, 0, a3, 0, 0], 3))
    full = 0
    while full < 24:
        a = [rng.randint(0, 1), rng.randint(-1, 1), rng.randint(0, 1),
             rng.randint(-60, 60), rng.randint(-300, 300)]
        if pari.ellinit(a)[11] == 0:
            continue
        rows.append((a, 5))
        rows.append((a, 3))
        full += 1
    rows += [([1, -1, 0, -332311, -73733731], 5), ([1, 0, 1, 0, 2], 5),
             ([0, 0, 1, -17034726259173, -27061436852750306309], 5),
             ([0, -1, 1, -10, -20], 5), ([1, 0, 1, 0, 2], 3)]
    out = ["# Projective mod-p image reference: a1 a2 a3 a4 a6 ; p ; full|proper",
           "# 'full' means the isogeny-line resolvent has Galois group PGL2(F_p)",
           "# (computed numerically in PARI, see projective_image.py), which",
           "# together with the cyclotomic determinant forces image GL2(F_p)."]
    seen = set()
    for a, p in rows:
        key = (tuple(a), p)
        if key in seen:
            continue
        seen.add(key)
        E = pari.ellinit(a)
        if int(E[11]) % p == 0:
            continue
        M = pari.ellminimalmodel(E)
        if int(M[11]) % p == 0:
            continue
        order = projective_image_order(a, p)
        if order is None:
            continue
        status = "full" if order == p * (p * p - 1) else "proper"
        out.append(" ".join(map(str, a)) + f" ; {p} ; {status}")
    (OUT / "image_corpus.txt").write_text("\n".join(out) + "\n")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    chosen, seen = tate_corpus()
    print("coverage", seen, "curves", len(chosen))
    write_tate(chosen)
    write_minimal(chosen)
    image_corpus()
