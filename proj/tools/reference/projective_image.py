"""Projective mod-p image oracle (p = 3, 5) computed numerically with PARI.

For every cyclic subgroup C of order p of E(C) the symmetric function
s(C) = sum of x(P) over P in (C - 0)/{+-1} is computed from the Weierstrass
p-function; the polynomial prod_C (X - s(C)) has rational coefficients and its
Galois group is the projective image of the mod-p representation acting on
P^1(F_p). Used only to build reference fixtures; never linked into the library.
"""
import cypari2

pari = cypari2.Pari()
PREC_BITS = 2000
pari.set_real_precision_bits(PREC_BITS)


def isogeny_resolvent(ainvs, p):
    E0 = pari.ellinit(ainvs, precision=PREC_BITS)
    c4, c6 = E0[9], E0[10]
    E = pari.ellinit([0, 0, 0, -27 * c4, -54 * c6], precision=PREC_BITS)
    w1, w2 = pari.ellperiods(E, precision=PREC_BITS)
    lines = [(1, b) for b in range(p)] + [(0, 1)]
    roots = []
    for a, b in lines:
        s = 0
        for k in range(1, (p - 1) // 2 + 1):
            z = k * (a * w1 + b * w2) / p
            s += pari.ellwp(E, z, precision=PREC_BITS)
        roots.append(s)
    x = pari('x')
    poly = pari(1)
    for r in roots:
        poly *= (x - r)
    # p * x(P) is integral for the short integral model
    scaled = pari.substpol(poly, 'x', pari('x') / p) * pari(p) ** (p + 1)
    coeffs = [pari.real(c) for c in pari.Vec(scaled)]
    ints = [pari.round(c) for c in coeffs]
    err = max(abs(float(c - i)) for c, i in zip(coeffs, ints))
    if err > 1e-20:
        raise RuntimeError(f"rounding error {err}")
    return pari.Pol(ints)


def projective_image_order(ainvs, p):
    poly = isogeny_resolvent(ainvs, p)
    if not pari.issquarefree(poly):
        return None
    if not pari.polisirreducible(poly):
        # intransitive on P^1(F_p): the image is proper
        return 0
    return int(pari.polgalois(poly)[0])


if __name__ == "__main__":
    for a in ([1, -1, 0, -332311, -73733731], [0, -1, 1, -10, -20], [0, 0, 1, -1, 0]):
        print(a, projective_image_order(a, 5), projective_image_order(a, 3))
