"""Pure-Python rewriting kernel for words over {z, zb, zi, zbi}.

A canonical word is sorted under Z < ZB < ZI < ZBI, so it is fully described
by the exponent tuple ``(a, b, c, d)`` of ``Z^a ZB^b ZI^c ZBI^d``.  Terms are
returned as tuples ``(coef, hdeg, modpow, a, b, c, d)`` with integer ``coef``:
every rewrite rule has an integer coefficient, so the normal form of a bare
word is an integer combination of canonical words.

Inserting a letter on the right of a canonical word and moving it left:

* ZBI: nothing to pass.
* ZI passes ZBI^d; each ZBI.ZI -> ZI.ZBI + 2H|z|^-4.
* ZB passes ZBI^d (ZBI.ZB -> ZB.ZBI + 2H|z|^-2), then commutes with ZI.
* Z commutes with ZBI, passes ZI^c (ZI.Z -> Z.ZI - 2H|z|^-2) and
  ZB^b (ZB.Z -> Z.ZB - 2H).

Every correction word is the canonical word with one letter removed, so the
insertion yields canonical terms directly.
"""

Z, ZB, ZI, ZBI = 0, 1, 2, 3


def insert_letter(terms, letter):
    """Right-multiply a dict ``{(hdeg, modpow, a, b, c, d): coef}`` by one letter."""
    out = {}
    for (h, m, a, b, c, d), k in terms.items():
        if letter == ZBI:
            key = (h, m, a, b, c, d + 1)
            out[key] = out.get(key, 0) + k
        elif letter == ZI:
            key = (h, m, a, b, c + 1, d)
            out[key] = out.get(key, 0) + k
            if d:
                key = (h + 1, m - 2, a, b, c, d - 1)
                out[key] = out.get(key, 0) + 2 * d * k
        elif letter == ZB:
            key = (h, m, a, b + 1, c, d)
            out[key] = out.get(key, 0) + k
            if d:
                key = (h + 1, m - 1, a, b, c, d - 1)
                out[key] = out.get(key, 0) + 2 * d * k
        else:
            key = (h, m, a + 1, b, c, d)
            out[key] = out.get(key, 0) + k
            if c:
                key = (h + 1, m - 1, a, b, c - 1, d)
                out[key] = out.get(key, 0) - 2 * c * k
            if b:
                key = (h + 1, m, a, b - 1, c, d)
                out[key] = out.get(key, 0) - 2 * b * k
    return {key: k for key, k in out.items() if k}


def normalize_word(word):
    """Normal form of a bare word (sequence of letter codes)."""
    terms = {(0, 0, 0, 0, 0, 0): 1}
    for letter in word:
        terms = insert_letter(terms, letter)
    return [(k,) + key for key, k in sorted(terms.items())]


def mul_counts(left, right):
    """Normal form of ``Z^a ZB^b ZI^c ZBI^d * Z^e ZB^f ZI^g ZBI^h``."""
    a, b, c, d = left
    terms = {(0, 0, a, b, c, d): 1}
    for letter, count in zip((Z, ZB, ZI, ZBI), right):
        for _ in range(count):
            terms = insert_letter(terms, letter)
    return [(k,) + key for key, k in sorted(terms.items())]
