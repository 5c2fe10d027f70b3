# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same API, same output order."""


cdef dict _insert(dict terms, int letter):
    cdef dict out = {}
    cdef long h, m, a, b, c, d
    cdef object k, key
    for key, k in terms.items():
        h, m, a, b, c, d = key
        if letter == 3:
            key = (h, m, a, b, c, d + 1)
            out[key] = out.get(key, 0) + k
        elif letter == 2:
            key = (h, m, a, b, c + 1, d)
            out[key] = out.get(key, 0) + k
            if d:
                key = (h + 1, m - 2, a, b, c, d - 1)
                out[key] = out.get(key, 0) + 2 * d * k
        elif letter == 1:
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


def insert_letter(terms, letter):
    return _insert(dict(terms), int(letter))


def normalize_word(word):
    cdef dict terms = {(0, 0, 0, 0, 0, 0): 1}
    for letter in word:
        terms = _insert(terms, letter)
    return [(k,) + key for key, k in sorted(terms.items())]


def mul_counts(left, right):
    cdef long a, b, c, d, n
    cdef int letter
    a, b, c, d = left
    cdef dict terms = {(0, 0, a, b, c, d): 1}
    for letter in range(4):
        for n in range(right[letter]):
            terms = _insert(terms, letter)
    return [(k,) + key for key, k in sorted(terms.items())]
