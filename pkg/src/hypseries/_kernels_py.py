"""Pure-Python truncated convolution kernels (fallback for ``_ckernels``).

Both functions take dense coefficient lists laid out in a universe's graded
order and return the product truncated at total degree ``order``.  Index
arithmetic uses mixed-radix exponent codes: ``code(e + f) = code(e) + code(f)``
as long as the sum stays within the cutoff, so the target slot is a single
table lookup.
"""

BACKEND = "python"


def conv_int(a, b, u):
    """Integer-coefficient product; ``a``, ``b`` are lists of Python ints."""
    codes, lookup, degs, deg_end, order = u.codes, u.lookup, u.degs, u.deg_end, u.order
    out = [0] * len(a)
    nz_b = [j for j, v in enumerate(b) if v]
    for i, ai in enumerate(a):
        if not ai:
            continue
        ci = codes[i]
        lim = deg_end[order - degs[i]]
        for j in nz_b:
            if j >= lim:
                break
            out[lookup[ci + codes[j]]] += ai * b[j]
    return out


def conv_complex(a, b, u):
    """Double-complex product; ``a``, ``b`` are sequences of complex numbers."""
    codes, lookup, degs, deg_end, order = u.codes, u.lookup, u.degs, u.deg_end, u.order
    out = [0j] * len(a)
    nz_b = [j for j, v in enumerate(b) if v]
    for i, ai in enumerate(a):
        if not ai:
            continue
        ci = codes[i]
        lim = deg_end[order - degs[i]]
        for j in nz_b:
            if j >= lim:
                break
            out[lookup[ci + codes[j]]] += ai * b[j]
    return out
