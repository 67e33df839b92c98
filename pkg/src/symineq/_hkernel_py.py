"""Pure-Python evaluation kernel for power sums and complete homogeneous sums.

Inputs are integer coordinate vectors (rational points are scaled to integers
by the caller).  Every routine here has a compiled twin in ``_hkernel.pyx``
with the same signature and results.
"""


def power_sums(coords, kmax):
    """``[p_0, p_1, ..., p_kmax]`` with ``p_0 = len(coords)``."""
    out = [len(coords)]
    powers = list(coords)
    for k in range(1, kmax + 1):
        out.append(sum(powers))
        if k < kmax:
            powers = [a * c for a, c in zip(powers, coords)]
    return out


def h_from_power_sums(psums, kmax):
    # k h_k = sum_{i=1..k} h_{k-i} p_i; for integer points the division is exact
    h = [1]
    for k in range(1, kmax + 1):
        s = 0
        for i in range(1, k + 1):
            s += h[k - i] * psums[i]
        h.append(s // k if isinstance(s, int) else s / k)
    return h


def complete_h_table(coords, kmax):
    """``[h_0, ..., h_kmax]`` at an integer point."""
    return h_from_power_sums(power_sums(coords, kmax), kmax)


def complete_h_batch(points, kmax):
    return [complete_h_table(p, kmax) for p in points]


def first_violation(points, mu_parts, lam_parts, w_mu, w_lam):
    """Index of the first point with ``h_mu * w_lam < h_lam * w_mu``, else -1.

    ``w_mu`` and ``w_lam`` are the integer term-normalization constants, so the
    test is the cross-multiplied form of ``H_mu < H_lam``.
    """
    kmax = max(max(mu_parts), max(lam_parts))
    for idx, pt in enumerate(points):
        h = complete_h_table(pt, kmax)
        a = 1
        for part in mu_parts:
            a *= h[part]
        b = 1
        for part in lam_parts:
            b *= h[part]
        if a * w_lam < b * w_mu:
            return idx
    return -1
