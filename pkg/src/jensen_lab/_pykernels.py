"""Pure-Python kernels.

Reference implementations of the two hot loops; ``_ckernels`` must agree
with these bit for bit.
"""

from __future__ import annotations

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
INV_2_53 = 1.0 / (1 << 53)


def splitmix64(z: int) -> int:
    z = (z + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def bytes_hash(data: bytes) -> int:
    """Running hash: start from the length, absorb 8-byte big-endian words.

    The final partial word is zero padded on the right.
    """
    h = len(data) & MASK64
    n = len(data)
    for i in range(0, n, 8):
        chunk = data[i:i + 8]
        if len(chunk) < 8:
            chunk = chunk + b"\x00" * (8 - len(chunk))
        h = splitmix64(h ^ int.from_bytes(chunk, "big"))
    return h


def noise_values(data: bytes, seed: int, dim: int, epsilon: float) -> list[float]:
    h = bytes_hash(data)
    seed &= MASK64
    out = []
    for i in range(dim):
        z = splitmix64(seed ^ h ^ i)
        unit = (z >> 11) * INV_2_53
        out.append(epsilon * (2.0 * unit - 1.0))
    return out


def heisenberg_box_scan(radius: int, a: int, b: int, cmn: int, ck: int):
    """Exhaustive Jensen-defect scan of f(m,n,k) = a*m + b*n + cmn*m*n + ck*k.

    Returns ``(pairs, nonzero, max_abs, witness)`` where witness is the first
    ``(m, n, k, m1, n1, k1)`` with nonzero defect, or None.
    """
    rng = range(-radius, radius + 1)
    pairs = 0
    nonzero = 0
    max_abs = 0
    witness = None
    for m in rng:
        for n in rng:
            for k in rng:
                fx2 = 2 * (a * m + b * n + cmn * m * n + ck * k)
                for m1 in rng:
                    mp = m + m1
                    mm = m - m1
                    m1n = m1 * n
                    for n1 in rng:
                        np_ = n + n1
                        nm = n - n1
                        base = a * (mp + mm) + b * (np_ + nm) + cmn * (mp * np_ + mm * nm)
                        m1n1 = m1 * n1
                        for k1 in rng:
                            # xy = (m+m1, n+n1, m1*n + k + k1)
                            # xy^-1 = (m-m1, n-n1, m1*n1 - m1*n + k - k1)
                            d = base + ck * ((m1n + k + k1) + (m1n1 - m1n + k - k1)) - fx2
                            pairs += 1
                            if d:
                                nonzero += 1
                                if abs(d) > max_abs:
                                    max_abs = abs(d)
                                if witness is None:
                                    witness = (m, n, k, m1, n1, k1)
    return pairs, nonzero, max_abs, witness
