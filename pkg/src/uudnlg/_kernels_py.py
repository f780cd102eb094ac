"""Pure-Python implementations of the hot inner loops.

Mirrors the interface of the Cython module ``_speedups``; one of the two
is selected at import time by ``kernels``.
"""


def lcs_length(a, b):
    """Length of the longest common subsequence of two int sequences.

    Rolling single-row DP, O(len(a) * len(b)) time, O(len(b)) space.
    """
    if not a or not b:
        return 0
    if len(b) > len(a):
        a, b = b, a
    row = [0] * (len(b) + 1)
    for x in a:
        prev_diag = 0
        for j, y in enumerate(b, start=1):
            prev_row = row[j]
            if x == y:
                row[j] = prev_diag + 1
            elif row[j - 1] > row[j]:
                row[j] = row[j - 1]
            prev_diag = prev_row
    return row[len(b)]
