"""Rank-attaining matrices for the seven mr>=3 minimal graphs over GF(2), as printed.

Each entry: (constructor name, {printed matrix name: rows}, printed class partition).
The P3 lemma matrices are included separately.
"""

P3_MATRICES = [
    [[0, 1, 0], [1, 0, 1], [0, 1, 0]],
    [[0, 1, 0], [1, 1, 1], [0, 1, 0]],
    [[1, 1, 0], [1, 0, 1], [0, 1, 1]],
]


def _dsum(a, b):
    n, m = len(a), len(b)
    return [row + [0] * m for row in a] + [[0] * n + row for row in b]


_J2 = [[1, 1], [1, 1]]

MR_SETS = {
    "3k2": (
        {"M1": _dsum(_dsum(_J2, _J2), _J2)},
        [["M1"]],
    ),
    "p3_join_p3": (
        {
            "M1": [
                [0, 1, 1, 1, 0, 1],
                [1, 0, 1, 1, 1, 0],
                [1, 1, 1, 1, 1, 1],
                [1, 1, 1, 1, 1, 1],
                [0, 1, 1, 1, 0, 1],
                [1, 0, 1, 1, 1, 0],
            ]
        },
        [["M1"]],
    ),
    "dart": (
        {
            "M1": [[1, 1, 0, 0, 0], [1, 0, 1, 1, 1], [0, 1, 0, 1, 0], [0, 1, 1, 1, 1], [0, 1, 0, 1, 0]],
            "M2": [[1, 1, 0, 0, 0], [1, 1, 1, 1, 1], [0, 1, 0, 1, 0], [0, 1, 1, 0, 1], [0, 1, 0, 1, 0]],
        },
        [["M1"], ["M2"]],
    ),
    "ltimes": (
        {
            "M1": [[0, 1, 1, 1, 1], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0], [1, 0, 0, 1, 1], [1, 0, 0, 1, 1]],
            "M2": [[1, 1, 1, 1, 1], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0], [1, 0, 0, 1, 1], [1, 0, 0, 1, 1]],
            "M3": [[1, 1, 1, 1, 1], [1, 1, 0, 0, 0], [1, 0, 1, 0, 0], [1, 0, 0, 1, 1], [1, 0, 0, 1, 1]],
        },
        [["M1", "M2"], ["M3"]],
    ),
    "p3_union_k2": (
        {
            "M1": _dsum(P3_MATRICES[0], _J2),
            "M2": _dsum(P3_MATRICES[1], _J2),
            "M3": _dsum(P3_MATRICES[2], _J2),
        },
        [["M1", "M2"], ["M3"]],
    ),
    "full_house": (
        {
            "M1": [[1, 1, 1, 0, 0], [1, 1, 1, 1, 1], [1, 1, 1, 1, 1], [0, 1, 1, 1, 1], [0, 1, 1, 1, 1]],
            "M2": [[0, 1, 1, 0, 0], [1, 1, 1, 1, 1], [1, 1, 1, 1, 1], [0, 1, 1, 1, 1], [0, 1, 1, 1, 1]],
            "M3": [[0, 1, 1, 0, 0], [1, 0, 1, 1, 1], [1, 1, 0, 1, 1], [0, 1, 1, 1, 1], [0, 1, 1, 1, 1]],
            "M4": [[1, 1, 1, 0, 0], [1, 1, 1, 1, 1], [1, 1, 1, 1, 1], [0, 1, 1, 0, 1], [0, 1, 1, 1, 0]],
        },
        [["M1", "M2"], ["M3"], ["M4"]],
    ),
    "P4": (
        {
            "M1": [[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 1, 1], [0, 0, 1, 1]],
            "M2": [[0, 1, 0, 0], [1, 1, 1, 0], [0, 1, 1, 1], [0, 0, 1, 1]],
            "M3": [[1, 1, 0, 0], [1, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]],
            "M4": [[1, 1, 0, 0], [1, 1, 1, 0], [0, 1, 1, 1], [0, 0, 1, 0]],
            "M5": [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]],
        },
        [["M1", "M2"], ["M3", "M4"], ["M5"]],
    ),
}


def printed_names(mrset, name):
    """Map engine matrix index -> printed name by entry-for-entry equality."""
    mats, _ = MR_SETS[name]
    lookup = {tuple(map(tuple, rows)): key for key, rows in mats.items()}
    return {i: lookup.get(tuple(map(tuple, m.to_lists()))) for i, m in enumerate(mrset.matrices)}


def named_indices(mrset, name, labels):
    """Engine indices of the given printed labels, as a set."""
    inv = {v: k for k, v in printed_names(mrset, name).items()}
    return {inv[label] for label in labels}
