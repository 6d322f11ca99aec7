"""Site and edge literals for the named kagome patches.

Rectangular patches carry the square-grid cell ``(row, col)`` of every site
(site id = row * cols + col). Positions are true kagome coordinates with unit
nearest-neighbour spacing. ``path`` lists the straight chain of sites used for
correlation profiles.
"""

PATCHES = {
    "2x4": {
        "shape": (2, 4),
        "sites": [
            (0, 0.0, 0.8660254037844386, (0, 0)),
            (1, 0.5, 0.0, (0, 1)),
            (2, 1.5, 0.0, (0, 2)),
            (3, 2.0, 0.8660254037844386, (0, 3)),
            (4, 0.5, 1.7320508075688772, (1, 0)),
            (5, 1.0, 2.598076211353316, (1, 1)),
            (6, 1.5, 1.7320508075688772, (1, 2)),
            (7, 2.5, 1.7320508075688772, (1, 3)),
        ],
        "edges": [
            (0, 1), (0, 4), (1, 2), (2, 3), (3, 6), (3, 7), (4, 5), (4, 6),
            (5, 6), (6, 7),
        ],
        "path": [1, 2],
    },
    "2x6": {
        "shape": (2, 6),
        "sites": [
            (0, 0.0, 0.8660254037844386, (0, 0)),
            (1, 0.5, 0.0, (0, 1)),
            (2, 1.5, 0.0, (0, 2)),
            (3, 2.0, 0.8660254037844386, (0, 3)),
            (4, 2.5, 0.0, (0, 4)),
            (5, 3.5, 0.0, (0, 5)),
            (6, 0.5, 1.7320508075688772, (1, 0)),
            (7, 1.0, 2.598076211353316, (1, 1)),
            (8, 1.5, 1.7320508075688772, (1, 2)),
            (9, 2.5, 1.7320508075688772, (1, 3)),
            (10, 3.0, 2.598076211353316, (1, 4)),
            (11, 3.5, 1.7320508075688772, (1, 5)),
        ],
        "edges": [
            (0, 1), (0, 6), (1, 2), (2, 3), (2, 4), (3, 4), (3, 8), (3, 9),
            (4, 5), (6, 7), (6, 8), (7, 8), (8, 9), (9, 10), (9, 11), (10, 11),
        ],
        "path": [1, 2, 4, 5],
    },
    "2x8": {
        "shape": (2, 8),
        "sites": [
            (0, 0.0, 0.8660254037844386, (0, 0)),
            (1, 0.5, 0.0, (0, 1)),
            (2, 1.5, 0.0, (0, 2)),
            (3, 2.0, 0.8660254037844386, (0, 3)),
            (4, 2.5, 0.0, (0, 4)),
            (5, 3.5, 0.0, (0, 5)),
            (6, 4.0, 0.8660254037844386, (0, 6)),
            (7, 4.5, 0.0, (0, 7)),
            (8, 0.5, 1.7320508075688772, (1, 0)),
            (9, 1.0, 2.598076211353316, (1, 1)),
            (10, 1.5, 1.7320508075688772, (1, 2)),
            (11, 2.5, 1.7320508075688772, (1, 3)),
            (12, 3.0, 2.598076211353316, (1, 4)),
            (13, 3.5, 1.7320508075688772, (1, 5)),
            (14, 4.5, 1.7320508075688772, (1, 6)),
            (15, 5.0, 2.598076211353316, (1, 7)),
        ],
        "edges": [
            (0, 1), (0, 8), (1, 2), (2, 3), (2, 4), (3, 4), (3, 10), (3, 11),
            (4, 5), (5, 6), (5, 7), (6, 7), (6, 13), (6, 14), (8, 9), (8, 10),
            (9, 10), (10, 11), (11, 12), (11, 13), (12, 13), (13, 14), (14, 15),
        ],
        "path": [1, 2, 4, 5, 7],
    },
    "3x6": {
        "shape": (3, 6),
        "sites": [
            (0, 0.0, 0.8660254037844386, (0, 0)),
            (1, 0.5, 0.0, (0, 1)),
            (2, 1.5, 0.0, (0, 2)),
            (3, 2.0, 0.8660254037844386, (0, 3)),
            (4, 2.5, 0.0, (0, 4)),
            (5, 3.5, 0.0, (0, 5)),
            (6, 0.5, 1.7320508075688772, (1, 0)),
            (7, 1.0, 2.598076211353316, (1, 1)),
            (8, 1.5, 1.7320508075688772, (1, 2)),
            (9, 2.5, 1.7320508075688772, (1, 3)),
            (10, 3.0, 2.598076211353316, (1, 4)),
            (11, 3.5, 1.7320508075688772, (1, 5)),
            (12, 0.5, 3.4641016151377544, (2, 0)),
            (13, 1.5, 3.4641016151377544, (2, 1)),
            (14, 2.0, 4.330127018922193, (2, 2)),
            (15, 2.5, 3.4641016151377544, (2, 3)),
            (16, 3.5, 3.4641016151377544, (2, 4)),
            (17, 4.0, 4.330127018922193, (2, 5)),
        ],
        "edges": [
            (0, 1), (0, 6), (1, 2), (2, 3), (2, 4), (3, 4), (3, 8), (3, 9),
            (4, 5), (6, 7), (6, 8), (7, 8), (7, 12), (7, 13), (8, 9), (9, 10),
            (9, 11), (10, 11), (10, 15), (10, 16), (12, 13), (13, 14), (13, 15), (14, 15),
            (15, 16), (16, 17),
        ],
        "path": [6, 8, 9, 11],
    },
    "2x10": {
        "shape": (2, 10),
        "sites": [
            (0, 0.0, 0.8660254037844386, (0, 0)),
            (1, 0.5, 0.0, (0, 1)),
            (2, 1.5, 0.0, (0, 2)),
            (3, 2.0, 0.8660254037844386, (0, 3)),
            (4, 2.5, 0.0, (0, 4)),
            (5, 3.5, 0.0, (0, 5)),
            (6, 4.0, 0.8660254037844386, (0, 6)),
            (7, 4.5, 0.0, (0, 7)),
            (8, 5.5, 0.0, (0, 8)),
            (9, 6.0, 0.8660254037844386, (0, 9)),
            (10, 0.5, 1.7320508075688772, (1, 0)),
            (11, 1.0, 2.598076211353316, (1, 1)),
            (12, 1.5, 1.7320508075688772, (1, 2)),
            (13, 2.5, 1.7320508075688772, (1, 3)),
            (14, 3.0, 2.598076211353316, (1, 4)),
            (15, 3.5, 1.7320508075688772, (1, 5)),
            (16, 4.5, 1.7320508075688772, (1, 6)),
            (17, 5.0, 2.598076211353316, (1, 7)),
            (18, 5.5, 1.7320508075688772, (1, 8)),
            (19, 6.5, 1.7320508075688772, (1, 9)),
        ],
        "edges": [
            (0, 1), (0, 10), (1, 2), (2, 3), (2, 4), (3, 4), (3, 12), (3, 13),
            (4, 5), (5, 6), (5, 7), (6, 7), (6, 15), (6, 16), (7, 8), (8, 9),
            (9, 18), (9, 19), (10, 11), (10, 12), (11, 12), (12, 13), (13, 14), (13, 15),
            (14, 15), (15, 16), (16, 17), (16, 18), (17, 18), (18, 19),
        ],
        "path": [1, 2, 4, 5, 7, 8],
    },
    "3x8": {
        "shape": (3, 8),
        "sites": [
            (0, 0.0, 0.8660254037844386, (0, 0)),
            (1, 0.5, 0.0, (0, 1)),
            (2, 1.5, 0.0, (0, 2)),
            (3, 2.0, 0.8660254037844386, (0, 3)),
            (4, 2.5, 0.0, (0, 4)),
            (5, 3.5, 0.0, (0, 5)),
            (6, 4.0, 0.8660254037844386, (0, 6)),
            (7, 4.5, 0.0, (0, 7)),
            (8, 0.5, 1.7320508075688772, (1, 0)),
            (9, 1.0, 2.598076211353316, (1, 1)),
            (10, 1.5, 1.7320508075688772, (1, 2)),
            (11, 2.5, 1.7320508075688772, (1, 3)),
            (12, 3.0, 2.598076211353316, (1, 4)),
            (13, 3.5, 1.7320508075688772, (1, 5)),
            (14, 4.5, 1.7320508075688772, (1, 6)),
            (15, 5.0, 2.598076211353316, (1, 7)),
            (16, 0.5, 3.4641016151377544, (2, 0)),
            (17, 1.5, 3.4641016151377544, (2, 1)),
            (18, 2.0, 4.330127018922193, (2, 2)),
            (19, 2.5, 3.4641016151377544, (2, 3)),
            (20, 3.5, 3.4641016151377544, (2, 4)),
            (21, 4.0, 4.330127018922193, (2, 5)),
            (22, 4.5, 3.4641016151377544, (2, 6)),
            (23, 5.5, 3.4641016151377544, (2, 7)),
        ],
        "edges": [
            (0, 1), (0, 8), (1, 2), (2, 3), (2, 4), (3, 4), (3, 10), (3, 11),
            (4, 5), (5, 6), (5, 7), (6, 7), (6, 13), (6, 14), (8, 9), (8, 10),
            (9, 10), (9, 16), (9, 17), (10, 11), (11, 12), (11, 13), (12, 13), (12, 19),
            (12, 20), (13, 14), (14, 15), (15, 22), (15, 23), (16, 17), (17, 18), (17, 19),
            (18, 19), (19, 20), (20, 21), (20, 22), (21, 22), (22, 23),
        ],
        "path": [8, 10, 11, 13, 14],
    },
    "tri1": {
        "shape": None,
        "sites": [
            (0, 0.5, 0.0, None),
            (1, 1.5, 0.0, None),
            (2, 2.5, 0.0, None),
            (3, 3.5, 0.0, None),
            (4, 0.0, 0.8660254037844386, None),
            (5, 2.0, 0.8660254037844386, None),
            (6, 4.0, 0.8660254037844386, None),
            (7, 0.5, 1.7320508075688772, None),
            (8, 1.5, 1.7320508075688772, None),
            (9, 2.5, 1.7320508075688772, None),
            (10, 3.5, 1.7320508075688772, None),
            (11, 1.0, 2.598076211353316, None),
            (12, 3.0, 2.598076211353316, None),
            (13, 1.5, 3.4641016151377544, None),
            (14, 2.5, 3.4641016151377544, None),
        ],
        "edges": [
            (0, 1), (0, 4), (1, 2), (1, 5), (2, 3), (2, 5), (3, 6), (4, 7),
            (5, 8), (5, 9), (6, 10), (7, 8), (7, 11), (8, 9), (8, 11), (9, 10),
            (9, 12), (10, 12), (11, 13), (12, 14), (13, 14),
        ],
        "path": [],
    },
    "tri2": {
        "shape": None,
        "sites": [
            (0, 1.5, 0.0, None),
            (1, 2.5, 0.0, None),
            (2, 3.5, 0.0, None),
            (3, 4.5, 0.0, None),
            (4, 1.0, 0.8660254037844386, None),
            (5, 3.0, 0.8660254037844386, None),
            (6, 5.0, 0.8660254037844386, None),
            (7, 0.5, 1.7320508075688772, None),
            (8, 1.5, 1.7320508075688772, None),
            (9, 2.5, 1.7320508075688772, None),
            (10, 3.5, 1.7320508075688772, None),
            (11, 4.5, 1.7320508075688772, None),
            (12, 0.0, 2.598076211353316, None),
            (13, 2.0, 2.598076211353316, None),
            (14, 4.0, 2.598076211353316, None),
            (15, 0.5, 3.4641016151377544, None),
            (16, 1.5, 3.4641016151377544, None),
            (17, 2.5, 3.4641016151377544, None),
            (18, 3.5, 3.4641016151377544, None),
        ],
        "edges": [
            (0, 1), (0, 4), (1, 2), (1, 5), (2, 3), (2, 5), (3, 6), (4, 7),
            (4, 8), (5, 9), (5, 10), (6, 11), (7, 8), (7, 12), (8, 9), (8, 13),
            (9, 10), (9, 13), (10, 11), (10, 14), (11, 14), (12, 15), (13, 16), (13, 17),
            (14, 18), (15, 16), (16, 17), (17, 18),
        ],
        "path": [],
    },
    "tri3": {
        "shape": None,
        "sites": [
            (0, 2.5, 0.0, None),
            (1, 3.5, 0.0, None),
            (2, 2.0, 0.8660254037844384, None),
            (3, 4.0, 0.8660254037844384, None),
            (4, 1.5, 1.7320508075688772, None),
            (5, 2.5, 1.7320508075688772, None),
            (6, 3.5, 1.7320508075688772, None),
            (7, 4.5, 1.7320508075688772, None),
            (8, 1.0, 2.598076211353316, None),
            (9, 3.0, 2.598076211353316, None),
            (10, 5.0, 2.598076211353316, None),
            (11, 0.5, 3.4641016151377544, None),
            (12, 1.5, 3.4641016151377544, None),
            (13, 2.5, 3.4641016151377544, None),
            (14, 3.5, 3.4641016151377544, None),
            (15, 4.5, 3.4641016151377544, None),
            (16, 0.0, 4.330127018922193, None),
            (17, 2.0, 4.330127018922193, None),
            (18, 4.0, 4.330127018922193, None),
            (19, 0.5, 5.196152422706632, None),
            (20, 1.5, 5.196152422706632, None),
            (21, 2.5, 5.196152422706632, None),
            (22, 3.5, 5.196152422706632, None),
        ],
        "edges": [
            (0, 1), (0, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7), (4, 5),
            (4, 8), (5, 6), (5, 9), (6, 7), (6, 9), (7, 10), (8, 11), (8, 12),
            (9, 13), (9, 14), (10, 15), (11, 12), (11, 16), (12, 13), (12, 17), (13, 14),
            (13, 17), (14, 15), (14, 18), (15, 18), (16, 19), (17, 20), (17, 21), (18, 22),
            (19, 20), (20, 21), (21, 22),
        ],
        "path": [],
    },
}
