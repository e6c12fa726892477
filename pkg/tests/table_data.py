"""Reference short list: (row, k, ascending coefficients of p_k)."""

TABLE1 = [
    ("2.1", (-1, 1), (0, 0, 1)),
    ("3.1", (1, -1, 1), (0, -1, 0, 1)),
    ("3.2", (-1, -1, 1), (0, 1, 0, 1)),
    ("4.1", (1, 1, -1, 1), (0, 0, -2, 0, 1)),
    ("4.2", (-1, -1, -1, 1), (0, 0, 2, 0, 1)),
    ("5.1", (1, 1, 1, -1, 1), (0, 1, 0, -3, 0, 1)),
    ("5.2", (1, -1, 1, -1, 1), (0, 1, 0, -1, 0, 1)),
    ("5.3", (-1, 1, -1, -1, 1), (0, 1, 0, 1, 0, 1)),
    ("5.4", (-1, -1, -1, -1, 1), (0, 1, 0, 3, 0, 1)),
    ("6.1", (1, 1, 1, 1, -1, 1), (0, 0, 3, 0, -4, 0, 1)),
    ("6.2", (1, -1, -1, 1, -1, 1), (0, 0, -1, 0, 0, 0, 1)),
    ("6.3", (-1, -1, -1, -1, -1, 1), (0, 0, 3, 0, 4, 0, 1)),
    ("7.1", (1, 1, 1, 1, 1, -1, 1), (0, -1, 0, 6, 0, -5, 0, 1)),
    ("7.2", (1, 1, -1, 1, 1, -1, 1), (0, 1, 0, 2, 0, -3, 0, 1)),
    ("7.3", (1, -1, 1, -1, 1, -1, 1), (0, -1, 0, 2, 0, -1, 0, 1)),
    ("7.4", (1, -1, -1, -1, 1, -1, 1), (0, 1, 0, -2, 0, 1, 0, 1)),
    ("7.5", (-1, 1, 1, 1, -1, -1, 1), (0, -1, 0, -2, 0, -1, 0, 1)),
    ("7.6", (-1, 1, -1, 1, -1, -1, 1), (0, 1, 0, 2, 0, 1, 0, 1)),
    ("7.7", (-1, -1, 1, -1, -1, -1, 1), (0, -1, 0, 2, 0, 3, 0, 1)),
    ("7.8", (-1, -1, -1, -1, -1, -1, 1), (0, 1, 0, 6, 0, 5, 0, 1)),
]

COUNTS_2_TO_7 = (1, 2, 2, 4, 3, 8)
