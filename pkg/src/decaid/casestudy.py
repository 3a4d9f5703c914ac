"""Built-in demonstration dataset: 21 social housing projects on 10 criteria.

Evaluations, reference levels and the two published judgment matrices are
kept exactly as elicited.  For the eight criteria whose full matrices were
never published, perfectly consistent stand-ins are generated from the
published normalized reference values, so the whole pipeline runs end to
end and lands on the published normalized table.
"""

from __future__ import annotations

from fractions import Fraction as F

from . import store
from .ahp import PairwiseMatrix, from_grid
from .naror import statement
from .scales import CriterionSpec

CRITERIA = (
    CriterionSpec("C1", "Overall consistency", "maximize", 0.0, 10.0),
    CriterionSpec("C2", "Quality of the design project", "maximize", 0.0, 15.0),
    # scores run to 24 beds and the top reference level is 25, so the
    # scale ceiling is 25 even though the summary sheet printed 10
    CriterionSpec("C3", "Beds", "maximize", 0.0, 25.0),
    CriterionSpec("C4", "Economic consistency", "maximize", 0.0, 15.0),
    CriterionSpec("C5", "Euros/beds", "minimize", 0.0, 20000.0, numeric=True),
    CriterionSpec("C6", "Clarity and innovation", "maximize", 0.0, 15.0),
    CriterionSpec("C7", "Human resources", "minimize", 0.0, 10.0),
    CriterionSpec("C8", "Social tools and methodologies", "maximize", 0.0, 25.0),
    CriterionSpec("C9", "Economic sustainability", "maximize", 0.0, 10.0),
    CriterionSpec("C10", "Synergies", "maximize", 0.0, 15.0),
)

CRITERION_IDS = tuple(c.id for c in CRITERIA)

ALTERNATIVE_IDS = tuple(f"P{i}" for i in range(1, 22))

# raw performance ratings, one row per project, criterion order C1..C10
RATINGS = {
    "P1": (9, 12, 24, 10, 7500, 12, 8, 18, 8, 8),
    "P2": (10, 0, 6, 5, 8450, 9, 6, 12, 10, 13),
    "P3": (8, 11, 8, 8, 17000, 10, 6, 15, 2, 15),
    "P4": (10, 8, 20, 10, 2900, 13, 8, 10, 8, 10),
    "P5": (8, 6, 6, 8, 17500, 10, 6, 20, 2, 5),
    "P6": (5, 1, 8, 6, 9500, 14, 10, 25, 8, 10),
    "P7": (10, 6, 5, 4, 3260, 12, 8, 17, 7, 5),
    "P8": (10, 8, 10, 7, 7500, 10, 6, 12, 3, 13),
    "P9": (7, 4, 20, 9, 4750, 11, 8, 13, 3, 9),
    "P10": (8, 8, 21, 7, 6667, 11, 10, 15, 0, 14),
    "P11": (9, 8, 8, 8, 12500, 15, 9, 23, 5, 10),
    "P12": (10, 5, 8, 9, 20000, 1, 2, 2, 0, 4),
    "P13": (10, 13, 15, 8, 8000, 9, 5, 14, 10, 11),
    "P14": (10, 4, 8, 7, 15000, 7, 6, 12, 6, 6),
    "P15": (8, 5, 7, 6, 8714, 14, 8, 21, 2, 12),
    "P16": (8, 11, 8, 9, 12500, 7, 6, 15, 0, 10),
    "P17": (7, 4, 24, 7, 5000, 6, 7, 15, 6, 10),
    "P18": (7, 2, 4, 7, 13750, 13, 10, 22, 0, 1),
    "P19": (9, 14, 23, 10, 6957, 9, 5, 14, 6, 6),
    "P20": (8, 8, 23, 6, 7609, 6, 2, 13, 5, 8),
    "P21": (5, 7, 15, 5, 4000, 6, 3, 5, 2, 3),
}

REFERENCES = {
    "C1": (0, 5, 8, 10),
    "C2": (0, 5, 8, 10, 15),
    "C3": (4, 7, 10, 20, 25),
    "C4": (0, 4, 8, 10),
    "C5": (2500, 5000, 10000, 15000, 20000),
    "C6": (0, 7, 11, 15),
    "C7": (0, 5, 7, 10),
    "C8": (0, 10, 20, 25),
    "C9": (0, 5, 7, 10),
    "C10": (0, 7, 11, 15),
}

# published normalized values of the reference levels, in level order
REFERENCE_VALUES = {
    "C1": (0.0, 0.2060, 0.6398, 1.0),
    "C2": (0.0, 0.1165, 0.4929, 0.8203, 1.0),
    "C3": (0.0, 0.0881, 0.3664, 1.0, 1.0),
    "C4": (0.0, 0.2505, 0.6941, 1.0),
    "C5": (1.0, 0.5473, 0.2314, 0.0317, 0.0),
    "C6": (0.0, 0.1807, 0.4630, 1.0),
    "C7": (0.0, 0.1852, 0.1516, 1.0),
    "C8": (0.0, 0.1111, 0.5591, 1.0),
    "C9": (0.0, 0.1618, 0.6143, 1.0),
    "C10": (0.0, 0.1202, 0.5347, 1.0),
}

# published normalized project evaluations, criterion order C1..C10;
# P11's C5 cell is corrected from the printed 0.1632: the 12,500 rating
# interpolates to 0.1316, exactly as P16's identical rating does
NORMALIZED_EXPECTED = {
    "P1": (0.8199, 0.8922, 1, 1, 0.3894, 0.5973, 0.4344, 0.4695, 0.7429, 0.2238),
    "P2": (1, 0, 0.0587, 0.3614, 0.3293, 0.3218, 0.1684, 0.2007, 1, 0.7674),
    "P3": (0.6398, 0.8563, 0.1809, 0.6941, 0.0190, 0.3924, 0.1684, 0.3351, 0.0647, 1),
    "P4": (1, 0.4929, 1, 1, 0.9276, 0.7315, 0.4344, 0.1111, 0.7429, 0.4311),
    "P5": (0.6398, 0.2420, 0.0587, 0.6941, 0.0158, 0.3924, 0.1684, 0.5591, 0.0647, 0.0858),
    "P6": (0.2060, 0.0233, 0.1809, 0.4723, 0.2630, 0.8658, 1, 1, 0.7429, 0.4311),
    "P7": (1, 0.2420, 0.0294, 0.2505, 0.8624, 0.5973, 0.4344, 0.4247, 0.6143, 0.0858),
    "P8": (1, 0.4929, 0.3664, 0.5832, 0.3894, 0.3924, 0.1684, 0.2007, 0.0971, 0.7674),
    "P9": (0.4952, 0.0932, 1, 0.8470, 0.5926, 0.4630, 0.4344, 0.2455, 0.0971, 0.3274),
    "P10": (0.6398, 0.4929, 1, 0.5832, 0.4420, 0.4630, 1, 0.3351, 0, 0.8837),
    "P11": (0.8199, 0.4929, 0.1809, 0.6941, 0.1316, 1, 0.7172, 0.8236, 0.1618, 0.4311),
    "P12": (1, 0.1165, 0.1809, 0.8470, 0, 0.0258, 0.0741, 0.0222, 0, 0.0687),
    "P13": (1, 0.9281, 0.6832, 0.6941, 0.3578, 0.3218, 0.1852, 0.2903, 1, 0.5347),
    "P14": (1, 0.0932, 0.1809, 0.5832, 0.0317, 0.1807, 0.1684, 0.2007, 0.3880, 0.1030),
    "P15": (0.6398, 0.1165, 0.0881, 0.4723, 0.3126, 0.8658, 0.4344, 0.6473, 0.0647, 0.6510),
    "P16": (0.6398, 0.8563, 0.1809, 0.8470, 0.1315, 0.1807, 0.1684, 0.3351, 0, 0.4311),
    "P17": (0.4952, 0.0932, 1, 0.5832, 0.5473, 0.1549, 0.1516, 0.3351, 0.3880, 0.4311),
    "P18": (0.4952, 0.0466, 0, 0.5832, 0.0816, 0.7315, 1, 0.7355, 0, 0.0172),
    "P19": (0.8199, 0.9641, 1, 1, 0.4237, 0.3218, 0.1852, 0.2903, 0.3880, 0.1030),
    "P20": (0.6398, 0.4929, 1, 0.4723, 0.3825, 0.1549, 0.0741, 0.2455, 0.1618, 0.2238),
    "P21": (0.2060, 0.3674, 0.6832, 0.3614, 0.7284, 0.1549, 0.1111, 0.0556, 0.0647, 0.0515),
}

# the two judgment matrices published in full (items are reference levels)
C3_MATRIX = from_grid(
    (F(25), F(20), F(10), F(7), F(4)),
    (
        (1, 1, 3, 7, 9),
        (1, 1, 3, 7, 9),
        (F(1, 3), F(1, 3), 1, 3, 7),
        (F(1, 7), F(1, 7), F(1, 3), 1, 3),
        (F(1, 9), F(1, 9), F(1, 7), F(1, 3), 1),
    ),
)

C5_MATRIX = from_grid(
    (F(2500), F(5000), F(10000), F(15000), F(20000)),
    (
        (1, 3, 5, 7, 8),
        (F(1, 3), 1, 4, 6, 7),
        (F(1, 5), F(1, 4), 1, 5, 6),
        (F(1, 7), F(1, 6), F(1, 5), 1, 2),
        (F(1, 8), F(1, 7), F(1, 6), F(1, 2), 1),
    ),
)

# elicited interaction statements: all nine pairs interact positively
INTERACTIONS = (
    ("C7", "C10"), ("C6", "C9"), ("C3", "C5"), ("C3", "C9"), ("C7", "C9"),
    ("C3", "C7"), ("C1", "C6"), ("C3", "C4"), ("C6", "C7"),
)

# first elicitation round: two partial importance chains
SOCIAL_CHAIN = ("C8", "C7", "C6", "C9", "C10")
TECHNICAL_CHAIN = ("C1", "C4", "C2", "C5", "C3")

# final round: one overall importance chain plus project preferences
OVERALL_CHAIN = ("C8", "C1", "C7", "C6", "C4", "C2", "C9", "C5", "C10", "C3")
PROJECT_CHAIN = ("P1", "P4", "P10", "P19", "P6", "P11")


def synthetic_matrix(criterion: str) -> PairwiseMatrix:
    """Perfectly consistent matrix reproducing the published scale values.

    Entries are ratios (u_r + 1/4) / (u_s + 1/4) of shifted normalized
    values, built in exact rationals.  A consistent matrix's eigenvector
    is its ratio base, so min-max normalization lands back on the
    published values regardless of the shift.
    """
    levels = REFERENCES[criterion]
    values = REFERENCE_VALUES[criterion]
    shifted = [F(str(v)) + F(1, 4) for v in values]
    rows = tuple(
        tuple(wr / ws for ws in shifted) for wr in shifted
    )
    return PairwiseMatrix(tuple(F(l) for l in levels), rows)


def reference_matrix(criterion: str) -> PairwiseMatrix:
    if criterion == "C3":
        return C3_MATRIX
    if criterion == "C5":
        return C5_MATRIX
    return synthetic_matrix(criterion)


def _chain_statements(chain, kind):
    return [statement(kind, a, b) for a, b in zip(chain, chain[1:])]


def interaction_statements():
    return [statement("interaction_positive", i, j) for i, j in INTERACTIONS]


def first_round_statements():
    """Nine interactions plus the social and technical importance chains."""
    out = interaction_statements()
    out += _chain_statements(SOCIAL_CHAIN, "importance_strict")
    out += _chain_statements(TECHNICAL_CHAIN, "importance_strict")
    return out


def final_round_statements():
    """Interactions, the overall importance chain and the project chain."""
    out = interaction_statements()
    out += _chain_statements(OVERALL_CHAIN, "importance_strict")
    out += _chain_statements(PROJECT_CHAIN, "strict_pref")
    chain = set(PROJECT_CHAIN)
    last = PROJECT_CHAIN[-1]
    for alt in ALTERNATIVE_IDS:
        if alt not in chain:
            out.append(statement("weak_pref", last, alt))
    return out


def build_project(round: str = "final") -> "store.Project":
    """Assemble the demonstration project.

    ``round`` picks the statement set: "none" (scales only), "first"
    (partial chains) or "final" (overall chain and project preferences).
    """
    project = store.new_project("social-housing")
    store.set_criteria(project, CRITERIA)
    store.set_alternatives(project, ALTERNATIVE_IDS)
    for alt in ALTERNATIVE_IDS:
        store.set_ratings(
            project, alt,
            {c: F(v) for c, v in zip(CRITERION_IDS, RATINGS[alt])},
        )
    for crit in CRITERION_IDS:
        store.set_references(project, crit, [F(l) for l in REFERENCES[crit]])
        store.put_matrix(project, crit, reference_matrix(crit))
    if round == "first":
        chosen = first_round_statements()
    elif round == "final":
        chosen = final_round_statements()
    elif round == "none":
        chosen = []
    else:
        raise ValueError(f"unknown round {round!r}")
    for st in chosen:
        store.add_statement(project, st)
    return project
