"""Helpers shared by several test modules."""

import dataclasses
import itertools
from fractions import Fraction

from hopfsquare import config, examples, groups
from hopfsquare.exactla import LinMap
from hopfsquare.square import axiom_verdicts, check_crossed_square
from hopfsquare.xmod import check_crossed_module

S3_SQUARE = groups.normal_pair_square(groups.symmetric(3), [0, 4, 5], list(range(6)))
V4_SQUARE = groups.normal_pair_square(groups.klein(), [0, 1], [0, 2])

TABLE_CODOMAIN = {"lam": "M", "lamp": "N", "mu": "P", "nu": "P", "actPL": "L", "actPM": "M",
                  "actPN": "N", "h": "L"}


def matrix_map(rows, field=None):
    """LinMap whose column j is column j of ``rows``."""
    n_out, n_in = len(rows), len(rows[0])
    co = (lambda x: x) if field is None else field.coerce
    return LinMap(n_in, n_out, columns=[{i: co(rows[i][j]) for i in range(n_out) if rows[i][j]}
                                        for j in range(n_in)])


def rational_map(rows):
    return matrix_map([[Fraction(x) for x in r] for r in rows])


def corrupt(g, name: str, i: int, j: int, value: int):
    """Copy of a group square or crossed module with one table entry replaced."""
    table = getattr(g, name)
    if isinstance(table[0], tuple):
        rows = [list(r) for r in table]
        rows[i % len(rows)][j % len(rows[0])] = value
        new = tuple(map(tuple, rows))
    else:
        row = list(table)
        row[i % len(row)] = value
        new = tuple(row)
    return dataclasses.replace(g, **{name: new})


SQUARE_TAGS = {"(i)": "CS1", "equivariance": "CS2", "(v)": "CS3", "(ii)": "CS4", "(iii)": "CS5",
               "(iv)": "CS6", "homomorphisms": "hom", "commutes": "commutes"}

S3_XMOD = examples.group_xmod("conj_a3_s3")



def square_verdicts_agree(g) -> tuple[dict, dict]:
    group = groups.check_group_square(g)
    with config.configured(paranoid="off"):
        sq = examples.lift_group_square(g, validate=False)
    hopf = axiom_verdicts(check_crossed_square(sq, consequences=False))
    return {SQUARE_TAGS[k]: v for k, v in group.items()}, {k: hopf[k] for k in SQUARE_TAGS.values()}


def xmod_verdicts(g) -> tuple[dict, dict]:
    group = groups.check_group_xmod(g)
    rep = check_crossed_module(examples.lift_group_xmod(g, validate=False))
    tags: dict = {}
    for e in rep.entries:
        key = e.name.split(":")[0]
        tags[key] = tags.get(key, True) and e.passed
    folded = {"act": all(v for k, v in group.items() if k.startswith("action:")),
              "d": group["d:homomorphism"], "CM1": group["CM1"], "CM2": group["CM2"]}
    return folded, tags


def semidirect_pullback_size(g: groups.GroupCrossedModule) -> int:
    """Pairs ((x,b),(x',b')) with b = d(x') b', counted element by element."""
    B, X = g.B, g.X
    elems = list(itertools.product(range(X.order), range(B.order)))
    return sum(1 for (x, b), (x2, b2) in itertools.product(elems, elems) if b == B.mul(g.d[x2], b2))
