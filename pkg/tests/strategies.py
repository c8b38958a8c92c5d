"""Hypothesis strategies for grammar-denotable terms and states.

Sequencing has no grouping syntax, so generated commands keep ``Seq``
right-nested, exactly the shapes the parser can produce; everything the
strategies build must survive a render/parse round trip.
"""

from __future__ import annotations

from hypothesis import strategies as st

from impslice import (HOLE, Add, And, Assign, Eq, FalseLit, If, Leq, Mul,
                      NatLit, Not, PartialState, Seq, Skip, State, Sub,
                      TrueLit, VarRead, While)

names = st.sampled_from(["x", "y", "z", "acc", "n", "Total", "v_2"])
naturals = st.integers(min_value=0, max_value=999)


def aexps(max_depth: int = 4, holes: bool = False):
    leaves = [st.builds(NatLit, naturals), st.builds(VarRead, names)]
    if holes:
        leaves.append(st.just(HOLE))
    return st.recursive(
        st.one_of(*leaves),
        lambda sub: st.one_of(st.builds(Add, sub, sub),
                              st.builds(Sub, sub, sub),
                              st.builds(Mul, sub, sub)),
        max_leaves=max_depth * 2)


def bexps(max_depth: int = 4, holes: bool = False):
    arith = aexps(max_depth=2, holes=holes)
    leaves = [st.builds(TrueLit), st.builds(FalseLit),
              st.builds(Eq, arith, arith), st.builds(Leq, arith, arith)]
    if holes:
        leaves.append(st.just(HOLE))
    return st.recursive(
        st.one_of(*leaves),
        lambda sub: st.one_of(st.builds(Not, sub),
                              st.builds(And, sub, sub)),
        max_leaves=max_depth)


def commands(max_depth: int = 6, holes: bool = False):
    arith = aexps(max_depth=2, holes=holes)
    cond = bexps(max_depth=2, holes=holes)
    simple = [st.builds(Skip), st.builds(Assign, names, arith)]
    if holes:
        simple.append(st.just(HOLE))

    def extend(sub):
        # Right-nested sequencing only: Seq(simple-ish, rest).
        head = st.one_of(*simple,
                         st.builds(If, cond, sub, sub),
                         st.builds(While, cond, sub))
        return st.one_of(st.builds(If, cond, sub, sub),
                         st.builds(While, cond, sub),
                         st.builds(Seq, head, sub))

    return st.recursive(st.one_of(*simple), extend, max_leaves=max_depth)


def states(max_vars: int = 4):
    return st.lists(names, unique=True, max_size=max_vars).map(
        lambda vs: State(tuple((v, i + 1) for i, v in enumerate(vs))))


def partial_states(max_vars: int = 4):
    values = st.one_of(st.none(), naturals)

    @st.composite
    def build(draw):
        vs = draw(st.lists(names, unique=True, max_size=max_vars))
        return PartialState(tuple((v, draw(values)) for v in vs))

    return build()
