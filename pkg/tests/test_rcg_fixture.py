"""End-to-end checks on the request/cancel/grant arbiter fixture.

The fixture's Buchi objective is meant to encode the temporal contract

    always (req -> next eventually grant)
    and always ((cancel or grant) -> next not grant)

over the joint alphabet.  These tests tie the three views of that contract
together: plays of the game graph, lasso words under the formula evaluator,
and the assumption automaton composed with the synthesized system strategy.
"""

from __future__ import annotations

import random
from functools import lru_cache

from assumekit.fixtures import f_rcg
from assumekit.game import (
    LassoPlay,
    Owner,
    letter_successor,
    strategy_to_moore,
    validate_play,
    word_of_play,
)
from assumekit.pipeline import combined_assumption, lasso_member

from lasso_ltl import holds, request_grant_spec


@lru_cache(maxsize=1)
def arbiter():
    return f_rcg()


@lru_cache(maxsize=1)
def arbiter_assumption():
    return combined_assumption(arbiter())


def random_lasso(sg, rng):
    """Random walk from the initial state, cut at the first repeated state."""
    g = sg.graph
    path = [sg.initial]
    seen = {sg.initial: 0}
    while True:
        nxt = rng.choice(g.succ(path[-1]))
        if nxt in seen:
            i = seen[nxt]
            return LassoPlay(stem=tuple(path[:i]), cycle=tuple(path[i:]))
        seen[nxt] = len(path)
        path.append(nxt)


def buchi_accepts(sg, play):
    return bool(set(play.cycle) & set(sg.objective.target))


def formula_holds(sg, play):
    word = word_of_play(sg, play)
    return holds(request_grant_spec(), word.stem, word.cycle)


class TestStructure:
    def test_shape(self):
        sg = arbiter()
        g = sg.graph
        assert len(g.states) == 28
        assert len(g.states_of(Owner.P1)) == 20
        assert len(g.states_of(Owner.P2)) == 8
        assert sg.initial == "q_p0b0_in"
        assert sg.inputs == ("cancel", "req")
        assert sg.outputs == ("grant",)

    def test_alternation(self):
        g = arbiter().graph
        for u, v in g.edges:
            assert g.owner[u] is not g.owner[v]

    def test_acceptance_set(self):
        sg = arbiter()
        assert sg.objective.kind.value == "Buchi"
        expected = {
            "q_p0b0_ic",
            "q_p0b0_in",
            "q_p0b0_ir",
            "q_p0b0_irc",
            "q_p0b1_ic",
            "q_p0b1_in",
            "q_p0b1_ir",
            "q_p0b1_irc",
            "t_p0b0_og",
            "t_p1b0_og",
        }
        assert set(sg.objective.target) == expected

    def test_labels_follow_the_id_tags(self):
        g = arbiter().graph
        assert g.label["q_p1b0_ir"] == frozenset({"req"})
        assert g.label["q_p0b0_ic"] == frozenset({"cancel"})
        assert g.label["q_p1b0_irc"] == frozenset({"cancel", "req"})
        assert g.label["q_p0b1_in"] == frozenset()
        assert g.label["t_p0b0_og"] == frozenset({"grant"})
        assert g.label["t_p1b1_on"] == frozenset()

    def test_granting_while_blocked_falls_into_the_dead_region(self):
        g = arbiter().graph
        # A grant made the move before (b=1): the only grant-labeled
        # successor is the absorbing dead branch.
        grant_succ = [t for t in g.succ("q_p0b1_in") if "grant" in g.label[t]]
        assert grant_succ == ["dead_og"]
        dead = {s for s in g.states if s.startswith("dead_")}
        assert len(dead) == 6
        for s in dead:
            assert set(g.succ(s)) <= dead
        assert not dead & set(arbiter().objective.target)

    def test_grant_resets_the_pending_bit(self):
        g = arbiter().graph
        # After a grant with no new request the pending bit is clear.
        assert letter_successor(arbiter(), "t_p1b0_og", frozenset()) == "q_p0b1_in"
        # A request issued together with the grant pends again.
        assert (
            letter_successor(arbiter(), "t_p1b0_og", frozenset({"req"}))
            == "q_p1b1_ir"
        )


class TestPlayFormulaCoupling:
    """A play is Buchi-accepted exactly when its word meets the contract."""

    def check(self, play, expected):
        sg = arbiter()
        validate_play(sg.graph, play)
        assert buchi_accepts(sg, play) is expected
        assert formula_holds(sg, play) is expected

    def test_all_quiet(self):
        self.check(LassoPlay(stem=(), cycle=("q_p0b0_in", "t_p0b0_on")), True)

    def test_request_granted_then_quiet(self):
        play = LassoPlay(
            stem=(),
            cycle=(
                "q_p0b0_in",
                "t_p0b0_on",
                "q_p1b0_ir",
                "t_p1b0_og",
                "q_p0b1_in",
                "t_p0b1_on",
            ),
        )
        self.check(play, True)

    def test_request_never_granted(self):
        play = LassoPlay(
            stem=("q_p0b0_in", "t_p0b0_on"),
            cycle=("q_p1b0_ir", "t_p1b0_on"),
        )
        self.check(play, False)

    def test_grant_after_grant_dies(self):
        play = LassoPlay(
            stem=("q_p0b0_in", "t_p0b0_og", "q_p0b1_in"),
            cycle=("dead_og", "dead_in"),
        )
        self.check(play, False)

    def test_random_lassos_agree(self):
        sg = arbiter()
        rng = random.Random(424242)
        agree_true = agree_false = 0
        for _ in range(200):
            play = random_lasso(sg, rng)
            validate_play(sg.graph, play)
            b = buchi_accepts(sg, play)
            assert formula_holds(sg, play) is b
            if b:
                agree_true += 1
            else:
                agree_false += 1
        assert agree_true >= 20 and agree_false >= 20


class TestWitnessComposition:
    """The synthesized strategy satisfies the contract whenever the
    environment obeys the computed assumption."""

    def compose(self, beta):
        sg = arbiter()
        g = sg.graph
        alpha = arbiter_assumption().strategy.choice
        path = [sg.initial]
        seen = {sg.initial: 0}
        while True:
            s = path[-1]
            nxt = alpha[s] if s in alpha else beta[s]
            if nxt in seen:
                i = seen[nxt]
                return LassoPlay(stem=tuple(path[:i]), cycle=tuple(path[i:]))
            seen[nxt] = len(path)
            path.append(nxt)

    def test_moore_view_of_the_strategy(self):
        sg = arbiter()
        moore = strategy_to_moore(sg, arbiter_assumption().strategy)
        assert len(moore.states) == 20
        assert moore.initial == "q_p0b0_in"
        assert moore.output["q_p0b0_in"] == frozenset({"grant"})
        assert moore.transition[("q_p0b0_in", frozenset())] == "q_p0b1_in"
        assert (
            moore.transition[("q_p0b0_in", frozenset({"req"}))] == "q_p1b1_ir"
        )

    def test_moore_run_matches_the_composed_play(self):
        sg = arbiter()
        rng = random.Random(5)
        g = sg.graph
        beta = {s: rng.choice(g.succ(s)) for s in g.states_of(Owner.P2)}
        play = self.compose(beta)
        word = word_of_play(sg, play)
        moore = strategy_to_moore(sg, arbiter_assumption().strategy)
        cur = moore.initial
        inputs = set(sg.inputs)
        letters = list(word.stem) + list(word.cycle) * 2
        for letter in letters:
            assert moore.output[cur] == letter & frozenset({"grant"})
            cur = moore.transition[(cur, letter & frozenset(inputs))]

    def test_fair_environments_are_granted(self):
        sg = arbiter()
        g = sg.graph
        ca = arbiter_assumption()
        fair = set(ca.automaton.fair)
        rng = random.Random(77)
        members = refusals = 0
        for _ in range(120):
            beta = {s: rng.choice(g.succ(s)) for s in g.states_of(Owner.P2)}
            play = self.compose(beta)
            validate_play(g, play)
            word = word_of_play(sg, play)
            if lasso_member(ca.automaton, word):
                members += 1
                assert holds(request_grant_spec(), word.stem, word.cycle)
            else:
                # With both sides memoryless the only way to fall outside
                # the assumption is a recurring fair source that never
                # takes its fair edge.
                refusals += 1
                cyc = set(play.cycle)
                cyc_edges = {
                    (play.cycle[i], play.cycle[(i + 1) % len(play.cycle)])
                    for i in range(len(play.cycle))
                }
                assert any(
                    u in cyc and (u, v) not in cyc_edges for (u, v) in fair
                )
        assert members >= 20 and refusals >= 20
