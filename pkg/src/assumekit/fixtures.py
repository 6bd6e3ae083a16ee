"""Small named games used across tests, docs, and the CLI examples.

The first five are minimal graphs exercising one feature each; f_rcg is a
complete request/cancel arbiter synthesis game: the system must eventually
grant every request but must not grant right after a cancel or a grant.
"""

from __future__ import annotations

from fractions import Fraction

from .game import GameGraph, Objective, Owner, SynthesisGame, build_graph, build_synthesis_game


def f_buchi_loop() -> tuple[GameGraph, Objective]:
    """P1 must revisit a, but only P2 can send the play back there."""
    g = build_graph(
        states=["a", "b"],
        owner={"a": Owner.P1, "b": Owner.P2},
        edges=[("a", "b"), ("b", "a"), ("b", "b")],
        priority={"a": 0, "b": 1},
        initial="a",
    )
    return g, Objective.buchi({"a"})


def f_safety_escape() -> tuple[GameGraph, Objective]:
    """P2 can throw the play into the unsafe sink c at any time."""
    g = build_graph(
        states=["a", "b", "c"],
        owner={"a": Owner.P1, "b": Owner.P2, "c": Owner.P1},
        edges=[("a", "b"), ("b", "a"), ("b", "c"), ("c", "c")],
        priority={"a": 0, "b": 0, "c": 1},
        initial="a",
    )
    return g, Objective.safe({"a", "b"})


def f_pipe() -> tuple[GameGraph, Objective]:
    """Safety and fairness interact: c is losing but not forbidden by the
    minimal safety assumption, so only fairness on (b, a) helps."""
    g = build_graph(
        states=["a", "b", "c"],
        owner={"a": Owner.P1, "b": Owner.P2, "c": Owner.P2},
        edges=[("a", "b"), ("b", "a"), ("b", "c"), ("c", "c")],
        priority={"a": 0, "b": 1, "c": 1},
        initial="a",
    )
    return g, Objective.buchi({"a"})


def f_coin() -> tuple[GameGraph, Objective]:
    """A fair coin bounces between two rewards; almost surely good."""
    g = build_graph(
        states=["v", "w", "x"],
        owner={"v": Owner.PROB, "w": Owner.P1, "x": Owner.P1},
        edges=[("v", "w"), ("v", "x"), ("w", "v"), ("x", "v")],
        dist={"v": {"w": Fraction(1, 2), "x": Fraction(1, 2)}},
        priority={"v": 1, "w": 0, "x": 1},
        initial="v",
    )
    return g, Objective.parity({"v": 1, "w": 0, "x": 1})


def f_coin_abs() -> tuple[GameGraph, Objective]:
    """A single coin flip decides between two absorbing states; only a
    half chance of the good one, so not almost surely won."""
    g = build_graph(
        states=["v", "g", "d"],
        owner={"v": Owner.PROB, "g": Owner.P1, "d": Owner.P1},
        edges=[("v", "g"), ("v", "d"), ("g", "g"), ("d", "d")],
        dist={"v": {"g": Fraction(1, 2), "d": Fraction(1, 2)}},
        priority={"v": 1, "g": 0, "d": 1},
        initial="v",
    )
    return g, Objective.parity({"v": 1, "g": 0, "d": 1})


_IN_TAGS = {"n": frozenset(), "r": frozenset({"req"}), "c": frozenset({"cancel"}),
            "rc": frozenset({"cancel", "req"})}
_OUT_TAGS = {"n": frozenset(), "g": frozenset({"grant"})}


def f_rcg() -> SynthesisGame:
    """Request/cancel/grant arbiter.

    The system reads req and cancel and emits grant.  Every request must
    eventually be granted, but granting is forbidden in the step right
    after a cancel or another grant.  States track two flags, a pending
    request and a blocked grant; emitting grant while blocked falls into a
    dead region where nothing is ever won.  Unrealizable: the environment
    can request and then cancel forever.
    """
    states: list[str] = []
    owner: dict[str, Owner] = {}
    label: dict[str, frozenset[str]] = {}
    edges: list[tuple[str, str]] = []

    def q_id(p: int, b: int, tag: str) -> str:
        return f"q_p{p}b{b}_i{tag}"

    def t_id(p: int, b: int, tag: str) -> str:
        return f"t_p{p}b{b}_o{tag}"

    for p in (0, 1):
        for b in (0, 1):
            for tag in _IN_TAGS:
                states.append(q_id(p, b, tag))
                owner[q_id(p, b, tag)] = Owner.P1
                label[q_id(p, b, tag)] = _IN_TAGS[tag]
            for tag in _OUT_TAGS:
                if b == 1 and tag == "g":
                    continue
                states.append(t_id(p, b, tag))
                owner[t_id(p, b, tag)] = Owner.P2
                label[t_id(p, b, tag)] = _OUT_TAGS[tag]
    for tag in _IN_TAGS:
        states.append(f"dead_i{tag}")
        owner[f"dead_i{tag}"] = Owner.P1
        label[f"dead_i{tag}"] = _IN_TAGS[tag]
    for tag in _OUT_TAGS:
        states.append(f"dead_o{tag}")
        owner[f"dead_o{tag}"] = Owner.P2
        label[f"dead_o{tag}"] = _OUT_TAGS[tag]

    for p in (0, 1):
        for b in (0, 1):
            for tag in _IN_TAGS:
                edges.append((q_id(p, b, tag), t_id(p, b, "n")))
                grant_to = "dead_og" if b == 1 else t_id(p, b, "g")
                edges.append((q_id(p, b, tag), grant_to))
            for otag in _OUT_TAGS:
                if b == 1 and otag == "g":
                    continue
                for itag, i in _IN_TAGS.items():
                    granted = otag == "g"
                    np = 1 if "req" in i or (p == 1 and not granted) else 0
                    nb = 1 if "cancel" in i or granted else 0
                    edges.append((t_id(p, b, otag), q_id(np, nb, itag)))
    for tag in _IN_TAGS:
        edges.append((f"dead_i{tag}", "dead_on"))
        edges.append((f"dead_i{tag}", "dead_og"))
    for otag in _OUT_TAGS:
        for itag in _IN_TAGS:
            edges.append((f"dead_o{otag}", f"dead_i{itag}"))

    accept = {s for s in states if s.startswith("q_p0")}
    accept |= {s for s in states if s.startswith("t_") and "grant" in label[s]}
    graph = build_graph(
        states=states,
        owner=owner,
        edges=edges,
        priority={s: 0 if s in accept else 1 for s in states},
        label=label,
        initial=q_id(0, 0, "n"),
    )
    return build_synthesis_game(
        graph,
        inputs=["cancel", "req"],
        outputs=["grant"],
        objective=Objective.buchi(accept),
    )
