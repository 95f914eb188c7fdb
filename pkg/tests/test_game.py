import random

import pytest

from graphspectra.catalog import (complete_graph, connected_graphs,
                                  cycle_graph, path_graph,
                                  random_connected_graph)
from graphspectra.errors import ValidationError
from graphspectra.game import (GameConfig, GameSession, LoopbackEndpoint,
                               SocketEndpoint, SolverConfig, decode_message,
                               encode_message, serve_game, solve_game)
from graphspectra.graphs import Graph, is_isomorphic


def _session(graph=None, **kwargs):
    return GameSession(graph or complete_graph(3), GameConfig(**kwargs))


class TestProtocolRules:
    def test_happy_path_shapes(self):
        s = _session()
        assert s.handle({"type": "hello"})["type"] == "welcome"
        ack = s.handle({"type": "choose_delta", "labels": [1, 2, 4]})
        assert ack == {"type": "delta_ack", "edge_count": 3}
        reply = s.handle({"type": "choose_prime", "q": 101})
        assert reply["type"] == "spectrum"
        assert reply["q"] == 101 and (reply["r_min"], reply["r_max"]) == (0, 1)
        assert len(reply["values"]) == 3 * 2
        assert all(isinstance(v, str) for v in reply["values"])
        verdict = s.handle({"type": "submit", "n": 3,
                            "edges": [[1, 2], [1, 3], [2, 3]]})
        assert verdict == {"type": "verdict", "result": "win"}

    def test_hello_required_first(self):
        s = _session()
        r = s.handle({"type": "choose_prime", "q": 101})
        assert r["type"] == "error" and r["code"] == "bad_phase"

    def test_delta_only_once(self):
        s = _session()
        s.handle({"type": "hello"})
        s.handle({"type": "choose_delta", "labels": [1, 2, 4]})
        r = s.handle({"type": "choose_delta", "labels": [1, 2, 4]})
        assert r["code"] == "delta_already_fixed"

    def test_oversized_label_list_accepted(self):
        s = _session()
        s.handle({"type": "hello"})
        ack = s.handle({"type": "choose_delta", "labels": [1, 2, 4, 8, 16]})
        assert ack == {"type": "delta_ack", "edge_count": 3}

    def test_short_label_list_rejected_session_stays_open(self):
        s = _session()
        s.handle({"type": "hello"})
        r = s.handle({"type": "choose_delta", "labels": [1, 2]})
        assert r["code"] == "label_count"
        ack = s.handle({"type": "choose_delta", "labels": [1, 2, 4]})
        assert ack["type"] == "delta_ack"

    def test_non_prime_power_rejected(self):
        s = _session()
        s.handle({"type": "hello"})
        s.handle({"type": "choose_delta", "labels": [1, 2, 4]})
        r = s.handle({"type": "choose_prime", "q": 6})
        assert r["code"] == "bad_prime"
        assert s.handle({"type": "choose_prime", "q": 7})["type"] == "spectrum"

    def test_submit_closes_session(self):
        s = _session()
        s.handle({"type": "hello"})
        s.handle({"type": "choose_delta", "labels": [1, 2, 4]})
        s.handle({"type": "submit", "n": 2, "edges": [[1, 2]]})
        r = s.handle({"type": "hello"})
        assert r["code"] == "closed"

    def test_losing_submission(self):
        s = _session(cospectral_left())
        s.handle({"type": "hello"})
        s.handle({"type": "choose_delta", "labels": [1 << i for i in range(10)]})
        verdict = s.handle({
            "type": "submit",
            "n": 8,
            "edges": [list(e) for e in cospectral_right().sorted_edges()]})
        assert verdict == {"type": "verdict", "result": "lose"}

    def test_bad_json_line(self):
        s = _session()
        reply = s.handle_line("this is not json")
        assert decode_message(reply)["code"] == "bad_message"

    def test_hidden_graph_must_be_connected(self):
        with pytest.raises(ValidationError):
            GameSession(Graph.of(4, [(1, 2), (3, 4)]))


def cospectral_left():
    from graphspectra.catalog import cospectral_pair_graphs

    return cospectral_pair_graphs()[0]


def cospectral_right():
    from graphspectra.catalog import cospectral_pair_graphs

    return cospectral_pair_graphs()[1]


class TestSolver:
    def test_k3(self):
        res = solve_game(LoopbackEndpoint(_session(seed=4)))
        assert res.won and is_isomorphic(res.graph, complete_graph(3))
        assert len(res.primes_used) == 2

    def test_p4(self):
        res = solve_game(LoopbackEndpoint(_session(path_graph(4), seed=1)))
        assert res.won

    def test_single_vertex(self):
        res = solve_game(LoopbackEndpoint(GameSession(Graph(1))))
        assert res.won

    def test_budget_exhausted_no_submit(self):
        sess = _session(cycle_graph(4))
        res = solve_game(LoopbackEndpoint(sess),
                         SolverConfig(primes=(2,)))
        assert not res.won and res.verdict is None
        assert sess.phase != "closed"  # never submitted

    def test_every_connected_graph_up_to_4(self):
        for n in range(1, 5):
            for g in connected_graphs(n):
                res = solve_game(LoopbackEndpoint(
                    GameSession(g, GameConfig(seed=n))))
                assert res.won, sorted(g.edges)

    def test_random_n6(self):
        rng = random.Random(12)
        for i in range(3):
            g = random_connected_graph(6, rng)
            res = solve_game(LoopbackEndpoint(
                GameSession(g, GameConfig(seed=i))))
            assert res.won


class TestTransportsAndDeterminism:
    def test_socket_round_trip(self):
        server, (host, port) = serve_game(cycle_graph(5), GameConfig(seed=2))
        try:
            ep = SocketEndpoint(host, port)
            try:
                res = solve_game(ep)
            finally:
                ep.close()
            assert res.won and is_isomorphic(res.graph, cycle_graph(5))
        finally:
            server.shutdown()

    def test_replayable_transcripts(self):
        runs = []
        for _ in range(2):
            sess = GameSession(path_graph(4), GameConfig(seed=9), "s")
            res = solve_game(LoopbackEndpoint(sess))
            runs.append((tuple(sess.transcript), res.transcript))
        assert runs[0] == runs[1]

    def test_spectrum_is_pure_function_of_pair_and_prime(self):
        # two sessions over the same hidden pair must emit identical spectra
        replies = []
        for _ in range(2):
            s = _session(path_graph(4), seed=3)
            s.handle({"type": "hello"})
            s.handle({"type": "choose_delta", "labels": [1, 2, 4]})
            replies.append(encode_message(
                s.handle({"type": "choose_prime", "q": 101})))
        assert replies[0] == replies[1]
