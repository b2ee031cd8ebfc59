"""Algorithm-spec strings."""

import pytest

from xube.algospec import AlgoSpec, parse_algo, render_algo
from xube.errors import AlgoSpecError, ConfigError


class TestParse:

    def test_family_only(self):
        assert parse_algo("graph_v") == AlgoSpec("graph_v")

    def test_parameters(self):
        spec = parse_algo("graph_q.10B_0.5W")
        assert spec.family == "graph_q"
        assert spec.B == 10
        assert spec.W == 0.5
        assert spec.E == 0.0
        assert spec.head == "q"

    def test_every_letter(self):
        spec = parse_algo("beam_v.8B_0.9W_0.1E_2T_300I_12S")
        assert (spec.B, spec.W, spec.E, spec.T, spec.I, spec.S) == (8, 0.9, 0.1, 2.0, 300, 12)

    def test_leading_dot_number(self):
        assert parse_algo("graph_v.5B_.6W").W == 0.6

    def test_supervised_and_rollout(self):
        assert parse_algo("sup_rev_q.20S").is_supervised
        assert parse_algo("rollout.40I").head is None

    @pytest.mark.parametrize("text, token", [
        ("astar", "astar"),
        ("graph_v.", "."),
        ("graph_v.10X", "10X"),
        ("graph_v.B10", "B10"),
        ("graph_v.1.5B", "1.5B"),
        ("graph_v.2B_3B", "3B"),
        ("graph_v.10B__1W", ""),
    ])
    def test_errors_name_the_token(self, text, token):
        with pytest.raises(AlgoSpecError) as exc:
            parse_algo(text)
        assert exc.value.token == token
        assert isinstance(exc.value, ConfigError)

    def test_empty(self):
        with pytest.raises(AlgoSpecError):
            parse_algo("   ")


class TestRender:

    def test_defaults_omitted(self):
        assert render_algo(AlgoSpec("graph_v")) == "graph_v"
        assert str(AlgoSpec("graph_v", B=10, W=0.6)) == "graph_v.10B_0.6W"

    @pytest.mark.parametrize("text", ["graph_q.10B_0.5W", "beam_v.4B_0.1E_1.5T", "sup_fwd_v.7S", "rollout.25I"])
    def test_canonical_text_survives(self, text):
        assert parse_algo(text).render() == text
