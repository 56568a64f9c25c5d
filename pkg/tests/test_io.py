import json

import pytest

from colorfix import io
from colorfix.corpus import separating_example
from colorfix.errors import ParseError, ValidationError
from colorfix.graph import Graph
from colorfix.reductions.crosscomp import cross_compose
from colorfix.reductions.indset import indset_to_3swap, lift_to_r, promise_augment
from colorfix.reductions.planar import (
    prext_to_planar_fix_promise,
    prext_to_planar_swap_promise,
    strip_promise_bipartite,
)
from colorfix.reductions.prext import prext_to_fix, prext_to_swap
from colorfix.reductions.sources import Cnf3, Cnf3Batch, IndSetInstance, PrExtInstance

PATH = Graph(3, ((0, 1), (1, 2)))
PREXT = PrExtInstance(PATH, 3, {0: 1, 2: 0}, bipartite_planar_expected=True, degree_one_precolored=True)
INDSET = IndSetInstance(Graph(3, ((0, 1),)), 2)
BATCH = Cnf3Batch((Cnf3(3, ((1, -2, 3), (2,))), Cnf3(3, ((-1,), (-3, 2)))))


def corpus():
    red = indset_to_3swap(INDSET)
    planar = prext_to_planar_swap_promise(PREXT)
    return [
        separating_example(),
        PREXT,
        INDSET,
        BATCH,
        prext_to_fix(PREXT),
        prext_to_swap(PREXT),
        red,
        lift_to_r(red, 4),
        promise_augment(red, 3, 2),
        cross_compose(BATCH),
        planar,
        prext_to_planar_fix_promise(PREXT),
        strip_promise_bipartite(planar),
    ]


@pytest.mark.parametrize("obj", corpus(), ids=lambda o: type(o).__name__)
def test_round_trip(obj, tmp_path):
    path = tmp_path / "x.json"
    io.save(obj, path)
    assert io.load(path) == obj
    assert io.dumps(io.load(path)) == path.read_text()


def test_edges_sorted_and_keys_stable():
    text = io.dumps(separating_example())
    d = json.loads(text)
    assert d["edges"] == sorted(d["edges"])
    assert list(d) == sorted(d)
    assert d["format_version"] == 1 and d["kind"] == "repair"


def base_repair():
    return json.loads(io.dumps(separating_example()))


@pytest.mark.parametrize(
    "mutate, error, message",
    [
        (lambda d: d["coloring"].__setitem__(0, 3), ValidationError, "outside"),
        (lambda d: d["edges"].append(list(d["edges"][0])), ValidationError, "duplicate"),
        (lambda d: d.pop("k"), ParseError, "missing field 'k'"),
        (lambda d: d.__setitem__("k", "3"), ParseError, "field 'k' must be an integer"),
        (lambda d: d.__setitem__("kind", "mystery"), ParseError, "kind"),
        (lambda d: d.__setitem__("format_version", 9), ParseError, "format_version"),
        (lambda d: d["edges"].__setitem__(0, [0]), ParseError, r"edges\[0\]"),
        (lambda d: d.__setitem__("variant", "both"), ValidationError, "variant"),
        (lambda d: d.__setitem__("trace", {"a": [0]}), ValidationError, "does not cover"),
    ],
)
def test_invalid_files(mutate, error, message):
    d = base_repair()
    mutate(d)
    with pytest.raises(error, match=message):
        io.loads(json.dumps(d))


def test_syntax_error_has_position():
    with pytest.raises(ParseError, match="line 2"):
        io.loads('{"kind":\n nope}')


def test_batch_counts_checked():
    d = json.loads(io.dumps(BATCH))
    d["t"] = 5
    with pytest.raises(ParseError, match="'t'"):
        io.loads(json.dumps(d))


def test_dimacs():
    assert io.to_dimacs(PATH) == "p edge 3 2\ne 1 2\ne 2 3\n"
