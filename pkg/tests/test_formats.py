import random

import pytest
from hypothesis import given, strategies as st

from corrcolor import formats
from corrcolor.corpus import GADGETS, CorpusSpec, load_gadget, random_lists, random_target
from corrcolor.formats import FormatError
from corrcolor.transforms import Relabeling

from helpers import random_maps, random_plane_graph


@pytest.mark.parametrize("name", GADGETS)
def test_pg_round_trip_gadgets(name):
    g, s = load_gadget(name)
    text = formats.emit_pg(g, s)
    g2, s2 = formats.parse_pg(text)
    assert g2 == g and g2.outer_face_id == g.outer_face_id and s2 == s
    assert formats.emit_pg(g2, s2) == text


@given(st.integers(0, 10**6))
def test_round_trips_random(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 10)
    g = g.with_outer(rng.randrange(len(g.faces)))
    assert formats.parse_pg(formats.emit_pg(g))[0].outer_walk == g.outer_walk
    c = random_maps(g, 3, rng)
    assert formats.parse_ca(formats.emit_ca(c)) == c
    lists = random_lists(g, 3, rng)
    assert formats.parse_la(formats.emit_la(lists)) == lists
    f = {v: rng.randint(1, 3) for v in g.vertices}
    assert formats.parse_col(formats.emit_col(f)) == f


def test_generated_target_round_trip():
    inst = random_target(CorpusSpec(seed=11), 4)
    g, s = formats.parse_pg(formats.emit_pg(inst.g, inst.s))
    assert g == inst.g and s == inst.s
    assert formats.parse_ca(formats.emit_ca(inst.c)) == inst.c


def test_ca_keywords_and_direction():
    c = formats.parse_ca("correspondence k=3\nedge 2 1: 1>3  # reversed\nedge 2 3: id\nedge 3 4: -\n")
    assert c[1, 2].pairs() == [(3, 1)]
    assert c[2, 3].is_full() and len(c[3, 4]) == 0
    assert "edge 3 4: -" in formats.emit_ca(c)


def test_labelmap_and_relabeling_round_trip():
    q = {1: {3: 1, 5: 2}, 2: {4: 1}}
    assert formats.parse_labelmap(formats.emit_labelmap("q", q)) == ("q", q)
    r = Relabeling(3, {2: (2, 3, 1)})
    assert formats.parse_relabeling(formats.emit_relabeling(r)) == r


@pytest.mark.parametrize("parser,text,lineno", [
    (formats.parse_pg, "planegraph n=2\nrot 1: 2\nrot 2: x\n", 3),
    (formats.parse_pg, "graph n=2\n", 1),
    (formats.parse_pg, "planegraph n=2\nrot 3: 1\n", 2),
    (formats.parse_pg, "planegraph n=2\nrot 1: 2\nrot 1: 2\n", 3),
    (formats.parse_pg, "planegraph n=3\nrot 1: 2 3\nrot 2: 3 1\nrot 3: 1 2\nouter: 1 3\n", 5),
    (formats.parse_ca, "correspondence k=3\nedge 1 2: 1>1, 2>1\n", 2),
    (formats.parse_ca, "correspondence k=3\nedge 1 2: id\nedge 2 1: id\n", 3),
    (formats.parse_ca, "correspondence k=3\nedge 1 2: 1-2\n", 2),
    (formats.parse_la, "lists k=2\nv 1: 1 1\n", 2),
    (formats.parse_col, "color 1: 1\ncolor 1: 2\n", 2),
    (formats.parse_col, "colour 1: 1\n", 1),
    (formats.parse_labelmap, "labelmap kind=q\nv 1: 3=x\n", 2),
    (formats.parse_relabeling, "relabeling k=3\npi 1: 1 2 z\n", 2),
])
def test_errors_carry_line_numbers(parser, text, lineno):
    with pytest.raises(FormatError) as exc:
        parser(text)
    assert exc.value.lineno == lineno
    assert f"{lineno}:" in str(exc.value)


def test_embedding_errors_become_format_errors():
    with pytest.raises(FormatError, match="asymmetric"):
        formats.parse_pg("planegraph n=2\nrot 1: 2\n")


def test_empty_files():
    for parser in (formats.parse_pg, formats.parse_ca, formats.parse_la, formats.parse_relabeling):
        with pytest.raises(FormatError, match="empty"):
            parser("# nothing\n")
    assert formats.parse_col("") == {}


def test_read_names_source(tmp_path):
    p = tmp_path / "bad.pg"
    p.write_text("planegraph n=2\nrot 1: 2\nrot 2: 1 q\n")
    with pytest.raises(FormatError) as exc:
        formats.read(p, formats.parse_pg)
    assert "bad.pg:3" in str(exc.value)
