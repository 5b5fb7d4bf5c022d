"""Smoke test for the qspectra extension module.

Build first, e.g. `maturin develop -m crates/py/Cargo.toml`, or
`cargo build -p qspectra-py --release --features extension-module` and put
target/release/libqspectra.so on the path as qspectra.so.
"""

import qspectra as q


def main():
    sp = q.Graph.named("star_plus_edge", 11)
    assert (sp.n, sp.edge_count) == (11, 11)
    f = sp.f()
    assert 0.118 < float(f) < 0.137, f
    assert float(sp.f(exact=False)) - float(f) < 1e-7

    k4 = q.Graph.from_edge_list("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert k4.spectrum() == [6.0, 2.0, 2.0, 2.0]
    assert k4.s_k(4).exact and k4.s_k(4).lo == "12"
    assert k4.char_poly()[-1] == 1
    assert k4.canonical_form() == q.Graph(4, k4.edges()).canonical_form()

    assert [len(q.connected_graphs(n)) for n in range(1, 7)] == [1, 1, 2, 6, 21, 112]
    assert len(q.trees(7)) == 11
    assert q.labeled_class_count(5) == 21

    best = q.search_min_f(6)
    assert best["is_star_plus"] and best["classes"] == 112

    p5 = q.Graph.named("path", 5)
    assert q.check_brouwer(p5, 2) == "TRUE"
    assert q.check_ashraf(p5, 2) == "TRUE"
    assert q.interlacing_check(p5, 0, 4) == "TRUE"
    assert q.edge_insertion_bound_check(p5, 0, 2, 1)[0] in ("TRUE", "FALSE")
    assert q.trace_identity_check(p5)

    a = [[2, 1, 0], [1, 3, 1], [0, 1, 1]]
    b = [[1, 0, 0], [0, 2, 1], [0, 1, 2]]
    assert q.fan_check(a, b, 2) == "TRUE"
    assert len(q.additive_compound(a, 2)) == 3

    spec = q.HJoinSpec.from_json(
        '{"host":[[0,1],[1,2]],"parts":[{"n":2,"r":1,"edges":[[0,1]]},{"n":1,"r":0},{"n":5,"r":0}]}'
    )
    assert spec.order == 8 and spec.verify()
    assert spec.quotient() == [["3", "1", "0"], ["2", "7", "5"], ["0", "1", "1"]]
    assert spec.char_poly() == spec.materialize().char_poly()

    assert "G3" in q.family_ids()
    assert q.verify_family("G3", {"t": 7})["ok"]
    assert q.family_graph("G3", {"t": 7}).is_connected()
    assert q.sn_plus_bounds(20)["cubic_matches"]
    assert q.g2_sign_evaluations(8)["t"] == 8
    assert q.monotonicity_scan("G1a_shift_t1t2", 4)["chain"] == "G1a_shift_t1t2"

    try:
        q.Graph(3, [(0, 3)])
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-range edge accepted")

    print("qspectra smoke test: ok")


if __name__ == "__main__":
    main()
