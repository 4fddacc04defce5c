"""Smoke test for the `complement` extension module.

Build and install with `maturin develop` (or put the built shared library on
PYTHONPATH as `complement.so`), then run `python python/smoke_test.py`.
"""

import complement as c


def main():
    f = c.FiniteFunction(1, 2, [0, 2])
    assert c.compute_image(f) == [0, 2]
    s = c.complement_set(2, c.compute_image(f))
    assert s == [1, 3]
    b = c.choose_domain_bits(len(s), f.n)
    assert b == 1 and c.check_existence_inequality(f.a, b, f.n)

    m = c.build_mapping(s, f.n, b)
    assert m.values == [1, 3]
    assert m.entries() == [(0, 1, "fresh"), (1, 3, "fresh")]
    assert c.synthesize_newton(m) == ["1/1", "2/1"]
    assert c.MappingTable.from_json(m.to_json()).values == m.values

    for backend in ("newton", "arith", "fourier", "iterative"):
        assert c.evaluate(f, [0, 1], backend) == ["1/1", "3/1"], backend

    g = c.LazyComplement(f)
    assert [g(0), g(1)] == [1, 3]
    assert g.memo() == [(0, 1), (1, 3)]
    assert c.get_g_of_x(f, 1) == 3

    assert c.stream_complement("even", 5) == [1, 3, 5, 7, 9]
    assert c.stream_complement("nontrivial-product", 5) == [2, 3, 5, 7, 11]
    assert c.stream_complement(f, 2) == [1, 3]
    try:
        c.stream_complement("even", 10, bound=8)
    except c.BoundExhaustedError as e:
        assert e.args[1] == [1, 3, 5, 7]
    else:
        raise AssertionError("bound was not enforced")

    report = c.verify_complement(f, [1, 3], 1)
    assert report["pointwise"]["ok"] and report["union"]["ok"] and report["disjoint"]["ok"]
    bad = c.verify_complement(f, [1, 2], 1)
    assert bad["disjoint"]["shared"] == 2

    assert c.cross_check(c.FiniteFunction(3, 4, [0, 5, 5, 9, 1, 2, 3, 4]), seed=11)["agreement"]["ok"]

    try:
        c.cross_check(c.FiniteFunction(1, 1, [1, 0]))
    except c.EmptyComplementError:
        pass
    else:
        raise AssertionError("onto function accepted")

    assert c.canonical_json(f.to_json()) == f.to_json()
    print("smoke test passed")


if __name__ == "__main__":
    main()
