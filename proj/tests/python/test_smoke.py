import math

try:
    from monsterlab import _monsterlab as m
except ImportError:
    import _monsterlab as m


def test_volterra_values():
    c, r = m.volterra_h(2.0 / math.pi)
    assert abs(c - 4.0 / math.pi**2) <= r + 1e-12
    c0, r0 = m.volterra_h(0.0)
    assert c0 == 0.0 and r0 == 0.0


def test_takagi_exact():
    partial, tail = m.takagi("1/16", 4)
    assert partial == "5/16"
    assert tail == "0"


def test_weierstrass_bounds():
    c, r = m.weierstrass(0.0, 24)
    assert abs(c - 2.0) <= r
    c1, r1 = m.weierstrass(1.0, 24)
    assert abs(c1 + 2.0) <= r1


def test_embedding_and_odometer():
    assert m.code_N([]) == 1
    assert m.code_N([0]) == 3
    assert m.code_N([1]) == 2
    assert m.adding_machine([1, 1, 1]) == [0, 0, 0]
    center, radius = m.embed_h([1])
    assert center == "2/3"
    assert radius == "1/81"
    n, lower_ok, upper_ok = m.verify_property_b([0, 1, 1], [1, 1, 1])
    assert n == 0 and lower_ok and upper_ok


def test_cantor_gaps():
    gaps = m.cantor_gaps(2)
    assert ("1/3", "2/3") in gaps
    assert len(gaps) == 3


def test_rising_sun_on_tent():
    doc = (
        '{"domain":{"hull":["0","2"],"gaps":[]},'
        '"samples":[["0","0"],["1","2"],["2","0"]]}'
    )
    comps = m.rising_sun(doc)
    assert comps == [("0", "1")]


def test_pompeiu_inverse_roundtrip():
    y = m.pompeiu_g(0.25)[0]
    x = m.pompeiu_h(y)
    assert abs(x - 0.25) < 1e-6


def test_suite_entry_point():
    result = m.run_suite("odometer-cycle", depth=8)
    assert result["failed"] == 0
    assert result["cases"] > 0


def test_ivp_probe_callable():
    x = m.ivp_probe(lambda t: t * t - 2.0, 0.0, 2.0, 0.0, grid=256)
    assert x is not None
    assert abs(x - math.sqrt(2.0)) < 1e-6
