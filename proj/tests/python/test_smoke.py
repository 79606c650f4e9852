import json

import pytest

import pervcalc


def test_gallery_kernel_of_t_is_m_shift():
    t = pervcalc.gallery("t_resolution")
    kernel, image, cokernel = pervcalc.factor(t)
    assert kernel == pervcalc.gallery("m_shift")
    assert cokernel.is_zero()
    assert pervcalc.classify(t)["surjective"]
    assert not pervcalc.classify(t)["injective"]


def test_stalks_and_support():
    rx = pervcalc.gallery("rx_shift")
    assert pervcalc.stalk(rx, "origin") == {
        -1: {"free_rank": 1, "invariant_factors": []},
        0: {"free_rank": 0, "invariant_factors": []},
    }
    ic = pervcalc.gallery("ic_x")
    assert pervcalc.stalk(ic)[-1]["free_rank"] == 2
    assert pervcalc.support(pervcalc.gallery("m_shift"))["branches"] == [False, False]


def test_endo_example_over_q():
    t = pervcalc.gallery("endo_example", ring="q")
    kernel, image, cokernel = pervcalc.factor(t)
    verdict, iso, _ = pervcalc.find_isomorphism(kernel, pervcalc.gallery("rx_shift", ring="q"))
    assert verdict == "isomorphic"
    assert iso is not None
    expected = pervcalc.gallery("m_shift", ring="q") + pervcalc.gallery("ic_x", ring="q")
    assert pervcalc.find_isomorphism(cokernel, expected)[0] == "isomorphic"
    assert pervcalc.find_isomorphism(kernel, cokernel)[0] == "distinguished"
    assert pervcalc.characteristic_cycle(kernel) == pervcalc.characteristic_cycle(cokernel)
    assert pervcalc.characteristic_cycle(kernel) == {"branches": [1, 1], "origin": 1}


def test_json_round_trip_and_validation():
    rx = pervcalc.gallery("rx_shift")
    text = rx.to_json()
    assert pervcalc.Object.from_json(text).to_json() == text
    assert pervcalc.validate(rx) is None

    broken = json.loads(text)
    broken["var"] = [[["-1"]], [["0"]]]
    broken["can"] = [[["1"]], [["-1"]]]
    v = pervcalc.validate(pervcalc.Object.from_json(json.dumps(broken)))
    assert v["axiom"] == "A1"
    assert v["branch"] == 1

    with pytest.raises(pervcalc.InputError, match="ring"):
        pervcalc.Object.from_json('{"ring": "fp:4"}')
    with pytest.raises(pervcalc.UnsupportedRingError):
        pervcalc.characteristic_cycle(rx)


def test_hom_and_composition():
    s = pervcalc.gallery("s_inclusion")
    t = pervcalc.gallery("t_resolution")
    assert (t @ s).is_zero()
    module, gens = pervcalc.hom(pervcalc.gallery("rx_shift", "q"), pervcalc.gallery("ic_x", "q"))
    assert module == {"dim": 2}
    assert len(gens) == 2


def test_check_is_seeded():
    a = pervcalc.check("support", trials=20, seed=5, ring="fp:5", max_dim=4)
    b = pervcalc.check("support", trials=20, seed=5, ring="fp:5", max_dim=4)
    assert a == b
    assert a["verdict"] == "pass"
    assert a["passed"] == 20
    assert a["seed"] == 5


def test_cli_entry_point():
    code, out, err = pervcalc.run_cli(["gallery", "--name", "t_resolution"])
    assert code == 0
    code, out, err = pervcalc.run_cli(["factor"], out)
    assert code == 0
    assert "isomorphic to m_shift" in out
    code, _, err = pervcalc.run_cli(["nonsense"])
    assert code == 2
    assert err.count("\n") == 1
