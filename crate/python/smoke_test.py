"""Smoke test for the pyqcong extension.

Build and install first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pyqcong-*.whl

then run ``python python/smoke_test.py``.
"""

import json

import pyqcong


def main():
    assert pyqcong.parse_range("3..31:odd") == list(range(3, 32, 2))
    assert pyqcong.parse_range("3,5,7") == [3, 5, 7]
    try:
        pyqcong.parse_range("5..3")
    except ValueError:
        pass
    else:
        raise AssertionError("empty range accepted")

    assert "T1a" in pyqcong.case_ids()
    assert "rdid" in pyqcong.identity_ids()
    assert pyqcong.cyclotomic(6) == [1, -1, 1]
    assert pyqcong.padic_valuation("250/3", 5) == 3
    assert pyqcong.padic_valuation("0", 5) is None

    r = pyqcong.verify("T1a", n=7)
    assert r.holds and r.verdict == "holds" and r.params == {"n": 7}
    assert json.loads(r.to_json())["kind"] == "q-congruence"

    family = pyqcong.verify_family("T1a", n="3..31:odd")
    assert len(family) == 15 and all(x.holds for x in family)
    s = pyqcong.summarize(family)
    assert s["checked"] == 15 and s["fails"] == 0

    assert pyqcong.verify("T1a", n=4).verdict == "inadmissible"
    try:
        pyqcong.verify("NOSUCH", n=3)
    except KeyError:
        pass
    else:
        raise AssertionError("unknown case accepted")

    reg = pyqcong.Registry()
    info = reg.describe("T2")
    assert info["params"] == ["d", "n"]
    assert reg.verify("T2", d=4, n=7, oracle=False).holds

    fails = [x for x in pyqcong.scan("new-d", d=5, r=3, n_max=27) if x.verdict == "fails"]
    assert fails and all(x.conjecture for x in fails)
    assert not [x for x in pyqcong.scan("new-d", d=[4], r="1", n_max=31) if not x.holds]

    assert pyqcong.check_identity("rdid", r=1).holds
    assert pyqcong.check_identity("rdid", r=3).verdict == "inadmissible"
    assert pyqcong.check_identity("sun-euler", order=60).holds
    assert pyqcong.check_identity("andrews-m", a=1, b=[1, 1], c=[1, 26], n=4, base=6).holds
    assert pyqcong.check_identity("watson-8phi7", a=1, b=1, c=1, d=1, e=1, n=1, base=4).holds
    assert pyqcong.check_identity("6phi5-term", a=1, b=1, c=10, n=2, base=4).holds
    print("pyqcong smoke test passed")


if __name__ == "__main__":
    main()
