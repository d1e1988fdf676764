"""Rebuild the golden request/report corpus used by test_golden.py.

Run `python3 tests/make_golden.py` after a deliberate output change and review
the diff of src/albert/golden/ before keeping it.
"""
from __future__ import annotations

from pathlib import Path

from albert import pencils as pc
from albert import serial as js
from albert.cli import run
from albert.compalg import AlgebraTag
from albert.exactlin import GF, QQ
from albert.jordan import HermMatrix, nu2
from albert.spinor import SpinorPair

GOLDEN = Path(__file__).resolve().parent.parent / "src" / "albert" / "golden"


def null_element(tag: AlgebraTag):
    return next(e for e in tag.basis() if e.norm() == 0)


def requests() -> list[dict]:
    out: list[dict] = [
        {"command": "nu2", "payload": {"a": 1, "z": [1, 2]}},
        {"command": "nu2", "payload": {"a": 2, "z": [[1, 0], [2, 3], [0, 1]]}},
    ]
    for fld in (QQ, GF()):
        name = fld.name
        for lab, f in pc.representatives(fld).items():
            out.append({"command": "classify-pencil", "field": name, "payload": js.dump_pencil(f)})
        reps = pc.representatives(fld)
        for lab in ("A2+2A1", "A2+A1"):
            out.append({"command": "codiag", "field": name, "payload": js.dump_pencil(reps[lab])})
            out.append({"command": "u-space", "field": name, "payload": js.dump_pencil(reps[lab])})

        for a in (1, 2, 4, 8):
            tag = AlgebraTag(a, fld)
            o = tag.basis()
            out.append({"command": "alg-mul", "field": name,
                        "payload": {"x": js.dump_alg(o[-1]), "y": js.dump_alg(o[1 % a])}})
            x = HermMatrix.unit(3, tag, 0)
            ident = HermMatrix.identity(3, tag)
            out.append({"command": "det3", "field": name, "payload": {"m": js.dump_herm(ident)}})
            out.append({"command": "tangent-cone", "field": name, "payload": {"x": js.dump_herm(x)}})
            # a tangent vector at E11: only the first row and column are nonzero
            t = HermMatrix.build(tag, [0, 0, 0], {(0, 1): tag.one, (0, 2): o[-1]})
            out.append({"command": "nu-plus", "field": name,
                        "payload": {"x": js.dump_herm(x), "t": js.dump_herm(t)}})
            if a > 1:
                y = nu2([tag.one, null_element(tag), tag.zero])
                pts = {"x": js.dump_herm(x), "y": js.dump_herm(y)}
                out.append({"command": "line-spaces", "field": name, "payload": pts})
                out.append({"command": "t-y", "field": name, "payload": pts})
            out.append({"command": "sigma", "field": name,
                        "payload": {"A": js.dump_herm(ident), "B": js.dump_herm(ident)}})

        tag = AlgebraTag(8, fld)
        one, zero, z = tag.one, tag.zero, null_element(tag)
        model = {
            "s10": SpinorPair(one, zero), "s01": SpinorPair(zero, one),
            "s1z": SpinorPair(one, z), "sz0": SpinorPair(z, zero),
        }
        for key, s in model.items():
            out.append({"command": "spin-pure", "field": name, "payload": {"s": js.dump_spinor(s)}})
        out.append({"command": "l-fiber", "field": name, "payload": {"s": js.dump_spinor(model["s1z"])}})
        for u, v in (("s10", "s01"), ("s10", "s1z"), ("s1z", "s1z")):
            out.append({"command": "trichotomy", "field": name,
                        "payload": {"s": js.dump_spinor(model[u]), "t": js.dump_spinor(model[v])}})
        # a pure spinor has no fiber; this one must be rejected
        out.append({"command": "l-fiber", "field": name, "payload": {"s": js.dump_spinor(model["sz0"])}})
        pair = {"s": js.dump_spinor(model["s10"]), "t": js.dump_spinor(model["s01"])}
        out.append({"command": "psi", "field": name, "payload": {**pair, "x": js.dump_spinor(model["sz0"])}})
        o = tag.basis()
        for i, j in ((0, 0), (1, 2), (3, 5)):
            out.append({"command": "fiber-product", "field": name,
                        "payload": {**pair, "u": js.dump_spinor(SpinorPair(o[i], zero)),
                                    "v": js.dump_spinor(SpinorPair(o[j], zero))}})
    out.append({"command": "classify-pencil", "payload": [[["0", "1"]], []]})
    out.append({"command": "verify", "payload": "compalg", "seed": 0})
    return out


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    reqs = requests()
    with open(GOLDEN / "requests.jsonl", "w", encoding="utf-8") as fh:
        for r in reqs:
            fh.write(js.canonical(r) + "\n")
    with open(GOLDEN / "reports.jsonl", "w", encoding="utf-8") as fh:
        for r in reqs:
            report, code = run(r)
            fh.write(js.canonical({"exit": code, "report": report}) + "\n")
    print(f"wrote {len(reqs)} cases to {GOLDEN}")


if __name__ == "__main__":
    main()
