"""Line-delimited JSON front end.

Each stdin line is a request {"command", "payload", "field"?, "seed"?}; each
produces one report line on stdout. With --suite the named verification
suite runs instead of reading stdin.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable

from . import pencils as pc
from . import scorza as sc
from . import serial as js
from . import spinor as sp
from .compalg import AlgebraTag, alg_mul
from .errors import MalformedInput, PreconditionError
from .exactlin import FieldSpec
from .jordan import det3, nu2, sigma
from .verify import SUITES, verify

EXIT_OK, EXIT_MALFORMED, EXIT_PRECONDITION, EXIT_FAILED = 0, 1, 2, 3


def _get(p: dict, key: str):
    if not isinstance(p, dict):
        raise MalformedInput("payload must be a JSON object")
    if key not in p:
        raise MalformedInput(f"payload is missing {key!r}")
    return p[key]


def _herm(p, key, f):
    return js.load_herm(_get(p, key), f)


def _point(p, key, f) -> sc.ConePoint:
    return sc.ConePoint(_herm(p, key, f))


def _spinor(p, key, f):
    return js.load_spinor(_get(p, key), f)


def _cmd_alg_mul(p, f, seed):
    x = js.load_alg(_get(p, "x"), f)
    y = js.load_alg(_get(p, "y"), f, x.tag.dim_a)
    return js.dump_alg(alg_mul(x, y))


def _cmd_nu2(p, f, seed):
    a = _get(p, "a")
    if not isinstance(a, int):
        raise MalformedInput("a must be an integer")
    zs = _get(p, "z")
    if not isinstance(zs, list) or not zs:
        raise MalformedInput("z must be a nonempty list")
    tag = AlgebraTag(a, f)
    z = [tag.scalar(js.load_scalar(w, f)) if a == 1 and not isinstance(w, (list, dict))
         else js.load_alg(w, f, a) for w in zs]
    return js.dump_herm(nu2(z))


def _cmd_det3(p, f, seed):
    return js.dump_scalar(det3(_herm(p, "m", f)), f)


def _cmd_sigma(p, f, seed):
    return js.dump_form(sigma(_herm(p, "A", f), _herm(p, "B", f)))


def _cmd_tangent_cone(p, f, seed):
    return js.dump_subspace(sc.tangent_cone(_point(p, "x", f)))


def _cmd_nu_plus(p, f, seed):
    A = js.load_form(p["A"], f) if "A" in p else None
    return js.dump_herm(sc.nu_plus(_point(p, "x", f), _herm(p, "t", f), A))


def _cmd_nu_minus(p, f, seed):
    return js.dump_form(sc.nu_minus(_point(p, "x", f), _herm(p, "f", f)))


def _cmd_flop_e61(p, f, seed):
    mm = sc.flop_e61(_point(p, "x", f), _herm(p, "f", f), seed)
    return {
        "h": js.dump_form(mm.h),
        "A": js.dump_herm(mm.A),
        "matrix": js.dump_matrix(mm.matrix, f),
        "source_basis": js.dump_matrix(mm.source.basis(), f),
        "target_basis": js.dump_matrix(mm.target.basis(), f),
    }


def _cmd_line_spaces(p, f, seed):
    ls = sc.severi_line_spaces(_point(p, "x", f), _point(p, "y", f))
    return {"L": js.dump_subspace(ls.L), "I": js.dump_subspace(ls.I),
            "S": js.dump_subspace(ls.S), "quotient_dims": list(ls.quotient_dims)}


def _cmd_t_y(p, f, seed):
    return js.dump_subspace(sc.t_y_space(_point(p, "x", f), _point(p, "y", f)))


def _cmd_fano_image(p, f, seed):
    side = p.get("side", "+") if isinstance(p, dict) else "+"
    aux = js.load_form(p["aux"], f) if "aux" in p else None
    return js.dump_subspace(sc.fano_image(_point(p, "x", f), _herm(p, "t", f), side, aux))


def _cmd_blowup_fiber(p, f, seed):
    return js.dump_subspace(sc.blowup_fiber(_point(p, "x", f), _herm(p, "f", f)))


def _cmd_spin_pure(p, f, seed):
    s = _spinor(p, "s", f)
    out = {"pure": sp.is_pure(s), "nu2": js.dump_herm(sp.nu2pm(s))}
    if out["pure"] and s:
        out["isotropic_image"] = js.dump_subspace(sp.phi_iso(s))
    return out


def _cmd_l_fiber(p, f, seed):
    q = sp.entry_quadric(_spinor(p, "s", f))
    return {"fiber": js.dump_subspace(q.fiber), "quadric": js.dump_matrix(q.gram, f)}


def _cmd_trichotomy(p, f, seed):
    kind, d = sp.trichotomy(_spinor(p, "s", f), _spinor(p, "t", f))
    return {"kind": kind, "dim": d}


def _cmd_psi(p, f, seed):
    return js.dump_spinor(sp.psi_iso(_spinor(p, "s", f), _spinor(p, "t", f), _spinor(p, "x", f)))


def _cmd_fiber_product(p, f, seed):
    args = [_spinor(p, k, f) for k in ("s", "t", "u", "v")]
    return js.dump_spinor(sp.fiber_product(*args))


def _cmd_classify(p, f, seed):
    return js.dump_label(pc.classify(js.load_pencil(p, f)))


def _cmd_codiag(p, f, seed):
    g = js.load_pencil(p, f)
    return {"basis": js.dump_matrix(pc.codiagonalize(g.omega1, g.omega2), f)}


def _cmd_u_space(p, f, seed):
    return js.dump_subspace(pc.u_space(js.load_pencil(p, f)))


def _cmd_flop_e62(p, f, seed):
    phi = js.load_pencil(_get(p, "phi"), f)
    return js.dump_subspace(pc.flop_e62_base(_point(p, "x", f), _point(p, "y", f), phi))


def _cmd_verify(p, f, seed):
    if not isinstance(p, str):
        raise MalformedInput("verify takes the suite name as payload")
    if p not in SUITES:
        raise MalformedInput(f"unknown suite {p!r}; expected one of {sorted(SUITES)}")
    return verify(p, seed)


COMMANDS: dict[str, Callable] = {
    "alg-mul": _cmd_alg_mul,
    "nu2": _cmd_nu2,
    "det3": _cmd_det3,
    "sigma": _cmd_sigma,
    "tangent-cone": _cmd_tangent_cone,
    "nu-plus": _cmd_nu_plus,
    "nu-minus": _cmd_nu_minus,
    "flop-e61": _cmd_flop_e61,
    "line-spaces": _cmd_line_spaces,
    "t-y": _cmd_t_y,
    "fano-image": _cmd_fano_image,
    "blowup-fiber": _cmd_blowup_fiber,
    "spin-pure": _cmd_spin_pure,
    "l-fiber": _cmd_l_fiber,
    "trichotomy": _cmd_trichotomy,
    "psi": _cmd_psi,
    "fiber-product": _cmd_fiber_product,
    "classify-pencil": _cmd_classify,
    "codiag": _cmd_codiag,
    "u-space": _cmd_u_space,
    "flop-e62": _cmd_flop_e62,
    "verify": _cmd_verify,
}


def run(request, field: FieldSpec | None = None, seed: int = 0,
        timing: bool = False) -> tuple[dict, int]:
    """Evaluate one request document; returns (report, exit status)."""
    start = time.perf_counter()
    report: dict = {}
    try:
        if not isinstance(request, dict):
            raise MalformedInput("request must be a JSON object")
        cmd = request.get("command")
        report["command"] = cmd
        payload = request.get("payload")
        if isinstance(cmd, str) and cmd.startswith("verify ") and "payload" not in request:
            # the "verify <suite>" spelling carries the suite in the command
            cmd, payload = "verify", cmd.split(None, 1)[1]
            request = {**request, "payload": payload}
        if cmd not in COMMANDS:
            raise MalformedInput(f"unknown command {cmd!r}")
        fname = request.get("field")
        fld = FieldSpec.parse(fname) if fname is not None else (field or FieldSpec())
        sd = request.get("seed", seed)
        if isinstance(sd, bool) or not isinstance(sd, int):
            raise MalformedInput("seed must be an integer")
        report["field"], report["seed"] = fld.name, sd
        if "payload" not in request:
            raise MalformedInput("request has no payload")
        out = COMMANDS[cmd](request["payload"], fld, sd)
        report["output"] = out
        if cmd == "verify" and not out["passed"]:
            report["status"] = "failed"
            code = EXIT_FAILED
        else:
            report["status"] = "ok"
            code = EXIT_OK
    except MalformedInput as exc:
        report.update(status="malformed", error=str(exc))
        code = EXIT_MALFORMED
    except PreconditionError as exc:
        report.update(status="precondition", error=f"{type(exc).__name__}: {exc}")
        code = EXIT_PRECONDITION
    except ZeroDivisionError as exc:
        report.update(status="malformed", error=f"scalar has no value in this field: {exc}")
        code = EXIT_MALFORMED
    if timing:
        report["elapsed_s"] = round(time.perf_counter() - start, 3)
    return report, code


def _worst(codes: list[int]) -> int:
    for c in (EXIT_MALFORMED, EXIT_PRECONDITION, EXIT_FAILED):
        if c in codes:
            return c
    return EXIT_OK


def _write(dirpath: Path | None, name: str, text: str) -> None:
    if dirpath is not None:
        dirpath.mkdir(parents=True, exist_ok=True)
        (dirpath / name).write_text(text + "\n", encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="albert", description=__doc__.splitlines()[0])
    ap.add_argument("--field", default="Q", help="Q or Fp:<p> (default Q)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", choices=sorted(SUITES), help="run a verification suite and exit")
    ap.add_argument("--report-dir", type=Path, help="also write each report to this directory")
    ap.add_argument("--timing", action="store_true", help="add elapsed seconds to reports")
    args = ap.parse_args(argv)
    try:
        field = FieldSpec.parse(args.field)
    except MalformedInput as exc:
        print(f"albert: {exc}", file=sys.stderr)
        return EXIT_MALFORMED

    if args.suite:
        requests = [{"command": "verify", "payload": args.suite, "seed": args.seed}]
    else:
        requests = []
        for lineno, line in enumerate(sys.stdin, 1):
            if line.strip():
                requests.append((lineno, line))

    codes = []
    for i, req in enumerate(requests):
        if isinstance(req, tuple):
            lineno, line = req
            try:
                doc = json.loads(line)
            except ValueError as exc:
                report, code = {"status": "malformed", "error": f"line {lineno}: {exc}"}, EXIT_MALFORMED
                text = js.canonical(report)
                print(text, flush=True)
                _write(args.report_dir, f"{i:04d}-invalid.json", text)
                codes.append(code)
                continue
        else:
            doc = req
        report, code = run(doc, field, args.seed, args.timing)
        text = js.canonical(report)
        print(text, flush=True)
        name = f"{i:04d}-{report.get('command') or 'unknown'}.json"
        if args.suite:
            name = f"verify-{args.suite}-{args.seed}.json"
        _write(args.report_dir, name, text)
        codes.append(code)
    return _worst(codes)


if __name__ == "__main__":
    sys.exit(main())
