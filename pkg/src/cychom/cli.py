"""Command-line front end.

    cychom validate [INPUT]
    cychom cohomology --max-degree N [--hopf] [INPUT]
    cychom chern --m M [INPUT]
    cychom periodicity --m M [INPUT]
    cychom morita --r R --max-degree N [INPUT]
    cychom pairing [--p P] [--q Q] [--hopf] [INPUT]
    cychom homotopy-family --m M [INPUT]
    cychom selftest
    cychom recheck CERTIFICATE

INPUT is a JSON document (``-`` for stdin); ``--builtin NAME`` picks one of the
catalog documents instead, and with neither a per-command default is used.
Exit status: 0 all assertions hold, 1 an assertion failed, 2 bad input.
"""

import argparse
import hashlib
import json
import sys
import time

from . import catalog
from .errors import (ClassesDiffer, CychomError, NotACocycle, NotLambdaInvariant, SchemaError,
                     SizeLimitExceeded, TraceAxiomViolated)
from .schema import (dump_cochain, dump_scalar, dump_twisted, parse_cochain, parse_document,
                     parse_twisted, pointer)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def digest(doc):
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode()).hexdigest()


def _input_document(args, default_key):
    if getattr(args, "input", None) and args.builtin:
        raise SchemaError("/", "give either an input file or --builtin, not both")
    if args.builtin:
        try:
            return catalog.document(args.builtin), f"builtin:{args.builtin}"
        except KeyError:
            raise SchemaError("/", f"unknown builtin {args.builtin!r}; known: {', '.join(catalog.names())}") from None
    path = getattr(args, "input", None)
    if not path:
        name = catalog.DEFAULTS[default_key]
        return catalog.document(name), f"builtin:{name}"
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise SchemaError("/", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text), path
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _param(wb, args, name, default=None):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return wb.params.get(name, default)


# tasks: each returns (outputs, checks) and has a recheck twin working from
# the serialized certificate alone

def task_validate(wb, args):
    from .lincat import validate_presentation
    from .hopf import validate_hopf_inputs
    checks = {}
    outputs = {"violations": {}}
    for label, C in (("category", wb.category), ("category2", wb.category2)):
        if C is None:
            continue
        rep = validate_presentation(C)
        checks[f"{label} axioms"] = rep.ok
        outputs["violations"][label] = list(rep.violations)
        outputs[f"{label}_unital"] = C.unital
    for k, FM in enumerate(wb.family):
        bad = FM.violations()
        checks[f"fredholm[{k}] axioms"] = not bad
        outputs["violations"][f"fredholm[{k}]"] = bad
    if wb.hopf is not None:
        rep = validate_hopf_inputs(wb.hopf, wb.sayd, wb.hcategory)
        checks["hopf, sayd and hcategory axioms"] = rep.ok
        outputs["violations"]["hopf"] = list(rep.violations)
        outputs["cocommutative"] = wb.hopf.is_cocommutative()
    return outputs, checks


def recheck_validate(wb, cert):
    outputs, _ = task_validate(wb, None)
    return {"violations reproduce": outputs["violations"] == cert["outputs"]["violations"]}


def _hopf_complex(wb):
    from .hopf import HopfComplex
    if wb.hopf is None:
        raise SchemaError("/hopf", "this task needs a hopf description")
    return HopfComplex(wb.hopf, wb.sayd, wb.hcategory)


def task_cohomology(wb, args):
    from .cohomology import cyclic_cohomology, is_cocycle, is_cyclic_cocycle
    from .hopf import _require_z_h, hopf_cyclic_cohomology, validate_hopf_inputs
    N = _param(wb, args, "max_degree", 4)
    kind = getattr(args, "kind", None) or "cyclic"
    checks = {}
    if args.hopf:
        _hopf_complex(wb)
        rep = validate_hopf_inputs(wb.hopf, wb.sayd, wb.hcategory)
        checks["hopf inputs valid"] = rep.ok
        report = hopf_cyclic_cohomology(wb.hopf, wb.sayd, wb.hcategory, N)
        reps = [[dump_twisted(phi) for phi in level] for level in report.representatives]
        ok = True
        for level in report.representatives:
            for phi in level:
                try:
                    _require_z_h(phi)
                except (NotACocycle, NotLambdaInvariant):
                    ok = False
        checks["representatives are equivariant cyclic cocycles"] = ok
    else:
        report = cyclic_cohomology(wb.category, N, kind=kind)
        reps = [[dump_cochain(phi) for phi in level] for level in report.representatives]
        test = is_cyclic_cocycle if kind == "cyclic" else is_cocycle
        checks[f"representatives are {kind} cocycles"] = all(test(phi) for level in report.representatives
                                                              for phi in level)
    outputs = {"kind": "hopf-cyclic" if args.hopf else kind, "max_degree": N, "dims": report.dims,
               "cocycle_dims": report.cocycle_dims, "coboundary_dims": report.coboundary_dims,
               "representatives": reps}
    return outputs, checks


def recheck_cohomology(wb, cert):
    from .cohomology import is_cocycle, is_cyclic_cocycle
    from .hopf import _require_z_h
    out = cert["outputs"]
    ok = len(out["dims"]) == len(out["representatives"])
    ok &= all(len(r) == d for r, d in zip(out["representatives"], out["dims"]))
    checks = {"one representative per dimension": ok}
    good = True
    if out["kind"] == "hopf-cyclic":
        cx = _hopf_complex(wb)
        for n, level in enumerate(out["representatives"]):
            for k, obj in enumerate(level):
                phi = parse_twisted(obj, cx, pointer("outputs", "representatives", n, k))
                try:
                    _require_z_h(phi)
                except (NotACocycle, NotLambdaInvariant):
                    good = False
    else:
        test = is_cyclic_cocycle if out["kind"] == "cyclic" else is_cocycle
        for n, level in enumerate(out["representatives"]):
            for k, obj in enumerate(level):
                good &= test(parse_cochain(obj, wb.category, pointer("outputs", "representatives", n, k)))
    checks["representatives re-verify"] = good
    return checks


def _need_fredholm(wb):
    if wb.fredholm is None:
        raise SchemaError("/fredholm", "this task needs a fredholm description")
    return wb.fredholm


def task_chern(wb, args):
    from .cohomology import is_cocycle
    from .fredholm import supertrace_axiom_violations
    from .nerve import is_lambda_invariant
    FM = _need_fredholm(wb)
    m = _param(wb, args, "m", 0)
    checks = {"fredholm axioms": not FM.violations()}
    phi = FM.chern_character(m)
    checks["b phi = 0"] = is_cocycle(phi)
    checks["(1 - lambda) phi = 0"] = is_lambda_invariant(phi)
    bad = supertrace_axiom_violations(FM, max_degree=2 * m)
    checks["supertrace axioms"] = not bad
    return {"m": m, "phi": dump_cochain(phi), "supertrace_violations": [str(b) for b in bad[:5]]}, checks


def recheck_chern(wb, cert):
    from .cohomology import is_cyclic_cocycle
    out = cert["outputs"]
    phi = parse_cochain(out["phi"], wb.category, "/outputs/phi")
    return {"phi cyclic cocycle": is_cyclic_cocycle(phi),
            "phi matches module": phi == wb.fredholm.chern_character(out["m"])}


def task_periodicity(wb, args):
    from .periodicity import verify_periodicity_theorem
    FM = _need_fredholm(wb)
    m = _param(wb, args, "m", 0)
    res = verify_periodicity_theorem(FM, m)
    outputs = {"m": m, "phi_lo": dump_cochain(res["phi_lo"]), "phi_hi": dump_cochain(res["phi_hi"]),
               "S_phi_lo": dump_cochain(res["S_phi"]), "witness": dump_cochain(res["witness"]),
               "identity": f"S(phi^{2 * m}) + {m + 1} phi^{2 * m + 2} = b witness"}
    return outputs, dict(res["checks"])


def recheck_periodicity(wb, cert):
    from .cohomology import is_cyclic_cocycle
    from .nerve import apply_b, is_lambda_invariant
    from .periodicity import periodicity_S
    out = cert["outputs"]
    C = wb.category
    lo = parse_cochain(out["phi_lo"], C, "/outputs/phi_lo")
    hi = parse_cochain(out["phi_hi"], C, "/outputs/phi_hi")
    S = parse_cochain(out["S_phi_lo"], C, "/outputs/S_phi_lo")
    w = parse_cochain(out["witness"], C, "/outputs/witness")
    m = out["m"]
    return {"cocycles": is_cyclic_cocycle(lo) and is_cyclic_cocycle(hi),
            "S recomputed": periodicity_S(lo) == S,
            "witness lambda-invariant": is_lambda_invariant(w),
            "b witness = S + (m+1) phi_hi": apply_b(w) == S + hi.scale(m + 1)}


def task_morita(wb, args):
    from .cohomology import class_equal, cyclic_cohomology
    from .morita import inc_map, matrix_category, morita_chain_checks, pullback, tr_map
    C = wb.category
    if not C.unital:
        raise SchemaError("/category/identities", "Morita invariance needs a unital category")
    r = _param(wb, args, "r", 2)
    N = _param(wb, args, "max_degree", 2)
    if r < 1:
        raise SchemaError("/params/r", "r must be positive")
    D = matrix_category(C, r)
    checks = dict(morita_chain_checks(C, r, N))
    hc_C, hc_D = cyclic_cohomology(C, N), cyclic_cohomology(D, N)
    checks["equal HC dims"] = hc_C.dims == hc_D.dims
    back_ok, there_ok = True, True
    entries = []
    for n in range(N + 1):
        for phi in hc_C.representatives[n]:
            back = pullback(pullback(phi, tr_map(C, r, n), D), inc_map(C, r, 1, n), C)
            back_ok &= back == phi
        for phi in hc_D.representatives[n]:
            there = pullback(pullback(phi, inc_map(C, r, 1, n), C), tr_map(C, r, n), D)
            eq, w = class_equal(there, phi)
            there_ok &= eq
            entries.append({"level": n, "phi": dump_cochain(phi), "image": dump_cochain(there),
                            "witness": dump_cochain(w) if eq else None})
    checks["inc1* tr* = id on representatives"] = back_ok
    checks["tr* inc1* = id in HC"] = there_ok
    outputs = {"r": r, "max_degree": N, "dims_C": hc_C.dims, "dims_matrix": hc_D.dims,
               "matrix_category": D.name, "class_witnesses": entries}
    return outputs, checks


def recheck_morita(wb, cert):
    from .cohomology import verify_witness
    from .morita import inc_map, matrix_category, pullback, tr_map
    out = cert["outputs"]
    C, r = wb.category, out["r"]
    D = matrix_category(C, r)
    ok_img = ok_w = True
    for k, e in enumerate(out["class_witnesses"]):
        at = pointer("outputs", "class_witnesses", k)
        n = e["level"]
        phi = parse_cochain(e["phi"], D, at + "/phi")
        img = parse_cochain(e["image"], D, at + "/image")
        ok_img &= pullback(pullback(phi, inc_map(C, r, 1, n), C), tr_map(C, r, n), D) == img
        w = parse_cochain(e["witness"], D, at + "/witness") if e["witness"] else None
        ok_w &= verify_witness(img - phi, w)
    return {"images recomputed": ok_img, "witnesses re-verify": ok_w}


def _reps(report, degree, where):
    if degree >= len(report.dims) or not report.representatives[degree]:
        raise SchemaError(where, f"no cohomology class in degree {degree}")
    return report.representatives[degree][0]


def task_pairing(wb, args):
    p = _param(wb, args, "p", 0)
    q = _param(wb, args, "q", 2)
    if args.hopf:
        from .hopf import cotensor_pairing, hopf_cyclic_cohomology
        report = hopf_cyclic_cohomology(wb.hopf, wb.sayd, wb.hcategory, max(p, q))
        phi = _reps(report, p, "/params/p")
        phi2 = _reps(report, q, "/params/q")
        out = cotensor_pairing(phi, phi2)
        checks = {"pairing is an equivariant cyclic cocycle": True}
        outputs = {"p": p, "q": q, "left": dump_twisted(phi), "right": dump_twisted(phi2),
                   "cotensor_dim": out.cotensor.module.dim, "pairing": dump_twisted(out)}
        return outputs, checks
    from .cohomology import cyclic_cohomology, is_cyclic_cocycle
    from .lincat import point_category
    from .periodicity import cup_product
    C2 = wb.category2 or point_category()
    if len(wb.cochains) >= 2:
        phi, phi2 = wb.cochains[0], wb.cochains[1]
        if phi2.category is not C2:
            raise SchemaError("/cochains/1/on", "the second cochain must live on category2")
    else:
        phi = _reps(cyclic_cohomology(wb.category, p), p, "/params/p")
        phi2 = _reps(cyclic_cohomology(C2, q), q, "/params/q")
    checks = {"inputs are cyclic cocycles": is_cyclic_cocycle(phi) and is_cyclic_cocycle(phi2)}
    cup = cup_product(phi, phi2)
    checks["cup product is a cyclic cocycle"] = is_cyclic_cocycle(cup)
    outputs = {"p": phi.level, "q": phi2.level, "left": dump_cochain(phi), "right": dump_cochain(phi2),
               "second_category": C2.to_dict(), "cup": dump_cochain(cup)}
    return outputs, checks


def recheck_pairing(wb, cert):
    out = cert["outputs"]
    if "pairing" in out:
        from .hopf import cotensor_pairing
        cx = _hopf_complex(wb)
        phi = parse_twisted(out["left"], cx, "/outputs/left")
        phi2 = parse_twisted(out["right"], cx, "/outputs/right")
        res = cotensor_pairing(phi, phi2)
        want = parse_twisted(out["pairing"], res.complex, "/outputs/pairing")
        return {"pairing recomputed": want.vec == res.vec}
    from .cohomology import is_cyclic_cocycle
    from .periodicity import cup_product, tensor_category
    from .schema import parse_category
    C2 = parse_category(out["second_category"], "/outputs/second_category", name="input2") \
        if wb.category2 is None else wb.category2
    phi = parse_cochain(out["left"], wb.category, "/outputs/left")
    phi2 = parse_cochain(out["right"], C2, "/outputs/right")
    cup = parse_cochain(out["cup"], tensor_category(wb.category, C2), "/outputs/cup")
    return {"cup recomputed": cup_product(phi, phi2) == cup, "cup cyclic cocycle": is_cyclic_cocycle(cup)}


def task_homotopy_family(wb, args):
    from .periodicity import homotopy_family_check
    if len(wb.family) < 2:
        raise SchemaError("/fredholm", "a family needs at least two sampled modules")
    m = _param(wb, args, "m", 0)
    res = homotopy_family_check(wb.family, m)
    outputs = {"m": m, "degree": 2 * m + 2, "samples": len(wb.family),
               "cochains": [dump_cochain(c) for c in res["cochains"]],
               "witnesses": [dump_cochain(w) for w in res["witnesses"]]}
    checks = {"equal classes": True,
              "conjugation to the swap form keeps the cocycle": all(res["conjugation_invariant"])}
    return outputs, checks


def recheck_homotopy_family(wb, cert):
    from .cohomology import verify_witness
    out = cert["outputs"]
    ok = True
    chs = [parse_cochain(c, wb.category, pointer("outputs", "cochains", k)) for k, c in enumerate(out["cochains"])]
    for k, FM in enumerate(wb.family):
        ok &= FM.chern_character(out["m"] + 1) == chs[k]
    good = True
    for k, w in enumerate(out["witnesses"], start=1):
        psi = parse_cochain(w, wb.category, pointer("outputs", "witnesses", k - 1)) if w else None
        good &= verify_witness(chs[k] - chs[0], psi)
    return {"cochains recomputed": ok, "witnesses re-verify": good}


TASKS = {
    "validate": (task_validate, recheck_validate),
    "cohomology": (task_cohomology, recheck_cohomology),
    "chern": (task_chern, recheck_chern),
    "periodicity": (task_periodicity, recheck_periodicity),
    "morita": (task_morita, recheck_morita),
    "pairing": (task_pairing, recheck_pairing),
    "homotopy-family": (task_homotopy_family, recheck_homotopy_family),
}


def _cli_params(args):
    out = {}
    for name in ("max_degree", "m", "r", "p", "q", "kind"):
        v = getattr(args, name, None)
        if v is not None:
            out[name] = v
    if getattr(args, "hopf", False):
        out["hopf"] = True
    return out


def recheck_certificate(cert):
    """Re-verify a serialized certificate from its embedded input document."""
    try:
        task = cert["task"]
        doc = cert["inputs"]["document"]
    except (KeyError, TypeError):
        raise SchemaError("/inputs/document", "not a certificate") from None
    if task not in TASKS:
        raise SchemaError("/task", f"unknown task {task!r}")
    if digest(doc) != cert["inputs"].get("digest"):
        return {"input digest": False}
    wb = parse_document(doc)
    checks = {"input digest": True}
    checks.update(TASKS[task][1](wb, cert))
    return checks


def run_task(task, args):
    key = task + ("-hopf" if getattr(args, "hopf", False) else "")
    doc, source = _input_document(args, key if key in catalog.DEFAULTS else task)
    wb = parse_document(doc)
    start = time.perf_counter()
    cert = {"task": task, "inputs": {"source": source, "digest": digest(doc), "document": doc,
                                     "params": _cli_params(args)}}
    try:
        outputs, checks = TASKS[task][0](wb, args)
    except ClassesDiffer as exc:
        ce = exc.certificate
        outputs = {"error": "ClassesDiffer", "message": str(exc)}
        if ce is not None and getattr(ce, "certificate", None) is not None:
            from .nerve import nerve_basis
            basis = nerve_basis(wb.category, 2 * _param(wb, args, "m", 0) + 2)
            outputs["separating_functional"] = {"level": len(basis.tuples[0]) - 1 if basis.tuples else 0,
                                                "values": {basis.label(k): dump_scalar(v)
                                                           for k, v in sorted(ce.certificate.items())}}
            outputs["pairing_with_difference"] = dump_scalar(ce.pairing)
        checks = {"equal classes": False}
    except (NotACocycle, NotLambdaInvariant, TraceAxiomViolated) as exc:
        outputs = {"error": type(exc).__name__, "message": str(exc)}
        checks = {"input hypothesis": False}
    cert["outputs"] = outputs
    cert["checks"] = checks
    if args.recheck and all(checks.values()):
        replay = json.loads(json.dumps(cert, sort_keys=True))
        for name, ok in recheck_certificate(replay).items():
            checks[f"recheck: {name}"] = bool(ok)
    cert["verdict"] = "pass" if all(checks.values()) else "fail"
    if args.timing:
        cert["timing_seconds"] = round(time.perf_counter() - start, 3)
    return cert


# selftest

# id + E12 on idem (x) M2: conjugation by it is a non-identity inner automorphism
INNER_ETA = {"1*E1,1": "1", "1*E2,2": "1", "1*E1,2": "1"}

def selftest_checks():
    """Named invariant checks on the built-in examples."""
    from . import lincat
    from .cohomology import cohomology_dims, cyclic_cohomology
    from .hopf import (brute_force_hc0, hopf_cyclic_cohomology, hopf_identity_checks, reduction_check,
                       validate_hopf_inputs, HopfComplex)
    from .morita import inner_certificate, morita_certificate
    from .nerve import cocyclic_identity_checks, connes_identity_checks
    from .omega import cocycle_to_trace, trace_to_cocycle
    from .periodicity import b0_image_witness, homotopy_family_check, point, verify_periodicity_theorem
    from .exact_linalg import Scalar

    def wb(name):
        return parse_document(catalog.document(name))

    def all_ok(pairs):
        return all(ok for _, ok in pairs)

    def roundtrips():
        C = lincat.idempotent_arrow_category()
        rep = cyclic_cohomology(C, 2)
        return all(trace_to_cocycle(cocycle_to_trace(phi)) == phi for level in rep.representatives for phi in level)

    def b0():
        C = lincat.idempotent_category()
        rep = cyclic_cohomology(C, 2)
        return all(b0_image_witness(phi)[1] for level in rep.representatives for phi in level)

    def periodic():
        res = verify_periodicity_theorem(wb("fredholm-idem-arrow").fredholm, 0)
        return res["ok"]

    def s_point():
        from .periodicity import periodicity_S
        psi = cyclic_cohomology(point(), 2).representatives[2][0]
        return periodicity_S(psi).value("1|1|1|1|1") * psi.value("1|1|1").inverse() == Scalar(2)

    def morita():
        return morita_certificate(lincat.idempotent_category(), 2, 2)["ok"]

    def inner():
        C = lincat.tensor_matrix(lincat.idempotent_category(), 2)
        return inner_certificate(C, {C.objects[0]: INNER_ETA}, 2)["ok"]

    def hopf_z2():
        w = wb("z2-conj")
        cx = HopfComplex(w.hopf, w.sayd, w.hcategory)
        ok = validate_hopf_inputs(w.hopf, w.sayd, w.hcategory).ok
        ok &= all_ok(hopf_identity_checks(cx, 3, "cochain"))
        return ok and hopf_cyclic_cohomology(w.hopf, w.sayd, w.hcategory, 3, cx=cx).dims == [2, 0, 2, 0]

    def hopf_s3():
        w = wb("s3-conj")
        cx = HopfComplex(w.hopf, w.sayd, w.hcategory)
        return validate_hopf_inputs(w.hopf, w.sayd, w.hcategory).ok and brute_force_hc0(cx) == 3

    def reduction():
        checks, hd, pd = reduction_check(lincat.idempotent_arrow_category(), 2)
        return all_ok(checks)

    def families():
        ok = homotopy_family_check(wb("family-constant").family, 0)["ok"]
        ok &= homotopy_family_check(wb("family-conjugated").family, 0)["ok"]
        try:
            homotopy_family_check(wb("family-adversarial").family, 0)
        except ClassesDiffer:
            return ok
        return False

    yield "point HC dims 1,0,1,0,1", lambda: cohomology_dims(lincat.point_category(), 4) == [1, 0, 1, 0, 1]
    for name in ("point", "dual", "idem", "arrow", "idem-arrow", "k3"):
        C = wb(name).category
        yield f"cocyclic identities on {name}", (lambda C=C: all_ok(cocyclic_identity_checks(C, 3)))
    yield "Connes identities on idem-arrow", lambda: all_ok(connes_identity_checks(lincat.idempotent_arrow_category(), 2))
    yield "trace and cocycle roundtrip", roundtrips
    yield "B psi = 2(n+1) phi witnesses", b0
    yield "periodicity on fredholm-idem-arrow", periodic
    yield "S(psi)(1,1,1,1,1) = 2", s_point
    yield "Morita invariance r=2 on idem", morita
    yield "inner automorphism witnesses on idem (x) M2", inner
    yield "Hopf layer on z2-conj", hopf_z2
    yield "Hopf HC^0 on s3-conj", hopf_s3
    yield "H = k reduction on idem-arrow", reduction
    yield "homotopy families", families


def run_selftest(args):
    start = time.perf_counter()
    checks = {}
    for name, fn in selftest_checks():
        try:
            checks[name] = bool(fn())
        except CychomError as exc:
            checks[name] = False
            print(f"{name}: {type(exc).__name__}: {exc}", file=sys.stderr)
    cert = {"task": "selftest", "checks": checks, "verdict": "pass" if all(checks.values()) else "fail"}
    if args.timing:
        cert["timing_seconds"] = round(time.perf_counter() - start, 3)
    return cert


# rendering

def _text_value(v):
    if isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        return ",".join(str(x) for x in v)
    if isinstance(v, dict) and set(v) == {"level", "values"}:
        vals = v["values"]
        if not vals:
            return f"level {v['level']}: 0"
        return f"level {v['level']}: " + ", ".join(f"{k} -> {c}" for k, c in vals.items())
    return json.dumps(v, sort_keys=True, ensure_ascii=False)


def render(cert, fmt):
    if fmt == "json":
        return json.dumps(cert, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    lines = [f"task: {cert['task']}"]
    inputs = cert.get("inputs")
    if inputs:
        lines.append(f"input: {inputs['source']} sha256={inputs['digest'][:16]}")
    for key, v in sorted(cert.get("outputs", {}).items()):
        if key == "second_category":
            continue
        if isinstance(v, list) and v and all(isinstance(x, list) for x in v):
            for n, level in enumerate(v):
                for k, item in enumerate(level):
                    lines.append(f"{key}[{n}][{k}]: {_text_value(item)}")
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            for k, item in enumerate(v):
                lines.append(f"{key}[{k}]: {_text_value(item)}")
        else:
            lines.append(f"{key}: {_text_value(v)}")
    for name, ok in cert["checks"].items():
        lines.append(f"check {name}: {'ok' if ok else 'FAIL'}")
    if "timing_seconds" in cert:
        lines.append(f"time: {cert['timing_seconds']}s")
    lines.append(f"verdict: {cert['verdict']}")
    return "\n".join(lines) + "\n"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="report wall-clock time (breaks byte identity)")
    withinput = argparse.ArgumentParser(add_help=False, parents=[common])
    withinput.add_argument("input", nargs="?", help="JSON document, '-' for stdin")
    withinput.add_argument("--builtin", metavar="NAME", help=f"one of: {', '.join(catalog.names())}")
    withinput.add_argument("--recheck", action="store_true",
                           help="round-trip the certificate through JSON and re-verify it")

    p = argparse.ArgumentParser(prog="cychom", description="Exact cyclic cohomology workbench.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[withinput], help="check the axioms of every input structure")
    c = sub.add_parser("cohomology", parents=[withinput], help="cyclic or Hopf-cyclic cohomology")
    c.add_argument("--max-degree", type=int, dest="max_degree")
    c.add_argument("--hopf", action="store_true")
    c.add_argument("--kind", choices=("cyclic", "hochschild"))
    for name, helptext in (("chern", "Chern cocycle of a Fredholm module"),
                           ("periodicity", "periodicity identity with its witness"),
                           ("homotopy-family", "class equality across a sampled family")):
        s = sub.add_parser(name, parents=[withinput], help=helptext)
        s.add_argument("--m", type=int)
    mo = sub.add_parser("morita", parents=[withinput], help="Morita invariance against C (x) M_r")
    mo.add_argument("--r", type=int)
    mo.add_argument("--max-degree", type=int, dest="max_degree")
    pa = sub.add_parser("pairing", parents=[withinput], help="cup product or cotensor pairing")
    pa.add_argument("--p", type=int)
    pa.add_argument("--q", type=int)
    pa.add_argument("--hopf", action="store_true")
    sub.add_parser("selftest", parents=[common], help="invariant suite on the built-in examples")
    rc = sub.add_parser("recheck", parents=[common], help="re-verify a stored JSON certificate")
    rc.add_argument("certificate")
    return p


def _negative(args):
    for name in ("max_degree", "m", "p", "q"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise SchemaError(pointer("params", name), "must be nonnegative")


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            cert = run_selftest(args)
        elif args.command == "recheck":
            args.input, args.builtin = args.certificate, None
            doc, _ = _input_document(args, "validate")
            checks = recheck_certificate(doc)
            cert = {"task": "recheck", "checks": checks, "verdict": "pass" if all(checks.values()) else "fail"}
        else:
            _negative(args)
            cert = run_task(args.command, args)
    except SchemaError as exc:
        print(f"cychom: input error at {exc.pointer}: {exc.detail}", file=sys.stderr)
        return EXIT_INPUT
    except SizeLimitExceeded as exc:
        print(f"cychom: {exc} (raise CYCHOM_BASIS_LIMIT to allow it)", file=sys.stderr)
        return EXIT_INPUT
    except CychomError as exc:
        print(f"cychom: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out.write(render(cert, args.format))
    return EXIT_OK if cert["verdict"] == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
