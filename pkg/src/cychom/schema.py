"""JSON document layer: parse workbench inputs, dump exact objects.

Every parse error is a SchemaError carrying a JSON pointer to the offending
value.  Scalars are strings in the literal grammar of exact_linalg (plain
JSON integers are accepted too).
"""

from dataclasses import dataclass, field

from .errors import CychomError, ParseError, SchemaError
from .exact_linalg import Scalar, SparseMatrix, format_scalar, parse_scalar
from .lincat import LinCategory


def pointer(*parts):
    out = ""
    for p in parts:
        out += "/" + str(p).replace("~", "~0").replace("/", "~1")
    return out


def _need(obj, kind, where):
    if not isinstance(obj, kind):
        name = {dict: "an object", list: "an array", str: "a string", int: "an integer"}.get(kind, str(kind))
        raise SchemaError(where, f"expected {name}")
    return obj


def scalar(value, where):
    if isinstance(value, bool):
        raise SchemaError(where, "expected a scalar literal")
    if isinstance(value, int):
        return Scalar(value)
    if not isinstance(value, str):
        raise SchemaError(where, "expected a scalar literal string")
    try:
        return parse_scalar(value)
    except ParseError as exc:
        raise SchemaError(where, str(exc)) from None


def coord_dict(obj, where, names=None):
    _need(obj, dict, where)
    out = {}
    for k, v in obj.items():
        if names is not None and k not in names:
            raise SchemaError(pointer_join(where, k), f"unknown id {k!r}")
        c = scalar(v, pointer_join(where, k))
        if c:
            out[k] = c
    return out


def pointer_join(base, *parts):
    return base + pointer(*parts)


def dense_matrix(obj, nrows, ncols, where):
    _need(obj, list, where)
    if len(obj) != nrows:
        raise SchemaError(where, f"expected {nrows} rows, got {len(obj)}")
    rows = {}
    for i, row in enumerate(obj):
        _need(row, list, pointer_join(where, i))
        if len(row) != ncols:
            raise SchemaError(pointer_join(where, i), f"expected {ncols} entries, got {len(row)}")
        r = {}
        for j, v in enumerate(row):
            c = scalar(v, pointer_join(where, i, j))
            if c:
                r[j] = c
        if r:
            rows[i] = r
    return SparseMatrix(nrows, ncols, rows)


def parse_category(obj, where="/category", name=None):
    _need(obj, dict, where)
    objects = _need(obj.get("objects"), list, pointer_join(where, "objects"))
    for k, x in enumerate(objects):
        _need(x, str, pointer_join(where, "objects", k))
    if len(set(objects)) != len(objects):
        raise SchemaError(pointer_join(where, "objects"), "repeated object names")
    homs_in = _need(obj.get("homs", {}), dict, pointer_join(where, "homs"))
    homs = {}
    seen = set()
    for key, ids in homs_in.items():
        at = pointer_join(where, "homs", key)
        parts = key.split("|")
        if len(parts) != 2:
            raise SchemaError(at, "hom keys have the form 'source|target'")
        for p in parts:
            if p not in objects:
                raise SchemaError(at, f"unknown object {p!r}")
        _need(ids, list, at)
        for k, f in enumerate(ids):
            _need(f, str, pointer_join(at, k))
            if f in seen:
                raise SchemaError(pointer_join(at, k), f"morphism {f!r} appears twice")
            seen.add(f)
        homs[(parts[0], parts[1])] = list(ids)
    compose = {}
    for k, entry in enumerate(_need(obj.get("compose", []), list, pointer_join(where, "compose"))):
        at = pointer_join(where, "compose", k)
        _need(entry, dict, at)
        g, f = entry.get("g"), entry.get("f")
        for lab, v in (("g", g), ("f", f)):
            if v not in seen:
                raise SchemaError(pointer_join(at, lab), f"unknown morphism {v!r}")
        if (g, f) in compose:
            raise SchemaError(at, f"composition {g} o {f} given twice")
        compose[(g, f)] = coord_dict(entry.get("result", {}), pointer_join(at, "result"), seen)
    identities = None
    if "identities" in obj:
        identities = {}
        at = pointer_join(where, "identities")
        for x, vec in _need(obj["identities"], dict, at).items():
            if x not in objects:
                raise SchemaError(pointer_join(at, x), f"unknown object {x!r}")
            identities[x] = coord_dict(vec, pointer_join(at, x), seen)
    try:
        return LinCategory(objects, homs, compose, identities, name=name or obj.get("name", "input"))
    except CychomError as exc:
        raise SchemaError(where, str(exc)) from None


def parse_fredholm(obj, C, where="/fredholm"):
    from .fredholm import FredholmModule
    _need(obj, dict, where)
    spaces = {}
    sp = _need(obj.get("spaces"), dict, pointer_join(where, "spaces"))
    for x in C.objects:
        at = pointer_join(where, "spaces", x)
        if x not in sp:
            raise SchemaError(at, f"missing graded space for object {x!r}")
        d = _need(sp[x], dict, at)
        e, o = d.get("even", 0), d.get("odd", 0)
        for lab, v in (("even", e), ("odd", o)):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise SchemaError(pointer_join(at, lab), "expected a nonnegative integer")
        spaces[x] = (e, o)
    for x in sp:
        if x not in C.objects:
            raise SchemaError(pointer_join(where, "spaces", x), f"unknown object {x!r}")
    action = {}
    act = _need(obj.get("action", {}), dict, pointer_join(where, "action"))
    for f, blocks in act.items():
        at = pointer_join(where, "action", f)
        if f not in C.mor_index:
            raise SchemaError(at, f"unknown morphism {f!r}")
        _need(blocks, dict, at)
        k = C.mor_index[f]
        (se, so), (te, to) = spaces[C.objects[C.src[k]]], spaces[C.objects[C.tgt[k]]]
        ev = dense_matrix(blocks["even"], te, se, pointer_join(at, "even")) if "even" in blocks else None
        od = dense_matrix(blocks["odd"], to, so, pointer_join(at, "odd")) if "odd" in blocks else None
        action[f] = (ev, od)
    F = {}
    Fin = _need(obj.get("F"), dict, pointer_join(where, "F"))
    for x in C.objects:
        at = pointer_join(where, "F", x)
        if x not in Fin:
            raise SchemaError(at, f"missing F for object {x!r}")
        d = _need(Fin[x], dict, at)
        e, o = spaces[x]
        ofe = dense_matrix(d.get("odd_from_even", [[0] * e for _ in range(o)]), o, e, pointer_join(at, "odd_from_even"))
        efo = dense_matrix(d.get("even_from_odd", [[0] * o for _ in range(e)]), e, o, pointer_join(at, "even_from_odd"))
        F[x] = (ofe, efo)
    return FredholmModule(C, spaces, action, F)


def parse_hopf(obj, where="/hopf"):
    from .hopf import HopfAlgebra, group_algebra
    from .errors import NotAGroup, NotInvertible
    _need(obj, dict, where)
    if "group" in obj:
        at = pointer_join(where, "group")
        g = _need(obj["group"], dict, at)
        els = _need(g.get("elements"), list, pointer_join(at, "elements"))
        tab = _need(g.get("table"), dict, pointer_join(at, "table"))
        table = {}
        for key, v in tab.items():
            parts = key.split("|")
            if len(parts) != 2:
                raise SchemaError(pointer_join(at, "table", key), "table keys have the form 'g|h'")
            table[tuple(parts)] = v
        try:
            return group_algebra(els, table, name=g.get("name", "k[G]"))
        except NotAGroup as exc:
            raise SchemaError(pointer_join(at, "table"), str(exc)) from None
    basis = _need(obj.get("basis"), list, pointer_join(where, "basis"))
    idx = {b: k for k, b in enumerate(basis)}

    def names_vec(v, at):
        return {idx[k]: c for k, c in coord_dict(v, at, idx).items()}

    def ref(v, at):
        if v not in idx:
            raise SchemaError(at, f"unknown basis element {v!r}")
        return idx[v]

    mult = {}
    for k, e in enumerate(_need(obj.get("mult", []), list, pointer_join(where, "mult"))):
        at = pointer_join(where, "mult", k)
        _need(e, dict, at)
        mult[(ref(e.get("a"), pointer_join(at, "a")), ref(e.get("b"), pointer_join(at, "b")))] = \
            names_vec(e.get("result", {}), pointer_join(at, "result"))
    comult = {}
    for k, e in enumerate(_need(obj.get("comult", []), list, pointer_join(where, "comult"))):
        at = pointer_join(where, "comult", k)
        _need(e, dict, at)
        a = ref(e.get("a"), pointer_join(at, "a"))
        terms = {}
        for t, term in enumerate(_need(e.get("result", []), list, pointer_join(at, "result"))):
            tat = pointer_join(at, "result", t)
            _need(term, dict, tat)
            key = (ref(term.get("left"), pointer_join(tat, "left")), ref(term.get("right"), pointer_join(tat, "right")))
            terms[key] = scalar(term.get("coeff", "1"), pointer_join(tat, "coeff"))
        comult[a] = terms
    counit = names_vec(obj.get("counit", {}), pointer_join(where, "counit"))
    unit = names_vec(obj.get("unit", {}), pointer_join(where, "unit"))
    anti = {}
    at = pointer_join(where, "antipode")
    for a, v in _need(obj.get("antipode", {}), dict, at).items():
        anti[ref(a, pointer_join(at, a))] = names_vec(v, pointer_join(at, a))
    try:
        return HopfAlgebra(basis, mult, unit, comult, counit, anti, name=obj.get("name", "H"))
    except NotInvertible as exc:
        raise SchemaError(at, str(exc)) from None


def parse_sayd(obj, H, where="/sayd"):
    from .hopf import SAYDModule, group_sayd, trivial_sayd
    if obj is None or obj == "trivial" or (isinstance(obj, dict) and obj.get("trivial")):
        return trivial_sayd(H)
    _need(obj, dict, where)
    if "graded" in obj:
        at = pointer_join(where, "graded")
        g = _need(obj["graded"], dict, at)
        degrees = _need(g.get("degrees"), list, pointer_join(at, "degrees"))
        for k, s in enumerate(degrees):
            if s not in H.index:
                raise SchemaError(pointer_join(at, "degrees", k), f"unknown group element {s!r}")
        chars = None
        if "characters" in g:
            chars = []
            for k, ch in enumerate(_need(g["characters"], list, pointer_join(at, "characters"))):
                chars.append(coord_dict(ch, pointer_join(at, "characters", k), H.index))
        if not hasattr(H, "group_table"):
            raise SchemaError(at, "graded modules need a group Hopf algebra")
        return group_sayd(H, degrees, chars)
    basis = _need(obj.get("basis"), list, pointer_join(where, "basis"))
    idx = {b: k for k, b in enumerate(basis)}
    act = {}
    for k, e in enumerate(_need(obj.get("action", []), list, pointer_join(where, "action"))):
        at = pointer_join(where, "action", k)
        _need(e, dict, at)
        m, h = e.get("m"), e.get("h")
        if m not in idx:
            raise SchemaError(pointer_join(at, "m"), f"unknown module basis element {m!r}")
        if h not in H.index:
            raise SchemaError(pointer_join(at, "h"), f"unknown Hopf basis element {h!r}")
        act[(idx[m], H.index[h])] = {idx[a]: c for a, c in coord_dict(e.get("result", {}), pointer_join(at, "result"), idx).items()}
    coact = {}
    for k, e in enumerate(_need(obj.get("coaction", []), list, pointer_join(where, "coaction"))):
        at = pointer_join(where, "coaction", k)
        _need(e, dict, at)
        m = e.get("m")
        if m not in idx:
            raise SchemaError(pointer_join(at, "m"), f"unknown module basis element {m!r}")
        terms = {}
        for t, term in enumerate(_need(e.get("result", []), list, pointer_join(at, "result"))):
            tat = pointer_join(at, "result", t)
            h, m0 = term.get("h"), term.get("m0")
            if h not in H.index:
                raise SchemaError(pointer_join(tat, "h"), f"unknown Hopf basis element {h!r}")
            if m0 not in idx:
                raise SchemaError(pointer_join(tat, "m0"), f"unknown module basis element {m0!r}")
            terms[(H.index[h], idx[m0])] = scalar(term.get("coeff", "1"), pointer_join(tat, "coeff"))
        coact[idx[m]] = terms
    return SAYDModule(H, basis, act, coact, name=obj.get("name", "M"))


def parse_hcategory(obj, H, C, where="/hcategory"):
    """Action table {h: {f: {g: c}}} on C; 'conjugation' builds k[G] itself."""
    from .hopf import HCategory, conjugation_category, trivial_action
    if obj is None or obj == "trivial":
        if C is None:
            raise SchemaError("/category", "an H-category needs a category")
        return trivial_action(H, C)
    if obj == "conjugation" or (isinstance(obj, dict) and obj.get("conjugation")):
        if not hasattr(H, "group_table"):
            raise SchemaError(where, "conjugation needs a group Hopf algebra")
        return conjugation_category(H)
    _need(obj, dict, where)
    if C is None:
        raise SchemaError("/category", "an H-category needs a category")
    at = pointer_join(where, "action")
    table = _need(obj.get("action", {}), dict, at)
    action = {}
    for h, per in table.items():
        if h not in H.index:
            raise SchemaError(pointer_join(at, h), f"unknown Hopf basis element {h!r}")
        _need(per, dict, pointer_join(at, h))
        rows = {}
        for f, img in per.items():
            if f not in C.mor_index:
                raise SchemaError(pointer_join(at, h, f), f"unknown morphism {f!r}")
            rows[C.mor_index[f]] = {C.mor_index[g]: c
                                     for g, c in coord_dict(img, pointer_join(at, h, f), C.mor_index).items()}
        action[H.index[h]] = rows
    return HCategory(H, C, action)


def parse_cochain(obj, C, where):
    from .nerve import Cochain, nerve_basis
    _need(obj, dict, where)
    level = obj.get("level")
    if not isinstance(level, int) or isinstance(level, bool) or level < 0:
        raise SchemaError(pointer_join(where, "level"), "expected a nonnegative integer")
    basis = nerve_basis(C, level)
    vec = {}
    at = pointer_join(where, "values")
    for label, v in _need(obj.get("values", {}), dict, at).items():
        try:
            j = basis.parse_label(label)
        except (KeyError, ValueError) as exc:
            raise SchemaError(pointer_join(at, label), str(exc)) from None
        c = scalar(v, pointer_join(at, label))
        if c:
            vec[j] = c
    return Cochain(C, level, vec)


# output side

def dump_scalar(z):
    return format_scalar(z)


def dump_cochain(phi):
    """{'level': n, 'values': {label: literal}} in basis order."""
    if phi is None:
        return None
    basis = phi.basis()
    return {"level": phi.level,
            "values": {basis.label(j): dump_scalar(phi.vec[j]) for j in sorted(phi.vec)}}


def dump_twisted(phi):
    cx = phi.complex
    N = len(cx.nerve(phi.level))
    out = {}
    for j in sorted(phi.vec):
        m, t = divmod(j, N)
        out[f"{cx.module.basis[m]}:{cx.nerve(phi.level).label(t)}"] = dump_scalar(phi.vec[j])
    return {"level": phi.level, "values": out}


def parse_twisted(obj, cx, where):
    from .hopf import TwistedCochain
    _need(obj, dict, where)
    level = obj.get("level")
    if not isinstance(level, int) or level < 0:
        raise SchemaError(pointer_join(where, "level"), "expected a nonnegative integer")
    basis = cx.nerve(level)
    N = len(basis)
    vec = {}
    at = pointer_join(where, "values")
    for label, v in _need(obj.get("values", {}), dict, at).items():
        m, _, rest = label.partition(":")
        if m not in cx.module.index:
            raise SchemaError(pointer_join(at, label), f"unknown module basis element {m!r}")
        try:
            t = basis.parse_label(rest)
        except (KeyError, ValueError) as exc:
            raise SchemaError(pointer_join(at, label), str(exc)) from None
        vec[cx.module.index[m] * N + t] = scalar(v, pointer_join(at, label))
    return TwistedCochain(cx, level, vec)


@dataclass
class Workbench:
    """Parsed input document."""

    category: object = None
    category2: object = None
    fredholm: object = None
    family: list = field(default_factory=list)
    hopf: object = None
    sayd: object = None
    hcategory: object = None
    cochains: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    source: dict = field(default_factory=dict)


def parse_document(doc):
    _need(doc, dict, "")
    wb = Workbench(source=doc)
    if "category" in doc:
        wb.category = parse_category(doc["category"])
    if "category2" in doc:
        wb.category2 = parse_category(doc["category2"], "/category2", name="input2")
    if "hopf" in doc:
        wb.hopf = parse_hopf(doc["hopf"])
        wb.sayd = parse_sayd(doc.get("sayd"), wb.hopf)
        wb.hcategory = parse_hcategory(doc.get("hcategory"), wb.hopf, wb.category)
        if wb.category is None:
            wb.category = wb.hcategory.cat
    elif "sayd" in doc or "hcategory" in doc:
        raise SchemaError("/hopf", "sayd and hcategory need a hopf description")
    if wb.category is None:
        raise SchemaError("/category", "missing category description")
    if "fredholm" in doc:
        fr = doc["fredholm"]
        if isinstance(fr, list):
            wb.family = [parse_fredholm(x, wb.category, pointer("fredholm", k)) for k, x in enumerate(fr)]
            wb.fredholm = wb.family[0] if wb.family else None
        else:
            wb.fredholm = parse_fredholm(fr, wb.category)
            wb.family = [wb.fredholm]
    if "cochains" in doc:
        for k, c in enumerate(_need(doc["cochains"], list, "/cochains")):
            target = wb.category
            if isinstance(c, dict) and c.get("on") == "category2":
                if wb.category2 is None:
                    raise SchemaError(pointer("cochains", k, "on"), "no category2 given")
                target = wb.category2
            wb.cochains.append(parse_cochain(c, target, pointer("cochains", k)))
    params = doc.get("params", {})
    _need(params, dict, "/params")
    for key, v in params.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise SchemaError(pointer("params", key), "expected an integer")
    wb.params = dict(params)
    return wb
