"""Built-in workbench documents, addressable by name from the command line."""

import json

from . import lincat
from .hopf import cyclic_group_table, symmetric_group_table


def _cat(build):
    return build().to_dict()


def _group(els, table, name):
    return {"group": {"name": name, "elements": els,
                      "table": {f"{g}|{h}": k for (g, h), k in table.items()}}}


def _one(x):
    return [[x]]


# (1|1) on X and Y, e -> (1, 0), a and ae -> (1, 0), F the swap; phi^0(e) = 1
IDEM_ARROW_MODULE = {
    "spaces": {"X": {"even": 1, "odd": 1}, "Y": {"even": 1, "odd": 1}},
    "action": {
        "1X": {"even": _one("1"), "odd": _one("1")},
        "1Y": {"even": _one("1"), "odd": _one("1")},
        "e": {"even": _one("1"), "odd": _one("0")},
        "a": {"even": _one("1"), "odd": _one("0")},
        "ae": {"even": _one("1"), "odd": _one("0")},
    },
    "F": {"X": {"odd_from_even": _one("1"), "even_from_odd": _one("1")},
          "Y": {"odd_from_even": _one("1"), "even_from_odd": _one("1")}},
}

# the same module conjugated by diag(2, 1) on X and diag(1, 1+i) on Y
IDEM_ARROW_CONJUGATED = {
    "spaces": IDEM_ARROW_MODULE["spaces"],
    "action": {
        "1X": {"even": _one("1"), "odd": _one("1")},
        "1Y": {"even": _one("1"), "odd": _one("1")},
        "e": {"even": _one("1"), "odd": _one("0")},
        "a": {"even": _one("1/2"), "odd": _one("0")},
        "ae": {"even": _one("1/2"), "odd": _one("0")},
    },
    "F": {"X": {"odd_from_even": _one("1/2"), "even_from_odd": _one("2")},
          "Y": {"odd_from_even": _one("1+1i"), "even_from_odd": _one("1/2-1/2i")}},
}


def _idem_module(e_even):
    return {
        "spaces": {"X": {"even": 1, "odd": 1}},
        "action": {"1": {"even": _one("1"), "odd": _one("1")},
                   "e": {"even": _one(e_even), "odd": _one("0")}},
        "F": {"X": {"odd_from_even": _one("1"), "even_from_odd": _one("1")}},
    }


def _build():
    z2 = _group(*cyclic_group_table(2), "k[Z/2]")
    s3 = _group(*symmetric_group_table(3), "k[S3]")
    k3 = _cat(lambda: lincat.semisimple_category(3))
    swap = {"action": {
        "e": {"1": {"1": "1"}, "e1": {"e1": "1"}, "e2": {"e2": "1"}},
        "g": {"1": {"1": "1"}, "e1": {"e2": "1"}, "e2": {"e1": "1"}},
    }}
    ia = _cat(lincat.idempotent_arrow_category)
    return {
        "point": {"category": _cat(lincat.point_category)},
        "dual": {"category": _cat(lincat.dual_numbers)},
        "idem": {"category": _cat(lincat.idempotent_category)},
        "arrow": {"category": _cat(lincat.arrow_category)},
        "idem-arrow": {"category": ia},
        "k3": {"category": k3},
        "fredholm-idem-arrow": {"category": ia, "fredholm": IDEM_ARROW_MODULE},
        "pairing-idem-point": {"category": _cat(lincat.idempotent_category),
                               "category2": _cat(lincat.point_category),
                               "params": {"p": 0, "q": 2}},
        "z2-conj": {"hopf": z2, "hcategory": "conjugation"},
        "s3-conj": {"hopf": s3, "hcategory": "conjugation"},
        "z2-swap": {"hopf": z2, "category": k3, "hcategory": swap,
                    "sayd": {"graded": {"degrees": ["g"]}}},
        "family-constant": {"category": ia, "fredholm": [IDEM_ARROW_MODULE, IDEM_ARROW_MODULE]},
        "family-conjugated": {"category": ia, "fredholm": [IDEM_ARROW_MODULE, IDEM_ARROW_CONJUGATED]},
        "family-adversarial": {"category": _cat(lincat.idempotent_category),
                               "fredholm": [_idem_module("1"), _idem_module("0")]},
    }


_DOCS = None


def names():
    return sorted(_docs())


def _docs():
    global _DOCS
    if _DOCS is None:
        _DOCS = _build()
    return _DOCS


def document(name):
    """A fresh copy of builtin ``name``; KeyError if unknown."""
    # through JSON, so shared sub-documents come back unaliased
    return json.loads(json.dumps(_docs()[name]))


DEFAULTS = {
    "validate": "point",
    "cohomology": "point",
    "cohomology-hopf": "z2-conj",
    "chern": "fredholm-idem-arrow",
    "periodicity": "fredholm-idem-arrow",
    "morita": "point",
    "pairing": "pairing-idem-point",
    "pairing-hopf": "z2-conj",
    "homotopy-family": "family-conjugated",
}
