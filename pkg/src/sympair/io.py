"""Algebra-definition files, polynomial serialization, and run reports.

The single ingestion format is a JSON object:

    {
      "name": "sl2",
      "basis": ["H", "X", "Y"],
      "brackets": {"[0,1]": {"1": "2"}, "[0,2]": {"2": "-2"}, "[1,2]": {"0": "1"}},
      "sigma": [["-1","0","0"], ["0","0","-1"], ["0","-1","0"]],
      "definitions": {"omega": {"H^2": "1", "(X+Y)^2": "1"}},
      "iwasawa": {"p0": [...], "n_plus": [...], "k0": [...], "r": [...]},
      "weyl": [[[...], ...]]
    }

Rationals are canonical "p/q" strings and indices are 0-based.  Vectors in
the iwasawa block are over the original basis.  Polynomial definitions use
monomial keys like "H^2*(X+Y)^1" resolved against the adapted basis names.
"""

from __future__ import annotations

import hashlib
import json
import re
import time
from fractions import Fraction

from . import util
from .liealg import LieAlgebraDef, SymmetricPair, build_symmetric_pair
from .hc import IwasawaData
from .poly import Poly
from .polyops import BlockPolynomial

_BRACKET_KEY = re.compile(r"^\[(\d+),(\d+)\]$")


def load_algebra_file(path: str):
    with open(path) as fh:
        data = json.load(fh)
    return parse_algebra(data)


def parse_algebra(data: dict):
    name = data["name"]
    basis = list(data["basis"])
    brackets = {}
    for key, coeffs in data.get("brackets", {}).items():
        m = _BRACKET_KEY.match(key.replace(" ", ""))
        if not m:
            raise ValueError(f"bad bracket key {key!r}")
        i, j = int(m.group(1)), int(m.group(2))
        brackets[(i, j)] = {int(k): util.frac(v) for k, v in coeffs.items()}
    algebra = LieAlgebraDef(name, basis, brackets)
    sigma = data["sigma"]
    adapted = None
    if "adapted" in data:
        adapted = (data["adapted"]["p"], data["adapted"]["k"])
    pair = build_symmetric_pair(algebra, sigma, adapted=adapted)
    return pair, data


def parse_monomial(pair: SymmetricPair, key: str, space: str = "p"):
    """Monomial string like "H^2*(X+Y)^1" -> exponent tuple over a block."""
    idx = list(pair.block_indices(space))
    names = {pair.adapted_names[i]: t for t, i in enumerate(idx)}
    exps = [0] * len(idx)
    key = key.strip()
    if key in ("", "1"):
        return tuple(exps)
    for factor in key.split("*"):
        factor = factor.strip()
        if "^" in factor:
            sym, power = factor.rsplit("^", 1)
            power = int(power)
        else:
            sym, power = factor, 1
        sym = sym.strip()
        if sym.startswith("(") and sym.endswith(")"):
            sym = sym[1:-1]
        if sym not in names:
            raise ValueError(f"unknown symbol {sym!r}; adapted names are {pair.adapted_names}")
        exps[names[sym]] += power
    return tuple(exps)


def parse_poly(pair: SymmetricPair, mapping: dict, space: str = "p") -> BlockPolynomial:
    nv = len(pair.block_indices(space))
    terms = {}
    for key, coeff in mapping.items():
        exps = parse_monomial(pair, key, space)
        terms[exps] = terms.get(exps, Fraction(0)) + util.frac(coeff)
    return BlockPolynomial(pair, space, Poly(nv, terms))


def resolve_definition(pair: SymmetricPair, data: dict, name: str, space: str = "p") -> BlockPolynomial:
    defs = data.get("definitions", {})
    if name not in defs:
        raise KeyError(f"no definition named {name!r} in the algebra file")
    return parse_poly(pair, defs[name], space)


def format_monomial(pair: SymmetricPair, exps, space: str = "p") -> str:
    idx = list(pair.block_indices(space))
    parts = []
    for t, e in enumerate(exps):
        if not e:
            continue
        sym = pair.adapted_names[idx[t]]
        if re.search(r"[+\-*/]", sym):
            sym = f"({sym})"
        parts.append(sym if e == 1 else f"{sym}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(pair: SymmetricPair, f: BlockPolynomial) -> str:
    if f.poly.is_zero():
        return "0"
    items = sorted(f.poly.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0]))
    parts = []
    for exps, coeff in items:
        mono = format_monomial(pair, exps, f.space)
        if mono == "1":
            term = util.fmt(coeff)
        elif coeff == 1:
            term = mono
        elif coeff == -1:
            term = f"-{mono}"
        else:
            term = f"{util.fmt(coeff)}*{mono}"
        if parts and not term.startswith("-"):
            parts.append(f"+ {term}")
        elif parts:
            parts.append(f"- {term[1:]}")
        else:
            parts.append(term)
    return " ".join(parts)


def pretty_in_definitions(pair: SymmetricPair, data: dict, f: BlockPolynomial) -> str:
    """Render f as a polynomial in one named definition when possible.

    Tries, for each definition d, to match f = sum_k c_k d^k by exact
    linear algebra on monomial coordinates; falls back to raw monomials.
    """
    defs = data.get("definitions", {})
    for name in sorted(defs):
        try:
            d = resolve_definition(pair, data, name, f.space)
        except (ValueError, KeyError):
            continue
        if d.poly.is_zero() or d.degree() == 0:
            continue
        max_pow = f.degree() // d.degree() if d.degree() else 0
        powers = [BlockPolynomial.constant(pair, f.space, 1)]
        for _ in range(max_pow):
            powers.append(powers[-1] * d)
        monos = sorted(set(m for q in powers for m in q.poly.terms) | set(f.poly.terms))
        A = [[q.poly.terms.get(m, Fraction(0)) for q in powers] for m in monos]
        b = tuple(f.poly.terms.get(m, Fraction(0)) for m in monos)
        x = util.solve(A, b)
        if x is None:
            continue
        parts = []
        for k in range(len(powers) - 1, -1, -1):
            c = x[k]
            if not c:
                continue
            if k == 0:
                term = util.fmt(c)
            else:
                base = name if k == 1 else f"{name}^{k}"
                term = base if c == 1 else (f"-{base}" if c == -1 else f"{util.fmt(c)}*{base}")
            if parts and not term.startswith("-"):
                parts.append(f"+ {term}")
            elif parts:
                parts.append(f"- {term[1:]}")
            else:
                parts.append(term)
        return " ".join(parts) if parts else "0"
    return format_poly(pair, f)


def load_iwasawa(pair: SymmetricPair, data: dict) -> IwasawaData:
    block = data.get("iwasawa")
    if block is None:
        raise KeyError("algebra file has no iwasawa block")
    conv = lambda vs: [pair.to_adapted(util.vec(v)) for v in vs]
    return IwasawaData(pair, conv(block.get("p0", [])), conv(block.get("n_plus", [])),
                       conv(block.get("k0", [])), conv(block.get("r", [])))


def load_graph_file(path: str):
    from .graphs import ColoredGraph
    with open(path) as fh:
        data = json.load(fh)
    palette = "two_color" if all(len(c[2]) == 1 for c in data["edges"]) else "four_color"
    return ColoredGraph(data["n"], data["m"], [tuple(e) for e in data["edges"]], palette)


class RunReport:
    def __init__(self, command):
        self.command = list(command)
        self.inputs_digest = None
        self.results = []
        self._t0 = time.monotonic()

    def digest_file(self, path: str):
        with open(path, "rb") as fh:
            self.inputs_digest = hashlib.sha256(fh.read()).hexdigest()

    def add(self, label: str, value, std_error=None):
        entry = {"label": label}
        if isinstance(value, Fraction):
            entry["value"] = util.fmt(value)
        elif isinstance(value, float):
            entry["value"] = value
            if std_error is not None:
                entry["std_error"] = std_error
        else:
            entry["value"] = value
        self.results.append(entry)

    def as_dict(self):
        return {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "results": self.results,
            "elapsed_s": time.monotonic() - self._t0,
        }

    def write_json(self, path: str):
        with open(path, "w") as fh:
            json.dump(self.as_dict(), fh, indent=2)
            fh.write("\n")
