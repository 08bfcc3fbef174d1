"""Nilpotent orbit catalogs: labels, representatives, Dynkin weights, and
Levi data for representatives of the form e_Gamma = sum of root vectors.

File format (line oriented, ``#`` starts a comment)::

    type F4
    orbit "B3" primes=all dynkin=2,2,0,0
    term 1 (0,1,0,0)
    ...
    end
    gamma "B3" levi=(1,2,3) levi_orbit="B3"
    root (0,1,0,0)
    end
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .chevalley import AlgElement, ChevalleyAlgebra, build_algebra, reduce_mod
from .rootsys import Coweight, LeviSubset, RootSystem, build_root_system, dynkin_weight

GOOD_PRIME_EXCLUSIONS = {
    "G2": {2, 3},
    "F4": {2, 3},
    "E6": {2, 3},
    "E7": {2, 3},
    "E8": {2, 3, 5},
}


class CatalogError(ValueError):
    def __init__(self, message: str, label: str | None = None, line: int | None = None):
        where = []
        if label is not None:
            where.append(f"record {label!r}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.label = label
        self.line = line


def bad_primes(type_label: str) -> set[int]:
    """Primes dividing a coefficient of the highest root."""
    if type_label in GOOD_PRIME_EXCLUSIONS:
        return set(GOOD_PRIME_EXCLUSIONS[type_label])
    rs = build_root_system(type_label)
    out = set()
    for m in rs.highest_root:
        for q in (2, 3, 5):
            if m % q == 0:
                out.add(q)
    return out


def is_good_prime(type_label: str, p: int) -> bool:
    return p not in bad_primes(type_label)


# ---------------------------------------------------------------- labels

def canonical_label(label: str) -> str:
    """Normalize an orbit label.

    Short-root components are written with a tilde (``Ã2``, also accepted as
    ``~A2`` or ``A2~``), components are sorted by decreasing rank with long
    roots before short ones, repeated components get a multiplicity prefix,
    and a bad-prime superscript is written ``^(p)`` with parentheses around
    compound bases.  Primed labels keep their parentheses: ``(A5)'``.
    """
    s = label.strip().replace(" ", "").replace("_", "").replace("{", "").replace("}", "")
    s = s.replace("Ã", "~A").replace("\\tildeA", "~A").replace("\\tilde", "~")
    sup = ""
    m = re.search(r"\^\(?(\d+)\)?$", s)
    if m:
        sup = m.group(1)
        s = s[: m.start()]
    primes = ""
    m = re.search(r"('+)$", s)
    if m:
        primes = m.group(1)
        s = s[: m.start()]
    while s.startswith("(") and _matching_paren(s) == len(s) - 1:
        s = s[1:-1]
    parts = _split_top(s, "+")
    comps: list[tuple[int, str, str]] = []
    for part in parts:
        mm = re.fullmatch(r"(\d*)(~?)([A-G])(\d+)(~?)(\(.*\))?", part)
        if not mm:
            raise CatalogError(f"cannot parse label {label!r}")
        mult = int(mm.group(1) or 1)
        short = bool(mm.group(2) or mm.group(5))
        base = mm.group(3) + mm.group(4) + (mm.group(6) or "")
        for _ in range(mult):
            comps.append((int(mm.group(4)), short, base))
    comps.sort(key=lambda c: (-c[0], c[1], _letter_rank(c[2]), c[2]))
    out = []
    i = 0
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j] == comps[i]:
            j += 1
        n = j - i
        rank, short, base = comps[i]
        txt = ("Ã" + base[1:]) if short else base
        out.append((str(n) if n > 1 else "") + txt)
        i = j
    core = "+".join(out)
    if primes:
        core = f"({core}){primes}"
    if sup:
        core = f"({core})^({sup})" if "+" in core and not primes else f"{core}^({sup})"
    return core


def _letter_rank(base: str) -> int:
    return "EDCBGFA".index(base[0]) if base[0] in "EDCBGFA" else 9


def _matching_paren(s: str) -> int:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i
    return -1


def _split_top(s: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def normalize_label(label: str) -> str:
    """canonical_label, except that the zero orbit stays ``0``."""
    if label.strip() in ("0", "1", "zero"):
        return "0"
    return canonical_label(label)


def base_label(label: str) -> str:
    """Label without a bad-prime superscript."""
    s = normalize_label(label)
    m = re.fullmatch(r"(.*)\^\(\d+\)", s)
    if not m:
        return s
    b = m.group(1)
    if b.startswith("(") and _matching_paren(b) == len(b) - 1:
        b = b[1:-1]
    return b


# ---------------------------------------------------------------- records


@dataclass(frozen=True)
class OrbitRecord:
    label: str
    terms: tuple[tuple[int, tuple[int, ...]], ...]
    dynkin_weights: Coweight | None
    prime_set: str | frozenset  # "all", "good", or explicit primes
    line: int | None = field(default=None, compare=False)

    def defined_at(self, p: int, type_label: str) -> bool:
        if isinstance(self.prime_set, frozenset):
            return p in self.prime_set
        if p == 0:
            return True
        if self.prime_set == "all":
            return True
        return is_good_prime(type_label, p)

    @property
    def char0(self) -> bool:
        """True for orbits that exist in characteristic zero."""
        return not isinstance(self.prime_set, frozenset)


@dataclass(frozen=True)
class GammaRecord:
    orbit_label: str
    gamma: tuple[tuple[int, ...], ...]
    levi_subset: LeviSubset
    levi_orbit_label: str
    line: int | None = field(default=None, compare=False)


@dataclass
class OrbitCatalog:
    type_label: str
    records: list[OrbitRecord] = field(default_factory=list)
    gamma_records: list[GammaRecord] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def __post_init__(self):
        self._by_label = {}
        for r in self.records:
            if r.label in self._by_label:
                raise CatalogError("duplicate label", r.label, r.line)
            self._by_label[r.label] = r

    @property
    def root_system(self) -> RootSystem:
        return build_root_system(self.type_label)

    @property
    def algebra(self) -> ChevalleyAlgebra:
        return build_algebra(self.root_system)

    def good_prime(self, p: int) -> bool:
        return is_good_prime(self.type_label, p)

    def labels(self) -> list[str]:
        return [r.label for r in self.records]

    def get(self, label: str) -> OrbitRecord:
        key = normalize_label(label)
        if key not in self._by_label:
            raise CatalogError(f"unknown orbit label {label!r} in {self.type_label}")
        return self._by_label[key]

    def __contains__(self, label: str) -> bool:
        try:
            return normalize_label(label) in self._by_label
        except CatalogError:
            return False

    def records_at(self, p: int) -> list[OrbitRecord]:
        return [r for r in self.records if r.defined_at(p, self.type_label)]

    def by_dynkin(self) -> dict[tuple, str]:
        return {
            tuple(r.dynkin_weights.coefficients): r.label
            for r in self.records
            if r.dynkin_weights is not None
        }


# ---------------------------------------------------------------- parsing

_ORBIT_RE = re.compile(r'^orbit\s+"([^"]*)"\s+primes=(\S+)\s+dynkin=(\S+)\s*$')
_GAMMA_RE = re.compile(r'^gamma\s+"([^"]*)"\s+levi=\(([^)]*)\)\s+levi_orbit="([^"]*)"\s*$')
_TERM_RE = re.compile(r"^term\s+(-?\d+)\s+\(([^)]*)\)\s*$")
_ROOT_RE = re.compile(r"^root\s+\(([^)]*)\)\s*$")


def _int_tuple(text: str, rank: int, label: str, line: int) -> tuple[int, ...]:
    try:
        v = tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise CatalogError(f"bad integer vector ({text})", label, line) from None
    if len(v) != rank:
        raise CatalogError(f"vector ({text}) has length {len(v)}, expected {rank}", label, line)
    return v


def _parse_primes(text: str, label: str, line: int):
    if text in ("all", "good"):
        return text
    m = re.fullmatch(r"\{([\d,\s]+)\}", text)
    if not m:
        raise CatalogError(f"bad prime set {text!r}", label, line)
    return frozenset(int(x) for x in m.group(1).split(","))


def parse_catalog(text: str, rs: RootSystem | None = None, strict: bool = True) -> OrbitCatalog:
    type_label = None
    records: list[OrbitRecord] = []
    gammas: list[GammaRecord] = []
    comments: list[str] = []
    block = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if raw.strip().startswith("#") and block is None and type_label is None:
            comments.append(raw.rstrip())
        if not line:
            continue
        if type_label is None:
            m = re.fullmatch(r"type\s+(\S+)", line)
            if not m:
                raise CatalogError("expected 'type <LABEL>' header", line=lineno)
            type_label = m.group(1)
            if rs is None:
                rs = build_root_system(type_label)
            elif rs.type_label != type_label:
                raise CatalogError(f"catalog is for {type_label}, not {rs.type_label}", line=lineno)
            continue
        if block is None:
            m = _ORBIT_RE.match(line)
            if m:
                label = normalize_label(m.group(1))
                dyn = None
                if m.group(3) != "none":
                    dyn = Coweight(_int_tuple(m.group(3), rs.rank, label, lineno), "dynkin")
                block = ("orbit", label, _parse_primes(m.group(2), label, lineno), dyn, [], lineno)
                continue
            m = _GAMMA_RE.match(line)
            if m:
                label = normalize_label(m.group(1))
                idx = tuple(int(x) for x in m.group(2).split(",") if x.strip())
                try:
                    levi = LeviSubset(idx, rs.rank)
                except ValueError as exc:
                    raise CatalogError(str(exc), label, lineno) from None
                block = ("gamma", label, levi, normalize_label(m.group(3)), [], lineno)
                continue
            raise CatalogError(f"unexpected line {line!r}", line=lineno)
        kind, label = block[0], block[1]
        if line == "end":
            if kind == "orbit":
                rec = OrbitRecord(label, tuple(block[4]), block[3], block[2], block[5])
                _validate_orbit(rec, rs, strict)
                records.append(rec)
            else:
                rec = GammaRecord(label, tuple(block[4]), block[2], block[3], block[5])
                _validate_gamma(rec, rs)
                gammas.append(rec)
            block = None
            continue
        if kind == "orbit":
            m = _TERM_RE.match(line)
            if not m:
                raise CatalogError(f"expected 'term <coeff> (<root>)', got {line!r}", label, lineno)
            root = _int_tuple(m.group(2), rs.rank, label, lineno)
            if root not in rs.positive_roots:
                raise CatalogError(f"{root} is not a positive root of {rs.type_label}", label, lineno)
            block[4].append((int(m.group(1)), root))
        else:
            m = _ROOT_RE.match(line)
            if not m:
                raise CatalogError(f"expected 'root (<root>)', got {line!r}", label, lineno)
            root = _int_tuple(m.group(1), rs.rank, label, lineno)
            if not rs.is_root(root):
                raise CatalogError(f"{root} is not a root of {rs.type_label}", label, lineno)
            block[4].append(root)
    if block is not None:
        raise CatalogError("unterminated block (missing 'end')", block[1], block[5])
    if type_label is None:
        return OrbitCatalog("", [], [], comments)
    return OrbitCatalog(type_label, records, gammas, comments)


def _validate_orbit(rec: OrbitRecord, rs: RootSystem, strict: bool):
    if rec.dynkin_weights is None:
        return
    if not rec.dynkin_weights.is_weighted_dynkin_diagram():
        raise CatalogError("Dynkin weights must lie in {0,1,2}", rec.label, rec.line)
    if strict:
        for _, root in rec.terms:
            w = dynkin_weight(rs, rec.dynkin_weights, root)
            if w != 2:
                raise CatalogError(f"term {root} has weight {w}, not 2", rec.label, rec.line)


def _validate_gamma(rec: GammaRecord, rs: RootSystem):
    if rec.gamma:
        M = np.array(rec.gamma, dtype=float)
        if np.linalg.matrix_rank(M) != len(rec.gamma):
            raise CatalogError("gamma roots are linearly dependent", rec.orbit_label, rec.line)


def load_catalog(path: str | os.PathLike, rs: RootSystem | None = None, strict: bool = True) -> OrbitCatalog:
    text = Path(path).read_text(encoding="utf-8")
    return parse_catalog(text, rs, strict)


def _fmt_vec(v: Iterable[int]) -> str:
    return "(" + ",".join(str(int(x)) for x in v) + ")"


def _fmt_primes(ps) -> str:
    if isinstance(ps, str):
        return ps
    return "{" + ",".join(str(p) for p in sorted(ps)) + "}"


def serialize_catalog(cat: OrbitCatalog) -> str:
    lines = list(cat.comments)
    lines.append(f"type {cat.type_label}")
    for r in cat.records:
        dyn = "none" if r.dynkin_weights is None else ",".join(str(x) for x in r.dynkin_weights.coefficients)
        lines.append(f'orbit "{r.label}" primes={_fmt_primes(r.prime_set)} dynkin={dyn}')
        for c, root in r.terms:
            lines.append(f"term {c} {_fmt_vec(root)}")
        lines.append("end")
    for g in cat.gamma_records:
        lines.append(
            f'gamma "{g.orbit_label}" levi=({",".join(str(i) for i in g.levi_subset.subset)}) '
            f'levi_orbit="{g.levi_orbit_label}"'
        )
        for root in g.gamma:
            lines.append(f"root {_fmt_vec(root)}")
        lines.append("end")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- elements


def _element(alg: ChevalleyAlgebra, terms, p: int) -> AlgElement:
    v = np.zeros(alg.dim, dtype=np.int64)
    for c, root in terms:
        v[alg.root_index(root)] += int(c)
    x = AlgElement(v, 0)
    return reduce_mod(alg, x, p) if p else x


def representative(cat: OrbitCatalog, label: str, p: int = 0) -> AlgElement:
    rec = cat.get(label)
    if not rec.defined_at(p, cat.type_label):
        raise CatalogError(f"orbit not defined at p={p}", rec.label)
    return _element(cat.algebra, rec.terms, p)


def gamma_element(cat: OrbitCatalog, g: GammaRecord, p: int = 0) -> AlgElement:
    return _element(cat.algebra, [(1, r) for r in g.gamma], p)


# ---------------------------------------------------------------- data dir


def data_dir() -> Path:
    env = os.environ.get("CHEVORBIT_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def default_catalog_path(type_label: str) -> Path:
    return data_dir() / f"{type_label.lower()}.cat"


def default_descriptor_path(type_label: str) -> Path:
    return data_dir() / f"{type_label.lower()}.sheets"


def load_default_catalog(type_label: str, strict: bool = True) -> OrbitCatalog:
    return load_catalog(default_catalog_path(type_label), strict=strict)


def catalog_from_records(type_label: str, records: Iterable[OrbitRecord],
                         gammas: Iterable[GammaRecord] = ()) -> OrbitCatalog:
    return OrbitCatalog(type_label, list(records), list(gammas))
