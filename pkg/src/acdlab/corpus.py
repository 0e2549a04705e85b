"""Named group families, ``.perm`` generator files and JSON corpus manifests.

``.perm`` format::

    degree 5
    # one generator per line, 0-based images
    1 2 3 4 0
    1 0 2 3 4

Manifest format::

    {"version": 1, "cap": 20000,
     "groups": [{"name": "S3", "family": "symmetric", "params": [3], "expected_order": 6},
                {"name": "Q8", "file": "groups/Q8.perm"},
                {"name": "S3xC3", "family": "direct", "params": ["S3", "C3"]}]}

Composite families (``direct``, ``central``, ``semidirect``) take names of
groups listed earlier in the same manifest.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime

from .errors import ConstructionError, InputError, SizeLimitError
from .group import (DEFAULT_CAP, FiniteGroup, Permutation, center, central_product,
                    direct_product, enumerate_from_generators, semidirect_product)

MANIFEST_VERSION = 1


class CorpusError(InputError):
    """Malformed ``.perm`` file or manifest; carries the source location."""

    def __init__(self, message: str, source: str | None = None, line: int | None = None):
        where = ""
        if source is not None:
            where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.source = source
        self.line = line


# ---------------------------------------------------------------------------
# .perm files
# ---------------------------------------------------------------------------


def parse_perm(text: str, source: str = "<string>") -> tuple[int, list[Permutation]]:
    """Degree and generators from ``.perm`` text."""
    degree = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise CorpusError("expected 'degree n'", source, lineno)
            try:
                degree = int(parts[1])
            except ValueError:
                raise CorpusError(f"bad degree {parts[1]!r}", source, lineno) from None
            if degree < 1:
                raise CorpusError("degree must be positive", source, lineno)
            continue
        try:
            images = tuple(int(x) for x in line.split())
        except ValueError:
            raise CorpusError("generator images must be integers", source, lineno) from None
        if len(images) != degree:
            raise CorpusError(f"generator has {len(images)} images, expected {degree}", source, lineno)
        try:
            gens.append(Permutation(images))
        except (ValueError, InputError) as exc:
            raise CorpusError(f"not a permutation: {exc}", source, lineno) from None
    if degree is None:
        raise CorpusError("missing 'degree n' line", source)
    return degree, gens


def read_perm(path, *, cap: int = DEFAULT_CAP, name: str | None = None) -> FiniteGroup:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CorpusError(f"cannot read: {exc.strerror}", str(path)) from None
    degree, gens = parse_perm(text, str(path))
    return enumerate_from_generators(gens, cap=cap, degree=degree,
                                     name=name if name is not None else path.stem)


def format_perm(G_or_gens, degree: int | None = None) -> str:
    """Canonical ``.perm`` text: degree line, then generator lines sorted."""
    if isinstance(G_or_gens, FiniteGroup):
        degree = G_or_gens.degree
        rows = [tuple(int(x) for x in G_or_gens.perms[g]) for g in G_or_gens.gens]
    else:
        rows = [tuple(p.images) if isinstance(p, Permutation) else tuple(int(x) for x in p)
                for p in G_or_gens]
        if degree is None:
            if not rows:
                raise InputError("degree needed for an empty generator list")
            degree = len(rows[0])
    lines = [f"degree {degree}"]
    lines += [" ".join(map(str, r)) for r in sorted(set(rows))]
    return "\n".join(lines) + "\n"


def write_perm(G_or_gens, path, degree: int | None = None) -> None:
    Path(path).write_text(format_perm(G_or_gens, degree))


# ---------------------------------------------------------------------------
# concrete constructions
# ---------------------------------------------------------------------------


def _cycle(n: int, offset: int = 0, degree: int | None = None) -> np.ndarray:
    degree = degree if degree is not None else n + offset
    p = np.arange(degree)
    p[offset:offset + n] = np.roll(np.arange(offset, offset + n), -1)
    return p


def regular_group(elements: Sequence, mul, gens: Sequence, name: str | None = None, **kw) -> FiniteGroup:
    """Right regular representation of a group given by an element list and
    a product function; ``gens`` are elements of ``elements``."""
    index = {x: i for i, x in enumerate(elements)}
    perms = []
    for g in gens:
        perms.append([index[mul(x, g)] for x in elements])
    return enumerate_from_generators(perms, degree=len(elements), name=name, **kw)


def _apply_matrix(v: tuple, m: np.ndarray, p: int) -> tuple:
    return tuple(int(x) for x in (np.asarray(v) @ m) % p)


def _vectors(n: int, p: int) -> list[tuple]:
    return list(itertools.product(range(p), repeat=n))


def matrix_group(mats, p: int, name: str | None = None, **kw) -> FiniteGroup:
    """Matrices over ``F_p`` acting on nonzero row vectors (``v -> v M``)."""
    mats = [np.asarray(m, dtype=np.int64) % p for m in mats]
    n = mats[0].shape[0]
    pts = [v for v in _vectors(n, p) if any(v)]
    index = {v: i for i, v in enumerate(pts)}
    perms = [[index[_apply_matrix(v, m, p)] for v in pts] for m in mats]
    return enumerate_from_generators(perms, degree=len(pts), name=name, **kw)


def projective_group(mats, p: int, name: str | None = None, **kw) -> FiniteGroup:
    """Matrices over ``F_p`` acting on the 1-dimensional subspaces."""
    mats = [np.asarray(m, dtype=np.int64) % p for m in mats]
    n = mats[0].shape[0]

    def normalize(v):
        lead = next(x for x in v if x)
        inv = pow(lead, -1, p)
        return tuple(x * inv % p for x in v)

    pts = sorted({normalize(v) for v in _vectors(n, p) if any(v)})
    index = {v: i for i, v in enumerate(pts)}
    perms = [[index[normalize(_apply_matrix(v, m, p))] for v in pts] for m in mats]
    return enumerate_from_generators(perms, degree=len(pts), name=name, **kw)


def affine_group(mats, p: int, name: str | None = None, **kw) -> FiniteGroup:
    """``F_p^n x| <mats>``: all translations together with the given matrices,
    acting on the points of ``F_p^n``."""
    mats = [np.asarray(m, dtype=np.int64) % p for m in mats]
    n = mats[0].shape[0] if mats else 1
    pts = _vectors(n, p)
    index = {v: i for i, v in enumerate(pts)}
    perms = [[index[_apply_matrix(v, m, p)] for v in pts] for m in mats]
    for k in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[k] = 1
        perms.append([index[tuple(int(x) for x in (np.asarray(v) + e) % p)] for v in pts])
    return enumerate_from_generators(perms, degree=len(pts), name=name, **kw)


def _check_int(params, count: int, family: str) -> list[int]:
    if len(params) != count:
        raise InputError(f"{family} takes {count} integer parameter(s), got {len(params)}")
    out = []
    for x in params:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise InputError(f"{family}: parameter {x!r} is not an integer")
        out.append(int(x))
    return out


def cyclic(n: int, name=None, **kw) -> FiniteGroup:
    if n < 1:
        raise InputError("cyclic n needs n >= 1")
    gens = [_cycle(n)] if n > 1 else []
    return enumerate_from_generators(gens, degree=n, name=name, **kw)


def elementary_abelian(p: int, k: int, name=None, **kw) -> FiniteGroup:
    if not isprime(p) or k < 1:
        raise InputError("elementary_abelian p k needs a prime p and k >= 1")
    gens = [_cycle(p, offset=i * p, degree=p * k) for i in range(k)]
    return enumerate_from_generators(gens, degree=p * k, name=name, **kw)


def dihedral(n: int, name=None, **kw) -> FiniteGroup:
    """Symmetries of a regular n-gon, order ``2n``."""
    if n < 1:
        raise InputError("dihedral n needs n >= 1")
    if n == 1:
        return cyclic(2, name=name, **kw)
    if n == 2:
        return enumerate_from_generators([[1, 0, 3, 2], [2, 3, 0, 1]], name=name, **kw)
    refl = (-np.arange(n)) % n
    return enumerate_from_generators([_cycle(n), refl], name=name, **kw)


def dicyclic(n: int, name=None, **kw) -> FiniteGroup:
    """``<a, x | a^2n = 1, x^2 = a^n, a^x = a^-1>``, order ``4n``."""
    if n < 2:
        raise InputError("dicyclic n needs n >= 2")
    m = 2 * n

    def mul(u, v):
        (i, j), (k, l) = u, v
        if j == 0:
            return ((i + k) % m, l)
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + n) % m, 0)

    elements = [(i, j) for j in (0, 1) for i in range(m)]
    return regular_group(elements, mul, [(1, 0), (0, 1)], name=name, **kw)


def symmetric(n: int, name=None, cap: int = DEFAULT_CAP, **kw) -> FiniteGroup:
    if n < 1:
        raise InputError("symmetric n needs n >= 1")
    if math.factorial(n) > cap:
        raise InputError(f"symmetric {n} has order {math.factorial(n)}, above the cap {cap}")
    gens = []
    if n > 1:
        gens = [_cycle(n), np.array([1, 0] + list(range(2, n)))]
    return enumerate_from_generators(gens, degree=n, name=name, cap=cap, **kw)


def alternating(n: int, name=None, cap: int = DEFAULT_CAP, **kw) -> FiniteGroup:
    if n < 1:
        raise InputError("alternating n needs n >= 1")
    if math.factorial(n) // 2 > cap:
        raise InputError(f"alternating {n} has order {math.factorial(n) // 2}, above the cap {cap}")
    gens = []
    for i in range(2, n):
        p = np.arange(n)
        p[[0, 1, i]] = [1, i, 0]
        gens.append(p)
    return enumerate_from_generators(gens, degree=n, name=name, cap=cap, **kw)


def _involution_in_center(G: FiniteGroup) -> int:
    Z = center(G)
    invs = [int(z) for z in Z.members if G.element_orders[z] == 2]
    if len(invs) != 1:
        raise ConstructionError(f"{G.name or 'group'} has {len(invs)} central involutions, need exactly 1")
    return invs[0]


D8_GENS = [[1, 2, 3, 0], [0, 3, 2, 1]]
Q8_GENS = [[1, 3, 5, 6, 2, 7, 0, 4], [2, 4, 3, 7, 6, 1, 5, 0]]


def extraspecial_2(n: int, kind: str, name=None, **kw) -> FiniteGroup:
    """Extraspecial group of order ``2^(2n+1)``: central product of ``n``
    copies of D8 (``plus``) or of ``n-1`` copies of D8 and one Q8 (``minus``)."""
    if n < 1:
        raise InputError("extraspecial_2 n needs n >= 1")
    kind = str(kind).lower()
    if kind in ("plus", "+", "1"):
        last = enumerate_from_generators(D8_GENS, name="D8")
    elif kind in ("minus", "-", "-1"):
        last = enumerate_from_generators(Q8_GENS, name="Q8")
    else:
        raise InputError(f"extraspecial type must be plus or minus, not {kind!r}")
    d8 = enumerate_from_generators(D8_GENS, name="D8")
    G = last
    for _ in range(n - 1):
        G = central_product(G, d8, _involution_in_center(G), _involution_in_center(d8), **kw)
    G.name = name
    return G


def frobenius(p: int, k: int, name=None, **kw) -> FiniteGroup:
    """``C_p x| C_k`` acting faithfully (affine maps ``x -> a x + b`` of ``F_p``
    with ``a`` of order dividing k)."""
    if not isprime(p):
        raise InputError(f"frobenius p k needs a prime p, got {p}")
    if k < 1 or (p - 1) % k:
        raise InputError(f"frobenius {p} {k}: k must divide p-1")
    from sympy import primitive_root

    a = pow(primitive_root(p), (p - 1) // k, p)
    gens = [(np.arange(p) + 1) % p]
    if k > 1:
        gens.append((np.arange(p) * a) % p)
    return enumerate_from_generators(gens, degree=p, name=name, **kw)


def sl25(name=None, **kw) -> FiniteGroup:
    """SL(2,5) acting on the 24 nonzero vectors of ``F_5^2``."""
    return matrix_group([[[1, 1], [0, 1]], [[0, 1], [4, 0]]], 5, name=name, **kw)


def _power_action(N: FiniteGroup, P: FiniteGroup, k: int) -> list[np.ndarray]:
    if not N.is_abelian:
        raise ConstructionError("power actions need an abelian normal factor")
    if math.gcd(k, N.exponent) != 1:
        raise ConstructionError(f"x -> x^{k} is not an automorphism of an exponent-{N.exponent} group")
    img = np.asarray(N.power(np.arange(N.order), k % N.exponent))
    return [img] * len(P.gens)


def semidirect_action(N: FiniteGroup, P: FiniteGroup, spec: str) -> list[np.ndarray]:
    spec = str(spec).strip().lower()
    if spec == "inversion":
        return _power_action(N, P, -1)
    if spec.startswith("power:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad power action {spec!r}") from None
        return _power_action(N, P, k)
    raise InputError(f"unknown action {spec!r}; use 'inversion' or 'power:k'")


FAMILIES = ("cyclic", "elementary_abelian", "dihedral", "dicyclic", "symmetric", "alternating",
            "extraspecial_2", "frobenius", "sl25")
COMPOSITES = ("direct", "central", "semidirect")


def build_family(name: str, params: Sequence = (), *, cap: int = DEFAULT_CAP,
                 refs: dict[str, FiniteGroup] | None = None, label: str | None = None) -> FiniteGroup:
    """Construct a group of a documented family.

    ``refs`` maps names to already built groups for the composite families.
    """
    params = list(params)
    kw = {"cap": cap, "name": label}
    if name == "cyclic":
        return cyclic(*_check_int(params, 1, name), **kw)
    if name == "elementary_abelian":
        return elementary_abelian(*_check_int(params, 2, name), **kw)
    if name == "dihedral":
        return dihedral(*_check_int(params, 1, name), **kw)
    if name == "dicyclic":
        return dicyclic(*_check_int(params, 1, name), **kw)
    if name == "symmetric":
        return symmetric(*_check_int(params, 1, name), **kw)
    if name == "alternating":
        return alternating(*_check_int(params, 1, name), **kw)
    if name == "extraspecial_2":
        if len(params) != 2:
            raise InputError("extraspecial_2 takes n and a type (plus/minus)")
        (n,) = _check_int(params[:1], 1, name)
        return extraspecial_2(n, params[1], **kw)
    if name == "frobenius":
        return frobenius(*_check_int(params, 2, name), **kw)
    if name == "sl25":
        _check_int(params, 0, name)
        return sl25(**kw)
    if name in COMPOSITES:
        refs = refs or {}

        def ref(x):
            if not isinstance(x, str) or x not in refs:
                raise InputError(f"{name}: {x!r} does not name an earlier group")
            return refs[x]

        if name == "direct":
            if len(params) < 2:
                raise InputError("direct takes at least two group names")
            G = ref(params[0])
            for other in params[1:]:
                G = direct_product(G, ref(other), cap=cap)
            G.name = label
            return G
        if name == "central":
            if len(params) != 2:
                raise InputError("central takes two group names")
            A, B = ref(params[0]), ref(params[1])
            return central_product(A, B, _involution_in_center(A), _involution_in_center(B),
                                   name=label, cap=cap)
        if len(params) != 3:
            raise InputError("semidirect takes N, P and an action")
        N, P = ref(params[0]), ref(params[1])
        return semidirect_product(N, P, semidirect_action(N, P, params[2]), name=label, cap=cap)
    raise InputError(f"unknown family {name!r}")


# ---------------------------------------------------------------------------
# manifests
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    name: str
    family: str | None = None
    params: tuple = ()
    file: str | None = None
    expected_order: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"name": self.name}
        if self.family is not None:
            out["family"] = self.family
            out["params"] = list(self.params)
        else:
            out["file"] = self.file
        if self.expected_order is not None:
            out["expected_order"] = self.expected_order
        return out


@dataclass(frozen=True)
class CorpusManifest:
    version: int
    groups: tuple[GroupSpec, ...]
    cap: int = DEFAULT_CAP
    base_dir: str = "."
    corpus_id: str = "corpus"

    def __len__(self) -> int:
        return len(self.groups)

    def names(self) -> list[str]:
        return [g.name for g in self.groups]

    def resolve(self, spec: GroupSpec) -> Path:
        return Path(self.base_dir) / spec.file

    def to_dict(self) -> dict:
        return {"version": self.version, "cap": self.cap, "groups": [g.to_dict() for g in self.groups]}


def manifest_from_dict(doc: dict, base_dir=".", corpus_id: str = "corpus", source: str = "<manifest>") -> CorpusManifest:
    if not isinstance(doc, dict):
        raise CorpusError("manifest must be a JSON object", source)
    version = doc.get("version", MANIFEST_VERSION)
    if version != MANIFEST_VERSION:
        raise CorpusError(f"unsupported manifest version {version!r}", source)
    cap = doc.get("cap", DEFAULT_CAP)
    if isinstance(cap, bool) or not isinstance(cap, int) or cap < 1:
        raise CorpusError("cap must be a positive integer", source)
    entries = doc.get("groups", [])
    if not isinstance(entries, list):
        raise CorpusError("'groups' must be a list", source)
    specs = []
    seen = set()
    for i, g in enumerate(entries):
        where = f"groups[{i}]"
        if not isinstance(g, dict) or not isinstance(g.get("name"), str):
            raise CorpusError(f"{where}: each entry needs a string 'name'", source)
        name = g["name"]
        if name in seen:
            raise CorpusError(f"{where}: duplicate name {name!r}", source)
        seen.add(name)
        has_family, has_file = "family" in g, "file" in g
        if has_family == has_file:
            raise CorpusError(f"{where} ({name}): give exactly one of 'family' or 'file'", source)
        expected = g.get("expected_order")
        if expected is not None and (isinstance(expected, bool) or not isinstance(expected, int)):
            raise CorpusError(f"{where} ({name}): expected_order must be an integer", source)
        if has_family:
            fam = g["family"]
            if fam not in FAMILIES + COMPOSITES:
                raise CorpusError(f"{where} ({name}): unknown family {fam!r}", source)
            params = g.get("params", [])
            if not isinstance(params, list):
                raise CorpusError(f"{where} ({name}): params must be a list", source)
            specs.append(GroupSpec(name, family=fam, params=tuple(params), expected_order=expected))
        else:
            specs.append(GroupSpec(name, file=str(g["file"]), expected_order=expected))
    return CorpusManifest(MANIFEST_VERSION, tuple(specs), cap, str(base_dir), corpus_id)


def read_manifest(path) -> CorpusManifest:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CorpusError(f"cannot read: {exc.strerror}", str(path)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(exc.msg, str(path), exc.lineno) from None
    return manifest_from_dict(doc, base_dir=path.parent, corpus_id=path.stem, source=str(path))


def bundled_manifest_path() -> Path:
    return Path(str(resources.files("acdlab") / "data" / "core.json"))


def bundled_manifest() -> CorpusManifest:
    return read_manifest(bundled_manifest_path())


def as_manifest(corpus) -> CorpusManifest:
    if isinstance(corpus, CorpusManifest):
        return corpus
    if isinstance(corpus, dict):
        return manifest_from_dict(corpus)
    if isinstance(corpus, (str, os.PathLike)):
        return read_manifest(corpus)
    raise InputError(f"cannot interpret {type(corpus).__name__} as a corpus manifest")


def build_spec(spec: GroupSpec, manifest: CorpusManifest,
               refs: dict[str, FiniteGroup] | None = None) -> FiniteGroup:
    if spec.family is not None:
        G = build_family(spec.family, spec.params, cap=manifest.cap, refs=refs, label=spec.name)
    else:
        G = read_perm(manifest.resolve(spec), cap=manifest.cap, name=spec.name)
    if spec.expected_order is not None and G.order != spec.expected_order:
        raise CorpusError(f"{spec.name}: constructed order {G.order}, expected {spec.expected_order}",
                          manifest.corpus_id)
    return G


def load_corpus(corpus) -> list[tuple[GroupSpec, FiniteGroup]]:
    """Build every group of a manifest, in manifest order."""
    manifest = as_manifest(corpus)
    built: dict[str, FiniteGroup] = {}
    out = []
    for spec in manifest.groups:
        try:
            G = build_spec(spec, manifest, built)
        except SizeLimitError as exc:
            raise CorpusError(f"{spec.name}: {exc}", manifest.corpus_id) from None
        built[spec.name] = G
        out.append((spec, G))
    return out


def iter_groups(corpus) -> Iterable[FiniteGroup]:
    for _, G in load_corpus(corpus):
        yield G


def fingerprint(G: FiniteGroup) -> tuple:
    """Order, exponent, class sizes, element-order statistics and the orders
    of the center, derived subgroup and subgroup generated by squares."""
    from .classes import conjugacy_classes
    from .group import derived_subgroup, squares_subgroup, whole

    cd = conjugacy_classes(G)
    orders = np.bincount(G.element_orders)
    return (G.order, G.exponent, tuple(sorted(int(s) for s in cd.class_sizes)),
            tuple(int(x) for x in orders), center(G).order, derived_subgroup(whole(G)).order,
            squares_subgroup(G).order)
