"""JSON models for every object the toolkit reads and writes.

Rationals travel as strings such as "3/4" or "-2"; plain integers are
accepted on input.  All indices in files are 1-based and converted to
the library's 0-based indexing here.  Fields documented as references
may hold a relative path string instead of the inline object;
load_document resolves references before validation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Literal, Optional

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    NonNegativeInt,
    model_validator,
)

from .cochain import AltCochain, LieDerRep, Representation, comb
from .dgla import BigradedCochain, GradedElement
from .exactlin import Matrix
from .kernel import KernelDatum
from .lie import LieAlgebra, LieDerPair
from .lie2 import Lie2DerHom, StrictLie2
from .nonabelian import Extension, NonAbelianCocycle, assemble_extension


def _rat(v: object) -> str:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValueError("rationals must be strings like '3/4'")
    try:
        return str(Fraction(v))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {v!r}") from exc


Rat = Annotated[str, BeforeValidator(_rat)]


def _indices(key: str, dim: int, arity: Optional[int] = None) -> tuple[int, ...]:
    """Parse a comma-separated 1-based index tuple into 0-based form."""
    parts = [p.strip() for p in key.split(",")] if key.strip() else []
    try:
        idx = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"bad index tuple {key!r}") from exc
    if arity is not None and len(idx) != arity:
        raise ValueError(f"index tuple {key!r} must have {arity} entries")
    if any(i < 1 or i > dim for i in idx):
        raise ValueError(f"index tuple {key!r} out of range 1..{dim}")
    return tuple(i - 1 for i in idx)


def _increasing(key: str, idx: tuple[int, ...]) -> tuple[int, ...]:
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"index tuple {key!r} is not strictly increasing")
    return idx


def _key(idx: tuple[int, ...]) -> str:
    return ",".join(str(i + 1) for i in idx)


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class MatrixModel(StrictModel):
    rows: NonNegativeInt
    cols: NonNegativeInt
    entries: list[list[Rat]]

    @model_validator(mode="after")
    def _shape(self) -> "MatrixModel":
        if len(self.entries) != self.rows or any(
            len(r) != self.cols for r in self.entries
        ):
            raise ValueError("entries do not match rows x cols")
        return self

    def to_core(self) -> Matrix:
        return Matrix(
            tuple(tuple(Fraction(x) for x in r) for r in self.entries),
            cols=self.cols,
        )

    @staticmethod
    def from_core(m: Matrix) -> "MatrixModel":
        return MatrixModel(
            rows=m.rows,
            cols=m.cols,
            entries=[[str(x) for x in r] for r in m.data],
        )


class AlgebraModel(StrictModel):
    """Structure constants keyed by 1-based basis pairs "i,j"."""

    name: str = ""
    dim: NonNegativeInt
    brackets: dict[str, dict[str, Rat]] = {}

    def to_core(self) -> LieAlgebra:
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for key, val in self.brackets.items():
            i, j = _indices(key, self.dim, 2)
            if i == j:
                raise ValueError(f"bracket key {key!r} repeats an index")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if (i, j) in table:
                raise ValueError(f"bracket key {key!r} duplicates another")
            table[(i, j)] = {
                _indices(b, self.dim, 1)[0]: sign * Fraction(q)
                for b, q in val.items()
            }
        return LieAlgebra.from_brackets(self.dim, table, self.name)

    @staticmethod
    def from_core(L: LieAlgebra) -> "AlgebraModel":
        brackets = {}
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                v = L.bracket_basis(i, j)
                nz = {_key((k,)): str(q) for k, q in enumerate(v) if q != 0}
                if nz:
                    brackets[_key((i, j))] = nz
        return AlgebraModel(name=L.name, dim=L.dim, brackets=brackets)


class PairModel(StrictModel):
    """Algebra with a chosen derivation; both fields may be references."""

    algebra: AlgebraModel
    derivation: MatrixModel

    def to_core(self) -> LieDerPair:
        return LieDerPair(self.algebra.to_core(), self.derivation.to_core())

    @staticmethod
    def from_core(p: LieDerPair) -> "PairModel":
        return PairModel(
            algebra=AlgebraModel.from_core(p.algebra),
            derivation=MatrixModel.from_core(p.d),
        )


class CochainModel(StrictModel):
    """Alternating cochain keyed by increasing 1-based index tuples;
    omitted tuples are zero.  Dimensions come from the usage context."""

    degree: NonNegativeInt
    values: dict[str, list[Rat]] = {}

    def to_core(self, source_dim: int, target_dim: int) -> AltCochain:
        entries: dict[tuple[int, ...], tuple] = {}
        for key, val in self.values.items():
            idx = _increasing(key, _indices(key, source_dim, self.degree))
            if idx in entries:
                raise ValueError(f"index tuple {key!r} duplicates another")
            if len(val) != target_dim:
                raise ValueError(f"value at {key!r} has wrong length")
            entries[idx] = tuple(Fraction(x) for x in val)
        return AltCochain.from_map(source_dim, self.degree, target_dim, entries)

    @staticmethod
    def from_core(c: AltCochain) -> "CochainModel":
        values = {}
        for idx in comb(c.source_dim, c.degree):
            v = c.value(idx)
            if any(x != 0 for x in v):
                values[_key(idx)] = [str(x) for x in v]
        return CochainModel(degree=c.degree, values=values)


class LieDerCochainModel(StrictModel):
    """Cochain of the paired complex: top layer plus the lower one."""

    top: CochainModel
    lower: Optional[CochainModel] = None


class RepModel(StrictModel):
    """Action matrices, one per basis vector; t intertwines when given."""

    space_dim: NonNegativeInt
    rho: list[MatrixModel]
    t: Optional[MatrixModel] = None

    def to_core(self, pair: LieDerPair) -> Representation:
        rho = tuple(m.to_core() for m in self.rho)
        if self.t is None:
            return Representation(pair.algebra, self.space_dim, rho)
        return LieDerRep(
            algebra=pair.algebra,
            space_dim=self.space_dim,
            rho=rho,
            pair=pair,
            t=self.t.to_core(),
        )


class CocycleModel(StrictModel):
    """Cocycle datum; gpair/hpair may be references to pair files."""

    gpair: PairModel
    hpair: PairModel
    varrho: list[MatrixModel]
    omega: CochainModel
    chi: MatrixModel

    def to_core(self) -> NonAbelianCocycle:
        gpair, hpair = self.gpair.to_core(), self.hpair.to_core()
        if self.omega.degree != 2:
            raise ValueError("omega must have degree 2")
        return NonAbelianCocycle(
            gpair,
            hpair,
            tuple(m.to_core() for m in self.varrho),
            self.omega.to_core(gpair.dim, hpair.dim),
            self.chi.to_core(),
        )

    @staticmethod
    def from_core(c: NonAbelianCocycle) -> "CocycleModel":
        return CocycleModel(
            gpair=PairModel.from_core(c.gpair),
            hpair=PairModel.from_core(c.hpair),
            varrho=[MatrixModel.from_core(m) for m in c.varrho],
            omega=CochainModel.from_core(c.omega),
            chi=MatrixModel.from_core(c.chi),
        )


class ExtensionModel(StrictModel):
    """Total algebra with its derivation and the two structure maps;
    the fiber and quotient pairs are recovered, not stored."""

    total: AlgebraModel
    dhat: Optional[MatrixModel] = None
    inj: MatrixModel
    proj: MatrixModel

    def to_core(self) -> Extension:
        if self.dhat is None:
            raise ValueError("extension needs the total derivation dhat")
        total = LieDerPair(self.total.to_core(), self.dhat.to_core())
        return assemble_extension(total, self.inj.to_core(), self.proj.to_core())

    @staticmethod
    def from_core(e: Extension) -> "ExtensionModel":
        return ExtensionModel(
            total=AlgebraModel.from_core(e.total.algebra),
            dhat=MatrixModel.from_core(e.total.d),
            inj=MatrixModel.from_core(e.inj),
            proj=MatrixModel.from_core(e.proj),
        )


class SectionModel(StrictModel):
    s: MatrixModel


class KernelModel(StrictModel):
    """Derivation representatives, one per basis vector of the acting
    algebra; gpair/hpair may be references."""

    gpair: PairModel
    hpair: PairModel
    reps: list[MatrixModel]

    def to_core(self) -> KernelDatum:
        return KernelDatum(
            self.gpair.to_core(),
            self.hpair.to_core(),
            tuple(m.to_core() for m in self.reps),
        )

    @staticmethod
    def from_core(k: KernelDatum) -> "KernelModel":
        return KernelModel(
            gpair=PairModel.from_core(k.gpair),
            hpair=PairModel.from_core(k.hpair),
            reps=[MatrixModel.from_core(m) for m in k.reps],
        )


class ContextModel(StrictModel):
    """The two pairs a graded element lives over; both may be references."""

    gpair: PairModel
    hpair: PairModel


class BlockModel(StrictModel):
    """Bidegree block; value keys are "gtuple|htuple", either side may
    be empty, both 1-based increasing."""

    k: NonNegativeInt
    l: NonNegativeInt
    target: Literal["g", "h"] = "h"
    values: dict[str, list[Rat]] = {}

    def to_core(self, gdim: int, hdim: int) -> BigradedCochain:
        tdim = gdim if self.target == "g" else hdim
        entries: dict[tuple[tuple[int, ...], tuple[int, ...]], tuple] = {}
        for key, val in self.values.items():
            if "|" not in key:
                raise ValueError(f"block key {key!r} must be 'gtuple|htuple'")
            gpart, hpart = key.split("|", 1)
            gt = _increasing(key, _indices(gpart, gdim, self.k))
            ht = _increasing(key, _indices(hpart, hdim, self.l))
            if (gt, ht) in entries:
                raise ValueError(f"block key {key!r} duplicates another")
            if len(val) != tdim:
                raise ValueError(f"value at {key!r} has wrong length")
            entries[(gt, ht)] = tuple(Fraction(x) for x in val)
        return BigradedCochain.from_map(
            gdim, hdim, self.k, self.l, self.target, entries
        )


class ElementModel(StrictModel):
    """Graded element given as bidegree blocks; a block with arity
    degree+1 is bracket-like, one with arity degree is derivation-like."""

    degree: NonNegativeInt
    blocks: list[BlockModel] = []

    def to_core(self, gdim: int, hdim: int) -> GradedElement:
        f: dict[tuple[int, int], BigradedCochain] = {}
        alpha: dict[tuple[int, int], BigradedCochain] = {}
        for b in self.blocks:
            arity = b.k + b.l
            if arity == self.degree + 1:
                part = f
            elif arity == self.degree:
                part = alpha
            else:
                raise ValueError(
                    f"block ({b.k},{b.l}) fits neither layer of degree"
                    f" {self.degree}"
                )
            if (b.k, b.l) in part:
                raise ValueError(f"duplicate block ({b.k},{b.l})")
            part[(b.k, b.l)] = b.to_core(gdim, hdim)
        return GradedElement.make(self.degree, f, alpha)


class Lie2Model(StrictModel):
    """Two-term complex data: base algebra, top dimension, the complex
    map d, and one action matrix per base basis vector."""

    g0: AlgebraModel
    g1_dim: NonNegativeInt
    d: MatrixModel
    act: list[MatrixModel]

    def to_core(self) -> StrictLie2:
        return StrictLie2(
            self.g0.to_core(),
            self.g1_dim,
            self.d.to_core(),
            tuple(m.to_core() for m in self.act),
        )


class HomModel(StrictModel):
    """Homomorphism into the derivation object of the target pair;
    phi0 lands in derivation coordinates.  Omitted phi1 is the zero map
    from the trivial degree-1 part."""

    gpair: PairModel
    hpair: PairModel
    phi0: MatrixModel
    phi1: Optional[MatrixModel] = None
    phi2: CochainModel
    theta: MatrixModel

    def to_core(self) -> Lie2DerHom:
        gpair, hpair = self.gpair.to_core(), self.hpair.to_core()
        if self.phi2.degree != 2:
            raise ValueError("phi2 must have degree 2")
        phi1 = (
            self.phi1.to_core()
            if self.phi1 is not None
            else Matrix.zero(hpair.dim, 0)
        )
        return Lie2DerHom(
            gpair,
            hpair,
            self.phi0.to_core(),
            phi1,
            self.phi2.to_core(gpair.dim, hpair.dim),
            self.theta.to_core(),
        )

    @staticmethod
    def from_core(f: Lie2DerHom) -> "HomModel":
        return HomModel(
            gpair=PairModel.from_core(f.gpair),
            hpair=PairModel.from_core(f.hpair),
            phi0=MatrixModel.from_core(f.phi0),
            phi1=MatrixModel.from_core(f.phi1),
            phi2=CochainModel.from_core(f.phi2),
            theta=MatrixModel.from_core(f.theta),
        )


_REFS: dict[str, dict[str, str]] = {
    "pair": {"algebra": "algebra", "derivation": "matrix"},
    "cocycle": {"gpair": "pair", "hpair": "pair"},
    "kernel": {"gpair": "pair", "hpair": "pair"},
    "context": {"gpair": "pair", "hpair": "pair"},
    "hom": {"gpair": "pair", "hpair": "pair"},
    "extension": {
        "total": "algebra",
        "dhat": "matrix",
        "inj": "matrix",
        "proj": "matrix",
    },
    "lie2": {"g0": "algebra"},
}


def load_document(path: "str | Path", kind: str) -> dict:
    """Read a JSON file and inline any reference fields for its kind."""
    p = Path(path)
    doc = json.loads(p.read_text())
    if not isinstance(doc, dict):
        raise ValueError(f"{p} does not hold a JSON object")
    for field, sub in _REFS.get(kind, {}).items():
        if isinstance(doc.get(field), str):
            doc[field] = load_document(p.parent / doc[field], sub)
    return doc
