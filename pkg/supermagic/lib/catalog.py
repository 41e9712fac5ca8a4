"""Named constructions, built once per (name, p).

Names:
    S1 S2 S4 S8 S12 S42     para-Hurwitz symmetric compositions
    C:<S>                   the Hurwitz algebra behind S (aliases k, kxk, Mat2, Cayley, B12, B42)
    Q, Qbar                 split quaternions and their para-Hurwitz algebra
    H3:<C>, K3, K9          Jordan superalgebras
    tri:<S>, g:<S>,<S'>     triality algebras and Supermagic Square cells
    der:<A>, inder:<J>, str:<J>, pstr:<J>, tkk:<J>
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Any

from supermagic.lib.composition import (
    SymmetricComposition,
    make_hurwitz,
    make_para_quaternion,
    make_quaternion,
    make_symmetric,
)
from supermagic.lib.config import resolve_field
from supermagic.lib.constants import SupermagicError
from supermagic.lib.exact_linalg import PrimeField
from supermagic.lib.jordan import H3Algebra, make_H3, make_K3, make_K9, make_str_pstr
from supermagic.lib.operators import GradedSubspace, derivations, inner_derivations
from supermagic.lib.square import MagicCell, build_g
from supermagic.lib.supercore import SuperAlgebra
from supermagic.lib.tkk import tkk
from supermagic.lib.triality import TrialityAlgebra, tri_basis
from supermagic.types import SQUARE_ORDER, AlgebraKind, CompositionName

logger = logging.getLogger(__name__)

HURWITZ_ALIASES: dict[str, CompositionName] = {
    "k": CompositionName.S1,
    "kxk": CompositionName.S2,
    "k×k": CompositionName.S2,
    "Mat2": CompositionName.S4,
    "Cayley": CompositionName.S8,
    "B12": CompositionName.S12,
    "B42": CompositionName.S42,
}

JORDAN_NAMES = ("K3", "K9", *(f"H3:{c.value}" for c in SQUARE_ORDER))


class UnknownAlgebraError(SupermagicError):
    """The name does not denote a catalog construction."""


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A resolved name: the algebra and the richer object it was read off."""

    name: str
    algebra: SuperAlgebra
    source: Any = None


def normalize(name: str) -> str:
    return "".join(name.split())


def hurwitz_name(token: str) -> CompositionName:
    """S-name or alias of a split Hurwitz algebra.

    Raises:
        UnknownAlgebraError: If the token is neither
    """
    if token in HURWITZ_ALIASES:
        return HURWITZ_ALIASES[token]
    try:
        return CompositionName(token)
    except ValueError as e:
        raise UnknownAlgebraError(f"unknown Hurwitz algebra '{token}'") from e


def _composition(token: str) -> CompositionName:
    try:
        return CompositionName(token)
    except ValueError as e:
        raise UnknownAlgebraError(f"unknown symmetric composition '{token}'") from e


@functools.cache
def _build(name: str, p: int) -> CatalogEntry:
    field = PrimeField(p)
    head, sep, rest = name.partition(":")
    if not sep:
        return _base(name, field)
    if not rest:
        raise UnknownAlgebraError(f"'{name}' is missing its argument")
    match head:
        case "C":
            C = make_hurwitz(hurwitz_name(rest), field)
            return CatalogEntry(name, C.algebra, C)
        case "H3":
            H = make_H3(make_hurwitz(hurwitz_name(rest), field))
            return CatalogEntry(name, H.J, H)
        case "tri":
            T = tri_basis(symmetric(rest, field))
            return CatalogEntry(name, T.lie, T)
        case "g":
            left, comma, right = rest.partition(",")
            if not comma:
                raise UnknownAlgebraError(f"'{name}' needs two symmetric compositions, e.g. g:S4,S12")
            built = build_g(
                symmetric(left, field), symmetric(right, field), triality(left, field), triality(right, field)
            )
            return CatalogEntry(name, built.g, built)
        case "der":
            der = derivation_space(rest, field)
            target = resolve(rest, field)
            return CatalogEntry(name, der.as_lie(f"der({target.name})"), der)
        case "inder":
            J = _jordan(rest, field)
            inder = inner_derivations(J)
            return CatalogEntry(name, inder.as_lie(f"inder({J.name})"), inder)
        case "str" | "pstr":
            pair = make_str_pstr(_jordan(rest, field), derivation_space(rest, field))
            if head == "str":
                return CatalogEntry(name, pair.str_algebra, pair)
            if pair.pstr is None:
                raise UnknownAlgebraError(f"pstr needs the identity inside str, which fails for {rest}")
            return CatalogEntry(name, pair.pstr, pair)
        case "tkk":
            A = tkk(_jordan(rest, field), derivation_space(rest, field))
            return CatalogEntry(name, A.T, A)
    raise UnknownAlgebraError(f"unknown construction '{head}' in '{name}'")


def _base(name: str, field: PrimeField) -> CatalogEntry:
    if name == "Q":
        C = make_quaternion(field)
        return CatalogEntry(name, C.algebra, C)
    if name == "Qbar":
        S = make_para_quaternion(field)
        return CatalogEntry(name, S.algebra, S)
    if name == "K3":
        return CatalogEntry(name, make_K3(field))
    if name == "K9":
        return CatalogEntry(name, make_K9(field))
    S = make_symmetric(_composition(name), field)
    return CatalogEntry(name, S.algebra, S)


def entry(name: str, field: PrimeField | None = None) -> CatalogEntry:
    """Resolve ``name`` over ``field`` (the session field by default).

    Raises:
        UnknownAlgebraError: If the name is not a catalog construction
        CharacteristicError: If a characteristic 3 object is requested with p != 3
    """
    key = normalize(name)
    if not key:
        raise UnknownAlgebraError("empty algebra name")
    f = resolve_field(field)
    result = _build(key, f.p)
    logger.debug("resolved %s over GF(%d)", key, f.p)
    return result


def resolve(name: str, field: PrimeField | None = None) -> SuperAlgebra:
    return entry(name, field).algebra


def symmetric(name: str, field: PrimeField | None = None) -> SymmetricComposition:
    """The symmetric composition S1..S42 or Qbar."""
    source = entry(name, field).source
    if not isinstance(source, SymmetricComposition):
        raise UnknownAlgebraError(f"'{name}' is not a symmetric composition")
    return source


def triality(name: str, field: PrimeField | None = None) -> TrialityAlgebra:
    source = entry(f"tri:{name}", field).source
    assert isinstance(source, TrialityAlgebra)
    return source


def cell(S: str, S_prime: str, field: PrimeField | None = None) -> MagicCell:
    source = entry(f"g:{S},{S_prime}", field).source
    assert isinstance(source, MagicCell)
    return source


def h3(C: str, field: PrimeField | None = None) -> H3Algebra:
    source = entry(f"H3:{C}", field).source
    assert isinstance(source, H3Algebra)
    return source


def _jordan(name: str, field: PrimeField) -> SuperAlgebra:
    J = resolve(name, field)
    if J.kind != AlgebraKind.JORDAN:
        raise UnknownAlgebraError(f"'{name}' is not a Jordan superalgebra")
    return J


def derivation_space(name: str, field: PrimeField | None = None) -> GradedSubspace:
    """der A as operators on A, shared by der:, str:, pstr: and tkk:."""
    return _derivations(normalize(name), resolve_field(field).p)


@functools.cache
def _derivations(name: str, p: int) -> GradedSubspace:
    return derivations(resolve(name, PrimeField(p)))


def clear() -> None:
    _build.cache_clear()
    _derivations.cache_clear()
