"""Hyperoperation tables generated from two-atom-kind radical chemistry.

Two atom kinds give five species: two free radicals, two homonuclear
molecules, and the mixed molecule.  A collision of two species yields the
reactants themselves (the no-reaction outcome) plus the products of every
elementary channel applicable to the pair, in single-collision semantics:
channels fire on the colliding pair only, never on their products.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .core import HyperOp, Universe, mask_of

HALOGENS = ("F", "Cl", "Br", "I")
_HALOGEN_BY_LOWER = {name.lower(): name for name in HALOGENS}


class ChannelKind(Enum):
    RECOMBINATION = "recombination"
    ABSTRACTION_EXCHANGE = "abstraction_exchange"
    COLLISION_HOMOLYSIS = "collision_homolysis"
    METATHESIS = "metathesis"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Species:
    """One or two atoms; a single atom is a free radical (unpaired electron)."""

    atoms: tuple[str, ...]
    symbol: str

    @property
    def is_radical(self) -> bool:
        return len(self.atoms) == 1


@dataclass(frozen=True)
class ReactionChannel:
    """One elementary reaction: reactant pair and full product list.

    Products carry multiplicity (a homolysis of A2 lists the radical twice)
    so that the atom balance of every channel can be checked literally.
    """

    kind: ChannelKind
    reactants: tuple[Species, Species]
    products: tuple[Species, ...]


@dataclass(frozen=True)
class SpeciesModel:
    """The five-species world over two atom kinds, with its carrier."""

    kinds: tuple[str, str]
    species: tuple[Species, ...]
    universe: Universe

    def index(self, s: Species) -> int:
        try:
            return self.species.index(s)
        except ValueError:
            raise KeyError(f"species {s.symbol!r} is not part of this model") from None

    def radical(self, kind: str) -> Species:
        return self.species[self.kinds.index(kind)]

    def molecule(self, a: str, b: str) -> Species:
        atoms = self._canonical_atoms((a, b))
        for s in self.species[2:]:
            if s.atoms == atoms:
                return s
        raise KeyError(f"no molecule with atoms {atoms}")

    def _canonical_atoms(self, atoms: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(atoms, key=self.kinds.index))


def enumerate_species(kinds: tuple[str, str]) -> SpeciesModel:
    """The five species over two distinct atom kinds, in canonical order:
    first radical, second radical, both homonuclear molecules, then the
    heteronuclear molecule."""
    first, second = kinds
    if first == second:
        raise ValueError(f"atom kinds must be distinct, got {first!r} twice")
    species = (
        Species((first,), f"{first}o"),
        Species((second,), f"{second}o"),
        Species((first, first), f"{first}2"),
        Species((second, second), f"{second}2"),
        Species((first, second), f"{first}{second}"),
    )
    # Universe construction validates the symbols and their distinctness.
    universe = Universe(tuple(s.symbol for s in species))
    return SpeciesModel((first, second), species, universe)


def halogen_preset(halogen_name: str) -> SpeciesModel:
    """Hydrogen plus one halogen; names accepted case-insensitively."""
    canonical = _HALOGEN_BY_LOWER.get(halogen_name.lower())
    if canonical is None:
        valid = ", ".join(HALOGENS)
        raise ValueError(f"unknown halogen {halogen_name!r}; valid names: {valid}")
    return enumerate_species(("H", canonical))


def _sorted_products(model: SpeciesModel, products: Iterable[Species]) -> tuple[Species, ...]:
    return tuple(sorted(products, key=model.index))


def reaction_channels(
    model: SpeciesModel, x: Species, y: Species
) -> tuple[ReactionChannel, ...]:
    """Every elementary channel applicable to the unordered pair {x, y}."""
    ix, iy = model.index(x), model.index(y)
    if ix > iy:
        x, y = y, x
    reactants = (x, y)
    channels: list[ReactionChannel] = []

    def add(kind: ChannelKind, products: Iterable[Species]) -> None:
        ch = ReactionChannel(kind, reactants, _sorted_products(model, products))
        if ch not in channels:
            channels.append(ch)

    if x.is_radical and y.is_radical:
        add(ChannelKind.RECOMBINATION, [model.molecule(x.atoms[0], y.atoms[0])])
    elif x.is_radical != y.is_radical:
        radical, molecule = (x, y) if x.is_radical else (y, x)
        # The radical may take either atom of the molecule, displacing the other.
        for taken, displaced in (molecule.atoms, molecule.atoms[::-1]):
            add(
                ChannelKind.ABSTRACTION_EXCHANGE,
                [model.molecule(radical.atoms[0], taken), model.radical(displaced)],
            )
    else:
        # Collision-induced homolysis: one molecule breaks, the collision
        # partner supplies the energy and survives intact.
        for split, intact in ((x, y), (y, x)):
            add(
                ChannelKind.COLLISION_HOMOLYSIS,
                [model.radical(split.atoms[0]), model.radical(split.atoms[1]), intact],
            )
        # Metathesis: repair the four atoms into two molecules, kept only
        # when the result differs from the reactant pair itself.
        (a, b), (c, d) = x.atoms, y.atoms
        original = sorted((x, y), key=model.index)
        for pairing in (((a, c), (b, d)), ((a, d), (b, c))):
            molecules = sorted(
                (model.molecule(*pairing[0]), model.molecule(*pairing[1])),
                key=model.index,
            )
            if molecules != original:
                add(ChannelKind.METATHESIS, molecules)

    for ch in channels:
        assert _atom_multiset(ch.reactants) == _atom_multiset(ch.products), (
            f"channel {ch.kind} is not atom-balanced"
        )
    return tuple(channels)


def _atom_multiset(species: Iterable[Species]) -> tuple[str, ...]:
    return tuple(sorted(a for s in species for a in s.atoms))


def collide(model: SpeciesModel, x: Species, y: Species) -> frozenset[Species]:
    """Single-collision product set: the reactants plus every channel product."""
    out = {x, y}
    for ch in reaction_channels(model, x, y):
        out.update(ch.products)
    return frozenset(out)


def generate_table(model: SpeciesModel) -> HyperOp:
    """The 5x5 table with cells[x][y] = collide(x, y)."""
    rows = []
    for x in model.species:
        row = []
        for y in model.species:
            products = collide(model, x, y)
            row.append(mask_of(model.index(s) for s in products))
        rows.append(tuple(row))
    return HyperOp(model.universe, tuple(rows))
