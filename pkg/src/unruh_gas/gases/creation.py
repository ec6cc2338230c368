from ..utils.constants import ATOMIC_MASS_UNIT
from ..utils.errors import DomainError, SpeciesLookupError
from ..utils.parsing import parse_vars
from .data import GasSpecies


# Standard atomic weights (u) and half of the kinetic diameter (m)
BUILTIN_SPECIES = {
  'N2': GasSpecies('N2', 28.0134 * ATOMIC_MASS_UNIT, 1.85e-10),
  'Ar': GasSpecies('Ar', 39.948 * ATOMIC_MASS_UNIT, 1.70e-10),
  'He': GasSpecies('He', 4.002602 * ATOMIC_MASS_UNIT, 1.30e-10),
}

SPECIES_FILE_KEYS = ('name', 'mass_kg', 'radius_m')
RADIUS_BOUNDS = (1e-11, 1e-8)


def builtin_species(name: str, catalogue=None) -> GasSpecies:
  catalogue = BUILTIN_SPECIES if catalogue is None else catalogue
  if name not in catalogue:
    raise SpeciesLookupError(name, catalogue.keys())
  return catalogue[name]

def parse_species_record(line: str) -> GasSpecies:
  record = parse_vars(line.split())
  missing = [k for k in SPECIES_FILE_KEYS if k not in record]
  if missing:
    raise DomainError('species record {!r} is missing {}'.format(line, ', '.join(missing)))
  unknown = set(record) - set(SPECIES_FILE_KEYS)
  if unknown:
    raise DomainError('species record {!r} has unknown keys {}'.format(
      line, ', '.join(sorted(unknown))))

  try:
    mass, radius = float(record['mass_kg']), float(record['radius_m'])
  except ValueError:
    raise DomainError('species record {!r} has a non-numeric value'.format(line))
  if not mass > 0:
    raise DomainError('mass_kg must be positive in record {!r}'.format(line))
  if not RADIUS_BOUNDS[0] <= radius <= RADIUS_BOUNDS[1]:
    raise DomainError('radius_m must lie in [{:g}, {:g}] m in record {!r}'.format(
      *RADIUS_BOUNDS, line))
  return GasSpecies(record['name'], mass, radius)

def load_species_file(path) -> dict:
  """Reads `name=... mass_kg=... radius_m=...` records, one per line."""
  species = {}
  with open(path, 'r', encoding='utf-8') as f:
    for line in f:
      line = line.split('#', 1)[0].strip()
      if not line:
        continue
      record = parse_species_record(line)
      species[record.name] = record
  return species

def make_catalogue(species_file=None) -> dict:
  catalogue = dict(BUILTIN_SPECIES)
  if species_file is not None:
    catalogue.update(load_species_file(species_file))
  return catalogue
