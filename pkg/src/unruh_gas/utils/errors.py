class UnruhGasError(Exception):
  """Base class for every error raised by the package."""

  kind = 'error'


class DomainError(UnruhGasError, ValueError):
  """An argument lies outside the mathematical domain of an operation."""

  kind = 'domain_error'


class ValidityError(UnruhGasError, ValueError):
  """Arguments are well defined but outside the physical regime of an estimate."""

  kind = 'validity_error'


class SpeciesLookupError(UnruhGasError, KeyError):
  kind = 'species_lookup_error'

  def __init__(self, name, available):
    self.name = name
    self.available = sorted(available)
    super().__init__(name)

  def __str__(self):
    return 'Unknown species {!r}, available species: {}'.format(
      self.name, ', '.join(self.available))


class SimulationIntegrityError(UnruhGasError, RuntimeError):
  """The event-driven simulation reached an inconsistent state.

  `state` holds whatever diagnostics were available when the problem
  was detected (event time, particle indices, separations, ...).
  """

  kind = 'simulation_integrity_error'

  def __init__(self, message, state=None):
    super().__init__(message)
    self.state = state or {}


def require_positive(value, name):
  if not value > 0:
    raise DomainError('{} must be positive, got {!r}'.format(name, value))
  return value
