from abc import ABC, abstractmethod

from ..gases import GasState


class BaseChannel(ABC):
  """A vacuum-radiation channel producing a per-collision angular kick."""

  name = None

  @abstractmethod
  def estimate(self, state: GasState):
    pass

  def delta_theta0(self, state: GasState) -> float:
    return self.estimate(state).delta_theta0
