"""Interfaces for instance and activation-function sources."""

from abc import ABC, abstractmethod
from typing import Optional

from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.domain.instance import Instance
from stochmatch.domain.solution import FractionalSolution


class InstanceFeed(ABC):
    """Abstract source of a bipartite instance and, optionally, a fractional solution.

    Implementations must return validated-shape domain objects; structural
    checks beyond parsing are left to :func:`validate_instance`.
    """

    @abstractmethod
    def get_instance(self) -> Instance:
        """Load the instance.

        Raises:
            InstanceFileError: If the source is malformed
        """
        pass

    @abstractmethod
    def get_solution(self) -> Optional[FractionalSolution]:
        """Load the declared solution x, or None if the source has none."""
        pass

    def require_solution(self) -> FractionalSolution:
        """Like :meth:`get_solution` but a missing x is an error."""
        x = self.get_solution()
        if x is None:
            raise ValueError(f"{self!r} declares no fractional solution 'x'")
        return x


class ActivationFeed(ABC):
    """Abstract source of a piecewise constant activation function."""

    @abstractmethod
    def get_activation(self) -> PiecewiseConstantF:
        pass
